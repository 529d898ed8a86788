/* C API for the AMUSE concept-drift model-updating laboratory.
 *
 * All state lives behind the opaque amuse_config handle. Functions
 * return amuse_status; on failure amuse_last_error() gives a
 * thread-local description of the most recent error.
 */
#ifndef AMUSE_H_
#define AMUSE_H_

#ifdef __cplusplus
extern "C" {
#endif

typedef enum amuse_status {
  AMUSE_OK = 0,
  AMUSE_ERR_CONFIG = 1, /* bad configuration / usage */
  AMUSE_ERR_RUNTIME = 2 /* I/O or execution failure */
} amuse_status;

typedef struct amuse_config amuse_config;

const char* amuse_version(void);

/* Configuration with built-in defaults. Never returns NULL. */
amuse_config* amuse_config_create(void);
void amuse_config_destroy(amuse_config* config);

/* Merge a key=value config file into the handle. */
amuse_status amuse_config_load_file(amuse_config* config, const char* path);

/* Set one field by its config-file key, e.g. ("T", "500"). */
amuse_status amuse_config_set(amuse_config* config, const char* key,
                              const char* value);

/* Read one field back; the buffer is always NUL-terminated. */
amuse_status amuse_config_get(const amuse_config* config, const char* key,
                              char* buffer, unsigned long buffer_size);

/* Train the PPO agent in the simulating environment and write the
 * checkpoint to checkpoint_path. */
amuse_status amuse_train(const amuse_config* config,
                         const char* checkpoint_path);

/* Full benchmark (static + dynamic AMUSE and the six baselines).
 * checkpoint_path may be NULL: the agent is then trained first and the
 * checkpoint stored under the output directory. */
amuse_status amuse_compare(const amuse_config* config,
                           const char* checkpoint_path);

/* rho grid sweep; writes per-rho reward curves and the pilot utility
 * table under the output directory. chosen_rho may be NULL. */
amuse_status amuse_tune_rho(const amuse_config* config, double* chosen_rho);

/* Emit drift-path and batch-summary traces only. */
amuse_status amuse_simulate(const amuse_config* config);

/* Finite-difference self-test of the network gradients. */
amuse_status amuse_gradcheck(void);

/* Thread-local message for the most recent failure in this thread. */
const char* amuse_last_error(void);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* AMUSE_H_ */
