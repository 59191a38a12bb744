/* C interface to the mcmix Markov chain analysis library.
 *
 * All objects are opaque handles created by mcx_* constructors and released
 * with their matching _free function. Functions return MCX_OK on success; on
 * failure they return a status code and leave a human-readable message in
 * mcx_last_error() (thread-local). Strings returned through char** outputs
 * are heap-allocated and must be released with mcx_string_free.
 */

#ifndef MCMIX_MCMIX_H
#define MCMIX_MCMIX_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef struct mcx_chain mcx_chain;
typedef struct mcx_group mcx_group;

typedef enum mcx_status {
  MCX_OK = 0,
  MCX_ERR_USAGE = 1,        /* bad arguments */
  MCX_ERR_PARSE = 2,        /* malformed input text */
  MCX_ERR_VALIDATION = 3,   /* numeric contract violation */
  MCX_ERR_ERGODICITY = 4,   /* not strongly connected / solve failed */
  MCX_ERR_CAP = 5,          /* enumeration cap exceeded */
  MCX_ERR_CONSTRUCTION = 6, /* requested object cannot be built */
} mcx_status;

const char* mcx_last_error(void);
void mcx_string_free(char* s);

/* --- chains ------------------------------------------------------------ */

mcx_status mcx_chain_parse(const char* text, mcx_chain** out);
mcx_status mcx_chain_cycle(int n, double alpha, mcx_chain** out);
mcx_status mcx_chain_complete(int n, mcx_chain** out);
/* Eulerian multigraph description: "vertices <n>" plus "arc <x> <y> [count]"
 * lines; d = 0 uses the maximum out-degree. */
mcx_status mcx_chain_eulerian(const char* text, int d, mcx_chain** out);
mcx_status mcx_chain_from_group(const mcx_group* group, mcx_chain** out);
mcx_status mcx_chain_random(uint64_t seed, int n, int force_holding,
                            mcx_chain** out);
void mcx_chain_free(mcx_chain* chain);

int mcx_chain_states(const mcx_chain* chain);
double mcx_chain_alpha(const mcx_chain* chain);
/* Writes n stationary probabilities into pi. */
mcx_status mcx_chain_stationary(const mcx_chain* chain, double* pi);
/* Chain file text with 17 significant digits (bit-faithful round trip). */
mcx_status mcx_chain_format(const mcx_chain* chain, char** out);
mcx_status mcx_chain_reversal(const mcx_chain* chain, mcx_chain** out);

/* Least n with chi-square distance <= eps from start x; -1 when not reached
 * within max_steps. */
mcx_status mcx_empirical_mixing_time(const mcx_chain* chain, int x, double eps,
                                     long max_steps, long* out_tau);

/* --- groups ------------------------------------------------------------ */

/* spec: "z<n>" or "s<k>"; gens: comma-separated element names (e.g.
 * "id,+1" or "id,(12),(123)"); probs: comma-separated weights or "" for
 * uniform. */
mcx_status mcx_group_make(const char* spec, const char* gens, const char* probs,
                          mcx_group** out);
void mcx_group_free(mcx_group* group);

/* --- reports ------------------------------------------------------------ */

typedef enum mcx_paths_mode {
  MCX_PATHS_BFS = 0,
  MCX_PATHS_FILE = 1,       /* path_text supplies the family */
  MCX_PATHS_ALT_AUTO = 2,   /* shortest alternating paths */
  MCX_PATHS_ALT_DERIVE = 3, /* alternating family derived from BFS paths */
} mcx_paths_mode;

/* pi, alpha, empirical mixing time and profile summaries at the given r
 * values (rs may be NULL when n_rs = 0). */
mcx_status mcx_analyze_report(const mcx_chain* chain, const char* chain_id,
                              int start, double eps, const double* rs, int n_rs,
                              int tsv, char** out);

/* Every applicable bound plus the Poincare baseline and empirical tau.
 * rs, when present, overrides both theorem r sweeps. alt_mode must be
 * MCX_PATHS_ALT_AUTO or MCX_PATHS_ALT_DERIVE. */
mcx_status mcx_bounds_report(const mcx_chain* chain, const char* chain_id,
                             int start, double eps, const double* rs, int n_rs,
                             int alt_mode, int tsv, char** out);

/* Congestion statistics and load tables. path_text is required for
 * MCX_PATHS_FILE and ignored otherwise. */
mcx_status mcx_paths_report(const mcx_chain* chain, int mode,
                            const char* path_text, int tsv, char** out);

/* Cayley word paths: diameter, generator occurrence table, congestion. */
mcx_status mcx_cayley_paths_report(const mcx_group* group, int tsv, char** out);

/* Profile TSV; quantity is one of "r-conductance", "r-modified-conductance",
 * "conductance", "root-profile" (r ignored for the last two). */
mcx_status mcx_profile_tsv(const mcx_chain* chain, const char* quantity,
                           double r, char** out);

/* --- verification ------------------------------------------------------- */

/* Runs the builtin examples, the inequality grid and `count` seeded random
 * chains; writes the report and the violation count. When chain is non-NULL
 * only that chain is audited. inject_fault perturbs the audited root profile to
 * prove the auditor catches false lemmas. */
mcx_status mcx_verify(const mcx_chain* chain, uint64_t seed, int count,
                      int max_n, int inject_fault, char** out_report,
                      int* out_violations);

#ifdef __cplusplus
}
#endif

#endif /* MCMIX_MCMIX_H */
