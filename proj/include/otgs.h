/*
 * otgs — optimal-transport graph summarization.
 *
 * C interface to the toolkit: labeled graph datasets, information-measure
 * estimators, minimum-cost-flow transport, support compression, exact
 * small-instance oracles, and the evaluation harness.
 *
 * Conventions:
 *   - Vertices are 0-indexed integers.
 *   - Every fallible call returns an OTGS_* code; on failure,
 *     otgs_last_error() holds a message for the calling thread.
 *   - Opaque handles are created by otgs_* constructors and released with
 *     the matching *_free call. Handles are immutable and may be shared
 *     read-only across threads.
 */
#ifndef OTGS_H
#define OTGS_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define OTGS_API __declspec(dllexport)
#else
#define OTGS_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

#define OTGS_OK 0
#define OTGS_ERR_VALIDATION 2 /* invalid argument or malformed input */
#define OTGS_ERR_INFEASIBLE 3 /* no feasible flow / unreachable support */
#define OTGS_ERR_IO 4         /* file could not be read or written */
#define OTGS_ERR_LIMIT 5      /* instance exceeds an enumeration guard */
#define OTGS_ERR_INTERNAL 6

OTGS_API const char* otgs_version(void);
OTGS_API const char* otgs_last_error(void);
/* Worker threads used by parallel sections; 0 restores the hardware default. */
OTGS_API void otgs_set_threads(int threads);

/* ------------------------------------------------------------------ */
/* Datasets: sequences of (graph, node features, binary label) samples */
/* on a common vertex set. Stored as newline-delimited JSON on disk.   */
/* ------------------------------------------------------------------ */
typedef struct otgs_dataset otgs_dataset;

OTGS_API int otgs_dataset_read(const char* path, otgs_dataset** out);
OTGS_API int otgs_dataset_write(const otgs_dataset* ds, const char* path);
OTGS_API void otgs_dataset_free(otgs_dataset* ds);
OTGS_API size_t otgs_dataset_size(const otgs_dataset* ds);
OTGS_API int otgs_dataset_vertices(const otgs_dataset* ds);
OTGS_API int otgs_dataset_dim(const otgs_dataset* ds);

/* Class-conditional synthetic benchmark (see README for the model). */
OTGS_API int otgs_gen_synthetic(int nodes, int graphs, double edge_prob0, double edge_prob1,
                                uint64_t seed, otgs_dataset** out);
/* Monotonicity-demo generator: one pair with class-probability gap
 * `strength`, strength/2 on pairs touching its endpoints, 0 elsewhere. */
OTGS_API int otgs_gen_monotone_gadget(int n, double strength, int samples, uint64_t seed,
                                      otgs_dataset** out);
/* Clique generator: edges of the base graph (pairs packed [u0,v0,u1,v1,...])
 * appear with probability 1/2 under class 1 and never under class 0. */
OTGS_API int otgs_gen_clique_gadget(int n, const int32_t* edges, size_t edge_count, int samples,
                                    uint64_t seed, otgs_dataset** out);
/* Pixel grids: `count` images of rows x cols intensities (row-major,
 * concatenated), 4-neighborhood edges, feature = intensity. */
OTGS_API int otgs_dataset_from_images(const double* pixels, const int32_t* labels, size_t count,
                                      int rows, int cols, otgs_dataset** out);
/* Seeded stratified split; both outputs must be freed. */
OTGS_API int otgs_dataset_split(const otgs_dataset* ds, double train_fraction, uint64_t seed,
                                otgs_dataset** out_train, otgs_dataset** out_test);

/* ------------------------------------------------------------------ */
/* Information measures (bits, base-2 everywhere).                     */
/* ------------------------------------------------------------------ */
OTGS_API int otgs_binary_entropy(double x, double* out_bits);
OTGS_API int otgs_kl_bernoulli(double p0, double p1, double* out_bits);
OTGS_API int otgs_exact_edge_mi(double p_class, double q0, double q1, double* out_bits);
OTGS_API int otgs_mi_discrete(const int32_t* values, const int32_t* labels, size_t n,
                              double* out_bits);
/* values: n x dim row-major; bins = 0 picks max(2, min(64, ceil(n^(1/3)))). */
OTGS_API int otgs_mi_continuous(const double* values, size_t n, size_t dim,
                                const int32_t* labels, int bins, double* out_bits);

OTGS_API int otgs_dataset_node_mi(const otgs_dataset* ds, int v, int bins, double* out_bits);
OTGS_API int otgs_dataset_edge_kl(const otgs_dataset* ds, int u, int v, double* out_bits);
OTGS_API int otgs_dataset_edge_mi(const otgs_dataset* ds, int u, int v, double* out_bits);
/* out_scores must hold otgs_dataset_vertices(ds) doubles. */
OTGS_API int otgs_dataset_sensitivity(const otgs_dataset* ds, int bins, double* out_scores);

/* ------------------------------------------------------------------ */
/* Transport and compression over explicit graphs. Edges are packed    */
/* [u0,v0,u1,v1,...] with one nonnegative cost per edge (INFINITY      */
/* forbids the move); rho arrays hold one mass per vertex.             */
/* ------------------------------------------------------------------ */
OTGS_API int otgs_wasserstein(int n, const int32_t* edges, size_t edge_count,
                              const double* edge_costs, const double* rho0, const double* rho1,
                              double* out_cost);
/* out_rho1 (optional, n doubles) receives the mass absorbed per vertex. */
OTGS_API int otgs_constrained_transport(int n, const int32_t* edges, size_t edge_count,
                                        const double* edge_costs, const double* rho0,
                                        const int32_t* support, size_t support_len,
                                        double* out_cost, double* out_rho1);
/* Greedy support selection to exactly k vertices; out_support holds k ids.
 * forced (optional) lists vertices the greedy must keep. */
OTGS_API int otgs_compress(int n, const int32_t* edges, size_t edge_count,
                           const double* edge_costs, const double* rho0, int k,
                           const int32_t* forced, size_t forced_len, int32_t* out_support,
                           double* out_cost);

/* ------------------------------------------------------------------ */
/* Exact small-instance oracles.                                       */
/* ------------------------------------------------------------------ */
/* Exhaustive subset-MI maximizer over size-k subsets (enumeration-guarded);
 * out_subset holds k vertex ids. */
OTGS_API int otgs_infomax_clique(int n, const int32_t* base_edges, size_t edge_count, int k,
                                 int32_t* out_subset, double* out_mi);
OTGS_API int otgs_infomax_monotone(int n, double strength, int k, int32_t* out_subset,
                                   double* out_mi);

typedef struct otgs_monotonicity_report {
  double compress_cost; /* cost of the compressor's 2-vertex support */
  double compress_mi;   /* exact MI of that support with the class */
  double oracle_cost;   /* min cost of any flow onto the MI-optimal pair */
  double oracle_mi;     /* exact MI of the MI-optimal pair */
  int32_t compress_support[2];
  int32_t oracle_support[2];
  int violated; /* 1 when the cheaper support carries strictly less MI */
} otgs_monotonicity_report;

/* Runs the compressor against the exact oracle on the monotone gadget with
 * uniform initial mass and cost = class-probability gap. */
OTGS_API int otgs_demo_monotonicity(int n, double strength, otgs_monotonicity_report* out);

/* ------------------------------------------------------------------ */
/* Summarization and evaluation.                                       */
/* ------------------------------------------------------------------ */
#define OTGS_METHOD_SUPERVISED 0   /* one support learned from training data */
#define OTGS_METHOD_UNSUPERVISED 1 /* degree/attribute OTC per test graph */
#define OTGS_METHOD_RANDOM 2       /* seeded uniform size-k subset */
#define OTGS_METHOD_NONE 3         /* keep every vertex */

typedef struct otgs_summary otgs_summary;

/* sensitivity_fraction in (0,1] forces the top-scored vertices into the
 * support; 0 disables the filter. bins = 0 picks the estimator default. */
OTGS_API int otgs_fit(const otgs_dataset* train, double kappa, int method, int bins,
                      double sensitivity_fraction, uint64_t seed, otgs_summary** out);
OTGS_API void otgs_summary_free(otgs_summary* s);
/* Copies up to cap support vertices into out; *out_len receives the support
 * size (0 for the per-graph method, which keeps no single support). */
OTGS_API int otgs_summary_support(const otgs_summary* s, int32_t* out, size_t cap,
                                  size_t* out_len);
OTGS_API int otgs_apply(const otgs_summary* s, const otgs_dataset* test, otgs_dataset** out);

/* Full sweep: fit on train, summarize test, cross-validate the downstream
 * classifier. methods holds OTGS_METHOD_* values. Writes one CSV row per
 * (method, kappa, trial, fold) when csv_path is non-NULL; when out_summary is
 * non-NULL it receives a human-readable table (release: otgs_string_free). */
OTGS_API int otgs_evaluate(const otgs_dataset* train, const otgs_dataset* test,
                           const double* kappas, size_t n_kappas, const int* methods,
                           size_t n_methods, int folds, int trials, uint64_t seed,
                           const char* csv_path, char** out_summary);
OTGS_API void otgs_string_free(char* s);

#ifdef __cplusplus
}
#endif

#endif /* OTGS_H */
