#ifndef RECTDIM_H
#define RECTDIM_H

/* C API for the rectangle limsup-set dimension library.
 *
 * Every constructor returns a status code and, on success, an opaque handle
 * that must be released with the matching *_free. Getters on a valid handle
 * cannot fail unless indexed; indexed getters return a status. On any
 * failure, rectdim_last_error() describes the problem for the calling
 * thread. */

#include <stdint.h>

#if defined(_WIN32)
#define RECTDIM_API __declspec(dllexport)
#else
#define RECTDIM_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum rectdim_status {
  RECTDIM_OK = 0,
  RECTDIM_INVALID_ARGUMENT = 1,
  RECTDIM_BUDGET_EXCEEDED = 2,
  RECTDIM_VERIFICATION_FAILED = 3,
  RECTDIM_INTERNAL_ERROR = 4
} rectdim_status;

RECTDIM_API const char* rectdim_version(void);
/* last error message of the calling thread; empty string if none */
RECTDIM_API const char* rectdim_last_error(void);
RECTDIM_API void rectdim_string_free(char* s);

/* ---------- dimensional numbers ---------- */

typedef struct rectdim_dim_report rectdim_dim_report;

/* tie_policy: 0 default, 1 strict K1, 2 merge boundary ties into K2.
 * use_hat != 0 restricts candidates to the shrunk-side alphabet. */
RECTDIM_API rectdim_status rectdim_compute_s(int d, const double* deltas, double kappa,
                                             const double* a, const double* t,
                                             int tie_policy, int use_hat,
                                             rectdim_dim_report** out);

RECTDIM_API double rectdim_dim_report_value(const rectdim_dim_report* h);
RECTDIM_API double rectdim_dim_report_argmin(const rectdim_dim_report* h);
RECTDIM_API int rectdim_dim_report_rows(const rectdim_dim_report* h);
RECTDIM_API rectdim_status rectdim_dim_report_row(const rectdim_dim_report* h, int idx,
                                                  double* A, double* value);
RECTDIM_API rectdim_status rectdim_dim_report_row_partition_sizes(
    const rectdim_dim_report* h, int idx, int* n1, int* n2, int* n3);
/* k1/k2/k3 must have room for the sizes reported above */
RECTDIM_API rectdim_status rectdim_dim_report_row_partition(const rectdim_dim_report* h,
                                                            int idx, int* k1, int* k2,
                                                            int* k3);
RECTDIM_API void rectdim_dim_report_free(rectdim_dim_report* h);

/* ---------- application solvers ---------- */

typedef struct rectdim_solver_report rectdim_solver_report;

RECTDIM_API rectdim_status rectdim_simultaneous_dim(int m, const double* tau,
                                                    rectdim_solver_report** out);
RECTDIM_API rectdim_status rectdim_linear_forms_dim(int m, int n, const double* lambda,
                                                    rectdim_solver_report** out);
/* digits: concatenated per-axis digit lists; digit_counts[i] = 0 selects the
 * full digit set of axis i */
RECTDIM_API rectdim_status rectdim_shrinking_dim(int d, const int* bases,
                                                 const int* digits,
                                                 const int* digit_counts, const double* t,
                                                 rectdim_solver_report** out);

RECTDIM_API double rectdim_solver_report_value(const rectdim_solver_report* h);
RECTDIM_API double rectdim_solver_report_closed_form(const rectdim_solver_report* h);
RECTDIM_API int rectdim_solver_report_argmin_i(const rectdim_solver_report* h);
RECTDIM_API int rectdim_solver_report_full_measure(const rectdim_solver_report* h);
RECTDIM_API int rectdim_solver_report_full_hs_measure(const rectdim_solver_report* h);
RECTDIM_API int rectdim_solver_report_dims(const rectdim_solver_report* h);
RECTDIM_API rectdim_status rectdim_solver_report_space(const rectdim_solver_report* h,
                                                       double* deltas, double* kappa);
RECTDIM_API rectdim_status rectdim_solver_report_profile(const rectdim_solver_report* h,
                                                         double* a, double* t);
/* borrowed view of the dimcore cross-check table; empty in boundary regimes */
RECTDIM_API const rectdim_dim_report* rectdim_solver_report_table(
    const rectdim_solver_report* h);
RECTDIM_API void rectdim_solver_report_free(rectdim_solver_report* h);

/* ---------- multiplicative approximation ---------- */

typedef struct rectdim_mult_pair_report rectdim_mult_pair_report;

RECTDIM_API rectdim_status rectdim_mult_pair(double log_a, double delta1, double log_b,
                                             double delta2, double t1, double t2,
                                             rectdim_mult_pair_report** out);
RECTDIM_API double rectdim_mult_pair_value(const rectdim_mult_pair_report* h);
RECTDIM_API double rectdim_mult_pair_closed_form(const rectdim_mult_pair_report* h);
RECTDIM_API int rectdim_mult_pair_case(const rectdim_mult_pair_report* h);
RECTDIM_API const rectdim_dim_report* rectdim_mult_pair_table(
    const rectdim_mult_pair_report* h);
RECTDIM_API void rectdim_mult_pair_free(rectdim_mult_pair_report* h);

typedef struct rectdim_mult_report rectdim_mult_report;

RECTDIM_API rectdim_status rectdim_mult(double log_a, double delta1, double log_b,
                                        double delta2, double t, int threads,
                                        rectdim_mult_report** out);
RECTDIM_API double rectdim_mult_value(const rectdim_mult_report* h);
RECTDIM_API int rectdim_mult_formula_fails(const rectdim_mult_report* h);
RECTDIM_API double rectdim_mult_factor_formula(const rectdim_mult_report* h);
RECTDIM_API double rectdim_mult_covering_upper(const rectdim_mult_report* h);
RECTDIM_API double rectdim_mult_slicing_lower(const rectdim_mult_report* h);
RECTDIM_API int rectdim_mult_swapped(const rectdim_mult_report* h);
RECTDIM_API int rectdim_mult_full_measure(const rectdim_mult_report* h);
/* optional fields return 1 and set *out when present, else return 0 */
RECTDIM_API int rectdim_mult_that_t2(const rectdim_mult_report* h, double* out);
RECTDIM_API int rectdim_mult_crossing_case_i(const rectdim_mult_report* h, double* out);
RECTDIM_API int rectdim_mult_crossing_displayed(const rectdim_mult_report* h, double* out);
RECTDIM_API void rectdim_mult_free(rectdim_mult_report* h);

/* ---------- exponent orbits ---------- */

typedef struct rectdim_orbit_report rectdim_orbit_report;

/* psi is samples x families, row-major; rho_log holds log rho(n) < 0 */
RECTDIM_API rectdim_status rectdim_orbit(int samples, int families, const double* n_values,
                                         const double* psi, const double* rho_log,
                                         double cluster_eps, rectdim_orbit_report** out);
RECTDIM_API int rectdim_orbit_samples(const rectdim_orbit_report* h);
RECTDIM_API int rectdim_orbit_families(const rectdim_orbit_report* h);
RECTDIM_API rectdim_status rectdim_orbit_row(const rectdim_orbit_report* h, int idx,
                                             double* out);
RECTDIM_API int rectdim_orbit_clusters(const rectdim_orbit_report* h);
RECTDIM_API rectdim_status rectdim_orbit_cluster(const rectdim_orbit_report* h, int idx,
                                                 double* out);
RECTDIM_API double rectdim_orbit_liminf_t(const rectdim_orbit_report* h);
RECTDIM_API void rectdim_orbit_free(rectdim_orbit_report* h);

/* ---------- covering laboratory ---------- */

RECTDIM_API rectdim_status rectdim_singular_cover_cost(int d, const double* sides, double s,
                                                       double* out);
/* log_counts may be NULL for the default per-direction ball counts */
RECTDIM_API rectdim_status rectdim_cover_count(int d, const double* deltas, double kappa,
                                               const double* a, const double* t, double r,
                                               const double* log_counts, double A,
                                               double* out);
/* shared space/profile, one radius per level, default ball counts */
RECTDIM_API rectdim_status rectdim_critical_exponent(int d, const double* deltas,
                                                     double kappa, const double* a,
                                                     const double* t, int nlevels,
                                                     const double* r, double s_lo,
                                                     double s_hi, double tol, double* out);

typedef struct rectdim_boxcount_report rectdim_boxcount_report;

/* exact box-counting oracle; e^{t_i} = et_p[i]/et_q[i] >= 1 */
RECTDIM_API rectdim_status rectdim_boxcount(int d, const int* bases, const int* digits,
                                            const int* digit_counts, const long long* et_p,
                                            const long long* et_q, int n_from, int n_to,
                                            int grid_steps, rectdim_boxcount_report** out);
RECTDIM_API double rectdim_boxcount_value(const rectdim_boxcount_report* h);
RECTDIM_API double rectdim_boxcount_regression(const rectdim_boxcount_report* h);
RECTDIM_API double rectdim_boxcount_last_raw(const rectdim_boxcount_report* h);
RECTDIM_API double rectdim_boxcount_reference_s(const rectdim_boxcount_report* h);
RECTDIM_API int rectdim_boxcount_levels(const rectdim_boxcount_report* h);
RECTDIM_API rectdim_status rectdim_boxcount_level(const rectdim_boxcount_report* h, int idx,
                                                  int* n, double* raw, double* model_steps,
                                                  double* oracle_steps);
RECTDIM_API int rectdim_boxcount_rows(const rectdim_boxcount_report* h);
RECTDIM_API rectdim_status rectdim_boxcount_row(const rectdim_boxcount_report* h, int idx,
                                                int* n, double* A, double* eps,
                                                double* log_count, double* cost);
RECTDIM_API void rectdim_boxcount_free(rectdim_boxcount_report* h);

/* ---------- ubiquity verification ---------- */

typedef struct rectdim_coverage_report rectdim_coverage_report;

/* system: 0 simultaneous, 1 linear forms, 2 shrinking.
 * method: 0 exact interval sweep (simultaneous m=1 and shrinking),
 *         1 Monte Carlo.
 * a has m entries (ignored for shrinking); axes arrays as in
 * rectdim_shrinking_dim (ignored otherwise); ball_center has the ambient
 * dimension of the system. */
RECTDIM_API rectdim_status rectdim_ubiquity_coverage(
    int system, int m, int n, const double* a, int naxes, const int* bases,
    const int* digits, const int* digit_counts, long long M, const double* ball_center,
    double ball_radius, int k, int method, long long samples, uint64_t seed, int threads,
    int literal_radius, rectdim_coverage_report** out);

RECTDIM_API double rectdim_coverage_fraction(const rectdim_coverage_report* h);
RECTDIM_API double rectdim_coverage_stderr(const rectdim_coverage_report* h);
RECTDIM_API int rectdim_coverage_level(const rectdim_coverage_report* h);
RECTDIM_API double rectdim_coverage_l_k(const rectdim_coverage_report* h);
RECTDIM_API double rectdim_coverage_u_k(const rectdim_coverage_report* h);
RECTDIM_API int rectdim_coverage_degenerate(const rectdim_coverage_report* h);
RECTDIM_API int rectdim_coverage_admissible(const rectdim_coverage_report* h);
RECTDIM_API long long rectdim_coverage_samples(const rectdim_coverage_report* h);
RECTDIM_API void rectdim_coverage_free(rectdim_coverage_report* h);

/* ---------- mass distribution verification ---------- */

typedef struct rectdim_mass_tree rectdim_mass_tree;

RECTDIM_API rectdim_status rectdim_mass_tree_build(int naxes, const int* bases,
                                                   const int* digits,
                                                   const int* digit_counts,
                                                   const long long* et_p,
                                                   const long long* et_q, int depth,
                                                   const int* schedule, long long max_nodes,
                                                   rectdim_mass_tree** out);
RECTDIM_API rectdim_status rectdim_mass_tree_assign(rectdim_mass_tree* h);
RECTDIM_API long long rectdim_mass_tree_nodes(const rectdim_mass_tree* h);
RECTDIM_API long long rectdim_mass_tree_leaf_count(const rectdim_mass_tree* h);
RECTDIM_API double rectdim_mass_tree_conservation_error(const rectdim_mass_tree* h);
RECTDIM_API long long rectdim_mass_tree_anchor_fallbacks(const rectdim_mass_tree* h);
RECTDIM_API int rectdim_mass_tree_geometry_ok(const rectdim_mass_tree* h);
RECTDIM_API double rectdim_mass_tree_leaf_radius(const rectdim_mass_tree* h);
RECTDIM_API rectdim_status rectdim_mass_tree_level(const rectdim_mass_tree* h, int idx,
                                                   long long* balls, double* ratio_min,
                                                   double* ratio_max);
RECTDIM_API rectdim_status rectdim_mass_tree_ball_mass(const rectdim_mass_tree* h,
                                                       const double* center, double r,
                                                       double* out);
/* serialized tree; free the string with rectdim_string_free */
RECTDIM_API rectdim_status rectdim_mass_tree_json(const rectdim_mass_tree* h, char** out);
RECTDIM_API void rectdim_mass_tree_free(rectdim_mass_tree* h);

typedef struct rectdim_holder_report rectdim_holder_report;

RECTDIM_API rectdim_status rectdim_holder_test(const rectdim_mass_tree* h, double s,
                                               double epsilon, int samples, uint64_t seed,
                                               int threads, rectdim_holder_report** out);
RECTDIM_API double rectdim_holder_slope(const rectdim_holder_report* h);
RECTDIM_API int rectdim_holder_pass(const rectdim_holder_report* h);
RECTDIM_API double rectdim_holder_max_ratio(const rectdim_holder_report* h);
RECTDIM_API int rectdim_holder_buckets(const rectdim_holder_report* h);
RECTDIM_API rectdim_status rectdim_holder_bucket(const rectdim_holder_report* h, int idx,
                                                 double* log_r, double* log_ratio);
RECTDIM_API void rectdim_holder_free(rectdim_holder_report* h);

#ifdef __cplusplus
}
#endif

#endif /* RECTDIM_H */
