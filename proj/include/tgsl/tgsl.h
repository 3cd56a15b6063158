/* C interface to the tumor-growth sharp-interface toolkit.
 *
 * Every entry point that can fail returns a tgsl_status; on failure the
 * thread-local message from tgsl_last_error() describes the problem.  All
 * file-writing calls emit deterministic CSV (header row, '.' decimal,
 * scientific notation with 17 significant digits).
 */
#ifndef TGSL_H
#define TGSL_H

#ifdef __cplusplus
extern "C" {
#endif

typedef enum tgsl_status {
  TGSL_OK = 0,
  TGSL_INVALID_ARGUMENT = 1, /* bad parameter or config entry */
  TGSL_NUMERICAL = 2,        /* solver failure or blow-up */
  TGSL_GEOMETRY = 3,         /* interface reached the boundary guard band */
  TGSL_CONSISTENCY = 4,      /* internal cross-check failed */
  TGSL_IO = 5,               /* file could not be written or read */
  TGSL_UNKNOWN = 6
} tgsl_status;

/* Library version, e.g. "0.1.0". */
const char* tgsl_version(void);

/* Message from the most recent failing call on this thread; "" if the last
 * call succeeded. The pointer stays valid until the next call on the same
 * thread. */
const char* tgsl_last_error(void);

/* ---- pointwise profile data ------------------------------------------- */

/* Standing-wave profile theta(z) = tanh(sqrt(2) z) and its derivative. */
double tgsl_profile_theta(double z);
double tgsl_profile_theta_prime(double z);

/* Surface-tension constant S = integral of sqrt(2 f(theta)) theta'. */
double tgsl_surface_tension(void);

/* Coefficient c in the interface condition mu = c * kappa (equals S / 2). */
double tgsl_gibbs_thomson_coefficient(void);

/* ---- radial geometry shared by the PDE drivers ------------------------ */

typedef struct tgsl_geometry {
  int dim;           /* 1 = interval, 2 or 3 = ball in R^dim */
  double r_min;      /* inner end of the radial domain (0 for the ball) */
  double r_max;      /* outer end */
  double R0;         /* initial interface radius */
  double sigma_init; /* spatially constant initial nutrient level */
} tgsl_geometry;

/* ---- subcommand drivers ------------------------------------------------ */

/* Samples theta, theta', f''(theta) and the matching-window weights on n
 * uniform nodes of [z_min, z_max]; columns z, theta, theta_p, d2f, eta,
 * eta_p. */
tgsl_status tgsl_profile_csv(double z_min, double z_max, int n,
                             const char* path);

/* Eigenvalue ladder of the linearized interface operator on (-1/eps, 1/eps)
 * for each of the n_eps epsilon values; grid_n nodes, `count` lowest
 * eigenvalues per run.  Columns epsilon, lambda1, lambda2, deviation, alpha,
 * lambda1_censored. */
tgsl_status tgsl_spectral_csv(const double* eps, int n_eps, int grid_n,
                              int count, const char* path);

/* Front-tracking run of the two-phase free-boundary system; one row per
 * stored snapshot with columns t, R, V, kappa, max_abs_mu, max_abs_sigma.
 * dt <= 0 and n_per_side <= 0 select the solver defaults. */
tgsl_status tgsl_sharp_csv(const tgsl_geometry* geo, int n_per_side,
                           double dt, double T, int store_every,
                           const char* path);

/* Two-scale composite of order k in {0, 1} at time t, glued with blend
 * half-width delta (delta <= 0 selects the automatic width).  fields_path
 * receives one row per node (r, u, mu, sigma); residuals_path (optional,
 * may be NULL) receives the residual sup-norms of the original system under
 * the composite, the seam gaps, and the first-order interface shift. */
tgsl_status tgsl_construct_csv(const tgsl_geometry* geo, double eps,
                               int order, double delta, int n, double t,
                               const char* fields_path,
                               const char* residuals_path);

/* Conservative solver run for the regularized two-field system, started
 * from the order-1 composite at t = 0.  n <= 0 and dt <= 0 select the
 * resolution policy h = eps / 48, dt = 0.1 eps^3.  observables_path gets
 * one row per snapshot (t, interface, energy, sup_abs_u); fields_path
 * (optional, may be NULL) gets the final fields (r, u, sigma, mu).  The
 * relative mass drift of the run is appended to the observables file as a
 * trailing comment-free row with t = -1. */
tgsl_status tgsl_diffuse_csv(const tgsl_geometry* geo, double eps, int n,
                             double dt, double T, int store_every,
                             const char* observables_path,
                             const char* fields_path);

/* Full epsilon-ladder convergence study.  config_text holds "key = value"
 * lines ('#' comments allowed; NULL or "" keeps the defaults); overrides,
 * if non-NULL, is a semicolon-separated list of further "key=value" entries
 * applied on top.  Reports (errors.csv, rates.csv, SVG plots, manifest)
 * are written into out_dir. */
tgsl_status tgsl_converge_run(const char* config_text, const char* overrides,
                              const char* out_dir);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* TGSL_H */
