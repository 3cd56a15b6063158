// Convergence-study orchestration: builds the front-tracking reference and
// the two-scale composite, runs the regularized solver down an epsilon
// ladder, measures region-split error norms and negative-norm diagnostics,
// fits rates, and emits deterministic reports.
#pragma once

#include <string>
#include <utility>
#include <vector>

#include "asymptotic.hpp"
#include "diffuse.hpp"
#include "radial.hpp"
#include "sharp.hpp"

namespace tgsl {

struct RunConfig {
  int dim = 2;
  double r_min = 0.0, r_max = 1.0;
  double R0 = 0.5;
  double sigma_init = 0.0;
  std::vector<double> ladder = {0.1, 0.05, 0.025};
  int order = 1;            // construction order k
  double delta = -1.0;      // blend half-width; < 0 -> auto
  double T = 0.05;
  double dt_coef = 0.1;     // solver step dt = dt_coef * eps^3
  double points_per_eps = 48.0;  // grid h = eps / points_per_eps
  int snapshots = 20;
  std::string out_dir = ".";
  std::string eta_variant = "bump";
  int workers = 0;          // 0 -> one task per ladder entry
  double sharp_dt = 2e-5;
  int sharp_n = 401;
};

// Parses "key = value" lines ('#' comments, blank lines ignored); the same
// syntax is used for command-line overrides.  Unknown keys are rejected.
RunConfig parse_run_config(const std::string& text);
void apply_config_entry(RunConfig* rc, const std::string& key,
                        const std::string& value);
// Checks ladder monotonicity/length and the blend-width geometry constraint.
void validate_run_config(const RunConfig& rc);

// Initial data for the regularized solver from the composite at t = 0:
// sigma0 = sigma^A(.,0) exactly and u0 = phi^A(.,0) - sigma0.
void impose_initial(const AsymptoticBuilder& builder, double eps,
                    const std::vector<double>& r, std::vector<double>* u0,
                    std::vector<double>* sigma0);

enum class NegNormBc { neumann_meanzero, dirichlet };
struct NegNormResult {
  double norm = 0.0;          // ||grad psi||_{L^2}
  double removed_mean = 0.0;  // mean projected out (neumann case)
};
// Energy norm of the Poisson preimage of the field.
NegNormResult negative_norm(const RadialGeometry& g, std::vector<double> field,
                            NegNormBc bc);

struct RateFit {
  double slope = 0.0, intercept = 0.0, residual = 0.0;
};
// Least squares of log e against log eps.  Throws InvalidArgumentError for
// non-positive values or fewer than 3 points, ConsistencyError for repeated
// abscissae.
RateFit fit_rate(const std::vector<std::pair<double, double>>& points);

struct EpsErrors {
  double eps = 0.0;
  double outer_u = 0.0;    // sup over Omega \ Gamma(delta), all snapshots
  double layer_u = 0.0;    // sup over Gamma(delta) vs theta(d0/eps + d1)
  double sup_sigma = 0.0;  // vs the two-phase nutrient field
  double sup_mu = 0.0;     // vs the two-phase potential field
  double interface = 0.0;  // sup_t of the interface-position error
  double neg_phi = 0.0;    // Neumann negative norm of the mass-field error
  double neg_sigma = 0.0;  // Dirichlet negative norm of the nutrient error
  double mass_drift = 0.0;
};

struct ErrorReport {
  std::vector<EpsErrors> rows;   // ladder order
  RateFit rate_outer_u, rate_layer, rate_sigma, rate_mu, rate_interface;
  std::vector<std::string> notes;
};

// Error measurement of one solver run against the construction (region
// split per snapshot, negative norms at the final snapshot).
EpsErrors compare(const DiffuseResult& num, const AsymptoticBuilder& builder,
                  double eps);

// Full pipeline: front-tracking run, composite construction, ladder of
// solver runs (parallel across epsilon), comparison, rate fits.
struct ConvergeArtifacts {
  SharpTrajectory sharp;
  ErrorReport report;
};
ConvergeArtifacts converge_study(const RunConfig& rc);

// Deterministic CSV + SVG + manifest emission into rc.out_dir.
void emit_report(const RunConfig& rc, const ErrorReport& report,
                 const std::string& version);

}  // namespace tgsl
