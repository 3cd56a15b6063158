// C ABI over the core library: exceptions become status codes, results
// become CSV files written through the deterministic emitters.
#include "tgsl/tgsl.h"

#include <cmath>
#include <cstddef>
#include <exception>
#include <string>
#include <vector>

#include "core/asymptotic.hpp"
#include "core/csv.hpp"
#include "core/diffuse.hpp"
#include "core/errors.hpp"
#include "core/harness.hpp"
#include "core/potential.hpp"
#include "core/sharp.hpp"
#include "core/spectral.hpp"

namespace {

thread_local std::string g_last_error;

template <typename Fn>
tgsl_status guarded(Fn&& fn) {
  try {
    fn();
    g_last_error.clear();
    return TGSL_OK;
  } catch (const tgsl::InvalidArgumentError& e) {
    g_last_error = e.what();
    return TGSL_INVALID_ARGUMENT;
  } catch (const tgsl::NumericalError& e) {
    g_last_error = e.what();
    return TGSL_NUMERICAL;
  } catch (const tgsl::GeometryError& e) {
    g_last_error = e.what();
    return TGSL_GEOMETRY;
  } catch (const tgsl::ConsistencyError& e) {
    g_last_error = e.what();
    return TGSL_CONSISTENCY;
  } catch (const tgsl::IoError& e) {
    g_last_error = e.what();
    return TGSL_IO;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return TGSL_UNKNOWN;
  } catch (...) {
    g_last_error = "unknown error";
    return TGSL_UNKNOWN;
  }
}

void require(bool ok, const std::string& msg) {
  if (!ok) throw tgsl::InvalidArgumentError(msg);
}

tgsl::SharpConfig sharp_config(const tgsl_geometry& geo) {
  tgsl::SharpConfig sc;
  sc.dim = geo.dim;
  sc.r_min = geo.r_min;
  sc.r_max = geo.r_max;
  sc.R0 = geo.R0;
  sc.sigma_init = geo.sigma_init;
  return sc;
}

// Front-tracking reference covering [0, T] for the construction drivers.
tgsl::SharpTrajectory reference_trajectory(const tgsl_geometry& geo, double T) {
  tgsl::SharpConfig sc = sharp_config(geo);
  sc.T = T;
  const int steps = std::max(20, static_cast<int>(std::ceil(T / sc.dt)));
  sc.dt = T / steps;
  sc.store_every = std::max(1, steps / 50);
  return tgsl::sharp_run(sc);
}

}  // namespace

extern "C" {

const char* tgsl_version(void) { return "0.1.0"; }

const char* tgsl_last_error(void) { return g_last_error.c_str(); }

double tgsl_profile_theta(double z) { return tgsl::theta(z); }

double tgsl_profile_theta_prime(double z) { return tgsl::theta_p(z); }

double tgsl_surface_tension(void) { return tgsl::surface_tension(); }

double tgsl_gibbs_thomson_coefficient(void) {
  return tgsl::gibbs_thomson_coefficient();
}

tgsl_status tgsl_profile_csv(double z_min, double z_max, int n,
                             const char* path) {
  return guarded([&] {
    require(path != nullptr, "profile: path is null");
    require(n >= 2, "profile: need at least 2 nodes");
    require(z_max > z_min, "profile: z_max must exceed z_min");
    const double h = (z_max - z_min) / (n - 1);
    std::vector<std::vector<std::string>> rows;
    rows.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
      const double z = z_min + i * h;
      rows.push_back({tgsl::format_sci(z), tgsl::format_sci(tgsl::theta(z)),
                      tgsl::format_sci(tgsl::theta_p(z)),
                      tgsl::format_sci(tgsl::potential_d2f(tgsl::theta(z))),
                      tgsl::format_sci(tgsl::mollifier(z)),
                      tgsl::format_sci(tgsl::mollifier_p(z))});
    }
    tgsl::write_csv(path, {"z", "theta", "theta_p", "d2f", "eta", "eta_p"},
                    rows);
  });
}

tgsl_status tgsl_spectral_csv(const double* eps, int n_eps, int grid_n,
                              int count, const char* path) {
  return guarded([&] {
    require(path != nullptr, "spectral: path is null");
    require(eps != nullptr && n_eps >= 1, "spectral: empty epsilon list");
    std::vector<std::vector<std::string>> rows;
    for (int k = 0; k < n_eps; ++k) {
      const tgsl::SpectralResult res =
          tgsl::spectral_solve(eps[k], grid_n, count);
      rows.push_back({tgsl::format_sci(res.eps),
                      tgsl::format_sci(res.lambda[0]),
                      tgsl::format_sci(res.lambda[1]),
                      tgsl::format_sci(res.deviation),
                      tgsl::format_sci(res.alpha),
                      res.lambda1_censored ? "1" : "0"});
    }
    tgsl::write_csv(path,
                    {"epsilon", "lambda1", "lambda2", "deviation", "alpha",
                     "lambda1_censored"},
                    rows);
  });
}

tgsl_status tgsl_sharp_csv(const tgsl_geometry* geo, int n_per_side,
                           double dt, double T, int store_every,
                           const char* path) {
  return guarded([&] {
    require(geo != nullptr, "sharp: geometry is null");
    require(path != nullptr, "sharp: path is null");
    require(T > 0.0, "sharp: final time must be positive");
    tgsl::SharpConfig sc = sharp_config(*geo);
    sc.T = T;
    if (n_per_side > 0) sc.n_per_side = n_per_side;
    if (dt > 0.0) sc.dt = dt;
    if (store_every > 0) sc.store_every = store_every;
    const tgsl::SharpTrajectory traj = tgsl::sharp_run(sc);
    std::vector<std::vector<std::string>> rows;
    for (const tgsl::SharpState& s : traj.snaps) {
      double mmu = 0.0, msg = 0.0;
      for (double v : s.mum) mmu = std::max(mmu, std::fabs(v));
      for (double v : s.mup) mmu = std::max(mmu, std::fabs(v));
      for (double v : s.sgm) msg = std::max(msg, std::fabs(v));
      for (double v : s.sgp) msg = std::max(msg, std::fabs(v));
      rows.push_back({tgsl::format_sci(s.t), tgsl::format_sci(s.R),
                      tgsl::format_sci(s.V), tgsl::format_sci(s.kappa),
                      tgsl::format_sci(mmu), tgsl::format_sci(msg)});
    }
    tgsl::write_csv(path, {"t", "R", "V", "kappa", "max_abs_mu",
                           "max_abs_sigma"},
                    rows);
  });
}

tgsl_status tgsl_construct_csv(const tgsl_geometry* geo, double eps,
                               int order, double delta, int n, double t,
                               const char* fields_path,
                               const char* residuals_path) {
  return guarded([&] {
    require(geo != nullptr, "construct: geometry is null");
    require(fields_path != nullptr, "construct: fields path is null");
    require(eps > 0.0, "construct: epsilon must be positive");
    require(order == 0 || order == 1, "construct: order must be 0 or 1");
    require(n >= 2, "construct: need at least 2 nodes");
    require(t >= 0.0, "construct: time must be nonnegative");
    const double T = std::max(2.0 * t, 0.01);
    const tgsl::SharpTrajectory traj = reference_trajectory(*geo, T);
    tgsl::AsymptoticConfig ac;
    ac.order = order;
    ac.delta = delta > 0.0 ? delta : -1.0;
    const tgsl::AsymptoticBuilder builder(traj, ac);

    std::vector<double> r(static_cast<std::size_t>(n));
    const double h = (geo->r_max - geo->r_min) / (n - 1);
    for (int i = 0; i < n; ++i) r[i] = geo->r_min + i * h;
    const std::vector<tgsl::CompositeValue> vals =
        builder.eval_grid(eps, t, r);
    std::vector<std::vector<std::string>> rows;
    rows.reserve(r.size());
    for (std::size_t i = 0; i < r.size(); ++i) {
      rows.push_back({tgsl::format_sci(r[i]), tgsl::format_sci(vals[i].u),
                      tgsl::format_sci(vals[i].mu),
                      tgsl::format_sci(vals[i].sigma)});
    }
    tgsl::write_csv(fields_path, {"r", "u", "mu", "sigma"}, rows);

    if (residuals_path != nullptr) {
      const tgsl::ResidualNorms w = builder.residual_norms(eps, t);
      const tgsl::SeamGap gap = builder.seam_gap(eps, t);
      tgsl::write_csv(
          residuals_path,
          {"w1", "w2", "w3", "w4", "seam_u", "seam_mu", "seam_sigma", "d1",
           "delta"},
          {{tgsl::format_sci(w.w1), tgsl::format_sci(w.w2),
            tgsl::format_sci(w.w3), tgsl::format_sci(w.w4),
            tgsl::format_sci(gap.u), tgsl::format_sci(gap.mu),
            tgsl::format_sci(gap.sigma),
            tgsl::format_sci(order == 1 ? builder.d1(t) : 0.0),
            tgsl::format_sci(builder.delta())}});
    }
  });
}

tgsl_status tgsl_diffuse_csv(const tgsl_geometry* geo, double eps, int n,
                             double dt, double T, int store_every,
                             const char* observables_path,
                             const char* fields_path) {
  return guarded([&] {
    require(geo != nullptr, "diffuse: geometry is null");
    require(observables_path != nullptr, "diffuse: observables path is null");
    require(eps > 0.0, "diffuse: epsilon must be positive");
    require(T > 0.0, "diffuse: final time must be positive");
    const tgsl::SharpTrajectory traj = reference_trajectory(*geo, T);
    tgsl::AsymptoticConfig ac;
    const tgsl::AsymptoticBuilder builder(traj, ac);

    tgsl::DiffuseConfig dc;
    dc.dim = geo->dim;
    dc.r_min = geo->r_min;
    dc.r_max = geo->r_max;
    dc.eps = eps;
    dc.T = T;
    dc.n = n > 0 ? n
                 : static_cast<int>(
                       std::lround((geo->r_max - geo->r_min) * 48.0 / eps)) +
                       1;
    dc.dt = dt > 0.0 ? dt : 0.1 * eps * eps * eps;
    const int steps = std::max(1, static_cast<int>(std::ceil(T / dc.dt)));
    dc.store_every = store_every > 0 ? store_every : std::max(1, steps / 20);

    std::vector<double> rg(static_cast<std::size_t>(dc.n));
    const double h = (dc.r_max - dc.r_min) / (dc.n - 1);
    for (int i = 0; i < dc.n; ++i) rg[i] = dc.r_min + i * h;
    std::vector<double> u0, s0;
    tgsl::impose_initial(builder, eps, rg, &u0, &s0);
    const tgsl::DiffuseResult res =
        tgsl::diffuse_run(dc, std::move(u0), std::move(s0));

    std::vector<std::vector<std::string>> rows;
    for (std::size_t k = 0; k < res.snaps.size(); ++k) {
      double su = 0.0;
      for (double v : res.snaps[k].u) su = std::max(su, std::fabs(v));
      rows.push_back({tgsl::format_sci(res.snaps[k].t),
                      tgsl::format_sci(res.interface_position(k)),
                      tgsl::format_sci(res.energy[k]),
                      tgsl::format_sci(su)});
    }
    const double rel =
        res.mass_drift / std::max(std::fabs(res.mass0), 1e-300);
    rows.push_back({tgsl::format_sci(-1.0), tgsl::format_sci(rel),
                    tgsl::format_sci(0.0), tgsl::format_sci(0.0)});
    tgsl::write_csv(observables_path,
                    {"t", "interface", "energy", "sup_abs_u"}, rows);

    if (fields_path != nullptr) {
      const tgsl::DiffuseState& last = res.snaps.back();
      std::vector<std::vector<std::string>> frows;
      frows.reserve(res.r.size());
      for (std::size_t i = 0; i < res.r.size(); ++i) {
        frows.push_back({tgsl::format_sci(res.r[i]),
                         tgsl::format_sci(last.u[i]),
                         tgsl::format_sci(last.sigma[i]),
                         tgsl::format_sci(last.mu[i])});
      }
      tgsl::write_csv(fields_path, {"r", "u", "sigma", "mu"}, frows);
    }
  });
}

tgsl_status tgsl_converge_run(const char* config_text, const char* overrides,
                              const char* out_dir) {
  return guarded([&] {
    require(out_dir != nullptr, "converge: output directory is null");
    tgsl::RunConfig rc =
        tgsl::parse_run_config(config_text != nullptr ? config_text : "");
    if (overrides != nullptr) {
      std::string rest = overrides;
      while (!rest.empty()) {
        const std::size_t semi = rest.find(';');
        std::string entry = rest.substr(0, semi);
        rest = semi == std::string::npos ? "" : rest.substr(semi + 1);
        const std::size_t b = entry.find_first_not_of(" \t");
        if (b == std::string::npos) continue;
        const std::size_t e = entry.find_last_not_of(" \t");
        entry = entry.substr(b, e - b + 1);
        const std::size_t eq = entry.find('=');
        require(eq != std::string::npos,
                "converge: override '" + entry + "' is not key=value");
        auto trim = [](std::string s) {
          const std::size_t a = s.find_first_not_of(" \t");
          if (a == std::string::npos) return std::string();
          const std::size_t z = s.find_last_not_of(" \t");
          return s.substr(a, z - a + 1);
        };
        tgsl::apply_config_entry(&rc, trim(entry.substr(0, eq)),
                                 trim(entry.substr(eq + 1)));
      }
    }
    rc.out_dir = out_dir;
    tgsl::validate_run_config(rc);
    const tgsl::ConvergeArtifacts art = tgsl::converge_study(rc);
    tgsl::emit_report(rc, art.report, tgsl_version());
  });
}

}  // extern "C"
