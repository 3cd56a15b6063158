// Command-line driver for the sharp-interface toolkit.  Talks to the core
// exclusively through the C API; on failure prints one machine-parsable
// line "error: <status>: <message>" to stderr and exits nonzero.
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "tgsl/tgsl.h"

namespace {

const char* status_name(tgsl_status s) {
  switch (s) {
    case TGSL_OK: return "ok";
    case TGSL_INVALID_ARGUMENT: return "invalid-argument";
    case TGSL_NUMERICAL: return "numerical";
    case TGSL_GEOMETRY: return "geometry";
    case TGSL_CONSISTENCY: return "consistency";
    case TGSL_IO: return "io";
    default: return "unknown";
  }
}

int finish(tgsl_status s) {
  if (s == TGSL_OK) return 0;
  std::fprintf(stderr, "error: %s: %s\n", status_name(s), tgsl_last_error());
  return static_cast<int>(s);
}

std::string join_path(const std::string& dir, const std::string& name) {
  if (dir.empty() || dir == ".") return name;
  if (dir.back() == '/') return dir + name;
  return dir + "/" + name;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Radial solvers and convergence studies for a two-field "
               "interface-motion model"};
  app.require_subcommand(1);
  app.fallthrough();  // global flags may follow the subcommand name
  app.set_version_flag("--version", std::string(tgsl_version()));

  std::string out_dir = ".";
  app.add_option("-o,--out-dir", out_dir, "Directory for output files")
      ->capture_default_str();

  tgsl_geometry geo{2, 0.0, 1.0, 0.5, 0.0};
  auto add_geometry = [&geo](CLI::App* cmd) {
    cmd->add_option("--dim", geo.dim, "1 = interval, 2/3 = ball")
        ->check(CLI::Range(1, 3))->capture_default_str();
    cmd->add_option("--r-min", geo.r_min, "Inner end of the domain")
        ->capture_default_str();
    cmd->add_option("--r-max", geo.r_max, "Outer end of the domain")
        ->capture_default_str();
    cmd->add_option("--R0", geo.R0, "Initial interface radius")
        ->capture_default_str();
    cmd->add_option("--sigma0", geo.sigma_init,
                    "Constant initial nutrient level")
        ->capture_default_str();
  };

  // profile ---------------------------------------------------------------
  double z_min = -8.0, z_max = 8.0;
  int profile_n = 801;
  std::string profile_out = "profile.csv";
  CLI::App* profile = app.add_subcommand(
      "profile", "Sample the standing-wave profile and blending weights");
  profile->add_option("--z-min", z_min, "Left end")->capture_default_str();
  profile->add_option("--z-max", z_max, "Right end")->capture_default_str();
  profile->add_option("-n,--nodes", profile_n, "Sample count")
      ->capture_default_str();
  profile->add_option("--csv", profile_out, "Output file name")
      ->capture_default_str();

  // spectral ----------------------------------------------------------------
  std::vector<double> spec_eps = {0.1, 0.05, 0.025};
  int spec_n = 4001, spec_count = 4;
  std::string spec_out = "spectral.csv";
  CLI::App* spectral = app.add_subcommand(
      "spectral", "Eigenvalue ladder of the linearized interface operator");
  spectral->add_option("--eps", spec_eps, "Epsilon ladder")
      ->capture_default_str();
  spectral->add_option("-n,--nodes", spec_n, "Grid nodes per solve")
      ->capture_default_str();
  spectral->add_option("--count", spec_count, "Eigenvalues per solve")
      ->capture_default_str();
  spectral->add_option("--csv", spec_out, "Output file name")
      ->capture_default_str();

  // sharp -------------------------------------------------------------------
  int sharp_n = 401, sharp_store = 25;
  double sharp_dt = 2e-5, sharp_T = 0.05;
  std::string sharp_out = "sharp.csv";
  CLI::App* sharp = app.add_subcommand(
      "sharp", "Front-tracking run of the free-boundary system");
  add_geometry(sharp);
  sharp->add_option("-n,--nodes", sharp_n, "Nodes per sub-grid")
      ->capture_default_str();
  sharp->add_option("--dt", sharp_dt, "Time step")->capture_default_str();
  sharp->add_option("-T,--final-time", sharp_T, "Final time")
      ->capture_default_str();
  sharp->add_option("--store-every", sharp_store, "Snapshot cadence (steps)")
      ->capture_default_str();
  sharp->add_option("--csv", sharp_out, "Output file name")
      ->capture_default_str();

  // construct ---------------------------------------------------------------
  double con_eps = 0.05, con_delta = -1.0, con_t = 0.02;
  int con_order = 1, con_n = 2001;
  std::string con_fields = "construct_fields.csv";
  std::string con_resid = "construct_residuals.csv";
  bool con_no_resid = false;
  CLI::App* construct = app.add_subcommand(
      "construct", "Glued two-scale approximation and its residual norms");
  add_geometry(construct);
  construct->add_option("--eps", con_eps, "Interface-width parameter")
      ->capture_default_str();
  construct->add_option("-k,--order", con_order, "Construction order (0 or 1)")
      ->check(CLI::Range(0, 1))->capture_default_str();
  construct->add_option("--delta", con_delta,
                        "Blend half-width (<= 0 for automatic)")
      ->capture_default_str();
  construct->add_option("-n,--nodes", con_n, "Evaluation grid nodes")
      ->capture_default_str();
  construct->add_option("-t,--time", con_t, "Evaluation time")
      ->capture_default_str();
  construct->add_option("--fields-csv", con_fields, "Field-profile file name")
      ->capture_default_str();
  construct->add_option("--residuals-csv", con_resid,
                        "Residual-norm file name")
      ->capture_default_str();
  construct->add_flag("--no-residuals", con_no_resid,
                      "Skip the residual-norm output");

  // diffuse -----------------------------------------------------------------
  double dif_eps = 0.1, dif_dt = -1.0, dif_T = 0.05;
  int dif_n = -1, dif_store = -1;
  std::string dif_obs = "diffuse_observables.csv";
  std::string dif_fields;
  CLI::App* diffuse = app.add_subcommand(
      "diffuse", "Conservative solver run started from the glued data");
  add_geometry(diffuse);
  diffuse->add_option("--eps", dif_eps, "Interface-width parameter")
      ->capture_default_str();
  diffuse->add_option("-n,--nodes", dif_n,
                      "Grid nodes (<= 0 for eps/48 resolution)")
      ->capture_default_str();
  diffuse->add_option("--dt", dif_dt, "Time step (<= 0 for 0.1 eps^3)")
      ->capture_default_str();
  diffuse->add_option("-T,--final-time", dif_T, "Final time")
      ->capture_default_str();
  diffuse->add_option("--store-every", dif_store,
                      "Snapshot cadence (steps, <= 0 for ~20 snapshots)")
      ->capture_default_str();
  diffuse->add_option("--csv", dif_obs, "Observables file name")
      ->capture_default_str();
  diffuse->add_option("--fields-csv", dif_fields,
                      "Optional final-field dump file name");

  // converge ----------------------------------------------------------------
  std::string conv_config;
  std::vector<std::string> conv_set;
  CLI::App* converge = app.add_subcommand(
      "converge", "Epsilon-ladder convergence study with rate fits");
  converge->add_option("-c,--config", conv_config,
                       "Config file with key = value lines")
      ->check(CLI::ExistingFile);
  converge->add_option("-s,--set", conv_set,
                       "Config override, key=value (repeatable)");

  CLI11_PARSE(app, argc, argv);

  if (profile->parsed()) {
    return finish(tgsl_profile_csv(z_min, z_max, profile_n,
                                   join_path(out_dir, profile_out).c_str()));
  }
  if (spectral->parsed()) {
    return finish(tgsl_spectral_csv(spec_eps.data(),
                                    static_cast<int>(spec_eps.size()), spec_n,
                                    spec_count,
                                    join_path(out_dir, spec_out).c_str()));
  }
  if (sharp->parsed()) {
    return finish(tgsl_sharp_csv(&geo, sharp_n, sharp_dt, sharp_T,
                                 sharp_store,
                                 join_path(out_dir, sharp_out).c_str()));
  }
  if (construct->parsed()) {
    const std::string fields = join_path(out_dir, con_fields);
    const std::string resid = join_path(out_dir, con_resid);
    return finish(tgsl_construct_csv(&geo, con_eps, con_order, con_delta,
                                     con_n, con_t, fields.c_str(),
                                     con_no_resid ? nullptr : resid.c_str()));
  }
  if (diffuse->parsed()) {
    const std::string obs = join_path(out_dir, dif_obs);
    const std::string fields = join_path(out_dir, dif_fields);
    return finish(tgsl_diffuse_csv(&geo, dif_eps, dif_n, dif_dt, dif_T,
                                   dif_store, obs.c_str(),
                                   dif_fields.empty() ? nullptr
                                                      : fields.c_str()));
  }
  if (converge->parsed()) {
    std::string text;
    if (!conv_config.empty()) {
      std::ifstream in(conv_config);
      std::ostringstream ss;
      ss << in.rdbuf();
      text = ss.str();
    }
    std::string overrides;
    for (const std::string& s : conv_set) {
      if (!overrides.empty()) overrides += ';';
      overrides += s;
    }
    return finish(tgsl_converge_run(text.c_str(), overrides.c_str(),
                                    out_dir.c_str()));
  }
  return 0;
}
