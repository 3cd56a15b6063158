#include "harness.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <future>
#include <sstream>

#include "csv.hpp"
#include "errors.hpp"
#include "potential.hpp"

namespace tgsl {
namespace {

double to_double(const std::string& s) {
  std::size_t pos = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &pos);
  } catch (const std::exception&) {
    throw InvalidArgumentError("config: not a number: '" + s + "'");
  }
  while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos])))
    ++pos;
  if (pos != s.size())
    throw InvalidArgumentError("config: trailing characters in number: '" + s + "'");
  return v;
}

std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

}  // namespace

void apply_config_entry(RunConfig* rc, const std::string& key,
                        const std::string& value) {
  if (key == "dim")
    rc->dim = static_cast<int>(to_double(value));
  else if (key == "r_min")
    rc->r_min = to_double(value);
  else if (key == "r_max")
    rc->r_max = to_double(value);
  else if (key == "R0")
    rc->R0 = to_double(value);
  else if (key == "sigma_init")
    rc->sigma_init = to_double(value);
  else if (key == "order")
    rc->order = static_cast<int>(to_double(value));
  else if (key == "delta")
    rc->delta = to_double(value);
  else if (key == "T")
    rc->T = to_double(value);
  else if (key == "dt_coef")
    rc->dt_coef = to_double(value);
  else if (key == "points_per_eps")
    rc->points_per_eps = to_double(value);
  else if (key == "snapshots")
    rc->snapshots = static_cast<int>(to_double(value));
  else if (key == "out_dir")
    rc->out_dir = value;
  else if (key == "eta" || key == "eta_variant")
    rc->eta_variant = value;
  else if (key == "workers")
    rc->workers = static_cast<int>(to_double(value));
  else if (key == "sharp_dt")
    rc->sharp_dt = to_double(value);
  else if (key == "sharp_n")
    rc->sharp_n = static_cast<int>(to_double(value));
  else if (key == "ladder") {
    std::vector<double> lad;
    std::stringstream ss(value);
    std::string item;
    while (std::getline(ss, item, ',')) lad.push_back(to_double(trim(item)));
    rc->ladder = lad;
  } else {
    throw InvalidArgumentError("config: unknown key '" + key + "'");
  }
}

RunConfig parse_run_config(const std::string& text) {
  RunConfig rc;
  std::stringstream ss(text);
  std::string line;
  int lineno = 0;
  while (std::getline(ss, line)) {
    ++lineno;
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const std::size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw InvalidArgumentError("config line " + std::to_string(lineno) +
                                 ": expected key = value");
    try {
      apply_config_entry(&rc, trim(line.substr(0, eq)),
                         trim(line.substr(eq + 1)));
    } catch (const InvalidArgumentError& e) {
      throw InvalidArgumentError("config line " + std::to_string(lineno) +
                                 ": " + e.what());
    }
  }
  return rc;
}

void validate_run_config(const RunConfig& rc) {
  if (rc.ladder.size() < 3)
    throw InvalidArgumentError("ladder needs at least 3 entries for rate fits");
  for (std::size_t i = 0; i + 1 < rc.ladder.size(); ++i)
    if (!(rc.ladder[i] > rc.ladder[i + 1]))
      throw InvalidArgumentError("ladder must decrease strictly");
  for (double e : rc.ladder)
    if (!(e > 0.0)) throw InvalidArgumentError("ladder entries must be positive");
  if (rc.eta_variant != "bump")
    throw InvalidArgumentError("unknown mollifier variant '" + rc.eta_variant + "'");
  const double dist = std::min(rc.R0 - rc.r_min, rc.r_max - rc.R0);
  if (rc.delta > 0.0 && !(rc.delta < 0.5 * dist))
    throw InvalidArgumentError(
        "blend width must stay below half the interface-boundary distance");
  if (!(rc.T > 0.0 && rc.dt_coef > 0.0 && rc.points_per_eps > 0.0))
    throw InvalidArgumentError("T, dt_coef, points_per_eps must be positive");
}

void impose_initial(const AsymptoticBuilder& builder, double eps,
                    const std::vector<double>& r, std::vector<double>* u0,
                    std::vector<double>* sigma0) {
  std::vector<CompositeValue> v = builder.eval_grid(eps, 0.0, r);
  u0->resize(r.size());
  sigma0->resize(r.size());
  for (std::size_t i = 0; i < r.size(); ++i) {
    // phi^A(.,0) = u^A + sigma^A (the mass shift vanishes at t = 0), so the
    // split keeps sigma exactly and puts the rest into u.
    (*sigma0)[i] = v[i].sigma;
    (*u0)[i] = v[i].u;
  }
}

NegNormResult negative_norm(const RadialGeometry& g, std::vector<double> field,
                            NegNormBc bc) {
  NegNormResult out;
  std::vector<double> psi;
  if (bc == NegNormBc::neumann_meanzero) {
    out.removed_mean = g.mean(field);
    for (double& v : field) v -= out.removed_mean;
    psi = neumann_poisson_zero_mean(g, field);
  } else {
    psi = dirichlet_poisson(g, field);
  }
  // ||grad psi||^2 = int psi (-Lap psi) = int psi * field.
  double e = 0.0;
  for (std::size_t i = 0; i < field.size(); ++i)
    e += g.vol[i] * psi[i] * field[i];
  out.norm = std::sqrt(std::max(0.0, e));
  return out;
}

RateFit fit_rate(const std::vector<std::pair<double, double>>& points) {
  if (points.size() < 3)
    throw InvalidArgumentError("rate fit needs at least 3 points");
  for (const auto& [x, y] : points)
    if (!(x > 0.0) || !(y > 0.0))
      throw InvalidArgumentError("rate fit needs positive values");
  for (std::size_t i = 0; i < points.size(); ++i)
    for (std::size_t j = i + 1; j < points.size(); ++j)
      if (points[i].first == points[j].first)
        throw ConsistencyError("rate fit: repeated abscissa makes the fit degenerate");
  const std::size_t n = points.size();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (const auto& [x, y] : points) {
    const double lx = std::log(x), ly = std::log(y);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  RateFit f;
  const double det = n * sxx - sx * sx;
  f.slope = (n * sxy - sx * sy) / det;
  f.intercept = (sy * sxx - sx * sxy) / det;
  double r2 = 0.0;
  for (const auto& [x, y] : points) {
    const double d = std::log(y) - (f.slope * std::log(x) + f.intercept);
    r2 += d * d;
  }
  f.residual = std::sqrt(r2 / n);
  return f;
}

EpsErrors compare(const DiffuseResult& num, const AsymptoticBuilder& builder,
                  double eps) {
  const SharpTrajectory& traj = builder.trajectory();
  if (num.cfg.dim != traj.cfg.dim ||
      std::abs(num.cfg.r_min - traj.cfg.r_min) > 1e-12 ||
      std::abs(num.cfg.r_max - traj.cfg.r_max) > 1e-12)
    throw InvalidArgumentError("comparison: geometry mismatch");

  using Field = SharpTrajectory::Field;
  using Side = SharpTrajectory::Side;
  const double delta = builder.delta();
  const std::vector<double>& r = num.r;
  EpsErrors e;
  e.eps = eps;
  e.mass_drift = num.mass_drift / std::max(1e-300, std::abs(num.mass0));

  for (std::size_t k = 0; k < num.snaps.size(); ++k) {
    const DiffuseState& s = num.snaps[k];
    const double t = std::min(s.t, traj.snaps.back().t);
    const double R = traj.R_at(t);
    const double d1v = builder.d1(t);
    std::vector<CompositeValue> A = builder.eval_grid(eps, t, r);
    for (std::size_t i = 0; i < r.size(); ++i) {
      const double d0 = r[i] - R;
      const Side side = (d0 >= 0.0) ? Side::plus : Side::minus;
      if (std::abs(d0) <= delta) {
        const double prof = theta(d0 / eps + d1v);
        e.layer_u = std::max(e.layer_u, std::abs(s.u[i] - prof));
      } else {
        e.outer_u = std::max(e.outer_u, std::abs(s.u[i] - A[i].u));
      }
      const double sg0 = traj.eval(Field::sigma, side, t, r[i]);
      const double mu0 = traj.eval(Field::mu, side, t, r[i]);
      e.sup_sigma = std::max(e.sup_sigma, std::abs(s.sigma[i] - sg0));
      e.sup_mu = std::max(e.sup_mu, std::abs(s.mu[i] - mu0));
    }
    const double Reps = num.interface_position(k);
    if (std::isfinite(Reps))
      e.interface = std::max(e.interface, std::abs(Reps - R));

    if (k + 1 == num.snaps.size()) {
      RadialGeometry g = RadialGeometry::build(num.cfg.dim, r);
      const double shift = builder.mass_correction(eps, t);
      std::vector<double> phi_err(r.size()), sg_err(r.size());
      for (std::size_t i = 0; i < r.size(); ++i) {
        phi_err[i] = (s.u[i] + s.sigma[i]) - (A[i].u + A[i].sigma) + shift;
        sg_err[i] = s.sigma[i] - A[i].sigma;
      }
      e.neg_phi = negative_norm(g, phi_err, NegNormBc::neumann_meanzero).norm;
      e.neg_sigma = negative_norm(g, sg_err, NegNormBc::dirichlet).norm;
    }
  }
  return e;
}

ConvergeArtifacts converge_study(const RunConfig& rc) {
  validate_run_config(rc);

  SharpConfig sc;
  sc.dim = rc.dim;
  sc.r_min = rc.r_min;
  sc.r_max = rc.r_max;
  sc.R0 = rc.R0;
  sc.T = rc.T;
  sc.dt = rc.sharp_dt;
  sc.n_per_side = rc.sharp_n;
  sc.sigma_init = rc.sigma_init;
  const long sharp_steps = std::lround(rc.T / rc.sharp_dt);
  sc.store_every = std::max(1L, sharp_steps / std::max(1, rc.snapshots));
  ConvergeArtifacts out;
  out.sharp = sharp_run(sc);

  AsymptoticConfig ac;
  ac.order = rc.order;
  ac.delta = rc.delta;
  AsymptoticBuilder builder(out.sharp, ac);
  for (const std::string& w : builder.warnings()) out.report.notes.push_back(w);
  out.report.notes.push_back(
      "time interpolation between snapshots is linear for all reference fields");

  auto one_eps = [&](double eps) {
    DiffuseConfig dc;
    dc.dim = rc.dim;
    dc.r_min = rc.r_min;
    dc.r_max = rc.r_max;
    dc.eps = eps;
    dc.T = rc.T;
    dc.dt = rc.dt_coef * eps * eps * eps;
    dc.n = static_cast<int>(
               std::lround((rc.r_max - rc.r_min) * rc.points_per_eps / eps)) +
           1;
    const long steps = std::lround(dc.T / dc.dt);
    dc.store_every =
        std::max(1L, steps / std::max(1, rc.snapshots));
    std::vector<double> r(dc.n);
    const double h = (dc.r_max - dc.r_min) / (dc.n - 1);
    for (int i = 0; i < dc.n; ++i) r[i] = dc.r_min + i * h;
    std::vector<double> u0, sg0;
    impose_initial(builder, eps, r, &u0, &sg0);
    DiffuseResult res = diffuse_run(dc, u0, sg0);
    return compare(res, builder, eps);
  };

  std::vector<std::future<EpsErrors>> jobs;
  for (double eps : rc.ladder)
    jobs.push_back(std::async(std::launch::async, one_eps, eps));
  for (auto& j : jobs) out.report.rows.push_back(j.get());

  auto fit_of = [&](auto field) {
    std::vector<std::pair<double, double>> pts;
    for (const EpsErrors& row : out.report.rows)
      pts.emplace_back(row.eps, field(row));
    return fit_rate(pts);
  };
  out.report.rate_outer_u = fit_of([](const EpsErrors& r) { return r.outer_u; });
  out.report.rate_layer = fit_of([](const EpsErrors& r) { return r.layer_u; });
  out.report.rate_sigma = fit_of([](const EpsErrors& r) { return r.sup_sigma; });
  out.report.rate_mu = fit_of([](const EpsErrors& r) { return r.sup_mu; });
  out.report.rate_interface =
      fit_of([](const EpsErrors& r) { return r.interface; });
  return out;
}

void emit_report(const RunConfig& rc, const ErrorReport& report,
                 const std::string& version) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(rc.out_dir, ec);
  if (ec) throw IoError("cannot create output directory: " + rc.out_dir);

  struct Obs {
    const char* name;
    double EpsErrors::* field;
    const RateFit* fit;
  };
  const Obs obs[] = {
      {"outer_u", &EpsErrors::outer_u, &report.rate_outer_u},
      {"layer_u", &EpsErrors::layer_u, &report.rate_layer},
      {"sup_sigma", &EpsErrors::sup_sigma, &report.rate_sigma},
      {"sup_mu", &EpsErrors::sup_mu, &report.rate_mu},
      {"interface", &EpsErrors::interface, &report.rate_interface},
      {"neg_phi", &EpsErrors::neg_phi, nullptr},
      {"neg_sigma", &EpsErrors::neg_sigma, nullptr},
      {"mass_drift", &EpsErrors::mass_drift, nullptr},
  };

  std::vector<std::vector<std::string>> rows;
  for (const Obs& o : obs)
    for (const EpsErrors& r : report.rows)
      rows.push_back({o.name, format_sci(r.eps), format_sci(r.*o.field)});
  write_csv((fs::path(rc.out_dir) / "errors.csv").string(),
            {"observable", "eps", "value"}, rows);

  rows.clear();
  for (const Obs& o : obs) {
    if (!o.fit) continue;
    rows.push_back({o.name, format_sci(o.fit->slope),
                    format_sci(o.fit->intercept), format_sci(o.fit->residual)});
  }
  write_csv((fs::path(rc.out_dir) / "rates.csv").string(),
            {"observable", "slope", "intercept", "residual"}, rows);

  if (!report.rows.empty()) {
    for (const Obs& o : obs) {
      if (!o.fit) continue;
      std::vector<double> x, y;
      bool positive = true;
      for (const EpsErrors& r : report.rows) {
        x.push_back(r.eps);
        y.push_back(r.*o.field);
        positive = positive && r.*o.field > 0.0;
      }
      if (!positive) continue;
      write_svg_loglog((fs::path(rc.out_dir) / (std::string(o.name) + ".svg")).string(),
                       std::string(o.name) + " vs eps", x, y, o.fit->slope,
                       o.fit->intercept);
    }
  }

  std::ostringstream lad;
  for (std::size_t i = 0; i < rc.ladder.size(); ++i)
    lad << (i ? "," : "") << format_sci(rc.ladder[i]);
  std::vector<std::pair<std::string, std::string>> man = {
      {"version", version},
      {"dim", std::to_string(rc.dim)},
      {"r_min", format_sci(rc.r_min)},
      {"r_max", format_sci(rc.r_max)},
      {"R0", format_sci(rc.R0)},
      {"sigma_init", format_sci(rc.sigma_init)},
      {"ladder", lad.str()},
      {"order", std::to_string(rc.order)},
      {"delta", format_sci(rc.delta)},
      {"T", format_sci(rc.T)},
      {"dt_coef", format_sci(rc.dt_coef)},
      {"points_per_eps", format_sci(rc.points_per_eps)},
      {"snapshots", std::to_string(rc.snapshots)},
      {"eta", rc.eta_variant},
      {"sharp_dt", format_sci(rc.sharp_dt)},
      {"sharp_n", std::to_string(rc.sharp_n)},
  };
  for (std::size_t i = 0; i < report.notes.size(); ++i)
    man.emplace_back("note_" + std::to_string(i), report.notes[i]);
  write_manifest((fs::path(rc.out_dir) / "manifest.json").string(), man);
}

}  // namespace tgsl
