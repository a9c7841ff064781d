#include "nlscrit/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <thread>

#include "json.hpp"
#include "nlscrit/csv.hpp"
#include "nlscrit/errors.hpp"

#ifndef NLSCRIT_VERSION
#define NLSCRIT_VERSION "unknown"
#endif

namespace nlscrit::harness {

using nlohmann::json;

namespace {

hodograph::FOracle make_oracle(const InitialCondition& ic) {
  if (ic.family == "satsuma_yajima") return hodograph::satsuma_yajima(ic.A0);
  if (ic.family == "symmetric_mu") return hodograph::symmetric_mu(ic.A0, ic.mu);
  if (ic.family == "tvz_mu2") return hodograph::tvz_mu2();
  if (ic.family == "nonsymmetric") return hodograph::nonsymmetric(ic.alpha);
  throw DomainError("unknown initial condition family " + ic.family);
}

std::pair<double, double> critical_guess(const InitialCondition& ic) {
  if (ic.family == "satsuma_yajima") return {2.0 * ic.A0 * ic.A0 + 0.01, 0.01};
  if (ic.family == "symmetric_mu") return {2.0 * ic.A0 * ic.A0 + ic.mu + 0.01, 0.01};
  if (ic.family == "tvz_mu2") return {4.01, 0.01};
  return {3.3, -1.5};
}

std::string eps_dir(double eps) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "eps_%.4g", eps);
  return buf;
}

}  // namespace

Setup make_setup(const InitialCondition& ic, double L) {
  hodograph::FOracle f = make_oracle(ic);
  hodograph::InitialDataOptions opts = hodograph::initial_data_options(ic.family, ic.A0, ic.mu, ic.alpha, L);
  auto data = std::make_shared<const hodograph::InitialData>(f, opts);
  const hodograph::CriticalPoint cp = hodograph::find_critical_point(f, critical_guess(ic));
  return {ic, L, std::move(f), std::move(opts), std::move(data), cp};
}

nls::WaveField initial_field(const Setup& setup, double epsilon, int N, double filter_threshold) {
  const int n = N > 0 ? N : nls::default_grid_size(epsilon);
  const std::vector<double> grid = nls::uniform_grid(setup.L, n);
  return nls::from_madelung(setup.data->sample(grid), epsilon, setup.L, filter_threshold);
}

std::string to_string(Experiment e) {
  switch (e) {
    case Experiment::semiclassical_halftime: return "semiclassical_halftime";
    case Experiment::critical_time: return "critical_time";
    case Experiment::multiscale_window: return "multiscale_window";
    case Experiment::before_breakup: return "before_breakup";
    case Experiment::after_breakup: return "after_breakup";
  }
  return "?";
}

Experiment experiment_from_string(const std::string& s) {
  for (Experiment e : {Experiment::semiclassical_halftime, Experiment::critical_time,
                       Experiment::multiscale_window, Experiment::before_breakup,
                       Experiment::after_breakup})
    if (to_string(e) == s) return e;
  throw DomainError("unknown experiment " + s);
}

double comparison_time(Experiment e, const hodograph::CriticalPoint& cp, double epsilon,
                       double beta) {
  switch (e) {
    case Experiment::semiclassical_halftime: return 0.5 * cp.t0;
    case Experiment::critical_time:
    case Experiment::multiscale_window: return cp.t0;
    case Experiment::before_breakup: return multiscale::t_schedule(cp, epsilon, beta).t_plus;
    case Experiment::after_breakup: return multiscale::t_schedule(cp, epsilon, beta).t_minus;
  }
  return cp.t0;
}

namespace {

PointResult run_point(const ExperimentConfig& cfg, const Setup& setup,
                      multiscale::OmegaCache& cache, double eps,
                      std::vector<std::filesystem::path>& outputs) {
  PointResult pr;
  pr.epsilon = eps;
  pr.t = comparison_time(cfg.experiment, setup.cp, eps, cfg.beta);
  const nls::WaveField f0 = initial_field(setup, eps, cfg.N, cfg.filter_threshold);
  pr.N = f0.N();
  pr.dt = cfg.dt > 0.0 ? cfg.dt : nls::default_time_step(eps);

  nls::EvolutionConfig ec;
  ec.t_end = pr.t;
  ec.dt = pr.dt;
  ec.filter_threshold = cfg.filter_threshold;
  ec.scheme = cfg.scheme;
  const nls::EvolutionResult ev = nls::evolve(f0, ec);
  const auto& tr = ev.trace;
  for (const auto& row : tr) {
    pr.mass_drift = std::max(pr.mass_drift, std::abs(row.mass / tr.front().mass - 1.0));
    pr.hamiltonian_drift =
        std::max(pr.hamiltonian_drift, std::abs(row.hamiltonian / tr.front().hamiltonian - 1.0));
  }
  const nls::Madelung m = nls::to_madelung(ev.field);
  const std::filesystem::path dir = cfg.out_dir.empty() ? "" : cfg.out_dir / eps_dir(eps);

  if (!dir.empty()) {
    std::vector<double> x(pr.N), re(pr.N), im(pr.N);
    for (int j = 0; j < pr.N; ++j) {
      x[j] = ev.field.x(j);
      re[j] = ev.field.psi[j].real();
      im[j] = ev.field.psi[j].imag();
    }
    csv::write_file(dir / "snapshot.csv", {"x", "re_psi", "im_psi", "u", "v"}, {x, re, im, m.u, m.v});
    std::vector<double> t, mass, H;
    for (const auto& row : tr) {
      t.push_back(row.t);
      mass.push_back(row.mass);
      H.push_back(row.hamiltonian);
    }
    csv::write_file(dir / "diagnostics.csv", {"t", "mass", "H"}, {t, mass, H});
    outputs.push_back(dir / "snapshot.csv");
    outputs.push_back(dir / "diagnostics.csv");
  }

  if (cfg.experiment == Experiment::semiclassical_halftime ||
      cfg.experiment == Experiment::critical_time) {
    std::vector<double> xs, un, vn;
    for (int j = 0; j < pr.N; ++j) {
      const double xj = ev.field.x(j);
      if (std::abs(xj - setup.cp.x0) > cfg.semicl_half_width) continue;
      xs.push_back(xj);
      un.push_back(m.u[j]);
      vn.push_back(m.v[j]);
    }
    // The cusp of the semiclassical solution sits at x0, generally between nodes.
    const nls::cplx psi0 = nls::interpolate(ev.field, setup.cp.x0);
    const auto dpsi = nls::spectral_derivative(ev.field.psi, ev.field.L);
    nls::WaveField deriv = ev.field;
    deriv.psi = dpsi;
    const nls::cplx dpsi0 = nls::interpolate(deriv, setup.cp.x0);
    const auto at = std::lower_bound(xs.begin(), xs.end(), setup.cp.x0) - xs.begin();
    xs.insert(xs.begin() + at, setup.cp.x0);
    un.insert(un.begin() + at, std::norm(psi0));
    vn.insert(vn.begin() + at, eps * (std::conj(psi0) * dpsi0).imag() / std::norm(psi0));
    const auto sc = multiscale::semiclassical_solution(setup.f, *setup.data, setup.options,
                                                       setup.cp, xs, pr.t);
    std::vector<double> us(xs.size()), vs(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) {
      us[i] = sc[i].u;
      vs[i] = sc[i].v;
      pr.error = std::max(pr.error, std::abs(us[i] - un[i]));
      pr.linf_v = std::max(pr.linf_v, std::abs(vs[i] - vn[i]));
    }
    if (!dir.empty()) {
      csv::write_file(dir / "semiclassical.csv", {"x", "u_nls", "v_nls", "u_semicl", "v_semicl"},
                      {xs, un, vn, us, vs});
      outputs.push_back(dir / "semiclassical.csv");
    }
  } else {
    const multiscale::ConjectureChart chart(setup.cp, eps);
    const multiscale::SemiclassicalInput si{&setup.f, setup.data.get(), &setup.options};
    const auto rep = multiscale::compare_window(ev.field, chart, cfg.gamma, cache,
                                                pr.t <= setup.cp.t0 ? std::optional(si) : std::nullopt);
    pr.error = rep.linf_u;
    pr.linf_v = rep.linf_v;
    pr.conj_u_below_nls = rep.conj_u_below_nls;
    if (!dir.empty()) {
      std::vector<std::vector<double>> cols(7);
      for (const auto& r : rep.rows) {
        cols[0].push_back(r.x);
        cols[1].push_back(r.u_nls);
        cols[2].push_back(r.v_nls);
        cols[3].push_back(r.u_conj);
        cols[4].push_back(r.v_conj);
        cols[5].push_back(r.u_semicl);
        cols[6].push_back(r.v_semicl);
      }
      csv::write_file(dir / "window.csv",
                      {"x", "u_nls", "v_nls", "u_conj", "v_conj", "u_semicl", "v_semicl"}, cols);
      outputs.push_back(dir / "window.csv");
    }
  }
  pr.ok = true;
  return pr;
}

}  // namespace

ExperimentResult run_experiment(const ExperimentConfig& cfg) {
  for (double e : cfg.epsilons)
    if (!(e >= nls::kEpsilonFloor && e <= 0.1))
      throw DomainError("run_experiment: epsilon outside [0.025, 0.1]");
  const Setup setup = make_setup(cfg.ic);
  ExperimentResult res;
  res.config = cfg;
  res.cp = setup.cp;
  const std::size_t n = cfg.epsilons.size();
  res.points.resize(n);
  std::vector<std::vector<std::filesystem::path>> outputs(n);
  multiscale::OmegaCache cache;

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        res.points[i] = run_point(cfg, setup, cache, cfg.epsilons[i], outputs[i]);
      } catch (const std::exception& ex) {
        res.points[i].epsilon = cfg.epsilons[i];
        res.points[i].ok = false;
        res.points[i].reason = ex.what();
      }
    }
  };
  {
    std::vector<std::jthread> pool;
    const int threads = std::clamp(cfg.threads, 1, static_cast<int>(std::max<std::size_t>(n, 1)));
    for (int k = 1; k < threads; ++k) pool.emplace_back(worker);
    worker();
  }
  for (auto& o : outputs) res.outputs.insert(res.outputs.end(), o.begin(), o.end());

  std::vector<double> eps, err;
  for (const auto& p : res.points)
    if (p.ok && p.error > 0.0) {
      eps.push_back(p.epsilon);
      err.push_back(p.error);
    }
  if (eps.size() >= 3)
    res.fit = fit_scaling(eps, err);
  else
    res.fit_failure = "fewer than 3 surviving points";

  if (!cfg.out_dir.empty()) {
    std::vector<std::vector<double>> cols(9);
    for (const auto& p : res.points) {
      cols[0].push_back(p.epsilon);
      cols[1].push_back(p.t);
      cols[2].push_back(p.N);
      cols[3].push_back(p.dt);
      cols[4].push_back(p.ok ? p.error : std::nan(""));
      cols[5].push_back(p.ok ? p.linf_v : std::nan(""));
      cols[6].push_back(p.mass_drift);
      cols[7].push_back(p.hamiltonian_drift);
      cols[8].push_back(p.ok ? 1.0 : 0.0);
    }
    const auto path = cfg.out_dir / "summary.csv";
    csv::write_file(path, {"epsilon", "t", "N", "dt", "error_u", "error_v", "mass_drift", "H_drift", "ok"},
                    cols);
    res.outputs.push_back(path);
  }
  return res;
}

std::string version_tag() { return NLSCRIT_VERSION; }

namespace {

json config_to_json(const ExperimentConfig& c) {
  return json{{"experiment", to_string(c.experiment)},
              {"ic", {{"family", c.ic.family}, {"A0", c.ic.A0}, {"mu", c.ic.mu}, {"alpha", c.ic.alpha}}},
              {"epsilons", c.epsilons},
              {"gamma", c.gamma},
              {"beta", c.beta},
              {"N", c.N},
              {"dt", c.dt},
              {"filter_threshold", c.filter_threshold},
              {"scheme", c.scheme == nls::Scheme::strang ? "strang" : "yoshida4"},
              {"semicl_half_width", c.semicl_half_width},
              {"threads", c.threads},
              {"out_dir", c.out_dir.string()}};
}

}  // namespace

std::string config_json(const ExperimentConfig& config) { return config_to_json(config).dump(2); }

std::string result_json(const ExperimentResult& r) {
  json pts = json::array();
  for (const auto& p : r.points)
    pts.push_back({{"epsilon", p.epsilon}, {"ok", p.ok}, {"reason", p.reason}, {"t", p.t},
                   {"N", p.N}, {"dt", p.dt}, {"error_u", p.error}, {"error_v", p.linf_v},
                   {"mass_drift", p.mass_drift}, {"H_drift", p.hamiltonian_drift},
                   {"conj_u_below_nls", p.conj_u_below_nls}});
  json j{{"config", config_to_json(r.config)},
         {"critical_point",
          {{"x0", r.cp.x0}, {"t0", r.cp.t0}, {"u0", r.cp.u0}, {"v0", r.cp.v0}, {"r", r.cp.r}, {"psi", r.cp.psi}}},
         {"points", pts}};
  if (r.fit)
    j["fit"] = {{"exponent", r.fit->exponent}, {"intercept", r.fit->intercept},
                {"correlation", r.fit->correlation}, {"std_error", r.fit->std_error}};
  else
    j["fit_failure"] = r.fit_failure;
  return j.dump(2);
}

void write_manifest(const std::filesystem::path& path, const RunManifest& m) {
  json outs = json::array();
  for (const auto& o : m.outputs) outs.push_back(o.string());
  json j{{"command", m.command},
         {"configuration", json::parse(m.configuration_json)},
         {"version", m.version},
         {"outputs", outs},
         {"wall_seconds", m.wall_seconds}};
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream os(path, std::ios::binary);
  if (!os) throw Error("manifest: cannot open " + path.string());
  os << j.dump(2) << '\n';
}

}  // namespace nlscrit::harness
