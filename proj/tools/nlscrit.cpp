// Command-line access to the painleve, hodograph, nls, multiscale and scaling tools.

#include <chrono>
#include <cstdio>
#include <cmath>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "nlscrit/csv.hpp"
#include "nlscrit/deformed_integrals.hpp"
#include "nlscrit/errors.hpp"
#include "nlscrit/experiments.hpp"
#include "nlscrit/hodograph.hpp"
#include "nlscrit/multiscale.hpp"
#include "nlscrit/nls_solver.hpp"
#include "nlscrit/painleve.hpp"

namespace fs = std::filesystem;
using namespace nlscrit;
using nlohmann::json;

namespace {

struct Global {
  fs::path out_dir = "out";
  fs::path manifest;
  int threads = 1;
};

struct IcFlags {
  std::string family = "satsuma_yajima";
  double A0 = 1.0;
  double mu = 0.0;
  double alpha = 0.1;

  void add(CLI::App* app) {
    app->add_option("--ic", family, "satsuma_yajima | symmetric_mu | tvz_mu2 | nonsymmetric")
        ->capture_default_str();
    app->add_option("--A0", A0, "peak amplitude")->capture_default_str();
    app->add_option("--mu", mu, "phase parameter of symmetric_mu")->capture_default_str();
    app->add_option("--alpha", alpha, "nonsymmetric deformation")->capture_default_str();
  }
  harness::InitialCondition ic() const { return {family, A0, mu, alpha}; }
};

hodograph::Sheet parse_sheet(const std::string& s) {
  if (s == "upper") return hodograph::Sheet::upper;
  if (s == "lower") return hodograph::Sheet::lower;
  if (s == "principal") return hodograph::Sheet::principal;
  throw DomainError("unknown sheet " + s);
}

json options_json(const CLI::App* app) {
  json j = json::object();
  for (const CLI::Option* opt : app->get_options()) {
    if (opt->get_name() == "--help") continue;
    const auto& r = opt->results();
    if (opt->count() > 0)
      j[opt->get_name()] = r.size() == 1 ? json(r.front()) : json(r);
    else
      j[opt->get_name()] = opt->get_default_str();
  }
  return j;
}

void finish(const Global& g, const std::vector<std::string>& argv, const CLI::App& app,
            const CLI::App* sub, const std::vector<fs::path>& outputs, double seconds) {
  if (outputs.empty() && g.manifest.empty()) return;
  harness::RunManifest m;
  m.command = argv;
  json cfg{{"global", options_json(&app)}, {"command", sub->get_name()}, {"options", options_json(sub)}};
  m.configuration_json = cfg.dump();
  m.version = harness::version_tag();
  m.outputs = outputs;
  m.wall_seconds = seconds;
  const fs::path path = g.manifest.empty() ? g.out_dir / "manifest.json" : g.manifest;
  harness::write_manifest(path, m);
  std::cout << "manifest: " << path.string() << '\n';
}

std::string num(double x) { return csv::format_number(x); }

std::string short_num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numerical study of the focusing NLS semiclassical limit near gradient catastrophe"};
  app.require_subcommand(1);
  Global g;
  app.add_option("--out-dir", g.out_dir, "directory for CSV output")->capture_default_str();
  app.add_option("--manifest", g.manifest, "manifest path (default <out-dir>/manifest.json)");
  app.add_option("--threads", g.threads, "worker threads for sweeps")->capture_default_str();

  std::vector<fs::path> outputs;
  std::function<void()> action;

  // painleve
  auto* pain = app.add_subcommand("painleve", "tritronquee solution of Painleve-I");
  pain->require_subcommand(1);

  int series_K = 30;
  double zre = 0.0, zim = 0.0;
  auto* ser = pain->add_subcommand("series", "asymptotic coefficients and truncated sum");
  ser->add_option("-K", series_K, "number of coefficients")->capture_default_str();
  ser->add_option("--zeta-re", zre, "evaluate at zeta (real part)");
  ser->add_option("--zeta-im", zim, "evaluate at zeta (imaginary part)");
  ser->callback([&] {
    action = [&] {
      const auto s = painleve::series_coefficients(series_K);
      for (int k = 0; k <= s.capacity(); ++k) std::cout << k << ',' << num(s.coefficients[k]) << '\n';
      if (zre != 0.0 || zim != 0.0) {
        const auto v = painleve::evaluate_series(s, {zre, zim});
        std::cout << "omega," << num(v.value.real()) << ',' << num(v.value.imag())
                  << ",truncation," << v.truncation << ",omitted," << num(v.omitted) << '\n';
      }
    };
  });

  double are = 0.0, aim = 1.0, bre = 0.0, bim = 0.0, y0 = 10.0;
  int line_n = 4001;
  auto* line = pain->add_subcommand("line", "boundary value solve along zeta = a y + b");
  line->add_option("--a-re", are)->capture_default_str();
  line->add_option("--a-im", aim)->capture_default_str();
  line->add_option("--b-re", bre)->capture_default_str();
  line->add_option("--b-im", bim)->capture_default_str();
  line->add_option("--y0", y0, "half length")->capture_default_str();
  line->add_option("--points", line_n, "collocation points")->capture_default_str();
  line->callback([&] {
    action = [&] {
      const auto sol = painleve::solve_line(painleve::ComplexLine::make({are, aim}, {bre, bim}, y0, line_n));
      fs::create_directories(g.out_dir);
      const fs::path p = g.out_dir / "line.csv";
      std::ofstream os(p, std::ios::binary);
      sol.write_csv(os);
      outputs.push_back(p);
      std::cout << "points," << sol.y_grid().size() << ",residual," << num(sol.residual_norm())
                << ",interior_residual," << num(sol.interior_residual()) << '\n';
    };
  });

  painleve::SectorOptions sopt;
  auto* sector = pain->add_subcommand("sector", "Laplace solve in the pole-free sector");
  sector->add_option("--radius", sopt.radius)->capture_default_str();
  sector->add_option("--phi-max", sopt.phi_max)->default_str(num(sopt.phi_max));
  sector->add_option("--n-radial", sopt.n_radial)->capture_default_str();
  sector->add_option("--n-angular", sopt.n_angular)->capture_default_str();
  sector->callback([&] {
    action = [&] {
      const auto s = painleve::solve_sector(sopt);
      std::vector<std::vector<double>> cols(4);
      for (std::size_t i = 0; i < s.r.size(); ++i)
        for (std::size_t j = 0; j < s.phi.size(); ++j) {
          cols[0].push_back(s.r[i]);
          cols[1].push_back(s.phi[j]);
          cols[2].push_back(s.at(static_cast<int>(i), static_cast<int>(j)).real());
          cols[3].push_back(s.at(static_cast<int>(i), static_cast<int>(j)).imag());
        }
      const fs::path p = g.out_dir / "sector.csv";
      csv::write_file(p, {"r", "phi", "re_omega", "im_omega"}, cols);
      outputs.push_back(p);
      std::cout << "max_abs," << num(s.max_abs) << ",pi_residual," << num(s.pi_residual)
                << ",corner_mismatch," << num(s.corner_mismatch) << '\n';
      for (const auto& b : s.boundary_provenance) std::cout << b << '\n';
    };
  });

  double pole_start = 12.0, pole_threshold = 1e6;
  auto* pole = pain->add_subcommand("pole", "first pole on the negative real axis");
  pole->add_option("--start", pole_start, "series start point on the real axis")->capture_default_str();
  pole->add_option("--threshold", pole_threshold, "blow-up threshold")->capture_default_str();
  pole->callback([&] {
    action = [&] {
      const auto r = painleve::locate_first_real_pole(pole_start, pole_threshold);
      std::cout << "pole," << num(r.pole_location) << ",bracket," << num(r.bracket_lo) << ','
                << num(r.bracket_hi) << ",laurent_check," << num(r.laurent_check) << '\n';
    };
  });

  // hodograph
  auto* hod = app.add_subcommand("hodograph", "dispersionless solution via the hodograph transform");
  hod->require_subcommand(1);
  IcFlags hic;
  double hx = 0.0, ht = 0.0, hs = 0.0, gu = 1.0, gv = 0.0;
  std::string sheet = "principal";

  auto* hsolve = hod->add_subcommand("solve", "(u, v) at (x, t, s)");
  hic.add(hsolve);
  hsolve->add_option("--x", hx)->capture_default_str();
  hsolve->add_option("--t", ht)->capture_default_str();
  hsolve->add_option("--s", hs)->capture_default_str();
  hsolve->add_option("--u-guess", gu)->capture_default_str();
  hsolve->add_option("--v-guess", gv)->capture_default_str();
  hsolve->add_option("--sheet", sheet, "principal | upper | lower")->capture_default_str();
  hsolve->callback([&] {
    action = [&] {
      const auto setup = harness::make_setup(hic.ic());
      hodograph::HodographOptions ho;
      ho.sheet = parse_sheet(sheet);
      const auto p = hodograph::solve_hodograph(setup.f, hx, ht, hs, {gu, gv}, ho);
      std::cout << "u," << num(p.u) << ",v," << num(p.v) << ",iterations," << p.iterations
                << ",residual," << num(p.residual) << '\n';
    };
  });

  auto* hcrit = hod->add_subcommand("critical", "gradient catastrophe point");
  hic.add(hcrit);
  hcrit->callback([&] {
    action = [&] {
      const auto cp = harness::make_setup(hic.ic()).cp;
      std::cout << "x0," << num(cp.x0) << "\nt0," << num(cp.t0) << "\ns0," << num(cp.s0) << "\nu0,"
                << num(cp.u0) << "\nv0," << num(cp.v0) << "\nr," << num(cp.r) << "\npsi,"
                << num(cp.psi) << '\n';
    };
  });

  int init_n = 4096;
  double init_L = nls::kDefaultHalfPeriod;
  auto* hinit = hod->add_subcommand("initdata", "initial data (u, v, S) on a uniform grid");
  hic.add(hinit);
  hinit->add_option("--N", init_n, "grid points")->capture_default_str();
  hinit->add_option("--L", init_L, "half period")->default_str(num(init_L));
  hinit->callback([&] {
    action = [&] {
      const auto setup = harness::make_setup(hic.ic(), init_L);
      const auto c = setup.data->sample(nls::uniform_grid(init_L, init_n));
      const fs::path p = g.out_dir / "initdata.csv";
      csv::write_file(p, {"x", "u", "v", "S"}, {c.x, c.u, c.v, c.S});
      outputs.push_back(p);
      std::cout << "splice_mismatch," << num(setup.data->splice_mismatch()) << '\n';
    };
  });

  auto* hlocal = hod->add_subcommand("local", "local solution near the catastrophe vs the exact solve");
  hic.add(hlocal);
  hlocal->add_option("--x", hx)->capture_default_str();
  hlocal->add_option("--t", ht, "time (must be below t0)")->required();
  hlocal->callback([&] {
    action = [&] {
      const auto setup = harness::make_setup(hic.ic());
      const auto loc = hodograph::local_solution(setup.cp, hx, 0.0, ht);
      const double xs[] = {hx};
      const auto ex = multiscale::semiclassical_solution(setup.f, *setup.data, setup.options,
                                                         setup.cp, xs, ht);
      std::cout << "local," << num(loc.u) << ',' << num(loc.v) << "\nexact," << num(ex[0].u) << ','
                << num(ex[0].v) << '\n';
    };
  });

  // nls
  auto* nlsc = app.add_subcommand("nls", "focusing NLS evolution");
  nlsc->require_subcommand(1);
  IcFlags nic;
  double epsilon = 0.1, dt = 0.0, t_end = -1.0, filter = 1e-13;
  int N = 0;
  std::vector<double> snaps;
  std::string scheme = "yoshida4";
  auto* evolve = nlsc->add_subcommand("evolve", "split-step evolution with snapshots");
  nic.add(evolve);
  evolve->add_option("--epsilon", epsilon)->capture_default_str();
  evolve->add_option("--N", N, "grid size (0: default for epsilon)")->capture_default_str();
  evolve->add_option("--dt", dt, "time step (0: default for epsilon)")->capture_default_str();
  evolve->add_option("--t-end", t_end, "final time (default: t0 of the critical point)");
  evolve->add_option("--snap-times", snaps, "snapshot times")->delimiter(',');
  evolve->add_option("--filter", filter, "Krasny filter threshold")->capture_default_str();
  evolve->add_option("--scheme", scheme, "strang | yoshida4")->capture_default_str();
  evolve->callback([&] {
    action = [&] {
      const auto setup = harness::make_setup(nic.ic());
      const auto f0 = harness::initial_field(setup, epsilon, N, filter);
      nls::EvolutionConfig ec;
      ec.t_end = t_end >= 0.0 ? t_end : setup.cp.t0;
      ec.dt = dt;
      ec.filter_threshold = filter;
      ec.scheme = scheme == "strang" ? nls::Scheme::strang : nls::Scheme::yoshida4;
      ec.snap_times = snaps;
      const auto res = nls::evolve(f0, ec);
      auto dump = [&](const nls::WaveField& f, const std::string& name) {
        const auto m = nls::to_madelung(f);
        std::vector<double> x(f.N()), re(f.N()), im(f.N());
        for (int j = 0; j < f.N(); ++j) {
          x[j] = f.x(j);
          re[j] = f.psi[j].real();
          im[j] = f.psi[j].imag();
        }
        const fs::path p = g.out_dir / name;
        csv::write_file(p, {"x", "re_psi", "im_psi", "u", "v"}, {x, re, im, m.u, m.v});
        outputs.push_back(p);
      };
      for (std::size_t i = 0; i < res.snapshots.size(); ++i)
        dump(res.snapshots[i], "snapshot_t" + short_num(res.snapshots[i].t) + ".csv");
      dump(res.field, "final.csv");
      std::vector<double> t, mass, H;
      for (const auto& r : res.trace) {
        t.push_back(r.t);
        mass.push_back(r.mass);
        H.push_back(r.hamiltonian);
      }
      const fs::path p = g.out_dir / "diagnostics.csv";
      csv::write_file(p, {"t", "mass", "H"}, {t, mass, H});
      outputs.push_back(p);
      std::cout << "t_end," << num(res.field.t) << ",mass_drift,"
                << num(std::abs(mass.back() / mass.front() - 1.0)) << ",H_drift,"
                << num(std::abs(H.back() / H.front() - 1.0)) << '\n';
    };
  });

  // compare
  auto* cmp = app.add_subcommand("compare", "NLS vs the tritronquee description");
  cmp->require_subcommand(1);
  IcFlags cic;
  double c_eps = 0.1, c_t = -1.0, gamma = 1.0;
  auto* window = cmp->add_subcommand("window", "L-infinity differences in the gamma window");
  cic.add(window);
  window->add_option("--epsilon", c_eps)->capture_default_str();
  window->add_option("--t", c_t, "comparison time (default t0)");
  window->add_option("--gamma", gamma)->capture_default_str();
  window->add_option("--N", N, "grid size (0: default)")->capture_default_str();
  window->add_option("--dt", dt, "time step (0: default)")->capture_default_str();
  window->callback([&] {
    action = [&] {
      const auto setup = harness::make_setup(cic.ic());
      const auto f0 = harness::initial_field(setup, c_eps, N);
      nls::EvolutionConfig ec;
      ec.t_end = c_t >= 0.0 ? c_t : setup.cp.t0;
      ec.dt = dt;
      const auto res = nls::evolve(f0, ec);
      const multiscale::ConjectureChart chart(setup.cp, c_eps);
      multiscale::OmegaCache cache;
      const multiscale::SemiclassicalInput si{&setup.f, setup.data.get(), &setup.options};
      const auto rep = multiscale::compare_window(res.field, chart, gamma, cache, si);
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
      const fs::path p = g.out_dir / "window.csv";
      csv::write_file(p, {"x", "u_nls", "v_nls", "u_conj", "v_conj", "u_semicl", "v_semicl"}, cols);
      outputs.push_back(p);
      json j{{"t", rep.t}, {"center", rep.center}, {"half_width", rep.half_width},
             {"linf_u", rep.linf_u}, {"linf_v", rep.linf_v},
             {"max_abs_arg_zeta", rep.max_abs_arg_zeta}, {"conj_u_below_nls", rep.conj_u_below_nls}};
      if (rep.linf_u_semicl) j["linf_u_semicl"] = *rep.linf_u_semicl;
      if (rep.linf_v_semicl) j["linf_v_semicl"] = *rep.linf_v_semicl;
      std::cout << j.dump(2) << '\n';
    };
  });

  // scaling
  auto* scal = app.add_subcommand("scaling", "epsilon sweeps with log-log fits");
  scal->require_subcommand(1);
  IcFlags ric;
  std::string experiment = "critical_time";
  harness::ExperimentConfig rcfg;
  auto* run = scal->add_subcommand("run", "run an experiment over an epsilon list");
  ric.add(run);
  run->add_option("--experiment", experiment,
                  "semiclassical_halftime | critical_time | multiscale_window | before_breakup | after_breakup")
      ->capture_default_str();
  run->add_option("--epsilons", rcfg.epsilons, "comma-separated list")->delimiter(',');
  run->add_option("--gamma", rcfg.gamma)->capture_default_str();
  run->add_option("--beta", rcfg.beta)->capture_default_str();
  run->add_option("--N", rcfg.N, "grid size (0: default)")->capture_default_str();
  run->add_option("--dt", rcfg.dt, "time step (0: default)")->capture_default_str();
  run->add_option("--filter", rcfg.filter_threshold)->capture_default_str();
  run->callback([&] {
    action = [&] {
      rcfg.experiment = harness::experiment_from_string(experiment);
      rcfg.ic = ric.ic();
      rcfg.threads = g.threads;
      rcfg.out_dir = g.out_dir;
      const auto res = harness::run_experiment(rcfg);
      outputs = res.outputs;
      const fs::path p = g.out_dir / "result.json";
      std::ofstream(p, std::ios::binary) << harness::result_json(res) << '\n';
      outputs.push_back(p);
      for (const auto& pt : res.points)
        std::cout << "epsilon," << num(pt.epsilon) << ",error," << num(pt.error)
                  << (pt.ok ? "" : ",failed," + pt.reason) << '\n';
      if (res.fit)
        std::cout << "exponent," << num(res.fit->exponent) << ",correlation,"
                  << num(res.fit->correlation) << ",std_error," << num(res.fit->std_error) << '\n';
      else
        std::cout << "fit_failed," << res.fit_failure << '\n';
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  const std::vector<std::string> args(argv, argv + argc);
  const auto start = std::chrono::steady_clock::now();
  try {
    action();
    const CLI::App* sub = app.get_subcommands().front();
    while (!sub->get_subcommands().empty()) sub = sub->get_subcommands().front();
    finish(g, args, app, sub, outputs,
           std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  }
  return 0;
}
