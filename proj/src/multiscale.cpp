#include "nlscrit/multiscale.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "nlscrit/errors.hpp"

namespace nlscrit::multiscale {

using hodograph::UV;

ConjectureChart::ConjectureChart(const hodograph::CriticalPoint& cp, double epsilon)
    : cp_(cp), eps_(epsilon) {
  if (!(std::cos(cp.psi) > 0.0)) throw DomainError("ConjectureChart: requires cos psi > 0");
  if (!(epsilon > 0.0)) throw DomainError("ConjectureChart: epsilon must be positive");
  scale_ = std::pow(3.0 * cp.r / (cp.u0 * cp.u0), 0.2) * std::polar(1.0, cp.psi / 5.0) /
           std::pow(epsilon, 0.8);
}

cplx ConjectureChart::zeta(double x, double t) const {
  const double tb = t - cp_.t0, xb = x - cp_.x0, sb = -cp_.s0;
  const cplx w = sb - cp_.u0 * tb + cplx(0.0, std::sqrt(cp_.u0) * (xb - cp_.v0 * tb)) +
                 0.5 * cp_.r * std::polar(1.0, cp_.psi) * tb * tb;
  return scale_ * w;
}

cplx ConjectureChart::prefactor() const {
  return 2.0 * std::pow(eps_, 0.4) * std::pow(3.0 * cp_.r * std::sqrt(cp_.u0), 0.4) *
         std::polar(1.0, 0.4 * cp_.psi);
}

cplx ConjectureChart::line_direction() const {
  return std::polar(1.0, cp_.psi / 5.0 + 0.5 * std::numbers::pi);
}

double ConjectureChart::zeta_per_x() const { return std::abs(scale_) * std::sqrt(cp_.u0); }

double ConjectureChart::center(double t) const {
  const double tb = t - cp_.t0;
  return cp_.x0 + cp_.v0 * tb - 0.5 * cp_.r * std::sin(cp_.psi) * tb * tb / std::sqrt(cp_.u0);
}

UV conjecture_field(const ConjectureChart& chart, double x, double t, const OmegaEvaluator& omega) {
  const auto& cp = chart.cp();
  const double su = std::sqrt(cp.u0);
  const cplx w = cplx(cp.u0, su * cp.v0) - (t - cp.t0) * cp.r * std::polar(1.0, cp.psi) +
                 chart.prefactor() * omega(chart.zeta(x, t));
  return {w.real(), w.imag() / su};
}

TSchedule t_schedule(const hodograph::CriticalPoint& cp, double epsilon, double beta) {
  if (!(epsilon > 0.0)) throw DomainError("t_schedule: epsilon must be positive");
  const double q = cp.u0 / cp.r, d = std::pow(epsilon, 0.8) * beta;
  const double rp = q * q + d, rm = q * q - d;
  if (rp < 0.0 || rm < 0.0) throw DomainError("t_schedule: negative radicand");
  return {cp.t0 + q - std::sqrt(rp), cp.t0 + q - std::sqrt(rm)};
}

OmegaCache::OmegaCache(double half_length, int n_points)
    : half_length_(half_length), n_points_(n_points), series_(painleve::series_coefficients(30)) {}

std::shared_ptr<const painleve::TritronqueeLine> OmegaCache::line(cplx center, cplx direction) {
  const auto key = std::make_tuple(center.real(), center.imag(), direction.real(), direction.imag());
  {
    std::lock_guard lock(mutex_);
    if (auto it = lines_.find(key); it != lines_.end()) return it->second;
  }
  // Solved outside the lock; a concurrent duplicate solve is harmless.
  auto sol = std::make_shared<const painleve::TritronqueeLine>(painleve::solve_line(
      painleve::ComplexLine::make(direction, center, half_length_, n_points_)));
  std::lock_guard lock(mutex_);
  return lines_.emplace(key, std::move(sol)).first->second;
}

OmegaEvaluator OmegaCache::evaluator(cplx center, cplx direction) {
  auto ln = line(center, direction);
  const painleve::AsymptoticSeries* series = &series_;
  return [ln, series](cplx z) {
    const auto& l = ln->line();
    const double y = ((z - l.offset) * std::conj(l.direction)).real();
    const bool on_line = std::abs(z - l.zeta(y)) <= 1e-9 * std::max(1.0, std::abs(z));
    if (on_line && std::abs(y) <= l.half_length) return ln->evaluate(y);
    return painleve::evaluate_series(*series, z).value;
  };
}

std::size_t OmegaCache::size() const {
  std::lock_guard lock(mutex_);
  return lines_.size();
}

std::vector<UV> semiclassical_solution(const hodograph::FOracle& f,
                                       const hodograph::InitialData& data,
                                       const hodograph::InitialDataOptions& opts,
                                       const hodograph::CriticalPoint& cp,
                                       std::span<const double> x, double t, int time_steps) {
  if (t < 0.0) throw DomainError("semiclassical_solution: t must be non-negative");
  if (time_steps < 1) throw DomainError("semiclassical_solution: time_steps must be >= 1");
  const double t_target = std::min(t, cp.t0 - 1e-9);
  std::vector<UV> out(x.size());
  hodograph::HodographOptions ho;
  ho.singular_tol = 0.0;
  ho.max_iter = 200;
  for (std::size_t i = 0; i < x.size(); ++i) {
    ho.sheet = x[i] > opts.x_start ? opts.right_sheet : opts.left_sheet;
    const UV d = data.uv(x[i]);
    std::pair<double, double> g{d.u, d.v}, prev = g;
    for (int k = 1; k <= time_steps && t_target > 0.0; ++k) {
      const auto p = hodograph::solve_hodograph(f, x[i], t_target * k / time_steps, 0.0, g, ho);
      // linear extrapolation in (ln u, v) for the next guess
      const std::pair<double, double> cur{p.u, p.v};
      g = {cur.first * cur.first / prev.first, 2.0 * cur.second - prev.second};
      if (!(g.first > 0.0) || !std::isfinite(g.first)) g = cur;
      prev = cur;
    }
    out[i] = {prev.first, prev.second};
  }
  return out;
}

ComparisonReport compare_window(const nls::WaveField& field, const ConjectureChart& chart,
                                double gamma, OmegaCache& cache,
                                const std::optional<SemiclassicalInput>& semicl,
                                double madelung_floor) {
  if (!(gamma > 0.0)) throw DomainError("compare_window: gamma must be positive");
  ComparisonReport rep{};
  rep.t = field.t;
  rep.center = chart.center(field.t);
  rep.half_width = gamma * std::pow(chart.epsilon(), 0.8);
  const double lo = rep.center - rep.half_width, hi = rep.center + rep.half_width;
  if (lo < -field.L || hi >= field.L) throw DomainError("compare_window: window exceeds the grid");

  const nls::Madelung m = nls::to_madelung(field, madelung_floor);
  std::vector<int> idx;
  std::vector<double> xs;
  for (int j = 0; j < field.N(); ++j) {
    const double xj = field.x(j);
    if (xj < lo || xj > hi) continue;
    if (!m.valid[j]) throw DomainError("compare_window: Madelung mask intersects the window");
    idx.push_back(j);
    xs.push_back(xj);
  }
  if (idx.empty()) throw DomainError("compare_window: no grid points in the window");

  const OmegaEvaluator omega =
      cache.evaluator(chart.zeta(rep.center, field.t), chart.line_direction());
  std::vector<UV> sc;
  const bool with_semicl = semicl.has_value() && field.t <= chart.cp().t0;
  if (with_semicl)
    sc = semiclassical_solution(*semicl->f, *semicl->data, *semicl->opts, chart.cp(), xs, field.t);

  const double nan = std::numeric_limits<double>::quiet_NaN();
  rep.conj_u_below_nls = true;
  double su = 0.0, sv = 0.0;
  for (std::size_t i = 0; i < idx.size(); ++i) {
    const int j = idx[i];
    const UV c = conjecture_field(chart, xs[i], field.t, omega);
    WindowRow row{xs[i], m.u[j], m.v[j], c.u, c.v, nan, nan};
    rep.linf_u = std::max(rep.linf_u, std::abs(c.u - m.u[j]));
    rep.linf_v = std::max(rep.linf_v, std::abs(c.v - m.v[j]));
    if (c.u > m.u[j]) rep.conj_u_below_nls = false;
    rep.max_abs_arg_zeta = std::max(rep.max_abs_arg_zeta, std::abs(std::arg(chart.zeta(xs[i], field.t))));
    if (with_semicl) {
      row.u_semicl = sc[i].u;
      row.v_semicl = sc[i].v;
      su = std::max(su, std::abs(sc[i].u - m.u[j]));
      sv = std::max(sv, std::abs(sc[i].v - m.v[j]));
    }
    rep.rows.push_back(row);
  }
  if (with_semicl) {
    rep.linf_u_semicl = su;
    rep.linf_v_semicl = sv;
  }
  return rep;
}

}  // namespace nlscrit::multiscale
