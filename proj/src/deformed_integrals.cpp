#include "nlscrit/deformed_integrals.hpp"

#include <algorithm>
#include <cmath>

#include "nlscrit/errors.hpp"

namespace nlscrit::deformed {

DensityBlocks density_blocks(const hodograph::FOracle& f, const FieldJet& j,
                             hodograph::Sheet sheet) {
  if (!(j.u > 0.0)) throw DomainError("deformed_density: u must be positive");
  const hodograph::Partials p = f.partials(j.u, j.v, sheet);
  const double u = j.u, ux = j.u_x, vx = j.v_x, uxx = j.u_xx, vxx = j.v_xx;
  const double ux2 = ux * ux, vx2 = vx * vx;

  const double f2 = p(2, 0), f3 = p(3, 0), f4 = p(4, 0), f5 = p(5, 0), f6 = p(6, 0);
  const double f21 = p(2, 1), f31 = p(3, 1), f41 = p(4, 1), f51 = p(5, 1);

  const double h1 =
      -((f3 + 1.5 / u * f2) * ux2 + 2.0 * f21 * ux * vx - u * f3 * vx2) / 12.0;

  double h2 = ((f4 + 2.5 / u * f3) * uxx * uxx + 2.0 * f31 * uxx * vxx - u * f4 * vxx * vxx) / 120.0;
  h2 -= f4 * uxx * vx2 / 80.0;
  h2 -= f31 * vxx * ux2 / (48.0 * u);
  h2 -= (30.0 * f3 - 9.0 * u * f4 + 12.0 * u * u * f5 + 4.0 * u * u * u * f6) * ux2 * ux2 /
        (3456.0 * u * u * u);
  h2 -= (-3.0 * f31 + 6.0 * u * f41 + 2.0 * u * u * f51) * ux2 * ux * vx / (432.0 * u * u);
  h2 += (9.0 * f4 + 9.0 * u * f5 + 2.0 * u * u * f6) * ux2 * vx2 / (288.0 * u);
  h2 += (9.0 * f41 + 10.0 * u * f51) * ux * vx2 * vx / 2160.0;
  h2 -= u * (18.0 * f5 + 5.0 * u * f6) * vx2 * vx2 / 4320.0;

  return {p(0, 0), h1, h2};
}

double deformed_density(const hodograph::FOracle& f, const FieldJet& jet, double eps,
                        hodograph::Sheet sheet) {
  if (!(eps >= 0.0)) throw DomainError("deformed_density: eps must be non-negative");
  return density_blocks(f, jet, sheet).total(eps);
}

Functionals nls_functionals(const nls::WaveField& field) {
  const int n = field.N();
  const double dx = field.dx(), eps = field.epsilon;
  if (n == 0) throw DomainError("nls_functionals: empty field");

  const std::vector<std::complex<double>> dpsi = nls::spectral_derivative(field.psi, field.L);
  std::vector<std::complex<double>> u(n);
  for (int j = 0; j < n; ++j) u[j] = std::norm(field.psi[j]);
  const std::vector<std::complex<double>> du = nls::spectral_derivative(u, field.L);

  double u_max = 0.0;
  for (const auto& a : u) u_max = std::max(u_max, a.real());
  // Below this level u_x^2 / u is dominated by round-off; the wave-form
  // density, equal in exact arithmetic, is used instead.
  const double u_cut = 1e-12 * u_max;

  Functionals out{0.0, 0.0, 0.0, true};
  double skipped = 0.0;
  for (int j = 0; j < n; ++j) {
    const double a = u[j].real();
    const double wave = 0.5 * eps * eps * std::norm(dpsi[j]) - 0.5 * a * a;
    out.mass += a;
    out.hamiltonian_wave += wave;
    if (a > u_cut) {
      const double w = (std::conj(field.psi[j]) * dpsi[j]).imag();  // u v / eps
      const double ux = du[j].real();
      out.hamiltonian_madelung +=
          0.5 * (eps * eps * w * w / a - a * a) + eps * eps * ux * ux / (8.0 * a);
    } else {
      out.hamiltonian_madelung += wave;
      skipped += std::abs(wave);
    }
  }
  if (u_max == 0.0 || skipped > 1e-10 * (std::abs(out.hamiltonian_wave) + out.mass))
    out.madelung_reliable = false;
  out.mass *= dx;
  out.hamiltonian_wave *= dx;
  out.hamiltonian_madelung *= dx;
  return out;
}

}  // namespace nlscrit::deformed
