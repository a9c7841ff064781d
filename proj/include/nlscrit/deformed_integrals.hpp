#pragma once

// Dispersive deformation h_f = f + eps^2 h^[1] + eps^4 h^[2] + O(eps^6) of a
// dispersionless density f, and the NLS conserved functionals.

#include "nlscrit/hodograph.hpp"
#include "nlscrit/nls_solver.hpp"

namespace nlscrit::deformed {

struct FieldJet {
  double u, v;
  double u_x, v_x;
  double u_xx, v_xx;
};

/// Coefficients of eps^0, eps^2 and eps^4 in h_f.
struct DensityBlocks {
  double order0;
  double order2;
  double order4;

  double total(double eps) const {
    const double e2 = eps * eps;
    return order0 + e2 * order2 + e2 * e2 * order4;
  }
};

/// Throws DomainError for u <= 0.
DensityBlocks density_blocks(const hodograph::FOracle& f, const FieldJet& jet,
                             hodograph::Sheet sheet = hodograph::Sheet::principal);

double deformed_density(const hodograph::FOracle& f, const FieldJet& jet, double eps,
                        hodograph::Sheet sheet = hodograph::Sheet::principal);

struct Functionals {
  double mass;
  double hamiltonian_wave;      ///< int (eps^2/2)|Psi_x|^2 - |Psi|^4/2
  double hamiltonian_madelung;  ///< int (u v^2 - u^2)/2 + eps^2 u_x^2/(8u)
  bool madelung_reliable;       ///< false when u vanishes somewhere on the grid
};

/// Spectral quadrature on the periodic grid.
Functionals nls_functionals(const nls::WaveField& field);

}  // namespace nlscrit::deformed

namespace nlscrit::nls {
using deformed::Functionals;
using deformed::nls_functionals;
}  // namespace nlscrit::nls
