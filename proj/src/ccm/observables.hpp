//==============================================================================
// observables.hpp
// Exact solutions, conserved functionals, the Toeplitz nonlinearity block,
// and the seeded random-field generator.
//==============================================================================
#pragma once

#include <cstdint>
#include <map>

#include "ccm/hardy_ops.hpp"

namespace ccm {

// Upper sign of the equation = focusing, lower = defocusing.
enum class Sign : int { focusing = +1, defocusing = -1 };
inline double sgn(Sign s) { return s == Sign::focusing ? 1.0 : -1.0; }
inline const char* name(Sign s) {
  return s == Sign::focusing ? "focusing" : "defocusing";
}

// Soliton sqrt(lambda) * sqrt(2) / (lambda x + x0 + i), built on the spectral
// ladder from its exact transform; the xi = 0 bin stores the jump midpoint so
// the samples are exactly the periodization of the line profile, while
// dc_boundary carries the one-sided transform value for the quadratures.
HardyField soliton(double lambda, double x0, const GridPtr& grid);

// Line-quadrature mass (Gregory + boundary value).  The flow-exact discrete
// invariant is HardyField::l2_norm_sq(); see observable_set().
double mass(const HardyField& q);

// sum_{xi_k >= kappa} |qhat|^2 dxi (Gregory at the cut, boundary-aware at 0).
double tail_mass(const HardyField& q, double kappa);

// P(q) = int -i conj(q) q' -/+ |q|^4 / 2, plain quadratures of the model.
double momentum(const HardyField& q, Sign sign, const ProductEngine& pe);

// H(q) = 1/2 int |q' -/+ i q C+(|q|^2)|^2, plain quadrature, PV Szego cut.
double hamiltonian(const HardyField& q, Sign sign, const ProductEngine& pe);

// q C+( conj(q) f ) with dealiasing; grids must match.
HardyField toeplitz_apply(const HardyField& q, const HardyField& f,
                          const ProductEngine& pe);

struct ObservableSet {
  double mass = 0.0;           // line quadrature
  double l2_mass = 0.0;        // plain Plancherel sum (flow-exact invariant)
  double momentum = 0.0;
  double hamiltonian = 0.0;
  std::map<double, double> tails;  // kappa -> tail mass
};

ObservableSet observable_set(const HardyField& q, Sign sign,
                             const ProductEngine& pe,
                             const std::vector<double>& tail_kappas = {});

// Seeded Hardy field: coefficients sigma_k (g1 + i g2)/sqrt(2) with
// sigma_k = amplitude * (1 + xi_k)^{-p}; afterwards rescaled so that
// mass(q) equals target_mass.  Deterministic across platforms (Box-Muller
// over mt19937_64 uniforms).
HardyField random_field(const GridPtr& grid, std::uint64_t seed,
                        double target_mass, double p, double amplitude = 1.0);

}  // namespace ccm
