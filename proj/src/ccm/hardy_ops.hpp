//==============================================================================
// hardy_ops.hpp
// Szego projection, Poisson semigroup, free Schrodinger flow, upper-half-plane
// evaluation, Sobolev norms, and the dealiased product engine shared by the
// nonlinear operations.
//
// Two flavours of the discrete Szego cut:
//   * szego_project keeps the xi = 0 bin with full weight (an orthogonal,
//     idempotent projection of the discrete model);
//   * inside products the cut uses the principal-value convention
//     C+ = (1 + iH)/2, whose multiplier at xi = 0 is 1/2.  That midpoint
//     weight is what makes composite operators (Toeplitz, Lax kernel) track
//     their line counterparts to the periodization error instead of O(dxi).
//==============================================================================
#pragma once

#include "ccm/hardy_field.hpp"

namespace ccm {

// Orthogonal projection of arbitrary samples onto the Hardy ladder
// (negative bins and the Nyquist bin zeroed).
HardyField szego_project(const GridPtr& grid, const std::vector<cplx>& samples);

// Relative L2 mass of the discarded (anti-Hardy + Nyquist) part; diagnostic.
double szego_residual(const GridPtr& grid, const std::vector<cplx>& samples);

// Multiplier e^{-b xi}, b >= 0.
HardyField poisson_semigroup(const HardyField& f, double b);

// Multiplier e^{-i t xi^2} (free flow e^{it Laplacian} on the Hardy ladder).
HardyField schrodinger_flow(const HardyField& f, double t);

// f(z) for Im z > 0: plain full-weight ladder sum of the inversion formula.
// Identical arithmetic to sample synthesis, so halfplane_eval(f, x_j + ib)
// equals poisson_semigroup(f, b).samples()[j] exactly.
cplx halfplane_eval(const HardyField& f, cplx z);

// ( sum_k (xi_k + 1)^{2s} |fhat_k|^2 dxi )^{1/2}, Gregory + boundary value.
double sobolev_norm(const HardyField& f, double s);

// Homogeneous half-derivative norm || |d/dx|^{1/2} f || (plain ladder sum;
// the sharp-inequality tests pair it with plain L2 norms).
double half_derivative_norm(const HardyField& f);

//------------------------------------------------------------------------------
// Dealiased products.  Operands are synthesized on the 2n grid, multiplied
// pointwise, transformed back; the caller picks which ladder range to keep.
//------------------------------------------------------------------------------
class ProductEngine {
public:
  explicit ProductEngine(GridPtr grid);

  // w = conj(a) * b, full 2n spectrum of the product.
  void conj_product_full(const HardyField& a, const HardyField& b,
                         std::vector<cplx>& spec_full2) const;

  // |a|^2: full 2n spectrum and (optionally) the 2n samples.
  void modsq_full(const HardyField& a, std::vector<cplx>& spec_full2,
                  std::vector<cplx>* samples2 = nullptr) const;

  // q * C+(conj(q) f), principal-value DC weight inside the cut,
  // truncated back to the Hardy ladder.
  HardyField toeplitz(const HardyField& q, const HardyField& f) const;

  // q * v where v is given as a padded Hardy spectrum (2K bins), truncated
  // back to the Hardy ladder.
  HardyField mult_by(const HardyField& q, const std::vector<cplx>& v_pad) const;

  // Padded synthesis of a Hardy field on the 2n grid.
  void upsample(const HardyField& a, std::vector<cplx>& samples2) const;

  const GridPtr& grid() const { return grid_; }

private:
  GridPtr grid_;
  mutable std::vector<cplx> wa_, wb_, wc_, wd_;
};

}  // namespace ccm
