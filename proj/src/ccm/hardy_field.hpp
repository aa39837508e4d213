//==============================================================================
// hardy_field.hpp
// A Hardy-space function on the grid, held as nonnegative-frequency spectral
// coefficients plus (lazily) physical samples.
//
// Convention for the xi = 0 bin: the stored coefficient is the value the
// torus model synthesizes with full weight.  Line-Hardy functions with
// nonzero total integral have a transform jumping at xi = 0+, and their
// faithful grid representative stores the midpoint of that jump; the
// one-sided boundary value qhat(0+) is carried separately (dc_boundary) and
// feeds the half-line quadratures.  For fields with a continuous transform
// the two coincide; dc_boundary then simply mirrors spectrum[0].
//
// The xi = 0 coefficient is an exact invariant of the CCM flow on the grid
// (the nonlinearity enters through a derivative), so dc_boundary survives
// time stepping unchanged.
//==============================================================================
#pragma once

#include <vector>

#include "ccm/grid.hpp"

namespace ccm {

class HardyField {
public:
  HardyField() = default;

  // Takes the K nonnegative-ladder coefficients; dc_boundary defaults to
  // spectrum[0] (continuous-transform case).
  HardyField(GridPtr grid, std::vector<cplx> spectrum);
  HardyField(GridPtr grid, std::vector<cplx> spectrum, cplx dc_boundary);

  static HardyField zero(GridPtr grid);

  const GridPtr& grid() const { return grid_; }
  int modes() const { return static_cast<int>(spec_.size()); }
  const std::vector<cplx>& spectrum() const { return spec_; }
  cplx dc_boundary() const { return dcb_; }

  // Physical samples on the n-point grid (synthesized once, then cached).
  const std::vector<cplx>& samples() const;

  // Plain Plancherel norms of the discrete model.
  double l2_norm() const;
  double l2_norm_sq() const;

  bool finite() const;  // no NaN/Inf in the spectrum

  HardyField with_spectrum(std::vector<cplx> spec, cplx dcb) const;

private:
  GridPtr grid_;
  std::vector<cplx> spec_;
  cplx dcb_{0.0, 0.0};
  mutable std::vector<cplx> samples_;  // cache
};

}  // namespace ccm
