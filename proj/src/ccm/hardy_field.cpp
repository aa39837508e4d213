#include "ccm/hardy_field.hpp"

#include <cmath>

namespace ccm {

HardyField::HardyField(GridPtr grid, std::vector<cplx> spectrum)
    : grid_(std::move(grid)), spec_(std::move(spectrum)) {
  if (static_cast<int>(spec_.size()) != grid_->hardy_modes())
    throw std::invalid_argument("HardyField: spectrum size != n/2");
  dcb_ = spec_[0];
}

HardyField::HardyField(GridPtr grid, std::vector<cplx> spectrum,
                       cplx dc_boundary)
    : grid_(std::move(grid)), spec_(std::move(spectrum)), dcb_(dc_boundary) {
  if (static_cast<int>(spec_.size()) != grid_->hardy_modes())
    throw std::invalid_argument("HardyField: spectrum size != n/2");
}

HardyField HardyField::zero(GridPtr grid) {
  std::vector<cplx> s(grid->hardy_modes(), cplx{0.0, 0.0});
  return HardyField(std::move(grid), std::move(s));
}

const std::vector<cplx>& HardyField::samples() const {
  if (samples_.empty()) {
    const Grid& g = *grid_;
    std::vector<cplx> full(g.n(), cplx{0.0, 0.0});
    for (int k = 0; k < g.hardy_modes(); ++k) full[k] = spec_[k];
    samples_.resize(g.n());
    g.inverse(full.data(), samples_.data());
  }
  return samples_;
}

double HardyField::l2_norm_sq() const {
  double acc = 0.0;
  for (const cplx& c : spec_) acc += std::norm(c);
  return acc * grid_->dxi();
}

double HardyField::l2_norm() const { return std::sqrt(l2_norm_sq()); }

bool HardyField::finite() const {
  for (const cplx& c : spec_)
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) return false;
  return true;
}

HardyField HardyField::with_spectrum(std::vector<cplx> spec, cplx dcb) const {
  return HardyField(grid_, std::move(spec), dcb);
}

}  // namespace ccm
