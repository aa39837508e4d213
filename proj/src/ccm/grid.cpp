#include "ccm/grid.hpp"

#include <cmath>

namespace ccm {

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;
constexpr double kSqrt2Pi = 2.5066282746310005024157652848110;

fftw_complex* as_fftw(cplx* p) { return reinterpret_cast<fftw_complex*>(p); }
}  // namespace

Grid::Grid(int n_points, double domain_length) {
  if (n_points < 8 || n_points % 2 != 0)
    throw std::invalid_argument("Grid: n_points must be even and >= 8");
  if (!(domain_length > 0.0))
    throw std::invalid_argument("Grid: domain_length must be positive");
  n_ = n_points;
  K_ = n_points / 2;
  L_ = domain_length;
  dx_ = L_ / n_;
  dxi_ = kTwoPi / L_;

  buf_a_.resize(n_);
  buf_b_.resize(n_);
  buf2_a_.resize(2 * n_);
  buf2_b_.resize(2 * n_);

  // FFTW_ESTIMATE keeps plan selection deterministic across runs.
  fwd_ = fftw_plan_dft_1d(n_, as_fftw(buf_a_.data()), as_fftw(buf_b_.data()),
                          FFTW_FORWARD, FFTW_ESTIMATE);
  bwd_ = fftw_plan_dft_1d(n_, as_fftw(buf_a_.data()), as_fftw(buf_b_.data()),
                          FFTW_BACKWARD, FFTW_ESTIMATE);
  fwd2_ = fftw_plan_dft_1d(2 * n_, as_fftw(buf2_a_.data()),
                           as_fftw(buf2_b_.data()), FFTW_FORWARD, FFTW_ESTIMATE);
  bwd2_ = fftw_plan_dft_1d(2 * n_, as_fftw(buf2_a_.data()),
                           as_fftw(buf2_b_.data()), FFTW_BACKWARD, FFTW_ESTIMATE);
}

Grid::~Grid() {
  fftw_destroy_plan(fwd_);
  fftw_destroy_plan(bwd_);
  fftw_destroy_plan(fwd2_);
  fftw_destroy_plan(bwd2_);
}

// x_0 = -L/2 folds into the exact sign factor (-1)^k on the spectral side.
void Grid::forward(const cplx* samples, cplx* spec_full) const {
  for (int j = 0; j < n_; ++j) buf_a_[j] = samples[j];
  fftw_execute_dft(fwd_, as_fftw(buf_a_.data()), as_fftw(buf_b_.data()));
  const double scale = dx_ / kSqrt2Pi;
  for (int k = 0; k < n_; ++k) {
    double sgn = (k & 1) ? -1.0 : 1.0;
    spec_full[k] = buf_b_[k] * (sgn * scale);
  }
}

void Grid::inverse(const cplx* spec_full, cplx* samples) const {
  const double scale = dxi_ / kSqrt2Pi;
  for (int k = 0; k < n_; ++k) {
    double sgn = (k & 1) ? -1.0 : 1.0;
    buf_a_[k] = spec_full[k] * (sgn * scale);
  }
  fftw_execute_dft(bwd_, as_fftw(buf_a_.data()), as_fftw(buf_b_.data()));
  for (int j = 0; j < n_; ++j) samples[j] = buf_b_[j];
}

void Grid::forward2(const cplx* samples2, cplx* spec_full2) const {
  const int m = 2 * n_;
  for (int j = 0; j < m; ++j) buf2_a_[j] = samples2[j];
  fftw_execute_dft(fwd2_, as_fftw(buf2_a_.data()), as_fftw(buf2_b_.data()));
  const double scale = (dx_ / 2.0) / kSqrt2Pi;
  for (int k = 0; k < m; ++k) {
    double sgn = (k & 1) ? -1.0 : 1.0;
    spec_full2[k] = buf2_b_[k] * (sgn * scale);
  }
}

void Grid::inverse2(const cplx* spec_full2, cplx* samples2) const {
  const int m = 2 * n_;
  const double scale = dxi_ / kSqrt2Pi;
  for (int k = 0; k < m; ++k) {
    double sgn = (k & 1) ? -1.0 : 1.0;
    buf2_a_[k] = spec_full2[k] * (sgn * scale);
  }
  fftw_execute_dft(bwd2_, as_fftw(buf2_a_.data()), as_fftw(buf2_b_.data()));
  for (int j = 0; j < m; ++j) samples2[j] = buf2_b_[j];
}

GridPtr make_grid(int n_points, double domain_length) {
  return std::make_shared<const Grid>(n_points, domain_length);
}

}  // namespace ccm
