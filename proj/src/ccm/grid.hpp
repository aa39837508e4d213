//==============================================================================
// grid.hpp
// Shared discretization of the line problem: periodic window [-L/2, L/2),
// n equispaced points, Fourier ladder xi_k = 2*pi*k/L.  The Hardy ladder is
// k = 0..n/2-1; the Nyquist bin and all negative bins are outside it.
// Owns FFTW plans for the base grid (n) and the dealiasing grid (2n).
//==============================================================================
#pragma once

#include <complex>
#include <memory>
#include <stdexcept>
#include <vector>

#include <fftw3.h>

namespace ccm {

using cplx = std::complex<double>;

class Grid {
public:
  // n_points must be even and >= 8; domain_length > 0.
  Grid(int n_points, double domain_length);
  ~Grid();
  Grid(const Grid&) = delete;
  Grid& operator=(const Grid&) = delete;

  int n() const { return n_; }
  int hardy_modes() const { return K_; }      // n/2
  double length() const { return L_; }
  double dx() const { return dx_; }
  double dxi() const { return dxi_; }
  double x(int j) const { return -0.5 * L_ + dx_ * j; }
  double xi(int k) const { return dxi_ * k; }
  double xi_max() const { return dxi_ * (K_ - 1); }

  // Full forward transform of n samples, continuum normalization:
  //   out[k] = dx/sqrt(2 pi) * sum_j f(x_j) e^{-i xi_k x_j},  k in FFT layout.
  void forward(const cplx* samples, cplx* spec_full) const;
  // Inverse of the above (exact round trip).
  void inverse(const cplx* spec_full, cplx* samples) const;

  // Same pair on the 2n dealiasing grid (same L, same dxi, 2K modes).
  void forward2(const cplx* samples2, cplx* spec_full2) const;
  void inverse2(const cplx* spec_full2, cplx* samples2) const;

private:
  int n_ = 0;
  int K_ = 0;
  double L_ = 0, dx_ = 0, dxi_ = 0;

  fftw_plan fwd_ = nullptr, bwd_ = nullptr, fwd2_ = nullptr, bwd2_ = nullptr;
  mutable std::vector<cplx> buf_a_, buf_b_, buf2_a_, buf2_b_;
};

using GridPtr = std::shared_ptr<const Grid>;

GridPtr make_grid(int n_points, double domain_length);

}  // namespace ccm
