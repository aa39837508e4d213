//==============================================================================
// quadrature.hpp
// Half-line quadrature on the uniform frequency ladder.  Gregory-corrected
// trapezoid (order 6) at the xi = 0 end; decay is assumed at the ladder top.
// The first sample may be overridden by a one-sided boundary value, which is
// how fields carrying a jump of the transform at xi = 0+ are integrated.
//==============================================================================
#pragma once

#include <complex>
#include <span>

namespace ccm {

// int_0^inf f dxi  ~  h*[w0 f0 + w1 f1 + ... ] with Gregory boundary weights.
double halfline_integral(double h, std::span<const double> f);
double halfline_integral_with_boundary(double h, std::span<const double> f,
                                       double f0);

std::complex<double> halfline_integral(double h,
                                       std::span<const std::complex<double>> f);

// Plain ladder sum h * sum_k f_k (the discrete model's own quadrature).
double plain_sum(double h, std::span<const double> f);

}  // namespace ccm
