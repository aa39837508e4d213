#include "ccm/quadrature.hpp"

#include <array>

namespace ccm {

namespace {

// Boundary weights for the order-6 Gregory rule, derived once from the
// forward-difference corrections  h*(1/12 D - 1/24 D^2 + 19/720 D^3
// - 3/160 D^4 + 863/60480 D^5 - 275/24192 D^6) applied at the left end.
constexpr int kNw = 7;
std::array<double, kNw> gregory_weights() {
  std::array<double, kNw> w{};
  for (int i = 0; i < kNw; ++i) w[i] = 1.0;
  w[0] = 0.5;
  constexpr double c[6] = {1.0 / 12,   -1.0 / 24,     19.0 / 720,
                           -3.0 / 160, 863.0 / 60480, -275.0 / 24192};
  // Delta^j f_0 = sum_i (-1)^{j-i} C(j,i) f_i
  long binom[kNw][kNw] = {};
  for (int j = 0; j < kNw; ++j) {
    binom[j][0] = 1;
    for (int i = 1; i <= j; ++i)
      binom[j][i] = binom[j - 1][i - 1] + (i <= j - 1 ? binom[j - 1][i] : 0);
  }
  for (int j = 1; j <= 6; ++j)
    for (int i = 0; i <= j; ++i)
      w[i] += c[j - 1] * (((j - i) & 1) ? -1.0 : 1.0) * double(binom[j][i]);
  return w;
}

const std::array<double, kNw> kW = gregory_weights();

}  // namespace

double halfline_integral(double h, std::span<const double> f) {
  const int n = static_cast<int>(f.size());
  double acc = 0.0;
  const int nb = n < kNw ? n : kNw;
  for (int i = 0; i < nb; ++i) acc += kW[i] * f[i];
  for (int i = kNw; i < n; ++i) acc += f[i];
  return h * acc;
}

double halfline_integral_with_boundary(double h, std::span<const double> f,
                                       double f0) {
  if (f.empty()) return 0.0;
  double acc = kW[0] * f0;
  const int n = static_cast<int>(f.size());
  const int nb = n < kNw ? n : kNw;
  for (int i = 1; i < nb; ++i) acc += kW[i] * f[i];
  for (int i = kNw; i < n; ++i) acc += f[i];
  return h * acc;
}

std::complex<double> halfline_integral(
    double h, std::span<const std::complex<double>> f) {
  const int n = static_cast<int>(f.size());
  std::complex<double> acc = 0.0;
  const int nb = n < kNw ? n : kNw;
  for (int i = 0; i < nb; ++i) acc += kW[i] * f[i];
  for (int i = kNw; i < n; ++i) acc += f[i];
  return h * acc;
}

double plain_sum(double h, std::span<const double> f) {
  double acc = 0.0;
  for (double v : f) acc += v;
  return h * acc;
}

}  // namespace ccm
