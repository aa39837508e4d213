#define LAPACK_COMPLEX_CPP
#include "ccm/lax.hpp"

#include <lapacke.h>

#include <cmath>

#include "ccm/quadrature.hpp"

namespace ccm {

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;
constexpr double kSqrt2Pi = 2.5066282746310005024157652848110;

// Lower-triangular Toeplitz matrix of multiplication by q on the ladder:
// G(k, m) = dxi/sqrt(2 pi) * qhat(xi_k - xi_m).
Eigen::MatrixXcd conv_matrix(const HardyField& q) {
  const Grid& g = *q.grid();
  const int K = g.hardy_modes();
  const auto& s = q.spectrum();
  Eigen::MatrixXcd G = Eigen::MatrixXcd::Zero(K, K);
  const double w = g.dxi() / kSqrt2Pi;
  for (int m = 0; m < K; ++m)
    for (int k = m; k < K; ++k) G(k, m) = w * s[k - m];
  return G;
}
}  // namespace

LaxOperatorMatrix::LaxOperatorMatrix(const HardyField& q, Sign sign)
    : grid_(q.grid()), sign_(sign), l2_mass_(q.l2_norm_sq()) {
  const Grid& g = *grid_;
  const int K = g.hardy_modes();
  if (K > 4096)
    throw std::invalid_argument("LaxOperatorMatrix: K > 4096 (dense cap)");
  Eigen::MatrixXcd G = conv_matrix(q);
  // B = G D G^H with the PV weight 1/2 on the inner xi = 0 channel; this is
  // the matrix of the dealiased pipeline q C+(qbar .) and is PSD.
  Eigen::VectorXd D = Eigen::VectorXd::Ones(K);
  D(0) = 0.5;
  b_.noalias() = G * D.asDiagonal() * G.adjoint();
  b_ = 0.5 * (b_ + b_.adjoint().eval());  // scrub rounding asymmetry
  m_ = -sgn(sign) * b_;
  for (int k = 0; k < K; ++k) m_(k, k) += g.xi(k);
}

double LaxOperatorMatrix::hermiticity_defect() const {
  return (m_ - m_.adjoint()).cwiseAbs().maxCoeff();
}

const SpectralDecomposition& LaxOperatorMatrix::eigen() const {
  if (!eig_) {
    const int K = static_cast<int>(m_.rows());
    SpectralDecomposition d;
    d.eigenvalues.resize(K);
    d.eigenvectors = m_;  // overwritten by LAPACK
    int info = LAPACKE_zheevd(
        LAPACK_COL_MAJOR, 'V', 'L', K,
        reinterpret_cast<lapack_complex_double*>(d.eigenvectors.data()), K,
        d.eigenvalues.data());
    if (info != 0)
      throw std::runtime_error("LaxOperatorMatrix: zheevd failed, info=" +
                               std::to_string(info));
    eig_ = std::move(d);
  }
  return *eig_;
}

double LaxOperatorMatrix::kappa0(double margin) const {
  if (!(margin > 0.0)) throw std::invalid_argument("kappa0: margin must be > 0");
  double lmin = eigen().eigenvalues(0);
  return std::max(margin, -lmin + margin);
}

double LaxOperatorMatrix::resolvent_trace_defect(double kappa) const {
  const Grid& g = *grid_;
  const auto& ev = eigen().eigenvalues;
  const int K = static_cast<int>(ev.size());
  if (ev(0) + kappa <= 0.0)
    throw std::runtime_error(
        "resolvent_trace_defect: L_q + kappa not positive definite (kappa=" +
        std::to_string(kappa) + ", lambda_min=" + std::to_string(ev(0)) + ")");
  double acc = 0.0;
  for (int k = 0; k < K; ++k)
    acc += 1.0 / (ev(k) + kappa) - 1.0 / (g.xi(k) + kappa);
  return acc;
}

double LaxOperatorMatrix::beta(double kappa) const {
  return l2_mass_ - sgn(sign_) * kTwoPi * kappa * resolvent_trace_defect(kappa);
}

double LaxOperatorMatrix::beta_quadratic_matrix(double kappa) const {
  const Grid& g = *grid_;
  const int K = static_cast<int>(m_.rows());
  double tr = 0.0;
  for (int k = 0; k < K; ++k)
    tr += b_(k, k).real() / ((g.xi(k) + kappa) * (g.xi(k) + kappa));
  return l2_mass_ - kTwoPi * kappa * tr;
}

double LaxOperatorMatrix::beta_remainder_matrix(double kappa) const {
  const Grid& g = *grid_;
  const int K = static_cast<int>(m_.rows());
  const auto& d = eigen();
  Eigen::VectorXd rinv(K);
  for (int k = 0; k < K; ++k) rinv(k) = 1.0 / (d.eigenvalues(k) + kappa);
  // R = V diag(rinv) V^H
  Eigen::MatrixXcd R = d.eigenvectors * rinv.asDiagonal() *
                       d.eigenvectors.adjoint();
  Eigen::VectorXd r0(K);
  for (int k = 0; k < K; ++k) r0(k) = 1.0 / (g.xi(k) + kappa);
  Eigen::MatrixXcd T = r0.asDiagonal() * b_ * R * b_ * r0.asDiagonal();
  return -sgn(sign_) * kTwoPi * kappa * T.trace().real();
}

std::vector<double> LaxOperatorMatrix::bound_states(double edge_guard) const {
  const double guard = edge_guard > 0.0 ? edge_guard : 10.0 * grid_->dxi();
  std::vector<double> out;
  const auto& ev = eigen().eigenvalues;
  for (int k = 0; k < ev.size(); ++k)
    if (ev(k) < -guard) out.push_back(ev(k));
  return out;
}

std::vector<double> LaxOperatorMatrix::edge_candidates(double edge_guard) const {
  const double guard = edge_guard > 0.0 ? edge_guard : 10.0 * grid_->dxi();
  std::vector<double> out;
  const auto& ev = eigen().eigenvalues;
  for (int k = 0; k < ev.size(); ++k)
    if (ev(k) >= -guard && ev(k) < 0.0) out.push_back(ev(k));
  return out;
}

double beta_quadratic(const HardyField& q, double kappa) {
  const Grid& g = *q.grid();
  const auto& s = q.spectrum();
  std::vector<double> f(s.size());
  for (size_t k = 0; k < s.size(); ++k) {
    double xi = g.xi(static_cast<int>(k));
    f[k] = xi / (xi + kappa) * std::norm(s[k]);
  }
  return halfline_integral_with_boundary(g.dxi(), f, 0.0);
}

double hs_norm_sq_matrix(const HardyField& q, double kappa) {
  const Grid& g = *q.grid();
  const int K = g.hardy_modes();
  const auto& s = q.spectrum();
  const double w2 = (g.dxi() * g.dxi()) / kTwoPi;
  // ||R0 G||_F^2 = sum_{k>=m} |qhat_{k-m}|^2 / (xi_k + kappa)^2 * dxi^2/(2pi)
  double acc = 0.0;
  for (int m = 0; m < K; ++m) {
    double p = std::norm(s[m]);
    if (p == 0.0) continue;
    double inner = 0.0;
    for (int j = 0; j + m < K; ++j) {
      double d = g.xi(j + m) + kappa;
      inner += 1.0 / (d * d);
    }
    acc += p * inner;
  }
  return w2 * acc;
}

double hs_norm_sq_ladder(const HardyField& q, double kappa) {
  const Grid& g = *q.grid();
  const auto& s = q.spectrum();
  double acc = 0.0;
  for (size_t k = 0; k < s.size(); ++k)
    acc += std::norm(s[k]) / (g.xi(static_cast<int>(k)) + kappa);
  return acc * g.dxi() / kTwoPi;
}

}  // namespace ccm
