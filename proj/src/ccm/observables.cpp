#include "ccm/observables.hpp"

#include <cmath>
#include <random>

#include "ccm/quadrature.hpp"

namespace ccm {

namespace {
constexpr double kSqrtPi = 1.7724538509055160272981674833411;
}

HardyField soliton(double lambda, double x0, const GridPtr& grid) {
  if (!(lambda > 0.0)) throw std::invalid_argument("soliton: lambda must be > 0");
  const Grid& g = *grid;
  const int K = g.hardy_modes();
  std::vector<cplx> s(K);
  const double a = 1.0 / std::sqrt(lambda);
  for (int k = 0; k < K; ++k) {
    double xi = g.xi(k);
    double mag = 2.0 * kSqrtPi * a * std::exp(-xi / lambda);
    double ph = xi * x0 / lambda;
    // -2i sqrt(pi) e^{-xi/lambda} e^{i xi x0/lambda} / sqrt(lambda)
    s[k] = cplx{0.0, -mag} * cplx{std::cos(ph), std::sin(ph)};
  }
  cplx boundary = s[0];
  s[0] *= 0.5;  // jump midpoint at xi = 0
  return HardyField(grid, std::move(s), boundary);
}

double mass(const HardyField& q) {
  const Grid& g = *q.grid();
  const auto& s = q.spectrum();
  std::vector<double> f(s.size());
  for (size_t k = 0; k < s.size(); ++k) f[k] = std::norm(s[k]);
  return halfline_integral_with_boundary(g.dxi(), f,
                                         std::norm(q.dc_boundary()));
}

double tail_mass(const HardyField& q, double kappa) {
  if (kappa < 0.0) throw std::invalid_argument("tail_mass: kappa must be >= 0");
  if (kappa == 0.0) return mass(q);
  const Grid& g = *q.grid();
  const auto& s = q.spectrum();
  const int K = g.hardy_modes();
  int k0 = static_cast<int>(std::ceil(kappa / g.dxi() - 1e-12));
  if (k0 >= K) return 0.0;
  if (k0 < 1) k0 = 1;
  std::vector<double> f;
  f.reserve(K - k0);
  for (int k = k0; k < K; ++k) f.push_back(std::norm(s[k]));
  double acc = halfline_integral(g.dxi(), f);
  // cut cell [kappa, xi_{k0}): trapezoid with |qhat(kappa)|^2 interpolated
  double w = g.xi(k0) - kappa;
  if (w > 1e-15 && k0 + 1 < K) {
    double f0 = std::norm(s[k0]), f1 = std::norm(s[k0 + 1]);
    double fk = f0 + (kappa - g.xi(k0)) * (f1 - f0) / g.dxi();
    acc += 0.5 * w * (fk + f0);
  }
  return acc;
}

double momentum(const HardyField& q, Sign sign, const ProductEngine& pe) {
  const Grid& g = *q.grid();
  const auto& s = q.spectrum();
  double quad = 0.0;
  for (int k = 0; k < g.hardy_modes(); ++k) quad += g.xi(k) * std::norm(s[k]);
  quad *= g.dxi();

  std::vector<cplx> u2;
  std::vector<cplx> dummy;
  pe.modsq_full(q, dummy, &u2);
  double quart = 0.0;
  for (const cplx& v : u2) quart += v.real() * v.real();
  quart *= g.dx() / 2.0;

  return quad - sgn(sign) * 0.5 * quart;
}

double hamiltonian(const HardyField& q, Sign sign, const ProductEngine& pe) {
  const Grid& g = *q.grid();
  const int K = g.hardy_modes();
  const int K2 = g.n();

  // C+(|q|^2) on the padded ladder, PV weight at the DC bin
  std::vector<cplx> u;
  pe.modsq_full(q, u);
  std::vector<cplx> cs(K2);
  for (int k = 0; k < K2; ++k) cs[k] = u[k];
  cs[0] *= 0.5;

  // w = q' -/+ i q C+(|q|^2): assemble q' on the padded ladder and subtract
  std::vector<cplx> qp(K2, cplx{0.0, 0.0});
  const auto& s = q.spectrum();
  for (int k = 0; k < K; ++k) qp[k] = cplx{0.0, g.xi(k)} * s[k];

  HardyField qcs = pe.mult_by(q, cs);  // q * C+(|q|^2), truncated to K
  const auto& t = qcs.spectrum();
  double acc = 0.0;
  for (int k = 0; k < K; ++k)
    acc += std::norm(qp[k] - sgn(sign) * cplx{0.0, 1.0} * t[k]);
  // modes K..2K of q' vanish; q*C+(|q|^2) beyond K is outside the model
  return 0.5 * acc * g.dxi();
}

HardyField toeplitz_apply(const HardyField& q, const HardyField& f,
                          const ProductEngine& pe) {
  if (q.grid() != f.grid())
    throw std::invalid_argument("toeplitz_apply: grid mismatch");
  return pe.toeplitz(q, f);
}

ObservableSet observable_set(const HardyField& q, Sign sign,
                             const ProductEngine& pe,
                             const std::vector<double>& tail_kappas) {
  ObservableSet o;
  o.mass = mass(q);
  o.l2_mass = q.l2_norm_sq();
  o.momentum = momentum(q, sign, pe);
  o.hamiltonian = hamiltonian(q, sign, pe);
  for (double k : tail_kappas) o.tails[k] = tail_mass(q, k);
  return o;
}

HardyField random_field(const GridPtr& grid, std::uint64_t seed,
                        double target_mass, double p, double amplitude) {
  const Grid& g = *grid;
  const int K = g.hardy_modes();
  std::mt19937_64 rng(seed);
  auto uniform = [&rng]() {
    // 53-bit uniform in (0,1); avoids 0 for the log below
    return (static_cast<double>(rng() >> 11) + 0.5) * (1.0 / 9007199254740992.0);
  };
  std::vector<cplx> s(K);
  for (int k = 0; k < K; ++k) {
    // Box-Muller; implementation-pinned for reproducible reports
    double u1 = uniform(), u2 = uniform();
    double r = std::sqrt(-2.0 * std::log(u1));
    double g1 = r * std::cos(2.0 * M_PI * u2);
    double g2 = r * std::sin(2.0 * M_PI * u2);
    double sig = amplitude * std::pow(1.0 + g.xi(k), -p);
    s[k] = sig * cplx{g1, g2} * (1.0 / std::sqrt(2.0));
  }
  HardyField q(grid, std::move(s));
  double m = mass(q);
  if (m <= 0.0) throw std::runtime_error("random_field: degenerate draw");
  double scale = std::sqrt(target_mass / m);
  std::vector<cplx> t(q.spectrum());
  for (cplx& c : t) c *= scale;
  return HardyField(grid, std::move(t));
}

}  // namespace ccm
