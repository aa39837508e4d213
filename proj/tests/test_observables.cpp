#include "doctest.h"

#include <cmath>

#include "ccm/observables.hpp"

using namespace ccm;

TEST_CASE("soliton basics and rejection") {
  auto g = make_grid(4096, 200.0);
  CHECK_THROWS(soliton(0.0, 0.0, g));
  CHECK_THROWS(soliton(-1.0, 0.0, g));
  HardyField R = soliton(1.0, 0.0, g);
  // value at x = 0: line says -sqrt(2) i; grid representative is the
  // periodization, off by O(1/L^2)
  int j0 = g->n() / 2;
  CHECK(g->x(j0) == doctest::Approx(0.0));
  CHECK(std::abs(R.samples()[j0] - cplx{0.0, -std::sqrt(2.0)}) < 5e-4);
  // anti-Hardy content of the synthesized samples is zero by construction
  CHECK(szego_residual(g, R.samples()) < 1e-26);
}

TEST_CASE("soliton mass is 2 pi, scale-invariantly") {
  auto g = make_grid(16384, 400.0);
  for (double lam : {0.5, 1.0, 4.0}) {
    HardyField R = soliton(lam, 0.0, g);
    CHECK(std::abs(mass(R) - 2 * M_PI) < 1e-8);
  }
  // off-center soliton: phase factor only
  HardyField Rs = soliton(1.0, 3.0, g);
  CHECK(std::abs(mass(Rs) - 2 * M_PI) < 1e-8);
}

TEST_CASE("tail mass: kappa=0 is mass, closed form at kappa=1, top empty") {
  auto g = make_grid(16384, 400.0);
  HardyField R = soliton(1.0, 0.0, g);
  CHECK(tail_mass(R, 0.0) == doctest::Approx(mass(R)).epsilon(1e-14));
  CHECK(std::abs(tail_mass(R, 1.0) - 2 * M_PI * std::exp(-2.0)) < 1e-6);
  CHECK(tail_mass(R, g->xi_max() + 1.0) == 0.0);
  CHECK_THROWS(tail_mass(R, -1.0));
}

TEST_CASE("toeplitz: zero field, torus closed form for the soliton") {
  auto g = make_grid(8192, 400.0);
  ProductEngine pe(g);
  HardyField z = HardyField::zero(g);
  HardyField R = soliton(1.0, 0.0, g);
  CHECK(toeplitz_apply(z, R, pe).l2_norm() == 0.0);

  HardyField T = toeplitz_apply(R, R, pe);
  // R_per * C+(|R_per|^2) with the PV cut:
  //   C+(|R_per|^2) = 2 i (pi/L) coth(2 pi/L) S(x+i) - (pi/L)^2,
  //   S(w) = (pi/L) cot(pi w / L)
  const double L = g->length();
  const double a = M_PI / L;
  const double cth = 1.0 / std::tanh(2 * M_PI / L);
  const auto& s = T.samples();
  double sup = 0;
  for (int j = 0; j < g->n(); j += 11) {
    cplx w = a * cplx{g->x(j), 1.0};
    cplx S = a * std::cos(w) / std::sin(w);
    cplx Rp = std::sqrt(2.0) * S;
    cplx cplus = cplx{0.0, 2.0} * a * cth * S - a * a;
    sup = std::max(sup, std::abs(s[j] - Rp * cplus));
  }
  CHECK(sup < 1e-11);
  // line form i sqrt2/(x+i)^2 is approached as the torus artifacts vanish
  double supline = 0;
  for (int j = 0; j < g->n(); j += 11) {
    cplx target = cplx{0.0, std::sqrt(2.0)} / std::pow(cplx{g->x(j), 1.0}, 2);
    supline = std::max(supline, std::abs(s[j] - target));
  }
  CHECK(supline < 6e-4);  // O(dxi) DC-cell + O(1/L^2) periodization

  auto g2 = make_grid(4096, 100.0);
  HardyField R2 = soliton(1.0, 0.0, g2);
  CHECK_THROWS(toeplitz_apply(R, R2, pe));
}

TEST_CASE("toeplitz output is a valid Hardy field") {
  auto g = make_grid(1024, 100.0);
  ProductEngine pe(g);
  HardyField q = random_field(g, 5, 2.0, 3.0);
  HardyField f = random_field(g, 6, 1.0, 2.5);
  HardyField T = toeplitz_apply(q, f, pe);
  CHECK(T.finite());
  CHECK(szego_residual(g, T.samples()) < 1e-22);
}

TEST_CASE("sharp Toeplitz inequality holds on random draws") {
  auto g = make_grid(1024, 100.0);
  ProductEngine pe(g);
  for (int trial = 0; trial < 30; ++trial) {
    HardyField q = random_field(g, 100 + trial, 0.5 + 0.2 * trial, 2.0 + 0.05 * trial);
    HardyField f = random_field(g, 900 + trial, 0.3 + 0.15 * trial, 1.6 + 0.04 * trial);
    // lhs = ||C+(qbar f)||
    std::vector<cplx> w;
    pe.conj_product_full(q, f, w);
    double lhs = 0;
    w[0] *= 0.5;
    for (int k = 0; k < g->n(); ++k) lhs += std::norm(w[k]);
    lhs = std::sqrt(lhs * g->dxi());
    double rhs = q.l2_norm() / std::sqrt(2 * M_PI) * half_derivative_norm(f);
    CHECK(lhs <= rhs * (1.0 + 1e-12));
  }
}

TEST_CASE("soliton saturates the sharp constant") {
  auto g = make_grid(8192, 400.0);
  ProductEngine pe(g);
  HardyField R = soliton(1.0, 0.0, g);
  std::vector<cplx> w;
  pe.conj_product_full(R, R, w);
  w[0] *= 0.5;
  double lhs = 0;
  for (int k = 0; k < g->n(); ++k) lhs += std::norm(w[k]);
  lhs = std::sqrt(lhs * g->dxi());
  double rhs = R.l2_norm() / std::sqrt(2 * M_PI) * half_derivative_norm(R);
  CHECK(lhs / rhs > 0.9);  // ratio monitored, equality not asserted
}

TEST_CASE("momentum and Hamiltonian vanish on the soliton") {
  // thin, very long grid: the periodization gap scales like 1/L^2
  auto g = make_grid(1 << 20, 131072.0);
  ProductEngine pe(g);
  HardyField R = soliton(1.0, 0.0, g);
  CHECK(std::abs(momentum(R, Sign::focusing, pe)) < 1e-8);
  CHECK(std::abs(hamiltonian(R, Sign::focusing, pe)) < 1e-8);
  CHECK(hamiltonian(R, Sign::defocusing, pe) >= 0.0);
}

TEST_CASE("gauge invariance of the functionals") {
  auto g = make_grid(1024, 100.0);
  ProductEngine pe(g);
  HardyField q = random_field(g, 11, 1.3, 3.0);
  ObservableSet o1 = observable_set(q, Sign::focusing, pe);
  cplx phase = std::exp(cplx{0.0, 0.8437});
  std::vector<cplx> s(q.spectrum());
  for (cplx& c : s) c *= phase;
  HardyField qg(g, std::move(s), q.dc_boundary() * phase);
  ObservableSet o2 = observable_set(qg, Sign::focusing, pe);
  CHECK(std::abs(o1.mass - o2.mass) < 1e-12 * o1.mass);
  CHECK(std::abs(o1.momentum - o2.momentum) < 1e-12 * (std::abs(o1.momentum) + 1));
  CHECK(std::abs(o1.hamiltonian - o2.hamiltonian) < 1e-12 * (o1.hamiltonian + 1));
}

TEST_CASE("scaling law: mass invariant, Hamiltonian scales as lambda^2") {
  // q(x) = Gaussian packet; q_lambda = sqrt(lambda) q(lambda x)
  auto build = [](const GridPtr& g, double lam) {
    std::vector<cplx> f(g->n());
    for (int j = 0; j < g->n(); ++j) {
      double x = lam * g->x(j);
      f[j] = std::sqrt(lam) * std::exp(-x * x / 4.0) *
             std::exp(cplx{0.0, 6.0 * x});
    }
    return szego_project(g, f);
  };
  auto g = make_grid(4096, 200.0);
  ProductEngine pe(g);
  HardyField q1 = build(g, 1.0);
  HardyField q2 = build(g, 2.0);
  CHECK(mass(q2) == doctest::Approx(mass(q1)).epsilon(1e-6));
  CHECK(hamiltonian(q2, Sign::focusing, pe) ==
        doctest::Approx(4.0 * hamiltonian(q1, Sign::focusing, pe)).epsilon(1e-6));
}

TEST_CASE("random field generator: deterministic, mass-normalized, decaying") {
  auto g = make_grid(512, 60.0);
  HardyField a = random_field(g, 123, 1.7, 3.0);
  HardyField b = random_field(g, 123, 1.7, 3.0);
  for (int k = 0; k < g->hardy_modes(); ++k)
    CHECK(a.spectrum()[k] == b.spectrum()[k]);
  CHECK(mass(a) == doctest::Approx(1.7).epsilon(1e-12));
  HardyField c = random_field(g, 124, 1.7, 3.0);
  CHECK(std::abs(c.spectrum()[3] - a.spectrum()[3]) > 0.0);
}
