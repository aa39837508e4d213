#include "doctest.h"

#include <cmath>

#include "ccm/evolve.hpp"

using namespace ccm;

TEST_CASE("ccm_rhs: zero field, soliton near-stationarity, linearization") {
  auto g = make_grid(2048, 100.0);
  ProductEngine pe(g);
  CHECK(ccm_rhs(HardyField::zero(g), Sign::focusing, pe).l2_norm() == 0.0);

  // stationarity defect decays like 1/L^2 under window growth
  auto g2 = make_grid(8192, 400.0);
  ProductEngine pe2(g2);
  HardyField R1 = soliton(1.0, 0.0, g);
  HardyField R2 = soliton(1.0, 0.0, g2);
  double d1 = ccm_rhs(R1, Sign::focusing, pe).l2_norm();
  double d2 = ccm_rhs(R2, Sign::focusing, pe2).l2_norm();
  CHECK(d1 < 5e-3);
  CHECK(d2 < 0.1 * d1);

  // linear regime: rhs of a tiny field matches the dispersive multiplier
  HardyField q = random_field(g, 3, 1e-8, 3.0);
  HardyField r = ccm_rhs(q, Sign::focusing, pe);
  double err = 0;
  for (int k = 0; k < g->hardy_modes(); ++k) {
    cplx lin = cplx{0.0, -g->xi(k) * g->xi(k)} * q.spectrum()[k];
    err = std::max(err, std::abs(r.spectrum()[k] - lin));
  }
  CHECK(err < 1e-13);
}

TEST_CASE("step: zero fixed point, free-flow limit, soliton one step") {
  auto g = make_grid(2048, 100.0);
  ProductEngine pe(g);
  HardyField z = HardyField::zero(g);
  CHECK(step(z, 1e-3, Sign::focusing, pe).l2_norm() == 0.0);

  // tiny field: one step is the free propagator to cubic order
  HardyField q = random_field(g, 5, 1e-10, 3.0);
  HardyField s1 = step(q, 1e-3, Sign::defocusing, pe);
  HardyField s2 = schrodinger_flow(q, 1e-3);
  double err = 0;
  for (int k = 0; k < g->hardy_modes(); ++k)
    err = std::max(err, std::abs(s1.spectrum()[k] - s2.spectrum()[k]));
  CHECK(err < 1e-18);

  auto gs = make_grid(1 << 17, 16384.0);
  ProductEngine pes(gs);
  HardyField R = soliton(1.0, 0.0, gs);
  HardyField R1 = step(R, 1e-3, Sign::focusing, pes);
  double rel = 0, nrm = 0;
  for (int k = 0; k < gs->hardy_modes(); ++k) {
    rel += std::norm(R1.spectrum()[k] - R.spectrum()[k]);
    nrm += std::norm(R.spectrum()[k]);
  }
  CHECK(std::sqrt(rel / nrm) < 1e-10);
}

TEST_CASE("evolve: conservation on random data, records recomputed") {
  auto g = make_grid(1024, 100.0);
  ProductEngine pe(g);
  HardyField q0 = random_field(g, 11, 1.0, 4.0);
  EvolutionConfig cfg;
  cfg.sign = Sign::defocusing;
  cfg.dt = 1e-3;
  cfg.t_final = 0.1;
  cfg.record_stride = 50;
  cfg.tail_kappas = {8.0};
  EvolutionResult res = evolve(q0, cfg, pe);
  CHECK(!res.blowup);
  CHECK(!res.drift_flagged);
  CHECK(res.max_mass_drift < 1e-12);
  CHECK(res.max_momentum_drift < 1e-10);
  CHECK(res.max_hamiltonian_drift < 1e-10);
  CHECK(res.records.back().t == doctest::Approx(0.1));
  CHECK(res.records.size() == 3);  // t = 0, 0.05, 0.1
}

TEST_CASE("evolve: time reversal returns the data") {
  auto g = make_grid(1024, 100.0);
  ProductEngine pe(g);
  HardyField q0 = random_field(g, 13, 1.5, 3.0);
  EvolutionConfig fwd;
  fwd.sign = Sign::focusing;
  fwd.dt = 1e-3;
  fwd.t_final = 0.05;
  fwd.record_stride = 1000000;
  EvolutionResult r1 = evolve(q0, fwd, pe);
  EvolutionConfig bwd = fwd;
  bwd.t_final = -0.05;
  EvolutionResult r2 = evolve(r1.records.back().field, bwd, pe);
  const auto& back = r2.records.back().field;
  double err = 0;
  for (int k = 0; k < g->hardy_modes(); ++k)
    err += std::norm(back.spectrum()[k] - q0.spectrum()[k]);
  CHECK(std::sqrt(err * g->dxi()) / q0.l2_norm() < 1e-11);
}

TEST_CASE("evolve: focusing above-threshold warns, stays running") {
  auto g = make_grid(512, 60.0);
  ProductEngine pe(g);
  HardyField q0 = random_field(g, 17, 7.0, 3.0);  // mass > 2 pi
  EvolutionConfig cfg;
  cfg.sign = Sign::focusing;
  cfg.dt = 5e-4;
  cfg.t_final = 0.01;
  cfg.record_stride = 10;
  EvolutionResult res = evolve(q0, cfg, pe);
  CHECK(res.diagnostic.find("warning") != std::string::npos);
}

TEST_CASE("evolve: beta conservation along the flow") {
  auto g = make_grid(512, 50.0);
  ProductEngine pe(g);
  HardyField q0 = random_field(g, 19, 1.0, 4.0);
  EvolutionConfig cfg;
  cfg.sign = Sign::defocusing;
  cfg.dt = 1e-3;
  cfg.t_final = 0.1;
  cfg.record_stride = 100;
  cfg.beta_kappas = {1.0, 4.0};
  EvolutionResult res = evolve(q0, cfg, pe);
  CHECK(res.max_beta_drift < 1e-6);
}

TEST_CASE("evolve: fourth-order convergence in dt") {
  auto g = make_grid(512, 50.0);
  ProductEngine pe(g);
  HardyField q0 = random_field(g, 21, 5.0, 3.0);
  auto run = [&](double dt) {
    EvolutionConfig cfg;
    cfg.sign = Sign::defocusing;
    cfg.dt = dt;
    cfg.t_final = 0.2;
    cfg.record_stride = 1 << 30;
    return evolve(q0, cfg, pe).records.back().field;
  };
  HardyField ref = run(1.25e-3);
  auto err = [&](const HardyField& a) {
    double e = 0;
    for (int k = 0; k < g->hardy_modes(); ++k)
      e += std::norm(a.spectrum()[k] - ref.spectrum()[k]);
    return std::sqrt(e * g->dxi());
  };
  double e1 = err(run(0.02));
  double e2 = err(run(0.01));
  CHECK(e1 / e2 > 6.0);  // asymptotically 16
}
