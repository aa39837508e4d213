#include "ccm/evolve.hpp"

#include <cmath>

#include "ccm/lax.hpp"

namespace ccm {

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;

// exp(-i xi^2 dt) on the ladder
std::vector<cplx> phase_table(const Grid& g, double dt) {
  std::vector<cplx> e(g.hardy_modes());
  for (int k = 0; k < g.hardy_modes(); ++k) {
    double ph = -g.xi(k) * g.xi(k) * dt;
    e[k] = cplx{std::cos(ph), std::sin(ph)};
  }
  return e;
}

std::vector<cplx> nonlinear(const std::vector<cplx>& spec, cplx dcb, Sign sign,
                            const GridPtr& grid, const ProductEngine& pe) {
  const Grid& g = *grid;
  const int K = g.hardy_modes();
  const int K2 = g.n();
  HardyField q(grid, spec, dcb);
  std::vector<cplx> u;
  pe.modsq_full(q, u);
  // C+((|q|^2)'): the derivative kills the DC bin, so the cut weight there
  // is immaterial
  std::vector<cplx> v(K2);
  for (int k = 0; k < K2; ++k) v[k] = cplx{0.0, g.dxi() * k} * u[k];
  HardyField w = pe.mult_by(q, v);
  std::vector<cplx> out(w.spectrum());
  const double s2 = 2.0 * sgn(sign);
  for (int k = 0; k < K; ++k) out[k] *= s2;
  return out;
}
}  // namespace

HardyField ccm_rhs(const HardyField& q, Sign sign, const ProductEngine& pe) {
  const Grid& g = *q.grid();
  const int K = g.hardy_modes();
  std::vector<cplx> out =
      nonlinear(q.spectrum(), q.dc_boundary(), sign, q.grid(), pe);
  const auto& s = q.spectrum();
  for (int k = 0; k < K; ++k)
    out[k] += cplx{0.0, -g.xi(k) * g.xi(k)} * s[k];
  // the nonlinearity vanishes at the xi = 0 bin, so d/dt qhat(0) = 0
  return q.with_spectrum(std::move(out), out.empty() ? cplx{} : out[0]);
}

HardyField step(const HardyField& q, double dt, Sign sign,
                const ProductEngine& pe) {
  const GridPtr& grid = q.grid();
  const Grid& g = *grid;
  const int K = g.hardy_modes();
  const auto E = phase_table(g, dt / 2.0);
  const cplx dcb = q.dc_boundary();

  // the nonlinearity only sees samples, never dc_boundary
  auto N = [&](const std::vector<cplx>& v) {
    return nonlinear(v, v.empty() ? cplx{} : v[0], sign, grid, pe);
  };

  const std::vector<cplx>& v = q.spectrum();
  std::vector<cplx> n1 = N(v);

  std::vector<cplx> a(K);
  for (int k = 0; k < K; ++k) a[k] = E[k] * (v[k] + 0.5 * dt * n1[k]);
  std::vector<cplx> n2 = N(a);

  std::vector<cplx> b(K);
  for (int k = 0; k < K; ++k) b[k] = E[k] * v[k] + 0.5 * dt * n2[k];
  std::vector<cplx> n3 = N(b);

  std::vector<cplx> c(K);
  for (int k = 0; k < K; ++k)
    c[k] = E[k] * E[k] * v[k] + dt * E[k] * n3[k];
  std::vector<cplx> n4 = N(c);

  std::vector<cplx> out(K);
  for (int k = 0; k < K; ++k) {
    cplx e = E[k], e2 = E[k] * E[k];
    out[k] = e2 * v[k] +
             (dt / 6.0) * (e2 * n1[k] + 2.0 * e * (n2[k] + n3[k]) + n4[k]);
  }
  return q.with_spectrum(std::move(out), dcb);
}

EvolutionResult evolve(const HardyField& q0, const EvolutionConfig& cfg,
                       const ProductEngine& pe) {
  if (!(cfg.dt != 0.0)) throw std::invalid_argument("evolve: dt must be nonzero");
  EvolutionResult res;
  const double m0_line = mass(q0);
  if (cfg.sign == Sign::focusing && m0_line >= kTwoPi)
    res.diagnostic =
        "warning: focusing mass >= 2*pi (outside the proven equicontinuity "
        "class); run marked experimental. ";

  const int n_steps =
      static_cast<int>(std::llround(std::abs(cfg.t_final / cfg.dt)));
  const double dt = cfg.t_final >= 0 ? std::abs(cfg.dt) : -std::abs(cfg.dt);

  auto make_record = [&](double t, const HardyField& q) {
    EvolutionRecord r;
    r.t = t;
    r.field = q;
    r.observables = observable_set(q, cfg.sign, pe, cfg.tail_kappas);
    if (!cfg.beta_kappas.empty()) {
      LaxOperatorMatrix lax(q, cfg.sign);
      for (double kap : cfg.beta_kappas) {
        try {
          r.beta_samples[kap] = lax.beta(kap);
        } catch (const std::exception&) {
          r.beta_samples[kap] = std::nan("");  // kappa below kappa0
        }
      }
    }
    return r;
  };

  EvolutionRecord first = make_record(0.0, q0);
  const ObservableSet base = first.observables;
  const auto beta_base = first.beta_samples;
  res.records.push_back(std::move(first));

  auto rel = [](double a, double b) {
    double s = std::max(std::abs(b), 1e-14);
    return std::abs(a - b) / s;
  };

  HardyField q = q0;
  for (int i = 1; i <= n_steps; ++i) {
    q = step(q, dt, cfg.sign, pe);
    if (!q.finite()) {
      res.blowup = true;
      res.diagnostic += "blowup: non-finite field at t=" +
                        std::to_string(i * dt) + "; trajectory truncated";
      break;
    }
    double mdrift = rel(q.l2_norm_sq(), base.l2_mass);
    if (mdrift > cfg.blowup_mass_drift) {
      res.blowup = true;
      res.diagnostic += "blowup: mass drift " + std::to_string(mdrift) +
                        " at t=" + std::to_string(i * dt) +
                        "; trajectory truncated";
      break;
    }
    if (i % cfg.record_stride == 0 || i == n_steps) {
      EvolutionRecord r = make_record(i * dt, q);
      res.max_mass_drift =
          std::max(res.max_mass_drift, rel(r.observables.l2_mass, base.l2_mass));
      res.max_momentum_drift = std::max(
          res.max_momentum_drift, rel(r.observables.momentum, base.momentum));
      res.max_hamiltonian_drift =
          std::max(res.max_hamiltonian_drift,
                   rel(r.observables.hamiltonian, base.hamiltonian));
      for (const auto& [kap, val] : r.beta_samples)
        res.max_beta_drift =
            std::max(res.max_beta_drift, rel(val, beta_base.at(kap)));
      r.drift_flagged = res.max_mass_drift > cfg.mass_drift_tol ||
                        res.max_momentum_drift > cfg.momentum_drift_tol ||
                        res.max_hamiltonian_drift > cfg.hamiltonian_drift_tol ||
                        res.max_beta_drift > cfg.beta_drift_tol;
      res.drift_flagged = res.drift_flagged || r.drift_flagged;
      res.records.push_back(std::move(r));
    }
  }
  return res;
}

}  // namespace ccm
