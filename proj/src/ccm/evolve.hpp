//==============================================================================
// evolve.hpp
// Direct time integration: integrating-factor RK4 in the interaction picture
// (the dispersive multiplier is applied exactly; the classical 4-stage rule
// advances the dealiased nonlinearity), plus trajectory recording with
// conservation monitoring.
//==============================================================================
#pragma once

#include <functional>

#include "ccm/observables.hpp"

namespace ccm {

struct EvolutionConfig {
  Sign sign = Sign::defocusing;
  double dt = 1e-3;
  double t_final = 1.0;
  int record_stride = 100;           // steps between records
  std::vector<double> beta_kappas;   // empty = skip beta monitoring
  std::vector<double> tail_kappas;
  double mass_drift_tol = 1e-10;     // relative, plain Plancherel mass
  double momentum_drift_tol = 1e-8;
  double hamiltonian_drift_tol = 1e-8;
  double beta_drift_tol = 1e-6;
  double blowup_mass_drift = 1e-3;   // abort threshold
};

struct EvolutionRecord {
  double t = 0.0;
  HardyField field;
  ObservableSet observables;
  std::map<double, double> beta_samples;
  bool drift_flagged = false;
};

struct EvolutionResult {
  std::vector<EvolutionRecord> records;
  bool blowup = false;        // trajectory truncated at last good record
  bool drift_flagged = false; // some record exceeded a drift tolerance
  double max_mass_drift = 0.0, max_momentum_drift = 0.0,
         max_hamiltonian_drift = 0.0, max_beta_drift = 0.0;
  std::string diagnostic;
};

// dq/dt = i q'' +/- 2 q C+( (|q|^2)' ): dealiased, derivative applied to the
// projected modulus-squared spectrum (the cut and the derivative commute).
HardyField ccm_rhs(const HardyField& q, Sign sign, const ProductEngine& pe);

// One IFRK4 step of width dt.
HardyField step(const HardyField& q, double dt, Sign sign,
                const ProductEngine& pe);

// Integrate to t_final, recording every record_stride steps (and at the end).
// Focusing data with mass >= 2 pi warns via the diagnostic string, not abort.
EvolutionResult evolve(const HardyField& q0, const EvolutionConfig& cfg,
                       const ProductEngine& pe);

}  // namespace ccm
