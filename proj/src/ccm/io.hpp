//==============================================================================
// io.hpp
// Field dumps (CSV), trajectory output (JSON lines), spectral and comparison
// reports, and atomic file writes.  All numbers are printed with %.17g so
// identical runs produce byte-identical artifacts.
//==============================================================================
#pragma once

#include <string>

#include "ccm/evolve.hpp"

// vendored single-header nlohmann/json
#include "json.hpp"

namespace ccm {

using json = nlohmann::json;

// write-then-rename; throws on failure
void atomic_write(const std::string& path, const std::string& content);

std::string format_double(double v);

// CSV with columns x, Re q, Im q, k, xi, Re qhat, Im qhat; the header row
// carries the grid parameters.
std::string field_csv(const HardyField& q);

json observables_json(double t, const ObservableSet& o,
                      const std::map<double, double>& beta_samples);

json record_json(const EvolutionRecord& r, const std::string& field_ref);

}  // namespace ccm
