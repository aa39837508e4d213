#include "ccm/io.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace ccm {

void atomic_write(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw std::runtime_error("atomic_write: cannot open " + tmp);
    f << content;
    if (!f.good()) throw std::runtime_error("atomic_write: write failed " + tmp);
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0)
    throw std::runtime_error("atomic_write: rename failed for " + path);
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string field_csv(const HardyField& q) {
  const Grid& g = *q.grid();
  std::string out;
  out.reserve(64 * g.n());
  out += "# n_points=" + std::to_string(g.n()) +
         " domain_length=" + format_double(g.length()) +
         " dx=" + format_double(g.dx()) + " dxi=" + format_double(g.dxi()) +
         "\n";
  out += "x,re_q,im_q,k,xi,re_qhat,im_qhat\n";
  const auto& s = q.samples();
  const auto& sp = q.spectrum();
  for (int j = 0; j < g.n(); ++j) {
    out += format_double(g.x(j)) + "," + format_double(s[j].real()) + "," +
           format_double(s[j].imag());
    if (j < g.hardy_modes()) {
      out += "," + std::to_string(j) + "," + format_double(g.xi(j)) + "," +
             format_double(sp[j].real()) + "," + format_double(sp[j].imag());
    } else {
      out += ",,,,";
    }
    out += "\n";
  }
  return out;
}

json observables_json(double t, const ObservableSet& o,
                      const std::map<double, double>& beta_samples) {
  json j;
  j["t"] = t;
  j["mass"] = o.mass;
  j["l2_mass"] = o.l2_mass;
  j["momentum"] = o.momentum;
  j["hamiltonian"] = o.hamiltonian;
  json tails = json::object();
  for (const auto& [k, v] : o.tails) tails[format_double(k)] = v;
  j["tails"] = tails;
  if (!beta_samples.empty()) {
    json b = json::object();
    for (const auto& [k, v] : beta_samples) b[format_double(k)] = v;
    j["beta"] = b;
  }
  return j;
}

json record_json(const EvolutionRecord& r, const std::string& field_ref) {
  json j = observables_json(r.t, r.observables, r.beta_samples);
  j["drift_flagged"] = r.drift_flagged;
  if (!field_ref.empty()) j["field_csv"] = field_ref;
  return j;
}

}  // namespace ccm
