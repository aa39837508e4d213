#include "ccm/hardy_ops.hpp"

#include <cmath>

#include "ccm/quadrature.hpp"

namespace ccm {

namespace {
constexpr double kSqrt2Pi = 2.5066282746310005024157652848110;
}

HardyField szego_project(const GridPtr& grid,
                         const std::vector<cplx>& samples) {
  const Grid& g = *grid;
  if (static_cast<int>(samples.size()) != g.n())
    throw std::invalid_argument("szego_project: wrong sample count");
  for (const cplx& c : samples)
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag()))
      throw std::invalid_argument("szego_project: non-finite input");
  std::vector<cplx> full(g.n());
  g.forward(samples.data(), full.data());
  std::vector<cplx> spec(full.begin(), full.begin() + g.hardy_modes());
  return HardyField(grid, std::move(spec));
}

double szego_residual(const GridPtr& grid, const std::vector<cplx>& samples) {
  const Grid& g = *grid;
  std::vector<cplx> full(g.n());
  g.forward(samples.data(), full.data());
  double keep = 0.0, drop = 0.0;
  for (int k = 0; k < g.n(); ++k) {
    double e = std::norm(full[k]);
    if (k < g.hardy_modes())
      keep += e;
    else
      drop += e;
  }
  double tot = keep + drop;
  return tot > 0.0 ? drop / tot : 0.0;
}

HardyField poisson_semigroup(const HardyField& f, double b) {
  if (b < 0.0) throw std::invalid_argument("poisson_semigroup: b must be >= 0");
  const Grid& g = *f.grid();
  std::vector<cplx> s(f.spectrum());
  for (int k = 0; k < g.hardy_modes(); ++k) s[k] *= std::exp(-b * g.xi(k));
  return f.with_spectrum(std::move(s), f.dc_boundary());
}

HardyField schrodinger_flow(const HardyField& f, double t) {
  const Grid& g = *f.grid();
  std::vector<cplx> s(f.spectrum());
  for (int k = 0; k < g.hardy_modes(); ++k) {
    double ph = -t * g.xi(k) * g.xi(k);
    s[k] *= cplx{std::cos(ph), std::sin(ph)};
  }
  return f.with_spectrum(std::move(s), f.dc_boundary());
}

cplx halfplane_eval(const HardyField& f, cplx z) {
  if (!(z.imag() > 0.0))
    throw std::invalid_argument("halfplane_eval: Im z must be positive");
  const Grid& g = *f.grid();
  const auto& s = f.spectrum();
  cplx acc = 0.0;
  for (int k = 0; k < g.hardy_modes(); ++k) {
    // e^{i xi z} = e^{i xi Re z} e^{-xi Im z}
    double decay = std::exp(-g.xi(k) * z.imag());
    double ph = g.xi(k) * z.real();
    acc += s[k] * (decay * cplx{std::cos(ph), std::sin(ph)});
  }
  return acc * (g.dxi() / kSqrt2Pi);
}

double sobolev_norm(const HardyField& f, double s) {
  const Grid& g = *f.grid();
  const auto& sp = f.spectrum();
  std::vector<double> w(g.hardy_modes());
  for (int k = 0; k < g.hardy_modes(); ++k)
    w[k] = std::pow(g.xi(k) + 1.0, 2.0 * s) * std::norm(sp[k]);
  double f0 = std::norm(f.dc_boundary());
  return std::sqrt(halfline_integral_with_boundary(g.dxi(), w, f0));
}

double half_derivative_norm(const HardyField& f) {
  const Grid& g = *f.grid();
  const auto& sp = f.spectrum();
  double acc = 0.0;
  for (int k = 0; k < g.hardy_modes(); ++k) acc += g.xi(k) * std::norm(sp[k]);
  return std::sqrt(acc * g.dxi());
}

//------------------------------------------------------------------------------

ProductEngine::ProductEngine(GridPtr grid) : grid_(std::move(grid)) {
  const int m = 2 * grid_->n();
  wa_.resize(m);
  wb_.resize(m);
  wc_.resize(m);
  wd_.resize(m);
}

void ProductEngine::upsample(const HardyField& a,
                             std::vector<cplx>& samples2) const {
  const Grid& g = *grid_;
  const int m = 2 * g.n();
  std::fill(wa_.begin(), wa_.end(), cplx{0.0, 0.0});
  const auto& s = a.spectrum();
  for (int k = 0; k < g.hardy_modes(); ++k) wa_[k] = s[k];
  samples2.resize(m);
  g.inverse2(wa_.data(), samples2.data());
}

void ProductEngine::conj_product_full(const HardyField& a, const HardyField& b,
                                      std::vector<cplx>& spec_full2) const {
  if (a.grid() != grid_ || b.grid() != grid_)
    throw std::invalid_argument("ProductEngine: grid mismatch");
  const Grid& g = *grid_;
  const int m = 2 * g.n();
  upsample(a, wb_);
  upsample(b, wc_);
  for (int j = 0; j < m; ++j) wc_[j] *= std::conj(wb_[j]);
  spec_full2.resize(m);
  g.forward2(wc_.data(), spec_full2.data());
}

void ProductEngine::modsq_full(const HardyField& a,
                               std::vector<cplx>& spec_full2,
                               std::vector<cplx>* samples2) const {
  const Grid& g = *grid_;
  const int m = 2 * g.n();
  upsample(a, wb_);
  for (int j = 0; j < m; ++j) wc_[j] = wb_[j] * std::conj(wb_[j]);
  if (samples2) *samples2 = wc_;
  spec_full2.resize(m);
  g.forward2(wc_.data(), spec_full2.data());
}

HardyField ProductEngine::mult_by(const HardyField& q,
                                  const std::vector<cplx>& v_pad) const {
  const Grid& g = *grid_;
  const int m = 2 * g.n();
  const int K2 = g.n();
  std::fill(wd_.begin(), wd_.end(), cplx{0.0, 0.0});
  for (int k = 0; k < K2 && k < static_cast<int>(v_pad.size()); ++k)
    wd_[k] = v_pad[k];
  g.inverse2(wd_.data(), wc_.data());
  upsample(q, wb_);
  for (int j = 0; j < m; ++j) wc_[j] *= wb_[j];
  g.forward2(wc_.data(), wd_.data());
  std::vector<cplx> out(wd_.begin(), wd_.begin() + g.hardy_modes());
  return HardyField(q.grid(), std::move(out));
}

HardyField ProductEngine::toeplitz(const HardyField& q,
                                   const HardyField& f) const {
  const Grid& g = *grid_;
  std::vector<cplx> w;
  conj_product_full(q, f, w);  // conj(q) * f on the 2n ladder
  // principal-value Szego cut: keep [0, 2K), halve the DC bin
  std::vector<cplx> v(g.n());
  for (int k = 0; k < g.n(); ++k) v[k] = w[k];
  v[0] *= 0.5;
  return mult_by(q, v);
}

}  // namespace ccm
