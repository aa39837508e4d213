#include "ccm/resolvent.hpp"

#include <cmath>

namespace ccm {

namespace {

constexpr double kSqrt2Pi = 2.5066282746310005024157652848110;
constexpr double kTwoPi = 6.283185307179586476925286766559;

// M_p(alpha) = int_0^h e^{i alpha s} s^p ds, p = 0..5.  Series for small
// |alpha| h (the recurrence cancels catastrophically there), exact
// recurrence otherwise.  Im alpha >= 0 keeps everything bounded.
void moments(cplx alpha, double h, cplx M[6]) {
  const double ah = std::abs(alpha) * h;
  if (ah < 0.5) {
    const cplx ia = cplx{0.0, 1.0} * alpha;
    for (int p = 0; p < 6; ++p) {
      cplx acc = 0.0;
      cplx pw = 1.0;
      double fac = 1.0;
      for (int m = 0; m < 26; ++m) {
        if (m > 0) {
          fac *= m;
          pw *= ia;
        }
        cplx term = pw * std::pow(h, p + m + 1) / (fac * (p + m + 1));
        acc += term;
        if (std::abs(term) < 1e-18 * (std::abs(acc) + 1e-30)) break;
      }
      M[p] = acc;
    }
    return;
  }
  const cplx ia = cplx{0.0, 1.0} * alpha;
  const cplx e = std::exp(ia * h);
  M[0] = (e - 1.0) / ia;
  double hp = 1.0;
  for (int p = 1; p < 6; ++p) {
    hp *= h;
    M[p] = (hp * e - double(p) * M[p - 1]) / ia;
  }
}

// Core of A0(t, z) on ladder spectra.  Writing sigma for the absolute
// frequency and I_j for the j-th cell integral of e^{i alpha_j s} p_j(s)
// (alpha_j = z - 2 t sigma_j, p_j the local cubic of fhat with the chirp's
// within-cell remainder folded in), the output obeys the stable recurrence
//   T_k = I_k + e^{i z h - i t (sigma_{k+1}^2 - sigma_k^2)} T_{k+1},
//   out_k = i T_k,
// in which every factor has modulus <= 1 for Im z > 0.  Returns the
// one-sided values; out[0] is ghat(0+).
std::vector<cplx> a0_core(const Grid& g, const std::vector<cplx>& spec,
                          cplx dcb, double t, cplx z) {
  const int K = g.hardy_modes();
  const double h = g.dxi();

  std::vector<cplx> f(K + 3);
  for (int k = 0; k < K; ++k) f[k] = spec[k];
  f[0] = dcb;  // one-sided boundary value at xi = 0
  f[K] = f[K + 1] = f[K + 2] = cplx{0.0, 0.0};

  std::vector<cplx> I(K);
  for (int j = 0; j < K; ++j) {
    cplx c0, c1, c2, c3;
    if (j == 0) {
      cplx A = f[0], B = f[1], C = f[2], D = f[3];
      c0 = A;
      c1 = (-11.0 * A + 18.0 * B - 9.0 * C + 2.0 * D) / (6.0 * h);
      c2 = (2.0 * A - 5.0 * B + 4.0 * C - D) / (2.0 * h * h);
      c3 = (-A + 3.0 * B - 3.0 * C + D) / (6.0 * h * h * h);
    } else {
      cplx A = f[j - 1], B = f[j], C = f[j + 1], D = f[j + 2];
      c0 = B;
      c1 = (-2.0 * A - 3.0 * B + 6.0 * C - D) / (6.0 * h);
      c2 = (A - 2.0 * B + C) / (2.0 * h * h);
      c3 = (-A + 3.0 * B - 3.0 * C + D) / (6.0 * h * h * h);
    }
    const double sj = g.xi(j);
    const cplx alpha = z - 2.0 * t * sj;
    cplx M[6];
    moments(alpha, h, M);
    cplx Ij = c0 * M[0] + c1 * M[1] + c2 * M[2] + c3 * M[3];
    if (t != 0.0) {
      Ij -= cplx{0.0, t} * (c0 * M[2] + c1 * M[3] + c2 * M[4] + c3 * M[5]);
      Ij -= 0.5 * t * t * (c0 * M[4] + c1 * M[5]);
    }
    I[j] = Ij;
  }

  std::vector<cplx> out(K);
  cplx tail = 0.0;
  for (int k = K - 1; k >= 0; --k) {
    if (k < K - 1) {
      double d2 = g.xi(k + 1) * g.xi(k + 1) - g.xi(k) * g.xi(k);
      double ph = z.real() * h - t * d2;
      cplx fac = std::exp(-z.imag() * h) * cplx{std::cos(ph), std::sin(ph)};
      tail = I[k] + fac * tail;
    } else {
      tail = I[k];
    }
    out[k] = cplx{0.0, 1.0} * tail;
  }
  return out;
}

}  // namespace

HardyField a0_apply(const HardyField& f, double t, cplx z) {
  if (!(z.imag() > 0.0))
    throw std::invalid_argument("a0_apply: Im z must be positive");
  std::vector<cplx> out =
      a0_core(*f.grid(), f.spectrum(), f.dc_boundary(), t, z);
  cplx boundary = out[0];
  out[0] *= 0.5;  // store the jump midpoint
  return HardyField(f.grid(), std::move(out), boundary);
}

HardyField x_resolvent(const HardyField& f, cplx z) {
  return a0_apply(f, 0.0, z);
}

cplx iplus_boundary(const HardyField& g) {
  return kSqrt2Pi * g.dc_boundary();
}

namespace {
// Fit I(y) = I + c1/y + ... + c_{n-1}/y^{n-1} through the sweep values by a
// tiny Gaussian elimination; returns the constant term.
cplx vandermonde_extrapolate(const std::vector<double>& ys,
                             const std::vector<cplx>& vals) {
  const int n = static_cast<int>(ys.size());
  std::vector<std::vector<cplx>> A(n, std::vector<cplx>(n + 1));
  for (int i = 0; i < n; ++i) {
    double p = 1.0;
    for (int j = 0; j < n; ++j) {
      A[i][j] = p;
      p /= ys[i];
    }
    A[i][n] = vals[i];
  }
  for (int col = 0; col < n; ++col) {
    int piv = col;
    for (int r = col + 1; r < n; ++r)
      if (std::abs(A[r][col]) > std::abs(A[piv][col])) piv = r;
    std::swap(A[piv], A[col]);
    for (int r = col + 1; r < n; ++r) {
      cplx m = A[r][col] / A[col][col];
      for (int c = col; c <= n; ++c) A[r][c] -= m * A[col][c];
    }
  }
  std::vector<cplx> sol(n);
  for (int r = n - 1; r >= 0; --r) {
    cplx s = A[r][n];
    for (int c = r + 1; c < n; ++c) s -= A[r][c] * sol[c];
    sol[r] = s / A[r][r];
  }
  return sol[0];
}
}  // namespace

cplx iplus_ysweep(const HardyField& f, const std::vector<double>& ys,
                  double* err_estimate) {
  const int n = static_cast<int>(ys.size());
  std::vector<cplx> vals(n);
  for (int i = 0; i < n; ++i)
    vals[i] = kTwoPi * ys[i] * halfplane_eval(f, cplx{0.0, ys[i]});
  cplx full = vandermonde_extrapolate(ys, vals);
  if (err_estimate) {
    if (n >= 2) {
      std::vector<double> ys1(ys.begin(), ys.end() - 1);
      std::vector<cplx> v1(vals.begin(), vals.end() - 1);
      cplx lower = vandermonde_extrapolate(ys1, v1);
      *err_estimate = std::abs(full - lower);
    } else {
      *err_estimate = std::abs(full);
    }
  }
  return full;
}

double contraction_estimate(const HardyField& q0, double t, cplx z, Sign sign,
                            const ProductEngine& pe, int iters) {
  (void)sign;
  const GridPtr& grid = q0.grid();
  HardyField v = q0;
  double est = 0.0;
  for (int i = 0; i < iters; ++i) {
    HardyField av = a0_apply(v, t, z);
    HardyField w = pe.toeplitz(q0, av);
    std::vector<cplx> s(w.spectrum());
    for (cplx& c : s) c *= 2.0 * std::abs(t);
    double nn = 0.0;
    for (const cplx& c : s) nn += std::norm(c);
    nn = std::sqrt(nn * grid->dxi());
    est = nn;  // v enters normalized, so nn is the Rayleigh-style estimate
    if (nn == 0.0) return 0.0;
    for (cplx& c : s) c /= nn;
    v = HardyField(grid, std::move(s));
  }
  return est;
}

namespace {

// Restarted GMRES with modified Gram-Schmidt and complex Givens rotations.
template <class MatVec>
int gmres(const MatVec& A, const std::vector<cplx>& b, std::vector<cplx>& x,
          double tol, int max_iter, int restart, double* final_res) {
  const int n = static_cast<int>(b.size());
  auto dot = [n](const std::vector<cplx>& a, const std::vector<cplx>& c) {
    cplx s = 0.0;
    for (int i = 0; i < n; ++i) s += std::conj(a[i]) * c[i];
    return s;
  };
  auto nrm2 = [](const std::vector<cplx>& a) {
    double s = 0.0;
    for (const cplx& v : a) s += std::norm(v);
    return std::sqrt(s);
  };
  const double bnorm = nrm2(b);
  if (bnorm == 0.0) {
    x.assign(n, cplx{0.0, 0.0});
    if (final_res) *final_res = 0.0;
    return 0;
  }
  int total_it = 0;
  while (true) {
    std::vector<cplx> r = A(x);
    for (int i = 0; i < n; ++i) r[i] = b[i] - r[i];
    double beta = nrm2(r);
    if (final_res) *final_res = beta / bnorm;
    if (beta / bnorm < tol || total_it >= max_iter) return total_it;

    const int m = restart;
    std::vector<std::vector<cplx>> V;
    V.reserve(m + 1);
    V.push_back(std::move(r));
    for (cplx& v : V[0]) v /= beta;
    std::vector<std::vector<cplx>> H(m + 1, std::vector<cplx>(m, cplx{0.0}));
    std::vector<cplx> cs(m), sn(m);
    std::vector<cplx> gvec(m + 1, cplx{0.0});
    gvec[0] = beta;
    int j = 0;
    bool happy = false;
    for (; j < m && total_it < max_iter; ++total_it) {
      std::vector<cplx> w = A(V[j]);
      for (int i = 0; i <= j; ++i) {
        H[i][j] = dot(V[i], w);
        for (int l = 0; l < n; ++l) w[l] -= H[i][j] * V[i][l];
      }
      double hn = nrm2(w);
      H[j + 1][j] = hn;
      // previously accumulated rotations
      for (int i = 0; i < j; ++i) {
        cplx top = std::conj(cs[i]) * H[i][j] + std::conj(sn[i]) * H[i + 1][j];
        cplx bot = -sn[i] * H[i][j] + cs[i] * H[i + 1][j];
        H[i][j] = top;
        H[i + 1][j] = bot;
      }
      // new rotation annihilating H[j+1][j]
      double denom =
          std::sqrt(std::norm(H[j][j]) + std::norm(H[j + 1][j]));
      if (denom == 0.0) denom = 1e-300;
      cs[j] = H[j][j] / denom;
      sn[j] = H[j + 1][j] / denom;
      H[j][j] = std::conj(cs[j]) * H[j][j] + std::conj(sn[j]) * H[j + 1][j];
      H[j + 1][j] = 0.0;
      gvec[j + 1] = -sn[j] * gvec[j];
      gvec[j] = std::conj(cs[j]) * gvec[j];
      ++j;
      if (std::abs(gvec[j]) / bnorm < tol) {
        happy = true;
        break;
      }
      if (hn == 0.0) {
        happy = true;  // invariant subspace hit
        break;
      }
      V.push_back(std::move(w));
      for (cplx& v : V[j]) v /= hn;
    }
    // back substitution and update
    std::vector<cplx> y(j, cplx{0.0});
    for (int i = j - 1; i >= 0; --i) {
      cplx s = gvec[i];
      for (int l = i + 1; l < j; ++l) s -= H[i][l] * y[l];
      y[i] = s / H[i][i];
    }
    for (int i = 0; i < j; ++i)
      for (int l = 0; l < n; ++l) x[l] += y[i] * V[i][l];
    if (j == 0) return total_it;  // stagnation guard
    if (happy || total_it >= max_iter) {
      std::vector<cplx> rr = A(x);
      double acc = 0.0;
      for (int i = 0; i < n; ++i) acc += std::norm(b[i] - rr[i]);
      if (final_res) *final_res = std::sqrt(acc) / bnorm;
      if (*final_res < tol || total_it >= max_iter) return total_it;
    }
  }
}

struct FixedPointOp {
  const HardyField* q0;
  const ProductEngine* pe;
  double t;
  cplx z;
  double sign;
  std::vector<cplx> operator()(const std::vector<cplx>& v) const {
    HardyField vf(q0->grid(), v);
    HardyField w = pe->toeplitz(*q0, vf);
    HardyField aw = a0_apply(w, t, z);
    std::vector<cplx> out(v.size());
    const auto& a = aw.spectrum();
    for (size_t i = 0; i < v.size(); ++i) out[i] = v[i] - sign * 2.0 * t * a[i];
    return out;
  }
};

}  // namespace

HardyField resolvent_apply(const HardyField& q0, const HardyField& f, double t,
                           cplx z, Sign sign, const ProductEngine& pe,
                           const SolverSettings& st, SolveReport* rep,
                           const HardyField* warm_start) {
  if (!(z.imag() > 0.0))
    throw std::invalid_argument("resolvent_apply: Im z must be positive");
  SolveReport local;
  SolveReport& R = rep ? *rep : local;
  R = SolveReport{};

  if (f.l2_norm() == 0.0) return HardyField::zero(q0.grid());

  std::vector<cplx> x(q0.modes(), cplx{0.0, 0.0});
  if (warm_start && warm_start->grid() == q0.grid()) x = warm_start->spectrum();

  auto solve_at = [&](cplx zz) {
    FixedPointOp op{&q0, &pe, t, zz, sgn(sign)};
    HardyField rhs_f = a0_apply(f, t, zz);
    double res = 0.0;
    R.iterations += gmres(op, rhs_f.spectrum(), x, st.tol, st.max_iterations,
                          st.restart, &res);
    R.residual = res;
  };

  solve_at(z);
  if (!(R.residual <= st.tol * 50.0) && t != 0.0) {
    // continuation: climb until the Neumann structure contracts, then
    // descend geometrically with warm starts (resolvent-identity ladder)
    double b_top = z.imag();
    int guard = 0;
    while (contraction_estimate(q0, t, cplx{z.real(), b_top}, sign, pe, 4) >
               st.contraction_cap &&
           guard++ < st.max_ladder)
      b_top *= 2.0;
    std::vector<double> heights;
    for (double b = b_top; b > z.imag() * 1.0001; b *= 0.5)
      heights.push_back(b);
    x.assign(q0.modes(), cplx{0.0, 0.0});
    for (double b : heights) {
      solve_at(cplx{z.real(), b});
      ++R.ladder_depth;
    }
    solve_at(z);
  }
  R.converged = R.residual <= st.tol * 50.0;
  if (!R.converged)
    throw std::runtime_error(
        "resolvent_apply: no convergence at Im z=" + std::to_string(z.imag()) +
        ", residual=" + std::to_string(R.residual));

  // dc_boundary consistent with the fixed-point identity
  HardyField xv(q0.grid(), x);
  HardyField w = pe.toeplitz(q0, xv);
  HardyField rhs_f = a0_apply(f, t, z);
  HardyField aw = a0_apply(w, t, z);
  cplx dcb = rhs_f.dc_boundary() + sgn(sign) * 2.0 * t * aw.dc_boundary();
  return HardyField(q0.grid(), std::move(x), dcb);
}

HardyField solve_resolvent_state(const HardyField& q0, double t, cplx z,
                                 Sign sign, const ProductEngine& pe,
                                 const SolverSettings& st, SolveReport* rep,
                                 const HardyField* warm_start) {
  return resolvent_apply(q0, q0, t, z, sign, pe, st, rep, warm_start);
}

cplx explicit_value(const HardyField& q0, double t, cplx z, Sign sign,
                    const ProductEngine& pe, const SolverSettings& st,
                    SolveReport* rep) {
  HardyField u = solve_resolvent_state(q0, t, z, sign, pe, st, rep);
  cplx term1 = halfplane_eval(schrodinger_flow(q0, t), z);
  HardyField w = pe.toeplitz(q0, u);
  cplx term2 = halfplane_eval(schrodinger_flow(w, t), z);
  return term1 + sgn(sign) * 2.0 * t * term2;
}

std::vector<LinePoint> explicit_line(const HardyField& q0, double t, double b,
                                     Sign sign, const ProductEngine& pe,
                                     const SolverSettings& st, int stride) {
  if (!(b > 0.0)) throw std::invalid_argument("explicit_line: b must be > 0");
  const Grid& g = *q0.grid();
  const HardyField q0t = schrodinger_flow(q0, t);
  std::vector<LinePoint> out;
  HardyField warm = HardyField::zero(q0.grid());
  bool have_warm = false;
  for (int j = 0; j < g.n(); j += stride) {
    LinePoint p;
    p.x = g.x(j);
    cplx z{p.x, b};
    HardyField u = solve_resolvent_state(q0, t, z, sign, pe, st, &p.report,
                                         have_warm ? &warm : nullptr);
    HardyField w = pe.toeplitz(q0, u);
    p.value = halfplane_eval(q0t, z) +
              sgn(sign) * 2.0 * t * halfplane_eval(schrodinger_flow(w, t), z);
    warm = u;
    have_warm = true;
    out.push_back(std::move(p));
  }
  return out;
}

}  // namespace ccm
