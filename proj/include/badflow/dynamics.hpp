#pragma once

#include "badflow/lattice.hpp"
#include "badflow/weight.hpp"

#include <vector>

namespace badflow {

/// Parameters of the upper-triangular unipotent u_{x,y,z} in SL_{d+1}.
struct UnipotentParams {
  VecQ x;      // d-1
  Rational y;
  VecQ z;      // d-1

  int d() const { return static_cast<int>(x.size()) + 1; }
};

inline MatQ u_matrix(const UnipotentParams& p) {
  const int d = p.d();
  MatQ m = MatQ::Identity(d + 1, d + 1);
  for (int i = 0; i < d - 1; ++i) {
    m(i, d - 1) = p.z(i);
    m(i, d) = p.x(i);
  }
  m(d - 1, d) = p.y;
  return m;
}

/// Exact inverse [[I, -z, zy - x], [0, 1, -y], [0, 0, 1]].
inline MatQ u_inverse(const UnipotentParams& p) {
  const int d = p.d();
  MatQ m = MatQ::Identity(d + 1, d + 1);
  for (int i = 0; i < d - 1; ++i) {
    m(i, d - 1) = -p.z(i);
    m(i, d) = p.z(i) * p.y - p.x(i);
  }
  m(d - 1, d) = -p.y;
  return m;
}

/// Diagonal flow g_t = diag(e^{lambda t}, ..., e^{lambda t}, e^{mu t}, e^{-t})
/// enclosed in intervals at the requested precision.
struct FlowMatrix {
  int d;
  Rational t;
  std::vector<Interval> diag;  // d+1 entries

  /// product of the diagonal entries; encloses 1 since the exponents sum to 0
  Interval det(mpfr_prec_t prec) const {
    Interval p = Interval::exact(1, prec);
    for (const auto& e : diag) p = iv_mul(p, e);
    return p;
  }
};

inline FlowMatrix make_flow(const Weight& w, const Rational& t, mpfr_prec_t prec) {
  FlowMatrix f{w.d, t, {}};
  auto exp_rt = [&](const Rational& r) {
    Interval rt = iv_mul(Interval::exact(r, prec), Interval::exact(t, prec));
    return iv_exp(rt);
  };
  Interval el = exp_rt(w.lambda);
  for (int i = 0; i < w.d - 1; ++i) f.diag.push_back(el);
  f.diag.push_back(exp_rt(w.mu));
  f.diag.push_back(exp_rt(Rational(-1)));
  return f;
}

/// Basis columns of the lattice g_t u^{-1} Z^{d+1}.
inline IntervalMatrix flow_basis(const UnipotentParams& p, const Weight& w, const Rational& t,
                                 mpfr_prec_t prec) {
  const int n = p.d() + 1;
  MatQ Ui = u_inverse(p);
  FlowMatrix g = make_flow(w, t, prec);
  IntervalMatrix cols(n, std::vector<Interval>(n, Interval::zero(prec)));
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i)
      if (Ui(i, j) != 0) cols[j][i] = iv_scale(g.diag[i], Ui(i, j), prec);
  return cols;
}

struct TracePoint {
  Rational t;
  Interval length;
  VecZ coeffs;
  mpfr_prec_t bits;
};

/// Times strictly increasing, lengths positive.
struct SystoleTrace {
  std::vector<TracePoint> points;
  mpfr_prec_t precision_bits = 192;
};

/// Systole of g_t u_{x,y,z}^{-1} Z^{d+1} along the given times.
inline SystoleTrace orbit_trace(const UnipotentParams& params, const Weight& w,
                                const std::vector<Rational>& times, mpfr_prec_t precision_bits = 192) {
  if (params.d() != w.d) throw std::invalid_argument("orbit_trace: dimension mismatch");
  for (size_t i = 0; i < times.size(); ++i) {
    if (times[i] < 0) throw std::invalid_argument("orbit_trace: times must be nonnegative");
    if (i > 0 && !(times[i] > times[i - 1]))
      throw std::invalid_argument("orbit_trace: times must be strictly increasing");
  }
  SystoleTrace trace;
  trace.precision_bits = precision_bits;
  for (const Rational& t : times) {
    auto fn = [&](mpfr_prec_t prec) { return flow_basis(params, w, t, prec); };
    SystoleResult r = shortest_vector(fn, precision_bits);
    trace.points.push_back({t, r.length, r.coeffs, r.bits});
  }
  return trace;
}

struct BoundednessVerdict {
  bool escaped = false;
  Rational first_escape_t;
};

/// First time the certified systole drops below the floor; bounded_so_far
/// otherwise. An enclosure straddling the floor cannot be decided at the
/// trace's precision.
inline BoundednessVerdict boundedness_verdict(const SystoleTrace& trace, const Rational& floor_val) {
  if (floor_val <= 0) throw std::invalid_argument("boundedness_verdict: floor must be positive");
  for (const auto& pt : trace.points) {
    mpfr_prec_t prec = pt.length.prec();
    Interval f = Interval::exact(floor_val, prec);
    if (cmp(pt.length.hi, f.lo) < 0) return {true, pt.t};
    if (cmp(pt.length.lo, f.hi) >= 0) continue;
    throw PrecisionExhausted("boundedness_verdict: systole enclosure straddles the floor");
  }
  return {false, Rational(0)};
}

}  // namespace badflow
