#pragma once

#include "fock.hpp"
#include "params.hpp"

namespace imwak {

// Independent oracle: the realization as explicit differential operators on
// the polynomial ring C[x_n : n in Z] (x) C[y_m : m > 0], written directly
// from the closed formulas
//
//   f_n  ->  x_n
//   h_n  ->  -2 Sum_m x_{m+n} d/dx_m  +  y_{-n}        (n < 0)
//                                     +  2 n K d/dy_n  (n > 0)
//                                     +  J             (n = 0)
//   e_n  ->  - Sum_{m,k} x_{k+m+n} d/dx_k d/dx_m
//            + Sum_{k>0} y_k d/dx_{-k-n}
//            + 2 K Sum_{m>0} m d/dy_m d/dx_{m-n}
//            + (K n + J) d/dx_{-n}
//
// with J = lambda and K = kappa. A polynomial is stored in the same shape as
// a Fock vector (x-exponents as the a-multiset, y-exponents as the b-multiset),
// but the operators below are built from raw multiplication/differentiation
// primitives, not from the mode engine, so the two implementations can be
// compared term by term.

using PolyState = FockVector;

inline PolyState oracle_mul_x(long n, const PolyState& p) {
  PolyState out;
  for (const auto& [m, c] : p.terms) out.add(m.with_a(n), c);
  return out;
}

inline PolyState oracle_ddx(long n, const PolyState& p) {
  PolyState out;
  for (const auto& [m, c] : p.terms) {
    long mult = FockMonomial::count_of(m.a, n);
    if (mult == 0) continue;
    FockMonomial reduced = m;
    FockMonomial::erase_one(reduced.a, n);
    out.add(reduced, c * Scalar(mult));
  }
  return out;
}

inline PolyState oracle_mul_y(long m_pos, const PolyState& p) {
  PolyState out;
  for (const auto& [m, c] : p.terms) out.add(m.with_b(m_pos), c);
  return out;
}

inline PolyState oracle_ddy(long m_pos, const PolyState& p) {
  PolyState out;
  for (const auto& [m, c] : p.terms) {
    long mult = FockMonomial::count_of(m.b, m_pos);
    if (mult == 0) continue;
    FockMonomial reduced = m;
    FockMonomial::erase_one(reduced.b, m_pos);
    out.add(reduced, c * Scalar(mult));
  }
  return out;
}

// Distinct x-indices present anywhere in the polynomial (the only indices at
// which an x-derivative can act without vanishing).
inline std::set<long> oracle_x_support(const PolyState& p) {
  std::set<long> s;
  for (const auto& [m, c] : p.terms)
    for (long e : m.a) s.insert(e);
  return s;
}

inline std::set<long> oracle_y_support(const PolyState& p) {
  std::set<long> s;
  for (const auto& [m, c] : p.terms)
    for (long e : m.b) s.insert(e);
  return s;
}

// Oscillator dictionary on the polynomial side.
inline PolyState oracle_a(long n, const PolyState& p) { return oracle_mul_x(n, p); }

inline PolyState oracle_a_star(long n, const PolyState& p) {
  return oracle_ddx(-n, p) * Scalar(-1);
}

inline PolyState oracle_b(long n, const PolyState& p, const Params& params) {
  if (n < 0) return oracle_mul_y(-n, p);
  if (n == 0) {
    PolyState out = p;
    out *= params.lambda;
    return out;
  }
  return oracle_ddy(n, p) * (Scalar(2 * n) * params.b_level);
}

inline PolyState oracle_f(long n, const PolyState& p) { return oracle_mul_x(n, p); }

inline PolyState oracle_h(long n, const PolyState& p, const Params& params) {
  PolyState out;
  for (long m : oracle_x_support(p)) {
    out += oracle_mul_x(m + n, oracle_ddx(m, p)) * Scalar(-2);
  }
  if (n < 0) {
    out += oracle_mul_y(-n, p);
  } else if (n > 0) {
    out += oracle_ddy(n, p) * (Scalar(2 * n) * params.kappa);
  } else {
    out += p * params.lambda;
  }
  return out;
}

inline PolyState oracle_e(long n, const PolyState& p, const Params& params) {
  PolyState out;
  // - Sum_{m,k} x_{k+m+n} d/dx_k d/dx_m  (d/dx_m applied first)
  for (long m : oracle_x_support(p)) {
    PolyState pm = oracle_ddx(m, p);
    for (long k : oracle_x_support(pm)) {
      out -= oracle_mul_x(k + m + n, oracle_ddx(k, pm));
    }
  }
  // + Sum_{k>0} y_k d/dx_{-k-n}: the derivative acts at -k-n = s for some
  // present index s, i.e. k = -n-s, kept only when k > 0.
  for (long s : oracle_x_support(p)) {
    long k = -n - s;
    if (k > 0) out += oracle_mul_y(k, oracle_ddx(s, p));
  }
  // + 2K Sum_{m>0} m d/dy_m d/dx_{m-n}: x-derivative at m-n = s, so m = s+n.
  for (long s : oracle_x_support(p)) {
    long m = s + n;
    if (m > 0) out += oracle_ddy(m, oracle_ddx(s, p)) * (Scalar(2 * m) * params.kappa);
  }
  // + (K n + J) d/dx_{-n}
  out += oracle_ddx(-n, p) * (params.kappa * Scalar(n) + params.lambda);
  return out;
}

}  // namespace imwak
