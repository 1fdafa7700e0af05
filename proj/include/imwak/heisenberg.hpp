#pragma once

#include "fock.hpp"
#include "params.hpp"

namespace imwak {

// Mode-by-mode action of the oscillator algebra on the polynomial module
//
//   C[x_n : n in Z] (x) C[y_m : m > 0]
//
// identified with Fock words via a_n <-> x_n, b_{-m} <-> y_m:
//
//   a_n   — multiplication by x_n            (pure creation for every n)
//   a*_n  — -d/dx_{-n}                       (pure annihilation for every n)
//   b_n   — y_{-n}*  for n < 0,  lambda  for n = 0,  2 n l d/dy_n  for n > 0
//
// so [a_m, a*_n] = delta_{m+n,0}, [b_m, b_p] = 2 m l delta_{m+p,0}, and every
// a/a* commutes with every b.

inline FockVector apply_a(long n, const FockVector& v) {
  FockVector out;
  for (const auto& [m, c] : v.terms) out.add(m.with_a(n), c);
  return out;
}

inline FockVector apply_a_star(long n, const FockVector& v) {
  FockVector out;
  for (const auto& [m, c] : v.terms) {
    long mult = FockMonomial::count_of(m.a, -n);
    if (mult == 0) continue;
    FockMonomial reduced = m;
    FockMonomial::erase_one(reduced.a, -n);
    out.add(reduced, c * Scalar(-mult));
  }
  return out;
}

inline FockVector apply_b(long n, const FockVector& v, const Params& p) {
  if (n < 0) {
    FockVector out;
    for (const auto& [m, c] : v.terms) out.add(m.with_b(-n), c);
    return out;
  }
  if (n == 0) {
    FockVector out = v;
    out *= p.lambda;
    return out;
  }
  FockVector out;
  Scalar scale = Scalar(2 * n) * p.b_level;
  for (const auto& [m, c] : v.terms) {
    long mult = FockMonomial::count_of(m.b, n);
    if (mult == 0) continue;
    FockMonomial reduced = m;
    FockMonomial::erase_one(reduced.b, n);
    out.add(reduced, c * scale * Scalar(mult));
  }
  return out;
}

}  // namespace imwak
