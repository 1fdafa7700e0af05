#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <map>
#include <numeric>
#include <set>
#include <vector>

#include "scalar.hpp"

namespace imwak {

// ---------------------------------------------------------------------------
// Sparse linear combinations over an ordered monomial type.
// ---------------------------------------------------------------------------

template <class Mono>
struct SparseVec {
  std::map<Mono, Scalar> terms;

  SparseVec() = default;
  SparseVec(Mono m, Scalar c) {
    if (c != 0) terms.emplace(std::move(m), std::move(c));
  }

  bool is_zero() const { return terms.empty(); }

  void add(const Mono& m, const Scalar& c) {
    if (c == 0) return;
    auto [it, inserted] = terms.emplace(m, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms.erase(it);
    }
  }

  SparseVec& operator+=(const SparseVec& o) {
    for (const auto& [m, c] : o.terms) add(m, c);
    return *this;
  }
  SparseVec& operator-=(const SparseVec& o) {
    for (const auto& [m, c] : o.terms) add(m, -c);
    return *this;
  }
  SparseVec& operator*=(const Scalar& c) {
    if (c == 0) {
      terms.clear();
      return *this;
    }
    for (auto& [m, v] : terms) v *= c;
    return *this;
  }

  friend SparseVec operator+(SparseVec a, const SparseVec& b) { return a += b; }
  friend SparseVec operator-(SparseVec a, const SparseVec& b) { return a -= b; }
  friend SparseVec operator*(SparseVec a, const Scalar& c) { return a *= c; }
  friend SparseVec operator*(const Scalar& c, SparseVec a) { return a *= c; }
  friend SparseVec operator-(SparseVec a) { return a *= Scalar(-1); }

  bool operator==(const SparseVec&) const = default;
};

// ---------------------------------------------------------------------------
// Basis words of the oscillator module: a_{n_1}...a_{n_k} b_{-m_1}...b_{-m_l} w.
// Every a_n (any n in Z) is a creation operator; b-creation modes are the
// strictly negative ones, recorded by the positive integer m for b_{-m}.
// ---------------------------------------------------------------------------

struct FockMonomial {
  std::vector<long> a;  // sorted; one entry n per factor a_n
  std::vector<long> b;  // sorted; one entry m >= 1 per factor b_{-m}

  friend auto operator<=>(const FockMonomial&, const FockMonomial&) = default;

  static void insert_sorted(std::vector<long>& v, long n) {
    v.insert(std::lower_bound(v.begin(), v.end(), n), n);
  }
  static bool erase_one(std::vector<long>& v, long n) {
    auto it = std::lower_bound(v.begin(), v.end(), n);
    if (it == v.end() || *it != n) return false;
    v.erase(it);
    return true;
  }
  static long count_of(const std::vector<long>& v, long n) {
    auto [lo, hi] = std::equal_range(v.begin(), v.end(), n);
    return hi - lo;
  }

  FockMonomial with_a(long n) const {
    FockMonomial m = *this;
    insert_sorted(m.a, n);
    return m;
  }
  FockMonomial with_b(long part) const {
    FockMonomial m = *this;
    insert_sorted(m.b, part);
    return m;
  }

  long a_count() const { return static_cast<long>(a.size()); }
  long a_sum() const { return std::accumulate(a.begin(), a.end(), 0L); }
  long b_weight() const { return std::accumulate(b.begin(), b.end(), 0L); }
};

using FockVector = SparseVec<FockMonomial>;

inline FockVector vacuum() { return FockVector(FockMonomial{}, 1); }

// Integer part of the d-grading: sum of a-indices minus sum of b-depths.
// The full d-eigenvalue is this minus Delta(lambda); the constant offset is
// applied by callers, keeping monomials parameter-free.
inline long d_eigenvalue(const FockMonomial& m) { return m.a_sum() - m.b_weight(); }

// Indices n for which a*_n can act without annihilating the vector
// (i.e. -n occurs as an a-part of some monomial).
inline std::set<long> a_star_support(const FockVector& v) {
  std::set<long> s;
  for (const auto& [m, c] : v.terms)
    for (long e : m.a) s.insert(-e);
  return s;
}

// Positive modes n for which b_n can act without annihilating the vector.
inline std::set<long> b_annihilator_support(const FockVector& v) {
  std::set<long> s;
  for (const auto& [m, c] : v.terms)
    for (long part : m.b) s.insert(part);
  return s;
}

// Total depth of the creation word: how far applying the word's negative
// modes can lower a z-slot (used to size singular-vector truncations).
inline long negative_shift_capacity(const FockMonomial& m) {
  long s = 0;
  for (long n : m.a)
    if (n < 0) s -= n;
  s += m.b_weight();
  return s;
}

inline long negative_shift_capacity(const FockVector& v) {
  long s = 0;
  for (const auto& [m, c] : v.terms) s = std::max(s, negative_shift_capacity(m));
  return s;
}

// ---------------------------------------------------------------------------
// PBW words on the induced-module side: f_{n_1}...f_{n_k} h_{-m_1}...h_{-m_l} v.
// Legitimate as plain multisets since [f_i, f_j] = 0 and [h_{-i}, h_{-j}] = 0.
// ---------------------------------------------------------------------------

struct VermaMonomial {
  std::vector<long> f;  // sorted; one entry n per factor f_n
  std::vector<long> h;  // sorted; one entry m >= 1 per factor h_{-m}

  friend auto operator<=>(const VermaMonomial&, const VermaMonomial&) = default;

  VermaMonomial with_f(long n) const {
    VermaMonomial m = *this;
    FockMonomial::insert_sorted(m.f, n);
    return m;
  }
  VermaMonomial with_h(long part) const {
    VermaMonomial m = *this;
    FockMonomial::insert_sorted(m.h, part);
    return m;
  }
};

using VermaVector = SparseVec<VermaMonomial>;

inline VermaVector verma_highest() { return VermaVector(VermaMonomial{}, 1); }

}  // namespace imwak
