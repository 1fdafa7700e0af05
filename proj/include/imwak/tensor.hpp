#pragma once

#include <set>

#include "affine.hpp"
#include "heisenberg.hpp"
#include "params.hpp"

namespace imwak {

// ---------------------------------------------------------------------------
// The finite-dimensional sl(2)-module of highest weight m, basis u_j = f^j u
// for 0 <= j <= m:
//
//   f u_j = u_{j+1},  h u_j = (m-2j) u_j,  e u_j = j(m-j+1) u_{j-1}.
//
// Its evaluation module places u_j in z-degree slots: x_n (u_j ox z^s) =
// (x u_j) ox z^{s+n}, with the central element acting by zero.
// ---------------------------------------------------------------------------

struct SL2Term {
  long j;
  Scalar c;
};

inline SL2Term sl2_act(char x, long j, long m_weight) {
  switch (x) {
    case 'f':
      return {j + 1, j + 1 <= m_weight ? Scalar(1) : Scalar(0)};
    case 'h':
      return {j, Scalar(m_weight - 2 * j)};
    case 'e':
      return {j - 1, j >= 1 ? Scalar(j) * Scalar(m_weight - j + 1) : Scalar(0)};
    default:
      throw std::logic_error("sl2_act: expected e, f, or h");
  }
}

// Contragredient action on the dual basis functional x_j of u_j,
// (y.x)(u) := -x(y.u):
//
//   f x_j = -x_{j-1},  h x_j = (2j-m) x_j,  e x_j = -(j+1)(m-j) x_{j+1}.
inline SL2Term dual_act(char x, long j, long m_weight) {
  switch (x) {
    case 'f':
      return {j - 1, j >= 1 ? Scalar(-1) : Scalar(0)};
    case 'h':
      return {j, Scalar(2 * j - m_weight)};
    case 'e':
      return {j + 1, j + 1 <= m_weight ? Scalar(-(j + 1)) * Scalar(m_weight - j) : Scalar(0)};
    default:
      throw std::logic_error("dual_act: expected e, f, or h");
  }
}

// ---------------------------------------------------------------------------
// Windowed elements of W ox F_m[z, z^{-1}] (basis entries: oscillator word ox
// u_j ox z^zexp). Coefficients with zexp <= complete_through are exact; larger
// slots may be silently missing and are never reported. An optional global
// Scalar exponent offset (e.g. -Delta) is carried separately so slot indices
// stay integral.
// ---------------------------------------------------------------------------

struct TensorKey {
  FockMonomial mono;
  long j = 0;
  long z = 0;
  friend auto operator<=>(const TensorKey&, const TensorKey&) = default;
};

struct TensorVector {
  Scalar offset = 0;
  long complete_through = 0;
  SparseVec<TensorKey> data;

  bool is_zero_through(long cap) const {
    for (const auto& [k, c] : data.terms)
      if (k.z <= cap && c != 0) return false;
    return true;
  }

  void drop_beyond(long cap) {
    for (auto it = data.terms.begin(); it != data.terms.end();) {
      if (it->first.z > cap)
        it = data.terms.erase(it);
      else
        ++it;
    }
  }
};

inline TensorVector tensor_scale(TensorVector t, const Scalar& c) {
  t.data *= c;
  return t;
}

inline TensorVector tensor_sub(const TensorVector& a, const TensorVector& b) {
  TensorVector out = a;
  out.complete_through = std::min(a.complete_through, b.complete_through);
  out.data -= b.data;
  out.drop_beyond(out.complete_through);
  return out;
}

// Applies a W-side operator (given as FockVector -> FockVector) to the left
// tensor factor, grouping terms by (j, zexp). Slot exactness is unchanged.
template <class F>
TensorVector tensor_left(const TensorVector& t, F&& op) {
  std::map<std::pair<long, long>, FockVector> buckets;
  for (const auto& [k, c] : t.data.terms) buckets[{k.j, k.z}].add(k.mono, c);
  TensorVector out;
  out.offset = t.offset;
  out.complete_through = t.complete_through;
  for (auto& [jz, vec] : buckets) {
    FockVector image = op(vec);
    for (const auto& [m, c] : image.terms) out.data.add({m, jz.first, jz.second}, c);
  }
  return out;
}

// z^n (1 ox x): sl(2) action on the u_j factor with a z-shift of n. A slot g
// of the result draws on input slot g - n, so exactness becomes
// min(C, C + n).
inline TensorVector tensor_right(char x, long n, const TensorVector& t, long m_weight) {
  TensorVector out;
  out.offset = t.offset;
  out.complete_through = std::min(t.complete_through, t.complete_through + n);
  for (const auto& [k, c] : t.data.terms) {
    SL2Term r = sl2_act(x, k.j, m_weight);
    if (r.c == 0) continue;
    out.data.add({k.mono, r.j, k.z + n}, c * r.c);
  }
  out.drop_beyond(out.complete_through);
  return out;
}

// Multiplies by z^n: re-indexes every slot by +n (exactness cap moves along).
inline TensorVector tensor_shift_z(const TensorVector& t, long n) {
  TensorVector out;
  out.offset = t.offset;
  out.complete_through = t.complete_through + n;
  for (const auto& [k, c] : t.data.terms) out.data.add({k.mono, k.j, k.z + n}, c);
  return out;
}

inline TensorVector tensor_add(const TensorVector& a, const TensorVector& b) {
  TensorVector out = a;
  out.complete_through = std::min(a.complete_through, b.complete_through);
  out.data += b.data;
  out.drop_beyond(out.complete_through);
  return out;
}

// Star action x_n ox 1 + z^n (1 ox x) of an affine generator, with the left
// factor acting through the oscillator realization of the *target* module.
inline TensorVector star_rho(char x, long n, const TensorVector& t, const Params& target) {
  TensorVector left;
  switch (x) {
    case 'f':
      left = tensor_left(t, [&](const FockVector& v) { return apply_f(n, v); });
      break;
    case 'h':
      left = tensor_left(t, [&](const FockVector& v) { return apply_h(n, v, target); });
      break;
    case 'e':
      left = tensor_left(t, [&](const FockVector& v) { return apply_e(n, v, target); });
      break;
    default:
      throw std::logic_error("star_rho: expected e, f, or h");
  }
  return tensor_add(left, tensor_right(x, n, t, target.m_weight));
}

// Star action of the oscillator creation modes used by the intertwiner
// recursion: a_n ox 1 + z^n (1 ox f)  and  b_{-m} ox 1 + z^{-m} (1 ox h).
inline TensorVector star_osc_a(long n, const TensorVector& t, long m_weight) {
  TensorVector left = tensor_left(t, [&](const FockVector& v) { return apply_a(n, v); });
  return tensor_add(left, tensor_right('f', n, t, m_weight));
}

inline TensorVector star_osc_b(long n, const TensorVector& t, const Params& target) {
  TensorVector left = tensor_left(t, [&](const FockVector& v) { return apply_b(n, v, target); });
  return tensor_add(left, tensor_right('h', n, t, target.m_weight));
}

}  // namespace imwak
