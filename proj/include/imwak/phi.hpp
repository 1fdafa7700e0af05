#pragma once

#include <limits>
#include <map>
#include <stdexcept>

#include "singular.hpp"
#include "virasoro.hpp"

namespace imwak {

// ---------------------------------------------------------------------------
// The intertwining series Phi(z): W_lambda -> W_{lambda-m} ox F_m[z] z^offset.
//
// Phi is pinned by Phi(w) = v# together with the creation-mode recursions
//
//   Phi(a_n u)    = (a_n ox 1 + z^n (1 ox f)) Phi(u)          (a-group outermost)
//   Phi(b_{-k} u) = (b_{-k} ox 1 + z^{-k} (1 ox h)) Phi(u)    (b-group innermost)
//
// mirroring the PBW order of basis words (b-creations right of a-creations,
// hence applied first). On the oscillator-free subspace the b-recursion
// coincides with the full h_{-k} star action, so this is the unique module-map
// extension of v#.
//
// PhiSeries is a z-slice view of one dual component x = x_j (the functional
// picking the u_j coefficient): a series sum_s u_s z^{s+offset} of target-
// module vectors, exact through slot `complete_through`.
// ---------------------------------------------------------------------------

struct PhiSeries {
  Scalar offset = 0;
  long complete_through = 0;
  std::map<long, FockVector> slots;

  void prune() {
    for (auto it = slots.begin(); it != slots.end();) {
      if (it->second.terms.empty() || it->first > complete_through)
        it = slots.erase(it);
      else
        ++it;
    }
  }

  bool is_zero_through(long cap) const {
    for (const auto& [s, vec] : slots)
      if (s <= cap && !vec.terms.empty()) return false;
    return true;
  }
};

inline PhiSeries phi_scale(PhiSeries s, const Scalar& c) {
  for (auto& [_, vec] : s.slots) vec *= c;
  s.prune();
  return s;
}

inline PhiSeries phi_shift(PhiSeries s, long n) {
  std::map<long, FockVector> moved;
  for (auto& [slot, vec] : s.slots) moved.emplace(slot + n, std::move(vec));
  s.slots = std::move(moved);
  s.complete_through += n;
  return s;
}

inline PhiSeries phi_add(const PhiSeries& a, const PhiSeries& b) {
  if (a.offset != b.offset) throw std::logic_error("phi_add: offset mismatch");
  PhiSeries out = a;
  out.complete_through = std::min(a.complete_through, b.complete_through);
  for (const auto& [slot, vec] : b.slots) out.slots[slot] += vec;
  out.prune();
  return out;
}

inline PhiSeries phi_sub(const PhiSeries& a, const PhiSeries& b) {
  if (a.offset != b.offset) throw std::logic_error("phi_sub: offset mismatch");
  PhiSeries out = a;
  out.complete_through = std::min(a.complete_through, b.complete_through);
  for (const auto& [slot, vec] : b.slots) out.slots[slot] -= vec;
  out.prune();
  return out;
}

// Applies a target-module operator slot by slot (z untouched).
template <class F>
PhiSeries phi_apply(const PhiSeries& s, F&& op) {
  PhiSeries out;
  out.offset = s.offset;
  out.complete_through = s.complete_through;
  for (const auto& [slot, vec] : s.slots) {
    FockVector image = op(vec);
    if (!image.terms.empty()) out.slots[slot] = std::move(image);
  }
  return out;
}

// Multiplies slot s by a scalar depending on s (e.g. the z-degree offset+s).
template <class F>
PhiSeries phi_scale_slotwise(const PhiSeries& s, F&& factor) {
  PhiSeries out;
  out.offset = s.offset;
  out.complete_through = s.complete_through;
  for (const auto& [slot, vec] : s.slots) {
    FockVector scaled = vec;
    scaled *= factor(slot);
    if (!scaled.terms.empty()) out.slots[slot] = std::move(scaled);
  }
  return out;
}

// d/dz: slot s (exponent offset+s) contributes (offset+s) x content at slot s-1.
inline PhiSeries phi_dz(const PhiSeries& s) {
  PhiSeries out;
  out.offset = s.offset;
  out.complete_through = s.complete_through - 1;
  for (const auto& [slot, vec] : s.slots) {
    FockVector scaled = vec;
    scaled *= (s.offset + Scalar(slot));
    if (!scaled.terms.empty()) out.slots[slot - 1] += scaled;
  }
  out.prune();
  return out;
}

// ---------------------------------------------------------------------------
// Construction.
// ---------------------------------------------------------------------------

inline long phi_required_depth(const FockVector& v, long window) {
  return window + negative_shift_capacity(v);
}

inline TensorVector phi_full_word(const FockMonomial& word, const TensorVector& vsharp,
                                  const Params& p) {
  const Params target = target_params(p);
  TensorVector t = vsharp;
  for (long k : word.b) t = star_osc_b(-k, t, target);
  for (long n : word.a) t = star_osc_a(n, t, p.m_weight);
  return t;
}

inline TensorVector phi_full(const FockVector& v, const TensorVector& vsharp, const Params& p) {
  TensorVector out;
  out.complete_through = vsharp.complete_through;  // zero input: exact everywhere we track
  bool first = true;
  for (const auto& [mono, c] : v.terms) {
    TensorVector t = tensor_scale(phi_full_word(mono, vsharp, p), c);
    if (first) {
      out = std::move(t);
      first = false;
    } else {
      out = tensor_add(out, t);
    }
  }
  return out;
}

// The x_j-component: functional picking the u_j coefficient. Negative or
// out-of-range j yields the empty series (with the input's exactness cap).
inline PhiSeries phi_slice(const TensorVector& full, long j, const Scalar& offset) {
  PhiSeries s;
  s.offset = offset;
  s.complete_through = full.complete_through;
  for (const auto& [key, c] : full.data.terms)
    if (key.j == j) s.slots[key.z].add(key.mono, c);
  s.prune();
  return s;
}

// Hatted offset -Delta - Delta(mu, alpha(x_j)) per the configured convention.
inline Scalar phi_hat_offset(const Params& p, long j) {
  return -delta_gap(p) - delta_of_alpha(p, dual_alpha(p, j));
}

// Self-contained component extraction (solves for the singular vector at the
// needed depth). Suites share one deeper v# instead and use phi_full directly.
inline PhiSeries phi_x(long j, const FockVector& v, long window, const Params& p, bool hatted) {
  long depth = phi_required_depth(v, window);
  SingularResult sr = singular_solve(depth, p);
  if (sr.dimension != 1)
    throw std::domain_error("singular solve dimension != 1; cannot build the intertwiner");
  TensorVector full = phi_full(v, sr.vsharp, p);
  return phi_slice(full, j, hatted ? phi_hat_offset(p, j) : Scalar(0));
}

// ---------------------------------------------------------------------------
// Check helpers. All return residuals; callers decide tier placement.
// ---------------------------------------------------------------------------

// d-compatibility: with prefactor z^{-delta_try}, compare
//   Phi(d v)   vs   (d ox 1 + z d/dz) Phi(v)
// slot by slot on a homogeneous word v. The per-term difference is uniformly
// (delta_try - [Delta(lambda) - Delta(lambda-m)]) x coefficient.
inline TensorVector d_intertwining_residual(const FockMonomial& word, const Scalar& delta_try,
                                            const TensorVector& vsharp, const Params& p) {
  const Params target = target_params(p);
  TensorVector full = phi_full_word(word, vsharp, p);
  Scalar lhs_const = Scalar(d_eigenvalue(word)) - conformal_delta(p, p.lambda);
  TensorVector lhs = tensor_scale(full, lhs_const);
  TensorVector rhs;
  rhs.offset = full.offset;
  rhs.complete_through = full.complete_through;
  Scalar delta_target = conformal_delta(target, target.lambda);
  for (const auto& [key, c] : full.data.terms) {
    Scalar factor = Scalar(d_eigenvalue(key.mono)) - delta_target + Scalar(key.z) - delta_try;
    rhs.data.add(key, c * factor);
  }
  return tensor_sub(lhs, rhs);
}

// [a_i, Phi_x] v - z^i Phi_{fx} v  (expected 0, all x, all v).
// Phi of the moved-argument vectors is recomputed from scratch through the
// canonical word recursion, so the check exercises an independent code path.
struct PhiContext {
  TensorVector vsharp;
  Params p;                   // source parameters
  Params target;
  TensorVector full_v;        // Phi(v), full tensor
  FockVector v;

  PhiContext(const TensorVector& vs, const Params& params, const FockVector& vec)
      : vsharp(vs), p(params), target(target_params(params)), full_v(phi_full(vec, vs, params)),
        v(vec) {}

  PhiSeries component(long j, const Scalar& offset) const {
    return phi_slice(full_v, j, offset);
  }
  PhiSeries component_of(long j, const Scalar& offset, const FockVector& u) const {
    return phi_slice(phi_full(u, vsharp, p), j, offset);
  }
  // Phi_{fx} = -(component at j-1); empty when j = 0.
  PhiSeries f_component_of(long j, const Scalar& offset, const FockVector& u) const {
    return phi_scale(component_of(j - 1, offset, u), Scalar(-1));
  }
};

inline PhiSeries a_commutator_residual(const PhiContext& ctx, long j, long i) {
  const Scalar off = 0;
  PhiSeries phix_v = ctx.component(j, off);
  PhiSeries lhs = phi_sub(phi_apply(phix_v, [&](const FockVector& u) { return apply_a(i, u); }),
                          ctx.component_of(j, off, apply_a(i, ctx.v)));
  PhiSeries rhs = phi_shift(ctx.f_component_of(j, off, ctx.v), i);
  return phi_sub(lhs, rhs);
}

inline PhiSeries a_star_commutator_residual(const PhiContext& ctx, long j, long i) {
  const Scalar off = 0;
  PhiSeries phix_v = ctx.component(j, off);
  return phi_sub(phi_apply(phix_v, [&](const FockVector& u) { return apply_a_star(i, u); }),
                 ctx.component_of(j, off, apply_a_star(i, ctx.v)));
}

inline PhiSeries h_commutator_residual(const PhiContext& ctx, long j, long i) {
  const Scalar off = 0;
  Scalar alpha = dual_alpha(ctx.p, j);
  PhiSeries phix_v = ctx.component(j, off);
  PhiSeries lhs =
      phi_sub(phi_apply(phix_v, [&](const FockVector& u) { return apply_h(i, u, ctx.target); }),
              ctx.component_of(j, off, apply_h(i, ctx.v, ctx.p)));
  PhiSeries rhs = phi_shift(phi_scale(phix_v, alpha), i);
  return phi_sub(lhs, rhs);
}

// Raw two-sided b-residual [b_i, Phi_x] v - z^i Phi_{hx} v. Nonzero in general.
inline PhiSeries b_commutator_residual(const PhiContext& ctx, long j, long i) {
  const Scalar off = 0;
  Scalar alpha = dual_alpha(ctx.p, j);
  PhiSeries phix_v = ctx.component(j, off);
  PhiSeries lhs =
      phi_sub(phi_apply(phix_v, [&](const FockVector& u) { return apply_b(i, u, ctx.target); }),
              ctx.component_of(j, off, apply_b(i, ctx.v, ctx.p)));
  PhiSeries rhs = phi_shift(phi_scale(phix_v, alpha), i);
  return phi_sub(lhs, rhs);
}

// The a*-series correction that restores the b-commutator as an exact
// operator identity:  [b_i, Phi_x] = z^i Phi_{hx} - 2 sum_s z^{i-s} Phi_{fx} a*_s.
inline PhiSeries b_commutator_correction(const PhiContext& ctx, long j, long i) {
  const Scalar off = 0;
  PhiSeries out;
  out.offset = off;
  // An empty sum is exactly zero at every slot; comparisons min with the
  // other side's cap.
  out.complete_through = std::numeric_limits<long>::max() / 4;
  bool first = true;
  for (long s : a_star_support(ctx.v)) {
    PhiSeries term =
        phi_shift(phi_scale(ctx.f_component_of(j, off, apply_a_star(s, ctx.v)), Scalar(-2)), i - s);
    if (first) {
      out = std::move(term);
      first = false;
    } else {
      out = phi_add(out, term);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Operator-form KZ machinery (hatted components).
// ---------------------------------------------------------------------------

// b_+(z) S: sum_{q>=1} z^{q-1} (b_{-q} ox 1) S — contributions to slots <= cap
// need only q <= cap - s + 1 per populated slot s.
inline PhiSeries kz_b_plus(const PhiSeries& s, const Params& target) {
  PhiSeries out;
  out.offset = s.offset;
  out.complete_through = s.complete_through;
  for (const auto& [slot, vec] : s.slots) {
    for (long q = 1; slot + q - 1 <= s.complete_through; ++q) {
      out.slots[slot + q - 1] += apply_b(-q, vec, target);
    }
  }
  out.prune();
  return out;
}

// Phi_x b_-(z) v: the zero mode gives z^{-1} lambda Phi_x v; positive modes n
// live in the b-support of v and give z^{-n-1} Phi_x(b_n v).
inline PhiSeries kz_b_minus(const PhiContext& ctx, long j, const Scalar& off) {
  PhiSeries out = phi_shift(phi_scale(ctx.component(j, off), ctx.p.lambda), -1);
  for (long n : b_annihilator_support(ctx.v)) {
    out = phi_add(out, phi_shift(ctx.component_of(j, off, apply_b(n, ctx.v, ctx.p)), -n - 1));
  }
  return out;
}

// :b(z) Phi_x(z): v with the creation/annihilation split b_+ Phi + Phi b_-.
inline PhiSeries kz_normal_b(const PhiContext& ctx, long j, const Scalar& off) {
  return phi_add(kz_b_plus(ctx.component(j, off), ctx.target), kz_b_minus(ctx, j, off));
}

// Residual of the bracket form
//   [L_n, Phi^_x] v - { Phi^_{fx} z^{n+1} da*(z) + (alpha/2) z^{n+1} :b Phi^_x:
//                       + (n+1) Delta(mu,alpha) z^n Phi^_x } v.
inline PhiSeries kz_bracket_residual(const PhiContext& ctx, long j, long n) {
  const Scalar off = phi_hat_offset(ctx.p, j);
  Scalar alpha = dual_alpha(ctx.p, j);
  Scalar dma = delta_of_alpha(ctx.p, alpha);

  PhiSeries phix_v = ctx.component(j, off);
  PhiSeries lhs =
      phi_sub(phi_apply(phix_v, [&](const FockVector& u) { return apply_L(n, u, ctx.target); }),
              ctx.component_of(j, off, apply_L(n, ctx.v, ctx.p)));

  PhiSeries residual = lhs;
  // Phi^_{fx} z^{n+1} da*(z) v = sum_s (-s) z^{n-s} Phi^_{fx}(a*_s v)
  for (long s : a_star_support(ctx.v)) {
    PhiSeries term = phi_shift(
        phi_scale(ctx.f_component_of(j, off, apply_a_star(s, ctx.v)), Scalar(-s)), n - s);
    residual = phi_sub(residual, term);
  }
  if (alpha != 0) {
    residual = phi_sub(residual, phi_shift(phi_scale(kz_normal_b(ctx, j, off), alpha / 2), n + 1));
  }
  if (n + 1 != 0 && dma != 0) {
    residual = phi_sub(residual, phi_shift(phi_scale(phix_v, Scalar(n + 1) * dma), n));
  }
  return residual;
}

// Residual of the derivative form
//   d/dz Phi^_x v - { Phi^_{fx} da*(z) + (alpha/2) :b Phi^_x: } v.
inline PhiSeries kz_derivative_residual(const PhiContext& ctx, long j) {
  const Scalar off = phi_hat_offset(ctx.p, j);
  Scalar alpha = dual_alpha(ctx.p, j);
  PhiSeries residual = phi_dz(ctx.component(j, off));
  for (long s : a_star_support(ctx.v)) {
    PhiSeries term = phi_shift(
        phi_scale(ctx.f_component_of(j, off, apply_a_star(s, ctx.v)), Scalar(-s)), -s - 1);
    residual = phi_sub(residual, term);
  }
  if (alpha != 0) {
    residual = phi_sub(residual, phi_scale(kz_normal_b(ctx, j, off), alpha / 2));
  }
  return residual;
}

// Cross-consistency of the two forms:  z d/dz Phi^_x v = [L_0, Phi^_x] v
// - Delta(mu,alpha) Phi^_x v. Exact for every sample when the conformal
// convention makes d = -L_0 on the oscillator modules.
inline PhiSeries kz_cross_consistency_residual(const PhiContext& ctx, long j) {
  const Scalar off = phi_hat_offset(ctx.p, j);
  Scalar alpha = dual_alpha(ctx.p, j);
  Scalar dma = delta_of_alpha(ctx.p, alpha);
  PhiSeries phix_v = ctx.component(j, off);
  PhiSeries zdz = phi_scale_slotwise(phix_v, [&](long s) -> Scalar { return off + Scalar(s); });
  PhiSeries bracket =
      phi_sub(phi_apply(phix_v, [&](const FockVector& u) { return apply_L(0, u, ctx.target); }),
              ctx.component_of(j, off, apply_L(0, ctx.v, ctx.p)));
  return phi_sub(zdz, phi_sub(bracket, phi_scale(phix_v, dma)));
}

}  // namespace imwak
