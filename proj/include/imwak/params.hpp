#pragma once

#include <map>
#include <stdexcept>

#include "scalar.hpp"

namespace imwak {

// Convention for the conformal weight Delta(j) attached to an h_0-weight j.
//
//   affine:   Delta(j) = j(j+2) / (4(kappa+2))      (undefined at kappa = -2)
//   virasoro: Delta(j) = j(j-2mu) / 4
//   custom:   caller-supplied table
enum class DeltaConvention { affine, virasoro, custom };

// All module parameters in one bundle.
//
//   lambda   — eigenvalue of b_0 (and of h_0) on the highest weight vector w
//   kappa    — level: the central element acts by kappa on the module
//   mu       — deformation parameter of the Virasoro action
//   b_level  — scale l of the Heisenberg relation [b_m, b_p] = 2 m l delta_{m+p,0}.
//              The affine relation suite needs l = kappa; the Virasoro and
//              intertwiner suites need l = 1. Keeping it explicit turns the
//              convention switch into something testable.
//   m_weight — highest weight m of the finite-dimensional sl(2) tensor factor
//   beta1    — normalization of the depth-one singular-vector coefficient
struct Params {
  Scalar lambda = 0;
  Scalar kappa = 1;
  Scalar mu = 0;
  Scalar b_level = 1;
  long m_weight = 1;
  Scalar beta1 = 1;
  DeltaConvention delta_convention = DeltaConvention::virasoro;
  std::map<Scalar, Scalar> custom_delta;
};

inline Scalar conformal_delta(const Params& p, const Scalar& j) {
  switch (p.delta_convention) {
    case DeltaConvention::affine: {
      Scalar den = 4 * (p.kappa + 2);
      if (den == 0) {
        throw std::domain_error("affine conformal weight undefined at level -2");
      }
      return j * (j + 2) / den;
    }
    case DeltaConvention::virasoro:
      return j * (j - 2 * p.mu) / 4;
    case DeltaConvention::custom: {
      auto it = p.custom_delta.find(j);
      if (it == p.custom_delta.end()) {
        throw std::domain_error("no custom conformal weight registered for this value");
      }
      return it->second;
    }
  }
  throw std::logic_error("unknown delta convention");
}

// Gap Delta(lambda) - Delta(lambda - m) between the source and target modules
// of the intertwiner, under the configured convention.
inline Scalar delta_gap(const Params& p) {
  return conformal_delta(p, p.lambda) - conformal_delta(p, p.lambda - p.m_weight);
}

// h-eigenvalue of the dual basis functional x_j of the weight-m module, under
// the contragredient action (y.x)(u) := -x(y.u).
inline Scalar dual_alpha(const Params& p, long j) { return Scalar(2 * j - p.m_weight); }

// Delta(mu, alpha) = alpha(alpha - 2 mu)/4, the weight entering the hatted
// intertwiner and the KZ identities. Always this formula, independent of the
// configured Delta convention.
inline Scalar delta_of_alpha(const Params& p, const Scalar& alpha) {
  return alpha * (alpha - 2 * p.mu) / 4;
}

// Parameters of the intertwiner's target module W_{lambda - m, kappa}.
inline Params target_params(const Params& p) {
  Params q = p;
  q.lambda = p.lambda - p.m_weight;
  return q;
}

}  // namespace imwak
