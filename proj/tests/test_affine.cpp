#include <catch2/catch_amalgamated.hpp>

#include "imwak/affine.hpp"
#include "imwak/poly_oracle.hpp"
#include "imwak/samples.hpp"
#include "imwak/suites.hpp"

using namespace imwak;

namespace {
Params loop_params(Scalar lambda, Scalar kappa) {
  Params p;
  p.lambda = lambda;
  p.kappa = kappa;
  p.b_level = kappa;  // the realization couples the b-level to the level
  return p;
}

void check_six_families(const Params& p, const FockVector& v, long R) {
  for (long m = -R; m <= R; ++m) {
    for (long n = -R; n <= R; ++n) {
      {
        FockVector r = apply_e(m, apply_f(n, v), p);
        r -= apply_f(n, apply_e(m, v, p));
        r -= apply_h(m + n, v, p);
        if (m + n == 0) r -= v * (Scalar(m) * p.kappa);
        REQUIRE(r.is_zero());
      }
      {
        FockVector r = apply_h(m, apply_e(n, v, p), p);
        r -= apply_e(n, apply_h(m, v, p), p);
        r -= apply_e(m + n, v, p) * Scalar(2);
        REQUIRE(r.is_zero());
      }
      {
        FockVector r = apply_h(m, apply_f(n, v), p);
        r -= apply_f(n, apply_h(m, v, p));
        r += apply_f(m + n, v) * Scalar(2);
        REQUIRE(r.is_zero());
      }
      {
        FockVector r = apply_h(m, apply_h(n, v, p), p);
        r -= apply_h(n, apply_h(m, v, p), p);
        if (m + n == 0) r -= v * (Scalar(2 * m) * p.kappa);
        REQUIRE(r.is_zero());
      }
      {
        FockVector r = apply_e(m, apply_e(n, v, p), p);
        r -= apply_e(n, apply_e(m, v, p), p);
        REQUIRE(r.is_zero());
      }
      {
        FockVector r = apply_f(m, apply_f(n, v));
        r -= apply_f(n, apply_f(m, v));
        REQUIRE(r.is_zero());
      }
    }
  }
}
}  // namespace

TEST_CASE("six bracket families close at coupled b-level") {
  Rng rng(11);
  for (auto [lam, kap] : {std::pair<Scalar, Scalar>{3, 2},
                          {rat(1, 2), rat(-5, 3)},
                          {0, rat(1, 4)},
                          {1, 0}}) {  // kappa = 0 degenerates but still closes
    Params p = loop_params(lam, kap);
    for (int s = 0; s < 3; ++s) {
      check_six_families(p, random_vector(rng, 3, 3), 2);
    }
  }
}

TEST_CASE("pinned low-mode loop-generator values") {
  Params p = loop_params(3, 2);
  FockVector w = vacuum();
  FockVector am1 = word_vector({-1}, {});

  CHECK(apply_f(-1, w) == am1);
  CHECK(apply_h(0, w, p) == w * p.lambda);
  CHECK(apply_h(0, am1, p) == am1 * (p.lambda - 2));
  CHECK(apply_h(1, am1, p) == word_vector({0}, {}, -2));
  CHECK(apply_e(1, am1, p) == w * (p.lambda + p.kappa));
  CHECK(apply_e(0, am1, p) == word_vector({}, {1}));
  for (long n = -2; n <= 2; ++n) CHECK(apply_e(n, w, p).is_zero());
}

TEST_CASE("weights and degree grading") {
  Params p = loop_params(rat(7, 3), rat(3, 2));
  Rng rng(5);
  for (int s = 0; s < 6; ++s) {
    FockMonomial mono = random_word(rng);
    FockVector unit(mono, 1);
    FockVector h0 = apply_h(0, unit, p);
    REQUIRE(h0 == unit * (p.lambda - Scalar(2 * mono.a_count())));
    for (long n = -3; n <= 3; ++n) {
      for (char x : {'e', 'f', 'h'}) {
        FockVector out = x == 'e' ? apply_e(n, unit, p)
                       : x == 'f' ? apply_f(n, unit)
                                  : apply_h(n, unit, p);
        for (const auto& [om, oc] : out.terms) {
          (void)oc;
          REQUIRE(d_eigenvalue(om) == d_eigenvalue(mono) + n);
        }
      }
    }
  }
}

TEST_CASE("abstract commutation recursion transports through the renaming map") {
  Params p = loop_params(rat(5, 2), rat(4, 3));
  Rng rng(17);
  for (int s = 0; s < 5; ++s) {
    FockVector v(random_word(rng), 1);
    VermaVector word = psi_inverse(v);
    for (long n = -3; n <= 3; ++n) {
      {
        FockVector r = psi(verma_f(n, word));
        r -= apply_f(n, v);
        REQUIRE(r.is_zero());
      }
      {
        FockVector r = psi(verma_h(n, word, p));
        r -= apply_h(n, v, p);
        REQUIRE(r.is_zero());
      }
      {
        FockVector r = psi(verma_e(n, word, p));
        r -= apply_e(n, v, p);
        REQUIRE(r.is_zero());
      }
    }
  }
}

TEST_CASE("e and h match the differential-operator model") {
  Params p = loop_params(rat(-2, 3), rat(5, 4));
  Rng rng(23);
  for (int s = 0; s < 8; ++s) {
    FockVector v = random_vector(rng, 3, 3);
    for (long n = -3; n <= 3; ++n) {
      REQUIRE(apply_e(n, v, p) == oracle_e(n, v, p));
      REQUIRE(apply_h(n, v, p) == oracle_h(n, v, p));
      REQUIRE(apply_f(n, v) == oracle_f(n, v));
    }
  }
}

TEST_CASE("detuned b-level breaks the Cartan family by exactly 2m(l-kappa) v") {
  Params bad = loop_params(1, 2);
  bad.b_level = 3;
  Rng rng(29);
  FockVector v = random_vector(rng, 3, 3);
  for (long m = 1; m <= 3; ++m) {
    FockVector r = apply_h(m, apply_h(-m, v, bad), bad);
    r -= apply_h(-m, apply_h(m, v, bad), bad);
    r -= v * (Scalar(2 * m) * bad.kappa);
    REQUIRE(r == v * (Scalar(2 * m) * (bad.b_level - bad.kappa)));
    REQUIRE(!r.is_zero());
  }
}

TEST_CASE("affine suite runner is green") {
  SuiteOptions o;
  VerificationReport rep = run_affine(o);
  INFO(rep.dump());
  CHECK(rep.tier1_ok());
  CHECK(rep.tier1_checks >= 50);
}
