#include <catch2/catch_amalgamated.hpp>

#include "imwak/heisenberg.hpp"
#include "imwak/poly_oracle.hpp"
#include "imwak/samples.hpp"
#include "imwak/suites.hpp"

using namespace imwak;

namespace {
Params params(Scalar lambda, Scalar b_level) {
  Params p;
  p.lambda = lambda;
  p.b_level = b_level;
  return p;
}
}  // namespace

TEST_CASE("oscillator relations hold exactly on seeded vectors") {
  Params p = params(rat(1, 2), rat(3, 2));
  Rng rng(42);
  auto samples = random_vectors(rng, 20);
  for (const FockVector& v : samples) {
    for (long m = -3; m <= 3; ++m) {
      for (long n = -3; n <= 3; ++n) {
        {
          FockVector r = apply_a(m, apply_a(n, v));
          r -= apply_a(n, apply_a(m, v));
          REQUIRE(r.is_zero());
        }
        {
          FockVector r = apply_a(m, apply_a_star(n, v));
          r -= apply_a_star(n, apply_a(m, v));
          if (m + n == 0) r -= v;
          REQUIRE(r.is_zero());
        }
        {
          FockVector r = apply_a_star(m, apply_a_star(n, v));
          r -= apply_a_star(n, apply_a_star(m, v));
          REQUIRE(r.is_zero());
        }
        {
          FockVector r = apply_a(m, apply_b(n, v, p));
          r -= apply_b(n, apply_a(m, v), p);
          REQUIRE(r.is_zero());
        }
        {
          FockVector r = apply_a_star(m, apply_b(n, v, p));
          r -= apply_b(n, apply_a_star(m, v), p);
          REQUIRE(r.is_zero());
        }
        {
          FockVector r = apply_b(m, apply_b(n, v, p), p);
          r -= apply_b(n, apply_b(m, v, p), p);
          if (m + n == 0) r -= v * (Scalar(2 * m) * p.b_level);
          REQUIRE(r.is_zero());
        }
      }
    }
  }
}

TEST_CASE("pinned low-mode oscillator values") {
  Params p = params(rat(5, 3), 2);
  FockVector w = vacuum();

  // Every a-mode creates; a*_n removes one a_{-n} with a minus sign and the
  // multiplicity as factor.
  CHECK(apply_a(3, w) == word_vector({3}, {}));
  CHECK(apply_a_star(2, word_vector({-2}, {})) == w * Scalar(-1));
  CHECK(apply_a_star(2, word_vector({-2, -2}, {})) == word_vector({-2}, {}, -2));
  CHECK(apply_a_star(0, word_vector({0}, {})) == w * Scalar(-1));
  CHECK(apply_a_star(1, w).is_zero());

  // b_0 is the scalar lambda; b_{-k} creates; b_k annihilates at scale 2 k l.
  CHECK(apply_b(0, w, p) == w * p.lambda);
  CHECK(apply_b(-1, w, p) == word_vector({}, {1}));
  CHECK(apply_b(1, word_vector({}, {1}), p) == w * (Scalar(2) * p.b_level));
  CHECK(apply_b(2, word_vector({}, {1}), p).is_zero());
  CHECK(apply_b(1, word_vector({}, {1, 1}), p) == word_vector({}, {1}, Scalar(4) * p.b_level));
}

TEST_CASE("mode engine matches the differential-operator model on 100+ pairs") {
  Params p = params(rat(1, 3), rat(7, 4));
  Params q = p;
  q.kappa = p.b_level;  // the polynomial dictionary reads the b scale off kappa
  Rng rng(7);
  long checked = 0;
  for (long i = 0; i < 120; ++i) {
    FockVector v = random_vector(rng);
    FockVector engine = v, model = v;
    long len = rng.range(1, 4);
    for (long t = 0; t < len; ++t) {
      long idx = rng.range(-4, 4);
      switch (rng.range(0, 2)) {
        case 0:
          engine = apply_a(idx, engine);
          model = oracle_a(idx, model);
          break;
        case 1:
          engine = apply_a_star(idx, engine);
          model = oracle_a_star(idx, model);
          break;
        default:
          engine = apply_b(idx, engine, p);
          model = oracle_b(idx, model, q);
          break;
      }
    }
    REQUIRE(engine == model);
    ++checked;
  }
  REQUIRE(checked >= 100);
}

TEST_CASE("degenerate b-level turns the b-sector abelian") {
  Params p = params(1, 0);
  FockVector v = word_vector({}, {1, 2});
  for (long m = -3; m <= 3; ++m) {
    for (long n = -3; n <= 3; ++n) {
      FockVector r = apply_b(m, apply_b(n, v, p), p);
      r -= apply_b(n, apply_b(m, v, p), p);
      REQUIRE(r.is_zero());
    }
  }
  // Annihilators act by zero scale, creators still create.
  CHECK(apply_b(1, word_vector({}, {1}), p).is_zero());
  CHECK(apply_b(-2, vacuum(), p) == word_vector({}, {2}));
}

TEST_CASE("a sign mutation is caught with residual exactly -2 delta v") {
  Rng rng(3);
  FockVector v = random_vector(rng);
  auto mutated = [](long n, const FockVector& u) { return apply_a_star(n, u) * Scalar(-1); };
  for (auto [m, n] : {std::pair<long, long>{1, -1}, {2, -2}, {0, 0}, {1, 2}}) {
    FockVector r = apply_a(m, mutated(n, v));
    r -= mutated(n, apply_a(m, v));
    if (m + n == 0) r -= v;
    FockVector predicted = (m + n == 0) ? v * Scalar(-2) : FockVector();
    REQUIRE(r == predicted);
  }
}

TEST_CASE("heisenberg suite runner is green") {
  SuiteOptions o;
  VerificationReport rep = run_heisenberg(o);
  INFO(rep.dump());
  CHECK(rep.tier1_ok());
  CHECK(rep.tier1_checks >= 8);
}
