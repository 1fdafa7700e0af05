#include <catch2/catch_amalgamated.hpp>

#include "imwak/samples.hpp"
#include "imwak/singular.hpp"
#include "imwak/suites.hpp"

using namespace imwak;

namespace {
Params sing_params() {
  Params p;
  p.lambda = 1;
  p.kappa = 3;
  p.m_weight = 2;
  p.b_level = 1;
  return p;
}

Scalar solve_coeff(const SingularResult& r, const Partition& pi) {
  TensorKey key{b_word(pi), 0, partition_weight(pi)};
  auto it = r.vsharp.data.terms.find(key);
  return it == r.vsharp.data.terms.end() ? Scalar(0) : it->second;
}
}  // namespace

TEST_CASE("partition enumeration") {
  const long expected[] = {1, 1, 2, 3, 5, 7, 11, 15, 22};
  for (long n = 0; n <= 8; ++n) {
    CHECK(partitions_of(n).size() == static_cast<std::size_t>(expected[n]));
  }
  CHECK(partitions_up_to(8).size() == 67);  // cumulative, including the empty one
  Partition pi{1, 1, 3};
  CHECK(partition_weight(pi) == 5);
  CHECK(part_multiplicity(pi, 1) == 2);
  CHECK(part_multiplicity(pi, 2) == 0);
  CHECK(without_part(pi, 1) == Partition{1, 3});
  CHECK(with_part(pi, 2) == Partition{1, 1, 2, 3});
}

TEST_CASE("closed-form coefficient table pins") {
  Params p = sing_params();  // m = 2, kappa = 3, beta1 = 1
  CHECK(beta_closed_form({1}, p) == 1);
  CHECK(beta_closed_form({2}, p) == rat(1, 2));
  CHECK(beta_closed_form({3}, p) == rat(1, 3));
  CHECK(beta_closed_form({1, 1}, p) == rat(-1, 3));   // -m/(2 kappa)
  CHECK(beta_closed_form({1, 2}, p) == rat(-1, 3));   // -m/(2 kappa)
  CHECK(beta_closed_form({1, 1, 1}, p) == rat(2, 27));  // m^2/(6 kappa^2)
  CHECK(beta_empty_extension(p) == rat(-3, 2));       // -kappa/m

  p.beta1 = rat(5, 7);  // the whole table is linear in the normalization
  CHECK(beta_closed_form({1, 1}, p) == rat(-1, 3) * rat(5, 7));
  CHECK(beta_empty_extension(p) == rat(-3, 2) * rat(5, 7));

  Params zero = p;
  zero.kappa = 0;
  CHECK_THROWS_AS(beta_closed_form({1}, zero), std::domain_error);
  CHECK_THROWS_AS(beta_empty_extension(zero), std::domain_error);
}

TEST_CASE("coefficient table satisfies its defining recurrence") {
  Params p = sing_params();
  auto table = [&](const Partition& pi) { return detail::beta_of(pi, p); };
  CHECK(detail::beta_recurrence_violations(table, 8, p).empty());

  // Direct spot check of one recurrence row: m b_{pi \ k} + k n_k kappa b_pi = 0.
  Partition pi{1, 2, 2};
  Scalar lhs = Scalar(p.m_weight) * detail::beta_of(without_part(pi, 2), p) +
               Scalar(2) * Scalar(2) * p.kappa * detail::beta_of(pi, p);
  CHECK(lhs == 0);

  // A single perturbed entry breaks exactly the rows that read it.
  auto perturbed = [&](const Partition& pi2) -> Scalar {
    Scalar v = detail::beta_of(pi2, p);
    if (pi2 == Partition{1, 1}) v *= 2;
    return v;
  };
  auto bad = detail::beta_recurrence_violations(perturbed, 3, p);
  REQUIRE(bad.size() == 2);
  CHECK(bad[0] == std::make_pair(Partition{1, 1}, 1L));
  CHECK(bad[1] == std::make_pair(Partition{1, 1, 1}, 1L));
}

TEST_CASE("kernel solve: dimension, normalization, annihilation, pinned coefficients") {
  Params p = sing_params();
  const Params target = target_params(p);
  const long D = 4;
  SingularResult solve = singular_solve(D, p);
  REQUIRE(solve.dimension == 1);
  REQUIRE(solve.normalized);
  CHECK(solve.vsharp.complete_through == D);

  CHECK(solve_coeff(solve, {}) == 1);
  CHECK(solve_coeff(solve, {1}) == -1);          // -m/(2l)
  CHECK(solve_coeff(solve, {2}) == rat(-1, 2));  // -m/(4l)
  CHECK(solve_coeff(solve, {1, 1}) == rat(1, 2));  // m^2/(8 l^2)

  for (long k = 1; k <= D; ++k) {
    TensorVector rh = star_rho('h', k, solve.vsharp, target);
    CHECK(rh.is_zero_through(rh.complete_through));
    TensorVector re = star_rho('e', k, solve.vsharp, target);
    CHECK(re.is_zero_through(re.complete_through));
  }

  // h_0 eigenvalue lambda and the per-mode Cartan corollary.
  {
    TensorVector h0 = star_rho('h', 0, solve.vsharp, target);
    TensorVector diff = tensor_sub(h0, tensor_scale(solve.vsharp, p.lambda));
    CHECK(diff.is_zero_through(diff.complete_through));
  }
  for (long k = 1; k <= D; ++k) {
    TensorVector lhs =
        tensor_left(solve.vsharp, [&](const FockVector& u) { return apply_h(k, u, target); });
    lhs = tensor_shift_z(lhs, -k);
    TensorVector diff = tensor_sub(lhs, tensor_scale(solve.vsharp, Scalar(-p.m_weight)));
    CHECK(diff.is_zero_through(diff.complete_through));
  }

  // Support shape: bottom sl(2) slot, no a-modes, z-slot equal to the b-weight.
  for (const auto& [key, c] : solve.vsharp.data.terms) {
    REQUIRE(c != 0);
    CHECK(key.j == 0);
    CHECK(key.mono.a.empty());
    CHECK(key.mono.b_weight() == key.z);
  }
}

TEST_CASE("closed form disagrees with the kernel away from l = kappa/2") {
  Params p = sing_params();  // b_level = 1, kappa/2 = 3/2
  const Params target = target_params(p);
  const long D = 3;

  SingularResult formula = singular_formula(D, p);
  // The closed-form vector is *not* annihilated at this b-level...
  bool all_zero = true;
  for (long k = 1; k <= D; ++k) {
    TensorVector rh = star_rho('h', k, formula.vsharp, target);
    if (!rh.is_zero_through(rh.complete_through)) all_zero = false;
  }
  CHECK(!all_zero);

  // ...but matches the kernel after rescaling each depth by (2l/kappa)^parts.
  SingularResult solve = singular_solve(D, p);
  Scalar norm = formula.vsharp.data.terms.begin()->second;  // empty-partition entry
  for (const auto& [key, c] : solve.vsharp.data.terms) {
    Partition pi(key.mono.b.begin(), key.mono.b.end());
    auto it = formula.vsharp.data.terms.find(key);
    REQUIRE(it != formula.vsharp.data.terms.end());
    Scalar fval = it->second / norm;
    CHECK(fval == c * detail::pow_scalar(Scalar(2) * p.b_level / p.kappa,
                                         static_cast<long>(pi.size())));
  }

  // At b_level = kappa/2 the kernel solve reproduces the normalized closed form.
  Params half = p;
  half.b_level = p.kappa / 2;
  SingularResult agree = singular_solve(D, half);
  REQUIRE(agree.dimension == 1);
  TensorVector diff =
      tensor_sub(agree.vsharp, tensor_scale(formula.vsharp, Scalar(1) / norm));
  CHECK(diff.is_zero_through(diff.complete_through));
}

TEST_CASE("weight-zero tensor factor gives the bare vector") {
  Params p = sing_params();
  p.m_weight = 0;
  SingularResult solve = singular_solve(3, p);
  REQUIRE(solve.dimension == 1);
  REQUIRE(solve.vsharp.data.terms.size() == 1);
  const auto& [key, c] = *solve.vsharp.data.terms.begin();
  CHECK(key.mono.a.empty());
  CHECK(key.mono.b.empty());
  CHECK(key.j == 0);
  CHECK(key.z == 0);
  CHECK(c == 1);
}

TEST_CASE("coefficient and kernel suite runners are green") {
  SuiteOptions o;
  for (const char* name : {"beta", "singular"}) {
    VerificationReport rep = run_suite(name, o);
    INFO(rep.dump());
    CHECK(rep.tier1_ok());
  }
}
