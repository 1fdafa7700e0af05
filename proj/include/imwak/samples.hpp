#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "fock.hpp"

namespace imwak {

// Deterministic sample generation. All randomness flows through mt19937_64
// with explicit modulo reduction (std::uniform_int_distribution is not
// byte-stable across standard libraries, and byte-identical reports per seed
// are part of the external contract).
struct Rng {
  std::mt19937_64 gen;

  explicit Rng(std::uint64_t seed) : gen(seed) {}

  // Inclusive range draw.
  long range(long lo, long hi) {
    return lo + static_cast<long>(gen() % static_cast<std::uint64_t>(hi - lo + 1));
  }

  // Coefficient alphabet {+-1, +-1/2, +-2}.
  Scalar coefficient() {
    switch (range(0, 5)) {
      case 0: return rat(1);
      case 1: return rat(-1);
      case 2: return rat(1, 2);
      case 3: return rat(-1, 2);
      case 4: return rat(2);
      default: return rat(-2);
    }
  }
};

// A creation word of at most `max_modes` modes: a_n with n in
// [-index_bound, index_bound] or b_{-k} with k in [1, index_bound]. When
// max_negshift >= 0 the word's negative-shift capacity is capped (resampled
// deterministically until it fits).
inline FockMonomial random_word(Rng& rng, long max_modes = 4, long index_bound = 4,
                                long max_negshift = -1) {
  for (;;) {
    FockMonomial m;
    long count = rng.range(0, max_modes);
    for (long i = 0; i < count; ++i) {
      if (rng.range(0, 1) == 0) {
        FockMonomial::insert_sorted(m.a, rng.range(-index_bound, index_bound));
      } else {
        FockMonomial::insert_sorted(m.b, rng.range(1, index_bound));
      }
    }
    if (max_negshift < 0 || negative_shift_capacity(m) <= max_negshift) return m;
  }
}

// A sparse vector of 1..max_terms random words with coefficients from the
// fixed alphabet (zero vectors are possible through cancellation, harmless).
inline FockVector random_vector(Rng& rng, long max_terms = 5, long max_modes = 4,
                                long index_bound = 4, long max_negshift = -1) {
  FockVector v;
  long terms = rng.range(1, max_terms);
  for (long i = 0; i < terms; ++i) {
    v.add(random_word(rng, max_modes, index_bound, max_negshift), rng.coefficient());
  }
  return v;
}

inline std::vector<FockVector> random_vectors(Rng& rng, long count, long max_terms = 5,
                                              long max_modes = 4, long index_bound = 4,
                                              long max_negshift = -1) {
  std::vector<FockVector> out;
  out.reserve(static_cast<std::size_t>(count));
  for (long i = 0; i < count; ++i) {
    out.push_back(random_vector(rng, max_terms, max_modes, index_bound, max_negshift));
  }
  return out;
}

inline FockVector word_vector(std::vector<long> a, std::vector<long> b, Scalar c = 1) {
  FockMonomial m;
  for (long n : a) FockMonomial::insert_sorted(m.a, n);
  for (long k : b) FockMonomial::insert_sorted(m.b, k);
  return FockVector(m, c);
}

// Small fixed battery used by the intertwiner-facing suites: the highest
// weight vector, one a-creation, one b-creation, a mixed word, and a deeper
// a-mode. Shift capacity stays <= 2 so singular depths stay small.
inline std::vector<FockVector> curated_intertwiner_samples() {
  return {vacuum(), word_vector({-1}, {}), word_vector({}, {1}), word_vector({-1}, {1}),
          word_vector({-2}, {})};
}

inline Scalar random_rational(Rng& rng, long num_bound = 6, long den_max = 3) {
  return rat(rng.range(-num_bound, num_bound), rng.range(1, den_max));
}

inline Scalar random_nonzero_rational(Rng& rng, long num_bound = 6, long den_max = 3) {
  for (;;) {
    Scalar x = random_rational(rng, num_bound, den_max);
    if (x != 0) return x;
  }
}

}  // namespace imwak
