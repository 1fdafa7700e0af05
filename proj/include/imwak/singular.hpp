#pragma once

#include <vector>

#include "partitions.hpp"
#include "tensor.hpp"

namespace imwak {

// ---------------------------------------------------------------------------
// Coefficients of the singular vector
//
//   v# = Sum_{n>=0} Sum_{pi partition of n} c_pi  b_pi w' ox u_0 z^n
//
// in W_{lambda-m} ox F_m[z], characterized by h_k v# = 0 and e_k v# = 0
// (k >= 1) under the star action. Two independent constructions:
//
//   closed form — the explicit formula
//       beta_pi = m^{N-1} / ((-kappa)^{N-1} * prod_k k^{n_k} * prod_k n_k!) * beta_1
//     (N = total number of parts), extended to the empty partition by
//       beta_empty = -kappa beta_1 / m
//     so that the depth-one cancellation m*beta_empty + kappa*beta_(1) = 0 holds.
//
//   solve — a degree-by-degree homogeneous linear solve built from the actual
//     star-action operators, with no formula assumed. This is the
//     authoritative object downstream; the closed form is compared against it
//     and the ratio recorded (they agree exactly when b_level = kappa/2).
// ---------------------------------------------------------------------------

inline Scalar beta_closed_form(const Partition& pi, const Params& p) {
  if (p.kappa == 0) throw std::domain_error("closed-form coefficients need kappa != 0");
  if (pi.empty()) throw std::domain_error("closed-form table covers nonempty partitions");
  long n_parts = static_cast<long>(pi.size());
  Scalar num = 1, den = 1;
  for (long i = 0; i + 1 < n_parts; ++i) {
    num *= Scalar(p.m_weight);
    den *= -p.kappa;
  }
  Scalar parts_product = 1;
  for (long k : pi) parts_product *= Scalar(k);
  Scalar mult_factorials = 1;
  std::set<long> distinct(pi.begin(), pi.end());
  for (long k : distinct) {
    long nk = part_multiplicity(pi, k);
    for (long i = 2; i <= nk; ++i) mult_factorials *= Scalar(i);
  }
  return num / den / parts_product / mult_factorials * p.beta1;
}

inline Scalar beta_empty_extension(const Params& p) {
  if (p.kappa == 0) throw std::domain_error("closed-form coefficients need kappa != 0");
  if (p.m_weight == 0) throw std::domain_error("empty-partition extension needs m >= 1");
  return -p.kappa * p.beta1 / Scalar(p.m_weight);
}

// ---------------------------------------------------------------------------
// Exact nullspace of a rational matrix (rows x ncols), by Gauss-Jordan
// elimination. Returns a basis of column vectors.
// ---------------------------------------------------------------------------

inline std::vector<std::vector<Scalar>> nullspace(std::vector<std::vector<Scalar>> rows,
                                                  std::size_t ncols) {
  std::vector<std::size_t> pivot_col_of_row;
  std::size_t r = 0;
  for (std::size_t col = 0; col < ncols && r < rows.size(); ++col) {
    std::size_t sel = r;
    while (sel < rows.size() && rows[sel][col] == 0) ++sel;
    if (sel == rows.size()) continue;
    std::swap(rows[r], rows[sel]);
    Scalar inv = 1 / rows[r][col];
    for (auto& x : rows[r]) x *= inv;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == r || rows[i][col] == 0) continue;
      Scalar factor = rows[i][col];
      for (std::size_t cidx = 0; cidx < ncols; ++cidx) rows[i][cidx] -= factor * rows[r][cidx];
    }
    pivot_col_of_row.push_back(col);
    ++r;
  }
  std::vector<bool> is_pivot(ncols, false);
  for (std::size_t c : pivot_col_of_row) is_pivot[c] = true;
  std::vector<std::vector<Scalar>> basis;
  for (std::size_t free_col = 0; free_col < ncols; ++free_col) {
    if (is_pivot[free_col]) continue;
    std::vector<Scalar> v(ncols, Scalar(0));
    v[free_col] = 1;
    for (std::size_t i = 0; i < pivot_col_of_row.size(); ++i) {
      v[pivot_col_of_row[i]] = -rows[i][free_col];
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

// ---------------------------------------------------------------------------
// Singular-vector construction.
// ---------------------------------------------------------------------------

struct SingularResult {
  TensorVector vsharp;   // exact through z-slot `depth`
  long depth = 0;
  long dimension = 1;    // measured solution-space dimension (solve mode)
  bool normalized = false;  // true when scaled so the empty-partition entry is 1
};

inline FockMonomial b_word(const Partition& pi) {
  FockMonomial m;
  m.b = pi;  // identical canonical shape
  return m;
}

inline TensorVector ansatz_vector(const std::vector<Partition>& basis,
                                  const std::vector<Scalar>& coeffs, long depth) {
  TensorVector t;
  t.complete_through = depth;
  for (std::size_t i = 0; i < basis.size(); ++i) {
    if (coeffs[i] == 0) continue;
    t.data.add({b_word(basis[i]), 0, partition_weight(basis[i])}, coeffs[i]);
  }
  return t;
}

// Degree-by-degree solve: collect, for every k >= 1, the star-action images
// (h_k and e_k) of each ansatz basis element, and require every exactly
// determined output coefficient to vanish. Output slots g <= depth are the
// determined ones: the true vector's slots g and g-k both lie within the
// truncation there.
inline SingularResult singular_solve(long depth, const Params& p) {
  const Params target = target_params(p);
  std::vector<Partition> basis = partitions_up_to(depth);
  const std::size_t n = basis.size();

  std::map<TensorKey, std::vector<Scalar>> row_map;  // one constraint per output key
  auto accumulate = [&](const TensorVector& image, std::size_t col) {
    for (const auto& [key, c] : image.data.terms) {
      if (key.z > depth) continue;
      auto [it, inserted] = row_map.try_emplace(key, std::vector<Scalar>(n, Scalar(0)));
      it->second[col] += c;
    }
  };

  for (std::size_t col = 0; col < n; ++col) {
    TensorVector unit;
    unit.complete_through = depth;
    unit.data.add({b_word(basis[col]), 0, partition_weight(basis[col])}, 1);
    for (long k = 1; k <= depth; ++k) {
      accumulate(star_rho('h', k, unit, target), col);
      accumulate(star_rho('e', k, unit, target), col);
    }
  }

  std::vector<std::vector<Scalar>> rows;
  rows.reserve(row_map.size());
  for (auto& [key, row] : row_map) rows.push_back(std::move(row));

  auto kernel = nullspace(std::move(rows), n);

  SingularResult res;
  res.depth = depth;
  res.dimension = static_cast<long>(kernel.size());
  if (res.dimension == 1) {
    std::vector<Scalar> coeffs = kernel.front();
    // Scale so the empty-partition coefficient is 1 when possible.
    Scalar pivot = coeffs[0];
    if (pivot == 0) {
      for (const Scalar& c : coeffs)
        if (c != 0) {
          pivot = c;
          break;
        }
    } else {
      res.normalized = true;
    }
    if (pivot != 0) {
      for (auto& c : coeffs) c /= pivot;
    }
    res.vsharp = ansatz_vector(basis, coeffs, depth);
  }
  return res;
}

// The closed-form coefficients poured into the same ansatz shape.
inline SingularResult singular_formula(long depth, const Params& p) {
  std::vector<Partition> basis = partitions_up_to(depth);
  std::vector<Scalar> coeffs;
  coeffs.reserve(basis.size());
  for (const auto& pi : basis) {
    coeffs.push_back(pi.empty() ? beta_empty_extension(p) : beta_closed_form(pi, p));
  }
  SingularResult res;
  res.depth = depth;
  res.dimension = 1;
  res.normalized = false;
  res.vsharp = ansatz_vector(basis, coeffs, depth);
  return res;
}

}  // namespace imwak
