#include "stochata/linalg.hpp"

#include <stdexcept>
#include <utility>

namespace stochata {

namespace {

using IntRow = std::vector<mpz_class>;

// Scales each row by the lcm of its denominators so elimination stays in Z.
std::vector<IntRow> integer_rows(const RatMatrix& m) {
  std::vector<IntRow> rows(m.rows(), IntRow(m.cols()));
  for (std::size_t r = 0; r < m.rows(); ++r) {
    mpz_class l = 1;
    for (std::size_t c = 0; c < m.cols(); ++c) {
      mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), m(r, c).raw().get_den_mpz_t());
    }
    for (std::size_t c = 0; c < m.cols(); ++c) {
      const mpq_class& q = m(r, c).raw();
      rows[r][c] = q.get_num() * (l / q.get_den());
    }
  }
  return rows;
}

}  // namespace

std::size_t rank(const RatMatrix& m) {
  auto a = integer_rows(m);
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  mpz_class prev = 1;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t pivot = r;
    while (pivot < rows && a[pivot][c] == 0) ++pivot;
    if (pivot == rows) continue;
    std::swap(a[pivot], a[r]);
    for (std::size_t i = r + 1; i < rows; ++i) {
      for (std::size_t j = c + 1; j < cols; ++j) {
        // Bareiss step: the division is exact.
        mpz_class v = a[r][c] * a[i][j] - a[i][c] * a[r][j];
        mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
        a[i][j] = std::move(v);
      }
      a[i][c] = 0;
    }
    prev = a[r][c];
    ++r;
  }
  return r;
}

std::optional<RatVector> in_span(const RatVector& v, const std::vector<RatVector>& basis) {
  const std::size_t n = v.size();
  const std::size_t k = basis.size();
  for (const auto& b : basis) {
    if (b.size() != n) throw std::invalid_argument("in_span: vector length mismatch");
  }
  // Augmented system [b_1 ... b_k | v], reduced to row echelon form.
  RatMatrix aug(n, k + 1);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < k; ++j) aug(i, j) = basis[j][i];
    aug(i, k) = v[i];
  }
  std::vector<std::size_t> pivot_cols;
  std::size_t r = 0;
  for (std::size_t c = 0; c < k && r < n; ++c) {
    std::size_t p = r;
    while (p < n && aug(p, c).is_zero()) ++p;
    if (p == n) continue;
    if (p != r)
      for (std::size_t j = 0; j <= k; ++j) std::swap(aug(p, j), aug(r, j));
    const Rational inv = aug(r, c).inverse();
    for (std::size_t j = c; j <= k; ++j) aug(r, j) *= inv;
    for (std::size_t i = 0; i < n; ++i) {
      if (i == r || aug(i, c).is_zero()) continue;
      const Rational f = aug(i, c);
      for (std::size_t j = c; j <= k; ++j) aug(i, j) -= f * aug(r, j);
    }
    pivot_cols.push_back(c);
    ++r;
  }
  for (std::size_t i = r; i < n; ++i)
    if (!aug(i, k).is_zero()) return std::nullopt;
  RatVector coeffs(k);
  for (std::size_t i = 0; i < pivot_cols.size(); ++i) coeffs[pivot_cols[i]] = aug(i, k);
  return coeffs;
}

void FeasibilityProblem::add(RatVector coefficients, Rational rhs) {
  if (coefficients.size() != variables) {
    throw std::invalid_argument("feasibility constraint has wrong length");
  }
  constraints.push_back({std::move(coefficients), std::move(rhs)});
}

std::optional<RatVector> feasible_distribution(const FeasibilityProblem& problem) {
  const std::size_t n = problem.variables;
  if (n == 0) return std::nullopt;
  for (const auto& c : problem.constraints) {
    if (c.coefficients.size() != n) {
      throw std::invalid_argument("feasibility constraint has wrong length");
    }
  }

  // Rows: user constraints followed by sum x = 1. One artificial per row.
  const std::size_t m = problem.constraints.size() + 1;
  const std::size_t width = n + m + 1;  // x | artificials | rhs
  std::vector<RatVector> t(m, RatVector(width));
  for (std::size_t i = 0; i < m; ++i) {
    if (i + 1 < m) {
      const auto& c = problem.constraints[i];
      for (std::size_t j = 0; j < n; ++j) t[i][j] = c.coefficients[j];
      t[i][width - 1] = c.rhs;
    } else {
      for (std::size_t j = 0; j < n; ++j) t[i][j] = Rational(1);
      t[i][width - 1] = Rational(1);
    }
    if (t[i][width - 1].is_negative()) {
      for (std::size_t j = 0; j < n; ++j) t[i][j] = -t[i][j];
      t[i][width - 1] = -t[i][width - 1];
    }
    t[i][n + i] = Rational(1);
  }
  std::vector<std::size_t> basis(m);
  for (std::size_t i = 0; i < m; ++i) basis[i] = n + i;
  auto cost = [n](std::size_t j) { return j >= n ? Rational(1) : Rational(0); };

  for (;;) {
    // Bland: lowest-index column with negative reduced cost enters.
    std::optional<std::size_t> entering;
    for (std::size_t j = 0; j + 1 < width; ++j) {
      Rational reduced = cost(j);
      for (std::size_t i = 0; i < m; ++i) {
        if (!t[i][j].is_zero()) reduced -= cost(basis[i]) * t[i][j];
      }
      if (reduced.is_negative()) {
        entering = j;
        break;
      }
    }
    if (!entering) break;
    const std::size_t e = *entering;

    // Ratio test; ties go to the lowest-index basic variable.
    std::optional<std::size_t> leave;
    Rational best;
    for (std::size_t i = 0; i < m; ++i) {
      if (t[i][e].sign() <= 0) continue;
      Rational ratio = t[i][width - 1] / t[i][e];
      if (!leave || ratio < best || (ratio == best && basis[i] < basis[*leave])) {
        leave = i;
        best = std::move(ratio);
      }
    }
    if (!leave) break;  // unbounded cannot happen for a bounded phase-one objective
    const std::size_t l = *leave;

    const Rational inv = t[l][e].inverse();
    for (auto& x : t[l]) x *= inv;
    for (std::size_t i = 0; i < m; ++i) {
      if (i == l || t[i][e].is_zero()) continue;
      const Rational f = t[i][e];
      for (std::size_t j = 0; j < width; ++j) {
        if (!t[l][j].is_zero()) t[i][j] -= f * t[l][j];
      }
    }
    basis[l] = e;
  }

  RatVector x(n);
  for (std::size_t i = 0; i < m; ++i) {
    if (basis[i] >= n) {
      if (!t[i][width - 1].is_zero()) return std::nullopt;
    } else {
      x[basis[i]] = t[i][width - 1];
    }
  }
  return x;
}

std::optional<RatVector> convex_membership(const RatVector& target,
                                           const std::vector<RatVector>& others) {
  if (others.empty()) throw std::invalid_argument("convex_membership: no candidate rows");
  FeasibilityProblem p;
  p.variables = others.size();
  for (const auto& o : others) {
    if (o.size() != target.size()) {
      throw std::invalid_argument("convex_membership: vector length mismatch");
    }
  }
  for (std::size_t k = 0; k < target.size(); ++k) {
    RatVector row(others.size());
    for (std::size_t i = 0; i < others.size(); ++i) row[i] = others[i][k];
    p.add(std::move(row), target[k]);
  }
  return feasible_distribution(p);
}

bool is_permutation_matrix(const RatMatrix& m) {
  if (!m.is_square() || !m.is_zero_one()) return false;
  const std::size_t n = m.rows();
  std::vector<int> col_count(n, 0);
  for (std::size_t r = 0; r < n; ++r) {
    int row_count = 0;
    for (std::size_t c = 0; c < n; ++c) {
      if (m(r, c).is_one()) {
        ++row_count;
        ++col_count[c];
      }
    }
    if (row_count != 1) return false;
  }
  for (int c : col_count)
    if (c != 1) return false;
  return true;
}

}  // namespace stochata
