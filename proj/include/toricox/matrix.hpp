#pragma once

// Dense exact matrices and the integer normal forms (Smith, Hermite) that
// underpin class group computations.

#include "arith.hpp"

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

namespace toricox {

template <class T>
class Matrix {
public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, T(0)) {}

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  /// Builds a matrix whose rows are the given vectors (all of length cols).
  static Matrix from_rows(const std::vector<std::vector<T>>& rows, std::size_t cols) {
    Matrix m(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != cols) throw Error("Matrix::from_rows: ragged rows");
      for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
    }
    return m;
  }

  static Matrix from_rows(const std::vector<std::vector<T>>& rows) {
    return from_rows(rows, rows.empty() ? 0 : rows.front().size());
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::vector<T> row(std::size_t i) const {
    return std::vector<T>(data_.begin() + i * cols_, data_.begin() + (i + 1) * cols_);
  }
  std::vector<T> col(std::size_t j) const {
    std::vector<T> c(rows_);
    for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
    return c;
  }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
  }
  void swap_cols(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t i = 0; i < rows_; ++i) std::swap((*this)(i, a), (*this)(i, b));
  }
  /// row[dst] += f * row[src]
  void add_row(std::size_t dst, std::size_t src, const T& f) {
    for (std::size_t j = 0; j < cols_; ++j) (*this)(dst, j) += f * (*this)(src, j);
  }
  /// col[dst] += f * col[src]
  void add_col(std::size_t dst, std::size_t src, const T& f) {
    for (std::size_t i = 0; i < rows_; ++i) (*this)(i, dst) += f * (*this)(i, src);
  }
  void negate_row(std::size_t i) {
    for (std::size_t j = 0; j < cols_; ++j) (*this)(i, j) = -(*this)(i, j);
  }
  void negate_col(std::size_t j) {
    for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = -(*this)(i, j);
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw Error("Matrix product: dimension mismatch");
    Matrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        if (a(i, k) == 0) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += a(i, k) * b(k, j);
      }
    return c;
  }

  template <class U>
  auto operator*(const std::vector<U>& v) const {
    using R = std::conditional_t<std::is_same_v<T, Rational> || std::is_same_v<U, Rational>, Rational, Integer>;
    if (v.size() != cols_) throw Error("Matrix-vector product: dimension mismatch");
    std::vector<R> r(rows_, R(0));
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) r[i] += (*this)(i, j) * v[j];
    return r;
  }

private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<T> data_;
};

using IntMatrix = Matrix<Integer>;
using RatMatrix = Matrix<Rational>;

inline RatMatrix to_rational(const IntMatrix& m) {
  RatMatrix r(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = m(i, j);
  return r;
}

// ---------------------------------------------------------------------------
// Rational linear algebra

struct EchelonForm {
  RatMatrix reduced;               // reduced row echelon form
  std::vector<std::size_t> pivots; // pivot column of each nonzero row
};

inline EchelonForm rref(RatMatrix a) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < a.cols() && r < a.rows(); ++c) {
    std::size_t p = r;
    while (p < a.rows() && a(p, c) == 0) ++p;
    if (p == a.rows()) continue;
    a.swap_rows(p, r);
    Rational inv = 1 / a(r, c);
    for (std::size_t j = 0; j < a.cols(); ++j) a(r, j) *= inv;
    for (std::size_t i = 0; i < a.rows(); ++i)
      if (i != r && a(i, c) != 0) a.add_row(i, r, -a(i, c));
    pivots.push_back(c);
    ++r;
  }
  return {std::move(a), std::move(pivots)};
}

inline std::size_t rank(const RatMatrix& a) { return rref(a).pivots.size(); }
inline std::size_t rank(const IntMatrix& a) { return rank(to_rational(a)); }

/// Rank of a list of vectors of common length.
template <class T>
std::size_t rank_of(const std::vector<std::vector<T>>& vs, std::size_t dim) {
  if (vs.empty()) return 0;
  RatMatrix m(vs.size(), dim);
  for (std::size_t i = 0; i < vs.size(); ++i)
    for (std::size_t j = 0; j < dim; ++j) m(i, j) = vs[i][j];
  return rank(m);
}

/// Basis of {x : a x = 0}.
inline std::vector<RatVec> kernel(const RatMatrix& a) {
  auto [red, pivots] = rref(a);
  std::vector<bool> is_pivot(a.cols(), false);
  for (auto p : pivots) is_pivot[p] = true;
  std::vector<RatVec> basis;
  for (std::size_t f = 0; f < a.cols(); ++f) {
    if (is_pivot[f]) continue;
    RatVec x(a.cols(), Rational(0));
    x[f] = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i) x[pivots[i]] = -red(i, f);
    basis.push_back(std::move(x));
  }
  return basis;
}

/// Kernel basis scaled to primitive integer vectors.
inline std::vector<IntVec> integer_kernel(const RatMatrix& a) {
  std::vector<IntVec> out;
  for (const auto& v : kernel(a)) out.push_back(primitive_of(v));
  return out;
}

/// Some solution of a x = b (free variables set to zero), if one exists.
inline std::optional<RatVec> solve(const RatMatrix& a, const RatVec& b) {
  RatMatrix aug(a.rows(), a.cols() + 1);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) aug(i, j) = a(i, j);
    aug(i, a.cols()) = b[i];
  }
  auto [red, pivots] = rref(aug);
  if (!pivots.empty() && pivots.back() == a.cols()) return std::nullopt;
  RatVec x(a.cols(), Rational(0));
  for (std::size_t i = 0; i < pivots.size(); ++i) x[pivots[i]] = red(i, a.cols());
  return x;
}

inline Rational determinant(RatMatrix a) {
  if (a.rows() != a.cols()) throw Error("determinant: non-square matrix");
  Rational det = 1;
  for (std::size_t c = 0; c < a.cols(); ++c) {
    std::size_t p = c;
    while (p < a.rows() && a(p, c) == 0) ++p;
    if (p == a.rows()) return 0;
    if (p != c) {
      a.swap_rows(p, c);
      det = -det;
    }
    det *= a(c, c);
    for (std::size_t i = c + 1; i < a.rows(); ++i)
      if (a(i, c) != 0) a.add_row(i, c, -a(i, c) / a(c, c));
  }
  return det;
}

inline Integer determinant(const IntMatrix& a) {
  Rational d = determinant(to_rational(a));
  return Integer(d);
}

inline std::optional<RatMatrix> inverse(const RatMatrix& a) {
  std::size_t n = a.rows();
  if (n != a.cols()) throw Error("inverse: non-square matrix");
  if (n == 0) return RatMatrix(0, 0);
  RatMatrix aug(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = a(i, j);
    aug(i, n + i) = 1;
  }
  auto [red, pivots] = rref(aug);
  if (pivots.size() < n || pivots[n - 1] != n - 1) return std::nullopt;
  RatMatrix inv(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = red(i, n + j);
  return inv;
}

// ---------------------------------------------------------------------------
// Integer normal forms

struct SmithForm {
  IntMatrix U, S, V; // U * M * V == S
  /// Nonzero diagonal entries of S, each dividing the next.
  std::vector<Integer> invariant_factors() const {
    std::vector<Integer> d;
    for (std::size_t i = 0; i < std::min(S.rows(), S.cols()); ++i)
      if (S(i, i) != 0) d.push_back(S(i, i));
    return d;
  }
};

/// Smith normal form with unimodular transforms: U M V = S, S diagonal,
/// nonnegative, s_1 | s_2 | ... .
inline SmithForm smith_form(const IntMatrix& m) {
  const std::size_t R = m.rows(), C = m.cols();
  IntMatrix S = m, U = IntMatrix::identity(R), V = IntMatrix::identity(C);

  for (std::size_t t = 0; t < std::min(R, C); ++t) {
    while (true) {
      // pivot: smallest nonzero |entry| in the trailing block
      std::size_t pi = R, pj = C;
      for (std::size_t i = t; i < R; ++i)
        for (std::size_t j = t; j < C; ++j)
          if (S(i, j) != 0 && (pi == R || abs(S(i, j)) < abs(S(pi, pj)))) {
            pi = i;
            pj = j;
          }
      if (pi == R) return {U, S, V}; // trailing block is zero
      S.swap_rows(t, pi);
      U.swap_rows(t, pi);
      S.swap_cols(t, pj);
      V.swap_cols(t, pj);

      bool clean = true;
      for (std::size_t i = t + 1; i < R; ++i) {
        if (S(i, t) == 0) continue;
        Integer q;
        mpz_fdiv_q(q.get_mpz_t(), S(i, t).get_mpz_t(), S(t, t).get_mpz_t());
        S.add_row(i, t, -q);
        U.add_row(i, t, -q);
        if (S(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < C; ++j) {
        if (S(t, j) == 0) continue;
        Integer q;
        mpz_fdiv_q(q.get_mpz_t(), S(t, j).get_mpz_t(), S(t, t).get_mpz_t());
        S.add_col(j, t, -q);
        V.add_col(j, t, -q);
        if (S(t, j) != 0) clean = false;
      }
      if (!clean) continue;

      // divisibility: pull in any row whose entries the pivot fails to divide
      std::size_t bad = R;
      for (std::size_t i = t + 1; i < R && bad == R; ++i)
        for (std::size_t j = t + 1; j < C; ++j)
          if (!mpz_divisible_p(S(i, j).get_mpz_t(), S(t, t).get_mpz_t())) {
            bad = i;
            break;
          }
      if (bad == R) break;
      S.add_row(t, bad, Integer(1));
      U.add_row(t, bad, Integer(1));
    }
    if (S(t, t) < 0) {
      S.negate_row(t);
      U.negate_row(t);
    }
  }
  return {U, S, V};
}

struct HermiteForm {
  IntMatrix H; // row-style Hermite normal form, zero rows last
  IntMatrix W; // unimodular, W * M == H
};

/// Row-style Hermite normal form: echelon, positive pivots, entries above
/// each pivot reduced into [0, pivot). Canonical for the row lattice.
inline HermiteForm hermite_form(const IntMatrix& m) {
  const std::size_t R = m.rows(), C = m.cols();
  IntMatrix H = m, W = IntMatrix::identity(R);
  std::size_t r = 0;
  for (std::size_t c = 0; c < C && r < R; ++c) {
    // Euclid on column c among rows r..R-1
    while (true) {
      std::size_t p = R;
      for (std::size_t i = r; i < R; ++i)
        if (H(i, c) != 0 && (p == R || abs(H(i, c)) < abs(H(p, c)))) p = i;
      if (p == R) break;
      H.swap_rows(r, p);
      W.swap_rows(r, p);
      bool done = true;
      for (std::size_t i = r + 1; i < R; ++i) {
        if (H(i, c) == 0) continue;
        Integer q;
        mpz_fdiv_q(q.get_mpz_t(), H(i, c).get_mpz_t(), H(r, c).get_mpz_t());
        H.add_row(i, r, -q);
        W.add_row(i, r, -q);
        if (H(i, c) != 0) done = false;
      }
      if (done) break;
    }
    if (H(r, c) == 0) continue;
    if (H(r, c) < 0) {
      H.negate_row(r);
      W.negate_row(r);
    }
    for (std::size_t i = 0; i < r; ++i) {
      Integer q;
      mpz_fdiv_q(q.get_mpz_t(), H(i, c).get_mpz_t(), H(r, c).get_mpz_t());
      if (q != 0) {
        H.add_row(i, r, -q);
        W.add_row(i, r, -q);
      }
    }
    ++r;
  }
  return {H, W};
}

/// Z-basis of the integer kernel {x in Z^n : a x = 0}.
inline std::vector<IntVec> lattice_kernel(const IntMatrix& a) {
  auto snf = smith_form(a);
  std::size_t k = 0;
  while (k < std::min(a.rows(), a.cols()) && snf.S(k, k) != 0) ++k;
  std::vector<IntVec> out;
  for (std::size_t j = k; j < a.cols(); ++j) out.push_back(snf.V.col(j));
  return out;
}

/// Some integer solution of a x = b, if one exists.
inline std::optional<IntVec> integer_solve(const IntMatrix& a, const IntVec& b) {
  auto snf = smith_form(a);
  IntVec ub = snf.U * b;
  IntVec y(a.cols(), Integer(0));
  for (std::size_t i = 0; i < a.rows(); ++i) {
    const Integer s = i < a.cols() ? snf.S(i, i) : Integer(0);
    if (s == 0) {
      if (ub[i] != 0) return std::nullopt;
      continue;
    }
    if (!mpz_divisible_p(ub[i].get_mpz_t(), s.get_mpz_t())) return std::nullopt;
    y[i] = ub[i] / s;
  }
  return snf.V * y;
}

/// Unimodular matrix whose first row is the given primitive vector.
inline IntMatrix complete_to_basis(const IntVec& v) {
  if (!is_primitive(v)) throw InputRejected("complete_to_basis: vector " + vec_to_string(v) + " is not primitive");
  IntMatrix row = IntMatrix::from_rows({v});
  auto snf = smith_form(row);
  // U v V = (1,0,...,0) with U = (+-1), so v = U^{-1} e_1^T V^{-1}
  auto vinv = inverse(to_rational(snf.V));
  IntMatrix B(v.size(), v.size());
  for (std::size_t i = 0; i < v.size(); ++i)
    for (std::size_t j = 0; j < v.size(); ++j) B(i, j) = Integer((*vinv)(i, j));
  if (snf.U(0, 0) < 0) B.negate_row(0);
  return B;
}

} // namespace toricox
