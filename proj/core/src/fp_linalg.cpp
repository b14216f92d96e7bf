#include "clift/fp_linalg.hpp"

#include <algorithm>

#include "clift/error.hpp"

namespace clift {

int mod_p(long long value, int p) noexcept {
  long long r = value % p;
  return static_cast<int>(r < 0 ? r + p : r);
}

int inv_mod(int a, int p) {
  a = mod_p(a, p);
  require(a != 0, Errc::InvalidArgument, "zero has no inverse mod p");
  int result = 1;
  int base = a;
  int e = p - 2;
  while (e > 0) {
    if (e & 1) result = static_cast<int>(1LL * result * base % p);
    base = static_cast<int>(1LL * base * base % p);
    e >>= 1;
  }
  return result;
}

bool is_prime(int n) noexcept {
  if (n < 2) return false;
  for (int d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

FpMatrix::FpMatrix(int p, int rows, int cols)
    : p_(p), rows_(rows), cols_(cols), a_(static_cast<std::size_t>(rows) * cols, 0) {}

void FpMatrix::set_column(int c, const FpVector& v) {
  require(static_cast<int>(v.size()) == rows_, Errc::ShapeMismatch, "column length");
  for (int r = 0; r < rows_; ++r) at(r, c) = mod_p(v[r], p_);
}

FpVector FpMatrix::column(int c) const {
  FpVector v(rows_);
  for (int r = 0; r < rows_; ++r) v[r] = at(r, c);
  return v;
}

FpVector FpMatrix::row(int r) const {
  return FpVector(a_.begin() + static_cast<std::ptrdiff_t>(r) * cols_,
                  a_.begin() + static_cast<std::ptrdiff_t>(r + 1) * cols_);
}

FpVector FpMatrix::apply(const FpVector& x) const {
  require(static_cast<int>(x.size()) == cols_, Errc::ShapeMismatch, "apply: vector length");
  FpVector y(rows_, 0);
  for (int r = 0; r < rows_; ++r) {
    long long acc = 0;
    for (int c = 0; c < cols_; ++c) acc += 1LL * at(r, c) * x[c];
    y[r] = mod_p(acc, p_);
  }
  return y;
}

FpMatrix FpMatrix::transpose() const {
  FpMatrix t(p_, cols_, rows_);
  for (int r = 0; r < rows_; ++r)
    for (int c = 0; c < cols_; ++c) t.at(c, r) = at(r, c);
  return t;
}

Echelon row_reduce(FpMatrix m) {
  const int p = m.prime();
  std::vector<int> pivots;
  int row = 0;
  for (int col = 0; col < m.cols() && row < m.rows(); ++col) {
    int sel = -1;
    for (int r = row; r < m.rows(); ++r)
      if (m.at(r, col) != 0) {
        sel = r;
        break;
      }
    if (sel < 0) continue;
    if (sel != row)
      for (int c = 0; c < m.cols(); ++c) std::swap(m.at(sel, c), m.at(row, c));
    const int inv = inv_mod(m.at(row, col), p);
    for (int c = 0; c < m.cols(); ++c) m.at(row, c) = static_cast<int>(1LL * m.at(row, c) * inv % p);
    for (int r = 0; r < m.rows(); ++r) {
      if (r == row || m.at(r, col) == 0) continue;
      const int factor = m.at(r, col);
      for (int c = 0; c < m.cols(); ++c)
        m.at(r, c) = mod_p(m.at(r, c) - 1LL * factor * m.at(row, c), p);
    }
    pivots.push_back(col);
    ++row;
  }
  return Echelon{std::move(m), std::move(pivots)};
}

int rank(const FpMatrix& m) { return row_reduce(m).rank(); }

std::vector<FpVector> nullspace(const FpMatrix& m) {
  const Echelon e = row_reduce(m);
  const int p = m.prime();
  std::vector<bool> is_pivot(m.cols(), false);
  for (int c : e.pivots) is_pivot[c] = true;
  std::vector<FpVector> basis;
  for (int f = 0; f < m.cols(); ++f) {
    if (is_pivot[f]) continue;
    FpVector x(m.cols(), 0);
    x[f] = 1;
    for (int r = 0; r < e.rank(); ++r) x[e.pivots[r]] = mod_p(-e.rref.at(r, f), p);
    basis.push_back(std::move(x));
  }
  return basis;
}

std::optional<FpVector> solve(const FpMatrix& m, const FpVector& b) {
  require(static_cast<int>(b.size()) == m.rows(), Errc::ShapeMismatch, "solve: rhs length");
  FpMatrix aug(m.prime(), m.rows(), m.cols() + 1);
  for (int r = 0; r < m.rows(); ++r) {
    for (int c = 0; c < m.cols(); ++c) aug.at(r, c) = m.at(r, c);
    aug.at(r, m.cols()) = mod_p(b[r], m.prime());
  }
  const Echelon e = row_reduce(std::move(aug));
  if (!e.pivots.empty() && e.pivots.back() == m.cols()) return std::nullopt;
  FpVector x(m.cols(), 0);
  for (int r = 0; r < e.rank(); ++r) x[e.pivots[r]] = e.rref.at(r, m.cols());
  return x;
}

Subspace::Subspace(int p, int ambient_dim) : p_(p), n_(ambient_dim) {}

Subspace Subspace::span(int p, int ambient_dim, const std::vector<FpVector>& vectors) {
  Subspace s(p, ambient_dim);
  if (vectors.empty() || ambient_dim == 0) return s;
  FpMatrix m(p, static_cast<int>(vectors.size()), ambient_dim);
  for (int r = 0; r < m.rows(); ++r) {
    require(static_cast<int>(vectors[r].size()) == ambient_dim, Errc::ShapeMismatch, "span: vector length");
    for (int c = 0; c < ambient_dim; ++c) m.at(r, c) = mod_p(vectors[r][c], p);
  }
  Echelon e = row_reduce(std::move(m));
  for (int r = 0; r < e.rank(); ++r) s.rows_.push_back(e.rref.row(r));
  s.pivots_ = e.pivots;
  return s;
}

Subspace Subspace::column_space(const FpMatrix& m) {
  std::vector<FpVector> cols;
  cols.reserve(m.cols());
  for (int c = 0; c < m.cols(); ++c) cols.push_back(m.column(c));
  return span(m.prime(), m.rows(), cols);
}

FpVector Subspace::reduce(FpVector v) const {
  require(static_cast<int>(v.size()) == n_, Errc::ShapeMismatch, "reduce: vector length");
  for (std::size_t r = 0; r < rows_.size(); ++r) {
    const int c = v[pivots_[r]];
    if (c == 0) continue;
    for (int k = 0; k < n_; ++k) v[k] = mod_p(v[k] - 1LL * c * rows_[r][k], p_);
  }
  return v;
}

bool Subspace::contains(const FpVector& v) const { return is_zero(reduce(v)); }

bool is_zero(const FpVector& v) noexcept {
  return std::all_of(v.begin(), v.end(), [](int x) { return x == 0; });
}

FpVector add(const FpVector& a, const FpVector& b, int p) {
  FpVector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = mod_p(a[i] + b[i], p);
  return r;
}

FpVector sub(const FpVector& a, const FpVector& b, int p) {
  FpVector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = mod_p(a[i] - b[i], p);
  return r;
}

FpVector scale(const FpVector& a, int c, int p) {
  FpVector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = mod_p(1LL * a[i] * c, p);
  return r;
}

}  // namespace clift
