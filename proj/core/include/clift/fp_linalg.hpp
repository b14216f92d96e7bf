#pragma once

#include <optional>
#include <vector>

namespace clift {

/// Vector over F_p with entries canonically in [0, p).
using FpVector = std::vector<int>;

int mod_p(long long value, int p) noexcept;
int inv_mod(int a, int p);
bool is_prime(int n) noexcept;

/// Dense matrix over a prime field. Column vectors; `apply` computes M·x.
class FpMatrix {
 public:
  FpMatrix() = default;
  FpMatrix(int p, int rows, int cols);

  int prime() const noexcept { return p_; }
  int rows() const noexcept { return rows_; }
  int cols() const noexcept { return cols_; }

  int& at(int r, int c) { return a_[static_cast<std::size_t>(r) * cols_ + c]; }
  int at(int r, int c) const { return a_[static_cast<std::size_t>(r) * cols_ + c]; }

  void set_column(int c, const FpVector& v);
  FpVector column(int c) const;
  FpVector row(int r) const;
  FpVector apply(const FpVector& x) const;
  FpMatrix transpose() const;

  bool operator==(const FpMatrix&) const = default;

 private:
  int p_ = 2;
  int rows_ = 0;
  int cols_ = 0;
  std::vector<int> a_;
};

/// Reduced row echelon form. Pivots are scanned left to right with no
/// reordering, so the result is a deterministic function of the input.
struct Echelon {
  FpMatrix rref;
  std::vector<int> pivots;  // pivot column of each nonzero row
  int rank() const noexcept { return static_cast<int>(pivots.size()); }
};

Echelon row_reduce(FpMatrix m);

int rank(const FpMatrix& m);

/// Basis of {x : M x = 0}; one vector per free column, with that column set to 1.
std::vector<FpVector> nullspace(const FpMatrix& m);

/// Solves M x = b. Free variables are set to zero, giving the echelon-minimal
/// solution. Returns nullopt when b is not in the column space.
std::optional<FpVector> solve(const FpMatrix& m, const FpVector& b);

/// A subspace of F_p^n held as RREF rows.
class Subspace {
 public:
  Subspace(int p, int ambient_dim);
  static Subspace span(int p, int ambient_dim, const std::vector<FpVector>& vectors);
  static Subspace column_space(const FpMatrix& m);

  int prime() const noexcept { return p_; }
  int ambient_dim() const noexcept { return n_; }
  int dim() const noexcept { return static_cast<int>(rows_.size()); }
  const std::vector<FpVector>& basis() const noexcept { return rows_; }
  const std::vector<int>& pivots() const noexcept { return pivots_; }

  /// Canonical representative of v + U: the pivot coordinates are cleared.
  FpVector reduce(FpVector v) const;
  bool contains(const FpVector& v) const;

 private:
  int p_;
  int n_;
  std::vector<FpVector> rows_;
  std::vector<int> pivots_;
};

bool is_zero(const FpVector& v) noexcept;
FpVector add(const FpVector& a, const FpVector& b, int p);
FpVector sub(const FpVector& a, const FpVector& b, int p);
FpVector scale(const FpVector& a, int c, int p);

}  // namespace clift
