#pragma once

// Free associative algebras Λ̄ over the top ring of a tower, their base
// changes Λ (middle) and Λ₀ (residue field), and matrices over them.

#include <memory>
#include <vector>

#include "clift/finring.hpp"

namespace clift {

enum class Level { Bar, Mid, Base };

const char* level_name(Level level) noexcept;
Level level_from_name(const std::string& name);

/// Matrix with entries in one algebra level. An entry is a flat coefficient
/// tuple of length width() = k·m (algebra index outer, ring basis inner).
class AlgMatrix {
 public:
  AlgMatrix() = default;
  AlgMatrix(std::shared_ptr<const StructureTable> table, Level level, int rows, int cols);

  Level level() const noexcept { return level_; }
  int rows() const noexcept { return rows_; }
  int cols() const noexcept { return cols_; }
  int width() const noexcept { return table_ ? table_->dim() : 0; }
  const StructureTable& table() const { return *table_; }
  const std::shared_ptr<const StructureTable>& table_ptr() const noexcept { return table_; }

  int* entry(int r, int c) { return data_.data() + (static_cast<std::size_t>(r) * cols_ + c) * width(); }
  const int* entry(int r, int c) const { return data_.data() + (static_cast<std::size_t>(r) * cols_ + c) * width(); }
  Elem get(int r, int c) const;
  void set(int r, int c, const Elem& x);
  const std::vector<int>& data() const noexcept { return data_; }
  std::vector<int>& data() noexcept { return data_; }

  bool is_zero() const;
  AlgMatrix operator+(const AlgMatrix& o) const;
  AlgMatrix operator-(const AlgMatrix& o) const;
  AlgMatrix operator-() const;
  AlgMatrix operator*(const AlgMatrix& o) const;
  AlgMatrix scaled(long long k) const;
  bool operator==(const AlgMatrix& o) const;

  static AlgMatrix identity(std::shared_ptr<const StructureTable> table, Level level, int n);

 private:
  void check_same_shape(const AlgMatrix& o) const;

  std::shared_ptr<const StructureTable> table_;
  Level level_ = Level::Base;
  int rows_ = 0;
  int cols_ = 0;
  std::vector<int> data_;
};

enum class AlgebraKind { Trivial, Custom };

/// Λ̄ free over R̄ on a_0 = 1, ..., a_{k-1}. Each level is presented as a
/// finite ring (not necessarily commutative) on the basis a_j·b_u.
class DeformedAlgebra {
 public:
  /// Structure constants over R̄: constants[(i*k + j)*k + l] is the
  /// coefficient of a_l in a_i·a_j, an element of R̄.
  DeformedAlgebra(Tower tower, int rank, std::vector<Elem> constants, AlgebraKind kind = AlgebraKind::Custom);

  const Tower& tower() const noexcept { return tower_; }
  AlgebraKind kind() const noexcept { return kind_; }
  int rank() const noexcept { return k_; }
  int prime() const { return tower_.prime(); }
  const std::vector<Elem>& constants() const noexcept { return constants_; }

  const std::shared_ptr<const StructureTable>& table(Level level) const;
  /// The tower ring at `level`.
  const FiniteRing& ring(Level level) const;
  int width(Level level) const { return table(level)->dim(); }

  /// Constants of Λ₀ over F_p (trivial kind input), flattened like `constants`.
  std::vector<int> base_constants() const;

  AlgMatrix zero(Level level, int rows, int cols) const;
  AlgMatrix identity(Level level, int n) const;

  Elem reduce_elem(const Elem& x, Level from) const;  // one level down
  Elem lift_elem(const Elem& x, Level from) const;    // σ, one level up (Mid→Bar only)
  /// Bar or Mid → Base, or Bar → Mid.
  AlgMatrix reduce(const AlgMatrix& m, Level to) const;
  /// Entrywise σ-lift Mid → Bar.
  AlgMatrix lift(const AlgMatrix& m) const;
  /// Reinterpret a matrix whose entries live in an identical table at another level.
  AlgMatrix relabel(const AlgMatrix& m, Level level) const;

  /// Coordinates of a bar matrix m with reduce(m) = 0: one base matrix per J-basis element.
  std::vector<AlgMatrix> kernel_coords(const AlgMatrix& m) const;
  AlgMatrix reconstruct(const std::vector<AlgMatrix>& coords) const;

 private:
  Tower tower_;
  AlgebraKind kind_;
  int k_;
  std::vector<Elem> constants_;
  std::shared_ptr<const StructureTable> tables_[3];
};

/// Table of R ⊗ Λ₀ for any ring R of characteristic p (constants lifted as c·1).
std::shared_ptr<const StructureTable> trivial_algebra_table(const FiniteRing& R, int rank,
                                                           const std::vector<int>& base_constants);

/// Λ̄ = R̄ ⊗ Λ₀ from F_p constants of Λ₀ (flattened (i*k+j)*k+l).
DeformedAlgebra mk_trivial_algebra(const Tower& tower, int rank, const std::vector<int>& base_constants);
/// Rank-1 trivial algebra: Λ̄ = R̄.
DeformedAlgebra mk_scalar_algebra(const Tower& tower);

}  // namespace clift
