#pragma once

// Bounded graded objects of free modules over one algebra level, graded maps
// between them, pre-differentials and the Hom-complex operator δ.

#include <vector>

#include "clift/algebra.hpp"

namespace clift {

/// Ranks in degrees lo, lo+1, ..., lo+size-1; zero elsewhere.
struct GradedObject {
  int lo = 0;
  std::vector<int> ranks;

  int hi() const noexcept { return lo + static_cast<int>(ranks.size()) - 1; }
  int rank(int i) const noexcept { return i < lo || i > hi() ? 0 : ranks[i - lo]; }
  int total_rank() const noexcept;
  bool operator==(const GradedObject& o) const noexcept;
};

/// Degree-n map C → D: one matrix per source degree i in C's window, of shape
/// rank_D(i+n) × rank_C(i).
class GradedMap {
 public:
  GradedMap() = default;
  GradedMap(std::shared_ptr<const StructureTable> table, Level level, GradedObject source, GradedObject target,
            int degree);
  static GradedMap zero(const DeformedAlgebra& A, Level level, GradedObject source, GradedObject target, int degree);
  static GradedMap identity(const DeformedAlgebra& A, Level level, const GradedObject& obj);
  static GradedMap identity(std::shared_ptr<const StructureTable> table, Level level, const GradedObject& obj);

  Level level() const noexcept { return level_; }
  int degree() const noexcept { return degree_; }
  const GradedObject& source() const noexcept { return source_; }
  const GradedObject& target() const noexcept { return target_; }
  const std::shared_ptr<const StructureTable>& table_ptr() const noexcept { return table_; }

  /// Component at source degree i; an empty matrix of the right shape outside the window.
  AlgMatrix at(int i) const;
  void set(int i, AlgMatrix m);
  const std::vector<AlgMatrix>& components() const noexcept { return comps_; }
  std::vector<AlgMatrix>& components() noexcept { return comps_; }

  bool is_zero() const;
  GradedMap operator+(const GradedMap& o) const;
  GradedMap operator-(const GradedMap& o) const;
  GradedMap operator-() const;
  GradedMap scaled(long long k) const;
  bool operator==(const GradedMap& o) const;

  /// Coefficients of every component concatenated in degree order.
  std::vector<int> flatten() const;
  void assign_flat(const std::vector<int>& coeffs);
  std::size_t flat_size() const;

 private:
  void check_compatible(const GradedMap& o) const;

  std::shared_ptr<const StructureTable> table_;
  Level level_ = Level::Base;
  GradedObject source_, target_;
  int degree_ = 0;
  std::vector<AlgMatrix> comps_;
};

/// (g ∘ f)_i = g_{i+|f|} · f_i.
GradedMap compose(const GradedMap& g, const GradedMap& f);

/// A graded object with a degree-1 endomorphism d.
struct PreComplex {
  GradedObject obj;
  GradedMap d;

  Level level() const noexcept { return d.level(); }
  bool is_differential() const;
};

PreComplex make_precomplex(GradedMap d);
/// Validates d∘d = 0 (NotADifferential).
PreComplex make_complex(GradedMap d);

/// δⁿ(f) = d_D f − (−1)ⁿ f d_C, a map of degree n+1.
GradedMap delta_apply(const PreComplex& C, const PreComplex& D, const GradedMap& f);

/// Hom·(C, D) with its operator δ.
struct HomComplex {
  PreComplex C, D;

  /// Number of coefficients of a degree-n map: Σ_i rank_D(i+n)·rank_C(i)·width.
  std::size_t dim(int n) const;
  /// Range of degrees where Homⁿ can be nonzero.
  int min_degree() const noexcept { return D.obj.lo - C.obj.hi(); }
  int max_degree() const noexcept { return D.obj.hi() - C.obj.lo; }
  GradedMap delta(const GradedMap& f) const { return delta_apply(C, D, f); }
  bool is_homotopy(const GradedMap& H, const GradedMap& f, const GradedMap& g) const;
};

HomComplex hom_complex(PreComplex C, PreComplex D);

/// Entrywise σ-lift of a middle-level map or pre-complex.
GradedMap graded_lift(const DeformedAlgebra& A, const GradedMap& f);
PreComplex graded_lift(const DeformedAlgebra& A, const PreComplex& C);
GradedMap reduce(const DeformedAlgebra& A, const GradedMap& f, Level to);
PreComplex reduce(const DeformedAlgebra& A, const PreComplex& C, Level to);
/// Same coefficients read at another level with an identical table.
GradedMap relabel(const DeformedAlgebra& A, const GradedMap& f, Level level);

}  // namespace clift
