#pragma once

// Finite commutative local rings presented by an additive basis with
// prime-power orders plus a table of integer structure constants; ring maps,
// square-zero towers R̄ → R → F_p and fiber products.

#include <cstdint>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "clift/error.hpp"

namespace clift {

/// Coefficient tuple (c_0, ..., c_{m-1}) against an additive basis,
/// canonically reduced so that 0 <= c_i < order(b_i).
using Elem = std::vector<int>;

/// Enumeration and size caps. p <= 7 and |R̄| <= 2^16 keep every lifting
/// problem inside brute-force range.
struct Caps {
  int max_prime = 7;
  std::uint64_t max_ring_order = std::uint64_t{1} << 16;
};

/// A finite abelian p-group ⊕ Z/p^{e_i}, with coordinates as above.
class AdditiveGroup {
 public:
  AdditiveGroup() = default;
  AdditiveGroup(int p, std::vector<int> exponents);

  int prime() const noexcept { return p_; }
  int dim() const noexcept { return static_cast<int>(exps_.size()); }
  int exponent(int i) const { return exps_[i]; }
  int order(int i) const { return orders_[i]; }
  const std::vector<int>& exponents() const noexcept { return exps_; }
  /// Saturates at UINT64_MAX.
  std::uint64_t cardinality() const noexcept { return card_; }

  Elem zero() const { return Elem(exps_.size(), 0); }
  Elem unit_vector(int i) const;
  void reduce(std::span<int> x) const;
  Elem add(const Elem& a, const Elem& b) const;
  Elem sub(const Elem& a, const Elem& b) const;
  Elem neg(const Elem& a) const;
  Elem scale(long long k, const Elem& a) const;
  bool is_zero(const Elem& a) const;
  /// Smallest k with p^k·a = 0.
  int order_exponent(const Elem& a) const;

  /// Mixed-radix index with c_0 most significant, so index order is the
  /// lexicographic order of coefficient tuples.
  std::uint64_t encode(std::span<const int> x) const;
  Elem decode(std::uint64_t index) const;

  bool operator==(const AdditiveGroup& o) const { return p_ == o.p_ && exps_ == o.exps_; }

 private:
  int p_ = 2;
  std::vector<int> exps_;
  std::vector<int> orders_;
  std::uint64_t card_ = 1;
};

/// Structure constants of a finite (not necessarily commutative) ring on an
/// additive basis whose first element is the unit. Validated on construction:
/// well-defined modulo additive orders, two-sided unit b_0, associative on all
/// basis triples.
class StructureTable {
 public:
  /// constants[(a*N + b)*N + k] is the coefficient of b_k in b_a·b_b.
  StructureTable(int p, std::vector<int> exponents, std::vector<int> constants);

  const AdditiveGroup& group() const noexcept { return group_; }
  int prime() const noexcept { return group_.prime(); }
  int dim() const noexcept { return group_.dim(); }
  int order(int i) const { return group_.order(i); }
  std::uint64_t cardinality() const noexcept { return group_.cardinality(); }
  int constant(int a, int b, int k) const { return constants_[(static_cast<std::size_t>(a) * dim() + b) * dim() + k]; }
  const std::vector<int>& constants() const noexcept { return constants_; }
  bool is_commutative() const noexcept { return commutative_; }

  Elem zero() const { return group_.zero(); }
  Elem one() const { return group_.unit_vector(0); }
  Elem basis(int i) const { return group_.unit_vector(i); }
  Elem add(const Elem& a, const Elem& b) const { return group_.add(a, b); }
  Elem sub(const Elem& a, const Elem& b) const { return group_.sub(a, b); }
  Elem neg(const Elem& a) const { return group_.neg(a); }
  Elem scale(long long k, const Elem& a) const { return group_.scale(k, a); }
  bool is_zero(const Elem& a) const { return group_.is_zero(a); }
  Elem mul(const Elem& a, const Elem& b) const;
  Elem pow(const Elem& a, int n) const;

  /// acc += x·y without reduction; x and y point at dim() canonical coefficients.
  void mul_accumulate(const int* x, const int* y, std::int64_t* acc) const;
  /// out = acc reduced modulo the additive orders.
  void reduce_into(const std::int64_t* acc, int* out) const;

  bool operator==(const StructureTable& o) const { return group_ == o.group_ && constants_ == o.constants_; }

 private:
  struct Term {
    int k;
    int c;
  };
  AdditiveGroup group_;
  std::vector<int> constants_;
  std::vector<std::vector<Term>> nonzero_;  // per basis pair (a,b)
  bool commutative_ = true;
};

/// A finite commutative ring; shares its structure table.
class FiniteRing {
 public:
  FiniteRing() = default;
  explicit FiniteRing(std::shared_ptr<const StructureTable> table);
  FiniteRing(int p, std::vector<int> exponents, std::vector<int> constants);

  const StructureTable& table() const { return *table_; }
  const std::shared_ptr<const StructureTable>& table_ptr() const noexcept { return table_; }
  int prime() const { return table_->prime(); }
  int dim() const { return table_->dim(); }
  std::uint64_t cardinality() const { return table_->cardinality(); }
  bool is_prime_field() const { return dim() == 1 && table_->group().exponent(0) == 1; }

  Elem zero() const { return table_->zero(); }
  Elem one() const { return table_->one(); }
  Elem add(const Elem& a, const Elem& b) const { return table_->add(a, b); }
  Elem sub(const Elem& a, const Elem& b) const { return table_->sub(a, b); }
  Elem mul(const Elem& a, const Elem& b) const { return table_->mul(a, b); }
  Elem neg(const Elem& a) const { return table_->neg(a); }
  bool is_zero(const Elem& a) const { return table_->is_zero(a); }
  std::vector<Elem> elements() const;

  bool operator==(const FiniteRing& o) const { return *table_ == *o.table_; }

 private:
  std::shared_ptr<const StructureTable> table_;
};

FiniteRing prime_field(int p);
FiniteRing zmod_ring(int p, int exponent);
/// F_p[t]/(t^n) on the basis 1, t, ..., t^{n-1}.
FiniteRing trunc_poly_ring(int p, int n);
/// F_p[x_1..x_r]/(x_1..x_r)^2 on the basis 1, x_1, ..., x_r.
FiniteRing square_zero_ring(int p, int r);

/// A unital ring homomorphism given by the images of the source basis.
/// Construction checks well-definedness, unitality and multiplicativity.
class RingHom {
 public:
  RingHom() = default;
  RingHom(FiniteRing source, FiniteRing target, std::vector<Elem> images);

  const FiniteRing& source() const noexcept { return source_; }
  const FiniteRing& target() const noexcept { return target_; }
  const std::vector<Elem>& images() const noexcept { return images_; }
  Elem apply(const Elem& x) const;
  bool is_surjective() const;
  std::vector<Elem> kernel() const;
  RingHom then(const RingHom& next) const;

 private:
  FiniteRing source_;
  FiniteRing target_;
  std::vector<Elem> images_;
};

/// Every element of the subgroup generated by `generators`, sorted by index.
std::vector<Elem> subgroup_elements(const AdditiveGroup& g, const std::vector<Elem>& generators);

/// A basis g_1..g_r of a subgroup (given by all its elements) with
/// subgroup = ⊕ <g_i>; `seeds` must be a prefix that extends to such a basis
/// (for instance the unit of a ring, which has maximal order).
struct AdditiveBasis {
  std::vector<Elem> generators;
  std::vector<int> exponents;
};
AdditiveBasis additive_basis(const AdditiveGroup& g, const std::vector<Elem>& elements,
                             const std::vector<Elem>& seeds = {});

enum class TowerKind { ZMod, TruncPoly, SquareZero, Custom };

const char* tower_kind_name(TowerKind kind) noexcept;
TowerKind tower_kind_from_name(const std::string& name);

struct TowerParams {
  int a = 0;  // zmod, trunc_poly: top exponent
  int b = 0;  // zmod, trunc_poly: middle exponent
  int r = 0;  // square_zero: number of variables
};

/// R̄ → R → R₀ = F_p with J = Ker(R̄ → R), I = Ker(R̄ → R₀) and I·J = 0.
class Tower {
 public:
  /// Custom towers; validates every tower invariant.
  Tower(FiniteRing bar, FiniteRing mid, FiniteRing base, RingHom bar_to_mid, RingHom mid_to_base,
        const Caps& caps = {});

  TowerKind kind() const noexcept { return kind_; }
  const TowerParams& params() const noexcept { return params_; }
  int prime() const { return bar_.prime(); }

  const FiniteRing& bar() const noexcept { return bar_; }
  const FiniteRing& mid() const noexcept { return mid_; }
  const FiniteRing& base() const noexcept { return base_; }
  const RingHom& bar_to_mid() const noexcept { return bar_to_mid_; }
  const RingHom& mid_to_base() const noexcept { return mid_to_base_; }
  Elem bar_to_base(const Elem& x) const { return mid_to_base_.apply(bar_to_mid_.apply(x)); }

  /// The set-theoretic section σ: R → R̄, additive on the chosen lifts of
  /// the basis of R (each the coefficient-wise minimal preimage).
  Elem lift(const Elem& x) const;
  const std::vector<Elem>& section_images() const noexcept { return section_; }

  const std::vector<Elem>& j_basis() const noexcept { return j_basis_; }
  int j_dim() const noexcept { return static_cast<int>(j_basis_.size()); }
  const std::vector<Elem>& i_generators() const noexcept { return i_generators_; }
  /// Coordinates over F_p of x ∈ J against j_basis(); throws NotInKernel.
  std::vector<int> j_coordinates(const Elem& x) const;
  /// Same tower with another F_p-basis of J (validated).
  Tower with_j_basis(std::vector<Elem> basis) const;

 private:
  friend Tower mk_tower(TowerKind, int, TowerParams, const Caps&);
  void set_j_basis(std::vector<Elem> basis);

  TowerKind kind_ = TowerKind::Custom;
  TowerParams params_;
  FiniteRing bar_, mid_, base_;
  RingHom bar_to_mid_, mid_to_base_;
  std::vector<Elem> section_;
  std::vector<Elem> j_basis_;
  std::vector<Elem> i_generators_;
  // J-coordinate extraction: coords = Σ_s y[pivot_s]·transform_s
  std::vector<int> j_pivots_;
  std::vector<std::vector<int>> j_transform_;
};

/// Built-in towers:
///   zmod        Z/p^a → Z/p^b → F_p        (a >= b >= 1, a <= b+1)
///   trunc_poly  F_p[t]/(t^a) → F_p[t]/(t^b) → F_p
///   square_zero F_p[x_1..x_r]/(x)^2 → F_p → F_p
Tower mk_tower(TowerKind kind, int p, TowerParams params, const Caps& caps = {});

/// R' ×_R R'' with its two projections.
struct FiberProduct {
  FiniteRing ring;
  RingHom to_first;
  RingHom to_second;
  /// The element (a, b); throws InvalidArgument unless f'(a) = f''(b).
  Elem pair(const Elem& a, const Elem& b) const;

  // (index of a, index of b) -> coordinates in `ring`
  std::shared_ptr<const std::map<std::pair<std::uint64_t, std::uint64_t>, Elem>> lookup;
};

FiberProduct ring_fiber_product(const RingHom& first, const RingHom& second, const Caps& caps = {});

/// True when every element of Ker(residue) is nilpotent, which makes the
/// source ring local with residue field F_p.
bool has_nil_residue_kernel(const RingHom& residue);

}  // namespace clift
