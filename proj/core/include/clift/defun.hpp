#pragma once

// Deformation functors of a complex over Λ₀ along trivial deformations
// R ⊗ Λ₀, for finite local F_p-algebras R.

#include "clift/crude.hpp"

namespace clift {

/// Local F_p-algebra with residue field F_p and nilpotent maximal ideal m.
struct ArtinRing {
  FiniteRing ring;
  RingHom residue;                // R → F_p
  std::vector<FpVector> m_basis;  // RREF basis of m in coefficient coordinates
  int nilpotency = 1;             // least N with m^N = 0
};

struct FunctorCaps {
  std::uint64_t max_ring_order = std::uint64_t{1} << 12;
  std::uint64_t max_lift_space = std::uint64_t{1} << 20;
};

/// Validates an F_p-algebra (every additive order p) as an artinian local ring.
ArtinRing artin_ring(const FiniteRing& R, const FunctorCaps& caps = {});
/// Basis of m^j (j >= 1).
std::vector<FpVector> ideal_power(const ArtinRing& R, int j);
/// R → R/W for an ideal W ⊂ m of an F_p-algebra, given by spanning vectors.
RingHom quotient_map(const FiniteRing& R, const std::vector<FpVector>& ideal);

/// A complex C₀ over Λ₀ (base level, over F_p).
struct BaseComplex {
  int p = 2;
  int rank = 1;
  std::vector<int> constants;  // Λ₀ structure constants, (i*k+j)*k+l
  PreComplex C;
};
BaseComplex make_base_complex(int p, int rank, std::vector<int> constants, const GradedMap& d);
/// Same complex from a deformed algebra's base level.
BaseComplex base_complex_of(const DeformedAlgebra& A, const PreComplex& C0);

/// Applies a ring map entrywise; `table` must be R' ⊗ Λ₀ for the target R'.
GradedMap change_rings(const GradedMap& m, const RingHom& h, std::shared_ptr<const StructureTable> table, Level level);

int tangent_dim(const BaseComplex& bc);

enum class FunctorTag { F0, F, F1 };
const char* functor_tag_name(FunctorTag tag) noexcept;
FunctorTag functor_tag_from_name(const std::string& name);

struct FunctorValue {
  FunctorTag tag = FunctorTag::F0;
  std::vector<GradedMap> lifts;                   // F₀(R), in enumeration order (R-level, tagged Bar)
  std::vector<std::vector<std::size_t>> classes;  // partition of `lifts` (singletons for F₀)

  std::size_t size() const { return tag == FunctorTag::F0 ? lifts.size() : classes.size(); }
};

/// Every differential on the canonical graded lift of C₀ over R ⊗ Λ₀.
std::vector<GradedMap> f0_elements(const ArtinRing& R, const BaseComplex& bc, const FunctorCaps& caps = {});
/// Strict equivalence (an isomorphism lifting 1), decided step by step up
/// the filtration R/m^j with obstruction classes.
bool strictly_equivalent(const ArtinRing& R, const BaseComplex& bc, const GradedMap& d1, const GradedMap& d2);
/// Same question by exhaustive search over 1 + m⊗Hom⁰.
bool strictly_equivalent_oracle(const ArtinRing& R, const BaseComplex& bc, const GradedMap& d1, const GradedMap& d2,
                                const FunctorCaps& caps = {});
/// A cochain map d1 → d2 over R whose reduction is homotopic to 1, by search.
bool homotopy_equivalent_oracle(const ArtinRing& R, const BaseComplex& bc, const GradedMap& d1, const GradedMap& d2,
                                const FunctorCaps& caps = {});

/// F₀ lists every lift; F partitions by strictly_equivalent; F₁ partitions by
/// homotopy_equivalent_oracle.
FunctorValue functor_eval(FunctorTag tag, const ArtinRing& R, const BaseComplex& bc, const FunctorCaps& caps = {});

/// (R′ → R, R″ → R).
struct RingTriple {
  RingHom first;
  RingHom second;
};

struct SchlessingerResult {
  std::size_t f0_fiber = 0;     // |F₀(R′ ×_R R″)|
  std::size_t f0_pairs = 0;     // |F₀(R′) ×_{F₀(R)} F₀(R″)|
  bool f0_bijective = false;
  bool s1_applicable = false;   // Ker(R′ → R) one-dimensional
  bool s1_surjective = false;
  bool s2_applicable = false;   // R′ → R is k[ε] → k
  bool s2_bijective = false;
  std::size_t smooth_pairs = 0; // premises of the μ-smoothness check
};

/// Runs every check on every triple; CheckFailed names the first counterexample.
std::vector<SchlessingerResult> schlessinger_check(const BaseComplex& bc, const std::vector<RingTriple>& triples,
                                                   const FunctorCaps& caps = {});

/// Order n lift over F_p[t]/(t^n) (trivial table) → lifting report one order up.
struct ExtendResult {
  LiftReport report;
  int order = 0;  // n+1
};
ExtendResult extend_order(const BaseComplex& bc, const GradedMap& lift, int n);

}  // namespace clift
