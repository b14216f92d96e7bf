#pragma once

// Obstruction classes and torsor data for lifting differentials, cochain
// maps and homotopies one step up a tower.

#include <optional>

#include "clift/cohomology.hpp"

namespace clift {

/// Lift a middle-level complex C along the canonical graded lift.
struct DifferentialProblem {
  DifferentialProblem(DeformedAlgebra A, PreComplex C);

  DeformedAlgebra A;
  PreComplex C;       // middle level, d² = 0
  GradedMap dbar;     // canonical graded lift of d
  KernelComplex K;    // J ⊗ Hom(C₀, C₀)
};

/// Lift a degree-n cochain map f: C → D between bar-level complexes' reductions.
struct MapProblem {
  MapProblem(DeformedAlgebra A, PreComplex Cbar, PreComplex Dbar, GradedMap f);

  DeformedAlgebra A;
  PreComplex Cbar, Dbar;  // bar level, differentials
  GradedMap f;            // middle level
  GradedMap fbar;         // canonical graded lift
  KernelComplex K;        // J ⊗ Hom(C₀, D₀)
};

/// Lift a homotopy H: f → g of degree n−1 given lifts f̄, ḡ with δ̄f̄ = δ̄ḡ.
struct HomotopyProblem {
  HomotopyProblem(DeformedAlgebra A, PreComplex Cbar, PreComplex Dbar, GradedMap H, GradedMap fbar, GradedMap gbar);

  DeformedAlgebra A;
  PreComplex Cbar, Dbar;
  GradedMap H;            // middle level, degree n−1
  GradedMap fbar, gbar;   // bar level, degree n
  GradedMap Hbar;         // canonical graded lift of H
  KernelComplex K;
};

struct LiftReport {
  CohClass obstruction;
  std::optional<GradedMap> witness;
  /// The torsor group is H^{torsor_degree}; filled when classification was requested.
  int torsor_degree = 0;
  int torsor_dim = 0;
  std::vector<GradedMap> representatives;
  std::vector<FpVector> representative_classes;

  bool lifts() const { return obstruction.is_zero(); }
};

CohClass obstruct_differential(const DifferentialProblem& P);
/// Class of d̄² for an arbitrary graded lift d̄ of P.C.
CohClass obstruct_differential(const DifferentialProblem& P, const GradedMap& any_lift);
LiftReport lift_differential(const DifferentialProblem& P);
/// Adds one representative per class of H¹ (Obstructed if o ≠ 0).
LiftReport classify_lifts(const DifferentialProblem& P, std::uint64_t cap = std::uint64_t{1} << 20);
/// v(d̄, d̄′) = [d̄′ − d̄] ∈ H¹.
CohClass difference_class(const DifferentialProblem& P, const GradedMap& d1, const GradedMap& d2);

/// Connecting isomorphisms 1+κ: (C̄, d̄) → (C̄, d̄′) over the identity.
struct ConnectingCells {
  std::optional<GradedMap> iso;  // echelon-minimal κ, when one exists
  int cocycle_dim = 0;           // all 1-cells form a torsor under Z⁰
  int class_dim = 0;             // classes modulo 2-cells form a torsor under H⁰
};
ConnectingCells connecting_cells(const DifferentialProblem& P, const GradedMap& d1, const GradedMap& d2);

LiftReport obstruct_and_lift_map(const MapProblem& P, bool classify = false, std::uint64_t cap = std::uint64_t{1} << 20);
LiftReport obstruct_and_lift_homotopy(const HomotopyProblem& P, bool classify = false,
                                      std::uint64_t cap = std::uint64_t{1} << 20);

/// ḡ = ḡ′(1 − ε) with ε = f̄ḡ′ − 1 for degree-0 bar maps; NotInverse unless
/// the reductions are inverse and the result is a two-sided inverse.
GradedMap invert_lift(const DeformedAlgebra& A, const GradedMap& fbar, const GradedMap& gprime);

/// One algebra per step; the bar level of step i is the middle level of step i+1.
struct ChainReport {
  std::vector<LiftReport> steps;
  int obstructed_step = -1;
  std::optional<PreComplex> top;  // lift at the last level reached
};
ChainReport lift_along_chain(const std::vector<DeformedAlgebra>& steps, const PreComplex& C);

}  // namespace clift
