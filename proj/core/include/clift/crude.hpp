#pragma once

// The crude lifting procedure for homotopy equivalences and the
// homotopy-category layer built on it.

#include <optional>
#include <string>

#include "clift/obstruction.hpp"

namespace clift {

/// Middle-level homotopy equivalence data: f: C → D, g: D → C,
/// H: gf → 1_C and K: fg → 1_D, meaning δH = 1 − gf and δK = 1 − fg.
struct HomotopyEquivData {
  PreComplex C, D;
  GradedMap f, g, H, K;

  /// NotHomotopyEquivalence unless every identity holds exactly.
  void validate(const DeformedAlgebra& A) const;
};

/// K′ = K + f(Hg − gK) together with W = H(Hg − gK), which satisfies
/// δW = Hg − gK′.
struct KRepair {
  GradedMap K_prime;
  GradedMap W;
};
KRepair repair_k(const HomotopyEquivData& E);

/// Bar-level candidates at one pipeline stage.
struct CrudeStage {
  std::string name;
  GradedMap dC, f, g, H, K;
  bool dC_squared_zero = false;
  bool f_closed = false;
  bool g_closed = false;
};

struct CrudeResult {
  GradedMap dC, f, g, H, K;
  GradedMap K_prime;  // middle level; K̄ reduces to it
  std::vector<CrudeStage> trace;
};

/// Runs stages (i)-(v); throws InternalObstruction if any stage assertion fails.
CrudeResult crude_lift(const DeformedAlgebra& A, const HomotopyEquivData& E, const GradedMap& dD_bar,
                       bool keep_trace = false);

/// Checks every postcondition of crude_lift exactly; returns the failed ones.
std::vector<std::string> crude_postcondition_failures(const DeformedAlgebra& A, const HomotopyEquivData& E,
                                                      const GradedMap& dD_bar, const CrudeResult& r);

/// A homotopy-category lift (C ≃ D, D̄) moved onto the canonical graded lift of C.
CrudeResult strictify_homotopy_lift(const DeformedAlgebra& A, const HomotopyEquivData& E, const GradedMap& dD_bar);

/// Strict classification read as the classification of homotopy-category lifts.
LiftReport classify_homotopy_lifts(const DeformedAlgebra& A, const PreComplex& C,
                                   std::uint64_t cap = std::uint64_t{1} << 20);

enum class GuardStatus { Verified, NotGuaranteed };

/// Decides H⁻¹Hom(C, D) = 0 at the middle level by enumerating Hom⁻¹ and
/// Hom⁻²; GuardUndecidable when either has more than `cap` elements.
bool hminus1_vanishes(const DeformedAlgebra& A, const PreComplex& C, const PreComplex& D,
                      std::uint64_t cap = std::uint64_t{1} << 20);

struct HomotopyMapReport {
  LiftReport report;  // torsor over H⁰ when the guard holds
  GuardStatus guard = GuardStatus::NotGuaranteed;
};

HomotopyMapReport classify_homotopy_map_lifts(const MapProblem& P, std::uint64_t cap = std::uint64_t{1} << 20);

/// Given a cochain-map lift ḡ of g and H: f → g at the middle level, returns
/// a cochain-map lift f̄ of f and H̄: f̄ → ḡ lifting H.
struct Alignment {
  GradedMap fbar;
  GradedMap Hbar;
};
Alignment align_homotopic_lift(const MapProblem& P, const GradedMap& gbar, const GradedMap& H);

}  // namespace clift
