#include "clift/obstruction.hpp"

namespace clift {

namespace {

KernelComplex base_kernel(const DeformedAlgebra& A, const PreComplex& C, const PreComplex& D) {
  return KernelComplex(A, reduce(A, C, Level::Base), reduce(A, D, Level::Base));
}

void require_level(const GradedMap& m, Level level, const char* what) {
  require(m.level() == level, Errc::LevelMismatch, std::string(what) + " must be at the " + level_name(level) + " level");
}

FpVector negated(const FpVector& v, int p) { return scale(v, p - 1, p); }

std::vector<GradedMap> torsor_representatives(const KernelComplex& K, const GradedMap& base, int n,
                                              std::uint64_t cap, std::vector<FpVector>& classes) {
  classes = cohomology_elements(K, n, cap);
  std::vector<GradedMap> reps;
  for (const FpVector& h : classes) reps.push_back(base + K.out_of_kernel(h, n));
  return reps;
}

}  // namespace

DifferentialProblem::DifferentialProblem(DeformedAlgebra A_, PreComplex C_)
    : A(std::move(A_)), C(std::move(C_)), dbar(graded_lift(A, C.d)), K(base_kernel(A, C, C)) {
  require_level(C.d, Level::Mid, "the complex to lift");
  require(C.is_differential(), Errc::NotADifferential, "d∘d != 0 at the middle level");
}

MapProblem::MapProblem(DeformedAlgebra A_, PreComplex Cbar_, PreComplex Dbar_, GradedMap f_)
    : A(std::move(A_)),
      Cbar(std::move(Cbar_)),
      Dbar(std::move(Dbar_)),
      f(std::move(f_)),
      fbar(graded_lift(A, f)),
      K(base_kernel(A, Cbar, Dbar)) {
  require_level(Cbar.d, Level::Bar, "lifted source");
  require_level(Dbar.d, Level::Bar, "lifted target");
  require_level(f, Level::Mid, "the map to lift");
  require(Cbar.is_differential() && Dbar.is_differential(), Errc::NotADifferential, "lifted endpoints must be complexes");
  const PreComplex C = reduce(A, Cbar, Level::Mid);
  const PreComplex D = reduce(A, Dbar, Level::Mid);
  require(delta_apply(C, D, f).is_zero(), Errc::NotCochainMap, "δf != 0");
}

HomotopyProblem::HomotopyProblem(DeformedAlgebra A_, PreComplex Cbar_, PreComplex Dbar_, GradedMap H_, GradedMap fbar_,
                                 GradedMap gbar_)
    : A(std::move(A_)),
      Cbar(std::move(Cbar_)),
      Dbar(std::move(Dbar_)),
      H(std::move(H_)),
      fbar(std::move(fbar_)),
      gbar(std::move(gbar_)),
      Hbar(graded_lift(A, H)),
      K(base_kernel(A, Cbar, Dbar)) {
  require_level(Cbar.d, Level::Bar, "lifted source");
  require_level(Dbar.d, Level::Bar, "lifted target");
  require_level(H, Level::Mid, "the homotopy to lift");
  require_level(fbar, Level::Bar, "f̄");
  require_level(gbar, Level::Bar, "ḡ");
  require(Cbar.is_differential() && Dbar.is_differential(), Errc::NotADifferential, "lifted endpoints must be complexes");
  require(fbar.degree() == gbar.degree() && H.degree() == fbar.degree() - 1, Errc::ShapeMismatch,
          "a homotopy has degree one less than its endpoints");
  const PreComplex C = reduce(A, Cbar, Level::Mid);
  const PreComplex D = reduce(A, Dbar, Level::Mid);
  const GradedMap f = reduce(A, fbar, Level::Mid);
  const GradedMap g = reduce(A, gbar, Level::Mid);
  require(delta_apply(C, D, H) == g - f, Errc::NotAHomotopy, "δH != g − f");
  require(delta_apply(Cbar, Dbar, fbar) == delta_apply(Cbar, Dbar, gbar), Errc::IncompatibleGradedLifts,
          "δ̄f̄ != δ̄ḡ");
}

// ---------------------------------------------------------------- differential

CohClass obstruct_differential(const DifferentialProblem& P) { return obstruct_differential(P, P.dbar); }

CohClass obstruct_differential(const DifferentialProblem& P, const GradedMap& any_lift) {
  require(reduce(P.A, any_lift, Level::Mid) == P.C.d, Errc::IncompatibleGradedLifts, "not a graded lift of d");
  return coh_class(P.K, P.K.into_kernel(compose(any_lift, any_lift)), 2);
}

LiftReport lift_differential(const DifferentialProblem& P) {
  LiftReport r;
  const FpVector z = P.K.into_kernel(compose(P.dbar, P.dbar));
  r.obstruction = coh_class(P.K, z, 2);
  r.torsor_degree = 1;
  r.torsor_dim = h_dim(P.K, 1);
  if (!r.lifts()) return r;
  const auto x = is_coboundary(P.K, negated(z, P.K.prime()), 2);
  require(x.has_value(), Errc::InternalObstruction, "zero class without a coboundary witness");
  GradedMap w = P.dbar + P.K.out_of_kernel(*x, 1);
  require(compose(w, w).is_zero(), Errc::InternalObstruction, "corrected lift is not a differential");
  r.witness = std::move(w);
  return r;
}

LiftReport classify_lifts(const DifferentialProblem& P, std::uint64_t cap) {
  LiftReport r = lift_differential(P);
  require(r.lifts(), Errc::Obstructed, "o(d) != 0: no lift to classify");
  r.representatives = torsor_representatives(P.K, *r.witness, 1, cap, r.representative_classes);
  return r;
}

CohClass difference_class(const DifferentialProblem& P, const GradedMap& d1, const GradedMap& d2) {
  require(compose(d1, d1).is_zero() && compose(d2, d2).is_zero(), Errc::NotADifferential, "lifts must be differentials");
  return coh_class(P.K, P.K.into_kernel(d2 - d1), 1);
}

ConnectingCells connecting_cells(const DifferentialProblem& P, const GradedMap& d1, const GradedMap& d2) {
  ConnectingCells c;
  c.cocycle_dim = P.K.cocycles(0).dim();
  c.class_dim = h_dim(P.K, 0);
  const FpVector v = P.K.into_kernel(d2 - d1);
  // (1+κ) d̄ = d̄′ (1+κ)  ⟺  δ⁰κ = −(d̄′ − d̄)
  const auto kappa = is_coboundary(P.K, negated(v, P.K.prime()), 1);
  if (!kappa) return c;
  GradedMap iso = GradedMap::identity(P.A, Level::Bar, P.C.obj) + P.K.out_of_kernel(*kappa, 0);
  require(compose(iso, d1) == compose(d2, iso), Errc::InternalObstruction, "connecting map is not a cochain map");
  c.iso = std::move(iso);
  return c;
}

// ------------------------------------------------------------------------ maps

LiftReport obstruct_and_lift_map(const MapProblem& P, bool classify, std::uint64_t cap) {
  const int n = P.f.degree();
  LiftReport r;
  const FpVector z = P.K.into_kernel(delta_apply(P.Cbar, P.Dbar, P.fbar));
  r.obstruction = coh_class(P.K, z, n + 1);
  r.torsor_degree = n;
  r.torsor_dim = h_dim(P.K, n);
  if (!r.lifts()) return r;
  const auto x = is_coboundary(P.K, negated(z, P.K.prime()), n + 1);
  require(x.has_value(), Errc::InternalObstruction, "zero class without a coboundary witness");
  GradedMap w = P.fbar + P.K.out_of_kernel(*x, n);
  require(delta_apply(P.Cbar, P.Dbar, w).is_zero(), Errc::InternalObstruction, "corrected map is not a cochain map");
  r.witness = std::move(w);
  if (classify) r.representatives = torsor_representatives(P.K, *r.witness, n, cap, r.representative_classes);
  return r;
}

LiftReport obstruct_and_lift_homotopy(const HomotopyProblem& P, bool classify, std::uint64_t cap) {
  const int n = P.fbar.degree();
  LiftReport r;
  const GradedMap defect = P.gbar - P.fbar - delta_apply(P.Cbar, P.Dbar, P.Hbar);
  const FpVector z = P.K.into_kernel(defect);
  r.obstruction = coh_class(P.K, z, n);
  r.torsor_degree = n - 1;
  r.torsor_dim = h_dim(P.K, n - 1);
  if (!r.lifts()) return r;
  const auto x = is_coboundary(P.K, z, n);
  require(x.has_value(), Errc::InternalObstruction, "zero class without a coboundary witness");
  GradedMap w = P.Hbar + P.K.out_of_kernel(*x, n - 1);
  require(delta_apply(P.Cbar, P.Dbar, w) == P.gbar - P.fbar, Errc::InternalObstruction, "corrected homotopy fails");
  r.witness = std::move(w);
  if (classify) r.representatives = torsor_representatives(P.K, *r.witness, n - 1, cap, r.representative_classes);
  return r;
}

// ------------------------------------------------------------------- inverses

GradedMap invert_lift(const DeformedAlgebra& A, const GradedMap& fbar, const GradedMap& gprime) {
  require_level(fbar, Level::Bar, "f̄");
  require_level(gprime, Level::Bar, "ḡ′");
  require(fbar.degree() == 0 && gprime.degree() == 0, Errc::ShapeMismatch, "inverses are degree-0 maps");
  const GradedMap one_d = GradedMap::identity(A, Level::Bar, fbar.target());
  const GradedMap one_c = GradedMap::identity(A, Level::Bar, fbar.source());
  const GradedMap eps = compose(fbar, gprime) - one_d;
  require(reduce(A, eps, Level::Mid).is_zero() && reduce(A, compose(gprime, fbar) - one_c, Level::Mid).is_zero(),
          Errc::NotInverse, "reductions are not inverse to each other");
  GradedMap g = compose(gprime, one_d - eps);
  require(compose(fbar, g) == one_d && compose(g, fbar) == one_c, Errc::NotInverse, "ḡ′(1 − ε) is not a two-sided inverse");
  return g;
}

// ---------------------------------------------------------------------- chains

ChainReport lift_along_chain(const std::vector<DeformedAlgebra>& steps, const PreComplex& C) {
  ChainReport out;
  PreComplex cur = C;
  for (std::size_t i = 0; i < steps.size(); ++i) {
    const DeformedAlgebra& A = steps[i];
    if (i > 0) cur = make_precomplex(relabel(A, cur.d, Level::Mid));
    DifferentialProblem P(A, cur);
    LiftReport r = lift_differential(P);
    const bool ok = r.lifts();
    if (ok) cur = make_precomplex(*r.witness);
    out.steps.push_back(std::move(r));
    if (!ok) {
      out.obstructed_step = static_cast<int>(i);
      return out;
    }
  }
  out.top = cur;
  return out;
}

}  // namespace clift
