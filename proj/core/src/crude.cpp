#include "clift/crude.hpp"

#include <unordered_set>

namespace clift {

namespace {

std::string vec_key(const std::vector<int>& v) { return std::string(v.begin(), v.end()); }

}  // namespace

void HomotopyEquivData::validate(const DeformedAlgebra& A) const {
  require(C.level() == Level::Mid && D.level() == Level::Mid, Errc::LevelMismatch,
          "homotopy equivalence data lives at the middle level");
  require(C.is_differential() && D.is_differential(), Errc::NotHomotopyEquivalence, "endpoints must be complexes");
  require(f.degree() == 0 && g.degree() == 0 && H.degree() == -1 && K.degree() == -1, Errc::NotHomotopyEquivalence,
          "f, g have degree 0 and H, K degree −1");
  require(delta_apply(C, D, f).is_zero(), Errc::NotHomotopyEquivalence, "δf != 0");
  require(delta_apply(D, C, g).is_zero(), Errc::NotHomotopyEquivalence, "δg != 0");
  const GradedMap one_c = GradedMap::identity(A, Level::Mid, C.obj);
  const GradedMap one_d = GradedMap::identity(A, Level::Mid, D.obj);
  require(delta_apply(C, C, H) == one_c - compose(g, f), Errc::NotHomotopyEquivalence, "δH != 1 − gf");
  require(delta_apply(D, D, K) == one_d - compose(f, g), Errc::NotHomotopyEquivalence, "δK != 1 − fg");
}

KRepair repair_k(const HomotopyEquivData& E) {
  const GradedMap defect = compose(E.H, E.g) - compose(E.g, E.K);
  return KRepair{E.K + compose(E.f, defect), compose(E.H, defect)};
}

CrudeResult crude_lift(const DeformedAlgebra& A, const HomotopyEquivData& E, const GradedMap& dD_bar, bool keep_trace) {
  E.validate(A);
  require(dD_bar.level() == Level::Bar, Errc::LevelMismatch, "d̄_D must be at the bar level");
  require(reduce(A, dD_bar, Level::Mid) == E.D.d, Errc::IncompatibleGradedLifts, "d̄_D does not reduce to d_D");
  require(compose(dD_bar, dD_bar).is_zero(), Errc::NotADifferential, "d̄_D² != 0");

  const PreComplex Dbar = make_precomplex(dD_bar);
  const GradedMap one_c = GradedMap::identity(A, Level::Bar, E.C.obj);
  const GradedMap one_d = GradedMap::identity(A, Level::Bar, E.D.obj);

  CrudeResult r;
  r.dC = graded_lift(A, E.C.d);
  r.f = graded_lift(A, E.f);
  r.g = graded_lift(A, E.g);
  r.H = graded_lift(A, E.H);
  r.K = graded_lift(A, E.K);

  const auto Cbar = [&] { return make_precomplex(r.dC); };
  const auto snapshot = [&](const char* name) {
    if (!keep_trace) return;
    const PreComplex C = Cbar();
    r.trace.push_back(CrudeStage{name, r.dC, r.f, r.g, r.H, r.K, compose(r.dC, r.dC).is_zero(),
                                 delta_apply(C, Dbar, r.f).is_zero(), delta_apply(Dbar, C, r.g).is_zero()});
  };
  const auto assert_stage = [](bool ok, const char* what) {
    require(ok, Errc::InternalObstruction, std::string("crude lift: ") + what);
  };
  snapshot("graded lift");

  // (i) ε = −δ̄f̄ satisfies f̄ξ = δ̄ε for ξ = d̄_C², so η = ḡε + H̄ξ has δ̄η = ξ.
  {
    const PreComplex C = Cbar();
    const GradedMap xi = compose(r.dC, r.dC);
    const GradedMap eps = -delta_apply(C, Dbar, r.f);
    const GradedMap eta = compose(r.g, eps) + compose(r.H, xi);
    r.dC = r.dC - eta;
    assert_stage(compose(r.dC, r.dC).is_zero(), "stage (i) left d̄_C² != 0");
  }
  snapshot("(i) d_C squared zero");

  // (ii) ξ′ = δ̄f̄; d̄_C += ḡξ′ leaves δ̄f̄ = δ̄(K̄ξ′), removed from f̄.
  {
    const GradedMap xi = delta_apply(Cbar(), Dbar, r.f);
    r.dC = r.dC + compose(r.g, xi);
    r.f = r.f - compose(r.K, xi);
    assert_stage(compose(r.dC, r.dC).is_zero(), "stage (ii) broke d̄_C² = 0");
    assert_stage(delta_apply(Cbar(), Dbar, r.f).is_zero(), "stage (ii) left δ̄f̄ != 0");
  }
  snapshot("(ii) f closed");

  // (iii) ξ″ = δ̄ḡ = δ̄η″ for η″ = −ḡμ_K + H̄ξ″.
  {
    const PreComplex C = Cbar();
    const GradedMap xi = delta_apply(Dbar, C, r.g);
    const GradedMap mu_k = one_d - compose(r.f, r.g) - delta_apply(Dbar, Dbar, r.K);
    const GradedMap eta = -compose(r.g, mu_k) + compose(r.H, xi);
    r.g = r.g - eta;
    assert_stage(delta_apply(Dbar, C, r.g).is_zero(), "stage (iii) left δ̄ḡ != 0");
  }
  snapshot("(iii) g closed");

  // (iv) K′ = K + f(Hg − gK).
  r.K_prime = repair_k(E).K_prime;
  r.K = graded_lift(A, r.K_prime);
  snapshot("(iv) K repaired");

  // (v) ḡ += μ_H ḡ, then absorb the remaining defects into H̄ and K̄.
  {
    const PreComplex C = Cbar();
    const GradedMap mu_h = one_c - compose(r.g, r.f) - delta_apply(C, C, r.H);
    r.g = r.g + compose(mu_h, r.g);
    assert_stage(delta_apply(Dbar, C, r.g).is_zero(), "stage (v) broke δ̄ḡ = 0");

    const KernelComplex KC(A, reduce(A, C, Level::Base), reduce(A, C, Level::Base));
    const GradedMap mu_h2 = one_c - compose(r.g, r.f) - delta_apply(C, C, r.H);
    const auto rho_h = is_coboundary(KC, KC.into_kernel(mu_h2), 0);
    assert_stage(rho_h.has_value(), "stage (v) μ_H is not a coboundary");
    r.H = r.H + KC.out_of_kernel(*rho_h, -1);

    const PreComplex D0 = reduce(A, Dbar, Level::Base);
    const KernelComplex KD(A, D0, D0);
    const GradedMap mu_k = one_d - compose(r.f, r.g) - delta_apply(Dbar, Dbar, r.K);
    const auto rho_k = is_coboundary(KD, KD.into_kernel(mu_k), 0);
    assert_stage(rho_k.has_value(), "stage (v) μ_K is not a coboundary");
    r.K = r.K + KD.out_of_kernel(*rho_k, -1);
  }
  snapshot("(v) homotopies solved");

  const auto failures = crude_postcondition_failures(A, E, dD_bar, r);
  assert_stage(failures.empty(), failures.empty() ? "" : failures.front().c_str());
  return r;
}

std::vector<std::string> crude_postcondition_failures(const DeformedAlgebra& A, const HomotopyEquivData& E,
                                                      const GradedMap& dD_bar, const CrudeResult& r) {
  std::vector<std::string> out;
  const PreComplex C = make_precomplex(r.dC);
  const PreComplex D = make_precomplex(dD_bar);
  const GradedMap one_c = GradedMap::identity(A, Level::Bar, E.C.obj);
  const GradedMap one_d = GradedMap::identity(A, Level::Bar, E.D.obj);
  if (!compose(r.dC, r.dC).is_zero()) out.push_back("d̄_C² != 0");
  if (!delta_apply(C, D, r.f).is_zero()) out.push_back("δ̄f̄ != 0");
  if (!delta_apply(D, C, r.g).is_zero()) out.push_back("δ̄ḡ != 0");
  if (!(delta_apply(C, C, r.H) == one_c - compose(r.g, r.f))) out.push_back("δ̄H̄ != 1 − ḡf̄");
  if (!(delta_apply(D, D, r.K) == one_d - compose(r.f, r.g))) out.push_back("δ̄K̄ != 1 − f̄ḡ");
  if (!(reduce(A, r.dC, Level::Mid) == E.C.d)) out.push_back("d̄_C does not reduce to d_C");
  if (!(reduce(A, r.f, Level::Mid) == E.f)) out.push_back("f̄ does not reduce to f");
  if (!(reduce(A, r.g, Level::Mid) == E.g)) out.push_back("ḡ does not reduce to g");
  if (!(reduce(A, r.H, Level::Mid) == E.H)) out.push_back("H̄ does not reduce to H");
  if (!(reduce(A, r.K, Level::Mid) == r.K_prime)) out.push_back("K̄ does not reduce to K′");
  return out;
}

CrudeResult strictify_homotopy_lift(const DeformedAlgebra& A, const HomotopyEquivData& E, const GradedMap& dD_bar) {
  return crude_lift(A, E, dD_bar);
}

LiftReport classify_homotopy_lifts(const DeformedAlgebra& A, const PreComplex& C, std::uint64_t cap) {
  const DifferentialProblem P(A, C);
  LiftReport r = lift_differential(P);
  if (r.lifts()) r = classify_lifts(P, cap);
  return r;
}

// ------------------------------------------------------------ H⁻¹ guard

namespace {

/// Every degree-n map C → D at the middle level, in index order.
std::vector<GradedMap> enumerate_maps(const DeformedAlgebra& A, const PreComplex& C, const PreComplex& D, int n,
                                      std::uint64_t cap) {
  GradedMap proto = GradedMap::zero(A, Level::Mid, C.obj, D.obj, n);
  const std::size_t entries = proto.flat_size() / static_cast<std::size_t>(A.width(Level::Mid));
  const auto& g = A.table(Level::Mid)->group();
  std::uint64_t count = 1;
  for (std::size_t e = 0; e < entries; ++e) {
    if (count > cap / std::max<std::uint64_t>(g.cardinality(), 1)) fail(Errc::GuardUndecidable, "Hom space exceeds the enumeration cap");
    count *= g.cardinality();
  }
  std::vector<GradedMap> out;
  out.reserve(count);
  const int w = A.width(Level::Mid);
  std::vector<int> flat(proto.flat_size());
  for (std::uint64_t idx = 0; idx < count; ++idx) {
    std::uint64_t rest = idx;
    for (std::size_t e = entries; e-- > 0;) {
      const Elem x = g.decode(rest % g.cardinality());
      rest /= g.cardinality();
      std::copy(x.begin(), x.end(), flat.begin() + static_cast<std::ptrdiff_t>(e * w));
    }
    proto.assign_flat(flat);
    out.push_back(proto);
  }
  return out;
}

}  // namespace

bool hminus1_vanishes(const DeformedAlgebra& A, const PreComplex& C, const PreComplex& D, std::uint64_t cap) {
  require(C.level() == Level::Mid && D.level() == Level::Mid, Errc::LevelMismatch, "the guard is decided at the middle level");
  const std::vector<GradedMap> m1 = enumerate_maps(A, C, D, -1, cap);
  const std::vector<GradedMap> m2 = enumerate_maps(A, C, D, -2, cap);
  std::unordered_set<std::string> boundaries;
  for (const GradedMap& h : m2) boundaries.insert(vec_key(delta_apply(C, D, h).flatten()));
  for (const GradedMap& h : m1)
    if (delta_apply(C, D, h).is_zero() && !boundaries.count(vec_key(h.flatten()))) return false;
  return true;
}

HomotopyMapReport classify_homotopy_map_lifts(const MapProblem& P, std::uint64_t cap) {
  HomotopyMapReport out;
  const PreComplex C = reduce(P.A, P.Cbar, Level::Mid);
  const PreComplex D = reduce(P.A, P.Dbar, Level::Mid);
  out.guard = hminus1_vanishes(P.A, C, D, cap) ? GuardStatus::Verified : GuardStatus::NotGuaranteed;
  out.report = obstruct_and_lift_map(P, out.guard == GuardStatus::Verified, cap);
  return out;
}

Alignment align_homotopic_lift(const MapProblem& P, const GradedMap& gbar, const GradedMap& H) {
  const int n = P.f.degree();
  require(gbar.level() == Level::Bar && gbar.degree() == n, Errc::ShapeMismatch, "ḡ must be a bar map of the same degree");
  require(delta_apply(P.Cbar, P.Dbar, gbar).is_zero(), Errc::NotCochainMap, "ḡ is not a cochain map");
  const PreComplex C = reduce(P.A, P.Cbar, Level::Mid);
  const PreComplex D = reduce(P.A, P.Dbar, Level::Mid);
  const GradedMap g = reduce(P.A, gbar, Level::Mid);
  require(delta_apply(C, D, H) == g - P.f, Errc::NotAHomotopy, "δH != g − f");

  const LiftReport lf = obstruct_and_lift_map(P);
  require(lf.lifts(), Errc::InternalObstruction, "f is homotopic to a liftable map but does not lift");
  GradedMap fbar = *lf.witness;
  const GradedMap Hbar0 = graded_lift(P.A, H);
  const FpVector z = P.K.into_kernel(gbar - fbar - delta_apply(P.Cbar, P.Dbar, Hbar0));
  const CohClass o = coh_class(P.K, z, n);
  fbar = fbar + P.K.out_of_kernel(o.rep, n);
  const FpVector rest = sub(z, o.rep, P.K.prime());
  const auto y = is_coboundary(P.K, rest, n);
  require(y.has_value(), Errc::InternalObstruction, "aligned homotopy defect is not a coboundary");
  GradedMap Hbar = Hbar0 + P.K.out_of_kernel(*y, n - 1);
  require(delta_apply(P.Cbar, P.Dbar, Hbar) == gbar - fbar, Errc::InternalObstruction, "alignment failed");
  return Alignment{std::move(fbar), std::move(Hbar)};
}

}  // namespace clift
