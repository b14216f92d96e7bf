#include <set>

#include "doctest.h"
#include "instances.hpp"

using namespace clift;

namespace {

struct Sample {
  DeformedAlgebra A;
  HomotopyEquivData E;
  GradedMap dD_bar;
};

// A random equivalence whose target lifts; nullopt when D is obstructed.
std::optional<Sample> sample(Rng& rng, int p, TowerKind kind, AlgebraKind ak) {
  const DeformedAlgebra A = random_algebra(rng, random_tower(rng, p, kind), ak);
  const PreComplex C = random_complex(rng, A, 1, 2);
  const HomotopyEquivData E = random_homotopy_equivalence(rng, A, C);
  const LiftReport r = lift_differential(DifferentialProblem(A, E.D));
  if (!r.lifts()) return std::nullopt;
  return Sample{A, E, *r.witness};
}

}  // namespace

TEST_CASE("identity equivalence passes through unchanged") {
  const DifferentialProblem P = fixtures::z4_problem();
  const auto& A = P.A;
  const GradedObject obj = P.C.obj;
  const HomotopyEquivData E{P.C, P.C, GradedMap::identity(A, Level::Mid, obj), GradedMap::identity(A, Level::Mid, obj),
                            GradedMap::zero(A, Level::Mid, obj, obj, -1), GradedMap::zero(A, Level::Mid, obj, obj, -1)};
  const GradedMap dD = fixtures::bar_chain(A, obj, {{2}, {0}});
  const CrudeResult r = crude_lift(A, E, dD);
  CHECK(r.dC == dD);
  CHECK(r.f == GradedMap::identity(A, Level::Bar, obj));
  CHECK(r.g == GradedMap::identity(A, Level::Bar, obj));
  CHECK(r.H.is_zero());
  CHECK(r.K.is_zero());
  CHECK(crude_postcondition_failures(A, E, dD, r).empty());
}

TEST_CASE("invalid equivalence data is rejected") {
  const DifferentialProblem P = fixtures::z4_problem();
  const auto& A = P.A;
  const GradedObject obj = P.C.obj;
  const HomotopyEquivData E{P.C, P.C, GradedMap::identity(A, Level::Mid, obj), GradedMap::zero(A, Level::Mid, obj, obj, 0),
                            GradedMap::zero(A, Level::Mid, obj, obj, -1), GradedMap::zero(A, Level::Mid, obj, obj, -1)};
  try {
    E.validate(A);
    FAIL("expected NotHomotopyEquivalence");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::NotHomotopyEquivalence);
  }
}

TEST_CASE("crude lift on random equivalences") {
  Rng rng(101);
  int done = 0;
  for (int trial = 0; trial < 120 && done < 40; ++trial) {
    const int p = trial % 2 ? 3 : 2;
    const auto kind = static_cast<TowerKind>(trial % 3);
    auto s = sample(rng, p, kind, trial % 4 < 2 ? AlgebraKind::Trivial : AlgebraKind::Custom);
    if (!s) continue;
    ++done;
    const CrudeResult r = crude_lift(s->A, s->E, s->dD_bar, true);
    CHECK(crude_postcondition_failures(s->A, s->E, s->dD_bar, r).empty());
    REQUIRE(r.trace.size() >= 5);
    CHECK(r.trace.back().dC_squared_zero);
    CHECK(r.trace.back().f_closed);
    CHECK(r.trace.back().g_closed);
    // The result is a strict lift of C.
    CHECK(reduce(s->A, r.dC, Level::Mid) == s->E.C.d);
    const DifferentialProblem P(s->A, s->E.C);
    if (KernelEnumerator(s->A, s->E.C.obj, s->E.C.obj, 1).size() > (1u << 16)) continue;
    const OracleResult o = oracle_differential(P, {std::uint64_t{1} << 18, 0, false});
    bool member = false;
    for (const auto& w : o.witnesses) member = member || w == r.dC;
    CHECK(member);
  }
  CHECK(done >= 20);
}

TEST_CASE("K-repair") {
  Rng rng(103);
  for (int trial = 0; trial < 40; ++trial) {
    const int p = trial % 2 ? 3 : 2;
    const DeformedAlgebra A =
        random_algebra(rng, random_tower(rng, p, static_cast<TowerKind>(trial % 3)), AlgebraKind::Trivial);
    const HomotopyEquivData E = random_homotopy_equivalence(rng, A, random_complex(rng, A, 1, 2));
    const KRepair k = repair_k(E);
    const GradedMap one_d = GradedMap::identity(A, Level::Mid, E.D.obj);
    CHECK(delta_apply(E.D, E.D, k.K_prime) == one_d - compose(E.f, E.g));
    CHECK(delta_apply(E.D, E.C, k.W) == compose(E.H, E.g) - compose(E.g, k.K_prime));
  }
}

TEST_CASE("homotopy-category classification matches strict classification") {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    InstanceSpec spec;
    spec.seed = 500 + seed;
    spec.p = seed % 2 ? 3 : 2;
    spec.tower = static_cast<TowerKind>(seed % 3);
    const Instance inst = gen_instance(spec);
    const DifferentialProblem P(inst.A, inst.C);
    if (!obstruct_differential(P).is_zero()) continue;
    if (h_dim(P.K, 1) > 10) continue;
    CHECK(classify_homotopy_lifts(inst.A, inst.C).representatives.size() == classify_lifts(P).representatives.size());
  }
  const DifferentialProblem Z = fixtures::z4_problem();
  CHECK(classify_homotopy_lifts(Z.A, Z.C).representatives.size() == 4);
  const DifferentialProblem M = fixtures::mf_problem();
  CHECK_FALSE(classify_homotopy_lifts(M.A, M.C).lifts());
}

TEST_CASE("H^-1 guard") {
  const DeformedAlgebra A = mk_scalar_algebra(fixtures::dual_tower());
  const GradedObject two{0, {1, 1}};
  const PreComplex C = make_complex(GradedMap::zero(A, Level::Mid, two, two, 1));
  CHECK_FALSE(hminus1_vanishes(A, C, C));
  const GradedObject one{0, {1}};
  const PreComplex S = make_complex(GradedMap::zero(A, Level::Mid, one, one, 1));
  CHECK(hminus1_vanishes(A, S, S));
  try {
    hminus1_vanishes(A, C, C, 1);
    FAIL("expected GuardUndecidable");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::GuardUndecidable);
  }

  const GradedMap zero = GradedMap::zero(A, Level::Bar, two, two, 1);
  const MapProblem P(A, PreComplex{two, zero}, PreComplex{two, zero}, GradedMap::identity(A, Level::Mid, two));
  const HomotopyMapReport r = classify_homotopy_map_lifts(P);
  CHECK(r.guard == GuardStatus::NotGuaranteed);
  CHECK(r.report.lifts());
}

TEST_CASE("homotopy map lifts in the Z/4 instance") {
  const DifferentialProblem Z = fixtures::z4_problem();
  const GradedObject obj = Z.C.obj;
  const GradedMap d0 = fixtures::bar_chain(Z.A, obj, {{0}, {0}}), d1 = fixtures::bar_chain(Z.A, obj, {{2}, {0}});
  const MapProblem same(Z.A, PreComplex{obj, d0}, PreComplex{obj, d0}, GradedMap::identity(Z.A, Level::Mid, obj));
  const HomotopyMapReport a = classify_homotopy_map_lifts(same);
  CHECK(a.report.lifts());
  CHECK(a.report.witness == GradedMap::identity(Z.A, Level::Bar, obj));
  const MapProblem diff(Z.A, PreComplex{obj, d0}, PreComplex{obj, d1}, GradedMap::identity(Z.A, Level::Mid, obj));
  CHECK_FALSE(classify_homotopy_map_lifts(diff).report.lifts());
}

TEST_CASE("alignment of homotopic lifts") {
  Rng rng(107);
  int done = 0;
  for (int trial = 0; trial < 60 && done < 20; ++trial) {
    InstanceSpec spec;
    spec.seed = 700 + trial;
    spec.p = trial % 2 ? 3 : 2;
    spec.tower = static_cast<TowerKind>(trial % 3);
    const Instance inst = gen_instance(spec);
    const LiftReport r = lift_differential(DifferentialProblem(inst.A, inst.C));
    if (!r.lifts()) continue;
    ++done;
    const PreComplex Cb{inst.C.obj, *r.witness};
    const GradedMap H = random_map(rng, inst.A, Level::Mid, inst.C.obj, inst.C.obj, -1);
    const GradedMap g = GradedMap::identity(inst.A, Level::Mid, inst.C.obj);
    const GradedMap f = g - delta_apply(inst.C, inst.C, H);  // δH = g − f
    const MapProblem P(inst.A, Cb, Cb, f);
    const GradedMap gbar = GradedMap::identity(inst.A, Level::Bar, inst.C.obj);
    const Alignment al = align_homotopic_lift(P, gbar, H);
    CHECK(delta_apply(Cb, Cb, al.fbar).is_zero());
    CHECK(reduce(inst.A, al.fbar, Level::Mid) == f);
    CHECK(reduce(inst.A, al.Hbar, Level::Mid) == H);
    CHECK(delta_apply(Cb, Cb, al.Hbar) == gbar - al.fbar);
  }
  CHECK(done >= 10);
}
