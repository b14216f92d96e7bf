#include "doctest.h"
#include "instances.hpp"

using namespace clift;

TEST_CASE("Z/4 instance: four lifts in four classes") {
  const DifferentialProblem P = fixtures::z4_problem();
  const OracleResult r = oracle_differential(P);
  CHECK(r.space_size == 4);
  CHECK(r.witnesses.size() == 4);
  CHECK(r.partition.size() == 4);
  for (const auto& b : r.partition) CHECK(b.size() == 1);
  for (const auto& w : r.witnesses) CHECK(compose(w, w).is_zero());
}

TEST_CASE("matrix factorization: none of 16 graded lifts is a differential") {
  const OracleResult r = oracle_differential(fixtures::mf_problem());
  CHECK(r.space_size == 16);
  CHECK(r.witnesses.empty());
}

TEST_CASE("sigma-lift is a witness for trivial deformations over square-zero towers") {
  Rng rng(17);
  for (int trial = 0; trial < 10; ++trial) {
    const DeformedAlgebra A =
        random_algebra(rng, mk_tower(TowerKind::SquareZero, 2 + trial % 2, {0, 0, 1}), AlgebraKind::Trivial);
    const DifferentialProblem P(A, random_complex(rng, A, 1, 3));
    const OracleResult r = oracle_differential(P, {std::uint64_t{1} << 16, 0, false});
    REQUIRE_FALSE(r.witness_indices.empty());
    CHECK(r.witness_indices.front() == 0);
    CHECK(r.witnesses.front() == P.dbar);
  }
}

TEST_CASE("connecting cells of the zero lift") {
  const DifferentialProblem P = fixtures::z4_problem();
  const GradedMap zero = GradedMap::zero(P.A, Level::Bar, P.C.obj, P.C.obj, 1);
  const CellCount c = oracle_connecting_cells(P, zero, zero);
  CHECK(c.cells == 8);
  CHECK(c.classes == 8);
}

TEST_CASE("map and homotopy oracles in the Z/4 instance") {
  const DifferentialProblem P = fixtures::z4_problem();
  const GradedObject obj = P.C.obj;
  const GradedMap d0 = fixtures::bar_chain(P.A, obj, {{0}, {0}}), d1 = fixtures::bar_chain(P.A, obj, {{2}, {0}});
  const MapProblem M(P.A, PreComplex{obj, d0}, PreComplex{obj, d1}, GradedMap::identity(P.A, Level::Mid, obj));
  CHECK(oracle_map(M).witnesses.empty());
  const MapProblem same(P.A, PreComplex{obj, d0}, PreComplex{obj, d0}, GradedMap::identity(P.A, Level::Mid, obj));
  const OracleResult r = oracle_map(same);
  CHECK(r.witnesses.size() == 8);
  CHECK(r.partition.size() == 8);

  const GradedMap one = GradedMap::identity(P.A, Level::Bar, obj);
  const GradedMap d2 = fixtures::bar_chain(P.A, obj, {{2}, {2}});
  const HomotopyProblem H(P.A, PreComplex{obj, d0}, PreComplex{obj, d2},
                          GradedMap::zero(P.A, Level::Mid, obj, obj, -1), one, one);
  const OracleResult h = oracle_homotopy(H);
  CHECK(h.space_size == 4);
  // δ̄y = d̄′y + y·d̄ for y = 2u of degree −1 vanishes (2·2 = 0), so every y works.
  CHECK(h.witnesses.size() == 4);
}

TEST_CASE("cap is enforced") {
  const DifferentialProblem P = fixtures::mf_problem();
  try {
    oracle_differential(P, {8, 0, true});
    FAIL("expected CapExceeded");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::CapExceeded);
  }
}

TEST_CASE("parallel runs match the sequential run") {
  for (std::uint64_t seed = 0; seed < 12; ++seed) {
    InstanceSpec spec;
    spec.seed = seed;
    spec.p = seed % 2 ? 3 : 2;
    spec.tower = static_cast<TowerKind>(seed % 3);
    const Instance inst = gen_instance(spec);
    const DifferentialProblem P(inst.A, inst.C);
    const OracleResult a = oracle_differential(P, {std::uint64_t{1} << 20, 1, true});
    const OracleResult b = oracle_differential(P, {std::uint64_t{1} << 20, 8, true});
    CHECK(a.witness_indices == b.witness_indices);
    CHECK(a.partition == b.partition);
    CHECK(a.digest == b.digest);
  }
}

TEST_CASE("generator is deterministic and valid") {
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    InstanceSpec spec;
    spec.seed = seed;
    spec.tower = static_cast<TowerKind>(seed % 3);
    spec.algebra = seed % 2 ? AlgebraKind::Custom : AlgebraKind::Trivial;
    const Instance a = gen_instance(spec), b = gen_instance(spec);
    CHECK(digest_of({&a.C.d}) == digest_of({&b.C.d}));
    CHECK(a.C.is_differential());
    CHECK(a.C.obj.total_rank() > 0);
    CHECK(a.C.obj.ranks.size() <= 4);
  }
  InstanceSpec s3;
  s3.p = 3;
  CHECK(gen_instance(s3).A.prime() == 3);
}

TEST_CASE("random homotopy equivalences validate") {
  Rng rng(23);
  for (int trial = 0; trial < 30; ++trial) {
    const int p = trial % 2 ? 3 : 2;
    const DeformedAlgebra A =
        random_algebra(rng, random_tower(rng, p, static_cast<TowerKind>(trial % 3)), AlgebraKind::Trivial);
    const PreComplex C = random_complex(rng, A, 1, 2);
    CHECK_NOTHROW(random_homotopy_equivalence(rng, A, C));
  }
}
