#include "doctest.h"
#include "instances.hpp"

using namespace clift;

TEST_CASE("zero differentials give delta = 0") {
  const DeformedAlgebra A = mk_scalar_algebra(fixtures::z4_tower());
  const GradedObject obj = fixtures::ranks111();
  const PreComplex C{obj, GradedMap::zero(A, Level::Mid, obj, obj, 1)};
  for (const auto& f : fixtures::all_maps(A, Level::Mid, obj, obj, 0)) CHECK(delta_apply(C, C, f).is_zero());
}

TEST_CASE("the differential is a cocycle and the identity a cochain map") {
  const DeformedAlgebra A = fixtures::mf_algebra();
  const PreComplex C = make_complex(fixtures::constant_chain(A, Level::Base, fixtures::ranks111(), {0, 1}));
  CHECK(delta_apply(C, C, C.d).is_zero());
  CHECK(delta_apply(C, C, GradedMap::identity(A, Level::Base, C.obj)).is_zero());
}

TEST_CASE("pre-complex versus complex") {
  const DeformedAlgebra A = fixtures::mf_algebra();
  const GradedMap dbar = fixtures::constant_chain(A, Level::Bar, fixtures::ranks111(), {0, 0, 1, 0});
  CHECK_NOTHROW(make_precomplex(dbar));
  try {
    make_complex(dbar);
    FAIL("expected NotADifferential");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::NotADifferential);
  }
}

TEST_CASE("Hom dimensions") {
  SUBCASE("ranks (1,1) over F2") {
    const DeformedAlgebra A = mk_scalar_algebra(mk_tower(TowerKind::TruncPoly, 2, {1, 1, 0}));
    const GradedObject obj{0, {1, 1}};
    const PreComplex C{obj, GradedMap::zero(A, Level::Base, obj, obj, 1)};
    const HomComplex H = hom_complex(C, C);
    CHECK(H.dim(-1) == 1);
    CHECK(H.dim(0) == 2);
    CHECK(H.dim(1) == 1);
    CHECK(H.dim(2) == 0);
  }
  SUBCASE("ranks (1,1,1) over F2[x]/(x^2)") {
    const DeformedAlgebra A = fixtures::mf_algebra();
    const GradedObject obj = fixtures::ranks111();
    const PreComplex C{obj, GradedMap::zero(A, Level::Base, obj, obj, 1)};
    const HomComplex H = hom_complex(C, C);
    CHECK(H.dim(1) == 4);
    CHECK(H.dim(2) == 2);
  }
  SUBCASE("shift compatibility") {
    const DeformedAlgebra A = mk_scalar_algebra(fixtures::z4_tower());
    const GradedObject C{-1, {2, 1, 1}}, D{0, {1, 2, 1}};
    const PreComplex PC{C, GradedMap::zero(A, Level::Base, C, C, 1)};
    for (int n = -3; n <= 3; ++n) {
      const GradedObject Dn{D.lo - n, D.ranks};
      const PreComplex PD{D, GradedMap::zero(A, Level::Base, D, D, 1)};
      const PreComplex PDn{Dn, GradedMap::zero(A, Level::Base, Dn, Dn, 1)};
      CHECK(hom_complex(PC, PD).dim(n) == hom_complex(PC, PDn).dim(0));
    }
  }
}

TEST_CASE("canonical graded lift of (x,x) squares to e") {
  const DeformedAlgebra A = fixtures::mf_algebra();
  const GradedMap d = fixtures::constant_chain(A, Level::Mid, fixtures::ranks111(), {0, 1});
  const GradedMap dbar = graded_lift(A, d);
  CHECK(dbar == fixtures::constant_chain(A, Level::Bar, fixtures::ranks111(), {0, 0, 1, 0}));
  const GradedMap sq = compose(dbar, dbar);
  CHECK(sq.at(0).get(0, 0) == Elem{0, 1, 0, 0});
  CHECK(reduce(A, dbar, Level::Mid) == d);
  CHECK(graded_lift(A, GradedMap::zero(A, Level::Mid, d.source(), d.target(), 1)).is_zero());
  const GradedMap one = GradedMap::identity(A, Level::Mid, d.source());
  CHECK(graded_lift(A, one) == GradedMap::identity(A, Level::Bar, d.source()));
}

TEST_CASE("delta squares to zero and satisfies Leibniz on random complexes") {
  Rng rng(11);
  for (int trial = 0; trial < 40; ++trial) {
    const int p = trial % 2 ? 3 : 2;
    const Tower T = random_tower(rng, p, static_cast<TowerKind>(trial % 3));
    const DeformedAlgebra A = random_algebra(rng, T, trial % 4 < 2 ? AlgebraKind::Trivial : AlgebraKind::Custom);
    const PreComplex C = random_complex(rng, A, 2, 3);
    const PreComplex D = random_complex(rng, A, 2, 3);
    const PreComplex E = random_complex(rng, A, 2, 3);
    REQUIRE(C.is_differential());
    for (int n = -1; n <= 1; ++n) {
      const GradedMap f = random_map(rng, A, Level::Mid, C.obj, D.obj, n);
      CHECK(delta_apply(C, D, delta_apply(C, D, f)).is_zero());
      for (int m = -1; m <= 1; ++m) {
        const GradedMap g = random_map(rng, A, Level::Mid, D.obj, E.obj, m);
        const GradedMap lhs = delta_apply(C, E, compose(g, f));
        const GradedMap rhs = compose(delta_apply(D, E, g), f) + compose(g, delta_apply(C, D, f)).scaled(m % 2 ? -1 : 1);
        CHECK(lhs == rhs);
      }
    }
  }
}

TEST_CASE("shape and level mismatches are errors") {
  const DeformedAlgebra A = fixtures::mf_algebra();
  const GradedObject a{0, {1, 1}}, b{0, {2}};
  const GradedMap f = GradedMap::zero(A, Level::Mid, a, a, 0);
  const GradedMap g = GradedMap::zero(A, Level::Mid, b, b, 0);
  const GradedMap h = GradedMap::zero(A, Level::Bar, a, a, 0);
  CHECK_THROWS_AS(f + g, Error);
  CHECK_THROWS_AS(f + h, Error);
}
