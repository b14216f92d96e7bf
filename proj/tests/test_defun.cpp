#include "doctest.h"
#include "instances.hpp"

using namespace clift;

namespace {

BaseComplex zero_base(int p, GradedObject obj) {
  const DeformedAlgebra A = mk_scalar_algebra(mk_tower(TowerKind::TruncPoly, p, {1, 1, 0}));
  return make_base_complex(p, 1, {1}, GradedMap::zero(A, Level::Base, obj, obj, 1));
}

BaseComplex random_base(Rng& rng, int p) {
  const DeformedAlgebra A = random_algebra(rng, mk_tower(TowerKind::TruncPoly, p, {1, 1, 0}), AlgebraKind::Trivial);
  const PreComplex C = random_complex(rng, A, 2, 3);
  return base_complex_of(A, reduce(A, C, Level::Base));
}

// A lift over F_p[t]/(t^2) of ranks (1,1,1) with entries a·t, b·t.
GradedMap first_order(int p, int a, int b) {
  const DeformedAlgebra A = mk_scalar_algebra(mk_tower(TowerKind::TruncPoly, p, {2, 1, 0}));
  return fixtures::bar_chain(A, fixtures::ranks111(), {{0, a}, {0, b}});
}

}  // namespace

TEST_CASE("tangent dimensions") {
  CHECK(tangent_dim(zero_base(2, GradedObject{0, {2}})) == 0);
  CHECK(tangent_dim(zero_base(2, GradedObject{0, {1, 1}})) == 1);
  CHECK(tangent_dim(zero_base(2, fixtures::ranks111())) == 2);
}

TEST_CASE("functor values on small rings") {
  const BaseComplex bc = zero_base(2, GradedObject{0, {1, 1}});
  const ArtinRing k = artin_ring(prime_field(2));
  CHECK(functor_eval(FunctorTag::F, k, bc).size() == 1);
  const ArtinRing eps = artin_ring(trunc_poly_ring(2, 2));
  CHECK(functor_eval(FunctorTag::F0, eps, bc).size() == 2);
  CHECK(functor_eval(FunctorTag::F, eps, bc).size() == 2);
  const ArtinRing dd = artin_ring(square_zero_ring(2, 2));
  CHECK(functor_eval(FunctorTag::F0, dd, bc).size() == 4);
}

TEST_CASE("non F_p-algebras are rejected") {
  try {
    artin_ring(zmod_ring(2, 2));
    FAIL("expected InvalidArgument");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::InvalidArgument);
  }
}

TEST_CASE("|F(k[e])| = p^tangent_dim on random complexes") {
  Rng rng(61);
  for (int trial = 0; trial < 20; ++trial) {
    const int p = trial % 2 ? 3 : 2;
    const BaseComplex bc = random_base(rng, p);
    const int t = tangent_dim(bc);
    if (t > 8) continue;
    CHECK(functor_eval(FunctorTag::F, artin_ring(trunc_poly_ring(p, 2)), bc).size() ==
          fixtures::ipow(static_cast<std::uint64_t>(p), t));
    CHECK(functor_eval(FunctorTag::F, artin_ring(prime_field(p)), bc).size() == 1);
  }
}

TEST_CASE("F and F1 agree, and the filtration matches the strict search") {
  Rng rng(67);
  int done = 0;
  for (int trial = 0; trial < 60 && done < 20; ++trial) {
    const int p = trial % 2 ? 3 : 2;
    const BaseComplex bc = random_base(rng, p);
    const FiniteRing R = trial % 3 == 0 ? square_zero_ring(p, 2) : trunc_poly_ring(p, 2 + trial % 2);
    if (R.cardinality() > 27) continue;
    const ArtinRing AR = artin_ring(R);
    FunctorValue f, f1;
    FunctorCaps caps;
    caps.max_lift_space = 1u << 13;
    try {
      if (functor_eval(FunctorTag::F0, AR, bc, caps).size() > 256) continue;
      f = functor_eval(FunctorTag::F, AR, bc, caps);
      f1 = functor_eval(FunctorTag::F1, AR, bc, caps);
    } catch (const Error& e) {
      if (e.code() == Errc::CapExceeded) continue;
      throw;
    }
    ++done;
    CHECK(f.size() == f1.size());
    CHECK(f.classes == f1.classes);
    if (f.lifts.size() <= 16)
      for (std::size_t i = 0; i < f.lifts.size(); ++i)
        for (std::size_t j = i; j < f.lifts.size(); ++j)
          CHECK(strictly_equivalent(AR, bc, f.lifts[i], f.lifts[j]) ==
                strictly_equivalent_oracle(AR, bc, f.lifts[i], f.lifts[j]));
  }
  CHECK(done >= 20);
}

TEST_CASE("Schlessinger checks") {
  const BaseComplex bc = zero_base(2, GradedObject{0, {1, 1}});
  const ArtinRing eps = artin_ring(trunc_poly_ring(2, 2));
  const ArtinRing del = artin_ring(square_zero_ring(2, 1));
  const auto r = schlessinger_check(bc, {RingTriple{eps.residue, del.residue}});
  REQUIRE(r.size() == 1);
  CHECK(r[0].f0_fiber == 4);
  CHECK(r[0].f0_pairs == 4);
  CHECK(r[0].f0_bijective);
  CHECK(r[0].s1_applicable);
  CHECK(r[0].s1_surjective);
  CHECK(r[0].s2_applicable);
  CHECK(r[0].s2_bijective);

  const ArtinRing k = artin_ring(prime_field(2));
  const auto t = schlessinger_check(bc, {RingTriple{k.residue, k.residue}});
  CHECK(t[0].f0_fiber == 1);
  CHECK(t[0].f0_bijective);

  // (t, t) over t^3 → t^2: no element of F over t^3 restricts to it, so the
  // smoothness premises for that pair are absent and the check passes.
  const BaseComplex b3 = zero_base(2, fixtures::ranks111());
  const ArtinRing cube = artin_ring(trunc_poly_ring(2, 3));
  const RingHom to_dual = quotient_map(cube.ring, ideal_power(cube, 2));
  std::vector<Elem> id;
  for (int i = 0; i < to_dual.target().dim(); ++i) id.push_back(to_dual.target().table().basis(i));
  CHECK_NOTHROW(schlessinger_check(b3, {RingTriple{to_dual, RingHom(to_dual.target(), to_dual.target(), id)}}));
}

TEST_CASE("order-by-order extension") {
  const BaseComplex bc = zero_base(2, fixtures::ranks111());
  SUBCASE("(t, t) is obstructed at order 2") {
    const ExtendResult r = extend_order(bc, first_order(2, 1, 1), 2);
    CHECK(r.order == 3);
    CHECK_FALSE(r.report.lifts());
    CHECK(r.report.obstruction.degree == 2);
    CHECK(r.report.obstruction.rep == FpVector{1});
  }
  SUBCASE("(t, 0) extends with zero correction") {
    GradedMap cur = first_order(2, 1, 0);
    for (int n = 2; n <= 4; ++n) {
      const ExtendResult r = extend_order(bc, cur, n);
      REQUIRE(r.report.lifts());
      CHECK(r.report.witness->at(0).get(0, 0)[1] == 1);
      CHECK(r.report.witness->at(1).is_zero());
      cur = *r.report.witness;
    }
  }
  SUBCASE("two-term complexes always extend") {
    const BaseComplex b2 = zero_base(3, GradedObject{0, {1, 1}});
    const DeformedAlgebra A = mk_scalar_algebra(mk_tower(TowerKind::TruncPoly, 3, {2, 1, 0}));
    for (int a = 0; a < 3; ++a) {
      const GradedMap d = fixtures::bar_chain(A, GradedObject{0, {1, 1}}, {{0, a}});
      CHECK(extend_order(b2, d, 2).report.lifts());
    }
  }
  SUBCASE("mismatched lift") {
    const BaseComplex b1 = zero_base(2, fixtures::ranks111());
    const DeformedAlgebra A = mk_scalar_algebra(mk_tower(TowerKind::TruncPoly, 2, {2, 1, 0}));
    const GradedMap d = fixtures::bar_chain(A, fixtures::ranks111(), {{1, 0}, {0, 0}});
    CHECK_THROWS_AS(extend_order(b1, d, 2), Error);
  }
}
