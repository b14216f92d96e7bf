#include "doctest.h"
#include "instances.hpp"

using namespace clift;

namespace {

void check_ring_axioms(const FiniteRing& R) {
  const auto xs = R.elements();
  for (const auto& a : xs)
    for (const auto& b : xs) {
      CHECK(R.mul(a, b) == R.mul(b, a));
      for (const auto& c : xs) {
        CHECK(R.mul(R.mul(a, b), c) == R.mul(a, R.mul(b, c)));
        CHECK(R.mul(a, R.add(b, c)) == R.add(R.mul(a, b), R.mul(a, c)));
      }
    }
}

bool in(const std::vector<Elem>& xs, const Elem& x) { return std::find(xs.begin(), xs.end(), x) != xs.end(); }

}  // namespace

TEST_CASE("additive group indices follow lexicographic order") {
  AdditiveGroup g(3, {2, 1});
  CHECK(g.cardinality() == 27);
  Elem prev = g.decode(0);
  for (std::uint64_t i = 1; i < g.cardinality(); ++i) {
    Elem x = g.decode(i);
    CHECK(prev < x);
    CHECK(g.encode(x) == i);
    prev = x;
  }
  CHECK(g.order_exponent({3, 0}) == 1);
  CHECK(g.order_exponent({1, 0}) == 2);
}

TEST_CASE("built-in rings satisfy the ring axioms") {
  for (int p : {2, 3}) {
    check_ring_axioms(zmod_ring(p, 2));
    check_ring_axioms(trunc_poly_ring(p, 3));
    check_ring_axioms(square_zero_ring(p, 2));
  }
  const FiniteRing z4 = zmod_ring(2, 2);
  CHECK(z4.mul({2}, {2}) == Elem{0});
  CHECK(z4.mul({3}, {3}) == Elem{1});
}

TEST_CASE("non-prime and over-cap inputs are rejected") {
  CHECK_THROWS_AS(prime_field(4), Error);
  try {
    mk_tower(TowerKind::ZMod, 11, {2, 1, 0});
    FAIL("expected CapExceeded");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::CapExceeded);
  }
}

TEST_CASE("Z/4 tower") {
  const Tower T = fixtures::z4_tower();
  CHECK(T.bar().cardinality() == 4);
  CHECK(T.j_dim() == 1);
  CHECK(T.j_basis()[0] == Elem{2});
  const auto J = T.bar_to_mid().kernel();
  const auto I = T.bar_to_mid().then(T.mid_to_base()).kernel();
  CHECK(J.size() == 2);
  CHECK(I.size() == 2);
  CHECK(in(J, {2}));
  CHECK(in(I, {2}));
}

TEST_CASE("trivial tower has J = I = 0") {
  const Tower T = mk_tower(TowerKind::TruncPoly, 2, {1, 1, 0});
  CHECK(T.j_dim() == 0);
  CHECK(T.bar().cardinality() == 2);
}

TEST_CASE("F3[t]/(t^3) tower: J = (t^2), I = (t), IJ = 0") {
  const Tower T = mk_tower(TowerKind::TruncPoly, 3, {3, 2, 0});
  const FiniteRing& R = T.bar();
  const auto J = T.bar_to_mid().kernel();
  const auto I = T.bar_to_mid().then(T.mid_to_base()).kernel();
  CHECK(J.size() == 3);
  CHECK(I.size() == 9);
  CHECK(in(J, {0, 0, 1}));
  for (const auto& i : I)
    for (const auto& j : J) CHECK(R.is_zero(R.mul(i, j)));
}

TEST_CASE("tower parameters are validated") {
  auto code = [](auto f) {
    try {
      f();
    } catch (const Error& e) {
      return e.code();
    }
    return Errc::CheckFailed;
  };
  CHECK(code([] { mk_tower(TowerKind::ZMod, 2, {3, 1, 0}); }) == Errc::InvalidArgument);
  CHECK(code([] { mk_tower(TowerKind::ZMod, 2, {1, 2, 0}); }) == Errc::InvalidArgument);
  CHECK(code([] { mk_tower(TowerKind::TruncPoly, 2, {0, 0, 0}); }) == Errc::InvalidArgument);
}

TEST_CASE("custom tower with IJ != 0 names the pair") {
  const FiniteRing z8 = zmod_ring(2, 3), z2 = zmod_ring(2, 1);
  try {
    Tower T(z8, z2, prime_field(2), RingHom(z8, z2, {{1}}), RingHom(z2, prime_field(2), {{1}}));
    FAIL("expected IJNonzero");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::IJNonzero);
    CHECK(std::string(e.what()).find("pair") != std::string::npos);
  }
}

TEST_CASE("section is a set-theoretic splitting") {
  for (auto kind : {TowerKind::ZMod, TowerKind::TruncPoly, TowerKind::SquareZero})
    for (int p : {2, 3}) {
      const Tower T = kind == TowerKind::SquareZero ? mk_tower(kind, p, {0, 0, 2}) : mk_tower(kind, p, {2, 1, 0});
      for (const auto& x : T.mid().elements()) CHECK(T.bar_to_mid().apply(T.lift(x)) == x);
      for (const auto& j : T.bar_to_mid().kernel()) {
        const auto y = T.j_coordinates(j);
        Elem back = T.bar().zero();
        for (int s = 0; s < T.j_dim(); ++s) back = T.bar().add(back, T.bar().table().scale(y[s], T.j_basis()[s]));
        CHECK(back == j);
      }
    }
}

TEST_CASE("ring homomorphisms are checked") {
  const FiniteRing z4 = zmod_ring(2, 2);
  CHECK_THROWS_AS(RingHom(z4, z4, {{2}}), Error);
  const RingHom h(z4, prime_field(2), {{1}});
  CHECK(h.is_surjective());
  CHECK(h.kernel().size() == 2);
}

TEST_CASE("fiber product of dual numbers is F2[e,d]/(e,d)^2") {
  const Tower a = mk_tower(TowerKind::TruncPoly, 2, {2, 1, 0});
  const Tower b = mk_tower(TowerKind::SquareZero, 2, {0, 0, 1});
  const RingHom fa = a.bar_to_mid().then(a.mid_to_base());
  const RingHom fb = b.bar_to_mid();
  const FiberProduct P = ring_fiber_product(fa, fb);
  CHECK(P.ring.cardinality() == 8);
  check_ring_axioms(P.ring);
  // Brute-force match against square_zero r=2: same count of square-zero
  // elements and every product of two non-units vanishes.
  const FiniteRing S = square_zero_ring(2, 2);
  auto nonunits = [](const FiniteRing& R, const RingHom& to_k) {
    std::vector<Elem> out;
    for (const auto& x : R.elements())
      if (to_k.apply(x) == Elem{0}) out.push_back(x);
    return out;
  };
  const auto mP = nonunits(P.ring, P.to_first.then(fa));
  CHECK(mP.size() == 4);
  for (const auto& x : mP)
    for (const auto& y : mP) CHECK(P.ring.is_zero(P.ring.mul(x, y)));
  CHECK(S.cardinality() == 8);
}

TEST_CASE("fiber product of Z/4 with itself over F2") {
  const Tower T = fixtures::z4_tower();
  const RingHom f = T.bar_to_mid();
  const FiberProduct P = ring_fiber_product(f, f);
  CHECK(P.ring.cardinality() == 8);
  CHECK(has_nil_residue_kernel(P.to_first.then(f)));
  CHECK(P.to_first.then(f).kernel().size() == 4);
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) {
      if ((a - b) % 2 == 0) {
        const Elem x = P.pair({a}, {b});
        CHECK(P.to_first.apply(x) == Elem{a});
        CHECK(P.to_second.apply(x) == Elem{b});
      } else {
        CHECK_THROWS_AS(P.pair({a}, {b}), Error);
      }
    }
}

TEST_CASE("diagonal fiber product") {
  const FiniteRing R = trunc_poly_ring(3, 2);
  const RingHom id(R, R, {{1, 0}, {0, 1}});
  CHECK(ring_fiber_product(id, id).ring.cardinality() == R.cardinality());
}
