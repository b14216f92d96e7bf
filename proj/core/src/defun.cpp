#include "clift/defun.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <unordered_map>

namespace clift {

namespace {

std::string key_of(const GradedMap& m) {
  const std::vector<int> v = m.flatten();
  return std::string(v.begin(), v.end());
}

Elem fp_to_elem(const FpVector& v) { return Elem(v.begin(), v.end()); }

std::vector<Elem> span_elements(const FiniteRing& R, const std::vector<FpVector>& basis) {
  std::vector<Elem> gens;
  for (const auto& b : basis) gens.push_back(fp_to_elem(b));
  return subgroup_elements(R.table().group(), gens);
}

void require_fp_algebra(const FiniteRing& R) {
  for (int e : R.table().group().exponents())
    require(e == 1, Errc::InvalidArgument, "functor rings must be F_p-algebras (every additive order p)");
}

/// R_a → R_b induced by two quotients of R (Ker q_a ⊂ Ker q_b).
RingHom induced(const RingHom& qa, const RingHom& qb) {
  const FiniteRing& Ra = qa.target();
  std::vector<Elem> images(Ra.dim());
  std::vector<bool> found(Ra.dim(), false);
  const FiniteRing& R = qa.source();
  for (int i = 0; i < R.dim(); ++i) {
    const Elem e = qa.apply(R.table().basis(i));
    for (int q = 0; q < Ra.dim(); ++q)
      if (!found[q] && e == Ra.table().basis(q)) {
        found[q] = true;
        images[q] = qb.apply(R.table().basis(i));
      }
  }
  for (bool f : found) require(f, Errc::InternalObstruction, "quotient basis without a basis preimage");
  return RingHom(Ra, qb.target(), std::move(images));
}

/// Additive section of a surjection: coefficient-wise minimal preimage of each target basis element.
std::vector<Elem> section_of(const RingHom& h) {
  const FiniteRing& S = h.target();
  const FiniteRing& R = h.source();
  std::vector<Elem> out(S.dim());
  std::vector<bool> found(S.dim(), false);
  int remaining = S.dim();
  for (std::uint64_t i = 0; i < R.cardinality() && remaining > 0; ++i) {
    const Elem x = R.table().group().decode(i);
    const Elem y = h.apply(x);
    for (int v = 0; v < S.dim(); ++v)
      if (!found[v] && y == S.table().basis(v)) {
        found[v] = true;
        out[v] = x;
        --remaining;
      }
  }
  require(remaining == 0, Errc::NotSurjective, "ring map is not surjective");
  return out;
}

GradedMap lift_along_section(const GradedMap& m, const RingHom& h, const std::vector<Elem>& section,
                             std::shared_ptr<const StructureTable> table, Level level) {
  const int ms = h.target().dim();
  const int mt = h.source().dim();
  const auto& g = h.source().table().group();
  GradedMap out(table, level, m.source(), m.target(), m.degree());
  for (int i = m.source().lo; i <= m.source().hi(); ++i) {
    const AlgMatrix a = m.at(i);
    AlgMatrix b(table, level, a.rows(), a.cols());
    const int k = a.width() / ms;
    for (int r = 0; r < a.rows(); ++r)
      for (int c = 0; c < a.cols(); ++c)
        for (int j = 0; j < k; ++j) {
          Elem acc = g.zero();
          for (int v = 0; v < ms; ++v) {
            const int coef = a.entry(r, c)[j * ms + v];
            if (coef) acc = g.add(acc, g.scale(coef, section[v]));
          }
          std::copy(acc.begin(), acc.end(), b.entry(r, c) + j * mt);
        }
    out.set(i, std::move(b));
  }
  return out;
}

/// Inverse of a map that reduces to an invertible map modulo a nilpotent ideal,
/// by repeating ḡ ← ḡ(2 − f̄ḡ) from a lift of the residual inverse.
GradedMap unipotent_inverse(const GradedMap& f, const GradedMap& start, const GradedMap& one) {
  GradedMap g = start;
  for (int iter = 0; iter < 64; ++iter) {
    const GradedMap fg = compose(f, g);
    if (fg == one && compose(g, f) == one) return g;
    g = compose(g, one + one - fg);
  }
  fail(Errc::NotInverse, "map is not invertible modulo a nilpotent ideal");
}

struct Filtration {
  int N = 1;
  std::vector<RingHom> q;               // q[j]: R → R/m^j, j = 1..N
  std::vector<DeformedAlgebra> steps;   // steps[j-1]: R/m^{j+1} → R/m^j → F_p, j = 1..N-1
  const DeformedAlgebra& step(int j) const { return steps[static_cast<std::size_t>(j - 1)]; }
};

Filtration build_filtration(const ArtinRing& R, const BaseComplex& bc) {
  Filtration F;
  F.N = R.nilpotency;
  F.q.resize(F.N + 1);
  for (int j = 1; j <= F.N; ++j) F.q[j] = quotient_map(R.ring, ideal_power(R, j));
  const FiniteRing k = prime_field(R.ring.prime());
  for (int j = 1; j < F.N; ++j) {
    const RingHom up = induced(F.q[j + 1], F.q[j]);
    const RingHom down = induced(F.q[j], F.q[1]);
    const RingHom to_k(down.target(), k, {k.one()});
    Tower t(F.q[j + 1].target(), F.q[j].target(), k, up, down.then(to_k));
    F.steps.emplace_back(mk_trivial_algebra(t, bc.rank, bc.constants));
  }
  return F;
}

bool equivalent_via(const Filtration& F, const BaseComplex& bc, const GradedMap& d1, const GradedMap& d2) {
  if (F.N == 1) return d1 == d2;
  const std::function<bool(int, const GradedMap&)> rec = [&](int j, const GradedMap& phi) -> bool {
    const DeformedAlgebra& A = F.step(j);
    const PreComplex Cbar = make_precomplex(change_rings(d1, F.q[j + 1], A.table(Level::Bar), Level::Bar));
    const PreComplex Dbar = make_precomplex(change_rings(d2, F.q[j + 1], A.table(Level::Bar), Level::Bar));
    const MapProblem P(A, Cbar, Dbar, phi);
    const LiftReport r = obstruct_and_lift_map(P, j + 1 < F.N);
    if (!r.lifts()) return false;
    if (j + 1 == F.N) return true;
    for (const GradedMap& rep : r.representatives)
      if (rec(j + 1, relabel(F.step(j + 1), rep, Level::Mid))) return true;
    return false;
  };
  return rec(1, GradedMap::identity(F.step(1), Level::Mid, bc.C.obj));
}

// m² = 0: lifts are strictly equivalent iff their difference class vanishes,
// so the normal form of that class is a complete invariant.
std::vector<std::vector<std::size_t>> partition_square_zero(const Filtration& F, const BaseComplex& bc,
                                                            const std::vector<GradedMap>& lifts) {
  const DeformedAlgebra& A = F.step(1);
  const DifferentialProblem P(A, make_complex(relabel(A, bc.C.d, Level::Mid)));
  std::vector<std::vector<std::size_t>> classes;
  if (lifts.empty()) return classes;
  const auto over = [&](const GradedMap& d) { return change_rings(d, F.q[2], A.table(Level::Bar), Level::Bar); };
  const GradedMap first = over(lifts.front());
  std::map<FpVector, std::size_t> slot;
  for (std::size_t i = 0; i < lifts.size(); ++i) {
    const auto [it, fresh] = slot.emplace(difference_class(P, first, over(lifts[i])).rep, classes.size());
    if (fresh) classes.emplace_back();
    classes[it->second].push_back(i);
  }
  return classes;
}

std::shared_ptr<const StructureTable> table_over(const FiniteRing& R, const BaseComplex& bc) {
  return trivial_algebra_table(R, bc.rank, bc.constants);
}

GradedMap canonical_lift(const ArtinRing& R, const BaseComplex& bc, const GradedMap& base) {
  const FiniteRing k = prime_field(bc.p);
  return change_rings(base, RingHom(k, R.ring, {R.ring.one()}), table_over(R.ring, bc), Level::Bar);
}

/// Calls visit(map) for every σ(base) + x with x ∈ m ⊗ Hom (lexicographic)
/// until it returns false.
void for_each_lift(const ArtinRing& R, const BaseComplex& bc, const GradedMap& base, std::uint64_t cap,
                   const std::function<bool(const GradedMap&)>& visit) {
  const std::vector<Elem> m_elems = span_elements(R.ring, R.m_basis);
  GradedMap proto = canonical_lift(R, bc, base);
  const std::vector<int> start = proto.flatten();
  const int mr = R.ring.dim();
  const std::size_t positions = start.size() / static_cast<std::size_t>(mr);
  std::uint64_t count = 1;
  for (std::size_t i = 0; i < positions; ++i) {
    require(count <= cap / m_elems.size(), Errc::CapExceeded, "lift space exceeds the enumeration cap");
    count *= m_elems.size();
  }
  const auto& g = R.ring.table().group();
  std::vector<int> flat(start.size());
  for (std::uint64_t idx = 0; idx < count; ++idx) {
    std::uint64_t rest = idx;
    for (std::size_t pos = positions; pos-- > 0;) {
      const Elem& x = m_elems[rest % m_elems.size()];
      rest /= m_elems.size();
      const Elem base_part(start.begin() + static_cast<std::ptrdiff_t>(pos * mr),
                           start.begin() + static_cast<std::ptrdiff_t>((pos + 1) * mr));
      const Elem y = g.add(base_part, x);
      std::copy(y.begin(), y.end(), flat.begin() + static_cast<std::ptrdiff_t>(pos * mr));
    }
    proto.assign_flat(flat);
    if (!visit(proto)) return;
  }
}

std::vector<std::vector<std::size_t>> partition_by(const std::vector<GradedMap>& xs,
                                                   const std::function<bool(const GradedMap&, const GradedMap&)>& eq) {
  std::vector<std::vector<std::size_t>> classes;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    bool placed = false;
    for (auto& cls : classes)
      if (eq(xs[cls.front()], xs[i])) {
        cls.push_back(i);
        placed = true;
        break;
      }
    if (!placed) classes.push_back({i});
  }
  return classes;
}

std::vector<std::size_t> class_index(const std::vector<std::vector<std::size_t>>& classes, std::size_t n) {
  std::vector<std::size_t> idx(n, 0);
  for (std::size_t c = 0; c < classes.size(); ++c)
    for (std::size_t i : classes[c]) idx[i] = c;
  return idx;
}

}  // namespace

// ------------------------------------------------------------------------ rings

RingHom quotient_map(const FiniteRing& R, const std::vector<FpVector>& ideal) {
  require_fp_algebra(R);
  const int p = R.prime();
  const int n = R.dim();
  // Unit column last, so it is never a pivot of a proper ideal.
  std::vector<int> perm(n);
  for (int i = 0; i < n; ++i) perm[i] = (i + 1) % n;
  FpMatrix m(p, static_cast<int>(ideal.size()), n);
  for (std::size_t r = 0; r < ideal.size(); ++r)
    for (int c = 0; c < n; ++c) m.at(static_cast<int>(r), c) = mod_p(ideal[r][perm[c]], p);
  const Echelon e = row_reduce(m);
  std::vector<bool> is_pivot(n, false);
  for (int pc : e.pivots) is_pivot[perm[pc]] = true;
  require(!is_pivot[0], Errc::InvalidArgument, "quotient by an ideal containing 1");
  std::vector<int> complement;
  std::vector<int> position(n, -1);
  for (int i = 0; i < n; ++i)
    if (!is_pivot[i]) {
      position[i] = static_cast<int>(complement.size());
      complement.push_back(i);
    }
  const int q = static_cast<int>(complement.size());
  std::vector<Elem> images(n, Elem(q, 0));
  for (int i = 0; i < n; ++i)
    if (!is_pivot[i]) images[i][position[i]] = 1;
  for (int r = 0; r < e.rank(); ++r) {
    const int orig = perm[e.pivots[r]];
    for (int c = 0; c < n; ++c) {
      const int col = perm[c];
      if (is_pivot[col]) continue;
      images[orig][position[col]] = mod_p(-static_cast<long long>(e.rref.at(r, c)), p);
    }
  }
  const auto reduce_elem = [&](const Elem& x) {
    Elem y(q, 0);
    for (int i = 0; i < n; ++i)
      if (x[i])
        for (int t = 0; t < q; ++t) y[t] = mod_p(y[t] + static_cast<long long>(x[i]) * images[i][t], p);
    return y;
  };
  std::vector<int> constants(static_cast<std::size_t>(q) * q * q, 0);
  for (int a = 0; a < q; ++a)
    for (int b = 0; b < q; ++b) {
      const Elem prod = reduce_elem(R.mul(R.table().basis(complement[a]), R.table().basis(complement[b])));
      for (int t = 0; t < q; ++t) constants[(static_cast<std::size_t>(a) * q + b) * q + t] = prod[t];
    }
  FiniteRing Q(p, std::vector<int>(q, 1), std::move(constants));
  return RingHom(R, Q, std::move(images));
}

ArtinRing artin_ring(const FiniteRing& R, const FunctorCaps& caps) {
  require_fp_algebra(R);
  require(R.cardinality() <= caps.max_ring_order, Errc::CapExceeded, "ring exceeds the functor ring cap");
  const int p = R.prime();
  std::vector<FpVector> nil;
  for (const Elem& x : R.elements())
    if (R.is_zero(R.table().pow(x, R.dim()))) nil.push_back(FpVector(x.begin(), x.end()));
  const Subspace m = Subspace::span(p, R.dim(), nil);
  require(m.dim() == R.dim() - 1 && nil.size() * static_cast<std::size_t>(p) == R.cardinality(), Errc::NotLocal,
          "nilpotent elements do not form a maximal ideal of codimension 1");
  ArtinRing A;
  A.ring = R;
  A.m_basis = m.basis();
  A.residue = quotient_map(R, A.m_basis);
  require(A.residue.target().is_prime_field(), Errc::NotLocal, "residue field is not F_p");
  A.nilpotency = 1;
  while (!ideal_power(A, A.nilpotency).empty()) ++A.nilpotency;
  return A;
}

std::vector<FpVector> ideal_power(const ArtinRing& R, int j) {
  require(j >= 1, Errc::InvalidArgument, "ideal powers start at 1");
  const int p = R.ring.prime();
  std::vector<FpVector> cur = R.m_basis;
  for (int e = 1; e < j && !cur.empty(); ++e) {
    std::vector<FpVector> prods;
    for (const auto& a : cur)
      for (const auto& b : R.m_basis) {
        const Elem x = R.ring.mul(fp_to_elem(a), fp_to_elem(b));
        prods.push_back(FpVector(x.begin(), x.end()));
      }
    cur = Subspace::span(p, R.ring.dim(), prods).basis();
  }
  return cur;
}

// --------------------------------------------------------------------- complexes

BaseComplex make_base_complex(int p, int rank, std::vector<int> constants, const GradedMap& d) {
  const auto table = trivial_algebra_table(prime_field(p), rank, constants);
  require(d.table_ptr()->dim() == table->dim(), Errc::BadDimensions, "differential width does not match Λ₀");
  GradedMap dd(table, Level::Base, d.source(), d.target(), d.degree());
  dd.assign_flat(d.flatten());
  BaseComplex bc{p, rank, std::move(constants), make_complex(std::move(dd))};
  return bc;
}

BaseComplex base_complex_of(const DeformedAlgebra& A, const PreComplex& C0) {
  return make_base_complex(A.prime(), A.rank(), A.base_constants(), C0.d);
}

GradedMap change_rings(const GradedMap& m, const RingHom& h, std::shared_ptr<const StructureTable> table, Level level) {
  const int ms = h.source().dim();
  const int mt = h.target().dim();
  GradedMap out(table, level, m.source(), m.target(), m.degree());
  for (int i = m.source().lo; i <= m.source().hi(); ++i) {
    const AlgMatrix a = m.at(i);
    require(a.width() % ms == 0, Errc::BadDimensions, "entry width does not match the ring map");
    const int k = a.width() / ms;
    require(table->dim() == k * mt, Errc::BadDimensions, "target table does not match the ring map");
    AlgMatrix b(table, level, a.rows(), a.cols());
    for (int r = 0; r < a.rows(); ++r)
      for (int c = 0; c < a.cols(); ++c)
        for (int j = 0; j < k; ++j) {
          const Elem y = h.apply(Elem(a.entry(r, c) + j * ms, a.entry(r, c) + (j + 1) * ms));
          std::copy(y.begin(), y.end(), b.entry(r, c) + j * mt);
        }
    out.set(i, std::move(b));
  }
  return out;
}

int tangent_dim(const BaseComplex& bc) {
  const Tower t = mk_tower(TowerKind::SquareZero, bc.p, TowerParams{0, 0, 1});
  const DeformedAlgebra A = mk_trivial_algebra(t, bc.rank, bc.constants);
  const PreComplex C0 = make_precomplex(relabel(A, bc.C.d, Level::Base));
  return h_dim(KernelComplex(A, C0, C0), 1);
}

const char* functor_tag_name(FunctorTag tag) noexcept {
  switch (tag) {
    case FunctorTag::F0: return "F0";
    case FunctorTag::F: return "F";
    case FunctorTag::F1: return "F1";
  }
  return "F0";
}

FunctorTag functor_tag_from_name(const std::string& name) {
  if (name == "F0") return FunctorTag::F0;
  if (name == "F") return FunctorTag::F;
  if (name == "F1") return FunctorTag::F1;
  fail(Errc::InvalidArgument, "unknown functor '" + name + "'");
}

// ---------------------------------------------------------------------- functors

std::vector<GradedMap> f0_elements(const ArtinRing& R, const BaseComplex& bc, const FunctorCaps& caps) {
  std::vector<GradedMap> out;
  for_each_lift(R, bc, bc.C.d, caps.max_lift_space, [&](const GradedMap& d) {
    if (compose(d, d).is_zero()) out.push_back(d);
    return true;
  });
  return out;
}

bool strictly_equivalent(const ArtinRing& R, const BaseComplex& bc, const GradedMap& d1, const GradedMap& d2) {
  return equivalent_via(build_filtration(R, bc), bc, d1, d2);
}

bool strictly_equivalent_oracle(const ArtinRing& R, const BaseComplex& bc, const GradedMap& d1, const GradedMap& d2,
                                const FunctorCaps& caps) {
  const GradedMap one_base = GradedMap::identity(bc.C.d.table_ptr(), Level::Base, bc.C.obj);
  bool found = false;
  for_each_lift(R, bc, one_base, caps.max_lift_space, [&](const GradedMap& phi) {
    found = compose(phi, d1) == compose(d2, phi);
    return !found;
  });
  return found;
}

namespace {

// Reductions homotopic to 1: the set 1 + δ₀(Hom⁻¹).
std::vector<GradedMap> homotopic_units(const BaseComplex& bc, const FunctorCaps& caps) {
  const GradedMap one_base = GradedMap::identity(bc.C.d.table_ptr(), Level::Base, bc.C.obj);
  GradedMap h = GradedMap(bc.C.d.table_ptr(), Level::Base, bc.C.obj, bc.C.obj, -1);
  const std::size_t hdim = h.flat_size();
  std::uint64_t count = 1;
  for (std::size_t i = 0; i < hdim; ++i) {
    require(count <= caps.max_lift_space / static_cast<std::uint64_t>(bc.p), Errc::CapExceeded,
            "Hom⁻¹ exceeds the enumeration cap");
    count *= static_cast<std::uint64_t>(bc.p);
  }
  std::set<std::vector<int>> seen;
  std::vector<GradedMap> units;
  std::vector<int> flat(hdim);
  for (std::uint64_t idx = 0; idx < count; ++idx) {
    std::uint64_t rest = idx;
    for (std::size_t pos = hdim; pos-- > 0;) {
      flat[pos] = static_cast<int>(rest % static_cast<std::uint64_t>(bc.p));
      rest /= static_cast<std::uint64_t>(bc.p);
    }
    h.assign_flat(flat);
    GradedMap u = one_base + delta_apply(bc.C, bc.C, h);
    if (seen.insert(u.flatten()).second) units.push_back(std::move(u));
  }
  return units;
}

// One pass over the group: φ·b = a·φ links a and b.
std::vector<std::vector<std::size_t>> f1_classes(const ArtinRing& R, const BaseComplex& bc,
                                                 const std::vector<GradedMap>& lifts, const FunctorCaps& caps) {
  std::vector<std::size_t> parent(lifts.size());
  for (std::size_t i = 0; i < parent.size(); ++i) parent[i] = i;
  const auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const GradedMap& u : homotopic_units(bc, caps))
    for_each_lift(R, bc, u, caps.max_lift_space, [&](const GradedMap& phi) {
      std::map<std::vector<int>, std::size_t> left;
      for (std::size_t b = 0; b < lifts.size(); ++b) left.emplace(compose(phi, lifts[b]).flatten(), b);
      for (std::size_t a = 0; a < lifts.size(); ++a) {
        const auto it = left.find(compose(lifts[a], phi).flatten());
        if (it == left.end()) continue;
        const std::size_t x = find(a), y = find(it->second);
        if (x != y) parent[std::max(x, y)] = std::min(x, y);
      }
      return true;
    });
  std::vector<std::vector<std::size_t>> classes;
  std::map<std::size_t, std::size_t> slot;
  for (std::size_t i = 0; i < lifts.size(); ++i) {
    const auto [it, fresh] = slot.emplace(find(i), classes.size());
    if (fresh) classes.emplace_back();
    classes[it->second].push_back(i);
  }
  return classes;
}

}  // namespace

bool homotopy_equivalent_oracle(const ArtinRing& R, const BaseComplex& bc, const GradedMap& d1, const GradedMap& d2,
                                const FunctorCaps& caps) {
  for (const GradedMap& u : homotopic_units(bc, caps)) {
    bool found = false;
    for_each_lift(R, bc, u, caps.max_lift_space, [&](const GradedMap& phi) {
      found = compose(phi, d1) == compose(d2, phi);
      return !found;
    });
    if (found) return true;
  }
  return false;
}

FunctorValue functor_eval(FunctorTag tag, const ArtinRing& R, const BaseComplex& bc, const FunctorCaps& caps) {
  FunctorValue v;
  v.tag = tag;
  v.lifts = f0_elements(R, bc, caps);
  switch (tag) {
    case FunctorTag::F0:
      for (std::size_t i = 0; i < v.lifts.size(); ++i) v.classes.push_back({i});
      break;
    case FunctorTag::F: {
      const Filtration F = build_filtration(R, bc);
      if (F.N == 2) {
        v.classes = partition_square_zero(F, bc, v.lifts);
        break;
      }
      v.classes = partition_by(v.lifts, [&](const GradedMap& a, const GradedMap& b) { return equivalent_via(F, bc, a, b); });
      break;
    }
    case FunctorTag::F1:
      v.classes = f1_classes(R, bc, v.lifts, caps);
      break;
  }
  return v;
}

// ----------------------------------------------------------------- Schlessinger

namespace {

struct Evaluated {
  ArtinRing ring;
  std::vector<GradedMap> lifts;
  std::vector<std::vector<std::size_t>> classes;
  std::vector<std::size_t> class_of;
  std::unordered_map<std::string, std::size_t> index;
};

Evaluated evaluate(const FiniteRing& ring, const BaseComplex& bc, const FunctorCaps& caps) {
  Evaluated e;
  e.ring = artin_ring(ring, caps);
  const FunctorValue v = functor_eval(FunctorTag::F, e.ring, bc, caps);
  e.lifts = v.lifts;
  e.classes = v.classes;
  e.class_of = class_index(e.classes, e.lifts.size());
  for (std::size_t i = 0; i < e.lifts.size(); ++i) e.index[key_of(e.lifts[i])] = i;
  return e;
}

std::size_t image_index(const Evaluated& src, const Evaluated& dst, const RingHom& h, const BaseComplex& bc,
                        std::size_t i) {
  const GradedMap y = change_rings(src.lifts[i], h, table_over(dst.ring.ring, bc), Level::Bar);
  auto it = dst.index.find(key_of(y));
  require(it != dst.index.end(), Errc::CheckFailed, "image of a lift is not a lift");
  return it->second;
}

bool is_dual_numbers_to_field(const RingHom& h) {
  const FiniteRing& src = h.source();
  if (!h.target().is_prime_field() || src.dim() != 2) return false;
  for (int e : src.table().group().exponents())
    if (e != 1) return false;
  return true;
}

/// For a surjection R → S, d_S and d_R with an isomorphism f: d_S → d_R|_S
/// lifting 1 yield a differential d′_R lifting d_S and an isomorphism d′_R → d_R lifting f.
std::size_t check_smoothness(const RingHom& h, const Evaluated& src, const Evaluated& dst, const BaseComplex& bc,
                             const FunctorCaps& caps) {
  const auto tab_src = table_over(src.ring.ring, bc);
  const auto tab_dst = table_over(dst.ring.ring, bc);
  const std::vector<Elem> section = section_of(h);
  const GradedMap one_base = GradedMap::identity(bc.C.d.table_ptr(), Level::Base, bc.C.obj);
  const GradedMap one_src = GradedMap::identity(tab_src, Level::Bar, bc.C.obj);
  std::size_t premises = 0;
  for (const GradedMap& dS : dst.lifts)
    for (const GradedMap& dR : src.lifts) {
      const GradedMap dRS = change_rings(dR, h, tab_dst, Level::Bar);
      std::optional<GradedMap> f;
      for_each_lift(dst.ring, bc, one_base, caps.max_lift_space, [&](const GradedMap& phi) {
        if (compose(phi, dS) == compose(dRS, phi)) f = phi;
        return !f;
      });
      if (!f) continue;
      ++premises;
      const GradedMap fbar = lift_along_section(*f, h, section, tab_src, Level::Bar);
      const GradedMap ginv = unipotent_inverse(fbar, one_src, one_src);
      const GradedMap dprime = compose(ginv, compose(dR, fbar));
      require(compose(dprime, dprime).is_zero() && change_rings(dprime, h, tab_dst, Level::Bar) == dS &&
                  compose(fbar, dprime) == compose(dR, fbar) && change_rings(fbar, h, tab_dst, Level::Bar) == *f,
              Errc::CheckFailed, "μ is not formally smooth on a sampled pair");
    }
  return premises;
}

}  // namespace

std::vector<SchlessingerResult> schlessinger_check(const BaseComplex& bc, const std::vector<RingTriple>& triples,
                                                   const FunctorCaps& caps) {
  std::vector<SchlessingerResult> out;
  for (const RingTriple& t : triples) {
    SchlessingerResult res;
    const FiberProduct fp = ring_fiber_product(t.first, t.second);
    const Evaluated e1 = evaluate(t.first.source(), bc, caps);
    const Evaluated e2 = evaluate(t.second.source(), bc, caps);
    const Evaluated e0 = evaluate(t.first.target(), bc, caps);
    const Evaluated ef = evaluate(fp.ring, bc, caps);

    // F₀ on the fiber product.
    std::set<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t a = 0; a < e1.lifts.size(); ++a)
      for (std::size_t b = 0; b < e2.lifts.size(); ++b)
        if (image_index(e1, e0, t.first, bc, a) == image_index(e2, e0, t.second, bc, b)) pairs.insert({a, b});
    std::set<std::pair<std::size_t, std::size_t>> image;
    for (std::size_t i = 0; i < ef.lifts.size(); ++i)
      image.insert({image_index(ef, e1, fp.to_first, bc, i), image_index(ef, e2, fp.to_second, bc, i)});
    res.f0_fiber = ef.lifts.size();
    res.f0_pairs = pairs.size();
    res.f0_bijective = image.size() == ef.lifts.size() && image == pairs;
    require(res.f0_bijective, Errc::CheckFailed,
            "F₀ fiber-product map is not bijective (" + std::to_string(res.f0_fiber) + " vs " +
                std::to_string(res.f0_pairs) + ")");

    // F on the fiber product.
    std::set<std::pair<std::size_t, std::size_t>> class_pairs;
    for (std::size_t a = 0; a < e1.classes.size(); ++a)
      for (std::size_t b = 0; b < e2.classes.size(); ++b) {
        const std::size_t ia = image_index(e1, e0, t.first, bc, e1.classes[a].front());
        const std::size_t ib = image_index(e2, e0, t.second, bc, e2.classes[b].front());
        if (e0.class_of[ia] == e0.class_of[ib]) class_pairs.insert({a, b});
      }
    std::set<std::pair<std::size_t, std::size_t>> class_image;
    for (const auto& cls : ef.classes) {
      const std::size_t i = cls.front();
      class_image.insert({e1.class_of[image_index(ef, e1, fp.to_first, bc, i)],
                          e2.class_of[image_index(ef, e2, fp.to_second, bc, i)]});
    }
    const bool surjective = std::includes(class_image.begin(), class_image.end(), class_pairs.begin(), class_pairs.end());
    const std::size_t kernel_size = t.first.kernel().size();
    res.s1_applicable = t.first.is_surjective() && kernel_size == static_cast<std::size_t>(bc.p);
    res.s1_surjective = surjective;
    if (res.s1_applicable)
      require(surjective, Errc::CheckFailed, "(S1) fails: a compatible pair of classes has no preimage");
    res.s2_applicable = is_dual_numbers_to_field(t.first);
    res.s2_bijective = surjective && class_image.size() == ef.classes.size();
    if (res.s2_applicable) require(res.s2_bijective, Errc::CheckFailed, "(S2) fails: the map is not bijective");

    if (t.first.is_surjective()) res.smooth_pairs += check_smoothness(t.first, e1, e0, bc, caps);
    if (t.second.is_surjective()) res.smooth_pairs += check_smoothness(t.second, e2, e0, bc, caps);
    out.push_back(res);
  }
  return out;
}

ExtendResult extend_order(const BaseComplex& bc, const GradedMap& lift, int n) {
  require(n >= 1, Errc::InvalidArgument, "order must be >= 1");
  const Tower t = mk_tower(TowerKind::TruncPoly, bc.p, TowerParams{n + 1, n, 0});
  const DeformedAlgebra A = mk_trivial_algebra(t, bc.rank, bc.constants);
  GradedMap d = GradedMap::zero(A, Level::Mid, lift.source(), lift.target(), lift.degree());
  d.assign_flat(lift.flatten());
  require(reduce(A, d, Level::Base).flatten() == relabel(A, bc.C.d, Level::Base).flatten(), Errc::IncompatibleGradedLifts,
          "the given lift does not reduce to d");
  const DifferentialProblem P(A, make_precomplex(d));
  return ExtendResult{lift_differential(P), n + 1};
}

}  // namespace clift
