#include "clift/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <set>
#include <thread>

namespace clift {

namespace {

using Key = std::vector<int>;

unsigned worker_count(const OracleOptions& opt, std::uint64_t n) {
  unsigned t = opt.threads ? opt.threads : std::max(1u, std::thread::hardware_concurrency());
  t = std::min<unsigned>(t, 16);
  if (n < 4096) t = 1;
  return t;
}

// Runs f(begin, end) on contiguous ranges and concatenates the results in range order.
template <class T, class F>
std::vector<T> parallel_collect(std::uint64_t n, unsigned threads, F f) {
  if (threads <= 1) return f(std::uint64_t{0}, n);
  std::vector<std::vector<T>> parts(threads);
  std::vector<std::thread> pool;
  const std::uint64_t chunk = (n + threads - 1) / threads;
  for (unsigned t = 0; t < threads; ++t) {
    const std::uint64_t b = std::min(n, chunk * t), e = std::min(n, chunk * (t + 1));
    pool.emplace_back([&, t, b, e] { parts[t] = f(b, e); });
  }
  for (auto& th : pool) th.join();
  std::vector<T> out;
  for (auto& p : parts) out.insert(out.end(), p.begin(), p.end());
  return out;
}

std::uint64_t saturating_pow(std::uint64_t base, std::size_t exp) {
  std::uint64_t r = 1;
  for (std::size_t i = 0; i < exp; ++i) {
    if (base != 0 && r > UINT64_MAX / base) return UINT64_MAX;
    r *= base;
  }
  return r;
}

void check_cap(std::uint64_t size, const OracleOptions& opt, const char* what) {
  require(size <= opt.cap, Errc::CapExceeded,
          std::string(what) + " search space exceeds the cap of " + std::to_string(opt.cap));
}

// Positions of `members` keyed by flattened coefficients.
std::map<Key, std::size_t> index_of(const std::vector<GradedMap>& members) {
  std::map<Key, std::size_t> idx;
  for (std::size_t i = 0; i < members.size(); ++i) idx.emplace(members[i].flatten(), i);
  return idx;
}

// Greedy cosets w + S; S is a set of flattened differences that contains zero.
std::vector<std::vector<std::size_t>> coset_partition(const std::vector<GradedMap>& members,
                                                      const std::vector<GradedMap>& shifts) {
  const auto idx = index_of(members);
  std::vector<int> block(members.size(), -1);
  std::vector<std::vector<std::size_t>> blocks;
  for (std::size_t i = 0; i < members.size(); ++i) {
    if (block[i] >= 0) continue;
    const int b = static_cast<int>(blocks.size());
    blocks.emplace_back();
    for (const auto& s : shifts) {
      auto it = idx.find((members[i] + s).flatten());
      if (it == idx.end() || block[it->second] >= 0) continue;
      block[it->second] = b;
      blocks.back().push_back(it->second);
    }
    std::sort(blocks.back().begin(), blocks.back().end());
  }
  return blocks;
}

std::vector<GradedMap> distinct(std::vector<GradedMap> maps) {
  std::set<Key> seen;
  std::vector<GradedMap> out;
  for (auto& m : maps)
    if (seen.insert(m.flatten()).second) out.push_back(std::move(m));
  return out;
}

void fnv(std::uint64_t& h, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) {
    h ^= (v >> (8 * i)) & 0xff;
    h *= 0x100000001b3ULL;
  }
}

Elem random_elem(Rng& rng, const StructureTable& t) {
  return t.group().decode(rng() % t.cardinality());
}

}  // namespace

// ------------------------------------------------------------ KernelEnumerator

KernelEnumerator::KernelEnumerator(const DeformedAlgebra& A, GradedObject source, GradedObject target, int degree)
    : A_(&A), proto_(GradedMap::zero(A, Level::Bar, std::move(source), std::move(target), degree)) {
  const Tower& T = A.tower();
  const FiniteRing& R = T.bar();
  const int t = T.j_dim(), p = T.prime();
  const std::uint64_t nj = saturating_pow(p, t);
  for (std::uint64_t c = 0; c < nj; ++c) {
    Elem x = R.zero();
    std::uint64_t rest = c;
    for (int s = t - 1; s >= 0; --s) {
      x = R.add(x, R.table().scale(static_cast<long long>(rest % p), T.j_basis()[s]));
      rest /= p;
    }
    j_elems_.push_back(std::move(x));
  }
  const int w = A.width(Level::Bar);
  positions_ = proto_.flat_size() / static_cast<std::size_t>(w) * static_cast<std::size_t>(A.rank());
  size_ = saturating_pow(nj, positions_);
}

void KernelEnumerator::add_into(std::uint64_t index, const GradedMap& base, GradedMap& out) const {
  out = base;
  const int m = A_->tower().bar().dim();
  const int w = A_->width(Level::Bar);
  const auto& group = A_->table(Level::Bar)->group();
  const std::uint64_t nj = j_elems_.size();
  // Position 0 is the most significant digit.
  std::vector<std::uint64_t> digits(positions_);
  for (std::size_t k = positions_; k-- > 0;) {
    digits[k] = index % nj;
    index /= nj;
  }
  std::size_t pos = 0;
  for (auto& comp : out.components()) {
    auto& data = comp.data();
    for (std::size_t e = 0; e * w < data.size(); ++e) {
      for (int j = 0; j < A_->rank(); ++j, ++pos) {
        const Elem& x = j_elems_[digits[pos]];
        for (int u = 0; u < m; ++u) data[e * w + j * m + u] += x[u];
      }
      group.reduce(std::span<int>(data.data() + e * w, w));
    }
  }
}

GradedMap KernelEnumerator::at(std::uint64_t index) const {
  GradedMap out;
  add_into(index, proto_, out);
  return out;
}

std::uint64_t digest_of(const std::vector<const GradedMap*>& maps) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (const GradedMap* m : maps) {
    fnv(h, static_cast<std::uint64_t>(m->degree()));
    fnv(h, static_cast<std::uint64_t>(m->source().lo));
    for (int r : m->source().ranks) fnv(h, r);
    fnv(h, static_cast<std::uint64_t>(m->target().lo));
    for (int r : m->target().ranks) fnv(h, r);
    for (int c : m->table_ptr()->constants()) fnv(h, static_cast<std::uint64_t>(c));
    for (int c : m->flatten()) fnv(h, static_cast<std::uint64_t>(c));
  }
  return h;
}

// ------------------------------------------------------------------ oracles

namespace {

// Indices of candidates base + γ (γ in the enumerator) accepted by `pred`.
template <class Pred>
std::pair<std::vector<std::uint64_t>, std::vector<GradedMap>> search(const KernelEnumerator& E, const GradedMap& base,
                                                                      const OracleOptions& opt, Pred pred) {
  using Hit = std::pair<std::uint64_t, GradedMap>;
  auto hits = parallel_collect<Hit>(E.size(), worker_count(opt, E.size()), [&](std::uint64_t b, std::uint64_t e) {
    std::vector<Hit> out;
    GradedMap cand;
    for (std::uint64_t i = b; i < e; ++i) {
      E.add_into(i, base, cand);
      if (pred(cand)) out.emplace_back(i, cand);
    }
    return out;
  });
  std::pair<std::vector<std::uint64_t>, std::vector<GradedMap>> r;
  for (auto& [i, m] : hits) {
    r.first.push_back(i);
    r.second.push_back(std::move(m));
  }
  return r;
}

// Every δ̄h for h of degree `degree` in the kernel, deduplicated.
std::vector<GradedMap> kernel_boundaries(const DeformedAlgebra& A, const PreComplex& C, const PreComplex& D,
                                         int degree, const OracleOptions& opt) {
  KernelEnumerator E(A, C.obj, D.obj, degree);
  check_cap(E.size(), opt, "boundary");
  auto all = parallel_collect<GradedMap>(E.size(), worker_count(opt, E.size()), [&](std::uint64_t b, std::uint64_t e) {
    std::vector<GradedMap> out;
    for (std::uint64_t i = b; i < e; ++i) out.push_back(delta_apply(C, D, E.at(i)));
    return out;
  });
  return distinct(std::move(all));
}

}  // namespace

OracleResult oracle_differential(const DifferentialProblem& P, const OracleOptions& opt) {
  const auto& A = P.A;
  const GradedObject& obj = P.C.obj;
  KernelEnumerator E(A, obj, obj, 1);
  check_cap(E.size(), opt, "differential");
  OracleResult r;
  r.kind = "differential";
  r.digest = digest_of({&P.C.d});
  r.space_size = E.size();
  std::tie(r.witness_indices, r.witnesses) =
      search(E, P.dbar, opt, [](const GradedMap& d) { return compose(d, d).is_zero(); });
  if (!opt.partition || r.witnesses.empty()) return r;

  KernelEnumerator K(A, obj, obj, 0);
  check_cap(K.size(), opt, "isomorphism");
  const auto idx = index_of(r.witnesses);
  const GradedMap one = GradedMap::identity(A, Level::Bar, obj);
  std::vector<int> block(r.witnesses.size(), -1);
  for (std::size_t w = 0; w < r.witnesses.size(); ++w) {
    if (block[w] >= 0) continue;
    const int b = static_cast<int>(r.partition.size());
    const GradedMap& d = r.witnesses[w];
    auto reached = parallel_collect<std::size_t>(K.size(), worker_count(opt, K.size()),
                                                 [&](std::uint64_t lo, std::uint64_t hi) {
                                                   std::vector<std::size_t> out;
                                                   GradedMap phi;
                                                   for (std::uint64_t i = lo; i < hi; ++i) {
                                                     K.add_into(i, one, phi);
                                                     const GradedMap kappa = phi - one;
                                                     const GradedMap moved = compose(compose(phi, d), one - kappa);
                                                     auto it = idx.find(moved.flatten());
                                                     if (it == idx.end()) continue;
                                                     // φ is an isomorphism d → moved: check φd = moved·φ.
                                                     if (compose(phi, d) == compose(moved, phi)) out.push_back(it->second);
                                                   }
                                                   return out;
                                                 });
    std::vector<std::size_t> members;
    for (std::size_t m : reached)
      if (block[m] < 0) {
        block[m] = b;
        members.push_back(m);
      }
    std::sort(members.begin(), members.end());
    r.partition.push_back(std::move(members));
  }
  return r;
}

CellCount oracle_connecting_cells(const DifferentialProblem& P, const GradedMap& d1, const GradedMap& d2,
                                  const OracleOptions& opt) {
  const auto& A = P.A;
  const GradedObject& obj = P.C.obj;
  KernelEnumerator K(A, obj, obj, 0);
  check_cap(K.size(), opt, "isomorphism");
  const GradedMap one = GradedMap::identity(A, Level::Bar, obj);
  auto found = search(K, one, opt, [&](const GradedMap& phi) { return compose(phi, d1) == compose(d2, phi); });
  CellCount c;
  c.cells = found.second.size();
  if (found.second.empty()) return c;
  const PreComplex C1{obj, d1}, C2{obj, d2};
  const auto shifts = kernel_boundaries(A, C1, C2, -1, opt);
  c.classes = coset_partition(found.second, shifts).size();
  return c;
}

OracleResult oracle_map(const MapProblem& P, const OracleOptions& opt) {
  KernelEnumerator E(P.A, P.Cbar.obj, P.Dbar.obj, P.f.degree());
  check_cap(E.size(), opt, "map");
  OracleResult r;
  r.kind = "map";
  r.digest = digest_of({&P.Cbar.d, &P.Dbar.d, &P.f});
  r.space_size = E.size();
  std::tie(r.witness_indices, r.witnesses) =
      search(E, P.fbar, opt, [&](const GradedMap& f) { return delta_apply(P.Cbar, P.Dbar, f).is_zero(); });
  if (opt.partition && !r.witnesses.empty())
    r.partition = coset_partition(r.witnesses, kernel_boundaries(P.A, P.Cbar, P.Dbar, P.f.degree() - 1, opt));
  return r;
}

OracleResult oracle_homotopy(const HomotopyProblem& P, const OracleOptions& opt) {
  KernelEnumerator E(P.A, P.Cbar.obj, P.Dbar.obj, P.H.degree());
  check_cap(E.size(), opt, "homotopy");
  OracleResult r;
  r.kind = "homotopy";
  r.digest = digest_of({&P.Cbar.d, &P.Dbar.d, &P.H, &P.fbar, &P.gbar});
  r.space_size = E.size();
  const GradedMap target = P.gbar - P.fbar;
  std::tie(r.witness_indices, r.witnesses) =
      search(E, P.Hbar, opt, [&](const GradedMap& h) { return delta_apply(P.Cbar, P.Dbar, h) == target; });
  if (opt.partition && !r.witnesses.empty())
    r.partition = coset_partition(r.witnesses, kernel_boundaries(P.A, P.Cbar, P.Dbar, P.H.degree() - 1, opt));
  return r;
}

// --------------------------------------------------------------- generators

int rand_below(Rng& rng, int n) { return static_cast<int>(rng() % static_cast<std::uint64_t>(n)); }

Tower random_tower(Rng& rng, int p, TowerKind kind) {
  switch (kind) {
    case TowerKind::ZMod:
      return mk_tower(kind, p, {2, 1, 0});
    case TowerKind::TruncPoly:
      return rand_below(rng, 2) ? mk_tower(kind, p, {3, 2, 0}) : mk_tower(kind, p, {2, 1, 0});
    case TowerKind::SquareZero:
      return mk_tower(kind, p, {0, 0, 1 + rand_below(rng, 2)});
    case TowerKind::Custom:
      break;
  }
  fail(Errc::InvalidArgument, "random towers are built-in kinds only");
}

DeformedAlgebra random_algebra(Rng& rng, const Tower& tower, AlgebraKind kind) {
  const int p = tower.prime();
  if (kind == AlgebraKind::Trivial) {
    if (rand_below(rng, 2)) return mk_scalar_algebra(tower);
    // F_p[x]/(x² − αx − β)
    std::vector<int> c(8, 0);
    c[0] = 1;
    c[(0 * 2 + 1) * 2 + 1] = 1;
    c[(1 * 2 + 0) * 2 + 1] = 1;
    c[(1 * 2 + 1) * 2 + 0] = rand_below(rng, p);
    c[(1 * 2 + 1) * 2 + 1] = rand_below(rng, p);
    return mk_trivial_algebra(tower, 2, c);
  }
  const FiniteRing& R = tower.bar();
  if (rand_below(rng, 3) == 0) {
    // Upper triangular 2×2: a_0 = 1, a_1 = e11, a_2 = e12.
    std::vector<Elem> c(27, R.zero());
    auto at = [&](int i, int j, int l) -> Elem& { return c[(i * 3 + j) * 3 + l]; };
    for (int i = 0; i < 3; ++i) {
      at(0, i, i) = R.one();
      at(i, 0, i) = R.one();
    }
    at(1, 1, 1) = R.one();
    at(1, 2, 2) = R.one();
    return DeformedAlgebra(tower, 3, std::move(c), AlgebraKind::Custom);
  }
  // R̄[x]/(x² − αx − β); half the time α, β ∈ Ker(R̄ → R), so x is nilpotent in Λ.
  std::vector<Elem> kernel;
  for (std::uint64_t i = 0; i < R.cardinality(); ++i) {
    const Elem y = R.table().group().decode(i);
    if (tower.mid().table().is_zero(tower.bar_to_mid().apply(y))) kernel.push_back(y);
  }
  const bool nilpotent = rand_below(rng, 2) == 0;
  const auto coefficient = [&] {
    return nilpotent ? kernel[static_cast<std::size_t>(rand_below(rng, static_cast<int>(kernel.size())))]
                     : random_elem(rng, R.table());
  };
  std::vector<Elem> c(8, R.zero());
  c[0] = R.one();
  c[(0 * 2 + 1) * 2 + 1] = R.one();
  c[(1 * 2 + 0) * 2 + 1] = R.one();
  c[(1 * 2 + 1) * 2 + 0] = coefficient();
  c[(1 * 2 + 1) * 2 + 1] = coefficient();
  return DeformedAlgebra(tower, 2, std::move(c), AlgebraKind::Custom);
}

GradedMap random_map(Rng& rng, const DeformedAlgebra& A, Level level, const GradedObject& src,
                     const GradedObject& tgt, int degree) {
  GradedMap m = GradedMap::zero(A, level, src, tgt, degree);
  const StructureTable& t = *A.table(level);
  for (int i = src.lo; i <= src.hi(); ++i) {
    AlgMatrix c = m.at(i);
    for (int r = 0; r < c.rows(); ++r)
      for (int k = 0; k < c.cols(); ++k)
        if (rand_below(rng, 2)) c.set(r, k, random_elem(rng, t));
    m.set(i, std::move(c));
  }
  return m;
}

namespace {

GradedObject random_object(Rng& rng, int max_rank, int max_window) {
  GradedObject obj;
  obj.lo = -rand_below(rng, 2);
  const int w = max_window >= 2 ? 2 + rand_below(rng, max_window - 1) : 1;
  obj.ranks.resize(w);
  for (auto& r : obj.ranks) r = rand_below(rng, max_rank + 1);
  // At least one pair of adjacent nonzero ranks, so d can be nonzero.
  bool adjacent = w == 1 && obj.ranks[0] > 0;
  for (int i = 0; i + 1 < w; ++i) adjacent = adjacent || (obj.ranks[i] > 0 && obj.ranks[i + 1] > 0);
  if (!adjacent) {
    const int i = w == 1 ? 0 : rand_below(rng, w - 1);
    for (int j = i; j < std::min(w, i + 2); ++j)
      if (obj.ranks[j] == 0) obj.ranks[j] = 1 + rand_below(rng, std::max(1, max_rank));
  }
  return obj;
}

// d = M·x with M over F_p and x² = 0.
std::optional<PreComplex> nilpotent_complex(Rng& rng, const DeformedAlgebra& A, int max_rank, int max_window) {
  const StructureTable& t = *A.table(Level::Mid);
  std::vector<Elem> nil;
  for (std::uint64_t i = 1; i < t.cardinality(); ++i) {
    const Elem x = t.group().decode(i);
    if (t.is_zero(t.mul(x, x))) nil.push_back(x);
  }
  if (nil.empty()) return std::nullopt;
  const Elem x = nil[static_cast<std::size_t>(rand_below(rng, static_cast<int>(nil.size())))];
  GradedObject obj;
  obj.lo = -rand_below(rng, 2);
  obj.ranks.resize(static_cast<std::size_t>(std::min(max_window, 3 + rand_below(rng, 2))));
  for (auto& r : obj.ranks) r = 1 + rand_below(rng, std::max(1, max_rank));
  GradedMap d = GradedMap::zero(A, Level::Mid, obj, obj, 1);
  for (int i = obj.lo; i < obj.hi(); ++i) {
    AlgMatrix m = d.at(i);
    for (int r = 0; r < m.rows(); ++r)
      for (int c = 0; c < m.cols(); ++c) m.set(r, c, t.scale(1 + rand_below(rng, A.prime() - 1), x));
    d.set(i, std::move(m));
  }
  return PreComplex{obj, std::move(d)};
}

}  // namespace

PreComplex random_complex(Rng& rng, const DeformedAlgebra& A, int max_rank, int max_window) {
  const GradedObject obj = random_object(rng, max_rank, max_window);
  for (int attempt = 0; attempt < 200; ++attempt) {
    GradedMap d = random_map(rng, A, Level::Mid, obj, obj, 1);
    if (compose(d, d).is_zero()) return PreComplex{obj, std::move(d)};
  }
  // Alternate degrees: every second component vanishes, so d² = 0.
  GradedMap d = random_map(rng, A, Level::Mid, obj, obj, 1);
  for (int i = obj.lo + 1; i <= obj.hi(); i += 2) d.set(i, AlgMatrix(A.table(Level::Mid), Level::Mid, obj.rank(i + 1), obj.rank(i)));
  return PreComplex{obj, std::move(d)};
}

std::pair<GradedMap, GradedMap> random_automorphism(Rng& rng, const DeformedAlgebra& A, Level level,
                                                    const GradedObject& obj) {
  GradedMap a = GradedMap::identity(A, level, obj), b = a;
  const auto& table = A.table(level);
  const int p = A.prime();
  for (int i = obj.lo; i <= obj.hi(); ++i) {
    const int n = obj.rank(i);
    if (n == 0) continue;
    AlgMatrix M = a.at(i), Minv = b.at(i);
    for (int step = 0; step < 2 * n; ++step) {
      if (n > 1 && rand_below(rng, 3)) {
        const int r = rand_below(rng, n);
        const int c = (r + 1 + rand_below(rng, n - 1)) % n;
        const Elem x = random_elem(rng, *table);
        AlgMatrix E = AlgMatrix::identity(table, level, n), Einv = E;
        E.set(r, c, x);
        Einv.set(r, c, table->neg(x));
        M = E * M;
        Minv = Minv * Einv;
      } else {
        const int r = rand_below(rng, n);
        const int u = 1 + rand_below(rng, p - 1);
        const int uinv = static_cast<int>(inv_mod(u, p));
        AlgMatrix D = AlgMatrix::identity(table, level, n), Dinv = D;
        D.set(r, r, table->scale(u, table->one()));
        Dinv.set(r, r, table->scale(uinv, table->one()));
        M = D * M;
        Minv = Minv * Dinv;
      }
    }
    a.set(i, std::move(M));
    b.set(i, std::move(Minv));
  }
  return {std::move(a), std::move(b)};
}

namespace {

// Copies `block` into `into` with its top-left corner at (r0, c0).
void place(AlgMatrix& into, const AlgMatrix& block, int r0, int c0) {
  for (int r = 0; r < block.rows(); ++r)
    for (int c = 0; c < block.cols(); ++c)
      std::copy_n(block.entry(r, c), block.width(), into.entry(r0 + r, c0 + c));
}

}  // namespace

HomotopyEquivData random_homotopy_equivalence(Rng& rng, const DeformedAlgebra& A, const PreComplex& C) {
  const Level L = Level::Mid;
  const auto& table = A.table(L);
  // Contractible E: E^e → E^{e+1} an isomorphism u.
  const int e = C.obj.lo - 1 + rand_below(rng, static_cast<int>(C.obj.ranks.size()) + 1);
  const int s = 1 + rand_below(rng, 2);
  GradedObject single{0, {s}};
  auto [u, uinv] = random_automorphism(rng, A, L, single);

  GradedObject big;
  big.lo = std::min(C.obj.lo, e);
  const int hi = std::max(C.obj.hi(), e + 1);
  for (int i = big.lo; i <= hi; ++i) big.ranks.push_back(C.obj.rank(i) + (i == e || i == e + 1 ? s : 0));

  GradedMap d = GradedMap::zero(A, L, big, big, 1);
  GradedMap incl = GradedMap::zero(A, L, C.obj, big, 0);
  GradedMap proj = GradedMap::zero(A, L, big, C.obj, 0);
  GradedMap contr = GradedMap::zero(A, L, big, big, -1);
  for (int i = big.lo; i <= hi; ++i) {
    AlgMatrix di = d.at(i);
    place(di, C.d.at(i), 0, 0);
    if (i == e) place(di, u.at(0), C.obj.rank(i + 1), C.obj.rank(i));
    d.set(i, std::move(di));
    const int r = C.obj.rank(i);
    if (r > 0) {
      AlgMatrix in = incl.at(i), pr = proj.at(i);
      place(in, AlgMatrix::identity(table, L, r), 0, 0);
      place(pr, AlgMatrix::identity(table, L, r), 0, 0);
      incl.set(i, std::move(in));
      proj.set(i, std::move(pr));
    }
    if (i == e + 1) {
      AlgMatrix k = contr.at(i);
      place(k, uinv.at(0), C.obj.rank(e), C.obj.rank(e + 1));
      contr.set(i, std::move(k));
    }
  }
  auto [alpha, alpha_inv] = random_automorphism(rng, A, L, big);
  PreComplex Big{big, compose(compose(alpha, d), alpha_inv)};
  incl = compose(alpha, incl);
  proj = compose(proj, alpha_inv);
  contr = compose(compose(alpha, contr), alpha_inv);

  HomotopyEquivData E;
  if (rand_below(rng, 2)) {
    E = HomotopyEquivData{C, Big, incl, proj, GradedMap::zero(A, L, C.obj, C.obj, -1), contr};
  } else {
    E = HomotopyEquivData{Big, C, proj, incl, contr, GradedMap::zero(A, L, C.obj, C.obj, -1)};
  }
  // Perturb f by a null-homotopic map δh.
  const GradedMap h = random_map(rng, A, L, E.C.obj, E.D.obj, -1);
  E.f = E.f + delta_apply(E.C, E.D, h);
  E.H = E.H - compose(E.g, h);
  E.K = E.K - compose(h, E.g);
  E.validate(A);
  return E;
}

Instance gen_instance(const InstanceSpec& spec) {
  Rng rng(spec.seed * 0x9e3779b97f4a7c15ULL + static_cast<std::uint64_t>(spec.p));
  Tower tower = random_tower(rng, spec.p, spec.tower);
  DeformedAlgebra A = random_algebra(rng, tower, spec.algebra);
  const double budget = std::log2(static_cast<double>(spec.max_search));
  const int wbase = A.width(Level::Base);
  int max_rank = spec.max_rank;
  const bool nilpotent = rand_below(rng, 2) == 0;
  for (int attempt = 0;; ++attempt) {
    if (attempt > 0 && attempt % 50 == 0 && max_rank > 1) --max_rank;
    const int window = attempt < 300 ? spec.max_window : attempt < 600 ? std::min(spec.max_window, 2) : 1;
    std::optional<PreComplex> nil;
    if (nilpotent && attempt < 200) nil = nilpotent_complex(rng, A, attempt < 20 ? max_rank : 1, window);
    PreComplex C = nil ? std::move(*nil) : random_complex(rng, A, max_rank, window);
    long long dims = 0;
    for (int n = 0; n <= 1; ++n)
      for (int i = C.obj.lo; i <= C.obj.hi(); ++i) dims += 1LL * C.obj.rank(i) * C.obj.rank(i + n) * wbase;
    dims *= tower.j_dim();
    if (static_cast<double>(dims) * std::log2(static_cast<double>(spec.p)) <= budget || attempt > 1000)
      return Instance{spec, std::move(A), std::move(C)};
  }
}

}  // namespace clift
