#include "clift/finring.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

#include "clift/fp_linalg.hpp"

namespace clift {

namespace {

int ipow(int base, int e) {
  int r = 1;
  for (int i = 0; i < e; ++i) r *= base;
  return r;
}

std::string elem_str(const Elem& x) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < x.size(); ++i) os << (i ? "," : "") << x[i];
  os << ')';
  return os.str();
}

}  // namespace

// ---------------------------------------------------------------- AdditiveGroup

AdditiveGroup::AdditiveGroup(int p, std::vector<int> exponents) : p_(p), exps_(std::move(exponents)) {
  require(is_prime(p), Errc::NonPrime, std::to_string(p) + " is not prime");
  orders_.reserve(exps_.size());
  card_ = 1;
  for (int e : exps_) {
    require(e >= 1 && e <= 30, Errc::ValidationError, "additive exponent out of range");
    const int o = ipow(p, e);
    require(o > 0 && o < (1 << 24), Errc::CapExceeded, "additive order too large");
    orders_.push_back(o);
    if (card_ > std::numeric_limits<std::uint64_t>::max() / static_cast<std::uint64_t>(o))
      card_ = std::numeric_limits<std::uint64_t>::max();
    else
      card_ *= static_cast<std::uint64_t>(o);
  }
}

Elem AdditiveGroup::unit_vector(int i) const {
  Elem x = zero();
  x.at(i) = 1;
  return x;
}

void AdditiveGroup::reduce(std::span<int> x) const {
  for (std::size_t i = 0; i < x.size(); ++i) {
    int v = x[i] % orders_[i];
    x[i] = v < 0 ? v + orders_[i] : v;
  }
}

Elem AdditiveGroup::add(const Elem& a, const Elem& b) const {
  Elem r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    int v = a[i] + b[i];
    r[i] = v >= orders_[i] ? v - orders_[i] : v;
  }
  return r;
}

Elem AdditiveGroup::sub(const Elem& a, const Elem& b) const {
  Elem r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    int v = a[i] - b[i];
    r[i] = v < 0 ? v + orders_[i] : v;
  }
  return r;
}

Elem AdditiveGroup::neg(const Elem& a) const { return sub(zero(), a); }

Elem AdditiveGroup::scale(long long k, const Elem& a) const {
  Elem r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    long long v = (k % orders_[i]) * a[i] % orders_[i];
    r[i] = static_cast<int>(v < 0 ? v + orders_[i] : v);
  }
  return r;
}

bool AdditiveGroup::is_zero(const Elem& a) const {
  return std::all_of(a.begin(), a.end(), [](int v) { return v == 0; });
}

int AdditiveGroup::order_exponent(const Elem& a) const {
  int k = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    int v = a[i];
    int e = exps_[i];
    while (v % p_ == 0) {
      v /= p_;
      --e;
    }
    k = std::max(k, e);
  }
  return k;
}

std::uint64_t AdditiveGroup::encode(std::span<const int> x) const {
  std::uint64_t idx = 0;
  for (std::size_t i = 0; i < x.size(); ++i) idx = idx * static_cast<std::uint64_t>(orders_[i]) + static_cast<std::uint64_t>(x[i]);
  return idx;
}

Elem AdditiveGroup::decode(std::uint64_t index) const {
  Elem x(exps_.size());
  for (std::size_t i = exps_.size(); i-- > 0;) {
    x[i] = static_cast<int>(index % static_cast<std::uint64_t>(orders_[i]));
    index /= static_cast<std::uint64_t>(orders_[i]);
  }
  return x;
}

// --------------------------------------------------------------- StructureTable

StructureTable::StructureTable(int p, std::vector<int> exponents, std::vector<int> constants)
    : group_(p, std::move(exponents)), constants_(std::move(constants)) {
  const int n = dim();
  require(n >= 1, Errc::BadDimensions, "empty basis");
  require(constants_.size() == static_cast<std::size_t>(n) * n * n, Errc::BadDimensions,
          "structure constant table has wrong size");
  // Canonicalize each product b_a·b_b.
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      group_.reduce(std::span<int>(constants_.data() + (static_cast<std::size_t>(a) * n + b) * n, n));
  nonzero_.resize(static_cast<std::size_t>(n) * n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int k = 0; k < n; ++k)
        if (int c = constant(a, b, k); c != 0) nonzero_[static_cast<std::size_t>(a) * n + b].push_back({k, c});

  // Well-defined: order(b_a)·(b_a b_b) = 0 and (b_b b_a)·order(b_a) = 0.
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      Elem ab(constants_.begin() + (static_cast<std::ptrdiff_t>(a) * n + b) * n,
              constants_.begin() + (static_cast<std::ptrdiff_t>(a) * n + b + 1) * n);
      Elem ba(constants_.begin() + (static_cast<std::ptrdiff_t>(b) * n + a) * n,
              constants_.begin() + (static_cast<std::ptrdiff_t>(b) * n + a + 1) * n);
      require(group_.is_zero(group_.scale(order(a), ab)) && group_.is_zero(group_.scale(order(a), ba)),
              Errc::ValidationError, "products are not well defined modulo additive orders");
      if (ab != ba) commutative_ = false;
    }
  for (int b = 0; b < n; ++b) {
    require(mul(one(), basis(b)) == basis(b) && mul(basis(b), one()) == basis(b), Errc::NotUnital,
            "b_0 is not a two-sided unit on b_" + std::to_string(b));
  }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c) {
        const Elem lhs = mul(mul(basis(a), basis(b)), basis(c));
        const Elem rhs = mul(basis(a), mul(basis(b), basis(c)));
        require(lhs == rhs, Errc::NotAssociative,
                "(b_" + std::to_string(a) + " b_" + std::to_string(b) + ") b_" + std::to_string(c) +
                    " != b_" + std::to_string(a) + " (b_" + std::to_string(b) + " b_" + std::to_string(c) + ")");
      }
}

void StructureTable::mul_accumulate(const int* x, const int* y, std::int64_t* acc) const {
  const int n = dim();
  for (int a = 0; a < n; ++a) {
    if (x[a] == 0) continue;
    for (int b = 0; b < n; ++b) {
      if (y[b] == 0) continue;
      const std::int64_t xy = static_cast<std::int64_t>(x[a]) * y[b];
      for (const Term& t : nonzero_[static_cast<std::size_t>(a) * n + b]) acc[t.k] += xy * t.c;
    }
  }
}

void StructureTable::reduce_into(const std::int64_t* acc, int* out) const {
  for (int k = 0; k < dim(); ++k) {
    const std::int64_t o = order(k);
    std::int64_t v = acc[k] % o;
    out[k] = static_cast<int>(v < 0 ? v + o : v);
  }
}

Elem StructureTable::mul(const Elem& a, const Elem& b) const {
  std::vector<std::int64_t> acc(dim(), 0);
  mul_accumulate(a.data(), b.data(), acc.data());
  Elem r(dim());
  reduce_into(acc.data(), r.data());
  return r;
}

Elem StructureTable::pow(const Elem& a, int n) const {
  Elem r = one();
  for (int i = 0; i < n; ++i) r = mul(r, a);
  return r;
}

// ------------------------------------------------------------------ FiniteRing

FiniteRing::FiniteRing(std::shared_ptr<const StructureTable> table) : table_(std::move(table)) {
  require(table_ != nullptr, Errc::InvalidArgument, "null table");
  require(table_->is_commutative(), Errc::NotCommutative, "ring multiplication is not commutative");
}

FiniteRing::FiniteRing(int p, std::vector<int> exponents, std::vector<int> constants)
    : FiniteRing(std::make_shared<const StructureTable>(p, std::move(exponents), std::move(constants))) {}

std::vector<Elem> FiniteRing::elements() const {
  std::vector<Elem> out;
  const std::uint64_t n = cardinality();
  out.reserve(n);
  for (std::uint64_t i = 0; i < n; ++i) out.push_back(table_->group().decode(i));
  return out;
}

FiniteRing prime_field(int p) { return FiniteRing(p, {1}, {1}); }

FiniteRing zmod_ring(int p, int exponent) { return FiniteRing(p, {exponent}, {1}); }

FiniteRing trunc_poly_ring(int p, int n) {
  require(n >= 1, Errc::InvalidArgument, "truncation order must be >= 1");
  std::vector<int> c(static_cast<std::size_t>(n) * n * n, 0);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (a + b < n) c[(static_cast<std::size_t>(a) * n + b) * n + a + b] = 1;
  return FiniteRing(p, std::vector<int>(n, 1), std::move(c));
}

FiniteRing square_zero_ring(int p, int r) {
  require(r >= 0, Errc::InvalidArgument, "negative variable count");
  const int n = r + 1;
  std::vector<int> c(static_cast<std::size_t>(n) * n * n, 0);
  for (int a = 0; a < n; ++a) {
    c[(static_cast<std::size_t>(0) * n + a) * n + a] = 1;
    c[(static_cast<std::size_t>(a) * n + 0) * n + a] = 1;
  }
  return FiniteRing(p, std::vector<int>(n, 1), std::move(c));
}

// --------------------------------------------------------------------- RingHom

RingHom::RingHom(FiniteRing source, FiniteRing target, std::vector<Elem> images)
    : source_(std::move(source)), target_(std::move(target)), images_(std::move(images)) {
  require(source_.prime() == target_.prime(), Errc::CharMismatch, "ring map between different primes");
  require(static_cast<int>(images_.size()) == source_.dim(), Errc::BadDimensions, "one image per source basis element");
  const auto& tg = target_.table().group();
  for (auto& img : images_) {
    require(static_cast<int>(img.size()) == target_.dim(), Errc::BadDimensions, "image has wrong length");
    tg.reduce(img);
  }
  for (int a = 0; a < source_.dim(); ++a)
    require(tg.is_zero(tg.scale(source_.table().order(a), images_[a])), Errc::NotHomomorphism,
            "image of b_" + std::to_string(a) + " violates its additive order");
  require(images_[0] == target_.one(), Errc::NotHomomorphism, "ring map is not unital");
  for (int a = 0; a < source_.dim(); ++a)
    for (int b = 0; b < source_.dim(); ++b) {
      const Elem lhs = apply(source_.mul(source_.table().basis(a), source_.table().basis(b)));
      const Elem rhs = target_.mul(images_[a], images_[b]);
      require(lhs == rhs, Errc::NotHomomorphism,
              "ring map is not multiplicative on b_" + std::to_string(a) + ", b_" + std::to_string(b));
    }
}

Elem RingHom::apply(const Elem& x) const {
  const auto& tg = target_.table().group();
  std::vector<long long> acc(target_.dim(), 0);
  for (int a = 0; a < source_.dim(); ++a) {
    if (x[a] == 0) continue;
    for (int k = 0; k < target_.dim(); ++k) acc[k] += static_cast<long long>(x[a]) * images_[a][k];
  }
  Elem r(target_.dim());
  for (int k = 0; k < target_.dim(); ++k) {
    long long o = tg.order(k);
    long long v = acc[k] % o;
    r[k] = static_cast<int>(v < 0 ? v + o : v);
  }
  return r;
}

bool RingHom::is_surjective() const {
  return subgroup_elements(target_.table().group(), images_).size() == target_.cardinality();
}

std::vector<Elem> RingHom::kernel() const {
  std::vector<Elem> out;
  const auto& sg = source_.table().group();
  for (std::uint64_t i = 0; i < source_.cardinality(); ++i) {
    Elem x = sg.decode(i);
    if (target_.is_zero(apply(x))) out.push_back(std::move(x));
  }
  return out;
}

RingHom RingHom::then(const RingHom& next) const {
  require(next.source() == target_, Errc::TargetMismatch, "composite of incompatible ring maps");
  std::vector<Elem> imgs;
  for (const Elem& img : images_) imgs.push_back(next.apply(img));
  return RingHom(source_, next.target(), std::move(imgs));
}

// ----------------------------------------------------------- subgroup helpers

std::vector<Elem> subgroup_elements(const AdditiveGroup& g, const std::vector<Elem>& generators) {
  const std::uint64_t card = g.cardinality();
  std::vector<bool> seen(card, false);
  std::vector<Elem> out{g.zero()};
  seen[g.encode(out[0])] = true;
  for (std::size_t i = 0; i < out.size(); ++i) {
    for (const Elem& gen : generators) {
      Elem y = g.add(out[i], gen);
      const std::uint64_t idx = g.encode(y);
      if (!seen[idx]) {
        seen[idx] = true;
        out.push_back(std::move(y));
      }
    }
  }
  std::sort(out.begin(), out.end(), [&](const Elem& a, const Elem& b) { return g.encode(a) < g.encode(b); });
  return out;
}

AdditiveBasis additive_basis(const AdditiveGroup& g, const std::vector<Elem>& elements, const std::vector<Elem>& seeds) {
  AdditiveBasis basis;
  std::vector<bool> in_h(g.cardinality(), false);
  std::vector<Elem> h{g.zero()};
  in_h[g.encode(h[0])] = true;
  const auto adjoin = [&](const Elem& x, int e) {
    std::vector<Elem> grown;
    grown.reserve(h.size() * static_cast<std::size_t>(std::max(1, e)));
    Elem multiple = g.zero();
    long long count = 1;
    for (int i = 0; i < e; ++i) count *= g.prime();
    for (long long j = 0; j < count; ++j) {
      for (const Elem& y : h) {
        Elem z = g.add(y, multiple);
        const std::uint64_t idx = g.encode(z);
        if (!in_h[idx]) {
          in_h[idx] = true;
          grown.push_back(std::move(z));
        }
      }
      multiple = g.add(multiple, x);
    }
    for (auto& z : grown) h.push_back(std::move(z));
    basis.generators.push_back(x);
    basis.exponents.push_back(e);
  };
  const auto coset_order = [&](const Elem& x) {
    Elem y = x;
    int k = 0;
    while (!in_h[g.encode(y)]) {
      y = g.scale(g.prime(), y);
      ++k;
    }
    return k;
  };
  for (const Elem& s : seeds) {
    const int e = g.order_exponent(s);
    require(e > 0 && coset_order(s) == e, Errc::ValidationError, "seed does not extend to a basis");
    adjoin(s, e);
  }
  while (h.size() < elements.size()) {
    const Elem* best = nullptr;
    int best_e = 0;
    for (const Elem& x : elements) {
      const int c = coset_order(x);
      if (c <= best_e) continue;
      if (g.order_exponent(x) == c) {
        best = &x;
        best_e = c;
      }
    }
    require(best != nullptr, Errc::ValidationError, "additive_basis: element list is not a subgroup");
    adjoin(*best, best_e);
  }
  require(h.size() == elements.size(), Errc::ValidationError, "additive_basis: element list is not a subgroup");
  return basis;
}

// ----------------------------------------------------------------------- Tower

const char* tower_kind_name(TowerKind kind) noexcept {
  switch (kind) {
    case TowerKind::ZMod: return "zmod";
    case TowerKind::TruncPoly: return "trunc_poly";
    case TowerKind::SquareZero: return "square_zero";
    case TowerKind::Custom: return "custom";
  }
  return "custom";
}

TowerKind tower_kind_from_name(const std::string& name) {
  if (name == "zmod") return TowerKind::ZMod;
  if (name == "trunc_poly") return TowerKind::TruncPoly;
  if (name == "square_zero") return TowerKind::SquareZero;
  if (name == "custom") return TowerKind::Custom;
  fail(Errc::InvalidArgument, "unknown tower kind '" + name + "'");
}

bool has_nil_residue_kernel(const RingHom& residue) {
  const FiniteRing& r = residue.source();
  const std::vector<Elem> ker = residue.kernel();
  const AdditiveBasis gens = additive_basis(r.table().group(), ker);
  int length = 0;
  for (int e : r.table().group().exponents()) length += e;
  for (const Elem& x : gens.generators)
    if (!r.is_zero(r.table().pow(x, length))) return false;
  return true;
}

namespace {

/// p-torsion coordinates: for x with p·x = 0, y_i = x_i / p^{e_i - 1}.
std::vector<int> torsion_coords(const AdditiveGroup& g, const Elem& x) {
  std::vector<int> y(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const int step = g.order(static_cast<int>(i)) / g.prime();
    require(x[i] % step == 0, Errc::NotInKernel, "element is not p-torsion");
    y[i] = x[i] / step;
  }
  return y;
}

}  // namespace

Tower::Tower(FiniteRing bar, FiniteRing mid, FiniteRing base, RingHom bar_to_mid, RingHom mid_to_base,
             const Caps& caps)
    : bar_(std::move(bar)),
      mid_(std::move(mid)),
      base_(std::move(base)),
      bar_to_mid_(std::move(bar_to_mid)),
      mid_to_base_(std::move(mid_to_base)) {
  const int p = bar_.prime();
  require(p <= caps.max_prime, Errc::CapExceeded, "prime " + std::to_string(p) + " exceeds cap");
  require(bar_.cardinality() <= caps.max_ring_order, Errc::CapExceeded, "|R̄| exceeds cap");
  require(mid_.prime() == p && base_.prime() == p, Errc::CharMismatch, "tower rings must share p");
  require(base_.is_prime_field(), Errc::ValidationError, "R₀ must be the prime field F_p");
  require(bar_to_mid_.source() == bar_ && bar_to_mid_.target() == mid_, Errc::TargetMismatch, "π̄ endpoints");
  require(mid_to_base_.source() == mid_ && mid_to_base_.target() == base_, Errc::TargetMismatch, "π endpoints");
  require(bar_to_mid_.is_surjective() && mid_to_base_.is_surjective(), Errc::NotSurjective,
          "tower maps must be surjective");
  const RingHom to_base = bar_to_mid_.then(mid_to_base_);
  require(has_nil_residue_kernel(to_base), Errc::NotLocal, "R̄ is not local over F_p");

  // σ: coefficient-wise minimal preimage of each basis element of R.
  const auto& bg = bar_.table().group();
  section_.assign(mid_.dim(), Elem{});
  std::vector<bool> found(mid_.dim(), false);
  int remaining = mid_.dim();
  for (std::uint64_t i = 0; i < bar_.cardinality() && remaining > 0; ++i) {
    const Elem x = bg.decode(i);
    const Elem y = bar_to_mid_.apply(x);
    for (int v = 0; v < mid_.dim(); ++v) {
      if (!found[v] && y == mid_.table().basis(v)) {
        found[v] = true;
        section_[v] = x;
        --remaining;
      }
    }
  }
  require(remaining == 0, Errc::NotSurjective, "no preimage for a basis element of R");

  // I and J.
  const std::vector<Elem> i_elems = to_base.kernel();
  i_generators_ = additive_basis(bg, i_elems).generators;
  const std::vector<Elem> j_elems = bar_to_mid_.kernel();
  for (const Elem& j : j_elems)
    require(bar_.is_zero(bg.scale(p, j)), Errc::IJNonzero,
            "I·J != 0: generator pair i=p·1, j=" + elem_str(j) + " (p·j != 0)");
  std::vector<FpVector> ys;
  for (const Elem& j : j_elems) ys.push_back(torsion_coords(bg, j));
  const Subspace js = Subspace::span(p, bar_.dim(), ys);
  std::vector<Elem> jb;
  for (const FpVector& row : js.basis()) {
    Elem x(bar_.dim());
    for (int i = 0; i < bar_.dim(); ++i) x[i] = row[i] * (bg.order(i) / p);
    jb.push_back(std::move(x));
  }
  set_j_basis(std::move(jb));
  require(static_cast<std::uint64_t>(j_elems.size()) == [&] {
    std::uint64_t n = 1;
    for (int s = 0; s < j_dim(); ++s) n *= static_cast<std::uint64_t>(p);
    return n;
  }(), Errc::ValidationError, "J is not an F_p-vector space");

  for (const Elem& i : i_generators_)
    for (const Elem& j : j_basis_)
      require(bar_.is_zero(bar_.mul(i, j)), Errc::IJNonzero,
              "I·J != 0: generator pair i=" + elem_str(i) + ", j=" + elem_str(j));
}

void Tower::set_j_basis(std::vector<Elem> basis) {
  const int p = prime();
  const auto& bg = bar_.table().group();
  const int t = static_cast<int>(basis.size());
  const int m = bar_.dim();
  FpMatrix aug(p, t, m + t);
  for (int s = 0; s < t; ++s) {
    require(bar_.is_zero(bar_to_mid_.apply(basis[s])), Errc::NotInKernel, "J-basis element not in J");
    const std::vector<int> y = torsion_coords(bg, basis[s]);
    for (int i = 0; i < m; ++i) aug.at(s, i) = y[i];
    aug.at(s, m + s) = 1;
  }
  const Echelon e = row_reduce(aug);
  require(t == 0 || (e.rank() == t && e.pivots.back() < m), Errc::ValidationError, "J-basis is not independent");
  j_basis_ = std::move(basis);
  j_pivots_ = e.pivots;
  j_transform_.assign(t, std::vector<int>(t, 0));
  for (int r = 0; r < t; ++r)
    for (int c = 0; c < t; ++c) j_transform_[r][c] = e.rref.at(r, m + c);
}

Tower Tower::with_j_basis(std::vector<Elem> basis) const {
  Tower t = *this;
  require(static_cast<int>(basis.size()) == j_dim(), Errc::ValidationError, "J-basis has wrong size");
  t.set_j_basis(std::move(basis));
  return t;
}

Elem Tower::lift(const Elem& x) const {
  Elem r = bar_.zero();
  for (int v = 0; v < mid_.dim(); ++v)
    if (x[v] != 0) r = bar_.add(r, bar_.table().scale(x[v], section_[v]));
  return r;
}

std::vector<int> Tower::j_coordinates(const Elem& x) const {
  require(bar_.is_zero(bar_to_mid_.apply(x)), Errc::NotInKernel, "element " + elem_str(x) + " is not in J");
  const int p = prime();
  const int t = j_dim();
  const std::vector<int> y = torsion_coords(bar_.table().group(), x);
  std::vector<int> coords(t, 0);
  for (int r = 0; r < t; ++r) {
    const int c = y[j_pivots_[r]];
    if (c == 0) continue;
    for (int s = 0; s < t; ++s) coords[s] = mod_p(coords[s] + 1LL * c * j_transform_[r][s], p);
  }
  return coords;
}

Tower mk_tower(TowerKind kind, int p, TowerParams params, const Caps& caps) {
  require(is_prime(p), Errc::NonPrime, std::to_string(p) + " is not prime");
  require(p <= caps.max_prime, Errc::CapExceeded, "prime " + std::to_string(p) + " exceeds cap");
  FiniteRing bar, mid;
  const FiniteRing base = prime_field(p);
  std::vector<Elem> to_mid, to_base;
  switch (kind) {
    case TowerKind::ZMod:
    case TowerKind::TruncPoly: {
      const int a = params.a, b = params.b;
      require(a >= b && b >= 1 && a <= b + 1, Errc::InvalidArgument, "need a >= b >= 1 and a <= b+1");
      if (kind == TowerKind::ZMod) {
        bar = zmod_ring(p, a);
        mid = zmod_ring(p, b);
        to_mid = {{1}};
        to_base = {{1}};
      } else {
        bar = trunc_poly_ring(p, a);
        mid = trunc_poly_ring(p, b);
        for (int i = 0; i < a; ++i) {
          Elem x(b, 0);
          if (i < b) x[i] = 1;
          to_mid.push_back(x);
        }
        for (int i = 0; i < b; ++i) to_base.push_back({i == 0 ? 1 : 0});
      }
      break;
    }
    case TowerKind::SquareZero: {
      require(params.r >= 0, Errc::InvalidArgument, "square_zero needs r >= 0");
      bar = square_zero_ring(p, params.r);
      mid = base;
      for (int i = 0; i <= params.r; ++i) to_mid.push_back({i == 0 ? 1 : 0});
      to_base = {{1}};
      break;
    }
    case TowerKind::Custom:
      fail(Errc::InvalidArgument, "custom towers are built from explicit rings");
  }
  require(bar.cardinality() <= caps.max_ring_order, Errc::CapExceeded, "|R̄| exceeds cap");
  RingHom pm(bar, mid, to_mid);
  RingHom pb(mid, base, to_base);
  Tower t(bar, mid, base, pm, pb, caps);
  t.kind_ = kind;
  t.params_ = params;
  return t;
}

// ---------------------------------------------------------------- fiber product

Elem FiberProduct::pair(const Elem& a, const Elem& b) const {
  const auto key = std::make_pair(to_first.target().table().group().encode(a),
                                  to_second.target().table().group().encode(b));
  auto it = lookup->find(key);
  require(it != lookup->end(), Errc::InvalidArgument, "pair is not compatible over the common target");
  return it->second;
}

FiberProduct ring_fiber_product(const RingHom& first, const RingHom& second, const Caps& caps) {
  require(first.source().prime() == second.source().prime(), Errc::CharMismatch, "fiber product over different primes");
  require(first.target() == second.target(), Errc::TargetMismatch, "fiber product needs a common target");
  const FiniteRing& r1 = first.source();
  const FiniteRing& r2 = second.source();
  const int p = r1.prime();
  const int m1 = r1.dim();
  std::vector<int> exps = r1.table().group().exponents();
  for (int e : r2.table().group().exponents()) exps.push_back(e);
  const AdditiveGroup sum(p, exps);

  // Bucket by image in the common target.
  std::map<std::uint64_t, std::vector<Elem>> by_image;
  for (const Elem& b : r2.elements()) by_image[second.target().table().group().encode(second.apply(b))].push_back(b);
  std::vector<Elem> elements;
  for (const Elem& a : r1.elements()) {
    auto it = by_image.find(first.target().table().group().encode(first.apply(a)));
    if (it == by_image.end()) continue;
    for (const Elem& b : it->second) {
      Elem ab = a;
      ab.insert(ab.end(), b.begin(), b.end());
      elements.push_back(std::move(ab));
    }
  }
  require(elements.size() <= caps.max_ring_order, Errc::CapExceeded, "fiber product exceeds ring cap");
  std::sort(elements.begin(), elements.end(), [&](const Elem& x, const Elem& y) { return sum.encode(x) < sum.encode(y); });

  const auto split = [&](const Elem& ab) {
    return std::make_pair(Elem(ab.begin(), ab.begin() + m1), Elem(ab.begin() + m1, ab.end()));
  };
  const auto join = [](Elem a, const Elem& b) {
    a.insert(a.end(), b.begin(), b.end());
    return a;
  };
  const Elem unit = join(r1.one(), r2.one());
  const AdditiveBasis basis = additive_basis(sum, elements, {unit});
  const int n = static_cast<int>(basis.generators.size());
  const AdditiveGroup coords_group(p, basis.exponents);

  // Coordinates of every element in the new basis.
  std::map<std::uint64_t, Elem> coords_of;
  for (std::uint64_t i = 0; i < coords_group.cardinality(); ++i) {
    const Elem c = coords_group.decode(i);
    Elem x = sum.zero();
    for (int g = 0; g < n; ++g)
      if (c[g] != 0) x = sum.add(x, sum.scale(c[g], basis.generators[g]));
    coords_of[sum.encode(x)] = c;
  }
  std::vector<int> constants(static_cast<std::size_t>(n) * n * n, 0);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      const auto [a1, a2] = split(basis.generators[a]);
      const auto [b1, b2] = split(basis.generators[b]);
      const Elem prod = join(r1.mul(a1, b1), r2.mul(a2, b2));
      const Elem& c = coords_of.at(sum.encode(prod));
      for (int k = 0; k < n; ++k) constants[(static_cast<std::size_t>(a) * n + b) * n + k] = c[k];
    }
  FiniteRing ring(p, basis.exponents, constants);
  std::vector<Elem> img1, img2;
  for (const Elem& g : basis.generators) {
    const auto [g1, g2] = split(g);
    img1.push_back(g1);
    img2.push_back(g2);
  }
  auto lookup = std::make_shared<std::map<std::pair<std::uint64_t, std::uint64_t>, Elem>>();
  for (const auto& [idx, c] : coords_of) {
    const auto [x1, x2] = split(sum.decode(idx));
    (*lookup)[{r1.table().group().encode(x1), r2.table().group().encode(x2)}] = c;
  }
  return FiberProduct{ring, RingHom(ring, r1, img1), RingHom(ring, r2, img2), std::move(lookup)};
}

}  // namespace clift
