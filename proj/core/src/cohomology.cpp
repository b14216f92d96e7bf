#include "clift/cohomology.hpp"

namespace clift {

namespace {

FpMatrix block_diagonal(const FpMatrix& m, int copies) {
  FpMatrix out(m.prime(), m.rows() * copies, m.cols() * copies);
  for (int s = 0; s < copies; ++s)
    for (int r = 0; r < m.rows(); ++r)
      for (int c = 0; c < m.cols(); ++c) out.at(s * m.rows() + r, s * m.cols() + c) = m.at(r, c);
  return out;
}

}  // namespace

KernelComplex::KernelComplex(DeformedAlgebra A, PreComplex C0, PreComplex D0)
    : A_(std::move(A)), C0_(std::move(C0)), D0_(std::move(D0)) {
  require(C0_.level() == Level::Base && D0_.level() == Level::Base, Errc::LevelMismatch,
          "the kernel complex is built from base-level complexes");
  require(C0_.is_differential() && D0_.is_differential(), Errc::NotADifferential,
          "kernel complex endpoints must be complexes");
  const int p = prime();
  const int t = j_dim();
  const HomComplex hc = hom_complex(C0_, D0_);
  lo_ = hc.min_degree() - 1;
  hi_ = hc.max_degree() + 1;
  empty_.base_delta = FpMatrix(p, 0, 0);
  empty_.delta = FpMatrix(p, 0, 0);
  empty_.cocycles = Subspace(p, 0);
  empty_.coboundaries = Subspace(p, 0);
  for (int n = lo_; n <= hi_; ++n) degrees_[n].hom_dim = static_cast<int>(hc.dim(n));
  for (int n = lo_; n <= hi_; ++n) {
    Degree& d = degrees_[n];
    const int rows = n + 1 <= hi_ ? degrees_[n + 1].hom_dim : 0;
    d.base_delta = FpMatrix(p, rows, d.hom_dim);
    for (int c = 0; c < d.hom_dim; ++c) {
      FpVector e(d.hom_dim, 0);
      e[c] = 1;
      const GradedMap image = hc.delta(hom_map(e, n));
      if (rows > 0) d.base_delta.set_column(c, hom_coords(image));
    }
    d.delta = block_diagonal(d.base_delta, t);
  }
  for (int n = lo_; n <= hi_; ++n) {
    Degree& d = degrees_[n];
    d.cocycles = Subspace::span(p, t * d.hom_dim, nullspace(d.delta));
    if (n - 1 >= lo_)
      d.coboundaries = Subspace::column_space(degrees_[n - 1].delta);
    else
      d.coboundaries = Subspace(p, t * d.hom_dim);
  }
}

const KernelComplex::Degree& KernelComplex::degree(int n) const {
  auto it = degrees_.find(n);
  return it == degrees_.end() ? empty_ : it->second;
}

int KernelComplex::hom_dim(int n) const { return degree(n).hom_dim; }
const FpMatrix& KernelComplex::differential(int n) const { return degree(n).delta; }
const FpMatrix& KernelComplex::base_differential(int n) const { return degree(n).base_delta; }
const Subspace& KernelComplex::cocycles(int n) const { return degree(n).cocycles; }
const Subspace& KernelComplex::coboundaries(int n) const { return degree(n).coboundaries; }

FpVector KernelComplex::hom_coords(const GradedMap& base_map) const {
  require(base_map.level() == Level::Base, Errc::LevelMismatch, "Hom₀ coordinates need a base-level map");
  require(base_map.source() == C0_.obj && base_map.target() == D0_.obj, Errc::ShapeMismatch,
          "map does not belong to Hom(C₀, D₀)");
  // Re-read on the canonical windows so the coordinate layout never depends on the input's window.
  GradedMap m = GradedMap::zero(A_, Level::Base, C0_.obj, D0_.obj, base_map.degree());
  for (int i = C0_.obj.lo; i <= C0_.obj.hi(); ++i) m.set(i, base_map.at(i));
  return m.flatten();
}

GradedMap KernelComplex::hom_map(const FpVector& x, int n) const {
  GradedMap m = GradedMap::zero(A_, Level::Base, C0_.obj, D0_.obj, n);
  m.assign_flat(x);
  return m;
}

FpVector KernelComplex::into_kernel(const GradedMap& m) const {
  require(m.level() == Level::Bar, Errc::LevelMismatch, "kernel elements live at the bar level");
  const int n = m.degree();
  const int t = j_dim();
  const int h = hom_dim(n);
  FpVector out(static_cast<std::size_t>(t) * h, 0);
  std::vector<GradedMap> per_s(t, GradedMap::zero(A_, Level::Base, C0_.obj, D0_.obj, n));
  for (int i = C0_.obj.lo; i <= C0_.obj.hi(); ++i) {
    const AlgMatrix comp = m.at(i);
    if (comp.rows() == 0 || comp.cols() == 0) continue;
    const std::vector<AlgMatrix> coords = A_.kernel_coords(comp);
    for (int s = 0; s < t; ++s) per_s[s].set(i, coords[s]);
  }
  if (t == 0) {
    require(reduce(A_, m, Level::Mid).is_zero(), Errc::NotInKernel, "map does not reduce to zero");
    return out;
  }
  for (int s = 0; s < t; ++s) {
    const FpVector v = per_s[s].flatten();
    std::copy(v.begin(), v.end(), out.begin() + static_cast<std::ptrdiff_t>(s) * h);
  }
  return out;
}

GradedMap KernelComplex::out_of_kernel(const FpVector& x, int n) const {
  const int t = j_dim();
  const int h = hom_dim(n);
  require(static_cast<int>(x.size()) == t * h, Errc::BadDimensions, "kernel coordinate vector has wrong length");
  GradedMap out = GradedMap::zero(A_, Level::Bar, C0_.obj, D0_.obj, n);
  std::vector<GradedMap> per_s;
  for (int s = 0; s < t; ++s)
    per_s.push_back(hom_map(FpVector(x.begin() + static_cast<std::ptrdiff_t>(s) * h,
                                     x.begin() + static_cast<std::ptrdiff_t>(s + 1) * h),
                            n));
  for (int i = C0_.obj.lo; i <= C0_.obj.hi(); ++i) {
    if (out.at(i).rows() == 0 || out.at(i).cols() == 0) continue;
    std::vector<AlgMatrix> coords;
    for (int s = 0; s < t; ++s) coords.push_back(per_s[s].at(i));
    if (t > 0) out.set(i, A_.reconstruct(coords));
  }
  return out;
}

CohClass coh_class(const KernelComplex& K, const FpVector& z, int n) {
  require(static_cast<int>(z.size()) == K.dim(n), Errc::BadDimensions, "cochain has wrong length");
  require(is_zero(K.apply(n, z)), Errc::NotACocycle, "δz != 0 in degree " + std::to_string(n));
  return CohClass{n, K.coboundaries(n).reduce(z)};
}

std::optional<FpVector> is_coboundary(const KernelComplex& K, const FpVector& z, int n) {
  require(static_cast<int>(z.size()) == K.dim(n), Errc::BadDimensions, "cochain has wrong length");
  if (K.dim(n - 1) == 0) {
    if (is_zero(z)) return FpVector{};
    return std::nullopt;
  }
  return solve(K.differential(n - 1), z);
}

int h_dim(const KernelComplex& K, int n) { return K.cocycles(n).dim() - K.coboundaries(n).dim(); }

std::vector<FpVector> cohomology_basis(const KernelComplex& K, int n) {
  std::vector<FpVector> reduced;
  for (const FpVector& z : K.cocycles(n).basis()) reduced.push_back(K.coboundaries(n).reduce(z));
  return Subspace::span(K.prime(), K.dim(n), reduced).basis();
}

std::vector<FpVector> cohomology_elements(const KernelComplex& K, int n, std::uint64_t cap) {
  const std::vector<FpVector> basis = cohomology_basis(K, n);
  const int p = K.prime();
  std::uint64_t count = 1;
  for (std::size_t i = 0; i < basis.size(); ++i) {
    count *= static_cast<std::uint64_t>(p);
    require(count <= cap, Errc::CapExceeded, "too many cohomology classes to enumerate");
  }
  std::vector<FpVector> out;
  out.reserve(count);
  std::vector<int> coef(basis.size(), 0);
  for (std::uint64_t idx = 0; idx < count; ++idx) {
    std::uint64_t rest = idx;
    for (std::size_t b = basis.size(); b-- > 0;) {
      coef[b] = static_cast<int>(rest % static_cast<std::uint64_t>(p));
      rest /= static_cast<std::uint64_t>(p);
    }
    FpVector v(K.dim(n), 0);
    for (std::size_t b = 0; b < basis.size(); ++b)
      if (coef[b]) v = add(v, scale(basis[b], coef[b], p), p);
    out.push_back(std::move(v));
  }
  return out;
}

}  // namespace clift
