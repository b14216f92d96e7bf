#include "clift/complex.hpp"

#include <algorithm>
#include <numeric>

namespace clift {

int GradedObject::total_rank() const noexcept { return std::accumulate(ranks.begin(), ranks.end(), 0); }

bool GradedObject::operator==(const GradedObject& o) const noexcept {
  // Windows may differ by zero ranks at either end.
  const int a = std::min(lo, o.lo);
  const int b = std::max(hi(), o.hi());
  for (int i = a; i <= b; ++i)
    if (rank(i) != o.rank(i)) return false;
  return true;
}

// ------------------------------------------------------------------- GradedMap

GradedMap::GradedMap(std::shared_ptr<const StructureTable> table, Level level, GradedObject source,
                     GradedObject target, int degree)
    : table_(std::move(table)), level_(level), source_(std::move(source)), target_(std::move(target)), degree_(degree) {
  for (int r : source_.ranks) require(r >= 0, Errc::BadDimensions, "negative rank");
  for (int r : target_.ranks) require(r >= 0, Errc::BadDimensions, "negative rank");
  for (int i = source_.lo; i <= source_.hi(); ++i)
    comps_.emplace_back(table_, level_, target_.rank(i + degree_), source_.rank(i));
}

GradedMap GradedMap::zero(const DeformedAlgebra& A, Level level, GradedObject source, GradedObject target, int degree) {
  return GradedMap(A.table(level), level, std::move(source), std::move(target), degree);
}

GradedMap GradedMap::identity(const DeformedAlgebra& A, Level level, const GradedObject& obj) {
  return identity(A.table(level), level, obj);
}

GradedMap GradedMap::identity(std::shared_ptr<const StructureTable> table, Level level, const GradedObject& obj) {
  GradedMap m(table, level, obj, obj, 0);
  for (int i = obj.lo; i <= obj.hi(); ++i) m.set(i, AlgMatrix::identity(table, level, obj.rank(i)));
  return m;
}

AlgMatrix GradedMap::at(int i) const {
  if (i < source_.lo || i > source_.hi()) return AlgMatrix(table_, level_, target_.rank(i + degree_), 0);
  return comps_[i - source_.lo];
}

void GradedMap::set(int i, AlgMatrix m) {
  require(m.rows() == target_.rank(i + degree_) && m.cols() == source_.rank(i), Errc::ShapeMismatch,
          "component in degree " + std::to_string(i) + " has shape " + std::to_string(m.rows()) + "x" +
              std::to_string(m.cols()));
  require(m.level() == level_, Errc::LevelMismatch, "component at the wrong level");
  if (i < source_.lo || i > source_.hi()) {
    require(m.cols() == 0 || m.rows() == 0, Errc::ShapeMismatch, "component outside the source window");
    return;
  }
  comps_[i - source_.lo] = std::move(m);
}

bool GradedMap::is_zero() const {
  return std::all_of(comps_.begin(), comps_.end(), [](const AlgMatrix& m) { return m.is_zero(); });
}

void GradedMap::check_compatible(const GradedMap& o) const {
  require(level_ == o.level_, Errc::LevelMismatch, "graded maps at different levels");
  require(degree_ == o.degree_ && source_ == o.source_ && target_ == o.target_ && source_.lo == o.source_.lo &&
              source_.ranks.size() == o.source_.ranks.size(),
          Errc::ShapeMismatch, "graded maps with different shapes");
}

GradedMap GradedMap::operator+(const GradedMap& o) const {
  check_compatible(o);
  GradedMap r = *this;
  for (std::size_t i = 0; i < comps_.size(); ++i) r.comps_[i] = comps_[i] + o.comps_[i];
  return r;
}

GradedMap GradedMap::operator-(const GradedMap& o) const {
  check_compatible(o);
  GradedMap r = *this;
  for (std::size_t i = 0; i < comps_.size(); ++i) r.comps_[i] = comps_[i] - o.comps_[i];
  return r;
}

GradedMap GradedMap::operator-() const { return scaled(-1); }

GradedMap GradedMap::scaled(long long k) const {
  GradedMap r = *this;
  for (auto& m : r.comps_) m = m.scaled(k);
  return r;
}

bool GradedMap::operator==(const GradedMap& o) const {
  return level_ == o.level_ && degree_ == o.degree_ && source_ == o.source_ && target_ == o.target_ &&
         flatten() == o.flatten();
}

std::vector<int> GradedMap::flatten() const {
  std::vector<int> out;
  out.reserve(flat_size());
  for (const auto& m : comps_) out.insert(out.end(), m.data().begin(), m.data().end());
  return out;
}

std::size_t GradedMap::flat_size() const {
  std::size_t n = 0;
  for (const auto& m : comps_) n += m.data().size();
  return n;
}

void GradedMap::assign_flat(const std::vector<int>& coeffs) {
  require(coeffs.size() == flat_size(), Errc::BadDimensions, "coefficient vector has wrong length");
  std::size_t pos = 0;
  for (auto& m : comps_) {
    std::copy(coeffs.begin() + static_cast<std::ptrdiff_t>(pos),
              coeffs.begin() + static_cast<std::ptrdiff_t>(pos + m.data().size()), m.data().begin());
    pos += m.data().size();
  }
  // Canonical reduction of each entry.
  for (auto& m : comps_)
    for (int r = 0; r < m.rows(); ++r)
      for (int c = 0; c < m.cols(); ++c)
        m.table().group().reduce(std::span<int>(m.entry(r, c), m.width()));
}

GradedMap compose(const GradedMap& g, const GradedMap& f) {
  require(f.level() == g.level(), Errc::LevelMismatch, "composing maps at different levels");
  require(f.target() == g.source(), Errc::ShapeMismatch, "composing maps with mismatched objects");
  GradedMap out(f.table_ptr(), f.level(), f.source(), g.target(), f.degree() + g.degree());
  for (int i = f.source().lo; i <= f.source().hi(); ++i) out.set(i, g.at(i + f.degree()) * f.at(i));
  return out;
}

// ------------------------------------------------------------------ PreComplex

bool PreComplex::is_differential() const { return compose(d, d).is_zero(); }

PreComplex make_precomplex(GradedMap d) {
  require(d.degree() == 1, Errc::ShapeMismatch, "a pre-differential has degree 1");
  require(d.source() == d.target(), Errc::ShapeMismatch, "a pre-differential is an endomorphism");
  GradedObject obj = d.source();
  return PreComplex{std::move(obj), std::move(d)};
}

PreComplex make_complex(GradedMap d) {
  PreComplex c = make_precomplex(std::move(d));
  require(c.is_differential(), Errc::NotADifferential, "d∘d != 0");
  return c;
}

GradedMap delta_apply(const PreComplex& C, const PreComplex& D, const GradedMap& f) {
  require(f.level() == C.level() && f.level() == D.level(), Errc::LevelMismatch, "δ across levels");
  require(f.source() == C.obj && f.target() == D.obj, Errc::ShapeMismatch, "map does not match the Hom-complex");
  const int n = f.degree();
  GradedMap out(f.table_ptr(), f.level(), f.source(), f.target(), n + 1);
  const long long sign = n % 2 == 0 ? 1 : -1;
  for (int i = C.obj.lo; i <= C.obj.hi(); ++i) {
    AlgMatrix v = D.d.at(i + n) * f.at(i);
    const AlgMatrix w = f.at(i + 1) * C.d.at(i);
    out.set(i, sign == 1 ? v - w : v + w);
  }
  return out;
}

std::size_t HomComplex::dim(int n) const {
  const std::size_t w = static_cast<std::size_t>(C.d.table_ptr()->dim());
  std::size_t total = 0;
  for (int i = C.obj.lo; i <= C.obj.hi(); ++i)
    total += static_cast<std::size_t>(D.obj.rank(i + n)) * static_cast<std::size_t>(C.obj.rank(i)) * w;
  return total;
}

bool HomComplex::is_homotopy(const GradedMap& H, const GradedMap& f, const GradedMap& g) const {
  return delta(H) == g - f;
}

HomComplex hom_complex(PreComplex C, PreComplex D) {
  require(C.level() == D.level(), Errc::LevelMismatch, "Hom-complex between different levels");
  return HomComplex{std::move(C), std::move(D)};
}

// ----------------------------------------------------------- lifts, reductions

GradedMap graded_lift(const DeformedAlgebra& A, const GradedMap& f) {
  GradedMap out = GradedMap::zero(A, Level::Bar, f.source(), f.target(), f.degree());
  for (int i = f.source().lo; i <= f.source().hi(); ++i) out.set(i, A.lift(f.at(i)));
  return out;
}

PreComplex graded_lift(const DeformedAlgebra& A, const PreComplex& C) { return make_precomplex(graded_lift(A, C.d)); }

GradedMap reduce(const DeformedAlgebra& A, const GradedMap& f, Level to) {
  GradedMap out = GradedMap::zero(A, to, f.source(), f.target(), f.degree());
  for (int i = f.source().lo; i <= f.source().hi(); ++i) out.set(i, A.reduce(f.at(i), to));
  return out;
}

PreComplex reduce(const DeformedAlgebra& A, const PreComplex& C, Level to) { return make_precomplex(reduce(A, C.d, to)); }

GradedMap relabel(const DeformedAlgebra& A, const GradedMap& f, Level level) {
  GradedMap out = GradedMap::zero(A, level, f.source(), f.target(), f.degree());
  for (int i = f.source().lo; i <= f.source().hi(); ++i) out.set(i, A.relabel(f.at(i), level));
  return out;
}

}  // namespace clift
