#include "clift/algebra.hpp"

#include <algorithm>

#include "clift/fp_linalg.hpp"

namespace clift {

const char* level_name(Level level) noexcept {
  switch (level) {
    case Level::Bar: return "bar";
    case Level::Mid: return "mid";
    case Level::Base: return "base";
  }
  return "base";
}

Level level_from_name(const std::string& name) {
  if (name == "bar") return Level::Bar;
  if (name == "mid") return Level::Mid;
  if (name == "base") return Level::Base;
  fail(Errc::InvalidArgument, "unknown level '" + name + "'");
}

// ------------------------------------------------------------------- AlgMatrix

AlgMatrix::AlgMatrix(std::shared_ptr<const StructureTable> table, Level level, int rows, int cols)
    : table_(std::move(table)), level_(level), rows_(rows), cols_(cols) {
  require(rows >= 0 && cols >= 0, Errc::BadDimensions, "negative matrix size");
  data_.assign(static_cast<std::size_t>(rows) * cols * width(), 0);
}

Elem AlgMatrix::get(int r, int c) const {
  const int* e = entry(r, c);
  return Elem(e, e + width());
}

void AlgMatrix::set(int r, int c, const Elem& x) {
  require(static_cast<int>(x.size()) == width(), Errc::BadDimensions, "entry has wrong length");
  Elem y = x;
  table_->group().reduce(y);
  std::copy(y.begin(), y.end(), entry(r, c));
}

bool AlgMatrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](int v) { return v == 0; });
}

void AlgMatrix::check_same_shape(const AlgMatrix& o) const {
  require(rows_ == o.rows_ && cols_ == o.cols_, Errc::ShapeMismatch,
          "matrix shapes " + std::to_string(rows_) + "x" + std::to_string(cols_) + " and " +
              std::to_string(o.rows_) + "x" + std::to_string(o.cols_));
  require(level_ == o.level_, Errc::LevelMismatch, "matrices at different levels");
}

AlgMatrix AlgMatrix::operator+(const AlgMatrix& o) const {
  check_same_shape(o);
  AlgMatrix r = *this;
  const int w = width();
  for (std::size_t i = 0; i < data_.size(); ++i) {
    const int ord = table_->order(static_cast<int>(i % w));
    int v = data_[i] + o.data_[i];
    r.data_[i] = v >= ord ? v - ord : v;
  }
  return r;
}

AlgMatrix AlgMatrix::operator-(const AlgMatrix& o) const {
  check_same_shape(o);
  AlgMatrix r = *this;
  const int w = width();
  for (std::size_t i = 0; i < data_.size(); ++i) {
    const int ord = table_->order(static_cast<int>(i % w));
    int v = data_[i] - o.data_[i];
    r.data_[i] = v < 0 ? v + ord : v;
  }
  return r;
}

AlgMatrix AlgMatrix::operator-() const { return scaled(-1); }

AlgMatrix AlgMatrix::scaled(long long k) const {
  AlgMatrix r = *this;
  const int w = width();
  for (std::size_t i = 0; i < data_.size(); ++i) {
    const long long ord = table_->order(static_cast<int>(i % w));
    long long v = (k % ord) * data_[i] % ord;
    r.data_[i] = static_cast<int>(v < 0 ? v + ord : v);
  }
  return r;
}

AlgMatrix AlgMatrix::operator*(const AlgMatrix& o) const {
  require(cols_ == o.rows_, Errc::ShapeMismatch,
          "cannot compose " + std::to_string(rows_) + "x" + std::to_string(cols_) + " with " +
              std::to_string(o.rows_) + "x" + std::to_string(o.cols_));
  require(level_ == o.level_, Errc::LevelMismatch, "matrices at different levels");
  AlgMatrix r(table_, level_, rows_, o.cols_);
  const int w = width();
  std::vector<std::int64_t> acc(w);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < o.cols_; ++j) {
      std::fill(acc.begin(), acc.end(), 0);
      for (int l = 0; l < cols_; ++l) table_->mul_accumulate(entry(i, l), o.entry(l, j), acc.data());
      table_->reduce_into(acc.data(), r.entry(i, j));
    }
  return r;
}

bool AlgMatrix::operator==(const AlgMatrix& o) const {
  return level_ == o.level_ && rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
}

AlgMatrix AlgMatrix::identity(std::shared_ptr<const StructureTable> table, Level level, int n) {
  AlgMatrix m(std::move(table), level, n, n);
  for (int i = 0; i < n; ++i) m.entry(i, i)[0] = 1;
  return m;
}

// ------------------------------------------------------------- DeformedAlgebra

namespace {

std::shared_ptr<const StructureTable> algebra_table(const FiniteRing& ring, int k, const std::vector<Elem>& c) {
  const int m = ring.dim();
  const int n = k * m;
  std::vector<int> exps;
  for (int j = 0; j < k; ++j)
    for (int e : ring.table().group().exponents()) exps.push_back(e);
  std::vector<int> constants(static_cast<std::size_t>(n) * n * n, 0);
  for (int i = 0; i < k; ++i)
    for (int u = 0; u < m; ++u)
      for (int j = 0; j < k; ++j)
        for (int v = 0; v < m; ++v) {
          const Elem buv = ring.mul(ring.table().basis(u), ring.table().basis(v));
          const std::size_t row = static_cast<std::size_t>(i * m + u) * n + (j * m + v);
          for (int l = 0; l < k; ++l) {
            const Elem coef = ring.mul(c[(static_cast<std::size_t>(i) * k + j) * k + l], buv);
            for (int w = 0; w < m; ++w) constants[row * n + l * m + w] = coef[w];
          }
        }
  return std::make_shared<const StructureTable>(ring.prime(), std::move(exps), std::move(constants));
}

}  // namespace

DeformedAlgebra::DeformedAlgebra(Tower tower, int rank, std::vector<Elem> constants, AlgebraKind kind)
    : tower_(std::move(tower)), kind_(kind), k_(rank), constants_(std::move(constants)) {
  require(rank >= 1, Errc::BadDimensions, "algebra rank must be >= 1");
  require(constants_.size() == static_cast<std::size_t>(rank) * rank * rank, Errc::BadDimensions,
          "algebra structure constants have wrong size");
  const FiniteRing& bar = tower_.bar();
  for (auto& c : constants_) {
    require(static_cast<int>(c.size()) == bar.dim(), Errc::BadDimensions, "structure constant has wrong length");
    bar.table().group().reduce(c);
  }
  std::vector<Elem> mid_c, base_c;
  for (const Elem& c : constants_) {
    mid_c.push_back(tower_.bar_to_mid().apply(c));
    base_c.push_back(tower_.bar_to_base(c));
  }
  tables_[0] = algebra_table(bar, k_, constants_);
  tables_[1] = algebra_table(tower_.mid(), k_, mid_c);
  tables_[2] = algebra_table(tower_.base(), k_, base_c);
}

const std::shared_ptr<const StructureTable>& DeformedAlgebra::table(Level level) const {
  return tables_[static_cast<int>(level)];
}

const FiniteRing& DeformedAlgebra::ring(Level level) const {
  switch (level) {
    case Level::Bar: return tower_.bar();
    case Level::Mid: return tower_.mid();
    case Level::Base: return tower_.base();
  }
  return tower_.base();
}

std::vector<int> DeformedAlgebra::base_constants() const {
  std::vector<int> out;
  for (const Elem& c : constants_) out.push_back(tower_.bar_to_base(c)[0]);
  return out;
}

AlgMatrix DeformedAlgebra::zero(Level level, int rows, int cols) const { return AlgMatrix(table(level), level, rows, cols); }

AlgMatrix DeformedAlgebra::identity(Level level, int n) const { return AlgMatrix::identity(table(level), level, n); }

Elem DeformedAlgebra::reduce_elem(const Elem& x, Level from) const {
  require(from != Level::Base, Errc::LevelMismatch, "nothing below the base level");
  const RingHom& h = from == Level::Bar ? tower_.bar_to_mid() : tower_.mid_to_base();
  const int m = h.source().dim();
  const int mt = h.target().dim();
  Elem out(static_cast<std::size_t>(k_) * mt);
  for (int j = 0; j < k_; ++j) {
    const Elem y = h.apply(Elem(x.begin() + j * m, x.begin() + (j + 1) * m));
    std::copy(y.begin(), y.end(), out.begin() + j * mt);
  }
  return out;
}

Elem DeformedAlgebra::lift_elem(const Elem& x, Level from) const {
  require(from == Level::Mid, Errc::LevelMismatch, "σ lifts from the middle level only");
  const int m = tower_.mid().dim();
  const int mb = tower_.bar().dim();
  Elem out(static_cast<std::size_t>(k_) * mb);
  for (int j = 0; j < k_; ++j) {
    const Elem y = tower_.lift(Elem(x.begin() + j * m, x.begin() + (j + 1) * m));
    std::copy(y.begin(), y.end(), out.begin() + j * mb);
  }
  return out;
}

AlgMatrix DeformedAlgebra::reduce(const AlgMatrix& m, Level to) const {
  const int from = static_cast<int>(m.level());
  const int target = static_cast<int>(to);
  require(target >= from, Errc::LevelMismatch, "cannot reduce upwards");
  if (target == from) return m;
  AlgMatrix cur = m;
  for (int l = from; l < target; ++l) {
    AlgMatrix next(table(static_cast<Level>(l + 1)), static_cast<Level>(l + 1), m.rows(), m.cols());
    for (int r = 0; r < m.rows(); ++r)
      for (int c = 0; c < m.cols(); ++c) {
        const Elem y = reduce_elem(cur.get(r, c), static_cast<Level>(l));
        std::copy(y.begin(), y.end(), next.entry(r, c));
      }
    cur = std::move(next);
  }
  return cur;
}

AlgMatrix DeformedAlgebra::lift(const AlgMatrix& m) const {
  require(m.level() == Level::Mid, Errc::LevelMismatch, "graded lifts start at the middle level");
  AlgMatrix out = zero(Level::Bar, m.rows(), m.cols());
  for (int r = 0; r < m.rows(); ++r)
    for (int c = 0; c < m.cols(); ++c) {
      const Elem y = lift_elem(m.get(r, c), Level::Mid);
      std::copy(y.begin(), y.end(), out.entry(r, c));
    }
  return out;
}

AlgMatrix DeformedAlgebra::relabel(const AlgMatrix& m, Level level) const {
  require(m.table() == *table(level), Errc::LevelMismatch, "matrix entries do not belong to this level");
  AlgMatrix out(table(level), level, m.rows(), m.cols());
  out.data() = m.data();
  return out;
}

std::vector<AlgMatrix> DeformedAlgebra::kernel_coords(const AlgMatrix& m) const {
  require(m.level() == Level::Bar, Errc::LevelMismatch, "kernel coordinates need a bar-level matrix");
  const int t = tower_.j_dim();
  const int mb = tower_.bar().dim();
  std::vector<AlgMatrix> coords(t, zero(Level::Base, m.rows(), m.cols()));
  for (int r = 0; r < m.rows(); ++r)
    for (int c = 0; c < m.cols(); ++c) {
      const int* e = m.entry(r, c);
      for (int j = 0; j < k_; ++j) {
        const Elem x(e + j * mb, e + (j + 1) * mb);
        if (tower_.bar().is_zero(x)) continue;
        const std::vector<int> y = tower_.j_coordinates(x);
        for (int s = 0; s < t; ++s) coords[s].entry(r, c)[j] = y[s];
      }
    }
  return coords;
}

AlgMatrix DeformedAlgebra::reconstruct(const std::vector<AlgMatrix>& coords) const {
  const int t = tower_.j_dim();
  require(static_cast<int>(coords.size()) == t, Errc::BadDimensions, "one coordinate matrix per J-basis element");
  const int rows = t ? coords[0].rows() : 0;
  const int cols = t ? coords[0].cols() : 0;
  const int mb = tower_.bar().dim();
  const auto& g = tower_.bar().table().group();
  AlgMatrix out = zero(Level::Bar, rows, cols);
  for (int s = 0; s < t; ++s) {
    require(coords[s].level() == Level::Base && coords[s].rows() == rows && coords[s].cols() == cols,
            Errc::ShapeMismatch, "coordinate matrices disagree in shape or level");
    for (int r = 0; r < rows; ++r)
      for (int c = 0; c < cols; ++c)
        for (int j = 0; j < k_; ++j) {
          const int v = coords[s].entry(r, c)[j];
          if (v == 0) continue;
          int* e = out.entry(r, c) + j * mb;
          const Elem cur(e, e + mb);
          const Elem next = g.add(cur, g.scale(v, tower_.j_basis()[s]));
          std::copy(next.begin(), next.end(), e);
        }
  }
  return out;
}

DeformedAlgebra mk_trivial_algebra(const Tower& tower, int rank, const std::vector<int>& base_constants) {
  require(base_constants.size() == static_cast<std::size_t>(rank) * rank * rank, Errc::BadDimensions,
          "algebra structure constants have wrong size");
  const FiniteRing& bar = tower.bar();
  std::vector<Elem> c;
  for (int v : base_constants) c.push_back(bar.table().scale(mod_p(v, tower.prime()), bar.one()));
  return DeformedAlgebra(tower, rank, std::move(c), AlgebraKind::Trivial);
}

std::shared_ptr<const StructureTable> trivial_algebra_table(const FiniteRing& R, int rank,
                                                           const std::vector<int>& base_constants) {
  require(base_constants.size() == static_cast<std::size_t>(rank) * rank * rank, Errc::BadDimensions,
          "algebra structure constants have wrong size");
  std::vector<Elem> c;
  for (int v : base_constants) c.push_back(R.table().scale(mod_p(v, R.prime()), R.one()));
  return algebra_table(R, rank, c);
}

DeformedAlgebra mk_scalar_algebra(const Tower& tower) { return mk_trivial_algebra(tower, 1, {1}); }

}  // namespace clift
