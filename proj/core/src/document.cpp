#include "clift/document.hpp"

#include <fstream>
#include <sstream>

namespace clift {

Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    fail(Errc::ParseError, e.what());
  }
}

std::string canonical(const Json& j) { return j.dump(2) + "\n"; }

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  require(static_cast<bool>(in), Errc::ParseError, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  require(static_cast<bool>(out), Errc::InvalidArgument, "cannot write " + path);
  out << text;
}

Json envelope(const std::string& schema, Json payload) {
  payload["schema"] = schema;
  payload["version"] = kDocumentVersion;
  return payload;
}

std::string schema_of(const Json& doc) {
  require(doc.is_object() && doc.contains("schema") && doc["schema"].is_string(), Errc::SchemaMismatch,
          "document has no schema field");
  const std::string s = doc["schema"].get<std::string>();
  require(s == "tower" || s == "algebra" || s == "complex" || s == "map" || s == "problem", Errc::SchemaMismatch,
          "unknown schema '" + s + "'");
  require(doc.contains("version") && doc["version"] == kDocumentVersion, Errc::SchemaMismatch,
          "unsupported version for schema '" + s + "'");
  return s;
}

// ------------------------------------------------------------------- rings

namespace {

Json ring_json(const FiniteRing& R) {
  Json products = Json::array();
  const int n = R.dim();
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int k = 0; k < n; ++k)
        if (int c = R.table().constant(a, b, k)) products.push_back({a, b, k, c});
  return {{"exponents", R.table().group().exponents()}, {"products", products}};
}

FiniteRing ring_from_json(const Json& j, int p) {
  auto exps = j.at("exponents").get<std::vector<int>>();
  const std::size_t n = exps.size();
  std::vector<int> c(n * n * n, 0);
  for (const auto& t : j.at("products")) {
    auto v = t.get<std::vector<int>>();
    require(v.size() == 4, Errc::ValidationError, "product entries are [a, b, k, c]");
    for (int i = 0; i < 3; ++i)
      require(v[i] >= 0 && static_cast<std::size_t>(v[i]) < n, Errc::ValidationError, "product index out of range");
    c[(static_cast<std::size_t>(v[0]) * n + v[1]) * n + v[2]] = v[3];
  }
  return FiniteRing(p, std::move(exps), std::move(c));
}

void check_canonical(const AdditiveGroup& g, const std::vector<int>& x, const char* what) {
  require(static_cast<int>(x.size()) == g.dim(), Errc::ValidationError, std::string(what) + " has wrong length");
  for (int i = 0; i < g.dim(); ++i)
    require(x[i] >= 0 && x[i] < g.order(i), Errc::ValidationError,
            std::string(what) + " coefficient out of canonical range");
}

std::vector<Elem> images_from_json(const Json& j, const FiniteRing& target) {
  std::vector<Elem> out;
  for (const auto& x : j) {
    out.push_back(x.get<Elem>());
    check_canonical(target.table().group(), out.back(), "ring map image");
  }
  return out;
}

}  // namespace

Json tower_payload(const Tower& T) {
  Json j{{"kind", tower_kind_name(T.kind())}, {"p", T.prime()}};
  switch (T.kind()) {
    case TowerKind::ZMod:
    case TowerKind::TruncPoly:
      j["params"] = {{"a", T.params().a}, {"b", T.params().b}};
      break;
    case TowerKind::SquareZero:
      j["params"] = {{"r", T.params().r}};
      break;
    case TowerKind::Custom:
      j["rings"] = {{"bar", ring_json(T.bar())}, {"mid", ring_json(T.mid())}, {"base", ring_json(T.base())}};
      j["maps"] = {{"bar_to_mid", T.bar_to_mid().images()}, {"mid_to_base", T.mid_to_base().images()}};
      break;
  }
  return j;
}

Tower tower_from_payload(const Json& j) {
  const TowerKind kind = tower_kind_from_name(j.at("kind").get<std::string>());
  const int p = j.at("p").get<int>();
  require(is_prime(p), Errc::NonPrime, std::to_string(p) + " is not prime");
  if (kind != TowerKind::Custom) {
    const Json& q = j.at("params");
    TowerParams params;
    if (kind == TowerKind::SquareZero) {
      params.r = q.at("r").get<int>();
      require(q.size() == 1, Errc::ValidationError, "square_zero takes only r");
    } else {
      params.a = q.at("a").get<int>();
      params.b = q.at("b").get<int>();
      require(q.size() == 2, Errc::ValidationError, "tower params are a and b");
    }
    return mk_tower(kind, p, params);
  }
  const Json& rings = j.at("rings");
  FiniteRing bar = ring_from_json(rings.at("bar"), p);
  FiniteRing mid = ring_from_json(rings.at("mid"), p);
  FiniteRing base = ring_from_json(rings.at("base"), p);
  const Json& maps = j.at("maps");
  RingHom pi_bar(bar, mid, images_from_json(maps.at("bar_to_mid"), mid));
  RingHom pi(mid, base, images_from_json(maps.at("mid_to_base"), base));
  return Tower(std::move(bar), std::move(mid), std::move(base), std::move(pi_bar), std::move(pi));
}

// ---------------------------------------------------------------- algebras

AlgebraDoc default_algebra_doc(DeformedAlgebra A) {
  std::vector<std::string> names;
  for (int i = 0; i < A.rank(); ++i) names.push_back(i == 0 ? "1" : "a" + std::to_string(i));
  return AlgebraDoc{std::move(A), std::move(names)};
}

Json algebra_payload(const AlgebraDoc& a) {
  const DeformedAlgebra& A = a.A;
  const int k = A.rank();
  Json products = Json::array();
  if (A.kind() == AlgebraKind::Trivial) {
    const auto c = A.base_constants();
    for (int i = 0; i < k; ++i)
      for (int jj = 0; jj < k; ++jj)
        for (int l = 0; l < k; ++l)
          if (int v = c[(i * k + jj) * k + l]) products.push_back({i, jj, l, v});
  } else {
    const FiniteRing& R = A.tower().bar();
    for (int i = 0; i < k; ++i)
      for (int jj = 0; jj < k; ++jj)
        for (int l = 0; l < k; ++l) {
          const Elem& v = A.constants()[(i * k + jj) * k + l];
          if (!R.is_zero(v)) products.push_back({i, jj, l, v});
        }
  }
  return {{"tower", tower_payload(A.tower())},
          {"kind", A.kind() == AlgebraKind::Trivial ? "trivial" : "custom"},
          {"rank", k},
          {"basis", a.basis},
          {"products", products}};
}

AlgebraDoc algebra_from_payload(const Json& j) {
  Tower T = tower_from_payload(j.at("tower"));
  const std::string kind = j.at("kind").get<std::string>();
  require(kind == "trivial" || kind == "custom", Errc::ValidationError, "algebra kind is trivial or custom");
  const int k = j.at("rank").get<int>();
  require(k >= 1 && k <= 8, Errc::ValidationError, "algebra rank out of range");
  auto basis = j.at("basis").get<std::vector<std::string>>();
  require(static_cast<int>(basis.size()) == k, Errc::ValidationError, "one basis name per algebra generator");
  auto index = [&](const Json& t, int pos) {
    const int v = t.at(pos).get<int>();
    require(v >= 0 && v < k, Errc::ValidationError, "algebra product index out of range");
    return v;
  };
  const std::size_t n = static_cast<std::size_t>(k) * k * k;
  if (kind == "trivial") {
    std::vector<int> c(n, 0);
    for (const auto& t : j.at("products")) {
      require(t.size() == 4, Errc::ValidationError, "product entries are [i, j, l, c]");
      const int v = t.at(3).get<int>();
      require(v >= 0 && v < T.prime(), Errc::ValidationError, "trivial algebra constants lie in [0, p)");
      c[(index(t, 0) * k + index(t, 1)) * k + index(t, 2)] = v;
    }
    return AlgebraDoc{mk_trivial_algebra(T, k, c), std::move(basis)};
  }
  std::vector<Elem> c(n, T.bar().zero());
  for (const auto& t : j.at("products")) {
    require(t.size() == 4, Errc::ValidationError, "product entries are [i, j, l, coeffs]");
    Elem v = t.at(3).get<Elem>();
    check_canonical(T.bar().table().group(), v, "algebra constant");
    c[(index(t, 0) * k + index(t, 1)) * k + index(t, 2)] = std::move(v);
  }
  return AlgebraDoc{DeformedAlgebra(std::move(T), k, std::move(c), AlgebraKind::Custom), std::move(basis)};
}

// ------------------------------------------------------- complexes and maps

Json object_json(const GradedObject& obj) { return {{"lo", obj.lo}, {"ranks", obj.ranks}}; }

GradedObject object_from_json(const Json& j) {
  GradedObject obj{j.at("lo").get<int>(), j.at("ranks").get<std::vector<int>>()};
  for (int r : obj.ranks) require(r >= 0 && r <= 64, Errc::ValidationError, "rank out of range");
  return obj;
}

namespace {

// One entry: k coefficient lists, one per algebra generator.
Json matrix_json(const AlgMatrix& m, int k) {
  const int w = m.width(), ring_dim = w / k;
  Json rows = Json::array();
  for (int r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (int c = 0; c < m.cols(); ++c) {
      const int* e = m.entry(r, c);
      Json entry = Json::array();
      for (int a = 0; a < k; ++a) entry.push_back(std::vector<int>(e + a * ring_dim, e + (a + 1) * ring_dim));
      row.push_back(std::move(entry));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

void fill_matrix(AlgMatrix& m, const Json& rows, int k) {
  const int w = m.width(), ring_dim = w / k;
  require(rows.is_array() && static_cast<int>(rows.size()) == m.rows(), Errc::ValidationError,
          "matrix has the wrong number of rows");
  const auto& group = m.table().group();
  for (int r = 0; r < m.rows(); ++r) {
    require(rows[r].is_array() && static_cast<int>(rows[r].size()) == m.cols(), Errc::ValidationError,
            "matrix row has the wrong length");
    for (int c = 0; c < m.cols(); ++c) {
      const Json& entry = rows[r][c];
      require(entry.is_array() && static_cast<int>(entry.size()) == k, Errc::ValidationError,
              "entry needs one coefficient list per algebra generator");
      std::vector<int> flat;
      for (const auto& part : entry) {
        auto v = part.get<std::vector<int>>();
        require(static_cast<int>(v.size()) == ring_dim, Errc::ValidationError, "coefficient list has wrong length");
        flat.insert(flat.end(), v.begin(), v.end());
      }
      check_canonical(group, flat, "matrix entry");
      std::copy(flat.begin(), flat.end(), m.entry(r, c));
    }
  }
}

Json components_json(const GradedMap& m, int k) {
  Json comps = Json::array();
  for (int i = m.source().lo; i <= m.source().hi(); ++i) comps.push_back(matrix_json(m.at(i), k));
  return comps;
}

void fill_components(GradedMap& m, const Json& comps, int k) {
  require(comps.is_array() && comps.size() == m.source().ranks.size(), Errc::ValidationError,
          "one matrix per source degree");
  for (int i = m.source().lo; i <= m.source().hi(); ++i) {
    AlgMatrix c = m.at(i);
    fill_matrix(c, comps[i - m.source().lo], k);
    m.set(i, std::move(c));
  }
}

}  // namespace

Json complex_payload(const PreComplex& C, const DeformedAlgebra& A) {
  return {{"level", level_name(C.level())}, {"object", object_json(C.obj)}, {"d", components_json(C.d, A.rank())}};
}

PreComplex complex_from_payload(const Json& j, const DeformedAlgebra& A, bool validate_d2) {
  const Level level = level_from_name(j.at("level").get<std::string>());
  GradedObject obj = object_from_json(j.at("object"));
  GradedMap d = GradedMap::zero(A, level, obj, obj, 1);
  fill_components(d, j.at("d"), A.rank());
  return validate_d2 ? make_complex(std::move(d)) : make_precomplex(std::move(d));
}

Json map_payload(const GradedMap& m, const DeformedAlgebra& A) {
  return {{"level", level_name(m.level())},
          {"degree", m.degree()},
          {"source", object_json(m.source())},
          {"target", object_json(m.target())},
          {"components", components_json(m, A.rank())}};
}

GradedMap map_from_payload(const Json& j, const DeformedAlgebra& A) {
  const Level level = level_from_name(j.at("level").get<std::string>());
  GradedMap m = GradedMap::zero(A, level, object_from_json(j.at("source")), object_from_json(j.at("target")),
                                j.at("degree").get<int>());
  fill_components(m, j.at("components"), A.rank());
  return m;
}

// ------------------------------------------------------------------ bundles

const DeformedAlgebra& Bundle::A() const {
  require(algebra.has_value(), Errc::ValidationError, "no algebra given");
  return algebra->A;
}

const PreComplex& Bundle::complex(const std::string& name) const {
  auto it = complexes.find(name);
  require(it != complexes.end(), Errc::ValidationError, "missing complex '" + name + "'");
  return it->second;
}

const GradedMap& Bundle::map(const std::string& name) const {
  auto it = maps.find(name);
  require(it != maps.end(), Errc::ValidationError, "missing map '" + name + "'");
  return it->second;
}

Json bundle_document(const Bundle& b) {
  Json j = Json::object();
  j["algebra"] = algebra_payload(*b.algebra);
  Json cs = Json::object(), ms = Json::object(), ps = Json::object();
  for (const auto& [name, C] : b.complexes) cs[name] = complex_payload(C, b.A());
  for (const auto& [name, m] : b.maps) ms[name] = map_payload(m, b.A());
  for (const auto& [name, v] : b.params) ps[name] = v;
  j["complexes"] = cs;
  j["maps"] = ms;
  j["params"] = ps;
  return envelope("problem", std::move(j));
}

namespace {

Loaded load_unwrapped(const Json& doc, const std::optional<AlgebraDoc>& context) {
  Loaded out;
  out.schema = schema_of(doc);
  auto algebra_for = [&](const Json& d) {
    if (d.contains("algebra")) return algebra_from_payload(d.at("algebra"));
    require(context.has_value(), Errc::ValidationError, "document needs an algebra (embed one or pass --algebra)");
    return *context;
  };
  if (out.schema == "tower") {
    out.tower = tower_from_payload(doc);
  } else if (out.schema == "algebra") {
    out.bundle.algebra = algebra_from_payload(doc);
  } else if (out.schema == "complex") {
    out.bundle.algebra = algebra_for(doc);
    out.bundle.complexes.emplace("C", complex_from_payload(doc, out.bundle.A(), true));
  } else if (out.schema == "map") {
    out.bundle.algebra = algebra_for(doc);
    out.bundle.maps.emplace("f", map_from_payload(doc, out.bundle.A()));
  } else {
    out.bundle.algebra = algebra_for(doc);
    for (const auto& [name, c] : doc.at("complexes").items())
      out.bundle.complexes.emplace(name, complex_from_payload(c, out.bundle.A(), false));
    for (const auto& [name, m] : doc.at("maps").items())
      out.bundle.maps.emplace(name, map_from_payload(m, out.bundle.A()));
    for (const auto& [name, v] : doc.at("params").items()) out.bundle.params.emplace(name, v.get<long long>());
  }
  return out;
}

}  // namespace

Loaded load_document(const Json& doc, const std::optional<AlgebraDoc>& context) {
  try {
    Loaded out = load_unwrapped(doc, context);
    out.embedded_algebra = doc.contains("algebra");
    return out;
  } catch (const Error& e) {
    if (e.code() == Errc::ParseError || e.code() == Errc::SchemaMismatch || e.code() == Errc::ValidationError)
      throw;
    fail(Errc::ValidationError, std::string(errc_name(e.code())) + ": " + e.what());
  } catch (const Json::exception& e) {
    fail(Errc::ValidationError, std::string("malformed document: ") + e.what());
  }
}

Json save_document(const Loaded& d) {
  if (d.schema == "tower") return envelope("tower", tower_payload(*d.tower));
  if (d.schema == "algebra") return envelope("algebra", algebra_payload(*d.bundle.algebra));
  if (d.schema == "problem") return bundle_document(d.bundle);
  Json j = d.schema == "complex" ? complex_payload(d.bundle.complex("C"), d.bundle.A())
                                 : map_payload(d.bundle.map("f"), d.bundle.A());
  if (d.embedded_algebra) j["algebra"] = algebra_payload(*d.bundle.algebra);
  return envelope(d.schema, std::move(j));
}

std::string roundtrip(const std::string& text) { return canonical(save_document(load_document(parse_json(text)))); }

// ------------------------------------------------------------------ reports

Json class_json(const CohClass& c) {
  return {{"degree", c.degree}, {"coordinates", c.rep}, {"zero", c.is_zero()}};
}

Json lift_report_json(const LiftReport& r, const DeformedAlgebra& A) {
  Json j{{"obstruction", class_json(r.obstruction)}, {"lifts", r.lifts()}};
  j["witness"] = r.witness ? map_payload(*r.witness, A) : Json(nullptr);
  j["torsor"] = {{"degree", r.torsor_degree}, {"dim", r.torsor_dim}};
  if (!r.representatives.empty()) {
    Json reps = Json::array();
    for (const auto& m : r.representatives) reps.push_back(map_payload(m, A));
    j["representatives"] = reps;
    j["representative_classes"] = r.representative_classes;
    j["count"] = r.representatives.size();
  }
  return j;
}

Json oracle_json(const OracleResult& r) {
  Json blocks = Json::array();
  for (const auto& b : r.partition) blocks.push_back(b);
  return {{"kind", r.kind},
          {"digest", r.digest},
          {"space_size", r.space_size},
          {"witness_count", r.witnesses.size()},
          {"witness_indices", r.witness_indices},
          {"classes", r.partition.size()},
          {"partition", blocks}};
}

}  // namespace clift
