#pragma once

// JSON documents (tower, algebra, complex, map, problem) and reports.
// Output is canonical: sorted keys, two-space indent, trailing newline.

#include <map>
#include <optional>
#include <string>

#include "clift/defun.hpp"
#include "clift/oracle.hpp"
#include "json.hpp"

namespace clift {

using Json = nlohmann::json;

inline constexpr int kDocumentVersion = 1;
inline constexpr const char* kToolVersion = "0.1.0";

Json parse_json(const std::string& text);
std::string canonical(const Json& j);
std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& text);

/// Adds "schema" and "version" to a payload.
Json envelope(const std::string& schema, Json payload);
/// The schema of a document; SchemaMismatch unless it is known and carries
/// the supported version.
std::string schema_of(const Json& doc);

Json tower_payload(const Tower& T);
Tower tower_from_payload(const Json& j);

/// An algebra with display names for its basis.
struct AlgebraDoc {
  DeformedAlgebra A;
  std::vector<std::string> basis;
};
Json algebra_payload(const AlgebraDoc& a);
AlgebraDoc algebra_from_payload(const Json& j);
AlgebraDoc default_algebra_doc(DeformedAlgebra A);

/// Complex payloads do not embed their algebra; validate_d2 selects
/// complex (true) or pre-complex (false) semantics.
Json complex_payload(const PreComplex& C, const DeformedAlgebra& A);
PreComplex complex_from_payload(const Json& j, const DeformedAlgebra& A, bool validate_d2);
Json map_payload(const GradedMap& m, const DeformedAlgebra& A);
GradedMap map_from_payload(const Json& j, const DeformedAlgebra& A);
Json object_json(const GradedObject& obj);
GradedObject object_from_json(const Json& j);

/// A problem document: an algebra, named pre-complexes, named maps and
/// integer parameters. Standalone complex and map documents load into a
/// bundle too (under the names "C" and "f").
struct Bundle {
  std::optional<AlgebraDoc> algebra;
  std::map<std::string, PreComplex> complexes;
  std::map<std::string, GradedMap> maps;
  std::map<std::string, long long> params;

  const DeformedAlgebra& A() const;
  const PreComplex& complex(const std::string& name) const;
  const GradedMap& map(const std::string& name) const;
  bool has_map(const std::string& name) const { return maps.count(name) > 0; }
  bool has_complex(const std::string& name) const { return complexes.count(name) > 0; }
};

Json bundle_document(const Bundle& b);

/// Parses and validates any document. Validator failures surface as
/// ValidationError with the original category in the message. A standalone
/// complex or map document needs `context` for its algebra unless it embeds one.
struct Loaded {
  std::string schema;
  std::optional<Tower> tower;
  Bundle bundle;
  bool embedded_algebra = true;
};
Loaded load_document(const Json& doc, const std::optional<AlgebraDoc>& context = std::nullopt);
/// Serializes what load_document produced, in the same schema.
Json save_document(const Loaded& d);
/// save(load(text)), for round-trip checks.
std::string roundtrip(const std::string& text);

// Report fragments.
Json class_json(const CohClass& c);
Json lift_report_json(const LiftReport& r, const DeformedAlgebra& A);
Json oracle_json(const OracleResult& r);

}  // namespace clift
