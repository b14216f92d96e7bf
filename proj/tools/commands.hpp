#pragma once

#include <cstdint>
#include <optional>
#include <string>

namespace clift::cli {

struct Inputs {
  std::optional<std::string> tower, algebra, complex, map;
  std::uint64_t seed = 0;
  std::uint64_t cap = std::uint64_t{1} << 20;
  bool trace = false;
  std::string functor = "F";
  unsigned threads = 0;
};

struct Outcome {
  int exit_code = 1;
  std::string document;  // canonical JSON
  std::string summary;   // one human-readable line
};

/// Runs one command; never throws (errors become exit code 1).
Outcome run(const std::string& command, const Inputs& in);

const char* const kCommands[] = {"obstruct-diff",   "lift-diff",         "classify",    "lift-map",
                                 "lift-homotopy",   "crude-lift",        "classify-homotopy",
                                 "tangent",         "functor-eval",      "schlessinger", "extend-order",
                                 "oracle",          "gen"};

}  // namespace clift::cli
