#pragma once

// Exhaustive ground truth for lifting problems, and seeded random instances.

#include <cstdint>
#include <random>

#include "clift/crude.hpp"

namespace clift {

struct OracleOptions {
  std::uint64_t cap = std::uint64_t{1} << 20;
  unsigned threads = 0;  // 0: hardware concurrency
  bool partition = true;
};

/// Witnesses are listed in candidate order; candidates are graded lifts
/// enumerated lexicographically (entry-major, then J-coordinates).
struct OracleResult {
  std::string kind;
  std::uint64_t digest = 0;
  std::uint64_t space_size = 0;
  std::vector<std::uint64_t> witness_indices;
  std::vector<GradedMap> witnesses;
  /// Blocks of positions in `witnesses`, each sorted, ordered by first element.
  std::vector<std::vector<std::size_t>> partition;
};

/// All differentials d̄ + γ, partitioned by explicit isomorphisms 1 + κ.
OracleResult oracle_differential(const DifferentialProblem& P, const OracleOptions& opt = {});
/// All cochain maps f̄ + γ, partitioned by explicit homotopies in the kernel.
OracleResult oracle_map(const MapProblem& P, const OracleOptions& opt = {});
/// All homotopies H̄ + γ: f̄ → ḡ, partitioned by explicit 2-homotopies in the kernel.
OracleResult oracle_homotopy(const HomotopyProblem& P, const OracleOptions& opt = {});

struct CellCount {
  std::uint64_t cells = 0;    // isomorphisms 1 + κ: d̄₁ → d̄₂
  std::uint64_t classes = 0;  // modulo 2-cells
};
CellCount oracle_connecting_cells(const DifferentialProblem& P, const GradedMap& d1, const GradedMap& d2,
                                  const OracleOptions& opt = {});

/// Every bar-level map of the given shape that reduces to zero, in candidate order.
class KernelEnumerator {
 public:
  KernelEnumerator(const DeformedAlgebra& A, GradedObject source, GradedObject target, int degree);
  std::uint64_t size() const noexcept { return size_; }
  GradedMap at(std::uint64_t index) const;
  /// at(index) added to base, written into out (avoids reallocation).
  void add_into(std::uint64_t index, const GradedMap& base, GradedMap& out) const;

 private:
  const DeformedAlgebra* A_;
  GradedMap proto_;
  std::vector<Elem> j_elems_;
  std::size_t positions_ = 0;
  std::uint64_t size_ = 0;
};

std::uint64_t digest_of(const std::vector<const GradedMap*>& maps);

struct InstanceSpec {
  std::uint64_t seed = 0;
  int p = 2;
  TowerKind tower = TowerKind::ZMod;
  AlgebraKind algebra = AlgebraKind::Trivial;
  int max_rank = 2;
  int max_window = 4;
  /// Bound on p^(dim C⁰ + dim C¹) of the kernel complex, keeping the oracle fast.
  std::uint64_t max_search = std::uint64_t{1} << 16;
};

struct Instance {
  InstanceSpec spec;
  DeformedAlgebra A;
  PreComplex C;  // middle level
};

/// Deterministic per spec (the seed drives every choice).
Instance gen_instance(const InstanceSpec& spec);

/// Seeded helpers shared by tests and the CLI.
using Rng = std::mt19937_64;
int rand_below(Rng& rng, int n);
Tower random_tower(Rng& rng, int p, TowerKind kind);
DeformedAlgebra random_algebra(Rng& rng, const Tower& tower, AlgebraKind kind);
/// A random middle-level complex (d² = 0) on a random graded object.
PreComplex random_complex(Rng& rng, const DeformedAlgebra& A, int max_rank, int max_window);
/// Random degree-n map at `level`, entries zero with probability about one half.
GradedMap random_map(Rng& rng, const DeformedAlgebra& A, Level level, const GradedObject& src, const GradedObject& tgt,
                     int degree);
/// Random invertible degree-0 map and its inverse.
std::pair<GradedMap, GradedMap> random_automorphism(Rng& rng, const DeformedAlgebra& A, Level level,
                                                    const GradedObject& obj);
/// D = C ⊕ (contractible), conjugated; either orientation of the equivalence.
HomotopyEquivData random_homotopy_equivalence(Rng& rng, const DeformedAlgebra& A, const PreComplex& C);

}  // namespace clift
