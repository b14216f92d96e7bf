#pragma once

// The kernel complex J ⊗ Hom(C₀, D₀) over F_p and its cohomology.

#include <map>
#include <optional>

#include "clift/complex.hpp"
#include "clift/fp_linalg.hpp"

namespace clift {

/// Coordinates of degree n: J-basis index s outermost, then the flattened
/// base-level Homⁿ(C₀, D₀) (source degree, row, column, algebra basis).
class KernelComplex {
 public:
  /// C0 and D0 are base-level complexes.
  KernelComplex(DeformedAlgebra A, PreComplex C0, PreComplex D0);

  const DeformedAlgebra& algebra() const noexcept { return A_; }
  const PreComplex& source() const noexcept { return C0_; }
  const PreComplex& target() const noexcept { return D0_; }
  int prime() const { return A_.prime(); }
  int j_dim() const { return A_.tower().j_dim(); }
  int min_degree() const noexcept { return lo_; }
  int max_degree() const noexcept { return hi_; }

  int hom_dim(int n) const;
  int dim(int n) const { return j_dim() * hom_dim(n); }
  /// δ₀ ⊗ 1 : Cⁿ → Cⁿ⁺¹.
  const FpMatrix& differential(int n) const;
  /// δ₀ alone on Hom₀ⁿ.
  const FpMatrix& base_differential(int n) const;
  FpVector apply(int n, const FpVector& x) const { return differential(n).apply(x); }

  const Subspace& cocycles(int n) const;
  const Subspace& coboundaries(int n) const;

  /// Bar-level degree-n map that reduces to zero at the middle level.
  FpVector into_kernel(const GradedMap& m) const;
  GradedMap out_of_kernel(const FpVector& x, int n) const;

  FpVector hom_coords(const GradedMap& base_map) const;
  GradedMap hom_map(const FpVector& x, int n) const;

 private:
  struct Degree {
    int hom_dim = 0;
    FpMatrix base_delta;
    FpMatrix delta;
    Subspace cocycles{2, 0};
    Subspace coboundaries{2, 0};
  };
  const Degree& degree(int n) const;

  DeformedAlgebra A_;
  PreComplex C0_, D0_;
  int lo_ = 0, hi_ = -1;
  std::map<int, Degree> degrees_;
  Degree empty_;
};

/// A class with its canonical representative: the cocycle reduced against the
/// RREF basis of the coboundaries, so classes compare by representative.
struct CohClass {
  int degree = 0;
  FpVector rep;

  bool is_zero() const { return clift::is_zero(rep); }
  bool operator==(const CohClass&) const = default;
};

/// NotACocycle unless δz = 0.
CohClass coh_class(const KernelComplex& K, const FpVector& z, int n);
/// γ with δγ = z (echelon-minimal), or nullopt.
std::optional<FpVector> is_coboundary(const KernelComplex& K, const FpVector& z, int n);
int h_dim(const KernelComplex& K, int n);

/// RREF rows spanning canonical representatives of Hⁿ.
std::vector<FpVector> cohomology_basis(const KernelComplex& K, int n);
/// Every canonical representative of Hⁿ, coefficient vectors in lexicographic
/// order; CapExceeded beyond `cap` elements.
std::vector<FpVector> cohomology_elements(const KernelComplex& K, int n, std::uint64_t cap = std::uint64_t{1} << 20);

}  // namespace clift
