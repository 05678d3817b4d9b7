#pragma once

// Toric combinatorics: divisor class group of a fan, canonical class,
// global sections of a divisor class as lattice points, and the A-matrix.

#include <optional>
#include <vector>

#include "tautgen/exact_core.hpp"

namespace tautgen {

using IntVector = std::vector<long>;

struct FanData {
  int dimension = 0;
  std::vector<IntVector> rays;
  std::optional<std::vector<std::vector<int>>> maximal_cones;

  std::size_t ray_count() const { return rays.size(); }
  /// Throws InputError unless the rays are primitive, pairwise distinct and span Q^n.
  void validate() const;
};

FanData projective_space_fan(int d);

/// Presentation of coker((Z^n)* -> (Z^t)*, mu -> (<mu, nu_j>)_j).
struct ClassGroup {
  std::size_t ray_count = 0;
  /// Canonical basis of the relation lattice {l : sum_j l_j nu_j = 0}; pairing with
  /// these rows gives the free coordinates of a class.
  IntegerMatrix relations;
  /// Invariant factors d_i > 1 and the matching rows of the SNF transform.
  std::vector<BigInt> torsion;
  IntegerMatrix torsion_rows;

  std::size_t free_rank() const { return relations.rows(); }
};

struct DivisorClass {
  IntVector representative;
  std::vector<BigInt> free;     // free coordinates
  std::vector<BigInt> torsion;  // residues modulo the invariant factors

  friend bool operator==(const DivisorClass& x, const DivisorClass& y) {
    return x.free == y.free && x.torsion == y.torsion;
  }
};

ClassGroup class_group(const FanData& fan);
DivisorClass class_of(const ClassGroup& group, const IntVector& representative);
DivisorClass canonical_class(const FanData& fan);
/// [D_j] for each ray.
std::vector<DivisorClass> boundary_divisor_classes(const FanData& fan);

/// Sections of O(sum c_j D_j): monomials z^a with a_j = <mu, nu_j> + c_j >= 0.
struct MonomialBasis {
  IntVector representative;
  std::vector<IntVector> monomials;        // a in Z^t_{>=0}
  std::vector<IntVector> laurent_exponents;  // mu in Z^n, same order
};

MonomialBasis sections(const FanData& fan, const IntVector& representative);
MonomialBasis anticanonical_sections(const FanData& fan);

/// Columns (1, mu_i) in the order of the basis.
struct AMatrix {
  IntegerMatrix matrix;  // (n+1) x (p+1)

  std::size_t column_count() const { return matrix.cols(); }
  std::size_t row_count() const { return matrix.rows(); }
  /// mu_i (the column without its leading 1).
  IntVector mu(std::size_t i) const;
  /// Index of the column (1, 0, ..., 0), if present.
  std::optional<std::size_t> interior_index() const;
  void validate() const;
};

AMatrix a_matrix(const MonomialBasis& basis);
AMatrix a_matrix_from_columns(const std::vector<IntVector>& mus);

/// l with [K_X] = l [L], when the class equation is solvable (torsion included).
std::optional<BigInt> cy_power_check(const FanData& fan, const DivisorClass& bundle);

}  // namespace tautgen
