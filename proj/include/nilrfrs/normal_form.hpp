#pragma once

#include <optional>
#include <span>
#include <vector>

#include "nilrfrs/int_matrix.hpp"

namespace nilrfrs {

/// Row-style Hermite form H = U * A.
///
/// H is in row echelon form with positive pivots; every entry above a pivot
/// lies in [0, pivot). Zero rows sit at the bottom. U is unimodular.
struct HermiteDecomposition {
  IntMatrix H;
  IntMatrix U;
  std::size_t rank = 0;
  /// Column of the pivot in each of the first `rank` rows.
  std::vector<std::size_t> pivot_cols;
};

HermiteDecomposition hnf(const IntMatrix& a);

/// U * A * V = D with D diagonal, d_1 | d_2 | ..., all d_i >= 0.
struct SmithDecomposition {
  IntMatrix U;
  IntMatrix D;
  IntMatrix V;

  std::size_t rank() const;
  /// Diagonal entries d_1, ..., d_min(rows, cols).
  IntVector diagonal() const;
};

SmithDecomposition snf(const IntMatrix& a);

/// Z^free_rank + Z/d_1 + ... + Z/d_k with 2 <= d_1 | d_2 | ... | d_k.
struct AbelianGroupStructure {
  std::size_t free_rank = 0;
  IntVector invariant_factors;

  bool is_free() const { return invariant_factors.empty(); }
  /// E.g. "Z^2 + Z/2"; the trivial group prints as "0".
  std::string to_string() const;
  friend bool operator==(const AbelianGroupStructure&, const AbelianGroupStructure&) = default;
};

/// Image of a vector in Z^n / rowspace(R), in Smith coordinates.
struct AbelianImage {
  IntVector free;     // length = free_rank
  IntVector torsion;  // residue modulo each invariant factor, same order

  bool is_torsion() const { return is_zero(free); }
  bool is_zero_element() const { return is_zero(free) && nilrfrs::is_zero(torsion); }
};

/// Quotient Z^n / rowspace(R) together with the coordinate projection.
class AbelianQuotient {
 public:
  AbelianQuotient(const IntMatrix& relations, std::size_t n);

  const AbelianGroupStructure& structure() const { return structure_; }
  std::size_t ambient_dimension() const { return n_; }
  AbelianImage project(std::span<const Integer> v) const;
  /// Order of the image of v, or std::nullopt when it has infinite order.
  std::optional<Integer> order(std::span<const Integer> v) const;
  /// n x free_rank matrix F with project(v).free = v * F.
  IntMatrix free_projection() const;

 private:
  std::size_t n_;
  AbelianGroupStructure structure_;
  IntMatrix change_;  // V from the Smith form of the relations
  std::size_t rank_ = 0;
  std::vector<std::size_t> torsion_slots_;
  IntVector diagonal_;
};

/// Structure of Z^n / rowspace(R) where R has n columns.
AbelianGroupStructure abelian_group_from_relations(const IntMatrix& relations, std::size_t n);

std::size_t rank(const IntMatrix& a);

/// True iff v is an integer combination of the rows of `basis`.
bool lattice_member(const IntMatrix& basis, std::span<const Integer> v);

/// Integer coefficients c with c * basis = v, if they exist. `basis` must have
/// linearly independent rows.
std::optional<IntVector> lattice_coordinates(const IntMatrix& basis, std::span<const Integer> v);

/// Index of the row lattice of `basis` in Z^n; std::nullopt when the rank is below n.
Index lattice_index(const IntMatrix& basis);

/// Hermite basis (nonzero rows of the HNF) of the row lattice.
IntMatrix lattice_basis(const IntMatrix& generators);

/// Basis of the integer left kernel {x : x * A = 0}, in Hermite form.
IntMatrix left_kernel(const IntMatrix& a);

/// Hermite basis of the intersection of two row lattices in Z^n.
IntMatrix lattice_intersection(const IntMatrix& a, const IntMatrix& b);

/// Hermite basis of (rowspace(A) tensor Q) intersected with Z^n.
IntMatrix lattice_saturation(const IntMatrix& a);

}  // namespace nilrfrs
