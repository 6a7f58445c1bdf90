#pragma once

#include <optional>

#include "nilrfrs/int_matrix.hpp"

namespace nilrfrs {

/// True iff (A - I)^n = 0 for the n x n matrix A.
bool is_unipotent(const IntMatrix& a);

struct FiniteOrderReport {
  /// Multiplicative order when A has finite order, std::nullopt otherwise.
  std::optional<unsigned> order;
  bool unipotent = false;
};

/// Largest finite order of an element of GL_n(Z).
///
/// An order m occurs iff sum of phi(p^k) over the prime powers exactly dividing
/// m, less one when m = 2 mod 4, is at most n.
unsigned max_finite_order(std::size_t n);

/// Order search bound used by finite_order_semisimple_check.
unsigned order_search_bound(std::size_t n);

/// Detects finite order by iterating powers up to order_search_bound(n).
///
/// Requires det A = +-1; throws DimensionMismatch for non-square input and
/// std::domain_error when A is not invertible over Z.
FiniteOrderReport finite_order_semisimple_check(const IntMatrix& a);

}  // namespace nilrfrs
