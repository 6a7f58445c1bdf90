#include "nilrfrs/unipotent.hpp"

#include <algorithm>
#include <stdexcept>
#include <vector>

#include "nilrfrs/errors.hpp"

namespace nilrfrs {

bool is_unipotent(const IntMatrix& a) {
  if (!a.is_square()) throw DimensionMismatch("is_unipotent: matrix not square");
  const std::size_t n = a.rows();
  IntMatrix shifted = a - IntMatrix::identity(n);
  return power(shifted, static_cast<unsigned>(n)).is_zero();
}

namespace {

unsigned euler_phi_prime_power(unsigned p, unsigned k) {
  unsigned v = p - 1;
  for (unsigned i = 1; i < k; ++i) v *= p;
  return v;
}

bool is_prime(unsigned p) {
  if (p < 2) return false;
  for (unsigned d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

// Largest product of prime powers over primes[idx..] with total cost <= budget,
// where p^k costs phi(p^k), except 2^1 which costs nothing.
unsigned long long best_order(const std::vector<unsigned>& primes, std::size_t idx,
                              std::size_t budget) {
  if (idx == primes.size()) return 1;
  unsigned long long best = best_order(primes, idx + 1, budget);
  const unsigned p = primes[idx];
  unsigned long long pk = 1;
  for (unsigned k = 1;; ++k) {
    pk *= p;
    const unsigned cost = (p == 2 && k == 1) ? 0 : euler_phi_prime_power(p, k);
    if (cost > budget) break;
    best = std::max(best, pk * best_order(primes, idx + 1, budget - cost));
  }
  return best;
}

}  // namespace

unsigned max_finite_order(std::size_t n) {
  std::vector<unsigned> primes;
  for (unsigned p = 2; p <= n + 1; ++p)
    if (is_prime(p)) primes.push_back(p);
  return static_cast<unsigned>(best_order(primes, 0, n));
}

unsigned order_search_bound(std::size_t n) { return n <= 4 ? 12u : max_finite_order(n); }

FiniteOrderReport finite_order_semisimple_check(const IntMatrix& a) {
  if (!a.is_square()) throw DimensionMismatch("finite_order_semisimple_check: matrix not square");
  Integer det = determinant(a);
  if (det != 1 && det != -1)
    throw std::domain_error("finite_order_semisimple_check: matrix not invertible over Z");
  const std::size_t n = a.rows();
  FiniteOrderReport report;
  report.unipotent = is_unipotent(a);
  const IntMatrix id = IntMatrix::identity(n);
  IntMatrix p = a;
  const unsigned bound = order_search_bound(n);
  for (unsigned k = 1; k <= bound; ++k) {
    if (p == id) {
      report.order = k;
      break;
    }
    p = p * a;
  }
  return report;
}

}  // namespace nilrfrs
