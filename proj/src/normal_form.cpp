#include "nilrfrs/normal_form.hpp"

#include <algorithm>

#include "nilrfrs/errors.hpp"

namespace nilrfrs {

HermiteDecomposition hnf(const IntMatrix& a) {
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  HermiteDecomposition out{a, IntMatrix::identity(m), 0, {}};
  IntMatrix& h = out.H;
  IntMatrix& u = out.U;

  std::size_t r = 0;
  for (std::size_t c = 0; c < n && r < m; ++c) {
    // Euclid on column c among rows r..m-1 until a single nonzero entry remains.
    for (;;) {
      std::size_t best = m;
      for (std::size_t i = r; i < m; ++i)
        if (h(i, c) != 0 && (best == m || abs(h(i, c)) < abs(h(best, c)))) best = i;
      if (best == m) break;
      h.swap_rows(r, best);
      u.swap_rows(r, best);
      bool clear = true;
      for (std::size_t i = r + 1; i < m; ++i) {
        if (h(i, c) == 0) continue;
        Integer q = trunc_div(h(i, c), h(r, c));
        h.add_row_multiple(i, r, -q);
        u.add_row_multiple(i, r, -q);
        if (h(i, c) != 0) clear = false;
      }
      if (clear) break;
    }
    if (h(r, c) == 0) continue;
    if (h(r, c) < 0) {
      h.negate_row(r);
      u.negate_row(r);
    }
    for (std::size_t i = 0; i < r; ++i) {
      Integer q = floor_div(h(i, c), h(r, c));
      h.add_row_multiple(i, r, -q);
      u.add_row_multiple(i, r, -q);
    }
    out.pivot_cols.push_back(c);
    ++r;
  }
  out.rank = r;
  return out;
}

std::size_t SmithDecomposition::rank() const {
  std::size_t r = 0;
  const std::size_t k = std::min(D.rows(), D.cols());
  while (r < k && D(r, r) != 0) ++r;
  return r;
}

IntVector SmithDecomposition::diagonal() const {
  IntVector d;
  for (std::size_t i = 0; i < std::min(D.rows(), D.cols()); ++i) d.push_back(D(i, i));
  return d;
}

SmithDecomposition snf(const IntMatrix& a) {
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  SmithDecomposition s{IntMatrix::identity(m), a, IntMatrix::identity(n)};
  IntMatrix& d = s.D;

  for (std::size_t t = 0; t < std::min(m, n); ++t) {
    for (;;) {
      // Smallest nonzero entry of the trailing block becomes the pivot.
      std::size_t pr = m, pc = n;
      for (std::size_t i = t; i < m; ++i)
        for (std::size_t j = t; j < n; ++j)
          if (d(i, j) != 0 && (pr == m || abs(d(i, j)) < abs(d(pr, pc)))) {
            pr = i;
            pc = j;
          }
      if (pr == m) return s;
      d.swap_rows(t, pr);
      s.U.swap_rows(t, pr);
      d.swap_cols(t, pc);
      s.V.swap_cols(t, pc);

      bool clear = true;
      for (std::size_t i = t + 1; i < m; ++i) {
        if (d(i, t) == 0) continue;
        Integer q = trunc_div(d(i, t), d(t, t));
        d.add_row_multiple(i, t, -q);
        s.U.add_row_multiple(i, t, -q);
        if (d(i, t) != 0) clear = false;
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        if (d(t, j) == 0) continue;
        Integer q = trunc_div(d(t, j), d(t, t));
        d.add_col_multiple(j, t, -q);
        s.V.add_col_multiple(j, t, -q);
        if (d(t, j) != 0) clear = false;
      }
      if (!clear) continue;

      // Divisibility: fold a row holding a non-multiple into the pivot row.
      std::size_t bad = m;
      for (std::size_t i = t + 1; i < m && bad == m; ++i)
        for (std::size_t j = t + 1; j < n; ++j)
          if (!divides(d(t, t), d(i, j))) {
            bad = i;
            break;
          }
      if (bad == m) break;
      d.add_row_multiple(t, bad, 1);
      s.U.add_row_multiple(t, bad, 1);
    }
    if (d(t, t) < 0) {
      d.negate_row(t);
      s.U.negate_row(t);
    }
  }
  return s;
}

std::string AbelianGroupStructure::to_string() const {
  std::string out;
  if (free_rank > 0) out = free_rank == 1 ? "Z" : "Z^" + std::to_string(free_rank);
  for (const auto& d : invariant_factors) {
    if (!out.empty()) out += " + ";
    out += "Z/" + d.get_str();
  }
  return out.empty() ? "0" : out;
}

AbelianQuotient::AbelianQuotient(const IntMatrix& relations, std::size_t n) : n_(n) {
  if (relations.cols() != n) throw DimensionMismatch("relation matrix has wrong column count");
  SmithDecomposition s = snf(relations);
  rank_ = s.rank();
  change_ = std::move(s.V);
  for (std::size_t k = 0; k < rank_; ++k) {
    diagonal_.push_back(s.D(k, k));
    if (s.D(k, k) > 1) {
      torsion_slots_.push_back(k);
      structure_.invariant_factors.push_back(s.D(k, k));
    }
  }
  structure_.free_rank = n - rank_;
}

AbelianImage AbelianQuotient::project(std::span<const Integer> v) const {
  if (v.size() != n_) throw DimensionMismatch("abelian projection: wrong vector length");
  IntVector w = v * change_;
  AbelianImage img;
  img.free.assign(w.begin() + static_cast<std::ptrdiff_t>(rank_), w.end());
  for (std::size_t k : torsion_slots_) img.torsion.push_back(mod_floor(w[k], diagonal_[k]));
  return img;
}

std::optional<Integer> AbelianQuotient::order(std::span<const Integer> v) const {
  AbelianImage img = project(v);
  if (!img.is_torsion()) return std::nullopt;
  Integer ord = 1;
  for (std::size_t i = 0; i < img.torsion.size(); ++i) {
    const Integer& d = structure_.invariant_factors[i];
    ord = lcm(ord, d / gcd(d, img.torsion[i]));
  }
  return ord;
}

IntMatrix AbelianQuotient::free_projection() const {
  IntMatrix f(n_, n_ - rank_);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = rank_; j < n_; ++j) f(i, j - rank_) = change_(i, j);
  return f;
}

AbelianGroupStructure abelian_group_from_relations(const IntMatrix& relations, std::size_t n) {
  return AbelianQuotient(relations, n).structure();
}

std::size_t rank(const IntMatrix& a) { return hnf(a).rank; }

namespace {

// Back substitution against a Hermite basis; returns coefficients or nullopt.
std::optional<IntVector> solve_hermite(const HermiteDecomposition& h, std::span<const Integer> v) {
  IntVector rest(v.begin(), v.end());
  IntVector coeffs(h.rank);
  for (std::size_t i = 0; i < h.rank; ++i) {
    const std::size_t c = h.pivot_cols[i];
    if (!divides(h.H(i, c), rest[c])) return std::nullopt;
    coeffs[i] = rest[c] / h.H(i, c);
    for (std::size_t j = c; j < rest.size(); ++j) rest[j] -= coeffs[i] * h.H(i, j);
  }
  if (!is_zero(rest)) return std::nullopt;
  return coeffs;
}

}  // namespace

bool lattice_member(const IntMatrix& basis, std::span<const Integer> v) {
  if (v.size() != basis.cols()) throw DimensionMismatch("lattice_member: vector length differs");
  return solve_hermite(hnf(basis), v).has_value();
}

std::optional<IntVector> lattice_coordinates(const IntMatrix& basis, std::span<const Integer> v) {
  if (v.size() != basis.cols())
    throw DimensionMismatch("lattice_coordinates: vector length differs");
  HermiteDecomposition h = hnf(basis);
  if (h.rank != basis.rows()) throw DimensionMismatch("lattice_coordinates: rows are dependent");
  auto c = solve_hermite(h, v);
  if (!c) return std::nullopt;
  return std::span<const Integer>(*c) * h.U.top_rows(h.rank);
}

Index lattice_index(const IntMatrix& basis) {
  HermiteDecomposition h = hnf(basis);
  if (h.rank < basis.cols()) return std::nullopt;
  Integer idx = 1;
  for (std::size_t i = 0; i < h.rank; ++i) idx *= h.H(i, h.pivot_cols[i]);
  return idx;
}

IntMatrix lattice_basis(const IntMatrix& generators) {
  HermiteDecomposition h = hnf(generators);
  return h.H.top_rows(h.rank);
}

IntMatrix left_kernel(const IntMatrix& a) {
  HermiteDecomposition h = hnf(a);
  IntMatrix k(0, a.rows());
  for (std::size_t i = h.rank; i < a.rows(); ++i) k.append_row(h.U.row(i));
  return lattice_basis(k);
}

IntMatrix lattice_intersection(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols() != b.cols()) throw DimensionMismatch("lattice_intersection: dimensions differ");
  IntMatrix stacked = a;
  for (std::size_t i = 0; i < b.rows(); ++i) stacked.append_row(b.row(i));
  IntMatrix kernel = left_kernel(stacked);
  // (x, y) with x*A + y*B = 0 gives x*A in both lattices.
  IntMatrix gens(0, a.cols());
  for (std::size_t r = 0; r < kernel.rows(); ++r) {
    auto row = kernel.row(r);
    gens.append_row(row.first(a.rows()) * a);
  }
  return lattice_basis(gens);
}

IntMatrix lattice_saturation(const IntMatrix& a) {
  const std::size_t n = a.cols();
  if (a.rows() == 0) return IntMatrix(0, n);
  // Integer vectors orthogonal to the rational right kernel of A.
  IntMatrix right_kernel = left_kernel(a.transpose());
  if (right_kernel.rows() == 0) return IntMatrix::identity(n);
  return left_kernel(right_kernel.transpose());
}

}  // namespace nilrfrs
