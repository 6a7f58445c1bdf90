#include "nilrfrs/nilpotent.hpp"

#include "nilrfrs/errors.hpp"

namespace nilrfrs {

std::vector<Subgroup> lower_central_series(const PcPresentation& p) {
  const std::size_t n = p.generator_count();
  std::vector<Subgroup> series{Subgroup::whole(p)};
  while (!series.back().is_trivial()) {
    if (series.size() > n + 1) throw InvalidPresentation("lower central series does not terminate");
    std::vector<GroupElement> gens;
    for (const auto& t : series.back().generators())
      for (std::size_t x = 0; x < n; ++x) {
        GroupElement c = p.commutator(t, p.generator(x));
        if (!c.is_identity()) gens.push_back(std::move(c));
      }
    series.push_back(normal_closure(p, gens));
  }
  return series;
}

Subgroup derived_subgroup(const PcPresentation& p) {
  auto series = lower_central_series(p);
  return series.size() > 1 ? series[1] : series[0];
}

std::vector<std::size_t> lcs_ranks(const PcPresentation& p) {
  auto series = lower_central_series(p);
  std::vector<std::size_t> ranks;
  for (std::size_t k = 0; k + 1 < series.size(); ++k)
    ranks.push_back(series[k].hirsch_length() - series[k + 1].hirsch_length());
  return ranks;
}

std::size_t hirsch_rank(const PcPresentation& p) {
  std::size_t total = 0;
  for (std::size_t r : lcs_ranks(p)) total += r;
  return total;
}

Subgroup center(const PcPresentation& p) {
  const std::size_t n = p.generator_count();
  // C_k: elements whose commutators with every generator vanish in
  // coordinates <= k. The k-th coordinate of [t, g_x] is additive on C_{k-1}
  // because G_k / G_{k+1} is central.
  Subgroup c = Subgroup::whole(p);
  for (std::size_t k = 0; k < n && !c.is_trivial(); ++k) {
    auto t = c.generators();
    IntMatrix images(t.size(), n);
    bool any = false;
    for (std::size_t r = 0; r < t.size(); ++r)
      for (std::size_t x = 0; x < n; ++x) {
        images(r, x) = p.commutator(t[r], p.generator(x))[k];
        if (images(r, x) != 0) any = true;
      }
    if (any) c = homomorphism_kernel(c, images);
  }
  return c;
}

namespace {

IntMatrix commutator_relations(const PcPresentation& p) {
  const std::size_t n = p.generator_count();
  IntMatrix r(0, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const GroupElement& c = p.commutator_relation(i, j);
      if (!c.is_identity()) r.append_row(c.exps);
    }
  return r;
}

}  // namespace

Abelianization::Abelianization(const PcPresentation& p)
    : relations_(commutator_relations(p)), quotient_(relations_, p.generator_count()) {}

Abelianization abelianization(const PcPresentation& p) { return Abelianization(p); }

bool rational_ab_kernel_member(const PcPresentation& p, const GroupElement& g) {
  return Abelianization(p).project(g).is_torsion();
}

Subgroup rational_ab_kernel(const PcPresentation& p) {
  return homomorphism_kernel(Subgroup::whole(p), Abelianization(p).free_projection());
}

Subgroup isolator(const Subgroup& s) {
  if (s.ambient().nilpotency_class() > 2)
    throw UnsupportedClass("isolator is only implemented for nilpotency class <= 2");
  if (!is_lattice(s)) throw NotALattice("isolator: subgroup coordinates do not form a lattice");
  // A class-2 lattice subgroup spans a rational subgroup whose integer points
  // are exactly the isolator.
  IntMatrix sat = lattice_saturation(s.basis());
  std::vector<GroupElement> gens;
  for (std::size_t r = 0; r < sat.rows(); ++r) gens.emplace_back(sat.row_vector(r));
  Subgroup t = subgroup_closure(s.ambient(), gens);
  if (t.basis() != sat) throw Error("isolator: saturated lattice is not closed");
  return t;
}

CenterAbReport center_ab_report(const PcPresentation& p) {
  CenterAbReport report;
  Subgroup z = center(p);
  report.center_basis = z.generators();
  if (z.is_trivial()) return report;
  IntMatrix images = z.basis() * Abelianization(p).free_projection();
  report.injective = rank(images) == z.hirsch_length();
  if (!report.injective) {
    IntMatrix k = left_kernel(images);
    report.kernel_witness = z.element(k.row_vector(0));
  }
  return report;
}

std::optional<VirtualSplitting> virtual_splitting(const PcPresentation& p) {
  Subgroup z = center(p);
  IntMatrix f = Abelianization(p).free_projection();
  IntMatrix images = z.basis() * f;
  const std::size_t r = z.hirsch_length();
  if (rank(images) != r) return std::nullopt;
  // Columns of V beyond r kill the image of the center; keep the first r.
  IntMatrix v = snf(images).V;
  IntMatrix proj(f.cols(), r);
  for (std::size_t i = 0; i < f.cols(); ++i)
    for (std::size_t j = 0; j < r; ++j) proj(i, j) = v(i, j);
  Subgroup k = homomorphism_kernel(Subgroup::whole(p), f * proj);
  auto gens = k.generators();
  for (const auto& g : z.generators()) gens.push_back(g);
  Index idx = index(subgroup_closure(p, gens));
  if (!idx) throw Error("virtual_splitting: product has infinite index");
  return VirtualSplitting{k, z, *idx};
}

}  // namespace nilrfrs
