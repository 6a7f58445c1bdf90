#include "nilrfrs/subgroup.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <deque>
#include <istream>
#include <mutex>
#include <sstream>
#include <thread>

#include "nilrfrs/errors.hpp"
#include "nilrfrs/normal_form.hpp"

namespace nilrfrs {

namespace detail {

struct SubgroupAccess {
  static Subgroup make(PcPresentation p, IntMatrix basis) {
    return Subgroup(std::move(p), std::move(basis));
  }
};

}  // namespace detail

namespace {

// Builds the canonical generating sequence of a subgroup by sifting.
class SequenceBuilder {
 public:
  explicit SequenceBuilder(const PcPresentation& p) : p_(p), table_(p.generator_count()) {}

  void add(GroupElement g) { queue_.push_back(std::move(g)); }

  void run() {
    while (!queue_.empty()) {
      GroupElement g = std::move(queue_.front());
      queue_.pop_front();
      sift(std::move(g));
    }
  }

  IntMatrix canonical_basis() const {
    std::vector<GroupElement> seq;
    for (const auto& t : table_)
      if (t) seq.push_back(*t);
    for (std::size_t i = seq.size(); i-- > 0;)
      for (std::size_t j = i + 1; j < seq.size(); ++j) {
        const std::size_t d = seq[j].depth();
        Integer q = floor_div(seq[i][d], seq[j][d]);
        if (q != 0) seq[i] = p_.multiply(seq[i], p_.power(seq[j], -q));
      }
    IntMatrix basis(0, p_.generator_count());
    for (const auto& t : seq) basis.append_row(t.exps);
    return basis;
  }

 private:
  void sift(GroupElement g) {
    while (!g.is_identity()) {
      const std::size_t d = g.depth();
      if (!table_[d]) {
        if (g[d] < 0) g = p_.inverse(g);
        install(d, std::move(g));
        return;
      }
      const GroupElement& h = *table_[d];
      const Integer a = h[d];
      const Integer b = g[d];
      if (divides(a, b)) {
        g = p_.multiply(p_.power(h, -(b / a)), g);
        continue;
      }
      Bezout z = bezout(a, b);
      GroupElement combined = p_.multiply(p_.power(h, z.s), p_.power(g, z.t));
      queue_.push_back(h);
      install(d, std::move(combined));
    }
  }

  void install(std::size_t d, GroupElement g) {
    table_[d] = std::move(g);
    const GroupElement& x = *table_[d];
    for (std::size_t e = 0; e < table_.size(); ++e) {
      if (e == d || !table_[e]) continue;
      const GroupElement& y = *table_[e];
      queue_.push_back(p_.commutator(x, y));
      queue_.push_back(p_.commutator(x, p_.inverse(y)));
      queue_.push_back(p_.commutator(p_.inverse(x), y));
    }
  }

  const PcPresentation& p_;
  std::vector<std::optional<GroupElement>> table_;
  std::deque<GroupElement> queue_;
};

void require_same_ambient(const Subgroup& a, const Subgroup& b) {
  if (!(a.ambient() == b.ambient())) throw Error("subgroups live in different groups");
}

void require_class_two(const PcPresentation& p, const char* what) {
  if (p.nilpotency_class() > 2)
    throw UnsupportedClass(std::string(what) + " is only implemented for nilpotency class <= 2");
}

}  // namespace

// ---------------------------------------------------------------------------
// Subgroup

Subgroup Subgroup::whole(const PcPresentation& ambient) {
  return Subgroup(ambient, IntMatrix::identity(ambient.generator_count()));
}

Subgroup Subgroup::trivial(const PcPresentation& ambient) {
  return Subgroup(ambient, IntMatrix(0, ambient.generator_count()));
}

std::vector<GroupElement> Subgroup::generators() const {
  std::vector<GroupElement> g;
  for (std::size_t i = 0; i < basis_.rows(); ++i) g.emplace_back(basis_.row_vector(i));
  return g;
}

std::optional<IntVector> Subgroup::coordinates(const GroupElement& g) const {
  if (g.size() != ambient_.generator_count())
    throw DimensionMismatch("subgroup membership: element length differs");
  GroupElement rest = g;
  IntVector coords(basis_.rows());
  for (std::size_t k = 0; k < basis_.rows(); ++k) {
    GroupElement t(basis_.row_vector(k));
    const std::size_t d = t.depth();
    const std::size_t rd = rest.depth();
    if (rd < d) return std::nullopt;
    if (rd > d) continue;
    if (!divides(t[d], rest[d])) return std::nullopt;
    coords[k] = rest[d] / t[d];
    rest = ambient_.multiply(ambient_.power(t, -coords[k]), rest);
  }
  if (!rest.is_identity()) return std::nullopt;
  return coords;
}

bool Subgroup::contains(const GroupElement& g) const { return coordinates(g).has_value(); }

bool Subgroup::contains(const Subgroup& other) const {
  require_same_ambient(*this, other);
  for (const auto& g : other.generators())
    if (!contains(g)) return false;
  return true;
}

GroupElement Subgroup::element(const IntVector& coords) const {
  if (coords.size() != basis_.rows())
    throw DimensionMismatch("subgroup element: coordinate count differs from basis size");
  GroupElement g = ambient_.identity();
  for (std::size_t k = 0; k < coords.size(); ++k)
    if (coords[k] != 0)
      g = ambient_.multiply(g, ambient_.power(GroupElement(basis_.row_vector(k)), coords[k]));
  return g;
}

std::string to_string(const Subgroup& s) {
  std::string out = "<";
  for (std::size_t i = 0; i < s.basis().rows(); ++i) {
    if (i) out += ",";
    out += to_string(s.basis().row_vector(i));
  }
  return out + ">";
}

Subgroup subgroup_closure(const PcPresentation& p, const std::vector<GroupElement>& generators) {
  SequenceBuilder b(p);
  for (const auto& g : generators) {
    if (g.size() != p.generator_count())
      throw DimensionMismatch("subgroup_closure: generator length differs");
    b.add(g);
  }
  b.run();
  return detail::SubgroupAccess::make(p, b.canonical_basis());
}

Subgroup normal_closure(const Subgroup& within, const std::vector<GroupElement>& generators) {
  const PcPresentation& p = within.ambient();
  std::vector<GroupElement> gens = generators;
  Subgroup s = subgroup_closure(p, gens);
  std::vector<GroupElement> movers;
  for (const auto& w : within.generators()) {
    movers.push_back(w);
    movers.push_back(p.inverse(w));
  }
  for (;;) {
    std::vector<GroupElement> fresh;
    for (const auto& t : s.generators())
      for (const auto& w : movers) {
        GroupElement c = p.conjugate(t, w);
        if (!s.contains(c)) fresh.push_back(std::move(c));
      }
    if (fresh.empty()) return s;
    gens = s.generators();
    gens.insert(gens.end(), fresh.begin(), fresh.end());
    s = subgroup_closure(p, gens);
  }
}

Subgroup normal_closure(const PcPresentation& p, const std::vector<GroupElement>& generators) {
  return normal_closure(Subgroup::whole(p), generators);
}

Subgroup homomorphism_kernel(const Subgroup& domain, const IntMatrix& images) {
  if (images.rows() != domain.hirsch_length())
    throw DimensionMismatch("homomorphism_kernel: one image row per basis element required");
  const PcPresentation& p = domain.ambient();
  std::vector<GroupElement> gens;
  IntMatrix k = left_kernel(images);
  for (std::size_t r = 0; r < k.rows(); ++r) gens.push_back(domain.element(k.row_vector(r)));
  // The derived subgroup of the domain always lies in the kernel.
  auto t = domain.generators();
  for (std::size_t i = 0; i < t.size(); ++i)
    for (std::size_t j = i + 1; j < t.size(); ++j) gens.push_back(p.commutator(t[j], t[i]));
  return normal_closure(domain, gens);
}

Index index(const Subgroup& s) {
  if (!s.is_full_rank()) return std::nullopt;
  Integer idx = 1;
  for (std::size_t i = 0; i < s.basis().rows(); ++i) idx *= s.basis()(i, i);
  return idx;
}

Index relative_index(const Subgroup& super, const Subgroup& sub) {
  require_same_ambient(super, sub);
  if (!super.contains(sub)) throw Error("relative_index: subgroup not contained");
  if (super.hirsch_length() != sub.hirsch_length()) return std::nullopt;
  Integer idx = 1;
  for (std::size_t i = 0; i < sub.basis().rows(); ++i) {
    const std::size_t d = GroupElement(sub.basis().row_vector(i)).depth();
    idx *= sub.basis()(i, d) / super.basis()(i, d);
  }
  return idx;
}

bool is_normal(const Subgroup& s) {
  const PcPresentation& p = s.ambient();
  for (const auto& t : s.generators())
    for (std::size_t i = 0; i < p.generator_count(); ++i) {
      GroupElement x = p.generator(i);
      if (!s.contains(p.conjugate(t, x)) || !s.contains(p.conjugate(t, p.inverse(x))))
        return false;
    }
  return true;
}

bool is_lattice(const Subgroup& s) {
  const PcPresentation& p = s.ambient();
  require_class_two(p, "is_lattice");
  // In class 2 the product is bilinear up to a central correction, so closure
  // of the span reduces to products of basis pairs and inverses.
  const IntMatrix& b = s.basis();
  auto t = s.generators();
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (!lattice_member(b, p.inverse(t[i]).exps)) return false;
    for (std::size_t j = 0; j < t.size(); ++j)
      if (!lattice_member(b, p.multiply(t[i], t[j]).exps)) return false;
  }
  return true;
}

Subgroup intersect(const Subgroup& a, const Subgroup& b) {
  require_same_ambient(a, b);
  const PcPresentation& p = a.ambient();
  require_class_two(p, "intersect");
  if (!is_lattice(a) || !is_lattice(b))
    throw NotALattice("intersect: both subgroups must be coordinate lattices");
  IntMatrix meet = lattice_intersection(a.basis(), b.basis());
  std::vector<GroupElement> gens;
  for (std::size_t r = 0; r < meet.rows(); ++r) gens.emplace_back(meet.row_vector(r));
  Subgroup s = subgroup_closure(p, gens);
  if (s.basis() != meet) throw Error("intersect: lattice intersection is not closed");
  return s;
}

// ---------------------------------------------------------------------------
// Enumeration

namespace {

void diagonals(std::size_t n, const Integer& budget, std::vector<Integer>& current,
               std::vector<std::vector<Integer>>& out) {
  if (current.size() == n) {
    out.push_back(current);
    return;
  }
  for (Integer d = 1; d <= budget; ++d) {
    current.push_back(d);
    diagonals(n, budget / d, current, out);
    current.pop_back();
  }
}

// Membership in a full-rank upper triangular row lattice.
bool triangular_member(const IntMatrix& h, IntVector v) {
  for (std::size_t c = 0; c < h.rows(); ++c) {
    if (v[c] == 0) continue;
    if (!divides(h(c, c), v[c])) return false;
    Integer q = v[c] / h(c, c);
    for (std::size_t j = c; j < v.size(); ++j) v[j] -= q * h(c, j);
  }
  return true;
}

bool closed_candidate(const PcPresentation& p, const IntMatrix& h, bool normal_only,
                      const std::vector<GroupElement>& movers) {
  const std::size_t n = h.rows();
  std::vector<GroupElement> t;
  for (std::size_t i = 0; i < n; ++i) t.emplace_back(h.row_vector(i));
  for (std::size_t i = 0; i < n; ++i) {
    if (!triangular_member(h, p.inverse(t[i]).exps)) return false;
    for (std::size_t j = 0; j < n; ++j)
      if (!triangular_member(h, p.multiply(t[i], t[j]).exps)) return false;
  }
  if (normal_only)
    for (const auto& x : t)
      for (const auto& m : movers)
        if (!triangular_member(h, p.conjugate(x, m).exps)) return false;
  return true;
}

}  // namespace

Integer hermite_candidate_count(std::size_t n, const Integer& max_index) {
  std::vector<std::vector<Integer>> diags;
  std::vector<Integer> cur;
  if (max_index < 1) return 0;
  diagonals(n, max_index, cur, diags);
  Integer total = 0;
  for (const auto& d : diags) {
    Integer c = 1;
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t i = 0; i < j; ++i) c *= d[j];
    total += c;
  }
  return total;
}

std::vector<Subgroup> enumerate_subgroups(const PcPresentation& p, const Integer& max_index,
                                          bool normal_only, const EnumerationLimits& limits) {
  require_class_two(p, "subgroup enumeration");
  const std::size_t n = p.generator_count();
  if (max_index < 1) return {};
  Integer count = hermite_candidate_count(n, max_index);
  if (count > Integer(static_cast<unsigned long>(limits.max_candidates)))
    throw ResourceLimit("subgroup enumeration would examine " + count.get_str() +
                        " candidates (limit " + std::to_string(limits.max_candidates) + ")");

  std::vector<std::vector<Integer>> diags;
  std::vector<Integer> cur;
  diagonals(n, max_index, cur, diags);

  std::vector<GroupElement> movers;
  for (std::size_t i = 0; i < n; ++i) {
    movers.push_back(p.generator(i));
    movers.push_back(p.inverse(p.generator(i)));
  }

  std::atomic<std::size_t> next{0};
  std::mutex mu;
  std::vector<Subgroup> found;
  auto worker = [&] {
    std::vector<Subgroup> local;
    for (std::size_t k; (k = next.fetch_add(1)) < diags.size();) {
      const auto& d = diags[k];
      IntMatrix h(n, n);
      for (std::size_t i = 0; i < n; ++i) h(i, i) = d[i];
      // Odometer over entries above the diagonal, each in [0, d_col).
      std::vector<std::pair<std::size_t, std::size_t>> slots;
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i < j; ++i)
          if (d[j] > 1) slots.emplace_back(i, j);
      for (;;) {
        if (closed_candidate(p, h, normal_only, movers))
          local.push_back(detail::SubgroupAccess::make(p, h));
        std::size_t s = 0;
        for (; s < slots.size(); ++s) {
          auto [i, j] = slots[s];
          h(i, j) += 1;
          if (h(i, j) < d[j]) break;
          h(i, j) = 0;
        }
        if (s == slots.size()) break;
      }
    }
    std::lock_guard lock(mu);
    for (auto& s : local) found.push_back(std::move(s));
  };

  unsigned threads = limits.threads ? limits.threads : std::thread::hardware_concurrency();
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(diags.size())));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }

  std::sort(found.begin(), found.end(), [](const Subgroup& a, const Subgroup& b) {
    Integer ia = *index(a), ib = *index(b);
    if (ia != ib) return ia < ib;
    return a.basis() < b.basis();
  });
  return found;
}

std::vector<Subgroup> enumerate_normal_subgroups(const PcPresentation& p, const Integer& max_index,
                                                 const EnumerationLimits& limits) {
  return enumerate_subgroups(p, max_index, true, limits);
}

// ---------------------------------------------------------------------------
// Induced presentations

namespace {

PcPresentation build_induced(const Subgroup& s) {
  const PcPresentation& p = s.ambient();
  auto t = s.generators();
  const std::size_t r = t.size();
  std::vector<std::vector<IntVector>> table(r);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = i + 1; j < r; ++j) {
      auto c = s.coordinates(p.commutator(t[j], t[i]));
      if (!c) throw Error("induced presentation: commutator escapes the subgroup");
      table[i].push_back(std::move(*c));
    }
  return PcPresentation(r, table);
}

}  // namespace

InducedPresentation::InducedPresentation(const Subgroup& s)
    : subgroup_(s), presentation_(build_induced(s)) {}

GroupElement InducedPresentation::include(const GroupElement& local) const {
  return subgroup_.element(local.exps);
}

std::optional<GroupElement> InducedPresentation::localize(const GroupElement& ambient) const {
  auto c = subgroup_.coordinates(ambient);
  if (!c) return std::nullopt;
  return GroupElement(std::move(*c));
}

Subgroup InducedPresentation::include(const Subgroup& local) const {
  if (!(local.ambient() == presentation_)) throw Error("include: subgroup of another group");
  std::vector<GroupElement> gens;
  for (const auto& g : local.generators()) gens.push_back(include(g));
  return subgroup_closure(subgroup_.ambient(), gens);
}

Subgroup InducedPresentation::localize(const Subgroup& ambient) const {
  std::vector<GroupElement> gens;
  for (const auto& g : ambient.generators()) {
    auto l = localize(g);
    if (!l) throw Error("localize: subgroup not contained in the induced subgroup");
    gens.push_back(std::move(*l));
  }
  return subgroup_closure(presentation_, gens);
}

InducedPresentation induced_presentation(const Subgroup& s) { return InducedPresentation(s); }

// ---------------------------------------------------------------------------
// Chain files

std::vector<Subgroup> parse_subgroups(const PcPresentation& p, std::istream& in) {
  const std::size_t n = p.generator_count();
  std::vector<Subgroup> out;
  std::vector<GroupElement> block;
  auto flush = [&] {
    if (!block.empty()) out.push_back(subgroup_closure(p, block));
    block.clear();
  };
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto pos = line.find('#'); pos != std::string::npos) line.erase(pos);
    std::istringstream ls(line);
    IntVector row;
    std::string tok;
    while (ls >> tok) {
      Integer x;
      if (x.set_str(tok, 10) != 0)
        throw ParseError("chain line " + std::to_string(line_no) + ": bad integer '" + tok + "'");
      row.push_back(x);
    }
    if (row.empty()) {
      flush();
      continue;
    }
    if (row.size() != n)
      throw ParseError("chain line " + std::to_string(line_no) + ": expected " +
                       std::to_string(n) + " integers");
    block.emplace_back(std::move(row));
  }
  flush();
  return out;
}

std::vector<Subgroup> parse_subgroups(const PcPresentation& p, const std::string& text) {
  std::istringstream in(text);
  return parse_subgroups(p, in);
}

std::string format_subgroups(const std::vector<Subgroup>& subgroups) {
  std::ostringstream out;
  for (std::size_t k = 0; k < subgroups.size(); ++k) {
    if (k) out << '\n';
    const IntMatrix& b = subgroups[k].basis();
    if (b.rows() == 0) {
      for (std::size_t j = 0; j < b.cols(); ++j) out << (j ? " 0" : "0");
      out << '\n';
    }
    for (std::size_t i = 0; i < b.rows(); ++i) {
      for (std::size_t j = 0; j < b.cols(); ++j) out << (j ? " " : "") << b(i, j);
      out << '\n';
    }
  }
  return out.str();
}

}  // namespace nilrfrs
