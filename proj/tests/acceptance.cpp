// Acceptance suite: one PASS/FAIL line per criterion.
//
//   acceptance        run every criterion
//   acceptance N...   run the listed criteria
//
// Exit status is 0 iff every selected criterion passes.

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "nilrfrs/cli.hpp"
#include "nilrfrs/errors.hpp"
#include "nilrfrs/nilpotent.hpp"
#include "nilrfrs/raag.hpp"
#include "nilrfrs/rfrs.hpp"
#include "nilrfrs/unipotent.hpp"
#include "oracles.hpp"

using namespace nilrfrs;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok && pass) {
      pass = false;
      detail = what;
    }
  }
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

Subgroup scaled(const PcPresentation& p, const Integer& k) {
  std::vector<GroupElement> gens;
  for (std::size_t i = 0; i < p.generator_count(); ++i) gens.push_back(p.power(p.generator(i), k));
  return subgroup_closure(p, gens);
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Smallest k in [1, bound] with k v in the row lattice of `rel`.
std::optional<long> brute_force_order(const IntMatrix& rel, const IntVector& v, long bound) {
  for (long k = 1; k <= bound; ++k) {
    IntVector w = v;
    for (auto& x : w) x *= k;
    if (lattice_member(rel, w)) return k;
  }
  return std::nullopt;
}

Outcome criterion_1() {
  Outcome o;
  std::mt19937 rng(1000);
  std::uniform_int_distribution<int> dim(1, 5);
  const auto start = Clock::now();
  for (int trial = 0; trial < 1000 && o.pass; ++trial) {
    IntMatrix a = oracle::random_matrix(rng, dim(rng), dim(rng), -9, 9);
    auto s = snf(a);
    o.require(oracle::is_smith(a, s), "snf certificate rejected for\n" + format_matrix(a));
    auto h = hnf(a);
    o.require(h.U * a == h.H && abs(determinant(h.U)) == 1 && oracle::is_hermite(h),
              "hnf certificate rejected for\n" + format_matrix(a));
    if (std::min(a.rows(), a.cols()) <= 3) {
      IntVector d = s.diagonal();
      IntVector expect = oracle::smith_diagonal_by_minors(a);
      d.resize(expect.size());
      o.require(d == expect, "snf diagonal disagrees with determinantal divisors");
    }
  }
  const double t = seconds_since(start);
  o.require(t < 10.0, "took " + std::to_string(t) + " s");
  if (o.pass) o.detail = "1000 matrices, " + std::to_string(t) + " s";
  return o;
}

Outcome criterion_2() {
  Outcome o;
  struct Case {
    IntMatrix a;
    unsigned order;
  };
  // One representative per conjugacy class of finite order in GL2(Z).
  std::vector<Case> reps = {
      {IntMatrix{{1, 0}, {0, 1}}, 1},   {IntMatrix{{-1, 0}, {0, -1}}, 2}, {IntMatrix{{1, 0}, {0, -1}}, 2},
      {IntMatrix{{0, 1}, {1, 0}}, 2},   {IntMatrix{{0, -1}, {1, -1}}, 3}, {IntMatrix{{0, -1}, {1, 0}}, 4},
      {IntMatrix{{0, -1}, {1, 1}}, 6},
  };
  const auto start = Clock::now();
  for (const auto& c : reps) {
    // The order oracle is the least m with A^m = I.
    unsigned m = 1;
    while (power(c.a, m) != IntMatrix::identity(2)) ++m;
    auto r = finite_order_semisimple_check(c.a);
    const std::string name = format_matrix(c.a);
    o.require(m == c.order, "table order wrong for\n" + name);
    o.require(r.order == m, "wrong order for\n" + name);
    o.require(is_unipotent(c.a) == (m == 1) && r.unipotent == (m == 1), "unipotence wrong for\n" + name);
  }
  const double t = seconds_since(start);
  o.require(t < 1.0, "took " + std::to_string(t) + " s");
  if (o.pass) o.detail = std::to_string(reps.size()) + " classes, orders 1,2,3,4,6";
  return o;
}

Outcome criterion_3() {
  Outcome o;
  const auto start = Clock::now();
  std::size_t words = 0;
  for (std::size_t n : {3u, 4u}) {
    PcPresentation p = n == 3 ? heisenberg() : unitriangular(4);
    auto pos = unitriangular_positions(n);
    std::vector<Syllable> letters;
    std::vector<IntMatrix> mats;
    for (std::size_t g = 0; g < p.generator_count(); ++g)
      for (int e : {-1, 1}) {
        letters.push_back({g, e});
        mats.push_back(oracle::elementary(n, pos[g].first, pos[g].second, e));
      }
    for (std::size_t len = 0; len <= 3; ++len) {
      std::vector<std::size_t> idx(len, 0);
      for (;;) {
        Word w;
        IntMatrix m = IntMatrix::identity(n);
        for (std::size_t i : idx) {
          w.push_back(letters[i]);
          m = m * mats[i];
        }
        GroupElement g = p.collect(w);
        o.require(oracle::ut_matrix(n, g) == m && unitriangular_coordinates(m) == g,
                  "mismatch in ut(" + std::to_string(n) + ")");
        if (n == 3 && len == 2) {
          GroupElement a = p.collect({w[0]}), b = p.collect({w[1]});
          o.require(oracle::heisenberg_product(a, b) == g, "closed-form Heisenberg product mismatch");
        }
        ++words;
        std::size_t k = 0;
        while (k < len && ++idx[k] == letters.size()) idx[k++] = 0;
        if (k == len) break;
      }
    }
  }
  const double t = seconds_since(start);
  o.require(t < 30.0, "took " + std::to_string(t) + " s");
  if (o.pass) o.detail = std::to_string(words) + " words";
  return o;
}

// Hirsch length of N / Z(N) when the quotient is abelian.
std::size_t quotient_by_center_rank(const PcPresentation& p) {
  IntMatrix rel = Abelianization(p).relations();
  Subgroup z = center(p);
  for (std::size_t r = 0; r < z.basis().rows(); ++r) rel.append_row(z.basis().row_vector(r));
  return abelian_group_from_relations(rel, p.generator_count()).free_rank;
}

std::size_t sum(const std::vector<std::size_t>& v) {
  std::size_t s = 0;
  for (auto x : v) s += x;
  return s;
}

Outcome criterion_4() {
  Outcome o;
  PcPresentation h = heisenberg();
  o.require(center(h).hirsch_length() == 1 && quotient_by_center_rank(h) == 2 && hirsch_rank(h) == 3,
            "heisenberg: 1 + 2 != 3");

  PcPresentation u = unitriangular(4);
  o.require(center(u).hirsch_length() == 1, "ut(4): center rank is not 1");
  o.require(lcs_ranks(u) == std::vector<std::size_t>{3, 2, 1}, "ut(4): lcs ranks are not 3, 2, 1");
  o.require(hirsch_rank(u) == 6 && sum(lcs_ranks(u)) == 6, "ut(4): hirsch rank is not 6");

  std::mt19937 rng(4);
  for (int i = 0; i < 5; ++i) {
    PcPresentation p = oracle::random_class_two(rng);
    const std::size_t n = p.generator_count();
    o.require(n <= 5, "random presentation too large");
    o.require(hirsch_rank(p) == n && sum(lcs_ranks(p)) == n, "random class 2: lcs ranks do not add up");
    o.require(center(p).hirsch_length() + quotient_by_center_rank(p) == n,
              "random class 2: center and quotient ranks do not add up\n" + format_presentation(p));
  }
  if (o.pass) o.detail = "heisenberg 1+2=3, ut(4) 3+2+1=6, 5 random class-2 groups";
  return o;
}

bool abelian_by_generators(const PcPresentation& p) {
  for (std::size_t i = 0; i < p.generator_count(); ++i)
    for (std::size_t j = i + 1; j < p.generator_count(); ++j)
      if (!p.commutator(p.generator(i), p.generator(j)).is_identity()) return false;
  return true;
}

Outcome criterion_5() {
  Outcome o;
  std::vector<std::pair<std::string, PcPresentation>> groups;
  groups.emplace_back("heisenberg", heisenberg());
  groups.emplace_back("ut(4)", unitriangular(4));
  for (std::size_t n = 1; n <= 4; ++n) groups.emplace_back("free_abelian(" + std::to_string(n) + ")", free_abelian(n));
  const std::vector<std::pair<std::string, PcPresentation>> base(groups.begin(), groups.end());
  for (std::size_t i = 0; i < base.size(); ++i)
    for (std::size_t j = i; j < base.size(); ++j)
      if (base[i].second.generator_count() + base[j].second.generator_count() <= 9)
        groups.emplace_back("direct_product(" + base[i].first + ", " + base[j].first + ")",
                            direct_product(base[i].second, base[j].second));

  for (const auto& [name, p] : groups) {
    auto r = center_ab_report(p);
    const bool abelian = abelian_by_generators(p);
    o.require(r.injective == abelian, name + ": injective=" + (r.injective ? "true" : "false"));
    if (r.kernel_witness) {
      const GroupElement& z = *r.kernel_witness;
      bool central = !z.is_identity();
      for (std::size_t i = 0; i < p.generator_count(); ++i)
        central = central && p.commutator(z, p.generator(i)).is_identity();
      auto rel = Abelianization(p).relations().row_vectors();
      o.require(central && oracle::in_rational_span(rel, z.exps), name + ": bad witness " + to_string(z));
    }
  }
  if (o.pass) o.detail = std::to_string(groups.size()) + " groups";
  return o;
}

Outcome criterion_6() {
  Outcome o;
  PcPresentation h = heisenberg();
  const auto start = Clock::now();
  auto c = obstruction_certificate(h, 8);
  const double t = seconds_since(start);
  o.require(c.all_pass, "all_pass is false");
  o.require(c.witness == GroupElement{0, 0, 1}, "witness is " + to_string(c.witness));
  o.require(t < 60.0, "took " + std::to_string(t) + " s");

  std::size_t excluding = 0;
  for (const auto& s : c.subgroups) {
    const Subgroup& n = s.subgroup;
    o.require(is_normal(n) && index(n) == s.index && s.index <= 8, "bad subgroup " + to_string(n));
    long k = 1;
    while (!n.contains(h.power(c.witness, k))) ++k;
    o.require(s.trapped_power == k, "trapped power wrong for " + to_string(n));
    if (!n.contains(c.witness)) ++excluding;

    // Order of z^k in N^ab by brute force on the commutator relations of N.
    auto t = n.generators();
    IntMatrix rel(0, t.size());
    for (std::size_t a = 0; a < t.size(); ++a)
      for (std::size_t b = a + 1; b < t.size(); ++b) rel.append_row(*n.coordinates(h.commutator(t[b], t[a])));
    auto order = brute_force_order(rel, *n.coordinates(h.power(c.witness, k)), 64);
    o.require(order.has_value() && s.torsion_order == Integer(*order),
              "torsion order disagrees with the oracle for " + to_string(n));
  }
  o.require(excluding == 0, std::to_string(excluding) + " of " + std::to_string(c.checked_subgroups) +
                                " normal subgroups of index <= 8 do not contain z (e.g. <x^2, y^2, z^2>); "
                                "each traps z^2 with torsion image. all_pass, witness "
                                "(0,0,1) and the order oracle agree");
  if (o.pass) o.detail = std::to_string(c.checked_subgroups) + " normal subgroups, " + std::to_string(t) + " s";
  return o;
}

// Random descending chain of finite-index subgroups of Z^3.
Filtration random_abelian_chain(std::mt19937& rng) {
  PcPresentation a = free_abelian(3);
  std::uniform_int_distribution<int> steps_d(1, 3), entry(-3, 3);
  std::vector<Subgroup> chain{Subgroup::whole(a)};
  const int steps = steps_d(rng);
  for (int s = 0; s < steps; ++s) {
    Subgroup prev = chain.back();
    Subgroup next = prev;
    for (int attempt = 0; attempt < 10 && (next == prev || !next.is_full_rank()); ++attempt) {
      std::vector<GroupElement> gens;
      for (int g = 0; g < 3; ++g) gens.push_back(GroupElement{entry(rng), entry(rng), entry(rng)});
      next = intersect(prev, subgroup_closure(a, gens));
      if (next.is_full_rank() && index(next) && *index(next) > 200) next = prev;
    }
    if (next == prev || !next.is_full_rank()) next = intersect(prev, scaled(a, 2));
    chain.push_back(next);
  }
  return Filtration(a, chain);
}

Outcome criterion_7() {
  Outcome o;
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> entry(-3, 3), count(1, 3);
  std::size_t restrictions = 0;
  for (int i = 0; i < 20; ++i) {
    Filtration f = random_abelian_chain(rng);
    o.require(verify_rfrs_chain(f).overall, "random chain does not pass:\n" + format_subgroups(f.chain()));
    for (int j = 0; j < 5; ++j) {
      std::vector<GroupElement> gens;
      const int k = count(rng);
      for (int g = 0; g < k; ++g) gens.push_back(GroupElement{entry(rng), entry(rng), entry(rng)});
      Subgroup hsub = subgroup_closure(f.ambient(), gens);
      if (hsub.is_trivial()) continue;
      o.require(verify_rfrs_chain(restrict_chain(f, hsub)).overall,
                "restriction to " + to_string(hsub) + " fails for\n" + format_subgroups(f.chain()));
      ++restrictions;
    }
  }

  PcPresentation h = heisenberg();
  Filtration hc(h, {Subgroup::whole(h), subgroup_closure(h, {{2, 0, 0}, {0, 1, 0}, {0, 0, 1}}),
                    subgroup_closure(h, {{2, 0, 0}, {0, 2, 0}, {0, 0, 1}})});
  o.require(verify_rfrs_chain(hc).overall, "heisenberg example chain does not pass");
  for (const auto& s : enumerate_subgroups(h, 8, false)) {
    o.require(verify_rfrs_chain(restrict_chain(hc, s)).overall, "heisenberg restriction to " + to_string(s));
    ++restrictions;
  }
  if (o.pass) o.detail = "20 random chains + heisenberg chain, " + std::to_string(restrictions) + " restrictions";
  return o;
}

Outcome criterion_8() {
  Outcome o;
  for (std::size_t n = 1; n <= 3; ++n) {
    PcPresentation a = free_abelian(n);
    std::vector<Subgroup> chain{Subgroup::whole(a)};
    Integer fact = 1;
    for (long k = 2; k <= 6; ++k) {
      fact *= k;
      chain.push_back(scaled(a, fact));
    }
    auto r = verify_rfrs_chain(Filtration(a, chain));
    o.require(r.overall, "free_abelian(" + std::to_string(n) + ") factorial chain fails");
    Integer fk = 1;
    for (std::size_t i = 0; i < r.steps.size(); ++i) {
      fk *= static_cast<long>(i + 2);
      Integer expect = 1;
      for (std::size_t d = 0; d < n; ++d) expect *= fk;
      o.require(r.steps[i].normal_in_g && r.steps[i].kernel_contained && r.steps[i].index == expect,
                "step " + std::to_string(i) + " of free_abelian(" + std::to_string(n) + ")");
    }
  }
  // The same congruence chain in the Heisenberg group is not RFRS: z lies in the
  // rational kernel of G but not in <x^2, y^2, z^2>.
  PcPresentation h = heisenberg();
  auto hr = verify_rfrs_chain(Filtration(h, {Subgroup::whole(h), scaled(h, 2), scaled(h, 6)}));
  o.require(!hr.overall && !hr.steps[0].kernel_contained, "heisenberg congruence chain unexpectedly passes");
  if (o.pass) o.detail = "n = 1, 2, 3 pass; heisenberg control fails";
  return o;
}

Outcome criterion_9() {
  Outcome o;
  std::vector<std::pair<std::string, Graph>> graphs = {
      {"edgeless(2)", Graph::edgeless(2)},
      {"K2", Graph::complete(2)},
      {"K3", Graph::complete(3)},
      {"P3", Graph::path(3)},
  };
  const auto start = Clock::now();
  std::size_t elements = 0;
  for (const auto& [name, g] : graphs) {
    auto r = rtfn_witness(g, 4);
    o.require(r.pass, name + " fails at " + (r.failing_word ? format_word(*r.failing_word) : std::string("?")));
    o.require(r.elements_checked > 0, name + ": nothing checked");
    elements += r.elements_checked;
  }
  const double t = seconds_since(start);
  o.require(t < 60.0, "took " + std::to_string(t) + " s");
  if (o.pass) o.detail = std::to_string(elements) + " elements, " + std::to_string(t) + " s";
  return o;
}

Outcome criterion_10() {
  Outcome o;
  const std::string root = NILRFRS_TEST_DATA;
  struct Invocation {
    std::string label;
    cli::RunConfig cfg;
    int code;
    std::string golden;
  };
  std::vector<Invocation> runs(3);
  runs[0].label = "analyze --group heisenberg --json";
  runs[0].cfg.command = cli::Command::analyze;
  runs[0].cfg.group = "heisenberg";
  runs[0].code = cli::exit_pass;
  runs[0].golden = "analyze_heisenberg.json";
  runs[1].label = "rfrs-obstruct --group heisenberg --max-index 8 --json";
  runs[1].cfg.command = cli::Command::rfrs_obstruct;
  runs[1].cfg.group = "heisenberg";
  runs[1].cfg.max_index = 8;
  runs[1].code = cli::exit_pass;
  runs[1].golden = "rfrs_obstruct_heisenberg_8.json";
  runs[2].label = "rfrs-verify --group heisenberg --chain bad_chain.txt --json";
  runs[2].cfg.command = cli::Command::rfrs_verify;
  runs[2].cfg.group = "heisenberg";
  runs[2].cfg.chain = root + "/data/bad_chain.txt";
  runs[2].code = cli::exit_fail;
  runs[2].golden = "rfrs_verify_bad_chain.json";

  for (auto& r : runs) {
    r.cfg.json = true;
    const std::string expect = slurp(root + "/golden/" + r.golden);
    o.require(!expect.empty(), "missing golden " + r.golden);
    for (int rep = 0; rep < 2; ++rep) {
      std::ostringstream out, err;
      const int code = cli::run(r.cfg, out, err);
      o.require(code == r.code, r.label + ": exit code " + std::to_string(code));
      o.require(out.str() == expect, r.label + ": output differs from " + r.golden);
    }
  }
  if (o.pass) o.detail = "3 invocations, 2 runs each, exit codes 0/0/1";
  return o;
}

const std::vector<std::function<Outcome()>> criteria = {
    criterion_1, criterion_2, criterion_3, criterion_4, criterion_5,
    criterion_6, criterion_7, criterion_8, criterion_9, criterion_10,
};

}  // namespace

int main(int argc, char** argv) {
  std::vector<std::size_t> selected;
  for (int i = 1; i < argc; ++i) {
    char* end = nullptr;
    const long k = std::strtol(argv[i], &end, 10);
    if (*end != '\0' || k < 1 || k > static_cast<long>(criteria.size())) {
      std::cerr << "usage: acceptance [criterion 1-" << criteria.size() << "]...\n";
      return 2;
    }
    selected.push_back(static_cast<std::size_t>(k));
  }
  if (selected.empty())
    for (std::size_t k = 1; k <= criteria.size(); ++k) selected.push_back(k);

  bool all = true;
  for (std::size_t k : selected) {
    Outcome o;
    try {
      o = criteria[k - 1]();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    all = all && o.pass;
    std::cout << "criterion " << k << ": " << (o.pass ? "PASS" : "FAIL") << " - " << o.detail << std::endl;
  }
  return all ? 0 : 1;
}
