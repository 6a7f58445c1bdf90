#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>
#include <random>
#include <set>

#include "nilrfrs/errors.hpp"
#include "nilrfrs/raag.hpp"

using namespace nilrfrs;

namespace {

// Words as signed letters: +(v+1) for v, -(v+1) for v^-1.
using Signed = std::vector<int>;

Signed expand(const RaagWord& w) {
  Signed s;
  for (const auto& l : w)
    for (long k = 0; k < std::labs(l.exponent); ++k)
      s.push_back(l.exponent > 0 ? static_cast<int>(l.vertex) + 1 : -static_cast<int>(l.vertex) - 1);
  return s;
}

RaagWord from_signed(const Signed& s) {
  RaagWord w;
  for (int x : s) w.push_back({static_cast<std::size_t>(std::abs(x) - 1), x > 0 ? 1L : -1L});
  return w;
}

// Lexicographically least among the shortest words reachable by swapping
// adjacent commuting letters and deleting adjacent inverse pairs.
Signed rewriting_oracle(const Graph& g, const Signed& w) {
  std::set<Signed> seen{w};
  std::vector<Signed> stack{w};
  while (!stack.empty()) {
    Signed cur = stack.back();
    stack.pop_back();
    for (std::size_t i = 0; i + 1 < cur.size(); ++i) {
      const std::size_t u = std::abs(cur[i]) - 1, v = std::abs(cur[i + 1]) - 1;
      Signed next;
      if (cur[i] == -cur[i + 1]) {
        next = cur;
        next.erase(next.begin() + static_cast<long>(i), next.begin() + static_cast<long>(i) + 2);
      } else if (u != v && g.adjacent(u, v)) {
        next = cur;
        std::swap(next[i], next[i + 1]);
      } else {
        continue;
      }
      if (seen.insert(next).second) stack.push_back(next);
    }
  }
  Signed best = w;
  for (const auto& s : seen)
    if (s.size() < best.size() || (s.size() == best.size() && s < best)) best = s;
  return best;
}

std::vector<Signed> all_words(std::size_t vertices, std::size_t max_len) {
  std::vector<Signed> out{{}};
  std::vector<Signed> frontier{{}};
  for (std::size_t l = 0; l < max_len; ++l) {
    std::vector<Signed> next;
    for (const auto& w : frontier)
      for (int v = 1; v <= static_cast<int>(vertices); ++v)
        for (int s : {v, -v}) {
          Signed x = w;
          x.push_back(s);
          next.push_back(x);
        }
    for (const auto& w : next) out.push_back(w);
    frontier = std::move(next);
  }
  return out;
}

std::vector<Graph> small_graphs() {
  return {Graph::edgeless(2), Graph::complete(2), Graph::edgeless(3), Graph::complete(3),
          Graph::path(3), Graph(3, {{0, 2}})};
}

}  // namespace

TEST_CASE("graphs and presentations") {
  auto k3 = raag_from_graph(Graph::complete(3));
  for (std::size_t u = 0; u < 3; ++u)
    for (std::size_t v = 0; v < 3; ++v) CHECK(k3.commute(u, v));
  auto f2 = raag_from_graph(Graph::edgeless(2));
  CHECK_FALSE(f2.commute(0, 1));
  CHECK(f2.relations().empty());
  auto p3 = raag_from_graph(Graph::path(3));
  CHECK(p3.relations() == std::vector<std::pair<std::size_t, std::size_t>>{{0, 1}, {1, 2}});
  CHECK_FALSE(p3.commute(0, 2));
  CHECK(p3.generator_count() == 3);
}

TEST_CASE("graph file format") {
  Graph g = parse_graph("# path\n3\n0 1\n1 2\n");
  CHECK(g.edges() == Graph::path(3).edges());
  CHECK(parse_graph("2\n").edges().empty());
  CHECK_THROWS_AS(parse_graph("2\n0 0\n"), ParseError);
  CHECK_THROWS_AS(parse_graph("2\n0 1\n1 0\n"), ParseError);
  CHECK_THROWS_AS(parse_graph("2\n0 2\n"), ParseError);
  CHECK_THROWS_AS(parse_graph("2\n0 1 1\n"), ParseError);
  CHECK_THROWS_AS(parse_graph(""), ParseError);
}

TEST_CASE("word syntax") {
  RaagWord w = parse_word("a, b^-1,c^2");
  CHECK(w == RaagWord{{0, 1}, {1, -1}, {2, 2}});
  CHECK(format_word(w) == "a,b^-1,c^2");
  CHECK(parse_word("").empty());
  CHECK(parse_word("1").empty());
  CHECK(format_word({}) == "1");
  CHECK_THROWS_AS(parse_word("a^0"), ParseError);
  CHECK_THROWS_AS(parse_word("A"), ParseError);
  CHECK_THROWS_AS(parse_word("a^x"), ParseError);
  CHECK_THROWS_AS(parse_word("a,,b"), ParseError);
}

TEST_CASE("normal forms") {
  CHECK(format_word(normal_form(Graph::complete(2), parse_word("b,a"))) == "a,b");
  CHECK(normal_form(Graph::edgeless(2), parse_word("a,b,b^-1,a^-1")).empty());
  CHECK(format_word(normal_form(Graph::path(3), parse_word("c,a"))) == "c,a");
  CHECK(format_word(normal_form(Graph::path(3), parse_word("a,b,a^-1"))) == "b");
  CHECK(format_word(normal_form(Graph::path(3), parse_word("a,c,a"))) == "a,c,a");
  CHECK(format_word(normal_form(Graph::complete(3), parse_word("c,b,a,c^-2"))) == "a,b,c^-1");
  // Greedy extraction, not adjacent bubble sorting: b and c do not commute,
  // a commutes with both, so the least representative starts with a.
  Graph g(3, {{0, 1}, {0, 2}});
  CHECK(format_word(normal_form(g, parse_word("b,c,a"))) == "a,b,c");
  CHECK(format_word(normal_form(g, parse_word("c,b,a"))) == "a,c,b");
  CHECK_THROWS_AS(normal_form(Graph::edgeless(2), parse_word("c")), ParseError);
}

TEST_CASE("property: normal forms agree with exhaustive rewriting") {
  for (const auto& g : small_graphs()) {
    std::map<Signed, RaagWord> by_oracle;
    std::map<std::vector<std::pair<std::size_t, long>>, Signed> by_nf;
    for (const auto& s : all_words(g.vertex_count(), 4)) {
      RaagWord nf = normal_form(g, from_signed(s));
      REQUIRE(normal_form(g, nf) == nf);
      Signed canon = rewriting_oracle(g, s);
      CHECK(expand(nf).size() == canon.size());
      auto [it, fresh] = by_oracle.emplace(canon, nf);
      if (!fresh) REQUIRE(it->second == nf);
      std::vector<std::pair<std::size_t, long>> key;
      for (const auto& l : nf) key.emplace_back(l.vertex, l.exponent);
      auto [jt, fresh2] = by_nf.emplace(key, canon);
      if (!fresh2) REQUIRE(jt->second == canon);
    }
  }
}

TEST_CASE("canonical monomials") {
  Graph g = Graph::complete(2);
  CHECK(canonical_monomial(g, {1, 0, 1}) == Monomial{0, 1, 1});
  CHECK(canonical_monomial(Graph::edgeless(2), {1, 0}) == Monomial{1, 0});
  CHECK(canonical_monomial(Graph::path(3), {2, 1, 0}) == Monomial{1, 2, 0});
}

TEST_CASE("magnus images") {
  Graph f2 = Graph::edgeless(2), k2 = Graph::complete(2);
  CHECK(magnus_image(f2, {}, 3).is_one());
  auto s = magnus_image(f2, parse_word("a,b,a^-1,b^-1"), 2);
  CHECK(s.terms().size() == 3);
  CHECK(s.coefficient({}) == 1);
  CHECK(s.coefficient({0, 1}) == 1);
  CHECK(s.coefficient({1, 0}) == -1);
  CHECK(to_string(s) == "1 + ab - ba");
  CHECK(magnus_image(k2, parse_word("a,b,a^-1,b^-1"), 4).is_one());
  CHECK(to_string(magnus_image(f2, parse_word("a^-2"), 3)) == "1 - 2*a + 3*aa - 4*aaa");
  CHECK(to_string(magnus_image(f2, parse_word("a^3"), 4)) == "1 + 3*a + 3*aa + aaa");
  CHECK_THROWS_AS(magnus_image(f2, {}, 0), PreconditionFailed);
}

TEST_CASE("property: magnus image is multiplicative") {
  std::mt19937 rng(53);
  for (const auto& g : small_graphs()) {
    std::uniform_int_distribution<std::size_t> vert(0, g.vertex_count() - 1), len(0, 4);
    std::uniform_int_distribution<long> ex(-2, 2);
    for (int t = 0; t < 30; ++t) {
      RaagWord a, b;
      for (auto* w : {&a, &b}) {
        std::size_t l = len(rng);
        for (std::size_t i = 0; i < l; ++i) {
          long e = ex(rng);
          if (e != 0) w->push_back({vert(rng), e});
        }
      }
      RaagWord ab = a;
      ab.insert(ab.end(), b.begin(), b.end());
      REQUIRE(magnus_image(g, ab, 4) == magnus_image(g, a, 4) * magnus_image(g, b, 4));
    }
  }
}

TEST_CASE("property: trivial elements map to one and degree one sees exponent sums") {
  for (const auto& g : small_graphs())
    for (const auto& s : all_words(g.vertex_count(), 4)) {
      RaagWord w = from_signed(s);
      auto image = magnus_image(g, w, 4);
      if (normal_form(g, w).empty()) REQUIRE(image.is_one());
      std::vector<long> sums(g.vertex_count(), 0);
      for (const auto& l : w) sums[l.vertex] += l.exponent;
      for (std::size_t v = 0; v < g.vertex_count(); ++v) REQUIRE(image.coefficient({v}) == sums[v]);
    }
}

TEST_CASE("residual torsion-free nilpotence witnesses") {
  auto r = rtfn_witness(Graph::complete(2), 3);
  CHECK(r.pass);
  CHECK(r.words_checked == 4 + 16 + 64);
  CHECK(rtfn_witness(Graph::edgeless(2), 4).pass);
  CHECK(rtfn_witness(Graph::path(3), 3).pass);
  CHECK(rtfn_witness(Graph::complete(3), 4, 1).elements_checked ==
        rtfn_witness(Graph::complete(3), 4, 3).elements_checked);
  CHECK_THROWS_AS(rtfn_witness(Graph::edgeless(5), 2), ResourceLimit);
  CHECK_THROWS_AS(rtfn_witness(Graph::edgeless(2), 7), ResourceLimit);
  CHECK_THROWS_AS(rtfn_witness(Graph::edgeless(2), 0), PreconditionFailed);
}
