#pragma once

#include <cstddef>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "nilrfrs/integer.hpp"

namespace nilrfrs {

/// Finite simple graph on vertices 0, ..., vertex_count - 1.
class Graph {
 public:
  /// Throws ParseError on loops, repeated edges or out-of-range vertices.
  Graph(std::size_t vertex_count, const std::vector<std::pair<std::size_t, std::size_t>>& edges);

  static Graph complete(std::size_t n);
  static Graph edgeless(std::size_t n);
  static Graph path(std::size_t n);

  std::size_t vertex_count() const { return n_; }
  bool adjacent(std::size_t u, std::size_t v) const { return adj_[u * n_ + v]; }
  /// Sorted pairs (u, v) with u < v.
  std::vector<std::pair<std::size_t, std::size_t>> edges() const;

 private:
  std::size_t n_;
  std::vector<bool> adj_;
};

/// First line: vertex count; then one "u v" edge per line, 0-indexed.
Graph parse_graph(std::istream& in);
Graph parse_graph(const std::string& text);

struct Letter {
  std::size_t vertex;
  long exponent;
  friend bool operator==(const Letter&, const Letter&) = default;
};

using RaagWord = std::vector<Letter>;

/// Comma-separated tokens "a", "a^-1", "b^2"; letter a is vertex 0.
RaagWord parse_word(const std::string& text);
std::string format_word(const RaagWord& w);

/// <V | [u, v] = 1 for every edge {u, v}>
class RaagPresentation {
 public:
  explicit RaagPresentation(Graph g) : graph_(std::move(g)) {}

  const Graph& graph() const { return graph_; }
  std::size_t generator_count() const { return graph_.vertex_count(); }
  /// True iff u and v are equal or adjacent.
  bool commute(std::size_t u, std::size_t v) const { return u == v || graph_.adjacent(u, v); }
  /// Commutation relations, one per edge.
  std::vector<std::pair<std::size_t, std::size_t>> relations() const { return graph_.edges(); }

 private:
  Graph graph_;
};

RaagPresentation raag_from_graph(const Graph& g);

/// Canonical representative: syllables on the same vertex separated only by
/// commuting letters are merged (and cancelled when the exponents sum to 0),
/// then the syllables are put in the lexicographically least order reachable
/// by swapping adjacent commuting syllables. Empty iff w is the identity.
RaagWord normal_form(const Graph& g, const RaagWord& w);

/// Word in the vertex symbols X_v.
using Monomial = std::vector<std::size_t>;

/// Lexicographically least word equivalent to m under swaps of adjacent
/// commuting symbols.
Monomial canonical_monomial(const Graph& g, const Monomial& m);

struct MonomialLess {
  bool operator()(const Monomial& a, const Monomial& b) const {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  }
};

/// Element of the free partially commutative algebra Q<X_v> truncated above
/// a fixed degree.
class TruncatedSeries {
 public:
  using Terms = std::map<Monomial, Rational, MonomialLess>;

  TruncatedSeries(const Graph& g, std::size_t degree);
  static TruncatedSeries one(const Graph& g, std::size_t degree);
  /// (1 + X_v)^e expanded by the binomial series.
  static TruncatedSeries generator_power(const Graph& g, std::size_t degree, std::size_t v, long e);

  std::size_t degree() const { return degree_; }
  const Terms& terms() const { return terms_; }
  Rational coefficient(const Monomial& m) const;
  bool is_one() const;

  friend TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b);
  friend bool operator==(const TruncatedSeries& a, const TruncatedSeries& b) {
    return a.degree_ == b.degree_ && a.terms_ == b.terms_;
  }

 private:
  void add(const Monomial& m, const Rational& c);

  Graph graph_;
  std::size_t degree_;
  Terms terms_;
};

/// E.g. "1 + ab - ba"; monomials are written as vertex letters.
std::string to_string(const TruncatedSeries& s);

/// Image of w under v -> 1 + X_v, truncated above `degree`.
TruncatedSeries magnus_image(const Graph& g, const RaagWord& w, std::size_t degree);

struct RtfnReport {
  bool pass = true;
  std::size_t words_checked = 0;
  /// Distinct nontrivial elements among the enumerated words.
  std::size_t elements_checked = 0;
  std::optional<RaagWord> failing_word;
};

/// Every word of length <= max_len with nonempty normal form has Magnus image
/// != 1 at degree max_len. Limited to 4 vertices and max_len <= 6.
RtfnReport rtfn_witness(const Graph& g, std::size_t max_len, unsigned threads = 0);

}  // namespace nilrfrs
