#include "nilrfrs/raag.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <istream>
#include <set>
#include <sstream>
#include <thread>

#include "nilrfrs/errors.hpp"

namespace nilrfrs {

Graph::Graph(std::size_t vertex_count,
             const std::vector<std::pair<std::size_t, std::size_t>>& edges)
    : n_(vertex_count), adj_(vertex_count * vertex_count, false) {
  for (auto [u, v] : edges) {
    if (u >= n_ || v >= n_)
      throw ParseError("edge " + std::to_string(u) + " " + std::to_string(v) +
                       " uses a vertex outside 0.." + std::to_string(n_ == 0 ? 0 : n_ - 1));
    if (u == v) throw ParseError("loop at vertex " + std::to_string(u));
    if (adj_[u * n_ + v])
      throw ParseError("repeated edge " + std::to_string(u) + " " + std::to_string(v));
    adj_[u * n_ + v] = adj_[v * n_ + u] = true;
  }
}

Graph Graph::complete(std::size_t n) {
  std::vector<std::pair<std::size_t, std::size_t>> e;
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = u + 1; v < n; ++v) e.emplace_back(u, v);
  return Graph(n, e);
}

Graph Graph::edgeless(std::size_t n) { return Graph(n, {}); }

Graph Graph::path(std::size_t n) {
  std::vector<std::pair<std::size_t, std::size_t>> e;
  for (std::size_t v = 0; v + 1 < n; ++v) e.emplace_back(v, v + 1);
  return Graph(n, e);
}

std::vector<std::pair<std::size_t, std::size_t>> Graph::edges() const {
  std::vector<std::pair<std::size_t, std::size_t>> e;
  for (std::size_t u = 0; u < n_; ++u)
    for (std::size_t v = u + 1; v < n_; ++v)
      if (adjacent(u, v)) e.emplace_back(u, v);
  return e;
}

Graph parse_graph(std::istream& in) {
  std::string line;
  std::optional<std::size_t> n;
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto pos = line.find('#'); pos != std::string::npos) line.erase(pos);
    std::istringstream ls(line);
    std::vector<long long> nums;
    long long x;
    while (ls >> x) nums.push_back(x);
    if (!ls.eof()) throw ParseError("graph line " + std::to_string(line_no) + ": expected integers");
    if (nums.empty()) continue;
    const bool ok = n ? nums.size() == 2 : nums.size() == 1;
    if (!ok || std::any_of(nums.begin(), nums.end(), [](long long v) { return v < 0; }))
      throw ParseError("graph line " + std::to_string(line_no) + ": malformed");
    if (!n)
      n = static_cast<std::size_t>(nums[0]);
    else
      edges.emplace_back(static_cast<std::size_t>(nums[0]), static_cast<std::size_t>(nums[1]));
  }
  if (!n) throw ParseError("graph: missing vertex count");
  return Graph(*n, edges);
}

Graph parse_graph(const std::string& text) {
  std::istringstream in(text);
  return parse_graph(in);
}

RaagWord parse_word(const std::string& text) {
  RaagWord w;
  std::string trimmed;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) trimmed += c;
  if (trimmed.empty() || trimmed == "1") return w;
  std::istringstream in(trimmed);
  std::string tok;
  while (std::getline(in, tok, ',')) {
    if (tok.empty() || tok[0] < 'a' || tok[0] > 'z') throw ParseError("bad word token '" + tok + "'");
    long e = 1;
    if (tok.size() > 1) {
      if (tok[1] != '^') throw ParseError("bad word token '" + tok + "'");
      std::size_t used = 0;
      try {
        e = std::stol(tok.substr(2), &used);
      } catch (const std::exception&) {
        throw ParseError("bad exponent in '" + tok + "'");
      }
      if (used != tok.size() - 2) throw ParseError("bad exponent in '" + tok + "'");
      if (e == 0) throw ParseError("zero exponent in '" + tok + "'");
    }
    w.push_back({static_cast<std::size_t>(tok[0] - 'a'), e});
  }
  return w;
}

std::string format_word(const RaagWord& w) {
  if (w.empty()) return "1";
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) out += ',';
    out += static_cast<char>('a' + w[i].vertex);
    if (w[i].exponent != 1) out += "^" + std::to_string(w[i].exponent);
  }
  return out;
}

RaagPresentation raag_from_graph(const Graph& g) { return RaagPresentation(g); }

namespace {

bool commute(const Graph& g, std::size_t u, std::size_t v) { return u != v && g.adjacent(u, v); }

// Greedy extraction of the least letter that can move to the front yields the
// lexicographically least trace representative.
template <class T, class Vertex, class Less>
std::vector<T> lex_least(const Graph& g, std::vector<T> rest, Vertex vertex, Less less) {
  std::vector<T> out;
  out.reserve(rest.size());
  while (!rest.empty()) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < rest.size(); ++i) {
      bool free = true;
      for (std::size_t j = 0; j < i && free; ++j)
        free = commute(g, vertex(rest[j]), vertex(rest[i]));
      if (free && less(rest[i], rest[best])) best = i;
    }
    out.push_back(rest[best]);
    rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(best));
  }
  return out;
}

}  // namespace

RaagWord normal_form(const Graph& g, const RaagWord& w) {
  RaagWord r;
  for (const auto& l : w) {
    if (l.vertex >= g.vertex_count())
      throw ParseError("letter outside the graph's " + std::to_string(g.vertex_count()) +
                       " vertices");
    if (l.exponent != 0) r.push_back(l);
  }
  for (bool merged = true; merged;) {
    merged = false;
    for (std::size_t i = 0; i < r.size() && !merged; ++i)
      for (std::size_t j = i + 1; j < r.size(); ++j) {
        if (r[j].vertex == r[i].vertex) {
          r[i].exponent += r[j].exponent;
          r.erase(r.begin() + static_cast<std::ptrdiff_t>(j));
          if (r[i].exponent == 0) r.erase(r.begin() + static_cast<std::ptrdiff_t>(i));
          merged = true;
          break;
        }
        if (!commute(g, r[i].vertex, r[j].vertex)) break;
      }
  }
  return lex_least(
      g, std::move(r), [](const Letter& l) { return l.vertex; },
      [](const Letter& a, const Letter& b) {
        return a.vertex != b.vertex ? a.vertex < b.vertex : a.exponent < b.exponent;
      });
}

Monomial canonical_monomial(const Graph& g, const Monomial& m) {
  return lex_least(
      g, m, [](std::size_t v) { return v; }, [](std::size_t a, std::size_t b) { return a < b; });
}

TruncatedSeries::TruncatedSeries(const Graph& g, std::size_t degree) : graph_(g), degree_(degree) {}

TruncatedSeries TruncatedSeries::one(const Graph& g, std::size_t degree) {
  TruncatedSeries s(g, degree);
  s.terms_[{}] = 1;
  return s;
}

TruncatedSeries TruncatedSeries::generator_power(const Graph& g, std::size_t degree, std::size_t v,
                                                 long e) {
  TruncatedSeries s(g, degree);
  Rational binom = 1;
  Monomial m;
  for (std::size_t k = 0; k <= degree; ++k) {
    if (k > 0) {
      binom *= Rational(e - static_cast<long>(k) + 1, static_cast<long>(k));
      binom.canonicalize();
      m.push_back(v);
    }
    if (binom == 0) break;
    s.terms_[m] = binom;
  }
  return s;
}

Rational TruncatedSeries::coefficient(const Monomial& m) const {
  auto it = terms_.find(canonical_monomial(graph_, m));
  return it == terms_.end() ? Rational(0) : it->second;
}

bool TruncatedSeries::is_one() const {
  return terms_.size() == 1 && terms_.begin()->first.empty() && terms_.begin()->second == 1;
}

void TruncatedSeries::add(const Monomial& m, const Rational& c) {
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b) {
  if (a.degree_ != b.degree_) throw DimensionMismatch("series truncated at different degrees");
  TruncatedSeries out(a.graph_, a.degree_);
  for (const auto& [ma, ca] : a.terms_)
    for (const auto& [mb, cb] : b.terms_) {
      if (ma.size() + mb.size() > a.degree_) break;  // terms are sorted by degree
      Monomial m = ma;
      m.insert(m.end(), mb.begin(), mb.end());
      out.add(canonical_monomial(a.graph_, m), ca * cb);
    }
  return out;
}

std::string to_string(const TruncatedSeries& s) {
  if (s.terms().empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [m, c] : s.terms()) {
    Rational mag = abs(c);
    if (first)
      out += c < 0 ? "-" : "";
    else
      out += c < 0 ? " - " : " + ";
    first = false;
    std::string word;
    for (std::size_t v : m) word += static_cast<char>('a' + v);
    if (word.empty())
      out += mag.get_str();
    else if (mag == 1)
      out += word;
    else
      out += mag.get_str() + "*" + word;
  }
  return out;
}

TruncatedSeries magnus_image(const Graph& g, const RaagWord& w, std::size_t degree) {
  if (degree < 1) throw PreconditionFailed("magnus_image: degree must be at least 1");
  TruncatedSeries s = TruncatedSeries::one(g, degree);
  for (const auto& l : w) {
    if (l.vertex >= g.vertex_count()) throw ParseError("letter outside the graph");
    s = s * TruncatedSeries::generator_power(g, degree, l.vertex, l.exponent);
  }
  return s;
}

RtfnReport rtfn_witness(const Graph& g, std::size_t max_len, unsigned threads) {
  if (max_len < 1) throw PreconditionFailed("rtfn_witness: max_len must be at least 1");
  if (g.vertex_count() > 4 || max_len > 6)
    throw ResourceLimit("rtfn_witness is limited to 4 vertices and words of length 6");
  RtfnReport report;
  using Key = std::vector<std::pair<std::size_t, long>>;
  std::set<Key> seen;
  std::vector<RaagWord> elements;
  RaagWord word;
  auto visit = [&](auto&& self) -> void {
    if (!word.empty()) {
      ++report.words_checked;
      RaagWord nf = normal_form(g, word);
      if (!nf.empty()) {
        Key key;
        for (const auto& l : nf) key.emplace_back(l.vertex, l.exponent);
        if (seen.insert(std::move(key)).second) elements.push_back(std::move(nf));
      }
    }
    if (word.size() == max_len) return;
    for (std::size_t v = 0; v < g.vertex_count(); ++v)
      for (long e : {1L, -1L}) {
        word.push_back({v, e});
        self(self);
        word.pop_back();
      }
  };
  visit(visit);
  report.elements_checked = elements.size();

  std::vector<char> separated(elements.size(), 0);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k; (k = next.fetch_add(1)) < elements.size();)
      separated[k] = !magnus_image(g, elements[k], max_len).is_one();
  };
  if (threads == 0) threads = std::thread::hardware_concurrency();
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(elements.size())));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  for (std::size_t k = 0; k < elements.size(); ++k)
    if (!separated[k]) {
      report.pass = false;
      report.failing_word = elements[k];
      break;
    }
  return report;
}

}  // namespace nilrfrs
