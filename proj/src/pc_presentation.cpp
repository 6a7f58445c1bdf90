#include "nilrfrs/pc_presentation.hpp"

#include <algorithm>
#include <cctype>
#include <istream>
#include <sstream>

#include "nilrfrs/errors.hpp"
#include "nilrfrs/nilpotent.hpp"

namespace nilrfrs {

std::size_t GroupElement::depth() const {
  for (std::size_t i = 0; i < exps.size(); ++i)
    if (exps[i] != 0) return i;
  return exps.size();
}

std::string to_string(const GroupElement& g) { return to_string(g.exps); }

struct PcPresentation::Data {
  std::size_t n = 0;
  // comm[i][j - i - 1] = [g_j, g_i]
  std::vector<std::vector<GroupElement>> comm;
  // forward[i][j - i - 1] = g_i^-1 g_j g_i, backward[i][j - i - 1] = g_i g_j g_i^-1
  std::vector<std::vector<GroupElement>> forward;
  std::vector<std::vector<GroupElement>> backward;
  // g_i commutes with every later generator
  std::vector<bool> trivial_action;
  std::vector<bool> central;
  int nilpotency_class = 0;
};

PcPresentation::PcPresentation(std::size_t n) {
  std::vector<std::vector<IntVector>> none(n);
  for (std::size_t i = 0; i < n; ++i) none[i].assign(n - i - 1, IntVector(n));
  build(n, none);
}

PcPresentation::PcPresentation(std::size_t n,
                               const std::vector<std::vector<IntVector>>& commutators) {
  build(n, commutators);
}

void PcPresentation::build(std::size_t n,
                           const std::vector<std::vector<IntVector>>& commutators) {
  if (commutators.size() != n)
    throw InvalidPresentation("commutator table must have one row per generator");
  auto d = std::make_shared<Data>();
  d->n = n;
  d->comm.resize(n);
  d->forward.resize(n);
  d->backward.resize(n);
  d->trivial_action.assign(n, true);
  for (std::size_t i = 0; i < n; ++i) {
    if (commutators[i].size() != n - i - 1)
      throw InvalidPresentation("commutator table row " + std::to_string(i + 1) +
                                " has the wrong length");
    for (std::size_t j = i + 1; j < n; ++j) {
      const IntVector& c = commutators[i][j - i - 1];
      if (c.size() != n) throw InvalidPresentation("commutator vector has the wrong length");
      for (std::size_t k = 0; k <= j; ++k)
        if (c[k] != 0)
          throw InvalidPresentation("[g" + std::to_string(j + 1) + ", g" +
                                    std::to_string(i + 1) +
                                    "] must involve only later generators");
      d->comm[i].emplace_back(c);
      if (!is_zero(c)) d->trivial_action[i] = false;
      GroupElement img(c);
      img[j] = 1;
      d->forward[i].push_back(img);
    }
    d->backward[i].assign(n - i - 1, GroupElement(n));
  }
  data_ = d;

  // g_i g_j g_i^-1 = g_j * (g_i c_ij g_i^-1)^-1, filled from the top so every
  // multiplication only touches generators that are already complete.
  for (std::size_t i = n; i-- > 0;) {
    for (std::size_t j = n; j-- > i + 1;) {
      const IntVector& c = d->comm[i][j - i - 1].exps;
      IntVector tail = d->trivial_action[i] ? c : apply_images(d->backward[i], i, c);
      GroupElement correction = inverse(GroupElement(tail));
      correction[j] = 1;
      d->backward[i][j - i - 1] = correction;
    }
  }

  if (!is_consistent()) throw InvalidPresentation("commutator data is not consistent");

  d->central.assign(n, true);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      const auto [lo, hi] = std::minmax(i, j);
      if (!d->comm[lo][hi - lo - 1].is_identity()) d->central[i] = false;
    }

  d->nilpotency_class = n == 0 ? 0 : static_cast<int>(lower_central_series(*this).size()) - 1;
}

std::size_t PcPresentation::generator_count() const { return data_->n; }

int PcPresentation::nilpotency_class() const { return data_->nilpotency_class; }

const GroupElement& PcPresentation::commutator_relation(std::size_t i, std::size_t j) const {
  if (!(i < j && j < data_->n)) throw std::out_of_range("commutator_relation: need i < j < n");
  return data_->comm[i][j - i - 1];
}

bool PcPresentation::is_central_generator(std::size_t i) const { return data_->central.at(i); }

GroupElement PcPresentation::generator(std::size_t i) const {
  GroupElement g(data_->n);
  g.exps.at(i) = 1;
  return g;
}

IntVector PcPresentation::apply_images(const std::vector<GroupElement>& images, std::size_t i,
                                       const IntVector& tail) const {
  GroupElement result(data_->n);
  for (std::size_t j = i + 1; j < data_->n; ++j) {
    if (tail[j] == 0) continue;
    const GroupElement& img = images[j - i - 1];
    result = multiply(result, power(img, tail[j]));
  }
  return std::move(result.exps);
}

IntVector PcPresentation::act(std::size_t i, const Integer& e, const IntVector& tail) const {
  if (e == 0 || data_->trivial_action[i]) return tail;
  std::vector<GroupElement> base = e > 0 ? data_->forward[i] : data_->backward[i];
  Integer k = abs(e);
  IntVector t = tail;
  while (k != 0) {
    if (mpz_odd_p(k.get_mpz_t())) t = apply_images(base, i, t);
    k >>= 1;
    if (k != 0) {
      std::vector<GroupElement> squared;
      squared.reserve(base.size());
      for (const auto& img : base) squared.emplace_back(apply_images(base, i, img.exps));
      base = std::move(squared);
    }
  }
  return t;
}

GroupElement PcPresentation::multiply_generator(const GroupElement& v, std::size_t i,
                                                const Integer& e) const {
  const std::size_t n = data_->n;
  IntVector tail(n);
  bool has_tail = false;
  for (std::size_t k = i + 1; k < n; ++k)
    if (v[k] != 0) {
      tail[k] = v[k];
      has_tail = true;
    }
  GroupElement r(n);
  for (std::size_t k = 0; k < i; ++k) r[k] = v[k];
  r[i] = v[i] + e;
  if (has_tail) {
    tail = act(i, e, tail);
    for (std::size_t k = i + 1; k < n; ++k) r[k] = std::move(tail[k]);
  }
  return r;
}

GroupElement PcPresentation::multiply(const GroupElement& a, const GroupElement& b) const {
  if (a.size() != data_->n || b.size() != data_->n)
    throw DimensionMismatch("multiply: element length differs from generator count");
  GroupElement r = a;
  for (std::size_t i = 0; i < data_->n; ++i)
    if (b[i] != 0) r = multiply_generator(r, i, b[i]);
  return r;
}

GroupElement PcPresentation::inverse(const GroupElement& a) const {
  if (a.size() != data_->n) throw DimensionMismatch("inverse: element length differs");
  GroupElement r(data_->n);
  for (std::size_t i = data_->n; i-- > 0;)
    if (a[i] != 0) r = multiply_generator(r, i, -a[i]);
  return r;
}

GroupElement PcPresentation::power(const GroupElement& a, const Integer& k) const {
  if (k == 0) return identity();
  if (k == 1) return a;
  GroupElement base = k < 0 ? inverse(a) : a;
  Integer e = abs(k);
  if (e == 1) return base;
  GroupElement result = identity();
  while (e != 0) {
    if (mpz_odd_p(e.get_mpz_t())) result = multiply(result, base);
    e >>= 1;
    if (e != 0) base = multiply(base, base);
  }
  return result;
}

GroupElement PcPresentation::commutator(const GroupElement& a, const GroupElement& b) const {
  return multiply(inverse(multiply(b, a)), multiply(a, b));
}

GroupElement PcPresentation::conjugate(const GroupElement& a, const GroupElement& by) const {
  return multiply(multiply(inverse(by), a), by);
}

GroupElement PcPresentation::collect(const Word& word) const {
  GroupElement r = identity();
  for (const auto& s : word) {
    if (s.generator >= data_->n) throw std::out_of_range("collect: generator index out of range");
    if (s.exponent != 0) r = multiply_generator(r, s.generator, s.exponent);
  }
  return r;
}

bool PcPresentation::is_consistent() const {
  const std::size_t n = data_->n;
  const Integer signs[2] = {1, -1};
  auto gen = [&](std::size_t i, const Integer& e) {
    GroupElement g(n);
    g[i] = e;
    return g;
  };
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      for (const auto& ej : signs)
        for (const auto& ei : signs) {
          GroupElement a = gen(j, ej), b = gen(i, ei);
          if (multiply(multiply(a, b), inverse(b)) != a) return false;
          for (std::size_t k = j + 1; k < n; ++k)
            for (const auto& ek : signs) {
              GroupElement c = gen(k, ek);
              if (multiply(multiply(c, a), b) != multiply(c, multiply(a, b))) return false;
            }
        }
  return true;
}

bool operator==(const PcPresentation& a, const PcPresentation& b) {
  if (a.data_ == b.data_) return true;
  return a.data_->n == b.data_->n && a.data_->comm == b.data_->comm;
}

// ---------------------------------------------------------------------------
// Text format

namespace {

std::string strip_comment(std::string line) {
  if (auto pos = line.find('#'); pos != std::string::npos) line.erase(pos);
  return line;
}

bool blank(const std::string& s) {
  return std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); });
}

Integer parse_integer(const std::string& token, const std::string& context) {
  Integer x;
  if (token.empty() || x.set_str(token, 10) != 0)
    throw ParseError(context + ": bad integer '" + token + "'");
  return x;
}

}  // namespace

PcPresentation parse_presentation(std::istream& in) {
  std::string line;
  std::size_t n = 0;
  long declared_class = -1;
  bool header = false;
  std::vector<std::vector<IntVector>> table;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    line = strip_comment(line);
    if (blank(line)) continue;
    const std::string where = "presentation line " + std::to_string(line_no);
    if (!header) {
      std::istringstream hs(line);
      std::string a, b, extra;
      if (!(hs >> a >> b) || (hs >> extra)) throw ParseError(where + ": expected 'n class'");
      Integer nn = parse_integer(a, where), cc = parse_integer(b, where);
      if (nn < 0 || cc < 0) throw ParseError(where + ": negative header value");
      n = nn.get_ui();
      declared_class = cc.get_si();
      table.resize(n);
      for (std::size_t i = 0; i < n; ++i) table[i].assign(n - i - 1, IntVector(n));
      header = true;
      continue;
    }
    auto colon = line.find(':');
    if (colon == std::string::npos) throw ParseError(where + ": expected 'i j : exponents'");
    std::istringstream lhs(line.substr(0, colon));
    std::string si, sj, extra;
    if (!(lhs >> si >> sj) || (lhs >> extra)) throw ParseError(where + ": expected 'i j'");
    Integer ii = parse_integer(si, where), jj = parse_integer(sj, where);
    if (!(ii >= 1 && ii < jj && jj <= static_cast<long>(n)))
      throw ParseError(where + ": need 1 <= i < j <= n");
    const std::size_t i = ii.get_ui() - 1, j = jj.get_ui() - 1;
    std::istringstream rhs(line.substr(colon + 1));
    IntVector exps;
    std::string tok;
    while (rhs >> tok) exps.push_back(parse_integer(tok, where));
    if (exps.size() != n - j - 1)
      throw ParseError(where + ": expected " + std::to_string(n - j - 1) + " exponents");
    IntVector& c = table[i][j - i - 1];
    for (std::size_t k = 0; k < exps.size(); ++k) c[j + 1 + k] = exps[k];
  }
  if (!header) throw ParseError("presentation: missing 'n class' header");
  PcPresentation p(n, table);
  if (p.nilpotency_class() != declared_class)
    throw InvalidPresentation("presentation declares class " + std::to_string(declared_class) +
                              " but has class " + std::to_string(p.nilpotency_class()));
  return p;
}

PcPresentation parse_presentation(const std::string& text) {
  std::istringstream in(text);
  return parse_presentation(in);
}

std::string format_presentation(const PcPresentation& p) {
  std::ostringstream out;
  const std::size_t n = p.generator_count();
  out << n << ' ' << p.nilpotency_class() << '\n';
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const GroupElement& c = p.commutator_relation(i, j);
      if (c.is_identity()) continue;
      out << i + 1 << ' ' << j + 1 << " :";
      for (std::size_t k = j + 1; k < n; ++k) out << ' ' << c[k];
      out << '\n';
    }
  return out.str();
}

// ---------------------------------------------------------------------------
// Builders

PcPresentation free_abelian(std::size_t n) { return PcPresentation(n); }

PcPresentation heisenberg() {
  std::vector<std::vector<IntVector>> t(3);
  t[0] = {IntVector{0, 0, -1}, IntVector(3)};  // [y, x] = z^-1, [z, x] = 1
  t[1] = {IntVector(3)};                       // [z, y] = 1
  return PcPresentation(3, t);
}

std::vector<std::pair<std::size_t, std::size_t>> unitriangular_positions(std::size_t n) {
  std::vector<std::pair<std::size_t, std::size_t>> pos;
  for (std::size_t level = 1; level < n; ++level)
    for (std::size_t r = 0; r + level < n; ++r) pos.emplace_back(r, r + level);
  return pos;
}

namespace {

IntMatrix elementary(std::size_t n, std::size_t r, std::size_t s, const Integer& k) {
  IntMatrix m = IntMatrix::identity(n);
  m(r, s) = k;
  return m;
}

}  // namespace

GroupElement unitriangular_coordinates(const IntMatrix& m) {
  if (!m.is_square()) throw DimensionMismatch("unitriangular_coordinates: matrix not square");
  const std::size_t n = m.rows();
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c <= r; ++c)
      if (m(r, c) != (r == c ? 1 : 0))
        throw std::invalid_argument("unitriangular_coordinates: matrix not upper unitriangular");
  const auto pos = unitriangular_positions(n);
  GroupElement e(pos.size());
  IntMatrix rest = m;
  std::size_t k = 0;
  for (std::size_t level = 1; level < n; ++level) {
    // Entries on this level are additive modulo higher levels.
    IntMatrix block_inverse = IntMatrix::identity(n);
    const std::size_t first = k;
    for (std::size_t r = 0; r + level < n; ++r, ++k) e[k] = rest(r, r + level);
    for (std::size_t q = k; q-- > first;)
      block_inverse = block_inverse * elementary(n, pos[q].first, pos[q].second, -e[q]);
    rest = block_inverse * rest;
  }
  return e;
}

PcPresentation unitriangular(std::size_t n) {
  if (n == 0) throw std::invalid_argument("unitriangular: n must be at least 1");
  const auto pos = unitriangular_positions(n);
  const std::size_t g = pos.size();
  std::vector<std::vector<IntVector>> t(g);
  for (std::size_t i = 0; i < g; ++i)
    for (std::size_t j = i + 1; j < g; ++j) {
      IntMatrix a = elementary(n, pos[j].first, pos[j].second, 1);
      IntMatrix ai = elementary(n, pos[j].first, pos[j].second, -1);
      IntMatrix b = elementary(n, pos[i].first, pos[i].second, 1);
      IntMatrix bi = elementary(n, pos[i].first, pos[i].second, -1);
      t[i].push_back(unitriangular_coordinates(ai * bi * a * b).exps);
    }
  return PcPresentation(g, t);
}

PcPresentation direct_product(const PcPresentation& p, const PcPresentation& q) {
  const std::size_t np = p.generator_count(), nq = q.generator_count(), n = np + nq;
  std::vector<std::vector<IntVector>> t(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      IntVector c(n);
      if (j < np) {
        const GroupElement& src = p.commutator_relation(i, j);
        for (std::size_t k = 0; k < np; ++k) c[k] = src[k];
      } else if (i >= np) {
        const GroupElement& src = q.commutator_relation(i - np, j - np);
        for (std::size_t k = 0; k < nq; ++k) c[np + k] = src[k];
      }
      t[i].push_back(std::move(c));
    }
  return PcPresentation(n, t);
}

PcPresentation class_two(std::size_t top, std::size_t central,
                         const std::vector<std::vector<IntVector>>& forms) {
  const std::size_t n = top + central;
  if (forms.size() != top) throw InvalidPresentation("class_two: need one form row per top generator");
  std::vector<std::vector<IntVector>> t(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      IntVector c(n);
      if (j < top) {
        const IntVector& f = forms[i].at(j - i - 1);
        if (f.size() != central) throw InvalidPresentation("class_two: form has wrong length");
        for (std::size_t k = 0; k < central; ++k) c[top + k] = f[k];
      }
      t[i].push_back(std::move(c));
    }
  return PcPresentation(n, t);
}

namespace {

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return {};
  auto e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

std::size_t parse_size_argument(const std::string& arg, const std::string& name) {
  Integer k = parse_integer(trim(arg), name);
  if (k < 1) throw ParseError(name + ": argument must be at least 1");
  return k.get_ui();
}

}  // namespace

PcPresentation build_standard(const std::string& raw) {
  const std::string name = trim(raw);
  if (name == "heisenberg") return heisenberg();
  const auto open = name.find('(');
  if (open == std::string::npos || name.back() != ')')
    throw ParseError("unknown group builder '" + name + "'");
  const std::string family = trim(name.substr(0, open));
  const std::string args = name.substr(open + 1, name.size() - open - 2);
  if (family == "ut") return unitriangular(parse_size_argument(args, "ut"));
  if (family == "free_abelian") return free_abelian(parse_size_argument(args, "free_abelian"));
  if (family == "direct_product") {
    int depth = 0;
    for (std::size_t k = 0; k < args.size(); ++k) {
      if (args[k] == '(') ++depth;
      if (args[k] == ')') --depth;
      if (args[k] == ',' && depth == 0)
        return direct_product(build_standard(args.substr(0, k)), build_standard(args.substr(k + 1)));
    }
    throw ParseError("direct_product needs two comma-separated arguments");
  }
  throw ParseError("unknown group builder '" + family + "'");
}

}  // namespace nilrfrs
