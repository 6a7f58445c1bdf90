#pragma once

#include <cstddef>
#include <iosfwd>
#include <memory>
#include <string>
#include <vector>

#include "nilrfrs/integer.hpp"
#include "nilrfrs/int_matrix.hpp"

namespace nilrfrs {

/// Element g_1^{e_1} ... g_n^{e_n} in Mal'cev normal form.
struct GroupElement {
  IntVector exps;

  GroupElement() = default;
  explicit GroupElement(std::size_t n) : exps(n) {}
  explicit GroupElement(IntVector e) : exps(std::move(e)) {}
  GroupElement(std::initializer_list<long> e) : exps(e.begin(), e.end()) {}

  std::size_t size() const { return exps.size(); }
  bool is_identity() const { return is_zero(exps); }
  const Integer& operator[](std::size_t i) const { return exps[i]; }
  Integer& operator[](std::size_t i) { return exps[i]; }

  /// Index of the first nonzero exponent; size() for the identity.
  std::size_t depth() const;

  friend bool operator==(const GroupElement&, const GroupElement&) = default;
  friend bool operator<(const GroupElement& a, const GroupElement& b) { return a.exps < b.exps; }
};

std::string to_string(const GroupElement& g);

/// One syllable g_index^exponent of a word.
struct Syllable {
  std::size_t generator;
  Integer exponent;
};

using Word = std::vector<Syllable>;

/// Power-commutator presentation of a finitely generated torsion-free nilpotent
/// group on generators g_1, ..., g_n (0-indexed in code).
///
/// The defining data are the commutators [g_j, g_i] for i < j, each an element
/// supported on generators with index > j. Commutators follow
/// [a, b] = a^-1 b^-1 a b, so g_j g_i = g_i g_j [g_j, g_i].
///
/// The object is an immutable handle; copies share the same data and are
/// safe to use from any number of threads.
class PcPresentation {
 public:
  /// Free abelian group of rank n.
  explicit PcPresentation(std::size_t n = 0);
  /// `commutators[i][j - i - 1]` holds [g_j, g_i] as a length-n exponent vector.
  /// Throws InvalidPresentation when the data is not triangular or not consistent.
  PcPresentation(std::size_t n, const std::vector<std::vector<IntVector>>& commutators);

  std::size_t generator_count() const;
  /// Nilpotency class (length of the lower central series minus one).
  int nilpotency_class() const;
  bool is_abelian() const { return nilpotency_class() <= 1; }
  /// [g_j, g_i] for i < j.
  const GroupElement& commutator_relation(std::size_t i, std::size_t j) const;
  /// True iff g_i commutes with every generator.
  bool is_central_generator(std::size_t i) const;

  GroupElement identity() const { return GroupElement(generator_count()); }
  GroupElement generator(std::size_t i) const;

  GroupElement multiply(const GroupElement& a, const GroupElement& b) const;
  GroupElement inverse(const GroupElement& a) const;
  GroupElement power(const GroupElement& a, const Integer& k) const;
  /// a^-1 b^-1 a b
  GroupElement commutator(const GroupElement& a, const GroupElement& b) const;
  /// b^-1 a b
  GroupElement conjugate(const GroupElement& a, const GroupElement& by) const;
  /// Normal form of a word in the generators.
  GroupElement collect(const Word& word) const;

  /// (a*b)*c == a*(b*c) on every generator triple, including inverses.
  bool is_consistent() const;

  /// Same handle or same commutator data.
  friend bool operator==(const PcPresentation& a, const PcPresentation& b);

 private:
  struct Data;
  std::shared_ptr<const Data> data_;

  GroupElement multiply_generator(const GroupElement& v, std::size_t i, const Integer& e) const;
  IntVector act(std::size_t i, const Integer& e, const IntVector& tail) const;
  IntVector apply_images(const std::vector<GroupElement>& images, std::size_t i,
                         const IntVector& tail) const;
  void build(std::size_t n, const std::vector<std::vector<IntVector>>& commutators);
};

/// Presentation file format: a line "n class", then lines "i j : e_{j+1} ... e_n"
/// giving [g_j, g_i] for 1 <= i < j <= n. Unlisted pairs commute. '#' starts a comment.
PcPresentation parse_presentation(std::istream& in);
PcPresentation parse_presentation(const std::string& text);
std::string format_presentation(const PcPresentation& p);

/// <x, y, z | [x,y] = z, z central> with coordinates (a, b, c) for x^a y^b z^c.
PcPresentation heisenberg();
PcPresentation free_abelian(std::size_t n);
/// Upper unitriangular n x n integer matrices. Generators are the elementary
/// matrices I + E_{r,s}, ordered by superdiagonal level s - r, then by r.
PcPresentation unitriangular(std::size_t n);
PcPresentation direct_product(const PcPresentation& p, const PcPresentation& q);
/// Class <= 2 group on `top` generators followed by `central` central ones;
/// `forms[i][j - i - 1]` gives [g_j, g_i] for i < j < top in central coordinates.
PcPresentation class_two(std::size_t top, std::size_t central,
                         const std::vector<std::vector<IntVector>>& forms);

/// Builder names: heisenberg, ut(n), free_abelian(n), direct_product(p, q).
/// Throws ParseError for unknown families or malformed names.
PcPresentation build_standard(const std::string& name);

/// (row, column) of each generator of unitriangular(n).
std::vector<std::pair<std::size_t, std::size_t>> unitriangular_positions(std::size_t n);
/// Mal'cev coordinates of an upper unitriangular integer matrix.
GroupElement unitriangular_coordinates(const IntMatrix& m);

}  // namespace nilrfrs
