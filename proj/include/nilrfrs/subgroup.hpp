#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "nilrfrs/int_matrix.hpp"
#include "nilrfrs/pc_presentation.hpp"

namespace nilrfrs {

namespace detail {
struct SubgroupAccess;
}

/// Subgroup of a nilpotent group given by its canonical generating sequence.
///
/// The basis rows t_1, ..., t_r are Mal'cev coordinate vectors with strictly
/// increasing depth and positive leading exponents; every entry of t_i sitting
/// at the depth of a later t_j is reduced into [0, lead(t_j)). Every element of
/// the subgroup is uniquely t_1^{e_1} ... t_r^{e_r}, and two subgroups are equal
/// iff their bases are. When the coordinate set of the subgroup is a lattice
/// (always the case for the normal finite-index subgroups handled here), the
/// basis is exactly the Hermite normal form of that lattice.
class Subgroup {
 public:
  static Subgroup whole(const PcPresentation& ambient);
  static Subgroup trivial(const PcPresentation& ambient);

  const PcPresentation& ambient() const { return ambient_; }
  const IntMatrix& basis() const { return basis_; }
  /// Number of basis rows; equals the Hirsch rank of the subgroup.
  std::size_t hirsch_length() const { return basis_.rows(); }
  bool is_trivial() const { return basis_.rows() == 0; }
  bool is_full_rank() const { return basis_.rows() == ambient_.generator_count(); }
  std::vector<GroupElement> generators() const;

  bool contains(const GroupElement& g) const;
  /// Exponents e with g = t_1^{e_1} ... t_r^{e_r}, if g lies in the subgroup.
  std::optional<IntVector> coordinates(const GroupElement& g) const;
  /// t_1^{e_1} ... t_r^{e_r}
  GroupElement element(const IntVector& coords) const;
  /// Every element of `other` lies in this subgroup.
  bool contains(const Subgroup& other) const;

  friend bool operator==(const Subgroup& a, const Subgroup& b) {
    return a.basis_ == b.basis_ && a.ambient_ == b.ambient_;
  }

 private:
  Subgroup(PcPresentation ambient, IntMatrix basis)
      : ambient_(std::move(ambient)), basis_(std::move(basis)) {}

  PcPresentation ambient_;
  IntMatrix basis_;

  friend struct detail::SubgroupAccess;
};

std::string to_string(const Subgroup& s);

/// Smallest subgroup containing `generators`.
Subgroup subgroup_closure(const PcPresentation& p, const std::vector<GroupElement>& generators);

/// Smallest subgroup of `within` that contains `generators` and is normalised by `within`.
Subgroup normal_closure(const Subgroup& within, const std::vector<GroupElement>& generators);
Subgroup normal_closure(const PcPresentation& p, const std::vector<GroupElement>& generators);

/// Kernel of a homomorphism from `domain` to Z^m given by `images`, whose row
/// k is the image of the k-th basis element of `domain`.
Subgroup homomorphism_kernel(const Subgroup& domain, const IntMatrix& images);

/// Index in the ambient group; std::nullopt when infinite.
Index index(const Subgroup& s);
/// Index of `sub` in `super`; `sub` must be contained in `super`.
Index relative_index(const Subgroup& super, const Subgroup& sub);

/// True iff every conjugate of a basis element by an ambient generator (or its
/// inverse) stays in the subgroup.
bool is_normal(const Subgroup& s);

/// True iff the Mal'cev coordinate set of `s` is the Z-span of its basis.
/// Requires class <= 2 (throws UnsupportedClass otherwise).
bool is_lattice(const Subgroup& s);

/// Intersection of two lattice subgroups of a class <= 2 group.
Subgroup intersect(const Subgroup& a, const Subgroup& b);

struct EnumerationLimits {
  /// Upper bound on the number of Hermite candidates examined.
  std::size_t max_candidates = 5'000'000;
  /// Worker threads; 0 means std::thread::hardware_concurrency().
  unsigned threads = 0;
};

/// All subgroups of index <= max_index (only normal ones when `normal_only`),
/// for class <= 2 groups. Candidates are full-rank Hermite lattices with
/// determinant <= max_index, kept when closed under the group operation.
/// Sorted by (index, basis). Throws ResourceLimit when the candidate count
/// exceeds the limit.
std::vector<Subgroup> enumerate_subgroups(const PcPresentation& p, const Integer& max_index,
                                          bool normal_only, const EnumerationLimits& limits = {});

std::vector<Subgroup> enumerate_normal_subgroups(const PcPresentation& p, const Integer& max_index,
                                                 const EnumerationLimits& limits = {});

/// Number of full-rank Hermite matrices in dimension n with determinant <= max_index.
Integer hermite_candidate_count(std::size_t n, const Integer& max_index);

/// A subgroup as a group in its own right, on the generators t_1, ..., t_r of
/// its canonical basis.
class InducedPresentation {
 public:
  explicit InducedPresentation(const Subgroup& s);

  const PcPresentation& presentation() const { return presentation_; }
  const Subgroup& subgroup() const { return subgroup_; }
  /// Local coordinates to the ambient element.
  GroupElement include(const GroupElement& local) const;
  /// Ambient element to local coordinates, if it lies in the subgroup.
  std::optional<GroupElement> localize(const GroupElement& ambient) const;
  /// Image of a subgroup of the induced group in the ambient group.
  Subgroup include(const Subgroup& local) const;
  /// Preimage of an ambient subgroup contained in this one.
  Subgroup localize(const Subgroup& ambient) const;

 private:
  Subgroup subgroup_;
  PcPresentation presentation_;
};

InducedPresentation induced_presentation(const Subgroup& s);

/// Chain file format: blocks of rows of n integers (generators in Mal'cev
/// coordinates) separated by blank lines; each block is closed to a subgroup.
std::vector<Subgroup> parse_subgroups(const PcPresentation& p, std::istream& in);
std::vector<Subgroup> parse_subgroups(const PcPresentation& p, const std::string& text);
std::string format_subgroups(const std::vector<Subgroup>& subgroups);

}  // namespace nilrfrs
