#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "nilrfrs/pc_presentation.hpp"
#include "nilrfrs/subgroup.hpp"

namespace nilrfrs {

/// Chain G = G_0 > G_1 > ... of finite-index subgroups.
class Filtration {
 public:
  /// Throws MalformedChain unless chain[0] is the whole group, every term has
  /// finite index and each term is a proper subgroup of the previous one.
  Filtration(PcPresentation ambient, std::vector<Subgroup> chain);

  const PcPresentation& ambient() const { return ambient_; }
  const std::vector<Subgroup>& chain() const { return chain_; }
  std::size_t size() const { return chain_.size(); }
  const Subgroup& operator[](std::size_t i) const { return chain_[i]; }

 private:
  PcPresentation ambient_;
  std::vector<Subgroup> chain_;
};

Filtration parse_filtration(const PcPresentation& p, std::istream& in);
Filtration parse_filtration(const PcPresentation& p, const std::string& text);

/// Conditions for the pair (G_i, G_{i+1}).
struct RfrsStep {
  bool normal_in_g = false;
  Integer index;  // [G : G_{i+1}]
  bool kernel_contained = false;
  bool passed() const { return normal_in_g && kernel_contained; }
};

struct RfrsReport {
  std::vector<RfrsStep> steps;
  bool overall = true;
  /// Intersection of the finite chain, i.e. its last term.
  Subgroup intersection;
};

/// For each i: G_{i+1} is normal in G, and ker(G_i -> G_i^ab (x) Q) lies in G_{i+1}.
RfrsReport verify_rfrs_chain(const Filtration& f);

/// ker(G_i -> G_i^ab (x) Q) as a subgroup of the ambient group.
Subgroup rational_kernel_of(const Subgroup& gi);

struct TrappedWitness {
  GroupElement z;
  /// Order of the image of z in G_i^ab, one per chain term.
  std::vector<Integer> torsion_orders;
};

/// A central z lying in every G_i with torsion image in every G_i^ab.
/// std::nullopt for abelian groups or when some term fails to trap z.
/// Throws PreconditionFailed when the chain fails verify_rfrs_chain.
std::optional<TrappedWitness> trapped_central_witness(const Filtration& f);

struct SubgroupCheck {
  Subgroup subgroup;
  Integer index;
  bool contains_witness = false;
  /// Least k >= 1 with z^k in the subgroup.
  Integer trapped_power;
  /// Order of z^k in the abelianization of the subgroup; std::nullopt if infinite.
  std::optional<Integer> torsion_order;
  bool passed() const { return torsion_order.has_value(); }
};

struct ObstructionCertificate {
  GroupElement witness;
  Integer index_bound;
  std::string depth_note;
  /// z has torsion image in the abelianization of the whole group.
  bool witness_in_rational_kernel = false;
  std::vector<SubgroupCheck> subgroups;
  std::size_t checked_subgroups = 0;
  /// Witness in the rational kernel and every enumerated normal subgroup
  /// traps a power of z with torsion image in its abelianization.
  bool all_pass = false;
};

/// Checks every normal subgroup of index <= max_index. Requires a nonabelian
/// group of class 2.
ObstructionCertificate obstruction_certificate(const PcPresentation& p, const Integer& max_index,
                                               const EnumerationLimits& limits = {});

/// The chain {G_i cap H} on the induced presentation of H, with repeated
/// terms removed.
Filtration restrict_chain(const Filtration& f, const Subgroup& h);

}  // namespace nilrfrs
