#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "nilrfrs/normal_form.hpp"
#include "nilrfrs/pc_presentation.hpp"
#include "nilrfrs/subgroup.hpp"

namespace nilrfrs {

/// gamma_1 = G, gamma_{k+1} = [gamma_k, G], ending with the trivial subgroup.
std::vector<Subgroup> lower_central_series(const PcPresentation& p);
Subgroup derived_subgroup(const PcPresentation& p);
/// Hirsch lengths of the successive quotients gamma_k / gamma_{k+1}.
std::vector<std::size_t> lcs_ranks(const PcPresentation& p);
std::size_t hirsch_rank(const PcPresentation& p);

Subgroup center(const PcPresentation& p);

/// G -> G^ab = Z^n / span of the commutator table.
class Abelianization {
 public:
  explicit Abelianization(const PcPresentation& p);

  const AbelianGroupStructure& structure() const { return quotient_.structure(); }
  AbelianImage project(const GroupElement& g) const { return quotient_.project(g.exps); }
  /// Order of the image of g; std::nullopt when infinite.
  std::optional<Integer> order(const GroupElement& g) const { return quotient_.order(g.exps); }
  /// n x free_rank matrix sending coordinates to the free part of the image.
  IntMatrix free_projection() const { return quotient_.free_projection(); }
  /// One relation row per nontrivial commutator [g_j, g_i].
  const IntMatrix& relations() const { return relations_; }

 private:
  IntMatrix relations_;
  AbelianQuotient quotient_;
};

Abelianization abelianization(const PcPresentation& p);

/// g has finite order in G^ab, i.e. lies in ker(G -> G^ab (x) Q).
bool rational_ab_kernel_member(const PcPresentation& p, const GroupElement& g);
/// ker(G -> G^ab (x) Q) as a subgroup; valid in any class.
Subgroup rational_ab_kernel(const PcPresentation& p);

/// Smallest isolated subgroup containing s. Requires class <= 2 and a lattice s.
Subgroup isolator(const Subgroup& s);

struct CenterAbReport {
  std::vector<GroupElement> center_basis;
  /// Central element of infinite order whose image in G^ab is torsion.
  std::optional<GroupElement> kernel_witness;
  bool injective = true;
};

CenterAbReport center_ab_report(const PcPresentation& p);

/// Finite-index subgroup K x Z(G) when Z(G) maps injectively to G^ab (x) Q.
struct VirtualSplitting {
  Subgroup complement;
  Subgroup central;
  Integer index;  // of the product K Z(G) in G
};

/// std::nullopt when the center does not inject rationally into the abelianization.
std::optional<VirtualSplitting> virtual_splitting(const PcPresentation& p);

}  // namespace nilrfrs
