#include "nilrfrs/rfrs.hpp"

#include <algorithm>
#include <atomic>
#include <istream>
#include <sstream>
#include <thread>

#include "nilrfrs/errors.hpp"
#include "nilrfrs/nilpotent.hpp"

namespace nilrfrs {

Filtration::Filtration(PcPresentation ambient, std::vector<Subgroup> chain)
    : ambient_(std::move(ambient)), chain_(std::move(chain)) {
  if (chain_.empty()) throw MalformedChain("chain is empty");
  for (std::size_t i = 0; i < chain_.size(); ++i) {
    if (!(chain_[i].ambient() == ambient_))
      throw MalformedChain("term " + std::to_string(i) + " lives in another group");
    if (!chain_[i].is_full_rank())
      throw MalformedChain("term " + std::to_string(i) + " has infinite index");
  }
  if (!(chain_[0] == Subgroup::whole(ambient_)))
    throw MalformedChain("first term must be the whole group");
  for (std::size_t i = 1; i < chain_.size(); ++i)
    if (!chain_[i - 1].contains(chain_[i]) || chain_[i - 1] == chain_[i])
      throw MalformedChain("term " + std::to_string(i) +
                           " is not a proper subgroup of the previous term");
}

Filtration parse_filtration(const PcPresentation& p, std::istream& in) {
  return Filtration(p, parse_subgroups(p, in));
}

Filtration parse_filtration(const PcPresentation& p, const std::string& text) {
  std::istringstream in(text);
  return parse_filtration(p, in);
}

Subgroup rational_kernel_of(const Subgroup& gi) {
  InducedPresentation ip(gi);
  return ip.include(rational_ab_kernel(ip.presentation()));
}

RfrsReport verify_rfrs_chain(const Filtration& f) {
  RfrsReport report{{}, true, f.chain().back()};
  for (std::size_t i = 0; i + 1 < f.size(); ++i) {
    RfrsStep step;
    step.normal_in_g = is_normal(f[i + 1]);
    step.index = *index(f[i + 1]);
    step.kernel_contained = f[i + 1].contains(rational_kernel_of(f[i]));
    report.overall = report.overall && step.passed();
    report.steps.push_back(step);
  }
  return report;
}

std::optional<TrappedWitness> trapped_central_witness(const Filtration& f) {
  if (!verify_rfrs_chain(f).overall)
    throw PreconditionFailed("chain fails the RFRS conditions");
  CenterAbReport rep = center_ab_report(f.ambient());
  if (!rep.kernel_witness) return std::nullopt;
  TrappedWitness w{*rep.kernel_witness, {}};
  for (const auto& gi : f.chain()) {
    InducedPresentation ip(gi);
    auto local = ip.localize(w.z);
    if (!local) return std::nullopt;
    auto order = Abelianization(ip.presentation()).order(*local);
    if (!order) return std::nullopt;
    w.torsion_orders.push_back(*order);
  }
  return w;
}

namespace {

SubgroupCheck check_subgroup(const Subgroup& h, const GroupElement& z) {
  const PcPresentation& p = h.ambient();
  SubgroupCheck c{h, *index(h), h.contains(z), 1, std::nullopt};
  // zH has finite order dividing [G : H] because H is normal of finite index.
  GroupElement zk = z;
  while (!h.contains(zk)) {
    if (c.trapped_power >= c.index) throw Error("no power of the witness lies in the subgroup");
    ++c.trapped_power;
    zk = p.multiply(zk, z);
  }
  InducedPresentation ip(h);
  c.torsion_order = Abelianization(ip.presentation()).order(*ip.localize(zk));
  return c;
}

}  // namespace

ObstructionCertificate obstruction_certificate(const PcPresentation& p, const Integer& max_index,
                                               const EnumerationLimits& limits) {
  if (p.is_abelian()) throw PreconditionFailed("obstruction certificate needs a nonabelian group");
  if (p.nilpotency_class() > 2)
    throw UnsupportedClass("obstruction certificate is only implemented for class 2");
  CenterAbReport rep = center_ab_report(p);
  ObstructionCertificate cert;
  cert.witness = *rep.kernel_witness;
  cert.index_bound = max_index;
  cert.depth_note = "all normal subgroups of index <= " + max_index.get_str();
  cert.witness_in_rational_kernel = rational_ab_kernel_member(p, cert.witness);

  auto subgroups = enumerate_normal_subgroups(p, max_index, limits);
  std::vector<std::optional<SubgroupCheck>> checks(subgroups.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k; (k = next.fetch_add(1)) < subgroups.size();)
      checks[k] = check_subgroup(subgroups[k], cert.witness);
  };
  unsigned threads = limits.threads ? limits.threads : std::thread::hardware_concurrency();
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(subgroups.size())));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }

  cert.all_pass = cert.witness_in_rational_kernel;
  for (auto& c : checks) {
    cert.all_pass = cert.all_pass && c->passed();
    cert.subgroups.push_back(std::move(*c));
  }
  cert.checked_subgroups = cert.subgroups.size();
  return cert;
}

Filtration restrict_chain(const Filtration& f, const Subgroup& h) {
  if (!(h.ambient() == f.ambient())) throw Error("restrict_chain: subgroup of another group");
  InducedPresentation ip(h);
  std::vector<Subgroup> terms;
  for (const auto& gi : f.chain()) {
    Subgroup local = ip.localize(intersect(gi, h));
    if (terms.empty() || !(terms.back() == local)) terms.push_back(std::move(local));
  }
  return Filtration(ip.presentation(), std::move(terms));
}

}  // namespace nilrfrs
