#include "nilrfrs/cli.hpp"

#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "nilrfrs/errors.hpp"
#include "nilrfrs/nilpotent.hpp"
#include "nilrfrs/raag.hpp"
#include "nilrfrs/rfrs.hpp"

namespace nilrfrs::cli {

namespace {

using Json = nlohmann::ordered_json;

constexpr std::pair<Command, const char*> kNames[] = {
    {Command::analyze, "analyze"},           {Command::rfrs_verify, "rfrs-verify"},
    {Command::rfrs_obstruct, "rfrs-obstruct"}, {Command::rfrs_restrict, "rfrs-restrict"},
    {Command::raag_nf, "raag-nf"},           {Command::raag_magnus, "raag-magnus"},
    {Command::raag_rtfn, "raag-rtfn"},
};

// Input problems detected by the front end itself.
struct UsageError : Error {
  using Error::Error;
};

Json integer_json(const Integer& x) {
  if (x.fits_slong_p()) return Json(x.get_si());
  return Json(x.get_str());
}

Json vector_json(const IntVector& v) {
  Json a = Json::array();
  for (const auto& x : v) a.push_back(integer_json(x));
  return a;
}

Json basis_json(const Subgroup& s) {
  Json a = Json::array();
  for (std::size_t i = 0; i < s.basis().rows(); ++i) a.push_back(vector_json(s.basis().row_vector(i)));
  return a;
}

Json envelope(Command c) {
  Json j;
  j["command"] = command_name(c);
  j["overall"] = true;
  j["steps"] = Json::array();
  j["intersection_rank"] = nullptr;
  j["witness"] = nullptr;
  j["checked_subgroups"] = nullptr;
  j["details"] = Json::object();
  return j;
}

std::string read_file(const std::string& path, const char* what) {
  if (path.empty()) throw UsageError(std::string("missing --") + what);
  std::ifstream in(path);
  if (!in) throw UsageError(std::string("cannot read ") + what + " file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

PcPresentation load_group(const std::string& source) {
  if (source.empty()) throw UsageError("missing --group");
  std::error_code ec;
  if (std::filesystem::is_regular_file(source, ec)) return parse_presentation(read_file(source, "group"));
  return build_standard(source);
}

long positive(const std::optional<long>& v, const char* flag) {
  if (!v) throw UsageError(std::string("missing --") + flag);
  if (*v <= 0) throw UsageError(std::string("--") + flag + " must be positive");
  return *v;
}

Json steps_json(const RfrsReport& r) {
  Json steps = Json::array();
  for (std::size_t i = 0; i < r.steps.size(); ++i) {
    Json s;
    s["index"] = integer_json(r.steps[i].index);
    s["normal"] = r.steps[i].normal_in_g;
    s["kernel_contained"] = r.steps[i].kernel_contained;
    steps.push_back(std::move(s));
  }
  return steps;
}

void print_steps(std::ostream& out, const RfrsReport& r) {
  for (std::size_t i = 0; i < r.steps.size(); ++i)
    out << "step " << i << ": index " << r.steps[i].index << ", normal "
        << (r.steps[i].normal_in_g ? "true" : "false") << ", kernel contained "
        << (r.steps[i].kernel_contained ? "true" : "false") << '\n';
}

const char* yes_no(bool b) { return b ? "true" : "false"; }

int analyze(const RunConfig& cfg, Json& j, std::ostream& out) {
  PcPresentation p = load_group(cfg.group);
  Subgroup z = center(p);
  Abelianization ab(p);
  CenterAbReport rep = center_ab_report(p);
  auto ranks = lcs_ranks(p);
  const std::size_t hr = hirsch_rank(p);

  if (rep.kernel_witness) j["witness"] = vector_json(rep.kernel_witness->exps);
  Json& d = j["details"];
  d["generators"] = p.generator_count();
  d["nilpotency_class"] = p.nilpotency_class();
  d["center_basis"] = basis_json(z);
  d["center_rank"] = z.hirsch_length();
  d["hirsch_rank"] = hr;
  d["lcs_ranks"] = ranks;
  d["abelianization"] = ab.structure().to_string();
  d["abelianization_free_rank"] = ab.structure().free_rank;
  d["invariant_factors"] = vector_json(ab.structure().invariant_factors);
  d["injective"] = rep.injective;

  if (!cfg.json) {
    out << "generators: " << p.generator_count() << '\n'
        << "nilpotency class: " << p.nilpotency_class() << '\n'
        << "center rank: " << z.hirsch_length() << '\n'
        << "hirsch rank: " << hr << '\n'
        << "abelianization: " << ab.structure().to_string() << '\n'
        << "center-to-abelianization injective: " << yes_no(rep.injective) << '\n'
        << "witness: " << (rep.kernel_witness ? to_string(*rep.kernel_witness) : "none") << '\n';
  }
  return exit_pass;
}

int rfrs_verify(const RunConfig& cfg, Json& j, std::ostream& out) {
  PcPresentation p = load_group(cfg.group);
  Filtration f = parse_filtration(p, read_file(cfg.chain, "chain"));
  RfrsReport r = verify_rfrs_chain(f);
  j["overall"] = r.overall;
  j["steps"] = steps_json(r);
  j["intersection_rank"] = r.intersection.hirsch_length();
  j["details"]["chain_length"] = f.size();
  j["details"]["intersection_basis"] = basis_json(r.intersection);
  j["details"]["intersection_index"] = integer_json(*index(r.intersection));
  if (!cfg.json) {
    print_steps(out, r);
    out << "intersection: " << to_string(r.intersection) << '\n'
        << "overall: " << yes_no(r.overall) << '\n';
  }
  return r.overall ? exit_pass : exit_fail;
}

int rfrs_obstruct(const RunConfig& cfg, Json& j, std::ostream& out) {
  PcPresentation p = load_group(cfg.group);
  const long bound = positive(cfg.max_index, "max-index");
  EnumerationLimits limits;
  limits.threads = cfg.threads;
  ObstructionCertificate c = obstruction_certificate(p, bound, limits);
  j["overall"] = c.all_pass;
  j["witness"] = vector_json(c.witness.exps);
  j["checked_subgroups"] = c.checked_subgroups;
  Json& d = j["details"];
  d["index_bound"] = integer_json(c.index_bound);
  d["depth_note"] = c.depth_note;
  d["witness_in_rational_kernel"] = c.witness_in_rational_kernel;
  Json subs = Json::array();
  for (const auto& s : c.subgroups) {
    Json e;
    e["index"] = integer_json(s.index);
    e["basis"] = basis_json(s.subgroup);
    e["contains_witness"] = s.contains_witness;
    e["trapped_power"] = integer_json(s.trapped_power);
    e["torsion_order"] = s.torsion_order ? integer_json(*s.torsion_order) : Json(nullptr);
    subs.push_back(std::move(e));
  }
  d["subgroups"] = std::move(subs);
  if (!cfg.json) {
    std::size_t without = 0;
    for (const auto& s : c.subgroups) without += !s.contains_witness;
    out << "witness: " << to_string(c.witness) << '\n'
        << "witness in rational abelianization kernel: " << yes_no(c.witness_in_rational_kernel)
        << '\n'
        << "checked subgroups: " << c.checked_subgroups << " (" << c.depth_note << ")\n"
        << "subgroups not containing the witness: " << without << '\n'
        << "all pass: " << yes_no(c.all_pass) << '\n';
  }
  return c.all_pass ? exit_pass : exit_fail;
}

int rfrs_restrict(const RunConfig& cfg, Json& j, std::ostream& out) {
  PcPresentation p = load_group(cfg.group);
  Filtration f = parse_filtration(p, read_file(cfg.chain, "chain"));
  auto blocks = parse_subgroups(p, read_file(cfg.subgroup, "subgroup"));
  if (blocks.size() != 1) throw UsageError("subgroup file must hold exactly one block");
  Filtration g = restrict_chain(f, blocks[0]);
  RfrsReport r = verify_rfrs_chain(g);
  j["overall"] = r.overall;
  j["steps"] = steps_json(r);
  j["intersection_rank"] = r.intersection.hirsch_length();
  Json chain = Json::array();
  for (const auto& s : g.chain()) chain.push_back(basis_json(s));
  j["details"]["subgroup_basis"] = basis_json(blocks[0]);
  j["details"]["restricted_chain"] = std::move(chain);
  if (!cfg.json) {
    out << "restricted chain (coordinates in the subgroup):\n";
    for (std::size_t i = 0; i < g.size(); ++i) out << "  G_" << i << " = " << to_string(g[i]) << '\n';
    print_steps(out, r);
    out << "overall: " << yes_no(r.overall) << '\n';
  }
  return r.overall ? exit_pass : exit_fail;
}

Graph load_graph(const RunConfig& cfg) { return parse_graph(read_file(cfg.graph, "graph")); }

int raag_nf(const RunConfig& cfg, Json& j, std::ostream& out) {
  Graph g = load_graph(cfg);
  RaagWord w = parse_word(cfg.word);
  RaagWord nf = normal_form(g, w);
  j["details"]["word"] = format_word(w);
  j["details"]["normal_form"] = format_word(nf);
  j["details"]["is_identity"] = nf.empty();
  if (!cfg.json) out << format_word(nf) << '\n';
  return exit_pass;
}

int raag_magnus(const RunConfig& cfg, Json& j, std::ostream& out) {
  Graph g = load_graph(cfg);
  RaagWord w = parse_word(cfg.word);
  const long degree = positive(cfg.degree, "degree");
  TruncatedSeries s = magnus_image(g, w, static_cast<std::size_t>(degree));
  Json terms = Json::array();
  for (const auto& [m, c] : s.terms()) {
    std::string word;
    for (std::size_t v : m) word += static_cast<char>('a' + v);
    Json t;
    t["monomial"] = word;
    t["coefficient"] = c.get_str();
    terms.push_back(std::move(t));
  }
  Json& d = j["details"];
  d["word"] = format_word(w);
  d["degree"] = degree;
  d["series"] = to_string(s);
  d["terms"] = std::move(terms);
  d["is_one"] = s.is_one();
  if (!cfg.json) out << to_string(s) << '\n';
  return exit_pass;
}

int raag_rtfn(const RunConfig& cfg, Json& j, std::ostream& out) {
  Graph g = load_graph(cfg);
  const long len = positive(cfg.max_len, "max-len");
  RtfnReport r = rtfn_witness(g, static_cast<std::size_t>(len), cfg.threads);
  j["overall"] = r.pass;
  Json& d = j["details"];
  d["max_len"] = len;
  d["words_checked"] = r.words_checked;
  d["elements_checked"] = r.elements_checked;
  d["failing_word"] = r.failing_word ? Json(format_word(*r.failing_word)) : Json(nullptr);
  if (!cfg.json)
    out << "words checked: " << r.words_checked << '\n'
        << "distinct nontrivial elements: " << r.elements_checked << '\n'
        << "pass: " << yes_no(r.pass) << '\n';
  return r.pass ? exit_pass : exit_fail;
}

}  // namespace

std::optional<Command> parse_command(const std::string& name) {
  for (auto [c, n] : kNames)
    if (name == n) return c;
  return std::nullopt;
}

std::string command_name(Command c) {
  for (auto [k, n] : kNames)
    if (k == c) return n;
  return "unknown";
}

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  Json j = envelope(cfg.command);
  int code = exit_input_error;
  try {
    switch (cfg.command) {
      case Command::analyze: code = analyze(cfg, j, out); break;
      case Command::rfrs_verify: code = rfrs_verify(cfg, j, out); break;
      case Command::rfrs_obstruct: code = rfrs_obstruct(cfg, j, out); break;
      case Command::rfrs_restrict: code = rfrs_restrict(cfg, j, out); break;
      case Command::raag_nf: code = raag_nf(cfg, j, out); break;
      case Command::raag_magnus: code = raag_magnus(cfg, j, out); break;
      case Command::raag_rtfn: code = raag_rtfn(cfg, j, out); break;
    }
  } catch (const ResourceLimit& e) {
    err << "resource limit: " << e.what() << '\n';
    return exit_input_error;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return exit_input_error;
  }
  if (cfg.json) out << j.dump(2) << '\n';
  return code;
}

}  // namespace nilrfrs::cli
