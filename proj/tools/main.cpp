#include <iostream>

#include <CLI11.hpp>

#include "nilrfrs/cli.hpp"

using nilrfrs::cli::Command;
using nilrfrs::cli::RunConfig;

int main(int argc, char** argv) {
  CLI::App app{"Invariants of nilpotent groups and graph groups, RFRS chain checks and certificates"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto group = [&](CLI::App* sub) {
    sub->add_option("--group", cfg.group, "builder name (heisenberg, ut(n), free_abelian(n), "
                                          "direct_product(p,q)) or presentation file")
        ->required();
  };
  auto json = [&](CLI::App* sub) {
    sub->add_flag("--json", cfg.json, "emit a JSON report");
    sub->add_option("--threads", cfg.threads, "worker threads (0 = all cores)");
  };

  struct Entry {
    Command command;
    CLI::App* app;
  };
  std::vector<Entry> subs;
  auto add = [&](Command c, const char* help) {
    CLI::App* sub = app.add_subcommand(nilrfrs::cli::command_name(c), help);
    subs.push_back({c, sub});
    json(sub);
    return sub;
  };

  auto* analyze = add(Command::analyze, "center, ranks, abelianization and the center-to-abelianization map");
  group(analyze);

  auto* verify = add(Command::rfrs_verify, "check the RFRS conditions on a chain");
  group(verify);
  verify->add_option("--chain", cfg.chain, "chain file")->required();

  auto* obstruct = add(Command::rfrs_obstruct, "trapped-witness certificate over normal subgroups");
  group(obstruct);
  obstruct->add_option("--max-index", cfg.max_index, "largest subgroup index")->required();

  auto* restrict_ = add(Command::rfrs_restrict, "restrict a chain to a subgroup and re-check it");
  group(restrict_);
  restrict_->add_option("--chain", cfg.chain, "chain file")->required();
  restrict_->add_option("--subgroup", cfg.subgroup, "file with one block of generators")->required();

  auto* nf = add(Command::raag_nf, "normal form of a word in a graph group");
  nf->add_option("--graph", cfg.graph, "graph file")->required();
  nf->add_option("--word", cfg.word, "word such as a,b^-1,c^2")->required();

  auto* magnus = add(Command::raag_magnus, "truncated Magnus image of a word");
  magnus->add_option("--graph", cfg.graph, "graph file")->required();
  magnus->add_option("--word", cfg.word, "word such as a,b^-1,c^2")->required();
  magnus->add_option("--degree", cfg.degree, "truncation degree")->required();

  auto* rtfn = add(Command::raag_rtfn, "separate short words by their Magnus images");
  rtfn->add_option("--graph", cfg.graph, "graph file")->required();
  rtfn->add_option("--max-len", cfg.max_len, "word length bound")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return nilrfrs::cli::exit_input_error;
  }

  for (const auto& s : subs)
    if (s.app->parsed()) cfg.command = s.command;
  return nilrfrs::cli::run(cfg, std::cout, std::cerr);
}
