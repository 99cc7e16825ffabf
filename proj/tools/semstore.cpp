// semstore CLI: batch load / query / infer / stats over triple files.
//
// Exit codes: 0 success, 1 inconsistencies found under --strict,
// 2 usage / parse / IO error.

#include <CLI11.hpp>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "semstore/session.hpp"

namespace {

struct CommonArgs {
  std::vector<std::string> data;
  std::string prefixes;

  void attach(CLI::App* cmd) {
    cmd->add_option("--data", data, "Triple files to load (.trp or .nt)")
        ->type_name("PATH");
    cmd->add_option("--prefixes", prefixes, "Prefix map file (.pfx)")
        ->type_name("PATH");
  }

  std::vector<std::filesystem::path> data_paths() const {
    return {data.begin(), data.end()};
  }
  std::optional<std::filesystem::path> prefix_path() const {
    if (prefixes.empty()) return std::nullopt;
    return std::filesystem::path(prefixes);
  }
};

int load_session(semstore::Session& session, const CommonArgs& args,
                 bool print_report) {
  semstore::LoadReport report =
      session.load(args.data_paths(), args.prefix_path());
  if (print_report) {
    std::cout << semstore::format_load_report(report);
  } else if (!report.ok()) {
    std::cerr << semstore::format_load_report(report);
  }
  return report.ok() ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"semstore: single-node RDF triple store with SPARQL-subset "
               "queries and RDFS/OWL-lite inference"};
  app.require_subcommand(1);

  CommonArgs load_args, query_args, infer_args, stats_args;

  CLI::App* cmd_load =
      app.add_subcommand("load", "Parse and load triple files, report counts");
  load_args.attach(cmd_load);

  CLI::App* cmd_query =
      app.add_subcommand("query", "Evaluate a query file against the data");
  query_args.attach(cmd_query);
  std::string query_path;
  std::string format = "table";
  bool query_infer = false;
  bool naive = false;
  std::size_t oracle_budget = semstore::kDefaultOracleBudget;
  cmd_query->add_option("--query", query_path, "Query file")
      ->type_name("PATH")
      ->required();
  cmd_query->add_option("--format", format, "Output format")
      ->check(CLI::IsMember({"table", "tsv"}));
  cmd_query->add_flag("--infer", query_infer,
                      "Saturate the graph before evaluating");
  cmd_query->add_flag("--naive", naive,
                      "Use the brute-force oracle evaluator");
  cmd_query->add_option("--oracle-budget", oracle_budget,
                        "Assignment cap for the oracle evaluator");

  CLI::App* cmd_infer = app.add_subcommand(
      "infer", "Extract the ontology and saturate the graph");
  infer_args.attach(cmd_infer);
  bool strict = false;
  cmd_infer->add_flag("--strict", strict,
                      "Exit with status 1 when inconsistencies are found");

  CLI::App* cmd_stats =
      app.add_subcommand("stats", "Print graph statistics");
  stats_args.attach(cmd_stats);
  bool stats_infer = false;
  cmd_stats->add_flag("--infer", stats_infer,
                      "Saturate the graph before counting");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    semstore::Session session;

    if (cmd_load->parsed()) {
      return load_session(session, load_args, true);
    }

    if (cmd_query->parsed()) {
      if (int rc = load_session(session, query_args, false); rc != 0) {
        return rc;
      }
      if (query_infer) session.infer();
      semstore::BindingTable table =
          session.query_file(query_path, naive, oracle_budget);
      std::cout << (format == "tsv"
                        ? semstore::render_tsv(table, session.prefixes)
                        : semstore::render_table(table, session.prefixes));
      return 0;
    }

    if (cmd_infer->parsed()) {
      if (int rc = load_session(session, infer_args, false); rc != 0) {
        return rc;
      }
      semstore::InferenceResult result = session.infer();
      std::cout << semstore::format_infer_report(result, session.prefixes);
      if (strict && !result.inconsistencies.empty()) return 1;
      return 0;
    }

    if (cmd_stats->parsed()) {
      if (int rc = load_session(session, stats_args, false); rc != 0) {
        return rc;
      }
      if (stats_infer) session.infer();
      std::cout << semstore::format_stats(session.stats());
      return 0;
    }
  } catch (const semstore::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
