#pragma once

// Batch front-end machinery: a session is reconstructed per invocation from
// the listed files, so every command run is deterministic given identical
// inputs and flags.

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "semstore/query.hpp"
#include "semstore/reasoner.hpp"
#include "semstore/syntax.hpp"

namespace semstore {

struct FileLoadReport {
  std::string path;
  std::size_t parsed = 0;
  std::size_t inserted = 0;
  std::size_t duplicates = 0;
  std::vector<ParseIssue> issues;
};

struct LoadReport {
  std::vector<FileLoadReport> files;

  std::size_t total_parsed() const;
  std::size_t total_inserted() const;
  std::size_t total_duplicates() const;
  std::size_t total_errors() const;
  bool ok() const { return total_errors() == 0; }
};

struct Stats {
  std::size_t triples = 0;
  std::size_t asserted = 0;
  std::size_t derived = 0;
  std::size_t subjects = 0;
  std::size_t predicates = 0;
  std::size_t objects = 0;
  bool index_consistent = true;
};

enum class OutputFormat { table, tsv };

class Session {
 public:
  /// Loads the prefix file (when given) and then each data file in order.
  /// File format follows the extension: .trp angle-comma, .nt N-Triples
  /// subset, prefix files .pfx. Parse errors are collected per line;
  /// missing files and unsupported extensions throw Error{io_error}.
  LoadReport load(const std::vector<std::filesystem::path>& data_files,
                  const std::optional<std::filesystem::path>& prefix_file);

  /// extract_ontology + saturate. Populates the session partition used by
  /// subsequent queries.
  InferenceResult infer(const SaturationOptions& options = {});

  BindingTable run_query(std::string_view text, bool naive = false,
                         std::size_t budget = kDefaultOracleBudget) const;
  BindingTable query_file(const std::filesystem::path& path,
                          bool naive = false,
                          std::size_t budget = kDefaultOracleBudget) const;

  Stats stats() const;

  Graph graph;
  PrefixMap prefixes;
  Ontology ontology;
  std::optional<SameAsPartition> partition;  // empty until infer() runs
};

std::string format_load_report(const LoadReport& report);
std::string format_infer_report(const InferenceResult& result,
                                const PrefixMap& prefixes);
std::string format_stats(const Stats& stats);

}  // namespace semstore
