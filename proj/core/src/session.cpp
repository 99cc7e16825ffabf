#include "semstore/session.hpp"

#include <fmt/format.h>

#include <fstream>
#include <sstream>
#include <unordered_set>

namespace semstore {

namespace {

std::size_t sum(const std::vector<FileLoadReport>& files,
                std::size_t FileLoadReport::*field) {
  std::size_t total = 0;
  for (const FileLoadReport& f : files) total += f.*field;
  return total;
}

}  // namespace

std::size_t LoadReport::total_parsed() const {
  return sum(files, &FileLoadReport::parsed);
}
std::size_t LoadReport::total_inserted() const {
  return sum(files, &FileLoadReport::inserted);
}
std::size_t LoadReport::total_duplicates() const {
  return sum(files, &FileLoadReport::duplicates);
}
std::size_t LoadReport::total_errors() const {
  std::size_t total = 0;
  for (const FileLoadReport& f : files) total += f.issues.size();
  return total;
}

LoadReport Session::load(
    const std::vector<std::filesystem::path>& data_files,
    const std::optional<std::filesystem::path>& prefix_file) {
  if (prefix_file) {
    prefixes = parse_prefix_map(
        Document::from_file(*prefix_file, DocumentFormat::angle_comma));
  }

  LoadReport report;
  for (const auto& path : data_files) {
    FileLoadReport file;
    file.path = path.string();

    ParseResult parsed;
    auto ext = path.extension().string();
    if (ext == ".trp") {
      parsed = parse_triples(
          Document::from_file(path, DocumentFormat::angle_comma),
          prefixes, OnError::collect);
    } else if (ext == ".nt") {
      parsed = parse_ntriples(
          Document::from_file(path, DocumentFormat::ntriples_subset),
          OnError::collect);
    } else {
      throw Error(Errc::io_error,
                  "unsupported data file extension: " + path.string());
    }

    file.parsed = parsed.triples.size();
    file.issues = std::move(parsed.issues);
    for (const Triple& t : parsed.triples) {
      if (graph.insert(t)) {
        ++file.inserted;
      } else {
        ++file.duplicates;
      }
    }
    report.files.push_back(std::move(file));
  }
  return report;
}

InferenceResult Session::infer(const SaturationOptions& options) {
  ontology = extract_ontology(graph);
  SaturationOutcome outcome = saturate(graph, ontology, options);
  partition = std::move(outcome.partition);
  return std::move(outcome.result);
}

BindingTable Session::run_query(std::string_view text, bool naive,
                                std::size_t budget) const {
  Query query = parse_query(text, prefixes);
  const SameAsPartition* part = partition ? &*partition : nullptr;
  if (naive) return evaluate_naive(query, graph, budget, part);
  return evaluate(query, graph, part);
}

BindingTable Session::query_file(const std::filesystem::path& path,
                                 bool naive, std::size_t budget) const {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(Errc::io_error, "cannot open " + path.string());
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return run_query(buf.str(), naive, budget);
}

Stats Session::stats() const {
  Stats out;
  out.triples = graph.size();
  out.asserted = graph.asserted_count();
  out.derived = graph.derived_count();
  std::unordered_set<TermId> subjects, predicates, objects;
  for (const IdTriple& t : graph.id_triples()) {
    subjects.insert(t[0]);
    predicates.insert(t[1]);
    objects.insert(t[2]);
  }
  out.subjects = subjects.size();
  out.predicates = predicates.size();
  out.objects = objects.size();
  out.index_consistent = graph.check_index_consistency();
  return out;
}

std::string format_load_report(const LoadReport& report) {
  std::string out;
  for (const FileLoadReport& f : report.files) {
    out += fmt::format("{}: parsed {}, inserted {}, duplicates {}, errors {}\n",
                       f.path, f.parsed, f.inserted, f.duplicates,
                       f.issues.size());
    for (const ParseIssue& issue : f.issues) {
      out += fmt::format("{}:{}: {}\n", f.path, issue.line, issue.message);
    }
  }
  out += fmt::format("total: parsed {}, inserted {}, duplicates {}, errors {}\n",
                     report.total_parsed(), report.total_inserted(),
                     report.total_duplicates(), report.total_errors());
  return out;
}

std::string format_infer_report(const InferenceResult& result,
                                const PrefixMap& prefixes) {
  std::string out;
  out += fmt::format("derived domain: {}\n",
                     result.count(InferenceRule::domain));
  out += fmt::format("derived range: {}\n", result.count(InferenceRule::range));
  out += fmt::format("derived subsumption: {}\n",
                     result.count(InferenceRule::subsumption));
  out += fmt::format("derived total: {}\n", result.derived.size());
  out += fmt::format("merges: {}\n", result.merges.size());
  for (const auto& [a, b] : result.merges) {
    out += fmt::format("merge: {} <-> {}\n", serialize_term(a, prefixes),
                       serialize_term(b, prefixes));
  }
  out += fmt::format("inconsistencies: {}\n", result.inconsistencies.size());
  for (const Inconsistency& bad : result.inconsistencies) {
    std::string objects;
    for (const Term& t : bad.objects) {
      if (!objects.empty()) objects += ", ";
      objects += serialize_term(t, prefixes);
    }
    out += fmt::format(
        "inconsistency: subject {} property {} limit {} objects {}\n",
        serialize_term(bad.subject, prefixes),
        serialize_term(Term(bad.property), prefixes), bad.limit, objects);
  }
  return out;
}

std::string format_stats(const Stats& stats) {
  return fmt::format(
      "triples: {}\nasserted: {}\nderived: {}\nsubjects: {}\npredicates: "
      "{}\nobjects: {}\nindex-consistency: {}\n",
      stats.triples, stats.asserted, stats.derived, stats.subjects,
      stats.predicates, stats.objects,
      stats.index_consistent ? "ok" : "FAIL");
}

}  // namespace semstore
