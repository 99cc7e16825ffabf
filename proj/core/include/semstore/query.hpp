#pragma once

// SELECT/WHERE basic-graph-pattern queries: parsing, greedy selectivity
// planning, index-nested-loop evaluation, and a brute-force oracle
// evaluator. Results are always set-semantics deduplicated.
//
// Evaluation is read-only; any number of queries may run concurrently
// against a graph that is not being mutated.

#include <set>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "semstore/reasoner.hpp"
#include "semstore/store.hpp"

namespace semstore {

struct Variable {
  std::string name;  // without the leading '?'

  friend bool operator==(const Variable&, const Variable&) = default;
  friend auto operator<=>(const Variable&, const Variable&) = default;
};

using QuerySlot = std::variant<Term, Variable>;

struct QueryPattern {
  QuerySlot subject;
  QuerySlot predicate;
  QuerySlot object;
};

struct Query {
  std::vector<Variable> select;
  std::vector<QueryPattern> where;
};

/// Grammar: `SELECT ?v+ WHERE { (term term term .)+ }` with
/// term := ?name | <curie-or-full-iri> | "literal"(^^datatype)?.
/// Literals are allowed in object slots only. Throws Error{syntax_error}
/// with a line:column position, Error{unknown_prefix}, or
/// Error{unbound_select_variable}.
Query parse_query(std::string_view text, const PrefixMap& prefixes);

struct PlanStep {
  std::size_t pattern;   // index into Query::where
  PlanIndex index;       // index serving the step at execution boundness
  std::size_t estimate;  // stand-alone match count, variables as wildcards
};

struct Plan {
  std::vector<PlanStep> steps;
};

/// Greedy ordering: repeatedly take the remaining pattern with the smallest
/// stand-alone count estimate (bound variables treated as wildcards), ties
/// broken by original textual order.
Plan make_plan(const Query& query, const Graph& g);

/// Header plus a deduplicated set of rows; row order is Term order, display
/// order is fixed at render time.
class BindingTable {
 public:
  explicit BindingTable(std::vector<Variable> header)
      : header_(std::move(header)) {}

  const std::vector<Variable>& header() const noexcept { return header_; }
  const std::set<std::vector<Term>>& rows() const noexcept { return rows_; }
  std::size_t row_count() const noexcept { return rows_.size(); }
  bool add_row(std::vector<Term> row) {
    return rows_.insert(std::move(row)).second;
  }

  friend bool operator==(const BindingTable&, const BindingTable&) = default;

 private:
  std::vector<Variable> header_;
  std::set<std::vector<Term>> rows_;
};

/// Index-nested-loop join following make_plan. With a partition, pattern
/// terms and stored terms are resolved through their canonical
/// representative before comparison and result rows hold representatives.
BindingTable evaluate(const Query& query, const Graph& g,
                      const SameAsPartition* partition = nullptr);

inline constexpr std::size_t kDefaultOracleBudget = 1'000'000'000;

/// Brute-force nested enumeration of pattern-to-triple assignments, checked
/// for unification; the test oracle for evaluate. Throws
/// Error{instance_too_large} when |g|^k exceeds the budget.
BindingTable evaluate_naive(const Query& query, const Graph& g,
                            std::size_t budget = kDefaultOracleBudget,
                            const SameAsPartition* partition = nullptr);

/// ASCII table: dashed rule, `| ?x | ?y |` header, dashed rule, data rows
/// sorted lexicographically by serialized columns, closing dashed rule.
std::string render_table(const BindingTable& table, const PrefixMap& prefixes);

/// Tab-separated variant with the same row order.
std::string render_tsv(const BindingTable& table, const PrefixMap& prefixes);

}  // namespace semstore
