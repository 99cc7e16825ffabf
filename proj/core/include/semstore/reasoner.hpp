#pragma once

// Forward-chaining RDFS/OWL-lite reasoner: ontology extraction from schema
// triples, domain/range/subsumption rules, and owl:maxCardinality-driven
// sameAs merging over a union-find partition. Derived triples are
// materialized into the store with a derived tag; merges never rewrite
// stored triples.

#include <cstdint>
#include <map>
#include <set>
#include <string_view>
#include <utility>
#include <vector>

#include "semstore/store.hpp"

namespace semstore {

struct Ontology {
  /// class -> direct superclasses (rdfs:subClassOf edges).
  std::map<Iri, std::set<Iri>> subclass_edges;
  /// property -> classes of valid subjects / objects.
  std::map<Iri, std::set<Iri>> domains;
  std::map<Iri, std::set<Iri>> ranges;
  /// property -> max object count; owl:cardinality contributes as a max
  /// bound, multiple declarations keep the tightest.
  std::map<Iri, std::uint64_t> max_cardinality;

  bool empty() const {
    return subclass_edges.empty() && domains.empty() && ranges.empty() &&
           max_cardinality.empty();
  }
  bool has_subclass_edge(const Iri& sub, const Iri& super) const;
  /// Reflexive-transitive closure; cycles collapse to mutual subclasses.
  std::set<Iri> superclasses_of(const Iri& cls) const;
};

/// Collects rdfs:subClassOf/domain/range and owl:(max)Cardinality triples.
/// Non-IRI participants of schema triples are ignored, except cardinality
/// objects, which must be non-negative integer literals
/// (Error{malformed_restriction} otherwise).
Ontology extract_ontology(const Graph& g);

/// Union-find over interned term ids. The canonical representative of a
/// class is its smallest interned id; the partition reached from a given
/// set of merges is independent of merge order. Lookups are read-only, so
/// a fully built partition can be shared across query threads.
class SameAsPartition {
 public:
  /// Joins the classes of a and b; false when already equivalent.
  bool merge(TermId a, TermId b);
  /// Canonical id; ids never merged map to themselves.
  TermId find(TermId id) const;
  bool same(TermId a, TermId b) const { return find(a) == find(b); }

  /// All ids in id's class, ascending; singletons yield {find(id)}.
  std::vector<TermId> members(TermId id) const;
  /// Classes with two or more members.
  std::vector<std::vector<TermId>> classes() const;
  std::size_t merge_count() const noexcept { return merge_count_; }
  bool trivial() const noexcept { return members_.empty(); }

 private:
  std::vector<TermId> parent_;  // ids beyond size() are their own root
  std::map<TermId, std::vector<TermId>> members_;  // root -> sorted members
  std::size_t merge_count_ = 0;
};

/// Representative of t's equivalence class; t itself when unmerged or not
/// interned. Query evaluation resolves pattern and stored terms through
/// this before comparison.
Term canonical(const SameAsPartition& partition, const TermDictionary& dict,
               const Term& t);

enum class InferenceRule : std::uint8_t { domain, range, subsumption };
std::string_view to_string(InferenceRule rule);

struct DerivedTriple {
  Triple triple;
  InferenceRule rule;
};

/// A subject exceeding a property's max cardinality with objects that
/// cannot be merged (literals are never merged).
struct Inconsistency {
  Term subject;
  Iri property;
  std::uint64_t limit = 0;
  std::vector<Term> objects;  // remaining distinct objects, term order
};

struct InferenceResult {
  std::vector<DerivedTriple> derived;
  std::vector<std::pair<Term, Term>> merges;
  std::vector<Inconsistency> inconsistencies;

  std::size_t count(InferenceRule rule) const;
};

/// One round of the three RDFS rules over the current graph; returns only
/// triples not already present.
///   R1 domain:      <s,p,o>, C in domains[p]                => <s, rdf:type, C>
///   R2 range:       <s,p,o>, C in ranges[p], o not literal  => <o, rdf:type, C>
///   R3 subsumption: <x, rdf:type, C>, C subclass-of D       => <x, rdf:type, D>
std::vector<Triple> infer_rdfs_step(const Graph& g, const Ontology& ontology);
std::vector<DerivedTriple> infer_rdfs_step_tagged(const Graph& g,
                                                  const Ontology& ontology);

/// One cardinality pass computed against the partition as of call time; the
/// caller applies the merges. Groups objects by canonical subject; when a
/// group exceeds the bound, the smallest non-literal object classes (by
/// least member term) are merged until the bound holds, and groups that
/// literals keep over the bound are reported as inconsistencies.
struct CardinalityStep {
  std::vector<std::pair<TermId, TermId>> merge_ids;
  std::vector<std::pair<Term, Term>> merges;  // same pairs, least-member terms
  std::vector<Inconsistency> inconsistencies;

  bool has_merges() const noexcept { return !merge_ids.empty(); }
};
CardinalityStep infer_cardinality_step(const Graph& g,
                                       const Ontology& ontology,
                                       const SameAsPartition& partition);

struct SaturationOptions {
  std::size_t iteration_limit = 10000;
};

struct SaturationOutcome {
  SameAsPartition partition;
  InferenceResult result;
};

/// Alternates RDFS and cardinality steps to fixpoint, inserting derived
/// triples into g and applying merges. Terminates because no rule
/// introduces new terms; Error{iteration_limit_exceeded} guards against
/// bugs, not data.
SaturationOutcome saturate(Graph& g, const Ontology& ontology,
                           const SaturationOptions& options = {});

}  // namespace semstore
