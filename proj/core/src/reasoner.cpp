#include "semstore/reasoner.hpp"

#include <algorithm>
#include <charconv>
#include <deque>

namespace semstore {

namespace {

// Least member term of a class; a merge-order-independent key and the
// display form used in reports.
Term class_term(const SameAsPartition& part, const TermDictionary& dict,
                TermId id) {
  auto ids = part.members(id);
  const Term* best = &dict.term(ids.front());
  for (TermId m : ids) {
    const Term& t = dict.term(m);
    if (t < *best) best = &t;
  }
  return *best;
}

}  // namespace

std::string_view to_string(InferenceRule rule) {
  switch (rule) {
    case InferenceRule::domain: return "domain";
    case InferenceRule::range: return "range";
    case InferenceRule::subsumption: return "subsumption";
  }
  return "?";
}

bool Ontology::has_subclass_edge(const Iri& sub, const Iri& super) const {
  auto it = subclass_edges.find(sub);
  return it != subclass_edges.end() && it->second.contains(super);
}

std::set<Iri> Ontology::superclasses_of(const Iri& cls) const {
  std::set<Iri> seen{cls};
  std::deque<Iri> frontier{cls};
  while (!frontier.empty()) {
    Iri current = std::move(frontier.front());
    frontier.pop_front();
    auto it = subclass_edges.find(current);
    if (it == subclass_edges.end()) continue;
    for (const Iri& super : it->second) {
      if (seen.insert(super).second) frontier.push_back(super);
    }
  }
  return seen;
}

Ontology extract_ontology(const Graph& g) {
  Ontology ontology;
  const TermDictionary& dict = g.dict();

  auto scan = [&](const Iri& predicate, auto&& handle) {
    auto pid = dict.find(Term(predicate));
    if (!pid) return;
    for (IdTriple t :
         g.match_ids({std::nullopt, *pid, std::nullopt})) {
      handle(dict.term(t[0]), dict.term(t[2]));
    }
  };

  scan(vocab::rdfs_subclass_of(), [&](const Term& s, const Term& o) {
    if (s.is_iri() && o.is_iri()) {
      ontology.subclass_edges[s.iri()].insert(o.iri());
    }
  });
  scan(vocab::rdfs_domain(), [&](const Term& s, const Term& o) {
    if (s.is_iri() && o.is_iri()) ontology.domains[s.iri()].insert(o.iri());
  });
  scan(vocab::rdfs_range(), [&](const Term& s, const Term& o) {
    if (s.is_iri() && o.is_iri()) ontology.ranges[s.iri()].insert(o.iri());
  });

  auto cardinality = [&](const Term& s, const Term& o) {
    if (!s.is_iri()) return;  // restrictions attach to property IRIs
    if (!o.is_literal() || o.literal().datatype() != Datatype::integer ||
        o.literal().lexical().starts_with('-')) {
      throw Error(Errc::malformed_restriction,
                  "cardinality on " + s.iri().text() +
                      " must be a non-negative integer literal");
    }
    const std::string& lex = o.literal().lexical();
    std::uint64_t value = 0;
    auto [ptr, ec] =
        std::from_chars(lex.data(), lex.data() + lex.size(), value);
    if (ec != std::errc() || ptr != lex.data() + lex.size()) {
      throw Error(Errc::malformed_restriction,
                  "cardinality value " + lex + " out of range");
    }
    auto [it, inserted] = ontology.max_cardinality.emplace(s.iri(), value);
    if (!inserted) it->second = std::min(it->second, value);
  };
  scan(vocab::owl_max_cardinality(), cardinality);
  scan(vocab::owl_cardinality(), cardinality);
  return ontology;
}

TermId SameAsPartition::find(TermId id) const {
  // Pure walk: concurrent readers may share a partition, so lookups never
  // compress paths. merge() keeps chains flat instead.
  while (id < parent_.size() && parent_[id] != id) id = parent_[id];
  return id;
}

bool SameAsPartition::merge(TermId a, TermId b) {
  TermId top = std::max(a, b);
  if (top >= parent_.size()) {
    std::size_t old = parent_.size();
    parent_.resize(top + 1);
    for (std::size_t i = old; i < parent_.size(); ++i) {
      parent_[i] = static_cast<TermId>(i);
    }
  }
  TermId ra = find(a);
  TermId rb = find(b);
  if (ra == rb) return false;
  // Smallest interned id becomes the canonical representative.
  TermId root = std::min(ra, rb);
  TermId child = std::max(ra, rb);
  parent_[child] = root;
  // re-point every member of both classes directly at the new root
  auto flatten = [this, root](TermId r) {
    auto it = members_.find(r);
    if (it == members_.end()) return;
    for (TermId m : it->second) parent_[m] = root;
  };
  flatten(ra);
  flatten(rb);

  auto take = [this](TermId r) {
    auto it = members_.find(r);
    if (it == members_.end()) return std::vector<TermId>{r};
    std::vector<TermId> v = std::move(it->second);
    members_.erase(it);
    return v;
  };
  std::vector<TermId> merged = take(root);
  std::vector<TermId> other = take(child);
  merged.insert(merged.end(), other.begin(), other.end());
  std::sort(merged.begin(), merged.end());
  members_[root] = std::move(merged);
  ++merge_count_;
  return true;
}

std::vector<TermId> SameAsPartition::members(TermId id) const {
  TermId root = find(id);
  auto it = members_.find(root);
  if (it == members_.end()) return {root};
  return it->second;
}

std::vector<std::vector<TermId>> SameAsPartition::classes() const {
  std::vector<std::vector<TermId>> out;
  out.reserve(members_.size());
  for (const auto& [root, ids] : members_) out.push_back(ids);
  return out;
}

Term canonical(const SameAsPartition& partition, const TermDictionary& dict,
               const Term& t) {
  auto id = dict.find(t);
  if (!id) return t;
  return dict.term(partition.find(*id));
}

std::size_t InferenceResult::count(InferenceRule rule) const {
  return static_cast<std::size_t>(
      std::count_if(derived.begin(), derived.end(),
                    [rule](const DerivedTriple& d) { return d.rule == rule; }));
}

std::vector<DerivedTriple> infer_rdfs_step_tagged(const Graph& g,
                                                  const Ontology& ontology) {
  std::vector<DerivedTriple> out;
  std::set<Triple> seen;
  const Term type_term(vocab::rdf_type());
  auto emit = [&](Triple t, InferenceRule rule) {
    if (g.contains(t)) return;
    if (!seen.insert(t).second) return;
    out.push_back({std::move(t), rule});
  };
  const TermDictionary& dict = g.dict();

  for (const auto& [property, classes] : ontology.domains) {
    auto pid = dict.find(Term(property));
    if (!pid) continue;
    for (IdTriple t : g.match_ids({std::nullopt, *pid, std::nullopt})) {
      for (const Iri& cls : classes) {
        emit(Triple(dict.term(t[0]), vocab::rdf_type(), Term(cls)),
             InferenceRule::domain);
      }
    }
  }
  for (const auto& [property, classes] : ontology.ranges) {
    auto pid = dict.find(Term(property));
    if (!pid) continue;
    for (IdTriple t : g.match_ids({std::nullopt, *pid, std::nullopt})) {
      const Term& object = dict.term(t[2]);
      if (object.is_literal()) continue;
      for (const Iri& cls : classes) {
        emit(Triple(object, vocab::rdf_type(), Term(cls)),
             InferenceRule::range);
      }
    }
  }
  if (auto tid = dict.find(type_term)) {
    for (IdTriple t : g.match_ids({std::nullopt, *tid, std::nullopt})) {
      const Term& cls = dict.term(t[2]);
      if (!cls.is_iri()) continue;
      for (const Iri& super : ontology.superclasses_of(cls.iri())) {
        if (super == cls.iri()) continue;
        emit(Triple(dict.term(t[0]), vocab::rdf_type(), Term(super)),
             InferenceRule::subsumption);
      }
    }
  }
  return out;
}

std::vector<Triple> infer_rdfs_step(const Graph& g, const Ontology& ontology) {
  std::vector<Triple> out;
  for (DerivedTriple& d : infer_rdfs_step_tagged(g, ontology)) {
    out.push_back(std::move(d.triple));
  }
  return out;
}

CardinalityStep infer_cardinality_step(const Graph& g,
                                       const Ontology& ontology,
                                       const SameAsPartition& partition) {
  CardinalityStep step;
  const TermDictionary& dict = g.dict();

  for (const auto& [property, limit] : ontology.max_cardinality) {
    auto pid = dict.find(Term(property));
    if (!pid) continue;

    // object classes per canonical subject
    std::map<TermId, std::set<TermId>> groups;
    for (IdTriple t : g.match_ids({std::nullopt, *pid, std::nullopt})) {
      groups[partition.find(t[0])].insert(partition.find(t[2]));
    }

    // Group order must not depend on interning order.
    std::vector<std::pair<Term, const std::set<TermId>*>> ordered;
    ordered.reserve(groups.size());
    for (const auto& [subject_root, objects] : groups) {
      ordered.emplace_back(class_term(partition, dict, subject_root),
                           &objects);
    }
    std::sort(ordered.begin(), ordered.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });

    for (const auto& [subject_term, objects] : ordered) {
      if (objects->size() <= limit) continue;

      std::vector<std::pair<Term, TermId>> resources;
      std::vector<Term> literals;
      for (TermId root : *objects) {
        const Term key = class_term(partition, dict, root);
        if (dict.term(root).is_literal()) {
          literals.push_back(key);
        } else {
          resources.emplace_back(key, root);
        }
      }
      std::sort(resources.begin(), resources.end(),
                [](const auto& a, const auto& b) { return a.first < b.first; });
      std::sort(literals.begin(), literals.end());

      const std::size_t needed = objects->size() - limit;
      if (resources.size() >= needed + 1) {
        for (std::size_t i = 1; i <= needed; ++i) {
          step.merge_ids.emplace_back(resources[0].second,
                                      resources[i].second);
          step.merges.emplace_back(resources[0].first, resources[i].first);
        }
        continue;
      }
      // Literals keep the group over the bound: merge what can be merged
      // and record the violation.
      for (std::size_t i = 1; i < resources.size(); ++i) {
        step.merge_ids.emplace_back(resources[0].second, resources[i].second);
        step.merges.emplace_back(resources[0].first, resources[i].first);
      }
      std::vector<Term> remaining;
      if (!resources.empty()) remaining.push_back(resources[0].first);
      remaining.insert(remaining.end(), literals.begin(), literals.end());
      std::sort(remaining.begin(), remaining.end());
      step.inconsistencies.push_back(
          Inconsistency{subject_term, property, limit, std::move(remaining)});
    }
  }
  return step;
}

SaturationOutcome saturate(Graph& g, const Ontology& ontology,
                           const SaturationOptions& options) {
  SaturationOutcome out;
  std::vector<Inconsistency> final_inconsistencies;
  for (std::size_t iteration = 0;; ++iteration) {
    if (iteration > options.iteration_limit) {
      throw Error(Errc::iteration_limit_exceeded,
                  "no fixpoint after " +
                      std::to_string(options.iteration_limit) + " iterations");
    }
    bool progress = false;

    auto derived = infer_rdfs_step_tagged(g, ontology);
    for (DerivedTriple& d : derived) {
      if (g.insert_derived(d.triple)) {
        out.result.derived.push_back(std::move(d));
        progress = true;
      }
    }

    CardinalityStep card = infer_cardinality_step(g, ontology, out.partition);
    for (std::size_t i = 0; i < card.merge_ids.size(); ++i) {
      if (out.partition.merge(card.merge_ids[i].first,
                              card.merge_ids[i].second)) {
        out.result.merges.push_back(std::move(card.merges[i]));
        progress = true;
      }
    }
    final_inconsistencies = std::move(card.inconsistencies);

    if (!progress) break;
  }
  out.result.inconsistencies = std::move(final_inconsistencies);
  return out;
}

}  // namespace semstore
