#include "support/reason_oracle.hpp"

#include <algorithm>
#include <cassert>
#include <deque>
#include <map>

namespace semstore::testsupport {

namespace {

// Union-find keyed by Term values.
struct TermPartition {
  std::map<Term, Term> parent;

  Term find(const Term& t) const {
    auto it = parent.find(t);
    if (it == parent.end() || it->second == t) return t;
    return find(it->second);
  }
  bool merge(const Term& a, const Term& b) {
    Term ra = find(a);
    Term rb = find(b);
    if (ra == rb) return false;
    // smaller term becomes the root so class keys stay stable
    if (rb < ra) std::swap(ra, rb);
    parent.insert_or_assign(rb, ra);
    parent.try_emplace(ra, ra);
    return true;
  }
  std::set<std::set<Term>> classes() const {
    std::map<Term, std::set<Term>> by_root;
    for (const auto& [t, _] : parent) by_root[find(t)].insert(t);
    std::set<std::set<Term>> out;
    for (auto& [root, members] : by_root) {
      if (members.size() >= 2) out.insert(members);
    }
    return out;
  }
};

struct OracleOntology {
  std::map<Iri, std::set<Iri>> sub, dom, rng;
  std::map<Iri, std::uint64_t> card;

  std::set<Iri> supers(const Iri& cls) const {
    std::set<Iri> seen{cls};
    std::deque<Iri> frontier{cls};
    while (!frontier.empty()) {
      Iri cur = frontier.front();
      frontier.pop_front();
      auto it = sub.find(cur);
      if (it == sub.end()) continue;
      for (const Iri& s : it->second) {
        if (seen.insert(s).second) frontier.push_back(s);
      }
    }
    return seen;
  }
};

OracleOntology extract(const std::set<Triple>& triples) {
  OracleOntology o;
  for (const Triple& t : triples) {
    const Iri& p = t.predicate();
    if (p == vocab::rdfs_subclass_of()) {
      if (t.subject().is_iri() && t.object().is_iri()) {
        o.sub[t.subject().iri()].insert(t.object().iri());
      }
    } else if (p == vocab::rdfs_domain()) {
      if (t.subject().is_iri() && t.object().is_iri()) {
        o.dom[t.subject().iri()].insert(t.object().iri());
      }
    } else if (p == vocab::rdfs_range()) {
      if (t.subject().is_iri() && t.object().is_iri()) {
        o.rng[t.subject().iri()].insert(t.object().iri());
      }
    } else if (p == vocab::owl_max_cardinality() ||
               p == vocab::owl_cardinality()) {
      if (!t.subject().is_iri()) continue;
      assert(t.object().is_literal() &&
             t.object().literal().datatype() == Datatype::integer);
      std::uint64_t value = std::stoull(t.object().literal().lexical());
      auto [it, inserted] = o.card.emplace(t.subject().iri(), value);
      if (!inserted) it->second = std::min(it->second, value);
    }
  }
  return o;
}

// One round of R1/R2/R3 over the current set; true when a triple was added.
bool rdfs_round(std::set<Triple>& triples, const OracleOntology& o) {
  std::vector<Triple> fresh;
  for (const Triple& t : triples) {
    if (auto it = o.dom.find(t.predicate()); it != o.dom.end()) {
      for (const Iri& cls : it->second) {
        fresh.emplace_back(t.subject(), vocab::rdf_type(), Term(cls));
      }
    }
    if (auto it = o.rng.find(t.predicate()); it != o.rng.end()) {
      if (!t.object().is_literal()) {
        for (const Iri& cls : it->second) {
          fresh.emplace_back(t.object(), vocab::rdf_type(), Term(cls));
        }
      }
    }
    if (t.predicate() == vocab::rdf_type() && t.object().is_iri()) {
      for (const Iri& super : o.supers(t.object().iri())) {
        fresh.emplace_back(t.subject(), vocab::rdf_type(), Term(super));
      }
    }
  }
  bool changed = false;
  for (Triple& t : fresh) changed |= triples.insert(std::move(t)).second;
  return changed;
}

// Least member of a class under the partition.
Term class_key(const TermPartition& part, const std::set<Term>& universe,
               const Term& of) {
  Term root = part.find(of);
  const Term* best = &of;
  for (const Term& t : universe) {
    if (part.find(t) == root && t < *best) best = &t;
  }
  return *best;
}

// One cardinality pass: all decisions taken against the partition as given,
// then applied. Returns {changed, violation count}.
std::pair<bool, std::size_t> cardinality_pass(const std::set<Triple>& triples,
                                              const OracleOntology& o,
                                              TermPartition& part,
                                              const std::set<Term>& universe) {
  std::vector<std::pair<Term, Term>> merges;
  std::size_t violations = 0;
  for (const auto& [property, limit] : o.card) {
    std::map<Term, std::set<Term>> groups;  // canonical subject -> objects
    for (const Triple& t : triples) {
      if (t.predicate() == property) {
        groups[part.find(t.subject())].insert(part.find(t.object()));
      }
    }
    for (const auto& [subject, objects] : groups) {
      if (objects.size() <= limit) continue;
      std::vector<Term> resources, literals;
      for (const Term& root : objects) {
        (root.is_literal() ? literals : resources)
            .push_back(class_key(part, universe, root));
      }
      std::sort(resources.begin(), resources.end());
      std::size_t needed = objects.size() - limit;
      std::size_t to_merge =
          resources.size() >= needed + 1 ? needed + 1 : resources.size();
      for (std::size_t i = 1; i < to_merge; ++i) {
        merges.emplace_back(resources[0], resources[i]);
      }
      if (resources.size() < needed + 1) ++violations;
    }
  }
  bool changed = false;
  for (const auto& [a, b] : merges) changed |= part.merge(a, b);
  return {changed, violations};
}

}  // namespace

OracleOutcome oracle_saturate(const std::vector<Triple>& input) {
  OracleOutcome out;
  out.triples.insert(input.begin(), input.end());
  OracleOntology ontology = extract(out.triples);
  TermPartition part;

  std::set<Term> universe;
  for (const Triple& t : out.triples) {
    universe.insert(t.subject());
    universe.insert(Term(t.predicate()));
    universe.insert(t.object());
  }
  universe.insert(Term(vocab::rdf_type()));
  for (const auto& [cls, supers] : ontology.sub) {
    universe.insert(Term(cls));
    for (const Iri& s : supers) universe.insert(Term(s));
  }
  for (const auto& m : {ontology.dom, ontology.rng}) {
    for (const auto& [p, classes] : m) {
      for (const Iri& c : classes) universe.insert(Term(c));
    }
  }

  std::size_t violations = 0;
  while (true) {
    bool changed = rdfs_round(out.triples, ontology);
    auto [card_changed, card_violations] =
        cardinality_pass(out.triples, ontology, part, universe);
    violations = card_violations;
    if (!changed && !card_changed) break;
  }
  out.classes = part.classes();
  out.inconsistency_count = violations;
  return out;
}

}  // namespace semstore::testsupport
