#pragma once

// In-memory triple set with three covering indexes (SPO, POS, OSP) over
// interned term ids. Enumeration order is interned-id lexicographic, so a
// fixed insertion sequence always enumerates identically.
//
// Concurrency: one writer at a time; any number of readers may run against
// a graph that is not being mutated. Mutating while a match stream is open
// invalidates the stream.

#include <array>
#include <cstdint>
#include <optional>
#include <set>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "semstore/model.hpp"

namespace semstore {

using TermId = std::uint32_t;

/// Interned triple in (subject, predicate, object) slot order.
using IdTriple = std::array<TermId, 3>;

struct IdPattern {
  std::optional<TermId> subject;
  std::optional<TermId> predicate;
  std::optional<TermId> object;
};

enum class PlanIndex : std::uint8_t { spo, pos, osp, full_scan };
std::string_view to_string(PlanIndex index);

/// Bidirectional Term <-> dense id mapping. Ids are assigned in first-seen
/// order and never reused.
class TermDictionary {
 public:
  TermId intern(const Term& term);
  std::optional<TermId> find(const Term& term) const;
  const Term& term(TermId id) const { return terms_[id]; }
  std::size_t size() const noexcept { return terms_.size(); }

 private:
  std::vector<Term> terms_;
  std::unordered_map<Term, TermId, TermHash> ids_;
};

class Graph;

/// Lazy stream over one index range, yielding interned triples in index
/// order. The (subject, object)-bound case scans the subject range of SPO
/// and filters on object.
class IdMatchRange {
 public:
  using SetIter = std::set<IdTriple>::const_iterator;

  class iterator {
   public:
    using value_type = IdTriple;
    using difference_type = std::ptrdiff_t;
    using iterator_category = std::forward_iterator_tag;

    iterator() = default;
    iterator(SetIter it, SetIter end, PlanIndex rotation,
             std::optional<TermId> object_filter)
        : it_(it), end_(end), rotation_(rotation), filter_(object_filter) {
      skip_filtered();
    }

    IdTriple operator*() const { return decode(*it_); }
    iterator& operator++() {
      ++it_;
      skip_filtered();
      return *this;
    }
    iterator operator++(int) {
      iterator copy = *this;
      ++*this;
      return copy;
    }
    friend bool operator==(const iterator& a, const iterator& b) {
      return a.it_ == b.it_;
    }

   private:
    IdTriple decode(const IdTriple& key) const {
      switch (rotation_) {
        case PlanIndex::pos: return {key[2], key[0], key[1]};
        case PlanIndex::osp: return {key[1], key[2], key[0]};
        default: return key;
      }
    }
    void skip_filtered() {
      if (!filter_) return;
      while (it_ != end_ && decode(*it_)[2] != *filter_) ++it_;
    }

    SetIter it_{};
    SetIter end_{};
    PlanIndex rotation_ = PlanIndex::spo;
    std::optional<TermId> filter_;
  };

  IdMatchRange() = default;
  IdMatchRange(SetIter lo, SetIter hi, PlanIndex index,
               std::optional<TermId> object_filter)
      : lo_(lo), hi_(hi), index_(index), filter_(object_filter) {}

  iterator begin() const { return iterator(lo_, hi_, rotation(), filter_); }
  iterator end() const { return iterator(hi_, hi_, rotation(), filter_); }
  bool empty() const { return begin() == end(); }
  /// Range size from index bounds; only the filtered case walks entries.
  std::size_t count() const;
  PlanIndex index_used() const { return index_; }

 private:
  PlanIndex rotation() const {
    return index_ == PlanIndex::full_scan ? PlanIndex::spo : index_;
  }

  SetIter lo_{};
  SetIter hi_{};
  PlanIndex index_ = PlanIndex::spo;
  std::optional<TermId> filter_;
};

/// Lazy stream of decoded Triples.
class MatchRange {
 public:
  class iterator {
   public:
    using value_type = Triple;
    using difference_type = std::ptrdiff_t;
    using iterator_category = std::input_iterator_tag;

    iterator() = default;
    iterator(IdMatchRange::iterator it, const Graph* graph)
        : it_(it), graph_(graph) {}

    Triple operator*() const;
    iterator& operator++() {
      ++it_;
      return *this;
    }
    iterator operator++(int) {
      iterator copy = *this;
      ++*this;
      return copy;
    }
    friend bool operator==(const iterator& a, const iterator& b) {
      return a.it_ == b.it_;
    }

   private:
    IdMatchRange::iterator it_;
    const Graph* graph_ = nullptr;
  };

  MatchRange() = default;
  MatchRange(IdMatchRange ids, const Graph* graph)
      : ids_(ids), graph_(graph) {}

  iterator begin() const { return iterator(ids_.begin(), graph_); }
  iterator end() const { return iterator(ids_.end(), graph_); }
  bool empty() const { return ids_.empty(); }
  PlanIndex index_used() const { return ids_.index_used(); }

 private:
  IdMatchRange ids_;
  const Graph* graph_ = nullptr;
};

class Graph {
 public:
  /// Set-semantics insert; true iff the triple was newly added.
  bool insert(const Triple& t);
  /// Insert carrying the derived tag. An already-asserted triple keeps its
  /// asserted tag; returns true iff newly added.
  bool insert_derived(const Triple& t);
  /// True iff the triple was present; removes it from all indexes.
  bool remove(const Triple& t);

  bool contains(const Triple& t) const;
  bool is_derived(const Triple& t) const;

  std::size_t size() const noexcept { return spo_.size(); }
  bool empty() const noexcept { return spo_.empty(); }
  std::size_t derived_count() const noexcept { return derived_.size(); }
  std::size_t asserted_count() const noexcept {
    return spo_.size() - derived_.size();
  }

  /// Triples unifying with the pattern, in index order. A pattern bound to
  /// a term the graph has never seen yields an empty stream.
  MatchRange match(const TriplePattern& pattern) const;
  std::vector<Triple> match_vector(const TriplePattern& pattern) const;
  IdMatchRange match_ids(const IdPattern& pattern) const;

  /// |match(pattern)| from index range sizes, without materializing.
  std::size_t count(const TriplePattern& pattern) const;
  std::size_t count_ids(const IdPattern& pattern) const;

  /// Interns the pattern's bound terms; nullopt when a bound term is not in
  /// the dictionary (no triple can match).
  std::optional<IdPattern> lower(const TriplePattern& pattern) const;

  static PlanIndex select_index(bool s_bound, bool p_bound, bool o_bound);

  /// True iff all three indexes enumerate identical triple sets.
  bool check_index_consistency() const;
  /// Re-checks subject/predicate/object kind membership for every stored
  /// triple.
  bool validate_membership() const;

  Triple decode(const IdTriple& ids) const;
  const std::set<IdTriple>& id_triples() const noexcept { return spo_; }
  const TermDictionary& dict() const noexcept { return dict_; }

 private:
  friend struct GraphTestAccess;

  IdTriple intern_triple(const Triple& t);
  std::optional<IdTriple> find_ids(const Triple& t) const;

  TermDictionary dict_;
  std::set<IdTriple> spo_;  // (s, p, o)
  std::set<IdTriple> pos_;  // (p, o, s)
  std::set<IdTriple> osp_;  // (o, s, p)
  std::set<IdTriple> derived_;  // subset of spo_, keys in (s, p, o) order
};

}  // namespace semstore
