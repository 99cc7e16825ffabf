#include "semstore/store.hpp"

#include <algorithm>
#include <limits>

namespace semstore {

namespace {

constexpr TermId kMaxId = std::numeric_limits<TermId>::max();

IdTriple rotate_pos(const IdTriple& spo) { return {spo[1], spo[2], spo[0]}; }
IdTriple rotate_osp(const IdTriple& spo) { return {spo[2], spo[0], spo[1]}; }

// Inclusive key bounds for the block of keys sharing the first `bound`
// slots; pair with lower_bound(lo) / upper_bound(hi).
std::pair<IdTriple, IdTriple> prefix_bounds(const IdTriple& key, int bound) {
  IdTriple lo = {0, 0, 0};
  IdTriple hi = {kMaxId, kMaxId, kMaxId};
  for (int i = 0; i < bound; ++i) lo[i] = hi[i] = key[i];
  return {lo, hi};
}

}  // namespace

std::string_view to_string(PlanIndex index) {
  switch (index) {
    case PlanIndex::spo: return "spo";
    case PlanIndex::pos: return "pos";
    case PlanIndex::osp: return "osp";
    case PlanIndex::full_scan: return "scan";
  }
  return "?";
}

TermId TermDictionary::intern(const Term& term) {
  auto it = ids_.find(term);
  if (it != ids_.end()) return it->second;
  TermId id = static_cast<TermId>(terms_.size());
  terms_.push_back(term);
  ids_.emplace(term, id);
  return id;
}

std::optional<TermId> TermDictionary::find(const Term& term) const {
  auto it = ids_.find(term);
  if (it == ids_.end()) return std::nullopt;
  return it->second;
}

std::size_t IdMatchRange::count() const {
  if (!filter_) return static_cast<std::size_t>(std::distance(lo_, hi_));
  std::size_t n = 0;
  for (auto it = begin(); it != end(); ++it) ++n;
  return n;
}

Triple MatchRange::iterator::operator*() const { return graph_->decode(*it_); }

IdTriple Graph::intern_triple(const Triple& t) {
  return {dict_.intern(t.subject()), dict_.intern(Term(t.predicate())),
          dict_.intern(t.object())};
}

std::optional<IdTriple> Graph::find_ids(const Triple& t) const {
  auto s = dict_.find(t.subject());
  if (!s) return std::nullopt;
  auto p = dict_.find(Term(t.predicate()));
  if (!p) return std::nullopt;
  auto o = dict_.find(t.object());
  if (!o) return std::nullopt;
  return IdTriple{*s, *p, *o};
}

bool Graph::insert(const Triple& t) {
  IdTriple key = intern_triple(t);
  bool added = spo_.insert(key).second;
  if (added) {
    pos_.insert(rotate_pos(key));
    osp_.insert(rotate_osp(key));
  } else {
    derived_.erase(key);  // asserting an inferred triple upgrades its tag
  }
  return added;
}

bool Graph::insert_derived(const Triple& t) {
  IdTriple key = intern_triple(t);
  bool added = spo_.insert(key).second;
  if (added) {
    pos_.insert(rotate_pos(key));
    osp_.insert(rotate_osp(key));
    derived_.insert(key);
  }
  return added;
}

bool Graph::remove(const Triple& t) {
  auto key = find_ids(t);
  if (!key || spo_.erase(*key) == 0) return false;
  pos_.erase(rotate_pos(*key));
  osp_.erase(rotate_osp(*key));
  derived_.erase(*key);
  return true;
}

bool Graph::contains(const Triple& t) const {
  auto key = find_ids(t);
  return key && spo_.contains(*key);
}

bool Graph::is_derived(const Triple& t) const {
  auto key = find_ids(t);
  return key && derived_.contains(*key);
}

PlanIndex Graph::select_index(bool s_bound, bool p_bound, bool o_bound) {
  if (s_bound) return PlanIndex::spo;
  if (p_bound) return PlanIndex::pos;
  if (o_bound) return PlanIndex::osp;
  return PlanIndex::full_scan;
}

IdMatchRange Graph::match_ids(const IdPattern& pattern) const {
  const bool s = pattern.subject.has_value();
  const bool p = pattern.predicate.has_value();
  const bool o = pattern.object.has_value();
  PlanIndex index = select_index(s, p, o);

  switch (index) {
    case PlanIndex::spo: {
      // s, (s,p), (s,p,o) prefixes; (s,?,o) filters on object.
      IdTriple key = {*pattern.subject, p ? *pattern.predicate : 0,
                      p && o ? *pattern.object : 0};
      int bound = 1 + (p ? 1 + (o ? 1 : 0) : 0);
      auto [lo, hi] = prefix_bounds(key, bound);
      std::optional<TermId> filter =
          (!p && o) ? pattern.object : std::nullopt;
      return IdMatchRange(spo_.lower_bound(lo), spo_.upper_bound(hi), index,
                          filter);
    }
    case PlanIndex::pos: {
      IdTriple key = {*pattern.predicate, o ? *pattern.object : 0, 0};
      auto [lo, hi] = prefix_bounds(key, o ? 2 : 1);
      return IdMatchRange(pos_.lower_bound(lo), pos_.upper_bound(hi), index,
                          std::nullopt);
    }
    case PlanIndex::osp: {
      IdTriple key = {*pattern.object, 0, 0};
      auto [lo, hi] = prefix_bounds(key, 1);
      return IdMatchRange(osp_.lower_bound(lo), osp_.upper_bound(hi), index,
                          std::nullopt);
    }
    case PlanIndex::full_scan:
      return IdMatchRange(spo_.begin(), spo_.end(), index, std::nullopt);
  }
  return {};
}

std::optional<IdPattern> Graph::lower(const TriplePattern& pattern) const {
  IdPattern ids;
  auto lower_slot = [this](const std::optional<Term>& term,
                           std::optional<TermId>& out) {
    if (!term) return true;
    auto id = dict_.find(*term);
    if (!id) return false;
    out = *id;
    return true;
  };
  if (!lower_slot(pattern.subject, ids.subject)) return std::nullopt;
  if (!lower_slot(pattern.predicate, ids.predicate)) return std::nullopt;
  if (!lower_slot(pattern.object, ids.object)) return std::nullopt;
  return ids;
}

MatchRange Graph::match(const TriplePattern& pattern) const {
  auto ids = lower(pattern);
  if (!ids) return MatchRange(IdMatchRange(), this);
  return MatchRange(match_ids(*ids), this);
}

std::vector<Triple> Graph::match_vector(const TriplePattern& pattern) const {
  std::vector<Triple> out;
  for (const Triple& t : match(pattern)) out.push_back(t);
  return out;
}

std::size_t Graph::count(const TriplePattern& pattern) const {
  auto ids = lower(pattern);
  if (!ids) return 0;
  return count_ids(*ids);
}

std::size_t Graph::count_ids(const IdPattern& pattern) const {
  return match_ids(pattern).count();
}

bool Graph::check_index_consistency() const {
  if (pos_.size() != spo_.size() || osp_.size() != spo_.size()) return false;
  for (const IdTriple& key : spo_) {
    if (!pos_.contains(rotate_pos(key))) return false;
    if (!osp_.contains(rotate_osp(key))) return false;
  }
  for (const IdTriple& key : derived_) {
    if (!spo_.contains(key)) return false;
  }
  return true;
}

bool Graph::validate_membership() const {
  for (const IdTriple& key : spo_) {
    for (TermId id : key) {
      if (id >= dict_.size()) return false;
    }
    if (dict_.term(key[0]).is_literal()) return false;
    if (!dict_.term(key[1]).is_iri()) return false;
  }
  return true;
}

Triple Graph::decode(const IdTriple& ids) const {
  return Triple(dict_.term(ids[0]), dict_.term(ids[1]).iri(),
                dict_.term(ids[2]));
}

}  // namespace semstore
