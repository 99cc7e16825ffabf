#include "semstore/query.hpp"

#include <algorithm>
#include <functional>
#include <unordered_map>

#include "semstore/syntax.hpp"

namespace semstore {

namespace {

// --- query text scanner ---

struct Scanner {
  std::string_view s;
  std::size_t pos = 0;

  void skip_ws() {
    while (pos < s.size() && (s[pos] == ' ' || s[pos] == '\t' ||
                              s[pos] == '\n' || s[pos] == '\r')) {
      ++pos;
    }
  }
  bool at_end() {
    skip_ws();
    return pos >= s.size();
  }
  char peek() const { return pos < s.size() ? s[pos] : '\0'; }

  std::pair<int, int> position(std::size_t at) const {
    int line = 1, col = 1;
    for (std::size_t i = 0; i < at && i < s.size(); ++i) {
      if (s[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    return {line, col};
  }

  [[noreturn]] void fail(std::string_view why) const { fail(why, pos); }
  [[noreturn]] void fail(std::string_view why, std::size_t at) const {
    auto [line, col] = position(at);
    throw Error(Errc::syntax_error,
                std::string(why) + " at " + std::to_string(line) + ":" +
                    std::to_string(col),
                line);
  }

  std::string_view word() {
    skip_ws();
    std::size_t start = pos;
    while (pos < s.size() && std::isalpha(static_cast<unsigned char>(s[pos]))) {
      ++pos;
    }
    return s.substr(start, pos - start);
  }

  void expect_keyword(std::string_view keyword) {
    skip_ws();
    std::size_t at = pos;
    if (word() != keyword) {
      fail("expected " + std::string(keyword), at);
    }
  }

  void expect_char(char c) {
    skip_ws();
    if (peek() != c) fail(std::string("expected '") + c + "'");
    ++pos;
  }

  Variable variable() {
    skip_ws();
    std::size_t at = pos;
    if (peek() != '?') fail("expected variable", at);
    ++pos;
    std::size_t start = pos;
    while (pos < s.size() && std::isalnum(static_cast<unsigned char>(s[pos]))) {
      ++pos;
    }
    if (pos == start) fail("empty variable name", at);
    return Variable{std::string(s.substr(start, pos - start))};
  }

  QuerySlot term(const PrefixMap& prefixes, bool literal_allowed) {
    skip_ws();
    std::size_t at = pos;
    char c = peek();
    if (c == '?') return variable();
    if (c == '<') {
      auto close = s.find('>', pos);
      if (close == std::string_view::npos) fail("unterminated '<'", at);
      auto text = s.substr(pos + 1, close - pos - 1);
      pos = close + 1;
      try {
        return QuerySlot(Term(resolve_curie_or_iri(text, prefixes)));
      } catch (const Error& e) {
        if (e.code() == Errc::unknown_prefix) throw;
        fail(e.what(), at);
      }
    }
    if (c == '"') {
      if (!literal_allowed) {
        fail("literal not allowed in subject or predicate position", at);
      }
      try {
        return QuerySlot(parse_literal_token(s, pos, prefixes));
      } catch (const Error& e) {
        if (e.code() == Errc::unknown_prefix) throw;
        fail(e.what(), at);
      }
    }
    fail("expected ?variable, <iri>, or \"literal\"", at);
  }
};

bool slot_is_var(const QuerySlot& slot) {
  return std::holds_alternative<Variable>(slot);
}

template <typename Fn>
void for_each_variable(const QueryPattern& pattern, Fn&& fn) {
  for (const QuerySlot* slot :
       {&pattern.subject, &pattern.predicate, &pattern.object}) {
    if (slot_is_var(*slot)) fn(std::get<Variable>(*slot));
  }
}

// --- evaluation ---

struct VarTable {
  std::unordered_map<std::string, std::size_t> index;
  std::size_t size() const { return index.size(); }

  std::size_t slot(const Variable& v) {
    auto [it, _] = index.emplace(v.name, index.size());
    return it->second;
  }
  std::size_t slot(const Variable& v) const { return index.at(v.name); }
};

struct IndexEvaluator {
  const Query& query;
  const Graph& g;
  const SameAsPartition* partition;
  const Plan plan;
  VarTable vars;
  std::vector<std::optional<TermId>> bound;
  BindingTable table;

  IndexEvaluator(const Query& q, const Graph& graph,
                 const SameAsPartition* part)
      : query(q), g(graph), partition(part), plan(make_plan(q, graph)),
        table(q.select) {
    for (const QueryPattern& p : query.where) {
      for_each_variable(p, [this](const Variable& v) { vars.slot(v); });
    }
    bound.resize(vars.size());
  }

  TermId canon(TermId id) const { return partition ? partition->find(id) : id; }

  // Candidate ids a bound slot may take in stored triples: the whole
  // equivalence class when a partition is active.
  std::vector<TermId> candidates(TermId id) const {
    if (!partition) return {id};
    return partition->members(id);
  }

  void run() { step(0); }

  void step(std::size_t depth) {
    if (depth == plan.steps.size()) {
      std::vector<Term> row;
      row.reserve(query.select.size());
      for (const Variable& v : query.select) {
        row.push_back(g.dict().term(*bound[vars.slot(v)]));
      }
      table.add_row(std::move(row));
      return;
    }
    const QueryPattern& pattern = query.where[plan.steps[depth].pattern];
    const QuerySlot* slots[3] = {&pattern.subject, &pattern.predicate,
                                 &pattern.object};

    // Resolve each slot to a fixed id (concrete term or already-bound
    // variable), or to a variable slot still free in this pattern.
    std::optional<TermId> fixed[3];
    int var_slot[3] = {-1, -1, -1};
    for (int i = 0; i < 3; ++i) {
      if (slot_is_var(*slots[i])) {
        std::size_t vslot = vars.slot(std::get<Variable>(*slots[i]));
        if (bound[vslot]) {
          fixed[i] = *bound[vslot];
        } else {
          var_slot[i] = static_cast<int>(vslot);
        }
      } else {
        const Term& term = std::get<Term>(*slots[i]);
        auto id = g.dict().find(term);
        if (!id) return;  // an unseen term matches nothing
        fixed[i] = canon(*id);
      }
    }

    // Fan out over equivalence-class members of every fixed slot.
    std::vector<TermId> cs = fixed[0] ? candidates(*fixed[0])
                                      : std::vector<TermId>{};
    std::vector<TermId> cp = fixed[1] ? candidates(*fixed[1])
                                      : std::vector<TermId>{};
    std::vector<TermId> co = fixed[2] ? candidates(*fixed[2])
                                      : std::vector<TermId>{};
    auto scan = [&](std::optional<TermId> s, std::optional<TermId> p,
                    std::optional<TermId> o) {
      for (IdTriple t : g.match_ids({s, p, o})) {
        unify_and_recurse(t, var_slot, depth);
      }
    };
    auto each = [](const std::vector<TermId>& ids, bool used,
                   auto&& fn) {
      if (!used) {
        fn(std::nullopt);
        return;
      }
      for (TermId id : ids) fn(std::optional<TermId>(id));
    };
    each(cs, fixed[0].has_value(), [&](std::optional<TermId> s) {
      each(cp, fixed[1].has_value(), [&](std::optional<TermId> p) {
        each(co, fixed[2].has_value(),
             [&](std::optional<TermId> o) { scan(s, p, o); });
      });
    });
  }

  void unify_and_recurse(const IdTriple& t, const int var_slot[3],
                         std::size_t depth) {
    std::size_t newly_bound[3];
    std::size_t n_new = 0;
    bool ok = true;
    for (int i = 0; i < 3 && ok; ++i) {
      if (var_slot[i] < 0) continue;
      std::size_t vslot = static_cast<std::size_t>(var_slot[i]);
      TermId value = canon(t[static_cast<std::size_t>(i)]);
      if (bound[vslot]) {
        ok = *bound[vslot] == value;  // repeated variable in this pattern
      } else {
        bound[vslot] = value;
        newly_bound[n_new++] = vslot;
      }
    }
    if (ok) step(depth + 1);
    for (std::size_t i = 0; i < n_new; ++i) bound[newly_bound[i]].reset();
  }
};

void check_query(const Query& query) {
  if (query.select.empty()) {
    throw Error(Errc::syntax_error, "empty select list");
  }
  if (query.where.empty()) {
    throw Error(Errc::syntax_error, "empty basic graph pattern");
  }
  std::set<std::string> pattern_vars;
  for (const QueryPattern& p : query.where) {
    for_each_variable(
        p, [&pattern_vars](const Variable& v) { pattern_vars.insert(v.name); });
  }
  for (const Variable& v : query.select) {
    if (!pattern_vars.contains(v.name)) {
      throw Error(Errc::unbound_select_variable,
                  "?" + v.name + " does not occur in the graph pattern");
    }
  }
}

std::vector<std::vector<std::string>> sorted_cells(
    const BindingTable& table, const PrefixMap& prefixes) {
  std::vector<std::vector<std::string>> rows;
  rows.reserve(table.row_count());
  for (const std::vector<Term>& row : table.rows()) {
    std::vector<std::string> cells;
    cells.reserve(row.size());
    for (const Term& t : row) cells.push_back(serialize_term(t, prefixes));
    rows.push_back(std::move(cells));
  }
  std::sort(rows.begin(), rows.end());
  return rows;
}

}  // namespace

Query parse_query(std::string_view text, const PrefixMap& prefixes) {
  Scanner scan{text};
  Query query;

  scan.expect_keyword("SELECT");
  scan.skip_ws();
  while (scan.peek() == '?') {
    Variable v = scan.variable();
    if (std::find(query.select.begin(), query.select.end(), v) !=
        query.select.end()) {
      scan.fail("duplicate select variable ?" + v.name);
    }
    query.select.push_back(std::move(v));
    scan.skip_ws();
  }
  if (query.select.empty()) scan.fail("expected at least one ?variable");

  scan.expect_keyword("WHERE");
  scan.expect_char('{');
  scan.skip_ws();
  while (scan.peek() != '}') {
    QuerySlot subject = scan.term(prefixes, false);
    QuerySlot predicate = scan.term(prefixes, false);
    QuerySlot object = scan.term(prefixes, true);
    scan.expect_char('.');
    query.where.push_back(QueryPattern{std::move(subject),
                                       std::move(predicate),
                                       std::move(object)});
    scan.skip_ws();
    if (scan.pos >= scan.s.size()) scan.fail("expected '}'");
  }
  ++scan.pos;  // consume '}'
  if (query.where.empty()) scan.fail("expected at least one triple pattern");
  if (!scan.at_end()) scan.fail("trailing characters after '}'");

  check_query(query);
  return query;
}

Plan make_plan(const Query& query, const Graph& g) {
  const std::size_t n = query.where.size();

  // Stand-alone estimate per pattern: variables as wildcards.
  std::vector<std::size_t> estimate(n);
  for (std::size_t i = 0; i < n; ++i) {
    const QueryPattern& p = query.where[i];
    TriplePattern tp;
    auto lower = [](const QuerySlot& slot) -> std::optional<Term> {
      if (slot_is_var(slot)) return std::nullopt;
      return std::get<Term>(slot);
    };
    tp.subject = lower(p.subject);
    tp.predicate = lower(p.predicate);
    tp.object = lower(p.object);
    estimate[i] = g.count(tp);
  }

  Plan plan;
  std::vector<bool> used(n, false);
  std::set<std::string> bound_vars;
  for (std::size_t step = 0; step < n; ++step) {
    std::size_t best = n;
    for (std::size_t i = 0; i < n; ++i) {
      if (used[i]) continue;
      if (best == n || estimate[i] < estimate[best]) best = i;
    }
    used[best] = true;

    const QueryPattern& p = query.where[best];
    auto is_bound = [&bound_vars](const QuerySlot& slot) {
      if (!slot_is_var(slot)) return true;
      return bound_vars.contains(std::get<Variable>(slot).name);
    };
    PlanIndex index = Graph::select_index(
        is_bound(p.subject), is_bound(p.predicate), is_bound(p.object));
    plan.steps.push_back({best, index, estimate[best]});
    for_each_variable(
        p, [&bound_vars](const Variable& v) { bound_vars.insert(v.name); });
  }
  return plan;
}

BindingTable evaluate(const Query& query, const Graph& g,
                      const SameAsPartition* partition) {
  check_query(query);
  IndexEvaluator eval(query, g, partition);
  eval.run();
  return std::move(eval.table);
}

BindingTable evaluate_naive(const Query& query, const Graph& g,
                            std::size_t budget,
                            const SameAsPartition* partition) {
  check_query(query);

  // |g|^k against the oracle budget, overflow-safe.
  std::size_t nominal = 1;
  for (std::size_t i = 0; i < query.where.size(); ++i) {
    if (g.size() != 0 && nominal > budget / g.size()) {
      throw Error(Errc::instance_too_large,
                  "oracle budget exceeded: |g|^" +
                      std::to_string(query.where.size()) + " > " +
                      std::to_string(budget));
    }
    nominal *= g.size();
  }

  std::vector<Triple> all;
  all.reserve(g.size());
  for (const IdTriple& t : g.id_triples()) all.push_back(g.decode(t));

  auto canon_term = [&](const Term& t) {
    return partition ? canonical(*partition, g.dict(), t) : t;
  };

  BindingTable table(query.select);
  std::unordered_map<std::string, Term> env;

  auto unify_slot = [&](const QuerySlot& slot, const Term& actual,
                        std::vector<std::string>& bound_here) {
    Term value = canon_term(actual);
    if (!slot_is_var(slot)) {
      return canon_term(std::get<Term>(slot)) == value;
    }
    const std::string& name = std::get<Variable>(slot).name;
    auto it = env.find(name);
    if (it != env.end()) return it->second == value;
    env.emplace(name, std::move(value));
    bound_here.push_back(name);
    return true;
  };

  std::function<void(std::size_t)> assign = [&](std::size_t level) {
    if (level == query.where.size()) {
      std::vector<Term> row;
      row.reserve(query.select.size());
      for (const Variable& v : query.select) row.push_back(env.at(v.name));
      table.add_row(std::move(row));
      return;
    }
    const QueryPattern& pattern = query.where[level];
    for (const Triple& t : all) {
      std::vector<std::string> bound_here;
      bool ok = unify_slot(pattern.subject, t.subject(), bound_here) &&
                unify_slot(pattern.predicate, Term(t.predicate()),
                           bound_here) &&
                unify_slot(pattern.object, t.object(), bound_here);
      if (ok) assign(level + 1);
      for (const std::string& name : bound_here) env.erase(name);
    }
  };
  assign(0);
  return table;
}

std::string render_table(const BindingTable& table,
                         const PrefixMap& prefixes) {
  const std::size_t ncols = table.header().size();
  std::vector<std::string> head;
  head.reserve(ncols);
  for (const Variable& v : table.header()) head.push_back("?" + v.name);

  auto rows = sorted_cells(table, prefixes);

  std::vector<std::size_t> width(ncols);
  for (std::size_t c = 0; c < ncols; ++c) width[c] = head[c].size();
  for (const auto& row : rows) {
    for (std::size_t c = 0; c < ncols; ++c) {
      width[c] = std::max(width[c], row[c].size());
    }
  }

  auto emit_row = [&](const std::vector<std::string>& cells) {
    std::string line = "|";
    for (std::size_t c = 0; c < ncols; ++c) {
      line += " " + cells[c] +
              std::string(width[c] - cells[c].size(), ' ') + " |";
    }
    return line + "\n";
  };
  std::size_t total = 1;
  for (std::size_t c = 0; c < ncols; ++c) total += width[c] + 3;
  std::string rule(total, '-');
  rule += "\n";

  std::string out = rule + emit_row(head) + rule;
  for (const auto& row : rows) out += emit_row(row);
  out += rule;
  return out;
}

std::string render_tsv(const BindingTable& table, const PrefixMap& prefixes) {
  std::string out;
  const std::size_t ncols = table.header().size();
  for (std::size_t c = 0; c < ncols; ++c) {
    out += (c ? "\t?" : "?") + table.header()[c].name;
  }
  out += "\n";
  for (const auto& row : sorted_cells(table, prefixes)) {
    for (std::size_t c = 0; c < ncols; ++c) {
      if (c) out += "\t";
      out += row[c];
    }
    out += "\n";
  }
  return out;
}

}  // namespace semstore
