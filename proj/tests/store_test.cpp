#include <doctest.h>

#include <algorithm>
#include <set>

#include "semstore/store.hpp"
#include "support/generators.hpp"

namespace semstore {

// Test-only hook for corrupting indexes (negative consistency checks).
struct GraphTestAccess {
  static std::set<IdTriple>& spo(Graph& g) { return g.spo_; }
  static std::set<IdTriple>& pos(Graph& g) { return g.pos_; }
  static std::set<IdTriple>& osp(Graph& g) { return g.osp_; }
};

}  // namespace semstore

using namespace semstore;
using testsupport::Rng;

namespace {

Triple iri_triple(std::string_view s, std::string_view p, std::string_view o) {
  return Triple(Term(make_iri(s)), make_iri(p), Term(make_iri(o)));
}

Graph two_triple_graph() {
  Graph g;
  g.insert(iri_triple("http://www.lanl.gov/people#marko",
                      "http://www.lanl.gov/people#worksWith",
                      "http://www.lanl.gov/people#jhw"));
  g.insert(iri_triple("http://www.lanl.gov/people#marko",
                      "http://www.lanl.gov/people#hasBodyPart",
                      "http://www.lanl.gov/people#markos_arm"));
  return g;
}

std::set<Triple> as_set(const std::vector<Triple>& v) {
  return {v.begin(), v.end()};
}

// Linear-scan reference for match().
std::set<Triple> scan_filter(const Graph& g, const TriplePattern& p) {
  std::set<Triple> out;
  for (const IdTriple& ids : g.id_triples()) {
    Triple t = g.decode(ids);
    if (p.matches(t)) out.insert(t);
  }
  return out;
}

}  // namespace

TEST_SUITE("store basics") {
  TEST_CASE("set semantics on insert") {
    Graph g;
    Triple t = iri_triple("urn:s", "urn:p", "urn:o");
    CHECK(g.insert(t));
    CHECK_FALSE(g.insert(t));
    CHECK(g.size() == 1);
  }

  TEST_CASE("the two-triple network has size 2") {
    CHECK(two_triple_graph().size() == 2);
  }

  TEST_CASE("insert, remove, insert again") {
    Graph g;
    Triple t = iri_triple("urn:s", "urn:p", "urn:o");
    CHECK(g.insert(t));
    CHECK(g.remove(t));
    CHECK_FALSE(g.remove(t));
    CHECK(g.insert(t));
    CHECK(g.size() == 1);
  }

  TEST_CASE("removing excludes the triple from matching") {
    Graph g = two_triple_graph();
    Triple t = iri_triple("http://www.lanl.gov/people#marko",
                          "http://www.lanl.gov/people#worksWith",
                          "http://www.lanl.gov/people#jhw");
    REQUIRE(g.remove(t));
    CHECK(g.match(TriplePattern::fully_bound(t)).empty());
    CHECK_FALSE(g.contains(t));
    CHECK(g.size() == 1);
  }

  TEST_CASE("quit semantics: no worksFor edge survives removal") {
    Graph g;
    Triple works = iri_triple("http://www.lanl.gov/people#marko",
                              "http://www.lanl.gov/people#worksFor",
                              "urn:org:x");
    g.insert(works);
    g.insert(iri_triple("http://www.lanl.gov/people#marko",
                        "http://www.lanl.gov/people#worksWith", "urn:who:y"));
    REQUIRE(g.remove(works));
    TriplePattern marko_works_for{
        Term(make_iri("http://www.lanl.gov/people#marko")),
        Term(make_iri("http://www.lanl.gov/people#worksFor")), std::nullopt};
    CHECK(scan_filter(g, marko_works_for).empty());  // oracle: linear scan
    CHECK(g.match(marko_works_for).empty());
  }

  TEST_CASE("derived tags") {
    Graph g;
    Triple t = iri_triple("urn:s", "urn:p", "urn:o");
    CHECK(g.insert_derived(t));
    CHECK(g.is_derived(t));
    CHECK(g.derived_count() == 1);
    CHECK(g.asserted_count() == 0);
    // asserting the same triple upgrades the tag
    CHECK_FALSE(g.insert(t));
    CHECK_FALSE(g.is_derived(t));
    CHECK(g.asserted_count() == 1);
    // a derived insert never downgrades
    CHECK_FALSE(g.insert_derived(t));
    CHECK_FALSE(g.is_derived(t));
  }
}

TEST_SUITE("store matching") {
  TEST_CASE("single-bound pattern over the two-triple network") {
    Graph g = two_triple_graph();
    TriplePattern p{std::nullopt,
                    Term(make_iri("http://www.lanl.gov/people#worksWith")),
                    Term(make_iri("http://www.lanl.gov/people#jhw"))};
    auto matched = g.match_vector(p);
    REQUIRE(matched.size() == 1);
    CHECK(matched[0].subject() ==
          Term(make_iri("http://www.lanl.gov/people#marko")));
  }

  TEST_CASE("all-wildcard pattern over the empty graph") {
    Graph g;
    CHECK(g.match(TriplePattern::any()).empty());
    CHECK(g.count(TriplePattern::any()) == 0);
  }

  TEST_CASE("counting everything in the two-triple network") {
    CHECK(two_triple_graph().count(TriplePattern::any()) == 2);
  }

  TEST_CASE("fully bound pattern yields exactly the one triple") {
    Graph g = two_triple_graph();
    Triple t = iri_triple("http://www.lanl.gov/people#marko",
                          "http://www.lanl.gov/people#worksWith",
                          "http://www.lanl.gov/people#jhw");
    auto matched = g.match_vector(TriplePattern::fully_bound(t));
    REQUIRE(matched.size() == 1);
    CHECK(matched[0] == t);
    CHECK(g.count(TriplePattern::fully_bound(t)) == 1);
  }

  TEST_CASE("index selection follows the bound-slot prefix") {
    Graph g = two_triple_graph();
    Term s(make_iri("http://www.lanl.gov/people#marko"));
    Term p(make_iri("http://www.lanl.gov/people#worksWith"));
    Term o(make_iri("http://www.lanl.gov/people#jhw"));
    CHECK(g.match({s, p, o}).index_used() == PlanIndex::spo);
    CHECK(g.match({s, std::nullopt, std::nullopt}).index_used() ==
          PlanIndex::spo);
    CHECK(g.match({s, std::nullopt, o}).index_used() == PlanIndex::spo);
    CHECK(g.match({std::nullopt, p, std::nullopt}).index_used() ==
          PlanIndex::pos);
    CHECK(g.match({std::nullopt, p, o}).index_used() == PlanIndex::pos);
    CHECK(g.match({std::nullopt, std::nullopt, o}).index_used() ==
          PlanIndex::osp);
    CHECK(g.match(TriplePattern::any()).index_used() == PlanIndex::full_scan);
  }

  TEST_CASE("match agrees with a linear scan on random patterns") {
    Rng rng(99);
    auto pools = testsupport::TermPools::make(rng, 60);
    Graph g;
    for (const Triple& t : testsupport::random_triples(rng, pools, 300)) {
      g.insert(t);
    }
    for (int i = 0; i < 200; ++i) {
      Triple seed = testsupport::random_triple(rng, pools);
      TriplePattern p;
      if (rng.chance(0.5)) p.subject = seed.subject();
      if (rng.chance(0.5)) p.predicate = Term(seed.predicate());
      if (rng.chance(0.5)) p.object = seed.object();
      auto via_index = as_set(g.match_vector(p));
      auto via_scan = scan_filter(g, p);
      REQUIRE(via_index == via_scan);
      REQUIRE(g.count(p) == via_scan.size());
    }
  }

  TEST_CASE("enumeration order is deterministic for a fixed sequence") {
    auto build = [] {
      Rng rng(5);
      auto pools = testsupport::TermPools::make(rng, 30);
      Graph g;
      for (const Triple& t : testsupport::random_triples(rng, pools, 100)) {
        g.insert(t);
      }
      return g.match_vector(TriplePattern::any());
    };
    CHECK(build() == build());
  }
}

TEST_SUITE("index consistency") {
  TEST_CASE("holds after ordinary mutations") {
    Graph g = two_triple_graph();
    CHECK(g.check_index_consistency());
    g.remove(iri_triple("http://www.lanl.gov/people#marko",
                        "http://www.lanl.gov/people#worksWith",
                        "http://www.lanl.gov/people#jhw"));
    CHECK(g.check_index_consistency());
  }

  TEST_CASE("detects a corrupted index") {
    Graph g = two_triple_graph();
    auto& pos = GraphTestAccess::pos(g);
    REQUIRE_FALSE(pos.empty());
    pos.erase(pos.begin());
    CHECK_FALSE(g.check_index_consistency());
  }

  TEST_CASE("detects a wrong entry as well as a missing one") {
    Graph g = two_triple_graph();
    auto& osp = GraphTestAccess::osp(g);
    osp.erase(osp.begin());
    osp.insert({9999, 9999, 9999});
    CHECK_FALSE(g.check_index_consistency());
  }

  TEST_CASE("1e5 random insert/remove operations keep all invariants") {
    Rng rng(2024);
    auto pools = testsupport::TermPools::make(rng, 200);
    Graph g;
    std::set<Triple> mirror;  // oracle mirror of the triple set
    for (int i = 0; i < 100000; ++i) {
      Triple t = testsupport::random_triple(rng, pools);
      if (rng.chance(0.6)) {
        CHECK(g.insert(t) == mirror.insert(t).second);
      } else {
        CHECK(g.remove(t) == (mirror.erase(t) > 0));
      }
    }
    CHECK(g.size() == mirror.size());
    CHECK(g.check_index_consistency());
    CHECK(g.validate_membership());
    // the SPO index rebuilds exactly the mirror set
    std::set<Triple> rebuilt;
    for (const IdTriple& ids : g.id_triples()) rebuilt.insert(g.decode(ids));
    CHECK(rebuilt == mirror);
  }
}
