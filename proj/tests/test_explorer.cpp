#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <fstream>
#include <set>
#include <sstream>

#include "eos/explorer.hpp"
#include "eos/model_io.hpp"
#include "eos/symmetry.hpp"
#include "generators.hpp"
#include "oracles.hpp"

using namespace eos;

static ModelDocument load_fixture(const char* name) {
    std::ifstream in(std::string(EOS_FIXTURE_DIR) + "/" + name);
    REQUIRE(in.good());
    std::stringstream ss;
    ss << in.rdbuf();
    ModelDocument doc = parse_model(ss.str());
    REQUIRE(doc.ok());
    return doc;
}

// Two same-typed carriers whose tokens can mirror each other: the full
// graph distinguishes x|y from y|x, projections do not.
static ModelDocument two_carriers() {
    ModelDocument doc = parse_model(
        "objectnet n1\n"
        "  place x\n"
        "  place y\n"
        "  trans f pre 1'x post 1'y\n"
        "end\n"
        "systemnet\n"
        "  place q1\n"
        "  type q1 n1\n"
        "  place q2\n"
        "  type q2 n1\n"
        "end\n"
        "events from-labels max_sync=1\n"
        "initial 1'q1[1'x] + 1'q2[1'x]\n");
    REQUIRE(doc.ok());
    return doc;
}

TEST_CASE("full graph of the staple model") {
    ModelDocument doc = load_fixture("eos-s8.eos");
    ReachGraph g = explore_full(doc.model, doc.initial);
    CHECK(g.reduction == Reduction::None);
    CHECK(!g.truncated);
    CHECK(g.states.size() == 5);
    CHECK(g.edges.size() == 4);
    CHECK(g.initial == 0);
    CHECK(g.group_order == 1);

    // matches the oracle closure exactly
    oracle::ReachOracle r = oracle::reach(doc.model, doc.initial);
    CHECK(r.states.size() == g.states.size());
    CHECK(r.firings == g.edges.size());
    std::set<NestedMarking> got(g.states.begin(), g.states.end());
    CHECK(got == r.states);

    // every edge is a genuine firing
    for (const ReachEdge& e : g.edges) {
        bool hit = false;
        ModeList ml = enumerate_modes(doc.model, g.states[e.src], doc.model.events[e.event]);
        for (const Mode& m : ml.modes)
            if (fire(doc.model, g.states[e.src], doc.model.events[e.event], m) ==
                g.states[e.dst])
                hit = true;
        CHECK(hit);
    }
}

TEST_CASE("full graph of the kitchen") {
    ModelDocument doc = load_fixture("kitchen.eos");
    ReachGraph g = explore_full(doc.model, doc.initial);
    CHECK(g.states.size() == 15);
    CHECK(g.edges.size() == 44);
    oracle::ReachOracle r = oracle::reach(doc.model, doc.initial);
    CHECK(r.states.size() == 15);
    CHECK(r.firings == 44);
}

TEST_CASE("condensed graph folds symmetric states") {
    ModelDocument doc = load_fixture("kitchen.eos");
    AutGroup g = eos_automorphisms(doc.model);
    ReachGraph full = explore_full(doc.model, doc.initial);
    ReachGraph red = explore_reduced(doc.model, doc.initial, g);
    CHECK(red.reduction == Reduction::Aut);
    CHECK(red.group_order == 4);
    CHECK(red.states.size() == 8);
    CHECK(red.states.size() < full.states.size());

    // states are canonical representatives, pairwise in distinct orbits
    for (const NestedMarking& s : red.states)
        CHECK(canonicalize(doc.model, s, g).marking == s);
    for (std::size_t i = 0; i < red.states.size(); ++i)
        for (std::size_t j = i + 1; j < red.states.size(); ++j)
            for (const auto& a : g.elements)
                CHECK(apply_to_marking(doc.model, a, red.states[i]) != red.states[j]);

    QuotientReport rep = verify_quotient(doc.model, full, red, g);
    CHECK(rep.ok());
    CHECK(rep.full_states == 15);
    CHECK(rep.reduced_states == 8);
}

TEST_CASE("verification rejects a tampered quotient") {
    ModelDocument doc = load_fixture("kitchen.eos");
    AutGroup g = eos_automorphisms(doc.model);
    ReachGraph full = explore_full(doc.model, doc.initial);
    ReachGraph red = explore_reduced(doc.model, doc.initial, g);

    SUBCASE("dropped state") {
        ReachGraph bad = red;
        std::size_t victim = bad.states.size() - 1;
        bad.states.pop_back();
        std::erase_if(bad.edges,
                      [&](const ReachEdge& e) { return e.src == victim || e.dst == victim; });
        QuotientReport rep = verify_quotient(doc.model, full, bad, g);
        CHECK(!rep.ok());
    }
    SUBCASE("dropped edge") {
        ReachGraph bad = red;
        bad.edges.pop_back();
        QuotientReport rep = verify_quotient(doc.model, full, bad, g);
        CHECK(!rep.ok());
    }
    SUBCASE("duplicate orbit representative") {
        ReachGraph bad = red;
        bad.states.push_back(
            apply_to_marking(doc.model, g.elements.back(), bad.states.front()));
        QuotientReport rep = verify_quotient(doc.model, full, bad, g);
        CHECK(!rep.ok());
    }
    SUBCASE("truncated full graph is not a reference") {
        ReachGraph cut = full;
        cut.truncated = true;
        CHECK_THROWS_AS(verify_quotient(doc.model, cut, red, g), IncomparableGraphs);
    }
    SUBCASE("wrong reduction kind") {
        CHECK_THROWS_AS(verify_quotient(doc.model, full, full, g), IncomparableGraphs);
    }
}

TEST_CASE("projected graph merges token-shuffle twins") {
    ModelDocument doc = two_carriers();
    ReachGraph full = explore_full(doc.model, doc.initial);
    CHECK(full.states.size() == 4);  // xx, xy, yx, yy

    ReachGraph proj = explore_proj(doc.model, doc.initial);
    CHECK(proj.reduction == Reduction::Proj);
    CHECK(proj.states.size() == 3);  // xy and yx agree on all projections
    CHECK(proj.heuristic);

    QuotientReport rep = verify_proj_quotient(doc.model, full, proj);
    CHECK(rep.ok());
}

TEST_CASE("combined reduction composes both quotients") {
    ModelDocument doc = two_carriers();
    AutGroup g = eos_automorphisms(doc.model);
    CHECK(g.elements.size() == 2);  // carrier swap
    ReachGraph both = explore_aut_proj(doc.model, doc.initial, g);
    CHECK(both.reduction == Reduction::AutProj);
    CHECK(both.states.size() == 3);
    ReachGraph full = explore_full(doc.model, doc.initial);
    QuotientReport rep = verify_aut_proj_quotient(doc.model, full, both, g);
    CHECK(rep.ok());
}

TEST_CASE("bounds truncate breadth-first") {
    ModelDocument doc = load_fixture("kitchen.eos");
    Bounds b;
    b.max_states = 6;
    ReachGraph g = explore_full(doc.model, doc.initial, b);
    CHECK(g.truncated);
    CHECK(g.states.size() <= 6);

    Bounds d;
    d.max_depth = 1;
    ReachGraph g1 = explore_full(doc.model, doc.initial, d);
    CHECK(g1.truncated);
    // depth one: initial plus its direct successors
    EnabledList el = enabled_events(doc.model, doc.initial);
    std::set<NestedMarking> succ;
    for (const auto& [ei, m] : el.items)
        succ.insert(fire(doc.model, doc.initial, doc.model.events[ei], m));
    CHECK(g1.states.size() == 1 + succ.size());
}

TEST_CASE("single state graph") {
    ModelDocument doc = parse_model(
        "systemnet\n"
        "  place q\n"
        "  type q dot\n"
        "end\n"
        "events explicit\n"
        "end\n"
        "initial 1'q[]\n");
    REQUIRE(doc.ok());
    ReachGraph g = explore_full(doc.model, doc.initial);
    CHECK(g.states.size() == 1);
    CHECK(g.edges.empty());
    CHECK(!g.truncated);
}

TEST_CASE("dot export is stable and well-formed") {
    ModelDocument doc = load_fixture("eos-s8.eos");
    ReachGraph g1 = explore_full(doc.model, doc.initial);
    ReachGraph g2 = explore_full(doc.model, doc.initial);
    std::string d1 = export_dot(doc.model, g1);
    std::string d2 = export_dot(doc.model, g2);
    CHECK(d1 == d2);
    CHECK(d1.find("digraph reach {") == 0);
    CHECK(d1.find("s0 [label=\"s0: 1'p1[] + 1'p1[a1+b1] + 1'p2[a1] + 1'p3[a2+b2]\"") !=
          std::string::npos);
    CHECK(d1.find("peripheries=2") != std::string::npos);
    CHECK(d1.find("t[N1:t1,N2:t2]") != std::string::npos);
    CHECK(d1.back() == '\n');

    DotOptions terse;
    terse.show_markings = false;
    std::string d3 = export_dot(doc.model, g1, terse);
    CHECK(d3.find("a1+b1") == std::string::npos);

    DotOptions clipped;
    clipped.max_label_len = 10;
    std::string d4 = export_dot(doc.model, g1, clipped);
    CHECK(d4.find("...") != std::string::npos);
}

TEST_CASE("stats json is stable and gates wall time") {
    ModelDocument doc = load_fixture("eos-s8.eos");
    ReachGraph g = explore_full(doc.model, doc.initial);
    std::string a = stats_json(g);
    std::string b = stats_json(g);
    CHECK(a == b);
    CHECK(a ==
          "{\"states\": 5, \"edges\": 4, \"truncated\": false, "
          "\"group_order\": 1, \"reduction\": \"none\"}\n");
    std::string timed = stats_json(g, true);
    CHECK(timed.find("wall_ms") != std::string::npos);
}

TEST_CASE("edges carry mode digests grouped by projection") {
    ModelDocument doc = load_fixture("eos-s8.eos");
    ReachGraph g = explore_full(doc.model, doc.initial);
    for (const ReachEdge& e : g.edges) CHECK(e.mode_digest != 0);
}

TEST_CASE("reduced exploration equals canonical closure on random models") {
    gen::Rng rng(31337);
    int runs = 0;
    for (int iter = 0; iter < 20 && runs < 8; ++iter) {
        Eos os = gen::random_eos(rng);
        if (!validate(os).empty()) continue;
        AutGroup g = eos_automorphisms(os, 200);
        if (g.truncated) continue;
        NestedMarking mu = gen::random_marking(rng, os, 3, 1);
        Bounds bounds;
        bounds.max_states = 300;
        ReachGraph full = explore_full(os, mu, bounds);
        if (full.truncated) continue;
        ReachGraph red = explore_reduced(os, mu, g, bounds);
        if (red.truncated) continue;
        QuotientReport rep = verify_quotient(os, full, red, g);
        CHECK(rep.ok());
        if (!rep.ok())
            for (const auto& v : rep.violations) MESSAGE(v);
        ++runs;
    }
    CHECK(runs >= 5);
}
