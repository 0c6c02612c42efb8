#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "eos/canonical.hpp"
#include "eos/eos.hpp"
#include "eos/symmetry.hpp"
#include "generators.hpp"
#include "oracles.hpp"

using namespace eos;

static PtNet recipe() {
    PtNet n;
    n.name = "recipe";
    for (const char* p : {"s", "p1", "p2", "p3", "p4"}) n.add_place(p);
    n.add_trans("a", PtMarking::single(0), PtMarking::from_entries({{1, 1}, {2, 1}}));
    n.add_trans("b", PtMarking::single(1), PtMarking::single(3));
    n.add_trans("c", PtMarking::single(2), PtMarking::single(4));
    n.add_trans("d", PtMarking::from_entries({{3, 1}, {4, 1}}), PtMarking::single(0));
    return n;
}

static Eos kitchen() {
    Eos os;
    os.nets.push_back(recipe());
    for (const char* p : {"S1", "S2", "S3"}) os.system.add_place(p);
    auto mv = [&](const char* name, PlaceIdx from, PlaceIdx to) {
        os.system.add_trans(name, PtMarking::single(from), PtMarking::single(to));
    };
    mv("mv12", 0, 1);
    mv("mv21", 1, 0);
    mv("mv13", 0, 2);
    mv("mv31", 2, 0);
    mv("mv23", 1, 2);
    mv("mv32", 2, 1);
    mv("do_b1", 0, 0);
    mv("do_c1", 0, 0);
    mv("do_b2", 1, 1);
    mv("do_c2", 1, 1);
    os.typing = {1, 1, 1};
    EosLabels lb;
    lb.channels = {"cb", "cc"};
    lb.system.resize(os.system.trans_count());
    for (auto& row : lb.system) row.resize(2);
    lb.system[6][1] = Multiset<std::int32_t>::single(0);
    lb.system[7][1] = Multiset<std::int32_t>::single(1);
    lb.system[8][1] = Multiset<std::int32_t>::single(0);
    lb.system[9][1] = Multiset<std::int32_t>::single(1);
    lb.object.resize(2);
    lb.object[1] = {-1, 0, 1, -1};
    os.labels = lb;
    os.events = events_from_labels(os, 1);
    return os;
}

TEST_CASE("marking keys separate markings and only markings") {
    Eos os = kitchen();
    auto P = [&](const char* x) { return *os.system.place_index(x); };
    auto R = [&](const char* x) { return *os.nets[1].place_index(x); };

    NestedMarking a;
    a.add(Addend{P("S1"), PtMarking::single(R("s"))});
    NestedMarking b;
    b.add(Addend{P("S2"), PtMarking::single(R("s"))});
    CHECK(marking_key(os, a) == marking_key(os, a));
    CHECK(marking_key(os, a) != marking_key(os, b));

    // one row per addend occurrence, padded to the net's place count
    NestedMarking two;
    two.add(Addend{P("S1"), PtMarking::single(R("s"))}, 2);
    MarkingKey k = marking_key(os, two);
    REQUIRE(k.rows.size() == 2);
    CHECK(k.rows[0] == k.rows[1]);
    CHECK(k.rows[0].second.size() == os.nets[1].place_count());

    // row order does not depend on insertion order
    NestedMarking ab = a.plus(b);
    NestedMarking ba = b.plus(a);
    CHECK(marking_key(os, ab) == marking_key(os, ba));
}

TEST_CASE("keys are injective on random markings") {
    gen::Rng rng(77001);
    for (int iter = 0; iter < 40; ++iter) {
        Eos os = gen::random_eos(rng);
        if (!validate(os).empty()) continue;
        NestedMarking x = gen::random_marking(rng, os);
        NestedMarking y = gen::random_marking(rng, os);
        CHECK((marking_key(os, x) == marking_key(os, y)) == (x == y));
    }
}

TEST_CASE("canonical representative is the orbit minimum") {
    Eos os = kitchen();
    AutGroup g = eos_automorphisms(os);
    REQUIRE(g.elements.size() == 4);
    auto P = [&](const char* x) { return *os.system.place_index(x); };
    auto R = [&](const char* x) { return *os.nets[1].place_index(x); };
    PtMarking A = PtMarking::from_entries({{R("p1"), 1}, {R("p4"), 1}});
    PtMarking B = PtMarking::from_entries({{R("p2"), 1}, {R("p3"), 1}});

    NestedMarking mu;
    mu.add(Addend{P("S1"), A});
    mu.add(Addend{P("S1"), B});
    mu.add(Addend{P("S2"), B});

    CanonicalResult c = canonicalize(os, mu, g);

    // independent argmin over the whole orbit
    NestedMarking best = mu;
    for (const auto& a : g.elements) {
        NestedMarking img = oracle::marking_image(os, a, mu);
        if (marking_key(os, img) < marking_key(os, best)) best = img;
    }
    CHECK(c.marking == best);
    CHECK(oracle::marking_image(os, c.witness, mu) == c.marking);

    // for this orbit the original is already minimal
    CHECK(c.marking == mu);
    CHECK(c.witness == eos_identity(os));
}

TEST_CASE("orbit members share the representative") {
    Eos os = kitchen();
    AutGroup g = eos_automorphisms(os);
    auto P = [&](const char* x) { return *os.system.place_index(x); };
    auto R = [&](const char* x) { return *os.nets[1].place_index(x); };
    PtMarking A = PtMarking::from_entries({{R("p1"), 1}, {R("p4"), 1}});
    PtMarking B = PtMarking::from_entries({{R("p2"), 1}, {R("p3"), 1}});

    NestedMarking mu;
    mu.add(Addend{P("S1"), A});
    mu.add(Addend{P("S1"), B});
    mu.add(Addend{P("S2"), B});
    NestedMarking mu2;  // image under the parallel station swap
    mu2.add(Addend{P("S1"), B});
    mu2.add(Addend{P("S2"), A});
    mu2.add(Addend{P("S2"), B});

    CanonicalResult c1 = canonicalize(os, mu, g);
    CanonicalResult c2 = canonicalize(os, mu2, g);
    CHECK(c1.marking == c2.marking);

    for (const auto& a : g.elements)
        CHECK(canonicalize(os, apply_to_marking(os, a, mu), g).marking == c1.marking);

    // three addends over inner sets {A,B,B} can never canonicalise to a
    // marking whose inner sets read {A,A,A}: images keep the shape
    NestedMarking impossible;
    impossible.add(Addend{P("S1"), A});
    impossible.add(Addend{P("S2"), A}, 2);
    CHECK(c1.marking != impossible);
    for (const auto& a : g.elements)
        CHECK(apply_to_marking(os, a, mu) != impossible);
}

TEST_CASE("canonicalisation is idempotent and orbit-invariant on random models") {
    gen::Rng rng(880022);
    for (int iter = 0; iter < 25; ++iter) {
        Eos os = gen::random_eos(rng);
        if (!validate(os).empty()) continue;
        AutGroup g = eos_automorphisms(os, 200);
        if (g.truncated) continue;
        NestedMarking mu = gen::random_marking(rng, os);
        CanonicalResult c = canonicalize(os, mu, g);
        CHECK(canonicalize(os, c.marking, g).marking == c.marking);
        CHECK(apply_to_marking(os, c.witness, mu) == c.marking);
        CHECK(marking_key(os, c.marking) <= marking_key(os, mu));
        for (const auto& a : g.elements)
            CHECK(canonicalize(os, apply_to_marking(os, a, mu), g).marking == c.marking);
    }
}

TEST_CASE("projection keys") {
    Eos os;
    PtNet n1;
    n1.name = "N1";
    n1.add_place("a1");
    n1.add_place("b1");
    n1.add_trans("t1", PtMarking::single(0), PtMarking::single(1));
    PtNet n2;
    n2.name = "N2";
    n2.add_place("a2");
    n2.add_place("b2");
    n2.add_place("c2");
    n2.add_trans("t2", PtMarking::from_entries({{0, 1}, {1, 1}}), PtMarking::single(2));
    os.nets.push_back(n1);
    os.nets.push_back(n2);
    for (const char* p : {"p1", "p2", "p3", "p4", "p5", "p6"}) os.system.add_place(p);
    os.system.add_trans("t", PtMarking::from_entries({{0, 1}, {1, 1}, {2, 1}}),
                        PtMarking::from_entries({{3, 1}, {4, 1}, {5, 1}}));
    os.typing = {1, 1, 2, 1, 2, 2};
    EosEvent ev;
    ev.idle = false;
    ev.sys = 0;
    ev.sync.resize(3);
    ev.sync[1].add(0);
    ev.sync[2].add(0);
    os.events.push_back(ev);

    NestedMarking mu;
    mu.add(Addend{0, PtMarking::from_entries({{0, 1}, {1, 1}})});
    mu.add(Addend{0, {}});
    mu.add(Addend{1, PtMarking::single(0)});
    mu.add(Addend{2, PtMarking::from_entries({{0, 1}, {1, 1}})});

    ProjKey k = proj_key(os, mu);
    CHECK(k.system == PtMarking::from_entries({{0, 2}, {1, 1}, {2, 1}}));
    REQUIRE(k.per_net.size() == 3);
    CHECK(k.per_net[1] == PtMarking::from_entries({{0, 2}, {1, 1}}));
    CHECK(k.per_net[2] == PtMarking::from_entries({{0, 1}, {1, 1}}));

    // moving a token between same-typed carriers preserves the key
    NestedMarking nu;
    nu.add(Addend{0, PtMarking::single(1)});
    nu.add(Addend{0, PtMarking::single(0)});
    nu.add(Addend{1, PtMarking::single(0)});
    nu.add(Addend{2, PtMarking::from_entries({{0, 1}, {1, 1}})});
    CHECK(proj_key(os, nu) == k);
    CHECK(marking_key(os, nu) != marking_key(os, mu));

    // and reshuffling is exactly what the key quotients away
    gen::Rng rng(5);
    for (int i = 0; i < 50; ++i)
        CHECK(proj_key(os, gen::reshuffle_projections(rng, os, mu)) == k);
}

TEST_CASE("mode digests are deterministic and projection-sensitive") {
    Eos os = kitchen();
    auto P = [&](const char* x) { return *os.system.place_index(x); };
    auto R = [&](const char* x) { return *os.nets[1].place_index(x); };
    NestedMarking mu;
    mu.add(Addend{P("S1"), PtMarking::single(R("s"))});
    NestedMarking done;
    done.add(Addend{P("S1"), PtMarking::from_entries({{R("p1"), 1}, {R("p2"), 1}})});

    Mode m1{mu, done};
    Mode m2{mu, mu};
    CHECK(mode_digest(os, m1) == mode_digest(os, m1));
    CHECK(mode_digest(os, m1) != mode_digest(os, m2));
}

TEST_CASE("truncated groups still canonicalise soundly") {
    Eos os = kitchen();
    AutGroup g = eos_automorphisms(os, 2);  // cap below the true order
    CHECK(g.truncated);
    NestedMarking mu;
    mu.add(Addend{*os.system.place_index("S2"),
                  PtMarking::single(*os.nets[1].place_index("s"))});
    CanonicalResult c = canonicalize(os, mu, g);
    // the result is still an orbit member reachable by a listed element
    CHECK(apply_to_marking(os, c.witness, mu) == c.marking);
    CHECK(marking_key(os, c.marking) <= marking_key(os, mu));
}
