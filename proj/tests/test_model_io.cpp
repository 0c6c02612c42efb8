#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <fstream>
#include <random>
#include <sstream>

#include "eos/eos.hpp"
#include "eos/model_io.hpp"

using namespace eos;

static std::string slurp(const char* name) {
    std::ifstream in(std::string(EOS_FIXTURE_DIR) + "/" + name);
    REQUIRE(in.good());
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

TEST_CASE("staple fixture parses to the expected structure") {
    ModelDocument doc = parse_model(slurp("eos-s8.eos"));
    REQUIRE(doc.ok());
    const Eos& os = doc.model;

    REQUIRE(os.nets.size() == 3);  // black + two declared
    CHECK(os.nets[1].name == "N1");
    CHECK(os.nets[2].name == "N2");
    CHECK(os.nets[1].place_count() == 2);
    CHECK(os.nets[2].place_count() == 3);
    CHECK(os.system.place_count() == 6);
    CHECK(os.system.trans_count() == 1);
    CHECK(os.typing == std::vector<NetIdx>{1, 1, 2, 1, 2, 2});

    REQUIRE(os.events.size() == 1);
    CHECK(!os.events[0].idle);
    CHECK(os.events[0].sys == 0);
    CHECK(os.events[0].sync[1] == Multiset<TransIdx>::single(0));
    CHECK(os.events[0].sync[2] == Multiset<TransIdx>::single(0));

    REQUIRE(doc.initial.card() == 4);
    CHECK(pi1(doc.initial) ==
          PtMarking::from_entries({{0, 2}, {1, 1}, {2, 1}}));
    CHECK(doc.events_mode == EventsMode::Explicit);
}

TEST_CASE("kitchen fixture parses with labels and generated events") {
    ModelDocument doc = parse_model(slurp("kitchen.eos"));
    REQUIRE(doc.ok());
    const Eos& os = doc.model;
    CHECK(doc.events_mode == EventsMode::FromLabels);
    CHECK(doc.max_sync == 1);
    CHECK(os.nets[1].name == "recipe");
    CHECK(os.typing == std::vector<NetIdx>{1, 1, 1});

    // 6 free moves + 4 synchronised work steps + idle a/d at three stations
    std::size_t moves = 0, syncs = 0, idles = 0;
    for (const EosEvent& ev : os.events) {
        if (ev.idle)
            ++idles;
        else if (ev.sync[1].empty())
            ++moves;
        else
            ++syncs;
    }
    CHECK(moves == 6);
    CHECK(syncs == 4);
    CHECK(idles == 6);

    REQUIRE(os.labels.has_value());
    CHECK(os.labels->channels.size() == 2);
}

TEST_CASE("pt-like fixture round-trips black tokens") {
    ModelDocument doc = parse_model(slurp("ptlike.eos"));
    REQUIRE(doc.ok());
    CHECK(is_pt_like(doc.model));
    CHECK(doc.initial.card() == 3);
    for (const auto& [ad, c] : doc.initial) CHECK(ad.tokens.empty());
}

TEST_CASE("render and reparse is the identity on the document") {
    for (const char* f : {"eos-s8.eos", "kitchen.eos", "ptlike.eos"}) {
        CAPTURE(f);
        ModelDocument doc = parse_model(slurp(f));
        REQUIRE(doc.ok());
        std::string text = render_model(doc);
        ModelDocument again = parse_model(text);
        REQUIRE(again.ok());
        CHECK(again.model == doc.model);
        CHECK(again.initial == doc.initial);
        CHECK(again.events_mode == doc.events_mode);
        CHECK(again.max_sync == doc.max_sync);
        // a second render is byte-identical: rendering reached a fixpoint
        CHECK(render_model(again) == text);
    }
}

TEST_CASE("marking renderer formats") {
    ModelDocument doc = parse_model(slurp("eos-s8.eos"));
    const Eos& os = doc.model;
    CHECK(render_marking(os, doc.initial) ==
          "1'p1[] + 1'p1[a1+b1] + 1'p2[a1] + 1'p3[a2+b2]");
    CHECK(render_marking(os, {}) == "0");

    NestedMarking m;
    m.add(Addend{0, PtMarking::single(1, 2)}, 3);
    CHECK(render_marking(os, m) == "3'p1[2'b1]");

    CHECK(render_pt_marking(os.system, pi1(doc.initial)) == "2'p1 + 1'p2 + 1'p3");
    CHECK(render_pt_marking(os.system, {}) == "0");
}

TEST_CASE("event labels") {
    ModelDocument doc = parse_model(slurp("kitchen.eos"));
    const Eos& os = doc.model;
    std::set<std::string> labels;
    for (const EosEvent& ev : os.events) labels.insert(event_label(os, ev));
    CHECK(labels.count("mv12[]"));
    CHECK(labels.count("do_b1[recipe:b]"));
    CHECK(labels.count("id@S3[recipe:a]"));

    ModelDocument s8 = parse_model(slurp("eos-s8.eos"));
    CHECK(event_label(s8.model, s8.model.events[0]) == "t[N1:t1,N2:t2]");
}

TEST_CASE("parse_marking resolves against a finished model") {
    ModelDocument doc = parse_model(slurp("kitchen.eos"));
    std::vector<Diagnostic> diags;
    auto mu = parse_marking(doc.model, "1'S1[1'p1+1'p4] + 2'S2[]", diags);
    CHECK(diags.empty());
    REQUIRE(mu.has_value());
    CHECK(mu->card() == 3);
    CHECK(render_marking(doc.model, *mu) == "1'S1[p1+p4] + 2'S2[]");

    diags.clear();
    parse_marking(doc.model, "1'S9[]", diags);
    REQUIRE(!diags.empty());
    CHECK(diags[0].code == "UnknownId");

    diags.clear();
    parse_marking(doc.model, "1'S1[1'nope]", diags);
    REQUIRE(!diags.empty());
    CHECK(diags[0].code == "UnknownId");
}

TEST_CASE("diagnostics carry positions and codes") {
    auto diag_of = [](const std::string& text) {
        ModelDocument doc = parse_model(text);
        REQUIRE(!doc.ok());
        return doc.diagnostics.front();
    };

    SUBCASE("unknown place in an arc") {
        Diagnostic d = diag_of(
            "systemnet\n"
            "  place q\n"
            "  type q dot\n"
            "  trans t pre 1'zz post 1'q\n"
            "end\n"
            "initial 0\n");
        CHECK(d.code == "UnknownId");
        CHECK(d.line == 4);
        CHECK(d.col > 10);
    }
    SUBCASE("missing type") {
        Diagnostic d = diag_of(
            "systemnet\n"
            "  place q\n"
            "end\n"
            "initial 1'q[]\n");
        CHECK(d.code == "TypingNotTotal");
    }
    SUBCASE("unknown net in typing") {
        Diagnostic d = diag_of(
            "systemnet\n"
            "  place q\n"
            "  type q nosuch\n"
            "end\n"
            "initial 0\n");
        CHECK(d.code == "UnknownId");
        CHECK(d.line == 3);
    }
    SUBCASE("malformed multiset") {
        Diagnostic d = diag_of(
            "systemnet\n"
            "  place q\n"
            "  type q dot\n"
            "  trans t pre 1' post 1'q\n"
            "end\n"
            "initial 0\n");
        CHECK(d.code == "MalformedMultiset");
        CHECK(d.line == 4);
    }
    SUBCASE("duplicate declaration") {
        Diagnostic d = diag_of(
            "systemnet\n"
            "  place q\n"
            "  place q\n"
            "  type q dot\n"
            "end\n"
            "initial 0\n");
        CHECK(d.code == "DuplicateDeclaration");
        CHECK(d.line == 3);
    }
    SUBCASE("event on an unknown transition") {
        Diagnostic d = diag_of(
            "systemnet\n"
            "  place q\n"
            "  type q dot\n"
            "end\n"
            "events explicit\n"
            "  event nosuch {}\n"
            "end\n"
            "initial 0\n");
        CHECK(d.code == "UnknownId");
        CHECK(d.line == 6);
    }
    SUBCASE("idle event on a mistyped net") {
        Diagnostic d = diag_of(
            "objectnet W\n"
            "  place x\n"
            "  trans f pre 1'x post 1'x\n"
            "end\n"
            "systemnet\n"
            "  place q\n"
            "  type q dot\n"
            "end\n"
            "events explicit\n"
            "  event id@q { W: f }\n"
            "end\n"
            "initial 0\n");
        CHECK((d.code == "IdleTypeMismatch" || d.code == "BlackSync"));
    }
}

TEST_CASE("the black net accepts both spellings") {
    for (const char* ty : {"dot", "•"}) {
        CAPTURE(ty);
        ModelDocument doc = parse_model(std::string("systemnet\n  place q\n  type q ") + ty +
                                        "\nend\ninitial 1'q[]\n");
        REQUIRE(doc.ok());
        CHECK(doc.model.typing[0] == kBlackNet);
    }
}

TEST_CASE("huge multiplicities are clamped, not wrapped") {
    ModelDocument doc = parse_model(
        "systemnet\n"
        "  place q\n"
        "  type q dot\n"
        "end\n"
        "initial 99999999999999999'q[]\n");
    REQUIRE(doc.ok());
    CHECK(doc.initial.card() == 1000000);
}

TEST_CASE("mutated fixture text never crashes the parser") {
    std::string base = slurp("kitchen.eos");
    std::mt19937 rng(20240818);
    for (int iter = 0; iter < 200; ++iter) {
        std::string text = base;
        int edits = 1 + static_cast<int>(rng() % 4);
        for (int e = 0; e < edits; ++e) {
            std::size_t pos = rng() % text.size();
            switch (rng() % 4) {
                case 0: text[pos] = static_cast<char>(32 + rng() % 95); break;
                case 1: text.erase(pos, 1 + rng() % 5); break;
                case 2: text.insert(pos, 1, static_cast<char>(32 + rng() % 95)); break;
                case 3: text.insert(pos, "\n"); break;
            }
            if (text.empty()) text = " ";
        }
        ModelDocument doc = parse_model(text);  // must not throw or crash
        if (!doc.ok()) {
            CHECK(!doc.diagnostics.front().code.empty());
            CHECK(doc.diagnostics.front().line >= 1);
        }
    }
}

TEST_CASE("empty and junk inputs") {
    CHECK(!parse_model("").ok());
    CHECK(!parse_model("\n\n# only a comment\n").ok());
    CHECK(!parse_model("garbage line\n").ok());
    ModelDocument doc = parse_model("systemnet\nend\ninitial 0\n");
    CHECK(doc.ok());  // zero places is degenerate but well-formed
    CHECK(doc.model.system.place_count() == 0);
}
