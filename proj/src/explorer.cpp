#include "eos/explorer.hpp"

#include <chrono>
#include <deque>
#include <functional>
#include <map>
#include <set>
#include <tuple>

#include "eos/model_io.hpp"

namespace eos {

const char* reduction_name(Reduction r) {
    switch (r) {
        case Reduction::None: return "none";
        case Reduction::Aut: return "aut";
        case Reduction::Proj: return "proj";
        case Reduction::AutProj: return "aut+proj";
    }
    return "?";
}

namespace {

using Transform = std::function<NestedMarking(const NestedMarking&)>;

template <typename KeyFn>
ReachGraph bfs(const Eos& os, const NestedMarking& mu0, const Bounds& b, Reduction red,
               const Transform& transform, KeyFn keyfn) {
    auto t0 = std::chrono::steady_clock::now();
    ReachGraph g;
    g.reduction = red;
    std::size_t max_states = b.max_states ? b.max_states : 1;

    using Key = decltype(keyfn(mu0));
    std::map<Key, std::size_t> index;
    std::vector<std::size_t> depth;

    // Returns the state index, or no value when the state cap cuts the
    // graph; fresh reports first discovery.
    auto intern = [&](const NestedMarking& raw, bool& fresh) -> std::optional<std::size_t> {
        NestedMarking rep = transform(raw);
        Key key = keyfn(rep);
        auto it = index.find(key);
        if (it != index.end()) {
            fresh = false;
            return it->second;
        }
        if (g.states.size() >= max_states) {
            g.truncated = true;
            return std::nullopt;
        }
        fresh = true;
        std::size_t idx = g.states.size();
        g.states.push_back(std::move(rep));
        index.emplace(std::move(key), idx);
        return idx;
    };

    bool fresh = false;
    g.initial = *intern(mu0, fresh);
    depth.push_back(0);
    std::deque<std::size_t> queue{g.initial};
    while (!queue.empty()) {
        std::size_t s = queue.front();
        queue.pop_front();
        EnabledList enabled = enabled_events(os, g.states[s], b.mode_caps);
        g.truncated = g.truncated || enabled.truncated;
        if (depth[s] >= b.max_depth) {
            if (!enabled.items.empty()) g.truncated = true;
            continue;
        }
        for (const auto& [eidx, mode] : enabled.items) {
            NestedMarking succ = fire(os, g.states[s], os.events[eidx], mode);
            auto t = intern(succ, fresh);
            if (!t) continue;
            g.edges.push_back({s, eidx, mode_digest(os, mode), *t});
            if (fresh) {
                depth.push_back(depth[s] + 1);
                queue.push_back(*t);
            }
        }
    }
    g.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
                    .count();
    return g;
}

}  // namespace

ReachGraph explore_full(const Eos& os, const NestedMarking& mu0, const Bounds& b) {
    return bfs(
        os, mu0, b, Reduction::None, [](const NestedMarking& m) { return m; },
        [&](const NestedMarking& m) { return marking_key(os, m); });
}

ReachGraph explore_reduced(const Eos& os, const NestedMarking& mu0, const AutGroup& g,
                           const Bounds& b) {
    ReachGraph out = bfs(
        os, mu0, b, Reduction::Aut,
        [&](const NestedMarking& m) { return canonicalize(os, m, g).marking; },
        [&](const NestedMarking& m) { return marking_key(os, m); });
    out.group_order = g.elements.size();
    return out;
}

ReachGraph explore_proj(const Eos& os, const NestedMarking& mu0, const Bounds& b) {
    ReachGraph out = bfs(
        os, mu0, b, Reduction::Proj, [](const NestedMarking& m) { return m; },
        [&](const NestedMarking& m) { return proj_key(os, m); });
    out.heuristic = true;
    return out;
}

ReachGraph explore_aut_proj(const Eos& os, const NestedMarking& mu0, const AutGroup& g,
                            const Bounds& b) {
    ReachGraph out = bfs(
        os, mu0, b, Reduction::AutProj,
        [&](const NestedMarking& m) { return canonicalize(os, m, g).marking; },
        [&](const NestedMarking& m) { return proj_key(os, m); });
    out.group_order = g.elements.size();
    out.heuristic = true;
    return out;
}

// ------------------------------------------------------------------ output

namespace {

std::string dot_escape(std::string_view s, std::size_t max_len) {
    std::string out;
    for (char c : s) {
        if (out.size() >= max_len) {
            out += "...";
            break;
        }
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    return out;
}

}  // namespace

std::string export_dot(const Eos& os, const ReachGraph& g, const DotOptions& opt) {
    std::string out = "digraph reach {\n  rankdir=LR;\n  node [shape=box fontname=\"monospace\"];\n";
    for (std::size_t i = 0; i < g.states.size(); ++i) {
        out += "  s" + std::to_string(i) + " [label=\"";
        if (opt.show_markings) {
            out += dot_escape("s" + std::to_string(i) + ": " + render_marking(os, g.states[i]),
                              opt.max_label_len);
        } else {
            out += "s" + std::to_string(i);
        }
        out += '"';
        if (i == g.initial) out += " peripheries=2";
        out += "];\n";
    }
    for (const ReachEdge& e : g.edges) {
        out += "  s" + std::to_string(e.src) + " -> s" + std::to_string(e.dst) + " [label=\"" +
               dot_escape(event_label(os, os.events[e.event]), opt.max_label_len) + "\"];\n";
    }
    out += "}\n";
    return out;
}

std::string stats_json(const ReachGraph& g, bool include_wall_ms) {
    std::string out = "{\"states\": " + std::to_string(g.states.size()) +
                      ", \"edges\": " + std::to_string(g.edges.size()) +
                      ", \"truncated\": " + (g.truncated ? "true" : "false") +
                      ", \"group_order\": " + std::to_string(g.group_order) +
                      ", \"reduction\": \"" + reduction_name(g.reduction) + "\"";
    if (include_wall_ms) out += ", \"wall_ms\": " + std::to_string(g.wall_ms);
    out += "}\n";
    return out;
}

// ------------------------------------------------------------ verification

namespace {

// Edge correspondence policy.  Automorphism quotients preserve event labels
// up to the group action, so their edges are matched event-wise (within the
// orbit).  Projection classes merge markings whose enabled events can differ
// member by member — no event labelling of quotient edges is well defined —
// so those verifiers compare the induced class-level edge relations only.
enum class EdgeMatch { ByEvent, ByClass };

template <typename KeyFn>
QuotientReport check_quotient(const Eos& os, const ReachGraph& full, const ReachGraph& reduced,
                              KeyFn keyfn, const AutGroup* orbits, EdgeMatch match) {
    if (full.reduction != Reduction::None)
        throw IncomparableGraphs("first graph is not a full exploration");
    if (full.truncated)
        throw IncomparableGraphs("full graph is truncated; quotient not checkable");

    QuotientReport rep;
    rep.full_states = full.states.size();
    rep.reduced_states = reduced.states.size();

    using Key = decltype(keyfn(full.states[0]));
    std::map<Key, std::size_t> ridx;
    for (std::size_t i = 0; i < reduced.states.size(); ++i) {
        auto [it, inserted] = ridx.emplace(keyfn(reduced.states[i]), i);
        if (!inserted)
            rep.violations.push_back("reduced states " + std::to_string(it->second) + " and " +
                                     std::to_string(i) + " share one representative");
    }

    constexpr std::size_t kMissing = static_cast<std::size_t>(-1);
    std::vector<std::size_t> cmap(full.states.size(), kMissing);
    std::vector<bool> hit(reduced.states.size(), false);
    for (std::size_t i = 0; i < full.states.size(); ++i) {
        auto it = ridx.find(keyfn(full.states[i]));
        if (it == ridx.end()) {
            rep.violations.push_back("full state " + std::to_string(i) +
                                     " has no representative in the reduced graph");
            continue;
        }
        cmap[i] = it->second;
        hit[it->second] = true;
    }
    for (std::size_t j = 0; j < reduced.states.size(); ++j)
        if (!hit[j])
            rep.violations.push_back("reduced state " + std::to_string(j) +
                                     " is not the image of any full state");
    if (cmap[full.initial] != kMissing && cmap[full.initial] != reduced.initial)
        rep.violations.push_back("initial states do not correspond");

    // Event orbits under the group; exact matching when no group is given.
    std::map<EosEvent, std::size_t> eindex;
    for (std::size_t i = 0; i < os.events.size(); ++i) eindex.emplace(os.events[i], i);
    std::vector<std::set<std::size_t>> orbit(os.events.size());
    for (std::size_t i = 0; i < os.events.size(); ++i) {
        orbit[i].insert(i);
        if (orbits)
            for (const EosAutomorphism& a : orbits->elements)
                orbit[i].insert(eindex.at(apply_to_event(os, a, os.events[i])));
    }

    // Class-level matching erases the event component before comparison.
    auto ekey = [&](std::size_t event) { return match == EdgeMatch::ByEvent ? event : 0; };

    std::set<std::tuple<std::size_t, std::size_t, std::size_t>> redges, fimages;
    for (const ReachEdge& e : reduced.edges) redges.insert({e.src, ekey(e.event), e.dst});
    for (const ReachEdge& e : full.edges)
        if (cmap[e.src] != kMissing && cmap[e.dst] != kMissing)
            fimages.insert({cmap[e.src], ekey(e.event), cmap[e.dst]});

    auto orbit_match = [&](const std::set<std::tuple<std::size_t, std::size_t, std::size_t>>& set,
                           std::size_t src, std::size_t event, std::size_t dst) {
        if (match == EdgeMatch::ByClass) return set.count({src, std::size_t{0}, dst}) > 0;
        for (std::size_t e2 : orbit[event])
            if (set.count({src, e2, dst})) return true;
        return false;
    };

    for (const ReachEdge& e : full.edges) {
        if (cmap[e.src] == kMissing || cmap[e.dst] == kMissing) continue;
        if (!orbit_match(redges, cmap[e.src], e.event, cmap[e.dst]))
            rep.violations.push_back(
                "full edge s" + std::to_string(e.src) + " -> s" + std::to_string(e.dst) + " (" +
                event_label(os, os.events[e.event]) + ") has no image in the reduced graph");
    }
    for (const ReachEdge& e : reduced.edges) {
        if (!orbit_match(fimages, e.src, e.event, e.dst))
            rep.violations.push_back(
                "reduced edge s" + std::to_string(e.src) + " -> s" + std::to_string(e.dst) +
                " (" + event_label(os, os.events[e.event]) + ") covers no full edge");
    }
    return rep;
}

}  // namespace

QuotientReport verify_quotient(const Eos& os, const ReachGraph& full, const ReachGraph& reduced,
                               const AutGroup& g) {
    if (reduced.reduction != Reduction::Aut)
        throw IncomparableGraphs("second graph is not an automorphism quotient");
    return check_quotient(
        os, full, reduced,
        [&](const NestedMarking& m) { return marking_key(os, canonicalize(os, m, g).marking); },
        &g, EdgeMatch::ByEvent);
}

QuotientReport verify_proj_quotient(const Eos& os, const ReachGraph& full,
                                    const ReachGraph& proj) {
    if (proj.reduction != Reduction::Proj)
        throw IncomparableGraphs("second graph is not a projection quotient");
    return check_quotient(
        os, full, proj, [&](const NestedMarking& m) { return proj_key(os, m); }, nullptr,
        EdgeMatch::ByClass);
}

QuotientReport verify_aut_proj_quotient(const Eos& os, const ReachGraph& full,
                                        const ReachGraph& reduced, const AutGroup& g) {
    if (reduced.reduction != Reduction::AutProj)
        throw IncomparableGraphs("second graph is not a combined quotient");
    return check_quotient(
        os, full, reduced,
        [&](const NestedMarking& m) { return proj_key(os, canonicalize(os, m, g).marking); },
        &g, EdgeMatch::ByClass);
}

}  // namespace eos
