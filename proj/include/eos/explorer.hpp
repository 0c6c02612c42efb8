#pragma once

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "eos/canonical.hpp"
#include "eos/eos.hpp"
#include "eos/symmetry.hpp"

namespace eos {

enum class Reduction { None, Aut, Proj, AutProj };

const char* reduction_name(Reduction r);

struct Bounds {
    std::size_t max_states = 100000;
    std::size_t max_depth = std::numeric_limits<std::size_t>::max();
    ModeCaps mode_caps{};
};

struct ReachEdge {
    std::size_t src;
    std::size_t event;  // index into the model's event list
    std::uint64_t mode_digest;
    std::size_t dst;
};

struct ReachGraph {
    Reduction reduction = Reduction::None;
    std::vector<NestedMarking> states;  // representatives; witnesses in proj modes
    std::vector<ReachEdge> edges;
    std::size_t initial = 0;
    bool truncated = false;
    std::uint64_t group_order = 1;
    // Projection-based quotients are empirically validated, never assumed exact.
    bool heuristic = false;
    double wall_ms = 0.0;
};

// Breadth-first closure under fire() over all enabled (event, mode) pairs.
// States are deduplicated by content; numbering is discovery order, which is
// deterministic because events run in declaration order and modes in key
// order.
ReachGraph explore_full(const Eos& os, const NestedMarking& mu0, const Bounds& b = {});

// Same search, but every discovered marking is replaced by its minimal
// group image before deduplication.
ReachGraph explore_reduced(const Eos& os, const NestedMarking& mu0, const AutGroup& g,
                           const Bounds& b = {});

// States are projection classes, explored from the first witness seen.
ReachGraph explore_proj(const Eos& os, const NestedMarking& mu0, const Bounds& b = {});

// Projection classes of minimal group images.
ReachGraph explore_aut_proj(const Eos& os, const NestedMarking& mu0, const AutGroup& g,
                            const Bounds& b = {});

struct DotOptions {
    bool show_markings = true;
    std::size_t max_label_len = 60;
};

std::string export_dot(const Eos& os, const ReachGraph& g, const DotOptions& opt = {});

// {"states": …, "edges": …, "truncated": …, "group_order": …, "reduction": …}
// plus "wall_ms" only on request, so that default output is byte-stable.
std::string stats_json(const ReachGraph& g, bool include_wall_ms = false);

struct QuotientReport {
    std::vector<std::string> violations;
    std::size_t full_states = 0;
    std::size_t reduced_states = 0;

    bool ok() const { return violations.empty(); }
};

struct IncomparableGraphs : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Checks that `reduced` is the exact quotient of `full`: the representative
// map is surjective onto the reduced states, every full edge has a reduced
// image whose event lies in the automorphism orbit of the original, and
// every reduced edge is covered by some full edge.
QuotientReport verify_quotient(const Eos& os, const ReachGraph& full, const ReachGraph& reduced,
                               const AutGroup& g);

// Same surjectivity checks against a projection quotient. Edge
// correspondence is class-level in both directions: members of one
// projection class can enable different events, so quotient edges carry no
// canonical event label and only the induced edge relation is compared.
QuotientReport verify_proj_quotient(const Eos& os, const ReachGraph& full,
                                    const ReachGraph& proj);

// Combined reduction: group images first, projection classes second.
// Edge correspondence is class-level, as for the projection quotient.
QuotientReport verify_aut_proj_quotient(const Eos& os, const ReachGraph& full,
                                        const ReachGraph& reduced, const AutGroup& g);

}  // namespace eos
