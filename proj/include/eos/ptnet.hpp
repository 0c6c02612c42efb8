#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "eos/multiset.hpp"

namespace eos {

using PlaceIdx = std::int32_t;
using TransIdx = std::int32_t;

// Marking of a p/t net: multiset of place indices.
using PtMarking = Multiset<PlaceIdx>;

class UnknownNode : public std::runtime_error {
public:
    explicit UnknownNode(const std::string& what) : std::runtime_error(what) {}
};

class NotEnabled : public std::runtime_error {
public:
    NotEnabled(const std::string& what, std::size_t step = 0)
        : std::runtime_error(what), step_index(step) {}
    // For sequences: index of the first transition that failed to fire.
    std::size_t step_index;
};

// Place/transition net. Node indices follow declaration order; that order
// doubles as the total node order used by canonical keys and rendering.
struct PtNet {
    std::string name;
    std::vector<std::string> place_names;
    std::vector<std::string> trans_names;
    std::vector<PtMarking> pre;   // indexed by transition
    std::vector<PtMarking> post;  // indexed by transition

    std::size_t place_count() const { return place_names.size(); }
    std::size_t trans_count() const { return trans_names.size(); }

    std::optional<PlaceIdx> place_index(std::string_view n) const;
    std::optional<TransIdx> trans_index(std::string_view n) const;

    PlaceIdx add_place(std::string n);
    TransIdx add_trans(std::string n, PtMarking pre_m, PtMarking post_m);

    bool operator==(const PtNet&) const = default;
};

struct NodeRef {
    enum Kind { Place, Transition } kind;
    std::int32_t idx;
    bool operator==(const NodeRef&) const = default;
    auto operator<=>(const NodeRef&) const = default;
};

// Neighbourhoods. For a transition: the places it consumes from / produces
// to. For a place: the transitions producing into it / consuming from it.
std::vector<NodeRef> preset(const PtNet& n, NodeRef x);
std::vector<NodeRef> postset(const PtNet& n, NodeRef x);

bool pt_enabled(const PtNet& n, const PtMarking& m, TransIdx t);
PtMarking pt_fire(const PtNet& n, const PtMarking& m, TransIdx t);
PtMarking pt_fire_sequence(const PtNet& n, const PtMarking& m,
                           const std::vector<TransIdx>& seq);

struct PtReachResult {
    std::vector<PtMarking> markings;  // sorted
    bool truncated = false;
};

// Breadth-first closure of pt_fire from m0; stops with truncated=true once
// max_states markings have been collected.
PtReachResult pt_reach(const PtNet& n, const PtMarking& m0, std::size_t max_states);

// Extension of pre/post to transition multisets: weighted sum of the
// per-transition place multisets.
PtMarking pre_of(const PtNet& n, const Multiset<TransIdx>& ts);
PtMarking post_of(const PtNet& n, const Multiset<TransIdx>& ts);

}  // namespace eos
