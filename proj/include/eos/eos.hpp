#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "eos/multiset.hpp"
#include "eos/ptnet.hpp"

namespace eos {

using NetIdx = std::int32_t;

// Index of the built-in black-token net. It has no places and no
// transitions; markings on places of this type are plain tokens.
constexpr NetIdx kBlackNet = 0;

// One summand p[M] of a nested marking: a net-token with marking M lying on
// system place p. For black-typed places M is empty.
struct Addend {
    PlaceIdx place = 0;
    PtMarking tokens;
    bool operator==(const Addend&) const = default;
    auto operator<=>(const Addend&) const = default;
};

// Nested marking: multiset of net-token addends.
using NestedMarking = Multiset<Addend>;

// Event tau[theta]: a system part (transition, or the implicit idle
// transition of a place) plus one transition multiset per object net.
// sync[kBlackNet] is always empty.
struct EosEvent {
    bool idle = false;
    std::int32_t sys = 0;  // transition index, or place index when idle
    std::vector<Multiset<TransIdx>> sync;
    bool operator==(const EosEvent&) const = default;
    auto operator<=>(const EosEvent&) const = default;
};

// Channel-based synchronisation labels; events can be generated from them.
struct EosLabels {
    std::vector<std::string> channels;  // interned channel names
    // system[t][n]: multiset of channel indices transition t demands of net n
    std::vector<std::vector<Multiset<std::int32_t>>> system;
    // object[n][t]: channel index carried by transition t of net n, or -1
    std::vector<std::vector<std::int32_t>> object;

    bool operator==(const EosLabels&) const = default;
};

// Two-level object system: a system net whose places are typed with object
// nets and whose events synchronise a system part with object transitions.
struct Eos {
    PtNet system;
    std::vector<PtNet> nets;     // nets[0] is the black-token net
    std::vector<NetIdx> typing;  // per system place
    std::vector<EosEvent> events;
    std::optional<EosLabels> labels;

    Eos();

    NetIdx add_net(PtNet n);
    const PtNet& net_of_place(PlaceIdx p) const { return nets[typing[p]]; }
    bool place_is_black(PlaceIdx p) const { return typing[p] == kBlackNet; }
    std::optional<NetIdx> net_index(std::string_view name) const;

    bool operator==(const Eos&) const = default;
};

struct Diagnostic {
    std::string code;
    std::string message;
    int line = 0;  // 0 when not tied to source text
    int col = 0;
};

// Structural checks: typing total and well-formed, events reference declared
// transitions, idle events synchronise exactly with the net typing their
// place. Returns one diagnostic per violation.
std::vector<Diagnostic> validate(const Eos& os);

// Marking-level checks: addends lie on declared places, token multisets use
// places of the typing net, black-typed addends are empty.
std::vector<Diagnostic> validate_marking(const Eos& os, const NestedMarking& mu);

// Every system transition's input types also occur among its output types
// (black excluded): net-tokens can be moved or merged but never vanish.
bool is_conservative(const Eos& os);

// All system places are black-typed.
bool is_pt_like(const Eos& os);

// Projection to the system layer: forgets token multisets.
PtMarking pi1(const NestedMarking& mu);

// Projection to one object net: sums the token multisets lying on places of
// that type.
PtMarking pi2(const Eos& os, const NestedMarking& mu, NetIdx n);

// Sub-marking order on nested markings (addend-multiset containment).
bool nested_leq(const NestedMarking& a, const NestedMarking& b);

// Liberal order: an injection of a's addend occurrences into b's such that
// places agree and token multisets are pointwise dominated. Returns the
// injection over the expanded addend lists, or nullopt.
std::optional<std::vector<std::size_t>> liberal_leq(const NestedMarking& a,
                                                    const NestedMarking& b);

// The sub-marking of b selected by an injection returned from liberal_leq.
NestedMarking liberal_submarking(const NestedMarking& b,
                                 const std::vector<std::size_t>& f);

class LabelBlowup : public std::runtime_error {
public:
    explicit LabelBlowup(const std::string& what) : std::runtime_error(what) {}
};

// Generates the event set from channel labels:
//  - labelled system transitions get one event per combination of object
//    transition multisets whose label sums match the demanded channels;
//  - unlabelled system transitions become autonomous events tau[0];
//  - unlabelled object transitions become idle events at every place of
//    their net's type.
// max_sync bounds the transition multiset size per net; exceeding event_cap
// throws LabelBlowup.
std::vector<EosEvent> events_from_labels(const Eos& os, std::size_t max_sync,
                                         std::size_t event_cap = 100000);

// Enabling predicate for event ev with mode (lambda, rho): lambda projects
// to the event's system input, rho to its output, every object net's token
// sum in lambda covers the synchronised transitions' input, and rho carries
// exactly the transformed token sums.
bool phi(const Eos& os, const EosEvent& ev, const NestedMarking& lambda,
         const NestedMarking& rho);

struct Mode {
    NestedMarking lambda;
    NestedMarking rho;
    bool operator==(const Mode&) const = default;
    auto operator<=>(const Mode&) const = default;
};

struct ModeCaps {
    std::size_t max_lambda = 10000;  // input-candidate cap per event
    std::size_t max_rho = 10000;     // output-distribution cap per event
    bool proj_collapse = false;      // keep one mode per projection class
};

struct ModeList {
    std::vector<Mode> modes;  // sorted by marking key of (lambda, rho)
    bool truncated = false;
};

// All modes of ev enabled in mu: input candidates are choices of whole
// addends of mu matching the system input placewise; outputs enumerate every
// distribution of the transformed token sums over the typed output places.
ModeList enumerate_modes(const Eos& os, const NestedMarking& mu,
                         const EosEvent& ev, const ModeCaps& caps = {});

// Successor marking mu - lambda + rho; throws NotEnabled (naming the failing
// condition) unless lambda is a sub-marking of mu and phi holds.
NestedMarking fire(const Eos& os, const NestedMarking& mu, const EosEvent& ev,
                   const Mode& mode);

struct EnabledList {
    std::vector<std::pair<std::size_t, Mode>> items;  // (event index, mode)
    bool truncated = false;
};

// Concatenation of enumerate_modes over all events in declaration order.
EnabledList enabled_events(const Eos& os, const NestedMarking& mu,
                           const ModeCaps& caps = {});

}  // namespace eos
