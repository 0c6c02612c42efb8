#pragma once

#include <compare>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "eos/eos.hpp"

namespace eos {

// Node permutation of a single p/t net, stored as image-by-index.
struct PtAutomorphism {
    std::vector<PlaceIdx> place_perm;
    std::vector<TransIdx> trans_perm;

    bool is_identity() const;
    auto operator<=>(const PtAutomorphism&) const = default;
};

PtAutomorphism pt_identity(const PtNet& n);
// Composition acts as apply g first, then f.
PtAutomorphism pt_compose(const PtAutomorphism& f, const PtAutomorphism& g);
PtAutomorphism pt_inverse(const PtAutomorphism& f);

// True iff cand is a bijection pair commuting with pre and post.
// Throws std::invalid_argument if the candidate is not shaped like a
// bijection on the declared nodes.
bool check_pt_automorphism(const PtNet& n, const PtAutomorphism& cand);

struct PtAutList {
    std::vector<PtAutomorphism> elements;  // sorted
    bool truncated = false;
};

// All automorphisms of n, by backtracking over a color refinement of the
// nodes. place_colors, when given, adds a same-color constraint on place
// images (used to force typing preservation on system nets).
PtAutList pt_automorphisms(const PtNet& n, std::size_t cap = 10000,
                           const std::vector<std::int32_t>* place_colors = nullptr);

PtMarking apply_pt(const PtAutomorphism& f, const PtMarking& m);
Multiset<TransIdx> apply_pt_trans(const PtAutomorphism& f, const Multiset<TransIdx>& ts);

// Component-wise automorphism of a whole object system: one permutation of
// the system net plus one per object net (index-aligned with Eos::nets;
// slot 0 is the empty permutation of the black net).
struct EosAutomorphism {
    PtAutomorphism system;
    std::vector<PtAutomorphism> objects;

    bool is_identity() const;
    auto operator<=>(const EosAutomorphism&) const = default;
};

// The image of an event under a candidate automorphism left the declared
// event set, so the candidate is not an automorphism of the system.
struct ImageNotInTheta : std::runtime_error {
    using std::runtime_error::runtime_error;
};

EosAutomorphism eos_identity(const Eos& os);
EosAutomorphism eos_compose(const EosAutomorphism& f, const EosAutomorphism& g);
EosAutomorphism eos_inverse(const EosAutomorphism& f);

// Component permutations valid, typing preserved, event set preserved.
bool check_eos_automorphism(const Eos& os, const EosAutomorphism& cand);

struct AutGroup {
    std::vector<EosAutomorphism> elements;  // sorted; identity always present
    std::vector<std::size_t> generators;    // indices into elements
    bool truncated = false;
};

// The full automorphism group: every combination of component automorphisms
// that preserves typing and the event set. Closed under composition and
// inverse when not truncated.
AutGroup eos_automorphisms(const Eos& os, std::size_t cap = 10000);

NestedMarking apply_to_marking(const Eos& os, const EosAutomorphism& a, const NestedMarking& mu);

// Image event: system transition (or idle place) and every synchronised
// transition multiset mapped through the components. Throws ImageNotInTheta
// when the image is not a declared event.
EosEvent apply_to_event(const Eos& os, const EosAutomorphism& a, const EosEvent& e);

Mode apply_to_mode(const Eos& os, const EosAutomorphism& a, const Mode& m);

// "(p1 p2)(t3 t4)" over node names; fixed points omitted; identity -> "()".
std::string cycle_notation(const PtNet& n, const PtAutomorphism& f);
std::string cycle_notation(const Eos& os, const EosAutomorphism& a);

}  // namespace eos
