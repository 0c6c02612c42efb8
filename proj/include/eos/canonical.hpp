#pragma once

#include <compare>
#include <cstdint>
#include <vector>

#include "eos/eos.hpp"
#include "eos/symmetry.hpp"

namespace eos {

// Total order on nested markings: one row per addend occurrence, the inner
// marking laid out as a count vector over the owning net's declared place
// order (fixed width, zero padded), rows sorted.
struct MarkingKey {
    std::vector<std::pair<PlaceIdx, std::vector<Count>>> rows;
    auto operator<=>(const MarkingKey&) const = default;
};

MarkingKey marking_key(const Eos& os, const NestedMarking& mu);

struct CanonicalResult {
    NestedMarking marking;
    EosAutomorphism witness;  // maps the input onto the representative
};

// Minimal image of mu over the group's elements, by marking_key order.
// With a subgroup (truncated group) the result is still inside mu's orbit,
// merely not guaranteed minimal over the full group.
CanonicalResult canonicalize(const Eos& os, const NestedMarking& mu, const AutGroup& g);

// Forgetful class key: the system-place multiset plus the per-net sums of
// the net-token markings. Marking equality implies key equality; the
// converse does not hold.
struct ProjKey {
    PtMarking system;
    std::vector<PtMarking> per_net;  // aligned with Eos::nets
    auto operator<=>(const ProjKey&) const = default;
};

ProjKey proj_key(const Eos& os, const NestedMarking& mu);

// Stable content digest of a firing mode, for compact edge annotations.
std::uint64_t mode_digest(const Eos& os, const Mode& m);

}  // namespace eos
