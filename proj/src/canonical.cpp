#include "eos/canonical.hpp"

#include <algorithm>

namespace eos {

MarkingKey marking_key(const Eos& os, const NestedMarking& mu) {
    MarkingKey key;
    for (const auto& [ad, c] : mu) {
        const PtNet& net = os.net_of_place(ad.place);
        std::vector<Count> row(net.place_count(), 0);
        for (const auto& [q, qc] : ad.tokens) row[q] = qc;
        for (Count i = 0; i < c; ++i) key.rows.emplace_back(ad.place, row);
    }
    std::sort(key.rows.begin(), key.rows.end());
    return key;
}

CanonicalResult canonicalize(const Eos& os, const NestedMarking& mu, const AutGroup& g) {
    CanonicalResult best{mu, eos_identity(os)};
    MarkingKey best_key = marking_key(os, mu);
    for (const EosAutomorphism& a : g.elements) {
        NestedMarking img = apply_to_marking(os, a, mu);
        MarkingKey k = marking_key(os, img);
        if (k < best_key) {
            best_key = std::move(k);
            best = {std::move(img), a};
        }
    }
    return best;
}

ProjKey proj_key(const Eos& os, const NestedMarking& mu) {
    ProjKey key;
    key.system = pi1(mu);
    key.per_net.reserve(os.nets.size());
    for (std::size_t n = 0; n < os.nets.size(); ++n)
        key.per_net.push_back(pi2(os, mu, static_cast<NetIdx>(n)));
    return key;
}

namespace {

void digest_u64(std::uint64_t& h, std::uint64_t v) {
    // FNV-1a over the value's bytes; fixed widths keep this platform-stable.
    for (int i = 0; i < 8; ++i) {
        h ^= (v >> (8 * i)) & 0xff;
        h *= 0x100000001b3ULL;
    }
}

void digest_key(std::uint64_t& h, const MarkingKey& k) {
    digest_u64(h, k.rows.size());
    for (const auto& [p, row] : k.rows) {
        digest_u64(h, static_cast<std::uint64_t>(p));
        digest_u64(h, row.size());
        for (Count c : row) digest_u64(h, c);
    }
}

}  // namespace

std::uint64_t mode_digest(const Eos& os, const Mode& m) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    digest_key(h, marking_key(os, m.lambda));
    digest_key(h, marking_key(os, m.rho));
    return h;
}

}  // namespace eos
