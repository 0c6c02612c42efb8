#include "eos/symmetry.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <tuple>

namespace eos {

namespace {

bool is_perm(const std::vector<std::int32_t>& v) {
    std::vector<bool> seen(v.size(), false);
    for (std::int32_t x : v) {
        if (x < 0 || static_cast<std::size_t>(x) >= v.size() || seen[x]) return false;
        seen[x] = true;
    }
    return true;
}

std::vector<std::int32_t> identity_perm(std::size_t n) {
    std::vector<std::int32_t> v(n);
    std::iota(v.begin(), v.end(), 0);
    return v;
}

}  // namespace

bool PtAutomorphism::is_identity() const {
    for (std::size_t i = 0; i < place_perm.size(); ++i)
        if (place_perm[i] != static_cast<PlaceIdx>(i)) return false;
    for (std::size_t i = 0; i < trans_perm.size(); ++i)
        if (trans_perm[i] != static_cast<TransIdx>(i)) return false;
    return true;
}

PtAutomorphism pt_identity(const PtNet& n) {
    return {identity_perm(n.place_count()), identity_perm(n.trans_count())};
}

PtAutomorphism pt_compose(const PtAutomorphism& f, const PtAutomorphism& g) {
    PtAutomorphism out;
    out.place_perm.resize(g.place_perm.size());
    out.trans_perm.resize(g.trans_perm.size());
    for (std::size_t i = 0; i < g.place_perm.size(); ++i)
        out.place_perm[i] = f.place_perm[g.place_perm[i]];
    for (std::size_t i = 0; i < g.trans_perm.size(); ++i)
        out.trans_perm[i] = f.trans_perm[g.trans_perm[i]];
    return out;
}

PtAutomorphism pt_inverse(const PtAutomorphism& f) {
    PtAutomorphism out;
    out.place_perm.resize(f.place_perm.size());
    out.trans_perm.resize(f.trans_perm.size());
    for (std::size_t i = 0; i < f.place_perm.size(); ++i)
        out.place_perm[f.place_perm[i]] = static_cast<PlaceIdx>(i);
    for (std::size_t i = 0; i < f.trans_perm.size(); ++i)
        out.trans_perm[f.trans_perm[i]] = static_cast<TransIdx>(i);
    return out;
}

PtMarking apply_pt(const PtAutomorphism& f, const PtMarking& m) {
    return m.map([&](PlaceIdx p) { return f.place_perm[p]; });
}

Multiset<TransIdx> apply_pt_trans(const PtAutomorphism& f, const Multiset<TransIdx>& ts) {
    return ts.map([&](TransIdx t) { return f.trans_perm[t]; });
}

bool check_pt_automorphism(const PtNet& n, const PtAutomorphism& cand) {
    if (cand.place_perm.size() != n.place_count() || cand.trans_perm.size() != n.trans_count())
        throw std::invalid_argument("permutation does not cover the declared nodes");
    if (!is_perm(cand.place_perm) || !is_perm(cand.trans_perm))
        throw std::invalid_argument("candidate maps are not bijections");
    for (std::size_t t = 0; t < n.trans_count(); ++t) {
        TransIdx it = cand.trans_perm[t];
        if (apply_pt(cand, n.pre[t]) != n.pre[it]) return false;
        if (apply_pt(cand, n.post[t]) != n.post[it]) return false;
    }
    return true;
}

// ------------------------------------------------ automorphism search

namespace {

// Stable partition refinement: nodes get integer colors; a round recolors
// by (old color, sorted profile of (neighbor color, arc weight, direction))
// until the number of classes stops growing.
struct Coloring {
    std::vector<int> place, trans;
};

template <typename Key>
std::vector<int> index_keys(const std::vector<Key>& keys) {
    std::map<Key, int> order;
    for (const auto& k : keys) order.emplace(k, 0);
    int next = 0;
    for (auto& [k, v] : order) v = next++;
    std::vector<int> out;
    out.reserve(keys.size());
    for (const auto& k : keys) out.push_back(order[k]);
    return out;
}

Coloring refine_colors(const PtNet& n, const std::vector<std::int32_t>* place_colors) {
    using Profile = std::vector<std::tuple<int, Count, int>>;

    Coloring c;
    {
        std::vector<std::tuple<std::int32_t, Profile>> pkeys(n.place_count());
        for (std::size_t p = 0; p < n.place_count(); ++p) {
            Profile prof;
            for (std::size_t t = 0; t < n.trans_count(); ++t) {
                if (Count w = n.pre[t].count(static_cast<PlaceIdx>(p))) prof.push_back({0, w, 0});
                if (Count w = n.post[t].count(static_cast<PlaceIdx>(p))) prof.push_back({0, w, 1});
            }
            std::sort(prof.begin(), prof.end());
            pkeys[p] = {place_colors ? (*place_colors)[p] : 0, std::move(prof)};
        }
        c.place = index_keys(pkeys);

        std::vector<Profile> tkeys(n.trans_count());
        for (std::size_t t = 0; t < n.trans_count(); ++t) {
            Profile prof;
            for (const auto& [p, w] : n.pre[t]) prof.push_back({0, w, 0});
            for (const auto& [p, w] : n.post[t]) prof.push_back({0, w, 1});
            std::sort(prof.begin(), prof.end());
            tkeys[t] = std::move(prof);
        }
        c.trans = index_keys(tkeys);
    }

    auto classes = [](const std::vector<int>& v) {
        return std::set<int>(v.begin(), v.end()).size();
    };
    std::size_t np = classes(c.place), nt = classes(c.trans);
    for (;;) {
        std::vector<std::pair<int, Profile>> pkeys(n.place_count());
        for (std::size_t p = 0; p < n.place_count(); ++p) {
            Profile prof;
            for (std::size_t t = 0; t < n.trans_count(); ++t) {
                if (Count w = n.pre[t].count(static_cast<PlaceIdx>(p)))
                    prof.push_back({c.trans[t], w, 0});
                if (Count w = n.post[t].count(static_cast<PlaceIdx>(p)))
                    prof.push_back({c.trans[t], w, 1});
            }
            std::sort(prof.begin(), prof.end());
            pkeys[p] = {c.place[p], std::move(prof)};
        }
        std::vector<std::pair<int, Profile>> tkeys(n.trans_count());
        for (std::size_t t = 0; t < n.trans_count(); ++t) {
            Profile prof;
            for (const auto& [p, w] : n.pre[t]) prof.push_back({c.place[p], w, 0});
            for (const auto& [p, w] : n.post[t]) prof.push_back({c.place[p], w, 1});
            std::sort(prof.begin(), prof.end());
            tkeys[t] = {c.trans[t], std::move(prof)};
        }
        c.place = index_keys(pkeys);
        c.trans = index_keys(tkeys);
        std::size_t np2 = classes(c.place), nt2 = classes(c.trans);
        if (np2 == np && nt2 == nt) break;
        np = np2;
        nt = nt2;
    }
    return c;
}

struct AutSearch {
    const PtNet& net;
    const Coloring colors;
    std::size_t cap;
    std::vector<PlaceIdx> pimg;
    std::vector<TransIdx> timg;
    std::vector<bool> pused, tused;
    PtAutList out;

    AutSearch(const PtNet& n, const Coloring& c, std::size_t cap_)
        : net(n), colors(c), cap(cap_) {
        pimg.assign(n.place_count(), -1);
        timg.assign(n.trans_count(), -1);
        pused.assign(n.place_count(), false);
        tused.assign(n.trans_count(), false);
    }

    bool trans_row_ok(std::size_t t, std::size_t it) const {
        // All places are mapped by the time transitions are assigned.
        PtAutomorphism partial{pimg, {}};
        return apply_pt(partial, net.pre[t]) == net.pre[it] &&
               apply_pt(partial, net.post[t]) == net.post[it];
    }

    bool assign_trans(std::size_t t) {
        if (t == net.trans_count()) {
            if (out.elements.size() >= cap) {
                out.truncated = true;
                return false;
            }
            out.elements.push_back({pimg, timg});
            return true;
        }
        for (std::size_t it = 0; it < net.trans_count(); ++it) {
            if (tused[it] || colors.trans[t] != colors.trans[it]) continue;
            if (!trans_row_ok(t, it)) continue;
            timg[t] = static_cast<TransIdx>(it);
            tused[it] = true;
            bool keep = assign_trans(t + 1);
            tused[it] = false;
            timg[t] = -1;
            if (!keep) return false;
        }
        return true;
    }

    bool assign_place(std::size_t p) {
        if (p == net.place_count()) return assign_trans(0);
        for (std::size_t ip = 0; ip < net.place_count(); ++ip) {
            if (pused[ip] || colors.place[p] != colors.place[ip]) continue;
            pimg[p] = static_cast<PlaceIdx>(ip);
            pused[ip] = true;
            bool keep = assign_place(p + 1);
            pused[ip] = false;
            pimg[p] = -1;
            if (!keep) return false;
        }
        return true;
    }
};

}  // namespace

PtAutList pt_automorphisms(const PtNet& n, std::size_t cap,
                           const std::vector<std::int32_t>* place_colors) {
    if (cap == 0) cap = 1;
    AutSearch search(n, refine_colors(n, place_colors), cap);
    search.assign_place(0);
    std::sort(search.out.elements.begin(), search.out.elements.end());
    return std::move(search.out);
}

// ------------------------------------------------ object system level

bool EosAutomorphism::is_identity() const {
    if (!system.is_identity()) return false;
    for (const auto& o : objects)
        if (!o.is_identity()) return false;
    return true;
}

EosAutomorphism eos_identity(const Eos& os) {
    EosAutomorphism a;
    a.system = pt_identity(os.system);
    a.objects.reserve(os.nets.size());
    for (const auto& net : os.nets) a.objects.push_back(pt_identity(net));
    return a;
}

EosAutomorphism eos_compose(const EosAutomorphism& f, const EosAutomorphism& g) {
    EosAutomorphism out;
    out.system = pt_compose(f.system, g.system);
    out.objects.reserve(g.objects.size());
    for (std::size_t n = 0; n < g.objects.size(); ++n)
        out.objects.push_back(pt_compose(f.objects[n], g.objects[n]));
    return out;
}

EosAutomorphism eos_inverse(const EosAutomorphism& f) {
    EosAutomorphism out;
    out.system = pt_inverse(f.system);
    out.objects.reserve(f.objects.size());
    for (const auto& o : f.objects) out.objects.push_back(pt_inverse(o));
    return out;
}

namespace {

EosEvent raw_event_image(const Eos& os, const EosAutomorphism& a, const EosEvent& e) {
    EosEvent out;
    out.idle = e.idle;
    out.sys = e.idle ? a.system.place_perm[e.sys] : a.system.trans_perm[e.sys];
    out.sync.reserve(e.sync.size());
    for (std::size_t n = 0; n < e.sync.size(); ++n)
        out.sync.push_back(apply_pt_trans(a.objects[n], e.sync[n]));
    return out;
}

bool events_preserved(const Eos& os, const EosAutomorphism& a,
                      const std::set<EosEvent>& theta) {
    for (const EosEvent& e : os.events)
        if (!theta.count(raw_event_image(os, a, e))) return false;
    return true;
}

}  // namespace

bool check_eos_automorphism(const Eos& os, const EosAutomorphism& cand) {
    if (cand.objects.size() != os.nets.size())
        throw std::invalid_argument("one object permutation per declared net required");
    if (!check_pt_automorphism(os.system, cand.system)) return false;
    for (std::size_t n = 0; n < os.nets.size(); ++n)
        if (!check_pt_automorphism(os.nets[n], cand.objects[n])) return false;
    for (std::size_t p = 0; p < os.system.place_count(); ++p)
        if (os.typing[cand.system.place_perm[p]] != os.typing[p]) return false;
    std::set<EosEvent> theta(os.events.begin(), os.events.end());
    return events_preserved(os, cand, theta);
}

AutGroup eos_automorphisms(const Eos& os, std::size_t cap) {
    if (cap == 0) cap = 1;
    AutGroup g;

    std::vector<std::int32_t> colors(os.typing.begin(), os.typing.end());
    PtAutList sys = pt_automorphisms(os.system, cap, &colors);
    bool component_truncated = sys.truncated;

    std::vector<PtAutList> obj(os.nets.size());
    obj[kBlackNet].elements.push_back(PtAutomorphism{{}, {}});
    for (std::size_t n = 1; n < os.nets.size(); ++n) {
        obj[n] = pt_automorphisms(os.nets[n], cap);
        component_truncated = component_truncated || obj[n].truncated;
    }

    std::set<EosEvent> theta(os.events.begin(), os.events.end());
    std::vector<std::size_t> odo(os.nets.size(), 0);
    for (const PtAutomorphism& s : sys.elements) {
        std::fill(odo.begin(), odo.end(), 0);
        for (;;) {
            EosAutomorphism cand;
            cand.system = s;
            cand.objects.reserve(os.nets.size());
            for (std::size_t n = 0; n < os.nets.size(); ++n)
                cand.objects.push_back(obj[n].elements[odo[n]]);
            if (events_preserved(os, cand, theta)) {
                if (g.elements.size() >= cap) {
                    g.truncated = true;
                    break;
                }
                g.elements.push_back(std::move(cand));
            }
            std::size_t n = 0;
            while (n < odo.size() && ++odo[n] == obj[n].elements.size()) odo[n++] = 0;
            if (n == odo.size()) break;
        }
        if (g.truncated) break;
    }
    g.truncated = g.truncated || component_truncated;
    std::sort(g.elements.begin(), g.elements.end());

    // Greedy generator extraction: keep an element whenever the ones kept so
    // far do not already generate it.
    std::set<EosAutomorphism> closure;
    std::vector<EosAutomorphism> gens;
    auto close = [&] {
        std::vector<EosAutomorphism> frontier(closure.begin(), closure.end());
        while (!frontier.empty()) {
            std::vector<EosAutomorphism> next;
            for (const auto& x : frontier)
                for (const auto& gen : gens) {
                    EosAutomorphism y = eos_compose(gen, x);
                    if (closure.insert(y).second) next.push_back(std::move(y));
                }
            frontier = std::move(next);
        }
    };
    closure.insert(eos_identity(os));
    for (std::size_t i = 0; i < g.elements.size(); ++i) {
        if (closure.count(g.elements[i])) continue;
        gens.push_back(g.elements[i]);
        g.generators.push_back(i);
        closure.insert(g.elements[i]);
        close();
    }
    return g;
}

NestedMarking apply_to_marking(const Eos& os, const EosAutomorphism& a,
                               const NestedMarking& mu) {
    return mu.map([&](const Addend& ad) {
        return Addend{a.system.place_perm[ad.place],
                      apply_pt(a.objects[os.typing[ad.place]], ad.tokens)};
    });
}

EosEvent apply_to_event(const Eos& os, const EosAutomorphism& a, const EosEvent& e) {
    EosEvent img = raw_event_image(os, a, e);
    for (const EosEvent& have : os.events)
        if (have == img) return img;
    throw ImageNotInTheta("event image is not part of the declared event set");
}

Mode apply_to_mode(const Eos& os, const EosAutomorphism& a, const Mode& m) {
    return {apply_to_marking(os, a, m.lambda), apply_to_marking(os, a, m.rho)};
}

// ------------------------------------------------ rendering

namespace {

void append_cycles(std::string& out, const std::vector<std::string>& names,
                   const std::vector<std::int32_t>& perm) {
    std::vector<bool> seen(perm.size(), false);
    for (std::size_t i = 0; i < perm.size(); ++i) {
        if (seen[i] || perm[i] == static_cast<std::int32_t>(i)) continue;
        out += '(';
        std::size_t j = i;
        bool first = true;
        while (!seen[j]) {
            seen[j] = true;
            if (!first) out += ' ';
            out += names[j];
            first = false;
            j = static_cast<std::size_t>(perm[j]);
        }
        out += ')';
    }
}

}  // namespace

std::string cycle_notation(const PtNet& n, const PtAutomorphism& f) {
    std::string out;
    append_cycles(out, n.place_names, f.place_perm);
    append_cycles(out, n.trans_names, f.trans_perm);
    return out.empty() ? "()" : out;
}

std::string cycle_notation(const Eos& os, const EosAutomorphism& a) {
    std::string out;
    append_cycles(out, os.system.place_names, a.system.place_perm);
    append_cycles(out, os.system.trans_names, a.system.trans_perm);
    for (std::size_t n = 1; n < os.nets.size(); ++n) {
        append_cycles(out, os.nets[n].place_names, a.objects[n].place_perm);
        append_cycles(out, os.nets[n].trans_names, a.objects[n].trans_perm);
    }
    return out.empty() ? "()" : out;
}

}  // namespace eos
