#include "eos/ptnet.hpp"

#include <algorithm>
#include <deque>
#include <set>

namespace eos {

std::optional<PlaceIdx> PtNet::place_index(std::string_view n) const {
    for (std::size_t i = 0; i < place_names.size(); ++i)
        if (place_names[i] == n) return static_cast<PlaceIdx>(i);
    return std::nullopt;
}

std::optional<TransIdx> PtNet::trans_index(std::string_view n) const {
    for (std::size_t i = 0; i < trans_names.size(); ++i)
        if (trans_names[i] == n) return static_cast<TransIdx>(i);
    return std::nullopt;
}

PlaceIdx PtNet::add_place(std::string n) {
    place_names.push_back(std::move(n));
    return static_cast<PlaceIdx>(place_names.size() - 1);
}

TransIdx PtNet::add_trans(std::string n, PtMarking pre_m, PtMarking post_m) {
    trans_names.push_back(std::move(n));
    pre.push_back(std::move(pre_m));
    post.push_back(std::move(post_m));
    return static_cast<TransIdx>(trans_names.size() - 1);
}

namespace {

void check_place(const PtNet& n, std::int32_t p) {
    if (p < 0 || static_cast<std::size_t>(p) >= n.place_count())
        throw UnknownNode("unknown place index " + std::to_string(p) + " in net " + n.name);
}

void check_trans(const PtNet& n, std::int32_t t) {
    if (t < 0 || static_cast<std::size_t>(t) >= n.trans_count())
        throw UnknownNode("unknown transition index " + std::to_string(t) + " in net " + n.name);
}

}  // namespace

std::vector<NodeRef> preset(const PtNet& n, NodeRef x) {
    std::vector<NodeRef> out;
    if (x.kind == NodeRef::Transition) {
        check_trans(n, x.idx);
        for (const auto& [p, c] : n.pre[x.idx]) out.push_back({NodeRef::Place, p});
    } else {
        check_place(n, x.idx);
        for (std::size_t t = 0; t < n.trans_count(); ++t)
            if (n.post[t].count(x.idx) > 0)
                out.push_back({NodeRef::Transition, static_cast<std::int32_t>(t)});
    }
    return out;
}

std::vector<NodeRef> postset(const PtNet& n, NodeRef x) {
    std::vector<NodeRef> out;
    if (x.kind == NodeRef::Transition) {
        check_trans(n, x.idx);
        for (const auto& [p, c] : n.post[x.idx]) out.push_back({NodeRef::Place, p});
    } else {
        check_place(n, x.idx);
        for (std::size_t t = 0; t < n.trans_count(); ++t)
            if (n.pre[t].count(x.idx) > 0)
                out.push_back({NodeRef::Transition, static_cast<std::int32_t>(t)});
    }
    return out;
}

bool pt_enabled(const PtNet& n, const PtMarking& m, TransIdx t) {
    check_trans(n, t);
    return n.pre[t].leq(m);
}

PtMarking pt_fire(const PtNet& n, const PtMarking& m, TransIdx t) {
    if (!pt_enabled(n, m, t))
        throw NotEnabled("transition " + n.trans_names[t] + " not enabled in net " + n.name);
    return m.minus(n.pre[t]).plus(n.post[t]);
}

PtMarking pt_fire_sequence(const PtNet& n, const PtMarking& m,
                           const std::vector<TransIdx>& seq) {
    PtMarking cur = m;
    for (std::size_t i = 0; i < seq.size(); ++i) {
        check_trans(n, seq[i]);
        if (!pt_enabled(n, cur, seq[i]))
            throw NotEnabled("step " + std::to_string(i) + ": transition " +
                                 n.trans_names[seq[i]] + " not enabled",
                             i);
        cur = pt_fire(n, cur, seq[i]);
    }
    return cur;
}

PtReachResult pt_reach(const PtNet& n, const PtMarking& m0, std::size_t max_states) {
    PtReachResult res;
    if (max_states == 0) max_states = 1;
    std::set<PtMarking> seen{m0};
    std::deque<PtMarking> work{m0};
    while (!work.empty()) {
        PtMarking cur = work.front();
        work.pop_front();
        for (std::size_t t = 0; t < n.trans_count(); ++t) {
            if (!pt_enabled(n, cur, static_cast<TransIdx>(t))) continue;
            PtMarking next = pt_fire(n, cur, static_cast<TransIdx>(t));
            if (seen.count(next)) continue;
            if (seen.size() >= max_states) {
                res.truncated = true;
                continue;
            }
            seen.insert(next);
            work.push_back(std::move(next));
        }
    }
    res.markings.assign(seen.begin(), seen.end());
    return res;
}

PtMarking pre_of(const PtNet& n, const Multiset<TransIdx>& ts) {
    PtMarking out;
    for (const auto& [t, c] : ts) {
        check_trans(n, t);
        for (Count i = 0; i < c; ++i) out = out.plus(n.pre[t]);
    }
    return out;
}

PtMarking post_of(const PtNet& n, const Multiset<TransIdx>& ts) {
    PtMarking out;
    for (const auto& [t, c] : ts) {
        check_trans(n, t);
        for (Count i = 0; i < c; ++i) out = out.plus(n.post[t]);
    }
    return out;
}

}  // namespace eos
