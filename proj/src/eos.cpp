#include "eos/eos.hpp"

#include <algorithm>
#include <cassert>
#include <functional>
#include <set>

#include "eos/canonical.hpp"

namespace eos {

Eos::Eos() {
    PtNet black;
    black.name = "dot";
    nets.push_back(std::move(black));
}

NetIdx Eos::add_net(PtNet n) {
    nets.push_back(std::move(n));
    return static_cast<NetIdx>(nets.size() - 1);
}

std::optional<NetIdx> Eos::net_index(std::string_view name) const {
    for (std::size_t i = 0; i < nets.size(); ++i)
        if (nets[i].name == name) return static_cast<NetIdx>(i);
    return std::nullopt;
}

// ---------------------------------------------------------------- validate

std::vector<Diagnostic> validate(const Eos& os) {
    std::vector<Diagnostic> out;
    auto diag = [&](std::string code, std::string msg) {
        out.push_back({std::move(code), std::move(msg)});
    };

    if (os.nets.empty() || os.nets[0].place_count() != 0 || os.nets[0].trans_count() != 0)
        diag("BlackNetModified", "net slot 0 must be the empty black-token net");

    for (std::size_t i = 0; i < os.nets.size(); ++i)
        for (std::size_t j = i + 1; j < os.nets.size(); ++j)
            if (os.nets[i].name == os.nets[j].name)
                diag("DuplicateNetName", "object net name '" + os.nets[i].name + "' declared twice");

    if (os.typing.size() != os.system.place_count())
        diag("TypingNotTotal", "typing covers " + std::to_string(os.typing.size()) +
                                   " of " + std::to_string(os.system.place_count()) +
                                   " system places");

    for (std::size_t p = 0; p < os.typing.size(); ++p)
        if (os.typing[p] < 0 || static_cast<std::size_t>(os.typing[p]) >= os.nets.size())
            diag("UnknownObjectNet", "place " + os.system.place_names[p] +
                                         " typed with undeclared net index " +
                                         std::to_string(os.typing[p]));

    for (std::size_t e = 0; e < os.events.size(); ++e) {
        const EosEvent& ev = os.events[e];
        std::string at = "event " + std::to_string(e);
        if (ev.sync.size() != os.nets.size()) {
            diag("EventSyncArity", at + ": synchronisation vector has " +
                                       std::to_string(ev.sync.size()) + " entries, expected " +
                                       std::to_string(os.nets.size()));
            continue;
        }
        if (ev.idle) {
            if (ev.sys < 0 || static_cast<std::size_t>(ev.sys) >= os.system.place_count()) {
                diag("UnknownPlace", at + ": idle transition on undeclared place");
                continue;
            }
            NetIdx own = os.typing.size() > static_cast<std::size_t>(ev.sys)
                             ? os.typing[ev.sys]
                             : kBlackNet;
            for (std::size_t n = 0; n < ev.sync.size(); ++n) {
                bool is_own = static_cast<NetIdx>(n) == own && own != kBlackNet;
                if (is_own && ev.sync[n].empty())
                    diag("IdleTypeMismatch",
                         at + ": idle transition at " + os.system.place_names[ev.sys] +
                             " must synchronise with net " + os.nets[n].name);
                if (!is_own && !ev.sync[n].empty())
                    diag("IdleTypeMismatch",
                         at + ": idle transition at " + os.system.place_names[ev.sys] +
                             " may not synchronise with net " + os.nets[n].name);
            }
        } else {
            if (ev.sys < 0 || static_cast<std::size_t>(ev.sys) >= os.system.trans_count()) {
                diag("UnknownTransition", at + ": undeclared system transition");
                continue;
            }
            if (!ev.sync[kBlackNet].empty())
                diag("BlackSync", at + ": black-token net has no transitions");
        }
        for (std::size_t n = 0; n < ev.sync.size() && n < os.nets.size(); ++n)
            for (const auto& [t, c] : ev.sync[n])
                if (t < 0 || static_cast<std::size_t>(t) >= os.nets[n].trans_count())
                    diag("UnknownTransition", at + ": net " + os.nets[n].name +
                                                  " has no transition index " + std::to_string(t));
    }
    return out;
}

std::vector<Diagnostic> validate_marking(const Eos& os, const NestedMarking& mu) {
    std::vector<Diagnostic> out;
    for (const auto& [ad, c] : mu) {
        if (ad.place < 0 || static_cast<std::size_t>(ad.place) >= os.system.place_count()) {
            out.push_back({"UnknownPlace",
                           "addend on undeclared system place index " + std::to_string(ad.place)});
            continue;
        }
        const PtNet& net = os.net_of_place(ad.place);
        if (os.place_is_black(ad.place) && !ad.tokens.empty())
            out.push_back({"BlackTokenNotEmpty",
                           "black-typed place " + os.system.place_names[ad.place] +
                               " carries a non-empty token marking"});
        for (const auto& [q, qc] : ad.tokens)
            if (q < 0 || static_cast<std::size_t>(q) >= net.place_count())
                out.push_back({"BadTokenPlace",
                               "token marking on " + os.system.place_names[ad.place] +
                                   " uses place index " + std::to_string(q) +
                                   " outside net " + net.name});
    }
    return out;
}

bool is_conservative(const Eos& os) {
    for (std::size_t t = 0; t < os.system.trans_count(); ++t) {
        for (const auto& [p, c] : os.system.pre[t]) {
            NetIdx n = os.typing[p];
            if (n == kBlackNet) continue;
            bool found = false;
            for (const auto& [q, qc] : os.system.post[t])
                if (os.typing[q] == n) { found = true; break; }
            if (!found) return false;
        }
    }
    return true;
}

bool is_pt_like(const Eos& os) {
    for (NetIdx n : os.typing)
        if (n != kBlackNet) return false;
    return true;
}

// -------------------------------------------------------------- projections

PtMarking pi1(const NestedMarking& mu) {
    return mu.map([](const Addend& a) { return a.place; });
}

PtMarking pi2(const Eos& os, const NestedMarking& mu, NetIdx n) {
    PtMarking out;
    for (const auto& [ad, c] : mu) {
        if (os.typing[ad.place] != n) continue;
        for (Count i = 0; i < c; ++i) out = out.plus(ad.tokens);
    }
    return out;
}

// ------------------------------------------------------------------ orders

bool nested_leq(const NestedMarking& a, const NestedMarking& b) { return a.leq(b); }

namespace {

// Augmenting-path matching on the compatibility graph of expanded addends.
bool augment(std::size_t i, const std::vector<std::vector<std::size_t>>& adj,
             std::vector<std::int64_t>& match_b, std::vector<bool>& visited,
             std::vector<std::int64_t>& match_a) {
    for (std::size_t j : adj[i]) {
        if (visited[j]) continue;
        visited[j] = true;
        if (match_b[j] < 0 ||
            augment(static_cast<std::size_t>(match_b[j]), adj, match_b, visited, match_a)) {
            match_b[j] = static_cast<std::int64_t>(i);
            match_a[i] = static_cast<std::int64_t>(j);
            return true;
        }
    }
    return false;
}

}  // namespace

std::optional<std::vector<std::size_t>> liberal_leq(const NestedMarking& a,
                                                    const NestedMarking& b) {
    std::vector<Addend> la = a.expand();
    std::vector<Addend> lb = b.expand();
    if (la.size() > lb.size()) return std::nullopt;

    std::vector<std::vector<std::size_t>> adj(la.size());
    for (std::size_t i = 0; i < la.size(); ++i)
        for (std::size_t j = 0; j < lb.size(); ++j)
            if (la[i].place == lb[j].place && la[i].tokens.leq(lb[j].tokens))
                adj[i].push_back(j);

    std::vector<std::int64_t> match_a(la.size(), -1), match_b(lb.size(), -1);
    for (std::size_t i = 0; i < la.size(); ++i) {
        std::vector<bool> visited(lb.size(), false);
        if (!augment(i, adj, match_b, visited, match_a)) return std::nullopt;
    }
    std::vector<std::size_t> out(la.size());
    for (std::size_t i = 0; i < la.size(); ++i) out[i] = static_cast<std::size_t>(match_a[i]);
    return out;
}

NestedMarking liberal_submarking(const NestedMarking& b, const std::vector<std::size_t>& f) {
    std::vector<Addend> lb = b.expand();
    NestedMarking out;
    for (std::size_t j : f) {
        if (j >= lb.size()) throw UnknownNode("injection index out of range");
        out.add(lb[j]);
    }
    return out;
}

// ------------------------------------------------------- event generation

namespace {

// Non-decreasing index sequences of length m over pool: all size-m multisets.
void multisets_over(const std::vector<TransIdx>& pool, std::size_t m, std::size_t from,
                    Multiset<TransIdx>& cur, std::vector<Multiset<TransIdx>>& out) {
    if (m == 0) {
        out.push_back(cur);
        return;
    }
    for (std::size_t i = from; i < pool.size(); ++i) {
        cur.add(pool[i]);
        multisets_over(pool, m - 1, i, cur, out);
        cur = cur.minus(Multiset<TransIdx>::single(pool[i]));
    }
}

}  // namespace

std::vector<EosEvent> events_from_labels(const Eos& os, std::size_t max_sync,
                                         std::size_t event_cap) {
    if (!os.labels) throw std::invalid_argument("model carries no synchronisation labels");
    const EosLabels& lb = *os.labels;
    std::vector<EosEvent> out;
    auto guard = [&] {
        if (out.size() > event_cap)
            throw LabelBlowup("label matching produced more than " +
                              std::to_string(event_cap) + " events");
    };

    for (std::size_t t = 0; t < os.system.trans_count(); ++t) {
        // Per net: the synchronisation multisets compatible with the demand.
        std::vector<std::vector<Multiset<TransIdx>>> per_net(os.nets.size());
        bool dead = false;
        for (std::size_t n = 0; n < os.nets.size() && !dead; ++n) {
            const Multiset<std::int32_t>& demand = lb.system[t][n];
            if (demand.empty()) {
                per_net[n].push_back({});
                continue;
            }
            if (demand.card() > max_sync) { dead = true; break; }
            std::vector<Multiset<TransIdx>> acc{Multiset<TransIdx>{}};
            for (const auto& [ch, m] : demand) {
                std::vector<TransIdx> pool;
                for (std::size_t tt = 0; tt < os.nets[n].trans_count(); ++tt)
                    if (lb.object[n][tt] == ch) pool.push_back(static_cast<TransIdx>(tt));
                std::vector<Multiset<TransIdx>> choices;
                Multiset<TransIdx> cur;
                multisets_over(pool, m, 0, cur, choices);
                if (choices.empty()) { acc.clear(); break; }
                std::vector<Multiset<TransIdx>> next;
                for (const auto& base : acc)
                    for (const auto& ch_ms : choices) next.push_back(base.plus(ch_ms));
                acc = std::move(next);
            }
            if (acc.empty()) { dead = true; break; }
            per_net[n] = std::move(acc);
        }
        if (dead) continue;

        // Cartesian product over nets.
        std::vector<EosEvent> partial{
            EosEvent{false, static_cast<std::int32_t>(t),
                     std::vector<Multiset<TransIdx>>(os.nets.size())}};
        for (std::size_t n = 0; n < os.nets.size(); ++n) {
            std::vector<EosEvent> next;
            for (const auto& base : partial)
                for (const auto& choice : per_net[n]) {
                    EosEvent ev = base;
                    ev.sync[n] = choice;
                    next.push_back(std::move(ev));
                }
            partial = std::move(next);
        }
        for (auto& ev : partial) out.push_back(std::move(ev));
        guard();
    }

    // Idle events: one per typed place and unlabelled object transition.
    for (std::size_t p = 0; p < os.system.place_count(); ++p) {
        NetIdx n = os.typing[p];
        if (n == kBlackNet) continue;
        for (std::size_t tt = 0; tt < os.nets[n].trans_count(); ++tt) {
            if (lb.object[n][tt] >= 0) continue;
            EosEvent ev;
            ev.idle = true;
            ev.sys = static_cast<std::int32_t>(p);
            ev.sync.assign(os.nets.size(), {});
            ev.sync[n] = Multiset<TransIdx>::single(static_cast<TransIdx>(tt));
            out.push_back(std::move(ev));
            guard();
        }
    }
    return out;
}

// ------------------------------------------------------------------ firing

namespace {

void event_io(const Eos& os, const EosEvent& ev, PtMarking& pre_tau, PtMarking& post_tau) {
    if (ev.idle) {
        if (ev.sys < 0 || static_cast<std::size_t>(ev.sys) >= os.system.place_count())
            throw UnknownNode("idle event on unknown place index " + std::to_string(ev.sys));
        pre_tau = PtMarking::single(ev.sys);
        post_tau = pre_tau;
    } else {
        if (ev.sys < 0 || static_cast<std::size_t>(ev.sys) >= os.system.trans_count())
            throw UnknownNode("event on unknown transition index " + std::to_string(ev.sys));
        pre_tau = os.system.pre[ev.sys];
        post_tau = os.system.post[ev.sys];
    }
}

// 0 when the predicate holds, otherwise the 1-based index of the failing
// condition: system input, system output, object enabling, object transport.
int phi_failing_clause(const Eos& os, const EosEvent& ev, const NestedMarking& lambda,
                       const NestedMarking& rho) {
    PtMarking pre_tau, post_tau;
    event_io(os, ev, pre_tau, post_tau);
    if (pi1(lambda) != pre_tau) return 1;
    if (pi1(rho) != post_tau) return 2;
    for (std::size_t n = 0; n < os.nets.size(); ++n) {
        PtMarking pre_th = pre_of(os.nets[n], ev.sync[n]);
        PtMarking post_th = post_of(os.nets[n], ev.sync[n]);
        PtMarking in = pi2(os, lambda, static_cast<NetIdx>(n));
        if (!pre_th.leq(in)) return 3;
        if (pi2(os, rho, static_cast<NetIdx>(n)) != in.minus(pre_th).plus(post_th)) return 4;
    }
    return 0;
}

}  // namespace

bool phi(const Eos& os, const EosEvent& ev, const NestedMarking& lambda,
         const NestedMarking& rho) {
    return phi_failing_clause(os, ev, lambda, rho) == 0;
}

namespace {

// Sub-multisets of size need drawn from avail (entries with capacities).
void choose_counts(const std::vector<std::pair<PtMarking, Count>>& avail, std::size_t pos,
                   Count need, std::vector<Count>& cur,
                   const std::function<void(const std::vector<Count>&)>& emit) {
    if (pos == avail.size()) {
        if (need == 0) emit(cur);
        return;
    }
    Count cap = std::min<Count>(avail[pos].second, need);
    for (Count take = 0; take <= cap; ++take) {
        cur[pos] = take;
        choose_counts(avail, pos + 1, need - take, cur, emit);
    }
    cur[pos] = 0;
}

// All ways to split amount into parts slots.
void compositions(Count amount, std::size_t parts, std::size_t pos, std::vector<Count>& cur,
                  const std::function<void(const std::vector<Count>&)>& emit) {
    if (pos + 1 == parts) {
        cur[pos] = amount;
        emit(cur);
        cur[pos] = 0;
        return;
    }
    for (Count take = 0; take <= amount; ++take) {
        cur[pos] = take;
        compositions(amount - take, parts, pos + 1, cur, emit);
    }
    cur[pos] = 0;
}

struct Budget {
    std::size_t left;
    bool exhausted = false;
    bool spend() {
        if (left == 0) { exhausted = true; return false; }
        --left;
        return true;
    }
};

// All distributions of omega over slot_count ordered slots.
std::vector<std::vector<PtMarking>> distribute(const PtMarking& omega, std::size_t slot_count,
                                               Budget& budget) {
    std::vector<std::vector<PtMarking>> out;
    if (slot_count == 0) {
        if (omega.empty()) out.push_back({});
        return out;
    }
    out.push_back(std::vector<PtMarking>(slot_count));
    for (const auto& [elem, amount] : omega) {
        std::vector<std::vector<PtMarking>> next;
        std::vector<Count> cur(slot_count, 0);
        bool stop = false;
        compositions(amount, slot_count, 0, cur, [&](const std::vector<Count>& split) {
            if (stop) return;
            for (const auto& base : out) {
                if (!budget.spend()) { stop = true; return; }
                std::vector<PtMarking> ext = base;
                for (std::size_t s = 0; s < slot_count; ++s)
                    if (split[s] > 0) ext[s].add(elem, split[s]);
                next.push_back(std::move(ext));
            }
        });
        out = std::move(next);
        if (stop) break;
    }
    return out;
}

}  // namespace

ModeList enumerate_modes(const Eos& os, const NestedMarking& mu, const EosEvent& ev,
                         const ModeCaps& caps) {
    ModeList out;
    PtMarking pre_tau, post_tau;
    event_io(os, ev, pre_tau, post_tau);

    // Input candidates: per input place, choices of whole addends of mu.
    struct PlaceChoice {
        PlaceIdx place;
        Count need;
        std::vector<std::pair<PtMarking, Count>> avail;
    };
    std::vector<PlaceChoice> pcs;
    for (const auto& [p, k] : pre_tau) {
        PlaceChoice pc{p, k, {}};
        Count total = 0;
        for (const auto& [ad, c] : mu)
            if (ad.place == p) {
                pc.avail.emplace_back(ad.tokens, c);
                total += c;
            }
        if (total < k) return out;
        pcs.push_back(std::move(pc));
    }

    std::vector<NestedMarking> lambdas{NestedMarking{}};
    for (const auto& pc : pcs) {
        std::vector<NestedMarking> next;
        std::vector<Count> cur(pc.avail.size(), 0);
        choose_counts(pc.avail, 0, pc.need, cur, [&](const std::vector<Count>& take) {
            for (const auto& base : lambdas) {
                if (next.size() >= caps.max_lambda) {
                    out.truncated = true;
                    return;
                }
                NestedMarking lam = base;
                for (std::size_t i = 0; i < take.size(); ++i)
                    if (take[i] > 0) lam.add(Addend{pc.place, pc.avail[i].first}, take[i]);
                next.push_back(std::move(lam));
            }
        });
        lambdas = std::move(next);
    }

    // Output slots: one per occurrence of a system output place, grouped by
    // the net typing that place.
    std::vector<std::vector<PlaceIdx>> slots(os.nets.size());
    for (const auto& [p, k] : post_tau)
        for (Count i = 0; i < k; ++i) slots[os.typing[p]].push_back(p);

    std::set<Mode> modes;
    Budget budget{caps.max_rho};
    for (const auto& lam : lambdas) {
        bool feasible = true;
        std::vector<PtMarking> omega(os.nets.size());
        for (std::size_t n = 0; n < os.nets.size() && feasible; ++n) {
            PtMarking pre_th = pre_of(os.nets[n], ev.sync[n]);
            PtMarking in = pi2(os, lam, static_cast<NetIdx>(n));
            if (!pre_th.leq(in)) { feasible = false; break; }
            omega[n] = in.minus(pre_th).plus(post_of(os.nets[n], ev.sync[n]));
            if (!omega[n].empty() && slots[n].empty()) feasible = false;
        }
        if (!feasible) continue;

        std::vector<std::vector<std::vector<PtMarking>>> fills(os.nets.size());
        bool any_empty = false;
        for (std::size_t n = 0; n < os.nets.size(); ++n) {
            fills[n] = distribute(omega[n], slots[n].size(), budget);
            if (fills[n].empty()) { any_empty = true; break; }
        }
        if (budget.exhausted) out.truncated = true;
        if (any_empty) continue;

        // Assemble every combination of per-net slot fills into a rho.
        std::vector<NestedMarking> rhos{NestedMarking{}};
        for (std::size_t n = 0; n < os.nets.size(); ++n) {
            std::vector<NestedMarking> next;
            for (const auto& base : rhos)
                for (const auto& fill : fills[n]) {
                    NestedMarking rho = base;
                    for (std::size_t s = 0; s < slots[n].size(); ++s)
                        rho.add(Addend{slots[n][s], fill[s]});
                    next.push_back(std::move(rho));
                }
            rhos = std::move(next);
        }
        for (auto& rho : rhos) {
            if (modes.size() >= caps.max_rho) { out.truncated = true; break; }
            modes.insert(Mode{lam, std::move(rho)});
        }
        if (budget.exhausted) { out.truncated = true; break; }
    }

    out.modes.assign(modes.begin(), modes.end());

    if (caps.proj_collapse) {
        std::set<std::pair<ProjKey, ProjKey>> seen;
        std::vector<Mode> kept;
        for (const auto& m : out.modes) {
            auto key = std::make_pair(proj_key(os, m.lambda), proj_key(os, m.rho));
            if (seen.insert(std::move(key)).second) kept.push_back(m);
        }
        out.modes = std::move(kept);
    }

    std::stable_sort(out.modes.begin(), out.modes.end(), [&](const Mode& a, const Mode& b) {
        auto ka = std::make_pair(marking_key(os, a.lambda), marking_key(os, a.rho));
        auto kb = std::make_pair(marking_key(os, b.lambda), marking_key(os, b.rho));
        return ka < kb;
    });
    return out;
}

NestedMarking fire(const Eos& os, const NestedMarking& mu, const EosEvent& ev,
                   const Mode& mode) {
    if (!nested_leq(mode.lambda, mu))
        throw NotEnabled("event input is not a sub-marking of the current marking");
    int clause = phi_failing_clause(os, ev, mode.lambda, mode.rho);
    if (clause != 0) {
        static const char* names[] = {"", "system input mismatch", "system output mismatch",
                                      "object tokens do not cover the synchronised input",
                                      "object tokens are not transported exactly"};
        throw NotEnabled(std::string("mode rejected: ") + names[clause]);
    }
    return mu.minus(mode.lambda).plus(mode.rho);
}

EnabledList enabled_events(const Eos& os, const NestedMarking& mu, const ModeCaps& caps) {
    EnabledList out;
    for (std::size_t e = 0; e < os.events.size(); ++e) {
        ModeList ml = enumerate_modes(os, mu, os.events[e], caps);
        out.truncated = out.truncated || ml.truncated;
        for (auto& m : ml.modes) out.items.emplace_back(e, std::move(m));
    }
    return out;
}

}  // namespace eos
