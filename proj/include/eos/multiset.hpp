#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <utility>
#include <vector>

namespace eos {

using Count = std::uint32_t;

// Finite multiset over an ordered element type E.
//
// Invariants: entries are sorted by element and carry strictly positive
// counts, so structural equality coincides with multiset equality and the
// defaulted ordering is a total order usable as a map key. Values are
// immutable once built except through add(), which re-normalizes.
template <typename E>
class Multiset {
public:
    using Entry = std::pair<E, Count>;

    Multiset() = default;

    static Multiset single(E e, Count n = 1) {
        Multiset m;
        if (n > 0) m.entries_.emplace_back(std::move(e), n);
        return m;
    }

    static Multiset from_entries(std::vector<Entry> raw) {
        std::sort(raw.begin(), raw.end(),
                  [](const Entry& a, const Entry& b) { return a.first < b.first; });
        Multiset m;
        for (auto& [e, c] : raw) {
            if (c == 0) continue;
            if (!m.entries_.empty() && m.entries_.back().first == e)
                m.entries_.back().second += c;
            else
                m.entries_.emplace_back(std::move(e), c);
        }
        return m;
    }

    bool empty() const { return entries_.empty(); }
    std::size_t support_size() const { return entries_.size(); }

    // Total number of element occurrences.
    std::uint64_t card() const {
        std::uint64_t n = 0;
        for (const auto& [e, c] : entries_) n += c;
        return n;
    }

    Count count(const E& e) const {
        auto it = find(e);
        return it == entries_.end() ? 0 : it->second;
    }

    bool contains(const E& e) const { return find(e) != entries_.end(); }

    const std::vector<Entry>& entries() const { return entries_; }
    auto begin() const { return entries_.begin(); }
    auto end() const { return entries_.end(); }

    void add(const E& e, Count n = 1) {
        if (n == 0) return;
        auto it = lower_bound(e);
        if (it != entries_.end() && it->first == e)
            it->second += n;
        else
            entries_.insert(it, Entry{e, n});
    }

    // Component-wise sum.
    Multiset plus(const Multiset& o) const {
        Multiset r;
        r.entries_.reserve(entries_.size() + o.entries_.size());
        auto a = entries_.begin(), b = o.entries_.begin();
        while (a != entries_.end() && b != o.entries_.end()) {
            if (a->first < b->first)
                r.entries_.push_back(*a++);
            else if (b->first < a->first)
                r.entries_.push_back(*b++);
            else {
                r.entries_.emplace_back(a->first, a->second + b->second);
                ++a, ++b;
            }
        }
        r.entries_.insert(r.entries_.end(), a, entries_.end());
        r.entries_.insert(r.entries_.end(), b, o.entries_.end());
        return r;
    }

    // Component-wise difference truncated at zero.
    Multiset minus(const Multiset& o) const {
        Multiset r;
        auto a = entries_.begin(), b = o.entries_.begin();
        while (a != entries_.end()) {
            while (b != o.entries_.end() && b->first < a->first) ++b;
            Count sub = (b != o.entries_.end() && b->first == a->first) ? b->second : 0;
            if (a->second > sub) r.entries_.emplace_back(a->first, a->second - sub);
            ++a;
        }
        return r;
    }

    // Pointwise order: this(e) <= o(e) for every element.
    bool leq(const Multiset& o) const {
        auto b = o.entries_.begin();
        for (const auto& [e, c] : entries_) {
            while (b != o.entries_.end() && b->first < e) ++b;
            if (b == o.entries_.end() || !(b->first == e) || b->second < c) return false;
        }
        return true;
    }

    // Multiset homomorphism: applies f to every element occurrence and
    // re-normalizes, merging collisions.
    template <typename F>
    auto map(F&& f) const {
        using E2 = std::decay_t<decltype(f(std::declval<const E&>()))>;
        std::vector<typename Multiset<E2>::Entry> out;
        out.reserve(entries_.size());
        for (const auto& [e, c] : entries_) out.emplace_back(f(e), c);
        return Multiset<E2>::from_entries(std::move(out));
    }

    // Expands entries into one element per occurrence, in element order.
    std::vector<E> expand() const {
        std::vector<E> out;
        for (const auto& [e, c] : entries_)
            for (Count i = 0; i < c; ++i) out.push_back(e);
        return out;
    }

    bool operator==(const Multiset&) const = default;
    auto operator<=>(const Multiset&) const = default;

private:
    typename std::vector<Entry>::const_iterator find(const E& e) const {
        auto it = lower_bound(e);
        return (it != entries_.end() && it->first == e) ? it : entries_.end();
    }
    typename std::vector<Entry>::const_iterator lower_bound(const E& e) const {
        return std::lower_bound(entries_.begin(), entries_.end(), e,
                                [](const Entry& a, const E& x) { return a.first < x; });
    }
    typename std::vector<Entry>::iterator lower_bound(const E& e) {
        return std::lower_bound(entries_.begin(), entries_.end(), e,
                                [](const Entry& a, const E& x) { return a.first < x; });
    }

    std::vector<Entry> entries_;
};

}  // namespace eos
