#include "eos/model_io.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <map>
#include <sstream>

namespace eos {

namespace {

constexpr std::string_view kBullet = "•";

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

// Character cursor over one logical line, tracking 1-based columns.
struct Cursor {
    std::string_view s;
    std::size_t pos = 0;
    int line = 0;

    int col() const { return static_cast<int>(pos) + 1; }
    bool eol() {
        skip_ws();
        return pos >= s.size();
    }
    void skip_ws() {
        while (pos < s.size() && (s[pos] == ' ' || s[pos] == '\t')) ++pos;
    }
    char peek() const { return pos < s.size() ? s[pos] : '\0'; }
    // True when an identifier (or the bullet alias) begins at the cursor
    // itself, with no whitespace allowed in between.
    bool at_ident_start() const {
        if (s.substr(pos, kBullet.size()) == kBullet) return true;
        return pos < s.size() && ident_start(s[pos]);
    }
    bool eat(char c) {
        skip_ws();
        if (peek() != c) return false;
        ++pos;
        return true;
    }
    std::string ident() {
        skip_ws();
        if (s.substr(pos, kBullet.size()) == kBullet) {
            pos += kBullet.size();
            return "dot";
        }
        if (pos >= s.size() || !ident_start(s[pos])) return {};
        std::size_t start = pos;
        while (pos < s.size() && ident_char(s[pos])) ++pos;
        return std::string(s.substr(start, pos - start));
    }
    std::optional<Count> number() {
        skip_ws();
        if (pos >= s.size() || !std::isdigit(static_cast<unsigned char>(s[pos]))) return {};
        std::uint64_t v = 0;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
            v = v * 10 + static_cast<std::uint64_t>(s[pos] - '0');
            if (v > 1000000) v = 1000000;  // clamp; models never need more
            ++pos;
        }
        return static_cast<Count>(v);
    }
};

struct ParserState {
    ModelDocument doc;
    // name -> index maps, rebuilt as declarations arrive
    std::map<std::string, NetIdx> net_names{{"dot", kBlackNet}};
    std::vector<std::map<std::string, PlaceIdx>> net_places{{}};
    std::vector<std::map<std::string, TransIdx>> net_trans{{}};
    std::map<std::string, PlaceIdx> sys_places;
    std::map<std::string, TransIdx> sys_trans;
    std::map<std::string, std::int32_t> channels;
    std::vector<std::optional<NetIdx>> declared_type;  // per system place
    bool have_system = false;
    bool have_initial = false;

    void diag(std::string code, std::string msg, int line, int col) {
        doc.diagnostics.push_back({std::move(code), std::move(msg), line, col});
    }

    std::int32_t channel_id(const std::string& name) {
        auto it = channels.find(name);
        if (it != channels.end()) return it->second;
        std::int32_t id = static_cast<std::int32_t>(channels.size());
        channels.emplace(name, id);
        return id;
    }
};

// "k'x + ..." over identifiers; "0" denotes the empty multiset.
template <typename Resolve>
std::optional<Multiset<std::int32_t>> parse_ms(Cursor& cur, ParserState& st, Resolve resolve,
                                               const char* what) {
    Multiset<std::int32_t> out;
    cur.skip_ws();
    if (cur.peek() == '0') {
        ++cur.pos;
        return out;
    }
    for (;;) {
        cur.skip_ws();
        int term_col = cur.col();
        Count k = 1;
        std::size_t mark = cur.pos;
        if (auto n = cur.number()) {
            if (cur.eat('\'')) {
                k = *n;
                if (!cur.at_ident_start()) {
                    st.diag("MalformedMultiset",
                            std::string("expected a ") + what + " name right after '", cur.line,
                            term_col);
                    return std::nullopt;
                }
            } else {
                cur.pos = mark;
            }
        }
        std::string name = cur.ident();
        if (name.empty()) {
            st.diag("MalformedMultiset",
                    std::string("expected a ") + what + " name", cur.line, term_col);
            return std::nullopt;
        }
        std::optional<std::int32_t> idx = resolve(name);
        if (!idx) {
            st.diag("UnknownId", std::string("unknown ") + what + " '" + name + "'", cur.line,
                    term_col);
            return std::nullopt;
        }
        if (k > 0) out.add(*idx, k);
        if (!cur.eat('+')) break;
    }
    return out;
}

std::optional<PtMarking> parse_place_ms(Cursor& cur, ParserState& st, const PtNet& net,
                                        const char* what) {
    auto resolve = [&](const std::string& name) -> std::optional<std::int32_t> {
        return net.place_index(name);
    };
    auto ms = parse_ms(cur, st, resolve, what);
    if (!ms) return std::nullopt;
    return ms->map([](std::int32_t x) { return static_cast<PlaceIdx>(x); });
}

std::optional<NestedMarking> parse_nested(Cursor& cur, ParserState& st) {
    NestedMarking out;
    cur.skip_ws();
    if (cur.pos >= cur.s.size()) return out;  // empty line -> empty marking
    if (cur.peek() == '0') {
        ++cur.pos;
        return out;
    }
    const Eos& os = st.doc.model;
    for (;;) {
        cur.skip_ws();
        int term_col = cur.col();
        Count k = 1;
        std::size_t mark = cur.pos;
        if (auto n = cur.number()) {
            if (cur.eat('\'')) {
                k = *n;
                if (!cur.at_ident_start()) {
                    st.diag("MalformedMultiset", "expected a system place name right after '",
                            cur.line, term_col);
                    return std::nullopt;
                }
            } else {
                cur.pos = mark;
            }
        }
        std::string pname = cur.ident();
        if (pname.empty()) {
            st.diag("MalformedMultiset", "expected a system place name", cur.line, term_col);
            return std::nullopt;
        }
        auto pit = st.sys_places.find(pname);
        if (pit == st.sys_places.end()) {
            st.diag("UnknownId", "unknown system place '" + pname + "'", cur.line, term_col);
            return std::nullopt;
        }
        // Typing may still live in declared_type while the model body is
        // being read; os.typing is only materialised at the end.
        NetIdx pnet = kBlackNet;
        if (pit->second < static_cast<PlaceIdx>(os.typing.size()))
            pnet = os.typing[pit->second];
        else if (pit->second < static_cast<PlaceIdx>(st.declared_type.size()) &&
                 st.declared_type[pit->second])
            pnet = *st.declared_type[pit->second];
        PtMarking inner;
        if (cur.eat('[')) {
            cur.skip_ws();
            if (cur.peek() != ']') {
                auto ms = parse_place_ms(cur, st, os.nets[pnet], "object place");
                if (!ms) return std::nullopt;
                inner = std::move(*ms);
            }
            if (!cur.eat(']')) {
                st.diag("MalformedMultiset", "expected ']'", cur.line, cur.col());
                return std::nullopt;
            }
        }
        if (k > 0) out.add(Addend{pit->second, std::move(inner)}, k);
        if (!cur.eat('+')) break;
    }
    return out;
}

struct ModelParser {
    ParserState st;

    enum class Section { Top, Object, System, Events } section = Section::Top;
    NetIdx cur_net = kBlackNet;

    Eos& os() { return st.doc.model; }

    void finish_labels_shape() {
        // Labels are stored dense; grow the tables to the declared shapes.
        if (!os().labels) return;
        EosLabels& lb = *os().labels;
        lb.system.resize(os().system.trans_count());
        for (auto& row : lb.system) row.resize(os().nets.size());
        lb.object.resize(os().nets.size());
        for (std::size_t n = 0; n < os().nets.size(); ++n)
            lb.object[n].resize(os().nets[n].trans_count(), -1);
    }

    EosLabels& labels() {
        if (!os().labels) os().labels.emplace();
        finish_labels_shape();
        return *os().labels;
    }

    void parse(std::string_view text) {
        std::vector<std::string_view> lines;
        std::size_t start = 0;
        while (start <= text.size()) {
            std::size_t nl = text.find('\n', start);
            if (nl == std::string_view::npos) nl = text.size();
            lines.push_back(text.substr(start, nl - start));
            start = nl + 1;
        }
        for (std::size_t i = 0; i < lines.size(); ++i) {
            std::string_view raw = lines[i];
            if (std::size_t hash = raw.find('#'); hash != std::string_view::npos)
                raw = raw.substr(0, hash);
            while (!raw.empty() && (raw.back() == '\r' || raw.back() == ' ' || raw.back() == '\t'))
                raw.remove_suffix(1);
            Cursor cur{raw, 0, static_cast<int>(i) + 1};
            if (cur.eol()) continue;
            dispatch(cur);
        }
        if (section != Section::Top)
            st.diag("UnterminatedBlock", "missing 'end'", static_cast<int>(lines.size()), 1);
        finalize();
    }

    void dispatch(Cursor& cur) {
        switch (section) {
            case Section::Top: top_line(cur); break;
            case Section::Object:
            case Section::System: net_line(cur); break;
            case Section::Events: event_line(cur); break;
        }
    }

    void top_line(Cursor& cur) {
        int col = cur.col();
        std::string word = cur.ident();
        if (word == "objectnet") {
            std::string name = cur.ident();
            if (name.empty()) {
                st.diag("MalformedDeclaration", "objectnet needs a name", cur.line, cur.col());
                return;
            }
            if (st.net_names.count(name)) {
                st.diag("DuplicateDeclaration", "net '" + name + "' already declared", cur.line,
                        col);
                return;
            }
            PtNet net;
            net.name = name;
            NetIdx idx = os().add_net(std::move(net));
            st.net_names.emplace(name, idx);
            st.net_places.emplace_back();
            st.net_trans.emplace_back();
            cur_net = idx;
            section = Section::Object;
        } else if (word == "systemnet") {
            if (st.have_system) {
                st.diag("DuplicateDeclaration", "second systemnet block", cur.line, col);
                return;
            }
            st.have_system = true;
            section = Section::System;
        } else if (word == "events") {
            std::string kind = cur.ident();
            if (kind == "explicit") {
                st.doc.events_mode = EventsMode::Explicit;
                section = Section::Events;
            } else if (kind == "from") {
                // tolerate "from-labels" splitting at '-'
                cur.eat('-');
                kind = cur.ident();
                if (kind != "labels") {
                    st.diag("MalformedDeclaration", "expected 'events from-labels'", cur.line,
                            col);
                    return;
                }
                st.doc.events_mode = EventsMode::FromLabels;
                std::string param = cur.ident();
                if (param == "max_sync" && cur.eat('=')) {
                    if (auto n = cur.number()) st.doc.max_sync = *n;
                } else if (!param.empty()) {
                    st.diag("MalformedDeclaration", "unknown events parameter '" + param + "'",
                            cur.line, col);
                }
            } else {
                st.diag("MalformedDeclaration", "expected 'explicit' or 'from-labels'", cur.line,
                        col);
            }
        } else if (word == "initial") {
            if (!st.have_system) {
                st.diag("UnknownId", "initial marking before systemnet", cur.line, col);
                return;
            }
            if (st.have_initial) {
                st.diag("DuplicateDeclaration", "second initial line", cur.line, col);
                return;
            }
            st.have_initial = true;
            if (auto mu = parse_nested(cur, st)) st.doc.initial = std::move(*mu);
        } else {
            st.diag("MalformedDeclaration", "unknown directive '" + word + "'", cur.line, col);
        }
    }

    PtNet& current_net() { return section == Section::System ? os().system : os().nets[cur_net]; }

    std::map<std::string, PlaceIdx>& current_places() {
        return section == Section::System ? st.sys_places : st.net_places[cur_net];
    }
    std::map<std::string, TransIdx>& current_trans() {
        return section == Section::System ? st.sys_trans : st.net_trans[cur_net];
    }

    void net_line(Cursor& cur) {
        int col = cur.col();
        std::string word = cur.ident();
        if (word == "end") {
            section = Section::Top;
            return;
        }
        if (word == "place") {
            std::string name = cur.ident();
            if (name.empty()) {
                st.diag("MalformedDeclaration", "place needs a name", cur.line, cur.col());
                return;
            }
            if (current_places().count(name) || current_trans().count(name)) {
                st.diag("DuplicateDeclaration", "node '" + name + "' already declared", cur.line,
                        col);
                return;
            }
            PlaceIdx idx = current_net().add_place(name);
            current_places().emplace(name, idx);
            if (section == Section::System) st.declared_type.push_back(std::nullopt);
        } else if (word == "trans") {
            std::string name = cur.ident();
            if (name.empty()) {
                st.diag("MalformedDeclaration", "trans needs a name", cur.line, cur.col());
                return;
            }
            if (current_places().count(name) || current_trans().count(name)) {
                st.diag("DuplicateDeclaration", "node '" + name + "' already declared", cur.line,
                        col);
                return;
            }
            std::string kw = cur.ident();
            if (kw != "pre") {
                st.diag("MalformedDeclaration", "expected 'pre'", cur.line, cur.col());
                return;
            }
            auto pre = parse_place_ms(cur, st, current_net(),
                                      section == Section::System ? "system place" : "place");
            if (!pre) return;
            kw = cur.ident();
            if (kw != "post") {
                st.diag("MalformedDeclaration", "expected 'post'", cur.line, cur.col());
                return;
            }
            auto post = parse_place_ms(cur, st, current_net(),
                                       section == Section::System ? "system place" : "place");
            if (!post) return;
            TransIdx idx = current_net().add_trans(name, std::move(*pre), std::move(*post));
            current_trans().emplace(name, idx);
        } else if (word == "type" && section == Section::System) {
            std::string pname = cur.ident();
            auto pit = st.sys_places.find(pname);
            if (pit == st.sys_places.end()) {
                st.diag("UnknownId", "unknown system place '" + pname + "'", cur.line, col);
                return;
            }
            std::string nname = cur.ident();
            auto nit = st.net_names.find(nname);
            if (nit == st.net_names.end()) {
                st.diag("UnknownId", "unknown object net '" + nname + "'", cur.line, col);
                return;
            }
            if (st.declared_type[pit->second]) {
                st.diag("DuplicateDeclaration", "type of '" + pname + "' already declared",
                        cur.line, col);
                return;
            }
            st.declared_type[pit->second] = nit->second;
        } else if (word == "label") {
            std::string tname = cur.ident();
            auto tit = current_trans().find(tname);
            if (tit == current_trans().end()) {
                st.diag("UnknownId", "unknown transition '" + tname + "'", cur.line, col);
                return;
            }
            if (section == Section::Object) {
                std::string ch = cur.ident();
                if (ch.empty()) {
                    st.diag("MalformedDeclaration", "label needs a channel name", cur.line,
                            cur.col());
                    return;
                }
                EosLabels& lb = labels();
                if (lb.object[cur_net][tit->second] >= 0) {
                    st.diag("DuplicateDeclaration", "'" + tname + "' already labelled", cur.line,
                            col);
                    return;
                }
                lb.object[cur_net][tit->second] = st.channel_id(ch);
            } else {
                std::string nname = cur.ident();
                auto nit = st.net_names.find(nname);
                if (nit == st.net_names.end() || nit->second == kBlackNet) {
                    st.diag("UnknownId", "unknown object net '" + nname + "'", cur.line, col);
                    return;
                }
                if (!cur.eat(':')) {
                    st.diag("MalformedDeclaration", "expected ':'", cur.line, cur.col());
                    return;
                }
                auto resolve = [&](const std::string& name) -> std::optional<std::int32_t> {
                    return st.channel_id(name);
                };
                auto ms = parse_ms(cur, st, resolve, "channel");
                if (!ms) return;
                EosLabels& lb = labels();
                Multiset<std::int32_t>& slot = lb.system[tit->second][nit->second];
                if (!slot.empty()) {
                    st.diag("DuplicateDeclaration",
                            "'" + tname + "' already labelled towards " + nname, cur.line, col);
                    return;
                }
                slot = std::move(*ms);
            }
        } else {
            st.diag("MalformedDeclaration", "unknown directive '" + word + "'", cur.line, col);
        }
    }

    void event_line(Cursor& cur) {
        int col = cur.col();
        std::string word = cur.ident();
        if (word == "end") {
            section = Section::Top;
            return;
        }
        if (word != "event") {
            st.diag("MalformedDeclaration", "expected 'event' or 'end'", cur.line, col);
            return;
        }
        EosEvent ev;
        ev.sync.assign(os().nets.size(), {});
        std::string name = cur.ident();
        if ((name == "idle" || name == "id") && cur.eat('@')) {
            ev.idle = true;
            std::string pname = cur.ident();
            auto pit = st.sys_places.find(pname);
            if (pit == st.sys_places.end()) {
                st.diag("UnknownId", "unknown system place '" + pname + "'", cur.line, col);
                return;
            }
            ev.sys = pit->second;
        } else {
            auto tit = st.sys_trans.find(name);
            if (tit == st.sys_trans.end()) {
                st.diag("UnknownId", "unknown system transition '" + name + "'", cur.line, col);
                return;
            }
            ev.sys = tit->second;
        }
        if (!cur.eat('{')) {
            st.diag("MalformedDeclaration", "expected '{'", cur.line, cur.col());
            return;
        }
        cur.skip_ws();
        while (cur.peek() != '}' && cur.pos < cur.s.size()) {
            int part_col = cur.col();
            std::string nname = cur.ident();
            auto nit = st.net_names.find(nname);
            if (nit == st.net_names.end() || nit->second == kBlackNet) {
                st.diag("UnknownId", "unknown object net '" + nname + "'", cur.line, part_col);
                return;
            }
            if (!cur.eat(':')) {
                st.diag("MalformedDeclaration", "expected ':'", cur.line, cur.col());
                return;
            }
            NetIdx n = nit->second;
            auto resolve = [&](const std::string& tn) -> std::optional<std::int32_t> {
                auto it = st.net_trans[n].find(tn);
                if (it == st.net_trans[n].end()) return std::nullopt;
                return it->second;
            };
            auto ms = parse_ms(cur, st, resolve, "object transition");
            if (!ms) return;
            ev.sync[n] = ms->map([](std::int32_t x) { return static_cast<TransIdx>(x); });
            if (!cur.eat(';')) break;
            cur.skip_ws();
        }
        if (!cur.eat('}')) {
            st.diag("MalformedDeclaration", "expected '}'", cur.line, cur.col());
            return;
        }
        os().events.push_back(std::move(ev));
    }

    void finalize() {
        if (!st.have_system)
            st.diag("MalformedDeclaration", "no systemnet block", 1, 1);
        os().typing.assign(os().system.place_count(), kBlackNet);
        for (std::size_t p = 0; p < st.declared_type.size(); ++p) {
            if (st.declared_type[p]) {
                os().typing[p] = *st.declared_type[p];
            } else {
                st.diag("TypingNotTotal",
                        "system place '" + os().system.place_names[p] + "' has no type", 1, 1);
            }
        }
        if (os().labels) {
            finish_labels_shape();
            EosLabels& lb = *os().labels;
            lb.channels.resize(st.channels.size());
            for (const auto& [name, id] : st.channels) lb.channels[id] = name;
        }
        if (st.doc.events_mode == EventsMode::FromLabels) {
            if (!os().labels) os().labels.emplace();
            finish_labels_shape();
            if (st.doc.diagnostics.empty()) {
                try {
                    os().events = events_from_labels(os(), st.doc.max_sync);
                } catch (const LabelBlowup& e) {
                    st.diag("LabelBlowup", e.what(), 1, 1);
                }
            }
        }
        if (st.doc.diagnostics.empty()) {
            for (Diagnostic d : validate(os())) st.doc.diagnostics.push_back(std::move(d));
            for (Diagnostic d : validate_marking(os(), st.doc.initial))
                st.doc.diagnostics.push_back(std::move(d));
        }
    }
};

std::string compact_ms(const std::vector<std::string>& names, const Multiset<std::int32_t>& ms) {
    if (ms.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [x, c] : ms) {
        if (!first) out += '+';
        if (c > 1) out += std::to_string(c) + '\'';
        out += names[x];
        first = false;
    }
    return out;
}

template <typename E>
Multiset<std::int32_t> widen(const Multiset<E>& ms) {
    return ms.map([](E x) { return static_cast<std::int32_t>(x); });
}

}  // namespace

ModelDocument parse_model(std::string_view text) {
    ModelParser p;
    p.parse(text);
    return std::move(p.st.doc);
}

std::string render_pt_marking(const PtNet& n, const PtMarking& m) {
    if (m.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [p, c] : m) {
        if (!first) out += " + ";
        out += std::to_string(c) + '\'' + n.place_names[p];
        first = false;
    }
    return out;
}

std::string render_marking(const Eos& os, const NestedMarking& mu) {
    if (mu.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [ad, c] : mu) {
        if (!first) out += " + ";
        out += std::to_string(c) + '\'' + os.system.place_names[ad.place];
        out += '[';
        if (!ad.tokens.empty())
            out += compact_ms(os.net_of_place(ad.place).place_names, widen(ad.tokens));
        out += ']';
        first = false;
    }
    return out;
}

std::string event_label(const Eos& os, const EosEvent& e) {
    std::string out;
    if (e.idle) {
        out = "id@" + os.system.place_names[e.sys];
    } else {
        out = os.system.trans_names[e.sys];
    }
    out += '[';
    bool first = true;
    for (std::size_t n = 0; n < e.sync.size(); ++n) {
        if (e.sync[n].empty()) continue;
        if (!first) out += ',';
        out += os.nets[n].name + ':' + compact_ms(os.nets[n].trans_names, widen(e.sync[n]));
        first = false;
    }
    out += ']';
    return out;
}

std::optional<NestedMarking> parse_marking(const Eos& os, std::string_view text,
                                           std::vector<Diagnostic>& diags) {
    ParserState st;
    st.doc.model = os;
    for (std::size_t p = 0; p < os.system.place_count(); ++p)
        st.sys_places[os.system.place_names[p]] = static_cast<PlaceIdx>(p);

    Cursor cur{text, 0, 1};
    auto mu = parse_nested(cur, st);
    if (mu && !cur.eol())
        st.diag("MalformedMultiset", "trailing characters after marking", 1, cur.col());
    for (Diagnostic& d : st.doc.diagnostics) diags.push_back(std::move(d));
    if (!diags.empty()) return std::nullopt;
    return mu;
}

namespace {

void render_net_body(std::ostringstream& out, const PtNet& n) {
    for (std::size_t t = 0; t < n.trans_count(); ++t)
        out << "  trans " << n.trans_names[t] << " pre " << render_pt_marking(n, n.pre[t])
            << " post " << render_pt_marking(n, n.post[t]) << "\n";
}

}  // namespace

std::string render_model(const ModelDocument& doc) {
    const Eos& os = doc.model;
    std::ostringstream out;
    for (std::size_t n = 1; n < os.nets.size(); ++n) {
        const PtNet& net = os.nets[n];
        out << "objectnet " << net.name << "\n";
        for (const std::string& p : net.place_names) out << "  place " << p << "\n";
        render_net_body(out, net);
        if (os.labels)
            for (std::size_t t = 0; t < net.trans_count(); ++t)
                if (std::int32_t ch = os.labels->object[n][t]; ch >= 0)
                    out << "  label " << net.trans_names[t] << " " << os.labels->channels[ch]
                        << "\n";
        out << "end\n";
    }
    out << "systemnet\n";
    for (std::size_t p = 0; p < os.system.place_count(); ++p) {
        out << "  place " << os.system.place_names[p] << "\n";
        out << "  type " << os.system.place_names[p] << " " << os.nets[os.typing[p]].name
            << "\n";
    }
    render_net_body(out, os.system);
    if (os.labels) {
        std::vector<std::string> chan_names = os.labels->channels;
        for (std::size_t t = 0; t < os.system.trans_count(); ++t)
            for (std::size_t n = 1; n < os.nets.size(); ++n) {
                const Multiset<std::int32_t>& demand = os.labels->system[t][n];
                if (demand.empty()) continue;
                out << "  label " << os.system.trans_names[t] << " " << os.nets[n].name << ":"
                    << compact_ms(chan_names, demand) << "\n";
            }
    }
    out << "end\n";
    if (doc.events_mode == EventsMode::FromLabels) {
        out << "events from-labels max_sync=" << doc.max_sync << "\n";
    } else if (doc.events_mode == EventsMode::Explicit) {
        out << "events explicit\n";
        for (const EosEvent& ev : os.events) {
            out << "  event ";
            if (ev.idle)
                out << "id@" << os.system.place_names[ev.sys];
            else
                out << os.system.trans_names[ev.sys];
            out << " {";
            bool first = true;
            for (std::size_t n = 1; n < ev.sync.size(); ++n) {
                if (ev.sync[n].empty()) continue;
                out << (first ? " " : "; ") << os.nets[n].name << ": "
                    << compact_ms(os.nets[n].trans_names, widen(ev.sync[n]));
                first = false;
            }
            out << (first ? "}" : " }") << "\n";
        }
        out << "end\n";
    }
    out << "initial " << render_marking(os, doc.initial) << "\n";
    return out.str();
}

}  // namespace eos
