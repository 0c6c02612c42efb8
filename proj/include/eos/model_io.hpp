#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "eos/eos.hpp"

namespace eos {

enum class EventsMode { None, Explicit, FromLabels };

struct ModelDocument {
    Eos model;
    NestedMarking initial;
    EventsMode events_mode = EventsMode::None;
    std::size_t max_sync = 1;
    std::vector<Diagnostic> diagnostics;

    bool ok() const { return diagnostics.empty(); }
};

// Line-oriented model text; `#` starts a comment. Declaration order of
// nets, places, and transitions fixes every node order downstream.
ModelDocument parse_model(std::string_view text);

// Canonical text for a parsed document; parsing it back yields an equal
// model, initial marking, and events mode, and re-rendering is a fixpoint.
std::string render_model(const ModelDocument& doc);

std::string render_marking(const Eos& os, const NestedMarking& mu);
std::string render_pt_marking(const PtNet& n, const PtMarking& m);
std::string event_label(const Eos& os, const EosEvent& e);

// Outer-marking syntax ("k'p[inner] + ...") resolved against a model.
// Reports problems through diags and returns nullopt on any error.
std::optional<NestedMarking> parse_marking(const Eos& os, std::string_view text,
                                           std::vector<Diagnostic>& diags);

}  // namespace eos
