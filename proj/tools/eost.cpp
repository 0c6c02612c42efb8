#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "eos/canonical.hpp"
#include "eos/eos.hpp"
#include "eos/explorer.hpp"
#include "eos/model_io.hpp"
#include "eos/symmetry.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitDiagnostics = 1;
constexpr int kExitTruncated = 2;

void print_diagnostics(const std::string& file, const std::vector<eos::Diagnostic>& diags) {
    for (const eos::Diagnostic& d : diags) {
        std::cerr << file;
        if (d.line > 0) std::cerr << ":" << d.line << ":" << d.col;
        std::cerr << ": [" << d.code << "] " << d.message << "\n";
    }
}

// Loads and parses a model file; on any problem prints diagnostics and
// returns nullopt so the caller can exit with kExitDiagnostics.
std::optional<eos::ModelDocument> load(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        std::cerr << path << ": cannot open file\n";
        return std::nullopt;
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    eos::ModelDocument doc = eos::parse_model(buf.str());
    if (!doc.ok()) {
        print_diagnostics(path, doc.diagnostics);
        return std::nullopt;
    }
    return doc;
}

std::string strip_spaces(std::string_view s) {
    std::string out;
    for (char c : s)
        if (c != ' ' && c != '\t') out += c;
    return out;
}

// Accepts a full event label ("t[N1:t1,N2:t2]", spacing ignored) or, when
// unambiguous, the bare system transition / idle place name.
std::optional<std::size_t> find_event(const eos::Eos& os, const std::string& wanted) {
    std::string w = strip_spaces(wanted);
    std::vector<std::size_t> name_hits;
    for (std::size_t i = 0; i < os.events.size(); ++i) {
        std::string label = eos::event_label(os, os.events[i]);
        if (strip_spaces(label) == w) return i;
        if (label.substr(0, label.find('[')) == w) name_hits.push_back(i);
    }
    if (name_hits.size() == 1) return name_hits[0];
    if (name_hits.size() > 1)
        std::cerr << "event name '" << wanted << "' is ambiguous; give the full label\n";
    else
        std::cerr << "no event matches '" << wanted << "'\n";
    return std::nullopt;
}

bool write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    out << content;
    if (!out) {
        std::cerr << path << ": cannot write file\n";
        return false;
    }
    return true;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Object-system toolkit: nested-marking firing, automorphism groups, "
                 "canonical representatives, reachability graphs"};
    app.require_subcommand(1);

    std::string file;
    bool opt_conservative = false, opt_pt_like = false;
    auto* validate_cmd = app.add_subcommand("validate", "check a model file");
    validate_cmd->add_option("file", file)->required();
    validate_cmd->add_flag("--conservative", opt_conservative,
                           "report whether transported types are preserved");
    validate_cmd->add_flag("--pt-like", opt_pt_like, "report whether all places are black-typed");

    std::string fire_event;
    int fire_mode = -1;
    std::size_t fire_steps = 1;
    auto* fire_cmd = app.add_subcommand("fire", "fire one event from the initial marking");
    fire_cmd->add_option("file", file)->required();
    fire_cmd->add_option("--event", fire_event, "event label or system transition name")
        ->required();
    fire_cmd->add_option("--mode", fire_mode, "mode index (default: list all successors)");
    fire_cmd->add_option("--steps", fire_steps, "repeat the event this many times (with --mode)");

    std::size_t auts_cap = 10000;
    auto* auts_cmd = app.add_subcommand("auts", "compute the automorphism group");
    auts_cmd->add_option("file", file)->required();
    auts_cmd->add_option("--cap", auts_cap, "group size cap");

    std::string canon_marking;
    auto* canon_cmd = app.add_subcommand("canon", "canonical representative of a marking");
    canon_cmd->add_option("file", file)->required();
    canon_cmd->add_option("--marking", canon_marking, "marking (default: the initial marking)");

    std::string reduce = "none", dot_path, stats_path;
    std::size_t max_states = 100000;
    std::size_t max_depth = 0;
    bool do_verify = false, strict = false, timings = false;
    auto* explore_cmd = app.add_subcommand("explore", "build the reachability graph");
    explore_cmd->add_option("file", file)->required();
    explore_cmd->add_option("--reduce", reduce, "none | aut | proj | aut+proj")
        ->check(CLI::IsMember({"none", "aut", "proj", "aut+proj"}));
    explore_cmd->add_option("--max-states", max_states, "state cap");
    explore_cmd->add_option("--max-depth", max_depth, "depth cap (0 = unbounded)");
    explore_cmd->add_option("--dot", dot_path, "write the graph in DOT form");
    explore_cmd->add_option("--stats", stats_path, "write a JSON stats record");
    explore_cmd->add_flag("--verify", do_verify, "check the quotient against a full exploration");
    explore_cmd->add_flag("--strict", strict, "exit 2 when any bound truncated the result");
    explore_cmd->add_flag("--timings", timings, "include wall time in output");

    CLI11_PARSE(app, argc, argv);

    auto doc = load(file);
    if (!doc) return kExitDiagnostics;
    const eos::Eos& os = doc->model;

    if (validate_cmd->parsed()) {
        if (opt_conservative)
            std::cout << "conservative: " << (eos::is_conservative(os) ? "true" : "false")
                      << "\n";
        if (opt_pt_like)
            std::cout << "pt-like: " << (eos::is_pt_like(os) ? "true" : "false") << "\n";
        if (!opt_conservative && !opt_pt_like) std::cout << "ok\n";
        return kExitOk;
    }

    if (fire_cmd->parsed()) {
        auto ev = find_event(os, fire_event);
        if (!ev) return kExitDiagnostics;
        eos::NestedMarking current = doc->initial;
        for (std::size_t step = 0; step < fire_steps; ++step) {
            eos::ModeList modes = eos::enumerate_modes(os, current, os.events[*ev]);
            if (modes.modes.empty()) {
                std::cerr << "event " << eos::event_label(os, os.events[*ev])
                          << " is not enabled" << (step ? " any more" : "") << "\n";
                return kExitDiagnostics;
            }
            if (fire_mode < 0 && fire_steps == 1) {
                for (std::size_t i = 0; i < modes.modes.size(); ++i)
                    std::cout << "mode " << i << ": "
                              << eos::render_marking(
                                     os, eos::fire(os, current, os.events[*ev], modes.modes[i]))
                              << "\n";
                if (modes.truncated) std::cerr << "note: mode list truncated by caps\n";
                return kExitOk;
            }
            std::size_t pick = fire_mode < 0 ? 0 : static_cast<std::size_t>(fire_mode);
            if (pick >= modes.modes.size()) {
                std::cerr << "mode index " << pick << " out of range (" << modes.modes.size()
                          << " modes)\n";
                return kExitDiagnostics;
            }
            current = eos::fire(os, current, os.events[*ev], modes.modes[pick]);
            std::cout << eos::render_marking(os, current) << "\n";
        }
        return kExitOk;
    }

    if (auts_cmd->parsed()) {
        eos::AutGroup g = eos::eos_automorphisms(os, auts_cap);
        std::cout << "order: " << g.elements.size() << (g.truncated ? " (truncated)" : "")
                  << "\n";
        std::cout << "generators:\n";
        if (g.generators.empty()) std::cout << "  ()\n";
        for (std::size_t i : g.generators)
            std::cout << "  " << eos::cycle_notation(os, g.elements[i]) << "\n";
        return g.truncated && strict ? kExitTruncated : kExitOk;
    }

    if (canon_cmd->parsed()) {
        eos::NestedMarking mu = doc->initial;
        if (!canon_marking.empty()) {
            std::vector<eos::Diagnostic> diags;
            auto parsed = eos::parse_marking(os, canon_marking, diags);
            if (!parsed) {
                print_diagnostics("<marking>", diags);
                return kExitDiagnostics;
            }
            std::vector<eos::Diagnostic> val = eos::validate_marking(os, *parsed);
            if (!val.empty()) {
                print_diagnostics("<marking>", val);
                return kExitDiagnostics;
            }
            mu = std::move(*parsed);
        }
        eos::AutGroup g = eos::eos_automorphisms(os);
        std::cout << eos::render_marking(os, eos::canonicalize(os, mu, g).marking) << "\n";
        return kExitOk;
    }

    // explore
    eos::Bounds bounds;
    bounds.max_states = max_states;
    if (max_depth > 0) bounds.max_depth = max_depth;

    eos::AutGroup group;
    eos::ReachGraph graph;
    if (reduce == "none") {
        graph = eos::explore_full(os, doc->initial, bounds);
    } else if (reduce == "aut") {
        group = eos::eos_automorphisms(os);
        graph = eos::explore_reduced(os, doc->initial, group, bounds);
    } else if (reduce == "proj") {
        graph = eos::explore_proj(os, doc->initial, bounds);
    } else {
        group = eos::eos_automorphisms(os);
        graph = eos::explore_aut_proj(os, doc->initial, group, bounds);
    }

    std::cout << "reduction: " << eos::reduction_name(graph.reduction) << "\n"
              << "states: " << graph.states.size() << "\n"
              << "edges: " << graph.edges.size() << "\n"
              << "group order: " << graph.group_order << "\n"
              << "truncated: " << (graph.truncated ? "true" : "false") << "\n";
    if (graph.heuristic) std::cout << "note: heuristic quotient, verify before trusting\n";
    if (timings) std::cout << "wall: " << graph.wall_ms << " ms\n";

    if (!dot_path.empty() && !write_file(dot_path, eos::export_dot(os, graph)))
        return kExitDiagnostics;
    if (!stats_path.empty() && !write_file(stats_path, eos::stats_json(graph, timings)))
        return kExitDiagnostics;

    int exit_code = kExitOk;
    if (do_verify) {
        if (graph.reduction == eos::Reduction::None) {
            std::cout << "verification: nothing to verify for a full exploration\n";
        } else {
            eos::ReachGraph full = eos::explore_full(os, doc->initial, bounds);
            try {
                eos::QuotientReport report;
                if (graph.reduction == eos::Reduction::Aut)
                    report = eos::verify_quotient(os, full, graph, group);
                else if (graph.reduction == eos::Reduction::Proj)
                    report = eos::verify_proj_quotient(os, full, graph);
                else
                    report = eos::verify_aut_proj_quotient(os, full, graph, group);
                std::cout << "verification: " << (report.ok() ? "ok" : "FAILED")
                          << " (violations: " << report.violations.size() << ")\n";
                for (const std::string& v : report.violations) std::cout << "  " << v << "\n";
                if (!report.ok()) exit_code = kExitDiagnostics;
            } catch (const eos::IncomparableGraphs& e) {
                std::cout << "verification: skipped (" << e.what() << ")\n";
            }
        }
    }
    if (strict && graph.truncated) exit_code = kExitTruncated;
    return exit_code;
}
