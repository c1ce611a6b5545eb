// sat2track command-line front end.
//
// Exit status: 0 positive result, 1 negative result, 2 error.

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>
#include <string>

#include "sat2track/compile.hpp"
#include "sat2track/corpus.hpp"
#include "sat2track/engine.hpp"
#include "sat2track/errors.hpp"
#include "sat2track/layout.hpp"
#include "sat2track/render.hpp"
#include "sat2track/track_io.hpp"

namespace fs = std::filesystem;
using json = nlohmann::json;
using namespace sat2track;

namespace {

constexpr int kPositive = 0;
constexpr int kNegative = 1;
constexpr int kFailure = 2;

// Failure tagged with the pipeline stage it came from.
struct StageError : Error {
    StageError(const std::string& stage, const std::string& what) : Error(stage + ": " + what) {}
};

struct Config {
    std::string input;
    std::string second;
    std::string output;
    std::string layout = "none";
    std::string respawn = "fixed";
    std::uint64_t seed = kDefaultSeed;
    std::size_t count = kDefaultRandomCount;
    Var max_vars = kDefaultOracleVariableLimit;
    std::uint32_t max_checkpoints = 20;
    std::size_t max_states = SolveLimits{}.max_states;
    std::optional<int> layer;
    bool json = false;
};

std::string read_file(const std::string& path) {
    std::ostringstream ss;
    if (path == "-") {
        ss << std::cin.rdbuf();
        return ss.str();
    }
    std::ifstream in(path, std::ios::binary);
    if (!in) throw StageError("io", "cannot read " + path);
    ss << in.rdbuf();
    return ss.str();
}

void write_output(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out || !(out << text)) throw StageError("io", "cannot write " + path);
}

Track load_track(const std::string& path) {
    try {
        return read_track(read_file(path));
    } catch (const StageError&) {
        throw;
    } catch (const Error& e) {
        throw StageError("track", e.what());
    }
}

RespawnPolicy policy_of(const Config& c) {
    try {
        return parse_respawn_policy(c.respawn);
    } catch (const Error& e) {
        throw StageError("options", e.what());
    }
}

SolveLimits limits_of(const Config& c) { return {c.max_checkpoints, c.max_states}; }

json report_json(const CompletionReport& r) {
    json j;
    j["valid"] = r.valid;
    j["complete"] = r.complete;
    j["first_illegal_index"] = r.first_illegal_index ? json(*r.first_illegal_index) : json(nullptr);
    j["collected_at_end"] = r.collected_at_end;
    j["actions_consumed"] = r.actions_consumed;
    j["checkpoint_count"] = r.checkpoint_count;
    return j;
}

int cmd_compile(const Config& c) {
    RawFormula raw;
    try {
        raw = parse_dimacs(read_file(c.input));
    } catch (const StageError&) {
        throw;
    } catch (const Error& e) {
        throw StageError("parse", e.what());
    }
    NormalizedFormula normalized;
    try {
        normalized = normalize_to_3cnf(raw);
    } catch (const Error& e) {
        throw StageError("normalize", e.what());
    }
    if (!normalized.fresh_variables.empty()) {
        std::cerr << "note: normalization added " << normalized.fresh_variables.size() << " fresh variable"
                  << (normalized.fresh_variables.size() == 1 ? "" : "s") << " (x" << normalized.fresh_variables.front()
                  << "..x" << normalized.fresh_variables.back() << ")\n";
    }
    std::optional<Track> track;
    try {
        track = compile(normalized.formula);
    } catch (const Error& e) {
        throw StageError("compile", e.what());
    }
    if (c.layout == "comb") {
        try {
            track = layout_comb(*track);
        } catch (const Error& e) {
            throw StageError("layout", e.what());
        }
    } else if (c.layout != "none") {
        throw StageError("options", "unknown layout '" + c.layout + "' (expected comb or none)");
    }
    write_output(c.output, write_track(*track));
    return kPositive;
}

int cmd_solve(const Config& c) {
    const Track track = load_track(c.input);
    std::optional<Certificate> cert;
    try {
        cert = solve(track, policy_of(c), limits_of(c));
    } catch (const LimitError& e) {
        throw StageError("solve", e.what());
    }
    if (c.json) {
        json j;
        j["completable"] = cert.has_value();
        j["policy"] = std::string(to_string(policy_of(c)));
        if (cert) j["length"] = cert->size();
        std::cout << j.dump(2) << "\n";
    }
    if (!cert) {
        std::cerr << "no certificate: track is not completable under policy " << to_string(policy_of(c)) << "\n";
        return kNegative;
    }
    if (!c.json || !c.output.empty()) write_output(c.output, write_certificate(*cert));
    return kPositive;
}

Certificate load_certificate(const std::string& path) {
    try {
        return read_certificate(read_file(path));
    } catch (const StageError&) {
        throw;
    } catch (const Error& e) {
        throw StageError("certificate", e.what());
    }
}

int cmd_verify(const Config& c) {
    const Track track = load_track(c.input);
    const Certificate cert = load_certificate(c.second);
    const CompletionReport r = verify(track, cert, policy_of(c));
    if (c.json) {
        std::cout << report_json(r).dump(2) << "\n";
    } else {
        std::cout << to_text(r);
    }
    return r.complete ? kPositive : kNegative;
}

int cmd_extract(const Config& c) {
    const Track track = load_track(c.input);
    const Certificate cert = load_certificate(c.second);
    try {
        write_output(c.output, to_assignment_text(extract_assignment(track, cert, policy_of(c))));
    } catch (const CompileError& e) {
        if (!track.meta()) throw StageError("extract", e.what());
        std::cerr << "no assignment: " << e.what() << "\n";
        return kNegative;
    }
    return kPositive;
}

int cmd_drive(const Config& c) {
    const Track track = load_track(c.input);
    Assignment a;
    try {
        a = parse_assignment(read_file(c.second));
    } catch (const StageError&) {
        throw;
    } catch (const Error& e) {
        throw StageError("assignment", e.what());
    }
    Certificate cert;
    try {
        cert = assignment_to_certificate(track, a);
    } catch (const Error& e) {
        throw StageError("drive", e.what());
    }
    write_output(c.output, write_certificate(cert));
    const CompletionReport r = verify(track, cert, policy_of(c));
    std::cerr << "drive: " << (r.complete ? "complete" : "not complete") << ", " << r.collected_at_end.size() << "/"
              << r.checkpoint_count << " checkpoints\n";
    return r.complete ? kPositive : kNegative;
}

int cmd_render(const Config& c) {
    const Track track = load_track(c.input);
    std::vector<RenderedImage> images;
    try {
        images = render_svg(track, c.layer);
    } catch (const Error& e) {
        throw StageError("render", e.what());
    }
    const fs::path dir = c.output.empty() ? fs::path(".") : fs::path(c.output);
    std::error_code ec;
    fs::create_directories(dir, ec);
    for (const auto& img : images) {
        write_output((dir / img.file_name).string(), img.svg);
        std::cout << (dir / img.file_name).string() << "\n";
    }
    return kPositive;
}

int cmd_stats(const Config& c) {
    const Track track = load_track(c.input);
    json j;
    j["pads"] = track.pads().size();
    j["links"] = track.links().size();
    j["checkpoints"] = track.checkpoint_count();
    if (track.meta()) {
        j["variables"] = track.meta()->variables.size();
        j["clauses"] = track.meta()->clauses.size();
    }
    if (track.layout()) {
        const auto& l = *track.layout();
        std::set<int> layers;
        for (const auto& b : l.blocks) layers.insert(b.position.z);
        j["blocks"] = l.blocks.size();
        j["jumps"] = l.jumps.size();
        j["lanes"] = l.lanes.size();
        j["crossings"] = crossing_count(track);
        j["layers"] = layers.size();
    }
    if (c.json) {
        std::cout << j.dump(2) << "\n";
    } else {
        for (const char* key : {"pads", "links", "checkpoints", "variables", "clauses", "blocks", "jumps", "lanes",
                                "crossings", "layers"}) {
            if (j.contains(key)) std::cout << key << " " << j[key].dump() << "\n";
        }
    }
    return kPositive;
}

int cmd_oracle(const Config& c) {
    RawFormula raw;
    try {
        raw = parse_dimacs(read_file(c.input));
    } catch (const StageError&) {
        throw;
    } catch (const Error& e) {
        throw StageError("parse", e.what());
    }
    const NormalizedFormula nf = normalize_to_3cnf(raw);
    std::optional<Assignment> a;
    try {
        a = sat_oracle(nf.formula, c.max_vars);
    } catch (const LimitError& e) {
        throw StageError("oracle", e.what());
    }
    if (!a) {
        std::cout << "s UNSATISFIABLE\n";
        return kNegative;
    }
    std::cout << "s SATISFIABLE\n" << to_assignment_text(nf.project(*a));
    return kPositive;
}

int cmd_equivalence(const Config& c) {
    const RespawnPolicy policy = policy_of(c);
    const bool exploratory = policy == RespawnPolicy::any_touch;
    std::vector<CorpusEntry> corpus = regression_corpus();
    const std::size_t random = c.count > corpus.size() ? c.count - corpus.size() : 0;
    for (auto& e : random_corpus(c.seed, random)) corpus.push_back(std::move(e));
    corpus.resize(std::min(corpus.size(), c.count));

    EquivalenceLimits limits;
    limits.max_variables = c.max_vars;
    limits.solver = limits_of(c);
    limits.policy = policy;
    std::size_t agree = 0, skipped = 0, findings = 0;
    json cases = json::array();
    for (const auto& entry : corpus) {
        EquivalenceReport r;
        try {
            r = equivalence_check(entry.formula, limits);
        } catch (const LimitError& e) {
            ++skipped;
            std::cout << "skipped " << entry.name << " ("
                      << (e.side() == LimitError::Side::oracle ? "oracle" : "solver") << " limit: " << e.what() << ")\n";
            continue;
        }
        const bool ok = r.agree && (!r.completable || r.witness_cross_checked);
        if (ok) {
            ++agree;
            continue;
        }
        ++findings;
        std::cout << (exploratory ? "finding " : "counterexample ") << entry.name << ": sat=" << r.sat
                  << " completable=" << r.completable << " witness=" << r.witness_cross_checked << "\n"
                  << to_dimacs(entry.formula);
        cases.push_back({{"name", entry.name}, {"sat", r.sat}, {"completable", r.completable},
                         {"witness_cross_checked", r.witness_cross_checked}, {"dimacs", to_dimacs(entry.formula)}});
    }
    const std::size_t total = corpus.size();
    if (exploratory) std::cout << "exploratory respawn policy " << to_string(policy) << ": " << findings << " findings\n";
    std::cout << "agree " << agree << "/" << total << ", skipped " << skipped << "\n";
    if (c.json) {
        json j{{"seed", c.seed}, {"total", total}, {"agree", agree}, {"skipped", skipped},
               {"policy", std::string(to_string(policy))}, {"disagreements", cases}};
        std::cout << j.dump(2) << "\n";
    }
    if (exploratory) return kPositive;
    return agree + skipped == total ? kPositive : kNegative;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Compile 3-CNF formulas into checkpoint tracks and check them."};
    app.require_subcommand(1);
    Config c;

    const auto out = [&](CLI::App* sub, const char* what) {
        sub->add_option("-o,--output", c.output, what)->envname("SAT2TRACK_OUTPUT");
    };
    const auto respawn = [&](CLI::App* sub) {
        sub->add_option("--respawn", c.respawn, "Respawn policy: disabled, fixed or any-touch")
            ->envname("SAT2TRACK_RESPAWN")
            ->capture_default_str();
    };
    const auto solver_limits = [&](CLI::App* sub) {
        sub->add_option("--max-checkpoints", c.max_checkpoints, "Solver checkpoint limit")
            ->envname("SAT2TRACK_MAX_CHECKPOINTS")
            ->check(CLI::Range(1u, 64u))
            ->capture_default_str();
        sub->add_option("--max-states", c.max_states, "Solver state limit")
            ->envname("SAT2TRACK_MAX_STATES")
            ->check(CLI::PositiveNumber)
            ->capture_default_str();
    };
    const auto max_vars = [&](CLI::App* sub) {
        sub->add_option("--max-vars", c.max_vars, "Oracle variable limit")
            ->envname("SAT2TRACK_MAX_VARS")
            ->check(CLI::Range(1u, 62u))
            ->capture_default_str();
    };
    const auto as_json = [&](CLI::App* sub) { sub->add_flag("--json", c.json, "Machine-readable report"); };

    auto* compile_cmd = app.add_subcommand("compile", "DIMACS file to track file");
    compile_cmd->add_option("cnf", c.input, "DIMACS input ('-' for stdin)")->required();
    out(compile_cmd, "Track file (default stdout)");
    compile_cmd->add_option("--layout", c.layout, "comb or none")
        ->envname("SAT2TRACK_LAYOUT")
        ->check(CLI::IsMember({"comb", "none"}))
        ->capture_default_str();

    auto* solve_cmd = app.add_subcommand("solve", "Search for a shortest completing certificate");
    solve_cmd->add_option("track", c.input, "Track file")->required();
    out(solve_cmd, "Certificate file (default stdout)");
    respawn(solve_cmd);
    solver_limits(solve_cmd);
    as_json(solve_cmd);

    auto* verify_cmd = app.add_subcommand("verify", "Check a certificate against a track");
    verify_cmd->add_option("track", c.input, "Track file")->required();
    verify_cmd->add_option("certificate", c.second, "Certificate file")->required();
    respawn(verify_cmd);
    as_json(verify_cmd);

    auto* extract_cmd = app.add_subcommand("extract", "Read the assignment a certificate encodes");
    extract_cmd->add_option("track", c.input, "Track file")->required();
    extract_cmd->add_option("certificate", c.second, "Certificate file")->required();
    out(extract_cmd, "Assignment file (default stdout)");
    respawn(extract_cmd);

    auto* drive_cmd = app.add_subcommand("drive", "Turn an assignment into a certificate");
    drive_cmd->add_option("track", c.input, "Track file")->required();
    drive_cmd->add_option("assignment", c.second, "Assignment file (v-line format)")->required();
    out(drive_cmd, "Certificate file (default stdout)");
    respawn(drive_cmd);

    auto* render_cmd = app.add_subcommand("render", "Write one SVG per block layer");
    render_cmd->add_option("track", c.input, "Track file")->required();
    out(render_cmd, "Output directory (default .)");
    render_cmd->add_option("--layer", c.layer, "Only this altitude")->envname("SAT2TRACK_LAYER");

    auto* stats_cmd = app.add_subcommand("stats", "Size figures of a track");
    stats_cmd->add_option("track", c.input, "Track file")->required();
    as_json(stats_cmd);

    auto* oracle_cmd = app.add_subcommand("oracle", "Brute-force satisfiability of a DIMACS file");
    oracle_cmd->add_option("cnf", c.input, "DIMACS input ('-' for stdin)")->required();
    max_vars(oracle_cmd);

    auto* eq_cmd = app.add_subcommand("equivalence", "Compare oracle and solver on a seeded corpus");
    eq_cmd->add_option("--seed", c.seed, "Corpus seed")->envname("SAT2TRACK_SEED")->capture_default_str();
    eq_cmd->add_option("--count", c.count, "Corpus size, regression formulas included")
        ->envname("SAT2TRACK_COUNT")
        ->capture_default_str();
    respawn(eq_cmd);
    solver_limits(eq_cmd);
    max_vars(eq_cmd);
    as_json(eq_cmd);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kFailure;
    }

    try {
        if (*compile_cmd) return cmd_compile(c);
        if (*solve_cmd) return cmd_solve(c);
        if (*verify_cmd) return cmd_verify(c);
        if (*extract_cmd) return cmd_extract(c);
        if (*drive_cmd) return cmd_drive(c);
        if (*render_cmd) return cmd_render(c);
        if (*stats_cmd) return cmd_stats(c);
        if (*oracle_cmd) return cmd_oracle(c);
        if (*eq_cmd) return cmd_equivalence(c);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kFailure;
    }
    return kFailure;
}
