// One PASS/FAIL line per acceptance criterion. Exit status is nonzero when any
// criterion fails.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <map>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "sat2track/compile.hpp"
#include "sat2track/corpus.hpp"
#include "sat2track/engine.hpp"
#include "sat2track/gadgets.hpp"
#include "sat2track/layout.hpp"
#include "sat2track/render.hpp"
#include "sat2track/track_io.hpp"

using namespace sat2track;
using Clock = std::chrono::steady_clock;

namespace {

constexpr double kEquivalenceBudgetSeconds = 300.0;
constexpr double kLinearFailRatio = 20.0;
constexpr double kLinearTargetRatio = 12.0;
constexpr std::size_t kBlockConstant = 120;

int failures = 0;

void report(int id, const char* name, bool pass, const std::string& detail) {
    std::printf("[%s] %d %s: %s\n", pass ? "PASS" : "FAIL", id, name, detail.c_str());
    std::fflush(stdout);
    if (!pass) ++failures;
}

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::vector<CorpusEntry> full_corpus() {
    auto all = micro_corpus();
    auto random = random_corpus(kDefaultSeed, kDefaultRandomCount);
    auto regression = regression_corpus();
    all.insert(all.end(), random.begin(), random.end());
    all.insert(all.end(), regression.begin(), regression.end());
    return all;
}

Assignment from_values(const std::vector<bool>& v) { return Assignment(std::vector<bool>(v.begin() + 1, v.end())); }

void equivalence(const std::vector<CorpusEntry>& corpus) {
    const auto t0 = Clock::now();
    std::size_t agree = 0, skipped = 0;
    std::string first_bad;
    for (const auto& e : corpus) {
        try {
            const auto r = equivalence_check(e.formula);
            const bool brute = oracle::brute_sat(static_cast<int>(e.formula.num_variables), oracle::as_ints(e.formula));
            if (r.agree && r.sat == brute) {
                ++agree;
            } else if (first_bad.empty()) {
                first_bad = e.name;
            }
        } catch (const LimitError&) {
            ++skipped;
        }
    }
    const double s = seconds_since(t0);
    std::string detail = "agree " + std::to_string(agree) + "/" + std::to_string(corpus.size()) + ", skipped " +
                         std::to_string(skipped) + ", " + std::to_string(s) + " s";
    if (!first_bad.empty()) detail += ", first disagreement " + first_bad;
    report(1, "reduction equivalence", agree == corpus.size() && skipped == 0 && s < kEquivalenceBudgetSeconds,
           detail);
}

void round_trips(const std::vector<CorpusEntry>& corpus) {
    std::size_t satisfiable = 0, models = 0, bad_a = 0, bad_b = 0, bad_c = 0;
    for (const auto& e : corpus) {
        const auto& f = e.formula;
        const auto oracle_model = sat_oracle(f);
        if (!oracle_model) continue;
        ++satisfiable;
        const Track t = compile(f);
        if (!verify(t, assignment_to_certificate(t, *oracle_model)).complete) ++bad_a;
        const auto c = solve(t);
        if (!c || !satisfies(f, extract_assignment(t, *c))) ++bad_b;
        for (const auto& m : oracle::all_models(static_cast<int>(f.num_variables), oracle::as_ints(f))) {
            ++models;
            const Assignment a = from_values(m);
            if (!(extract_assignment(t, assignment_to_certificate(t, a)) == a)) ++bad_c;
        }
    }
    report(2, "witness round trips", bad_a + bad_b + bad_c == 0,
           std::to_string(satisfiable) + " satisfiable instances, " + std::to_string(models) +
               " models; failures a=" + std::to_string(bad_a) + " b=" + std::to_string(bad_b) +
               " c=" + std::to_string(bad_c));
}

// Straight road of `length` links with a touch pad every tenth pad.
std::pair<Track, Certificate> chain(std::size_t length) {
    TrackBuilder b;
    std::vector<PadId> pads;
    for (std::size_t i = 0; i <= length; ++i) {
        const Vec3 at{static_cast<int>(i), 0, 0};
        if (i == 0) {
            pads.push_back(b.add_pad(at, PadKind::start));
        } else if (i == length) {
            pads.push_back(b.add_pad(at, PadKind::finish));
        } else if (i % 10 == 0) {
            pads.push_back(b.add_pad(at, PadKind::checkpoint_touch, b.new_checkpoint()));
        } else {
            pads.push_back(b.add_pad(at, PadKind::road));
        }
    }
    Certificate c;
    for (std::size_t i = 0; i < length; ++i) {
        c.push_back(Action::traverse(b.add_link(pads[i], pads[i + 1], Directionality::two_way, LinkCause::road),
                                     Direction::forward));
    }
    return {b.build(pads.front(), pads.back()), c};
}

// Per-call verify time: the best of several batches, each batch sized to
// roughly 10^6 actions.
double time_verify(std::size_t length) {
    const auto [track, cert] = chain(length);
    if (!verify(track, cert).complete) return -1;
    const std::size_t calls = std::max<std::size_t>(1, 1'000'000 / length);
    double best = 1e30;
    for (int rep = 0; rep < 7; ++rep) {
        std::size_t sink = 0;
        const auto t0 = Clock::now();
        for (std::size_t i = 0; i < calls; ++i) sink += verify(track, cert).actions_consumed;
        const double t = seconds_since(t0) / static_cast<double>(calls);
        if (sink != calls * length) return -1;
        best = std::min(best, t);
    }
    return best;
}

void linearity() {
    const double t3 = time_verify(1'000), t4 = time_verify(10'000), t5 = time_verify(100'000);
    if (t3 <= 0 || t4 <= 0 || t5 <= 0) {
        report(3, "verifier linearity", false, "chain certificate did not verify complete");
        return;
    }
    const double r1 = t4 / t3, r2 = t5 / t4;
    char buf[200];
    std::snprintf(buf, sizeof buf, "t(1e3)=%.3g s t(1e4)=%.3g s t(1e5)=%.3g s, ratios %.2f %.2f (fail > %.0f, target %.0f%s)",
                  t3, t4, t5, r1, r2, kLinearFailRatio, kLinearTargetRatio,
                  r1 <= kLinearTargetRatio && r2 <= kLinearTargetRatio ? ", met" : ", missed");
    report(3, "verifier linearity", r1 <= kLinearFailRatio && r2 <= kLinearFailRatio, buf);
}

void gadget_pair() {
    const auto broken = broken_accelerator_gadget({0, 0, 1});
    const auto bt = broken.port("true_exit");
    const bool broken_cross = oracle::gadget_reach(broken, bt)[broken.port("false_exit")];
    const bool broken_reverse = oracle::gadget_reach(broken, bt)[broken.port("entry")];
    const auto var = variable_gadget({0, 0, 1});
    bool var_cross = false, var_reverse = false;
    for (const char* exit : {"true_exit", "false_exit"}) {
        const auto r = oracle::gadget_reach(var, var.port(exit));
        var_cross = var_cross || r[var.port(exit == std::string("true_exit") ? "false_exit" : "true_exit")];
        var_reverse = var_reverse || r[var.port("entry")];
    }
    const auto clause = clause_gadget({0, 0, 1});
    const std::uint32_t expected[3] = {2, 1, 0};
    int pairs_ok = 0;
    for (std::uint32_t i = 0; i < 3; ++i) {
        const auto r = oracle::gadget_reach(clause, clause.port("entry_" + std::to_string(i)));
        for (std::uint32_t j = 0; j < 3; ++j) pairs_ok += r[clause.port("exit_" + std::to_string(j))] == (j == expected[i]);
    }
    const bool pass = broken_cross && broken_reverse && !var_cross && !var_reverse && pairs_ok == 9;
    report(4, "gadget regression pair", pass,
           std::string("broken cross=") + (broken_cross ? "true" : "false") +
               " reverse=" + (broken_reverse ? "true" : "false") + "; variable cross=" + (var_cross ? "true" : "false") +
               " reverse=" + (var_reverse ? "true" : "false") + "; clause pairs " + std::to_string(pairs_ok) + "/9");
}

bool crossovers_isolated(const Track& t) {
    const auto& layout = *t.layout();
    std::map<std::pair<int, int>, std::vector<Block>> cells;
    std::map<Vec3, Block> at;
    for (const auto& b : layout.blocks) {
        at.emplace(b.position, b);
        if (is_drivable(b.type)) cells[{b.position.x, b.position.y}].push_back(b);
    }
    for (const auto& [cell, list] : cells) {
        if (list.size() < 2) continue;
        if (list.size() != 2) return false;
        const bool first_low = list[0].position.z < list[1].position.z;
        const Block& lo = first_low ? list[0] : list[1];
        const Block& hi = first_low ? list[1] : list[0];
        if (hi.position.z - lo.position.z < 2) return false;
        const Vec3 along = step_of(hi.orientation);
        const Vec3 across = along.x != 0 ? Vec3{0, 1, 0} : Vec3{1, 0, 0};
        for (Vec3 side : {hi.position + across, hi.position - across}) {
            auto it = at.find(side);
            if (it == at.end() || it->second.type != BlockType::barrier) return false;
        }
    }
    return true;
}

void layout_faithfulness(const std::vector<CorpusEntry>& corpus) {
    std::size_t reach_bad = 0, cross_bad = 0, isolation_bad = 0, total_crossings = 0;
    double worst = 0;
    std::string worst_name;
    for (const auto& e : corpus) {
        const Track t = layout_comb(compile(e.formula));
        if (oracle::closure(block_pad_graph(t)) != oracle::closure(oracle::link_graph(t))) ++reach_bad;
        const std::size_t crossings = crossing_count(t);
        total_crossings += crossings;
        if (crossings != oracle::lane_intersections(t.layout()->lanes)) ++cross_bad;
        if (!crossovers_isolated(t)) ++isolation_bad;
        const double size = static_cast<double>(std::max<std::size_t>(1, e.formula.num_variables + e.formula.clauses.size()));
        const double ratio = static_cast<double>(t.layout()->blocks.size()) / (size * size);
        if (ratio > worst) {
            worst = ratio;
            worst_name = e.name;
        }
    }
    char buf[240];
    std::snprintf(buf, sizeof buf,
                  "%zu instances, reachability mismatches %zu, crossing mismatches %zu (%zu crossings), "
                  "unisolated %zu, max blocks/max(1,n+m)^2 = %.1f at %s (c = %zu)",
                  corpus.size(), reach_bad, cross_bad, total_crossings, isolation_bad, worst, worst_name.c_str(),
                  kBlockConstant);
    report(5, "layout faithfulness", reach_bad + cross_bad + isolation_bad == 0 && worst <= kBlockConstant, buf);
}

void respawn_neutrality(const std::vector<CorpusEntry>& corpus) {
    std::size_t disagree = 0, findings = 0;
    for (const auto& e : corpus) {
        const auto cmp = compare_policies(compile(e.formula));
        if (cmp.disabled != cmp.fixed) ++disagree;
        if (cmp.any_touch != cmp.fixed) {
            ++findings;
            std::printf("  finding: %s completable under any-touch=%s, fixed=%s\n", e.name.c_str(),
                        cmp.any_touch ? "yes" : "no", cmp.fixed ? "yes" : "no");
        }
    }
    report(6, "respawn neutrality", disagree == 0,
           "disabled/fixed disagreements " + std::to_string(disagree) + ", any-touch findings " +
               std::to_string(findings));
}

std::string pipeline(const Formula& f) {
    const Track t = compile(f);
    std::string out = write_track(t);
    const Track laid = layout_comb(t);
    out += write_track(laid);
    const auto c = solve(t);
    out += c ? write_certificate(*c) : std::string("none\n");
    for (const auto& image : render_svg(laid)) out += image.file_name + "\n" + image.svg;
    for (const auto& image : render_svg(t)) out += image.file_name + "\n" + image.svg;
    return out;
}

void determinism(const std::vector<CorpusEntry>& corpus) {
    std::size_t differ = 0, bytes = 0;
    for (const auto& e : corpus) {
        const std::string a = pipeline(e.formula);
        const std::string b = pipeline(e.formula);
        bytes += a.size();
        if (a != b) ++differ;
    }
    bool corpus_stable = true;
    const auto again = random_corpus(kDefaultSeed, kDefaultRandomCount);
    for (std::size_t i = 0; i < again.size(); ++i) {
        corpus_stable = corpus_stable && to_dimacs(again[i].formula) == to_dimacs(corpus[231 + i].formula);
    }
    report(7, "determinism", differ == 0 && corpus_stable,
           std::to_string(corpus.size()) + " instances, " + std::to_string(bytes) + " bytes per run, differing " +
               std::to_string(differ) + (corpus_stable ? "" : ", corpus generation unstable"));
}

}  // namespace

int main() {
    const auto corpus = full_corpus();
    std::printf("corpus: %zu micro + %zu random (seed %llu) + %zu regression\n", micro_corpus().size(),
                kDefaultRandomCount, static_cast<unsigned long long>(kDefaultSeed), regression_corpus().size());
    const auto guard = [](int id, const char* name, auto&& body) {
        try {
            body();
        } catch (const std::exception& e) {
            report(id, name, false, std::string("exception: ") + e.what());
        }
    };
    guard(1, "reduction equivalence", [&] { equivalence(corpus); });
    guard(2, "witness round trips", [&] { round_trips(corpus); });
    guard(3, "verifier linearity", [&] { linearity(); });
    guard(4, "gadget regression pair", [&] { gadget_pair(); });
    guard(5, "layout faithfulness", [&] { layout_faithfulness(corpus); });
    guard(6, "respawn neutrality", [&] { respawn_neutrality(corpus); });
    guard(7, "determinism", [&] { determinism(corpus); });
    std::printf("%d of 7 criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
