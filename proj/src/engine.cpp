#include "sat2track/engine.hpp"

#include <algorithm>
#include <limits>
#include <unordered_map>

#include "sat2track/compile.hpp"
#include "sat2track/errors.hpp"

namespace sat2track {

CompletionReport verify(const Track& track, const Certificate& certificate, RespawnPolicy policy) {
    CompletionReport report;
    report.checkpoint_count = track.checkpoint_count();
    State state = initial_state(track);
    for (const Action& a : certificate) {
        if (!advance(track, state, a, policy)) {
            report.valid = false;
            report.first_illegal_index = report.actions_consumed;
            break;
        }
        ++report.actions_consumed;
    }
    report.complete = report.valid && is_complete(track, state);
    report.collected_at_end = state.collected.to_vector();
    return report;
}

std::string to_text(const CompletionReport& r) {
    std::string out;
    out += "valid ";
    out += r.valid ? "true\n" : "false\n";
    out += "complete ";
    out += r.complete ? "true\n" : "false\n";
    out += "first-illegal ";
    out += r.first_illegal_index ? std::to_string(*r.first_illegal_index) : "none";
    out += "\nactions " + std::to_string(r.actions_consumed) + "\ncollected";
    for (auto c : r.collected_at_end) out += " " + std::to_string(c);
    out += "\ncheckpoints " + std::to_string(r.collected_at_end.size()) + "/" + std::to_string(r.checkpoint_count) + "\n";
    return out;
}

namespace {

constexpr PadId kNoPad = std::numeric_limits<PadId>::max();

struct Key {
    PadId pad;
    PadId last;
    std::uint64_t mask;

    friend bool operator==(const Key&, const Key&) = default;
};

struct KeyHash {
    std::size_t operator()(const Key& k) const noexcept {
        std::uint64_t h = k.mask * 0x9E3779B97F4A7C15ull;
        h ^= (static_cast<std::uint64_t>(k.pad) << 32 | k.last) + 0x7F4A7C159E3779B9ull + (h << 6) + (h >> 2);
        return static_cast<std::size_t>(h ^ (h >> 29));
    }
};

struct Node {
    Key key;
    // Real last touch, kept even when the key drops it.
    PadId last;
    std::uint32_t parent;
    Action action;
};

}  // namespace

std::optional<Certificate> solve(const Track& track, RespawnPolicy policy, const SolveLimits& limits) {
    const std::uint32_t c = track.checkpoint_count();
    const std::uint32_t cap = std::min<std::uint32_t>(limits.max_checkpoints, 64);
    if (c > cap) {
        throw LimitError(LimitError::Side::solver, "track has " + std::to_string(c) +
                                                       " checkpoints; the solver limit is " + std::to_string(cap));
    }
    const std::uint64_t full = c == 64 ? ~0ull : (1ull << c) - 1;
    const bool keep_last = policy != RespawnPolicy::disabled;

    std::vector<Node> nodes;
    std::unordered_map<Key, std::uint32_t, KeyHash> seen;
    const auto rebuild = [&](std::uint32_t i) {
        Certificate out;
        for (; i != 0; i = nodes[i].parent) out.push_back(nodes[i].action);
        std::reverse(out.begin(), out.end());
        return out;
    };

    const Key root{track.start(), kNoPad, 0};
    nodes.push_back({root, kNoPad, 0, Action{}});
    seen.emplace(root, 0);
    if (track.start() == track.finish() && c == 0) return Certificate{};

    std::vector<std::pair<Action, PadId>> succ;
    for (std::uint32_t head = 0; head < nodes.size(); ++head) {
        const Node cur = nodes[head];
        succ.clear();
        for (const Move& mv : track.moves(cur.key.pad)) succ.emplace_back(Action::traverse(mv.link, mv.direction), mv.target);
        if (cur.last != kNoPad) {
            if (policy == RespawnPolicy::fixed) {
                succ.emplace_back(Action::respawn(), cur.last);
            } else if (policy == RespawnPolicy::any_touch) {
                for (PadId t : track.touch_pads(*track.pad(cur.last).checkpoint)) succ.emplace_back(Action::respawn(t), t);
            }
        }
        for (const auto& [action, target] : succ) {
            std::uint64_t mask = cur.key.mask;
            PadId last = cur.last;
            if (action.kind == Action::Kind::traverse) {
                if (auto cp = track.pad(target).checkpoint) {
                    mask |= 1ull << *cp;
                    last = target;
                }
            }
            const Key key{target, keep_last ? last : kNoPad, mask};
            if (seen.contains(key)) continue;
            if (nodes.size() >= limits.max_states) {
                throw LimitError(LimitError::Side::solver,
                                 "state space exceeds " + std::to_string(limits.max_states) + " states");
            }
            const auto id = static_cast<std::uint32_t>(nodes.size());
            nodes.push_back({key, last, head, action});
            seen.emplace(key, id);
            if (target == track.finish() && mask == full) return rebuild(id);
        }
    }
    return std::nullopt;
}

EquivalenceReport equivalence_check(const Formula& formula, const EquivalenceLimits& limits) {
    EquivalenceReport r;
    r.oracle_assignment = sat_oracle(formula, limits.max_variables);
    r.sat = r.oracle_assignment.has_value();
    const Track track = compile(formula);
    r.certificate = solve(track, limits.policy, limits.solver);
    r.completable = r.certificate.has_value();
    r.agree = r.sat == r.completable;
    if (r.completable) {
        try {
            r.witness_cross_checked = satisfies(formula, extract_assignment(track, *r.certificate, limits.policy));
        } catch (const CompileError&) {
            r.witness_cross_checked = false;
        }
    }
    return r;
}

PolicyComparison compare_policies(const Track& track, const SolveLimits& limits) {
    PolicyComparison out;
    out.disabled = solve(track, RespawnPolicy::disabled, limits).has_value();
    out.fixed = solve(track, RespawnPolicy::fixed, limits).has_value();
    out.any_touch = solve(track, RespawnPolicy::any_touch, limits).has_value();
    return out;
}

}  // namespace sat2track
