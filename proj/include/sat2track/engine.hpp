#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sat2track/cnf.hpp"
#include "sat2track/track.hpp"

namespace sat2track {

struct CompletionReport {
    bool valid = true;
    bool complete = false;
    std::optional<std::size_t> first_illegal_index;
    std::vector<CheckpointId> collected_at_end;
    std::size_t actions_consumed = 0;
    std::uint32_t checkpoint_count = 0;
};

// Folds the certificate over the initial state and stops at the first illegal
// action. Never throws for bad certificates.
CompletionReport verify(const Track& track, const Certificate& certificate,
                        RespawnPolicy policy = RespawnPolicy::fixed);

// Line-oriented form: "valid", "complete", "first-illegal", "actions",
// "collected" and "checkpoints" lines in that order.
std::string to_text(const CompletionReport& report);

struct SolveLimits {
    std::uint32_t max_checkpoints = 20;
    std::size_t max_states = 20'000'000;
};

// Breadth-first search over (pad, collected, last touch); last touch is left
// out of the state under `disabled`. Returns a shortest complete certificate,
// the first one found when successors are expanded in legal_actions() order.
// Throws LimitError(solver) when the track has more checkpoints than
// `limits.max_checkpoints` (at most 64) or the search visits more than
// `limits.max_states` states.
std::optional<Certificate> solve(const Track& track, RespawnPolicy policy = RespawnPolicy::fixed,
                                 const SolveLimits& limits = {});

struct EquivalenceReport {
    bool sat = false;
    bool completable = false;
    bool agree = false;
    // Set when completable: the assignment extracted from the solver's
    // certificate satisfies the formula.
    bool witness_cross_checked = false;
    std::optional<Assignment> oracle_assignment;
    std::optional<Certificate> certificate;
};

struct EquivalenceLimits {
    Var max_variables = 24;
    SolveLimits solver;
    RespawnPolicy policy = RespawnPolicy::fixed;
};

// Runs sat_oracle on `formula` and solve on compile(formula). Limit overruns
// propagate as LimitError tagged with the side that hit them.
EquivalenceReport equivalence_check(const Formula& formula, const EquivalenceLimits& limits = {});

// Completability of one track under each respawn policy.
struct PolicyComparison {
    bool disabled = false;
    bool fixed = false;
    bool any_touch = false;

    bool diverges() const { return disabled != fixed || fixed != any_touch; }
};

PolicyComparison compare_policies(const Track& track, const SolveLimits& limits = {});

}  // namespace sat2track
