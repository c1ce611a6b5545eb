#pragma once

#include "sat2track/cnf.hpp"
#include "sat2track/track.hpp"

namespace sat2track {

// Builds the reduction track for an exactly-3-CNF formula.
//
// Variables form a chain start -> x1 -> ... -> xn -> finish. Each variable
// gadget jumps onto a true or a false landing; the landing's branch wire
// threads, in clause order, every clause slot holding that literal and ends on
// a branch-end pad that drops one-way into the variable's merge pad. Clause j
// owns checkpoint j.
//
// The abstract track has exactly 9n + 15m + 2 pads and 10n + 15m + 1 links.
// Throws CompileError if a literal names a variable above num_variables.
Track compile(const Formula& formula);

inline constexpr std::size_t kPadsPerVariable = 9;
inline constexpr std::size_t kPadsPerClause = 15;
inline constexpr std::size_t kFixedPads = 2;

// Drives every variable gadget toward `assignment` and follows each chosen
// branch to its merge, then on to finish. Never respawns. Throws CompileError
// for tracks without reduction metadata or assignments that are too short.
Certificate assignment_to_certificate(const Track& track, const Assignment& assignment);

// Reads each variable from the certificate's first traversal out of that
// variable's entry pad. The certificate must be valid and complete under
// `policy`; otherwise, or if some entry is never left, throws CompileError.
Assignment extract_assignment(const Track& track, const Certificate& certificate,
                              RespawnPolicy policy = RespawnPolicy::fixed);

}  // namespace sat2track
