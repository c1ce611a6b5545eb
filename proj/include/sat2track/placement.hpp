#pragma once

#include <array>
#include <cstdint>

#include "sat2track/gadgets.hpp"
#include "sat2track/geometry.hpp"

namespace sat2track {

// Grid sites of the comb arrangement for a formula with `variables` variables
// and `clauses` clauses.
//
//   y = clause_row          clause gadgets, ports facing -y, touch pads at +2
//   lanes                   one horizontal lane per literal wire, pitch S
//   y = port_row (3)        variable landings and branch ends, facing +y
//   y = 0                   start, variable entries, merges, finish (chain row)
//
// Variable i occupies columns base.x + {0, S, 2S, 3S}; clause j occupies six
// columns to the right of all variables. No two ports share a column.
class CombSites {
public:
    static constexpr int S = kLanePitch;
    static constexpr int port_row = 3;
    // Altitudes: chain row, wire ground level, entry platforms.
    static constexpr int chain_z = 0;
    static constexpr int ground_z = 1;
    static constexpr int entry_z = ground_z + kJumpHeight;

    CombSites(std::uint32_t variables, std::uint32_t clauses)
        : variables_(variables), clauses_(clauses) {}

    std::uint32_t wire_count() const { return 2 * variables_ + 3 * clauses_; }
    int lane_y(std::uint32_t wire) const { return port_row + S * static_cast<int>(wire + 1); }
    int clause_row() const { return port_row + S * static_cast<int>(wire_count() + 2); }

    Vec3 start() const { return {0, 0, chain_z}; }
    Vec3 finish() const { return {4 * S * static_cast<int>(variables_) + S, 0, chain_z}; }

    // 1-based variable index.
    Vec3 variable_base(std::uint32_t v) const { return {2 * S + 4 * S * static_cast<int>(v - 1), 0, ground_z}; }
    Vec3 branch_end(std::uint32_t v, bool value) const {
        return variable_base(v) + Vec3{value ? S : 3 * S, port_row, 0};
    }
    Vec3 merge(std::uint32_t v) const { return variable_base(v) + Vec3{2 * S, 0, chain_z - ground_z}; }

    Vec3 clause_base(std::uint32_t c) const {
        return {4 * S * static_cast<int>(variables_) + 2 * S + 6 * S * static_cast<int>(c), clause_row(), ground_z};
    }

    // Waypoints of the chain wire climbing from chain_z into a variable entry.
    static std::array<Vec3, 3> chain_climb(Vec3 entry) {
        return {entry + Vec3{-3, 0, -3}, entry + Vec3{-2, 0, -2}, entry + Vec3{-1, 0, -1}};
    }
    // Waypoints of a literal wire climbing from ground_z into a clause entry.
    static std::array<Vec3, 2> clause_climb(Vec3 entry) {
        return {entry + Vec3{0, -2, -2}, entry + Vec3{0, -1, -1}};
    }

private:
    std::uint32_t variables_;
    std::uint32_t clauses_;
};

}  // namespace sat2track
