#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "sat2track/blocks.hpp"
#include "sat2track/track.hpp"

namespace sat2track {

// Places a compiled track on the grid.
//
// Pads keep the positions compile gave them. Every two-way link becomes a
// contiguous run of road and ramp blocks, every one-way link a recorded jump.
// Literal wires are numbered in branch order (x1 true, x1 false, x2 true, ...,
// each branch split at its clause slots) and wire k runs vertically out of its
// source port, horizontally along lane k, and vertically into its target port.
// Where a vertical run meets a horizontal run of another wire, the wire with
// the larger number climbs over a bridge flanked by barriers.
//
// Throws LayoutError if the track has no reduction metadata.
Track layout_comb(const Track& track);

// Number of crossovers, i.e. plan cells holding more than one drivable block.
// Throws LayoutError if the track has no layout.
std::size_t crossing_count(const Track& track);

// Height of `block`'s face on `side` in block units, or nothing if a car
// cannot leave through that side. Flat blocks sit at z on all sides; a ramp at
// z is z on its low side and z + 1 on its high side.
std::optional<int> side_height(const Block& block, Orientation side);

// Drivable blocks reachable from `blocks[index]` in one move: edge neighbours
// whose facing sides have equal height.
std::vector<std::size_t> block_neighbors(const Layout& layout, std::size_t index);

// Pad graph read back from the block list. Pad p has an edge to pad q if a
// block path leads from p's block to q's block without passing another pad's
// block, or if a jump is recorded from p's position to q's. Adjacency lists
// are sorted and free of duplicates. Throws LayoutError if the track has no
// layout or a jump does not connect two pads.
std::vector<std::vector<PadId>> block_pad_graph(const Track& track);

}  // namespace sat2track
