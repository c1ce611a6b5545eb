#pragma once

#include <cstdint>
#include <string_view>
#include <utility>
#include <vector>

#include "sat2track/geometry.hpp"

namespace sat2track {

enum class BlockType : std::uint8_t {
    road_straight,
    road_curve,
    platform,
    ramp,
    checkpoint_aerial,
    start,
    finish,
    barrier,
    accelerator,
};

// N = +y, E = +x, S = -y, W = -x. For ramps this is the ascent direction.
enum class Orientation : std::uint8_t { N, E, S, W };

struct Block {
    Vec3 position;
    BlockType type = BlockType::road_straight;
    Orientation orientation = Orientation::N;

    friend bool operator==(const Block&, const Block&) = default;
};

// A one-way gap between two blocks (jump or drop). Its direction is recorded,
// not derived from kinematics.
struct Jump {
    Vec3 from;
    Vec3 to;

    friend bool operator==(const Jump&, const Jump&) = default;
};

// Plan-view polyline of one routed wire.
struct Lane {
    std::uint32_t wire = 0;
    std::vector<std::pair<int, int>> points;

    friend bool operator==(const Lane&, const Lane&) = default;
};

struct Layout {
    std::vector<Block> blocks;  // sorted by position
    std::vector<Jump> jumps;    // sorted by (from, to)
    std::vector<Lane> lanes;    // sorted by wire

    friend bool operator==(const Layout&, const Layout&) = default;
};

bool is_drivable(BlockType type);

std::string_view to_string(BlockType type);
std::string_view to_string(Orientation orientation);
BlockType parse_block_type(std::string_view text);
Orientation parse_orientation(std::string_view text);

Vec3 step_of(Orientation orientation);

}  // namespace sat2track
