#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>

namespace sat2track {

// Integer grid coordinate; z is altitude in block units.
struct Vec3 {
    int x = 0;
    int y = 0;
    int z = 0;

    friend bool operator==(const Vec3&, const Vec3&) = default;
    friend auto operator<=>(const Vec3&, const Vec3&) = default;

    Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
    Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
};

struct Vec3Hash {
    std::size_t operator()(const Vec3& v) const noexcept {
        std::uint64_t h = static_cast<std::uint32_t>(v.x);
        h = h * 0x9E3779B97F4A7C15ull ^ static_cast<std::uint32_t>(v.y);
        h = h * 0x9E3779B97F4A7C15ull ^ static_cast<std::uint32_t>(v.z);
        return static_cast<std::size_t>(h ^ (h >> 29));
    }
};

}  // namespace sat2track
