#pragma once

#include <string>
#include <string_view>

#include "sat2track/track.hpp"

namespace sat2track {

inline constexpr std::string_view kFormatHeader = "sat2track-format 1";

// Line-oriented track file: header, a summary line, then one line per pad,
// link, meta entry, block, jump and lane in canonical order. Output is
// byte-deterministic for a given track.
std::string write_track(const Track& track);
Track read_track(std::string_view text);

// One action per line: "t <link> fwd|rev" or "r [<pad>]".
std::string write_certificate(const Certificate& certificate);
Certificate read_certificate(std::string_view text);

}  // namespace sat2track
