#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sat2track/track.hpp"

namespace sat2track {

struct RenderedImage {
    std::string file_name;  // layer_z<z>.svg, or abstract.svg without blocks
    std::string svg;
};

// One SVG per altitude that holds blocks: blocks as tiles (touch blocks
// highlighted), jumps leaving that altitude as arrows. Tracks without blocks
// get a single plan view of pads and links instead. With `layer`, only that
// altitude is drawn; throws Error if it holds no blocks. Output depends only
// on the track.
std::vector<RenderedImage> render_svg(const Track& track, std::optional<int> layer = std::nullopt);

}  // namespace sat2track
