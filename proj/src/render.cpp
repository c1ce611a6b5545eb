#include "sat2track/render.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "sat2track/errors.hpp"

namespace sat2track {

namespace {

constexpr int kCell = 12;
constexpr int kMargin = 2;

struct Frame {
    int min_x = 0;
    int max_y = 0;
    int width = 0;
    int height = 0;

    template <typename It, typename Get>
    static Frame around(It first, It last, Get get) {
        Frame f;
        if (first == last) return f;
        int lo_x = get(*first).x, hi_x = lo_x, lo_y = get(*first).y, hi_y = lo_y;
        for (auto it = first; it != last; ++it) {
            const Vec3 p = get(*it);
            lo_x = std::min(lo_x, p.x);
            hi_x = std::max(hi_x, p.x);
            lo_y = std::min(lo_y, p.y);
            hi_y = std::max(hi_y, p.y);
        }
        f.min_x = lo_x - kMargin;
        f.max_y = hi_y + kMargin;
        f.width = (hi_x - lo_x + 1 + 2 * kMargin) * kCell;
        f.height = (hi_y - lo_y + 1 + 2 * kMargin) * kCell;
        return f;
    }
    // Top-left corner of the tile for plan cell (x, y); y grows upward.
    int px(int x) const { return (x - min_x) * kCell; }
    int py(int y) const { return (max_y - y) * kCell; }
    int cx(int x) const { return px(x) + kCell / 2; }
    int cy(int y) const { return py(y) + kCell / 2; }
};

std::string header(const Frame& f, const std::string& title) {
    std::string s = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(f.width) + "\" height=\"" +
                    std::to_string(f.height) + "\" viewBox=\"0 0 " + std::to_string(f.width) + " " +
                    std::to_string(f.height) + "\">\n";
    s += "<title>" + title + "</title>\n";
    s += "<defs><marker id=\"arrow\" viewBox=\"0 0 10 10\" refX=\"9\" refY=\"5\" markerWidth=\"6\" markerHeight=\"6\" "
         "orient=\"auto\"><path d=\"M0,0 L10,5 L0,10 z\" fill=\"#c0392b\"/></marker></defs>\n";
    s += "<rect width=\"100%\" height=\"100%\" fill=\"#ffffff\"/>\n";
    return s;
}

const char* fill_of(BlockType t) {
    switch (t) {
        case BlockType::road_straight: return "#9e9e9e";
        case BlockType::road_curve: return "#8a8a8a";
        case BlockType::platform: return "#5d8aa8";
        case BlockType::ramp: return "#c2a878";
        case BlockType::checkpoint_aerial: return "#f1c40f";
        case BlockType::start: return "#27ae60";
        case BlockType::finish: return "#2c3e50";
        case BlockType::barrier: return "#6d2f1f";
        case BlockType::accelerator: return "#e67e22";
    }
    return "#000000";
}

std::string arrow(const Frame& f, Vec3 a, Vec3 b) {
    return "<line x1=\"" + std::to_string(f.cx(a.x)) + "\" y1=\"" + std::to_string(f.cy(a.y)) + "\" x2=\"" +
           std::to_string(f.cx(b.x)) + "\" y2=\"" + std::to_string(f.cy(b.y)) +
           "\" stroke=\"#c0392b\" stroke-width=\"2\" marker-end=\"url(#arrow)\"/>\n";
}

std::string render_layer(const Track& track, const Frame& f, int z) {
    const Layout& layout = *track.layout();
    std::string s = header(f, "layer z=" + std::to_string(z));
    std::set<Vec3> touch;
    for (const auto& p : track.pads()) {
        if (p.checkpoint) touch.insert(p.position);
    }
    for (const auto& b : layout.blocks) {
        if (b.position.z != z) continue;
        const int x = f.px(b.position.x);
        const int y = f.py(b.position.y);
        s += "<rect x=\"" + std::to_string(x) + "\" y=\"" + std::to_string(y) + "\" width=\"" + std::to_string(kCell) +
             "\" height=\"" + std::to_string(kCell) + "\" fill=\"" + fill_of(b.type) + "\" stroke=\"" +
             (touch.contains(b.position) ? "#e74c3c\" stroke-width=\"2\"" : "#ffffff\" stroke-width=\"1\"") +
             " data-type=\"" + std::string(to_string(b.type)) + "\"/>\n";
        if (b.type == BlockType::ramp) {
            // Tick on the high side.
            const Vec3 d = step_of(b.orientation);
            const int mx = f.cx(b.position.x) + d.x * (kCell / 2 - 2);
            const int my = f.cy(b.position.y) - d.y * (kCell / 2 - 2);
            s += "<circle cx=\"" + std::to_string(mx) + "\" cy=\"" + std::to_string(my) +
                 "\" r=\"2\" fill=\"#4e342e\"/>\n";
        }
    }
    for (const auto& j : layout.jumps) {
        if (j.from.z == z) s += arrow(f, j.from, j.to);
    }
    s += "</svg>\n";
    return s;
}

std::string render_abstract(const Track& track) {
    const auto& pads = track.pads();
    const Frame f = Frame::around(pads.begin(), pads.end(), [](const Pad& p) { return p.position; });
    std::string s = header(f, "abstract track");
    for (const auto& l : track.links()) {
        const Vec3 a = track.pad(l.from).position;
        const Vec3 b = track.pad(l.to).position;
        if (l.two_way()) {
            s += "<line x1=\"" + std::to_string(f.cx(a.x)) + "\" y1=\"" + std::to_string(f.cy(a.y)) + "\" x2=\"" +
                 std::to_string(f.cx(b.x)) + "\" y2=\"" + std::to_string(f.cy(b.y)) +
                 "\" stroke=\"#7f8c8d\" stroke-width=\"2\"/>\n";
        } else {
            s += arrow(f, a, b);
        }
    }
    for (const auto& p : pads) {
        const char* fill = p.checkpoint ? "#f1c40f" : p.kind == PadKind::start ? "#27ae60"
                                                     : p.kind == PadKind::finish ? "#2c3e50"
                                                                                 : "#5d8aa8";
        s += "<circle cx=\"" + std::to_string(f.cx(p.position.x)) + "\" cy=\"" + std::to_string(f.cy(p.position.y)) +
             "\" r=\"4\" fill=\"" + fill + "\" data-pad=\"" + std::to_string(p.id) + "\"/>\n";
    }
    s += "</svg>\n";
    return s;
}

}  // namespace

std::vector<RenderedImage> render_svg(const Track& track, std::optional<int> layer) {
    if (!track.layout()) {
        if (layer) throw Error("track has no blocks, so it has no layers; render without --layer");
        return {{"abstract.svg", render_abstract(track)}};
    }
    const auto& blocks = track.layout()->blocks;
    const Frame f = Frame::around(blocks.begin(), blocks.end(), [](const Block& b) { return b.position; });
    std::set<int> layers;
    for (const auto& b : blocks) layers.insert(b.position.z);
    if (layer && !layers.contains(*layer)) {
        throw Error("no blocks at layer " + std::to_string(*layer));
    }
    std::vector<RenderedImage> out;
    for (int z : layers) {
        if (layer && z != *layer) continue;
        out.push_back({"layer_z" + std::to_string(z) + ".svg", render_layer(track, f, z)});
    }
    return out;
}

}  // namespace sat2track
