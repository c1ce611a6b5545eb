#include "sat2track/layout.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <tuple>
#include <string>
#include <unordered_map>
#include <utility>

#include "sat2track/errors.hpp"
#include "sat2track/placement.hpp"

namespace sat2track {

namespace {

struct Cell {
    int x = 0;
    int y = 0;
    friend bool operator==(const Cell&, const Cell&) = default;
    friend auto operator<=>(const Cell&, const Cell&) = default;
};

Orientation orientation_of(Cell from, Cell to) {
    if (to.x > from.x) return Orientation::E;
    if (to.x < from.x) return Orientation::W;
    if (to.y > from.y) return Orientation::N;
    return Orientation::S;
}

Orientation opposite(Orientation o) {
    switch (o) {
        case Orientation::N: return Orientation::S;
        case Orientation::E: return Orientation::W;
        case Orientation::S: return Orientation::N;
        case Orientation::W: return Orientation::E;
    }
    return o;
}

// A route through plan cells. cells.front() and cells.back() are the endpoint
// pads; each interior cell is entered at height in[i] and left at out[i].
struct Route {
    PadId from = 0;
    PadId to = 0;
    std::optional<std::uint32_t> wire;  // absent on the variable chain
    std::vector<std::pair<int, int>> corners;
    std::vector<Cell> cells;
    std::vector<int> in;
    std::vector<int> out;
};

Route make_route(const Track& track, PadId from, PadId to, std::vector<std::pair<int, int>> corners,
                 std::optional<std::uint32_t> wire, int ground) {
    Route r;
    r.from = from;
    r.to = to;
    r.wire = wire;
    r.corners = std::move(corners);
    r.cells.push_back({r.corners.front().first, r.corners.front().second});
    for (std::size_t i = 1; i < r.corners.size(); ++i) {
        const Cell target{r.corners[i].first, r.corners[i].second};
        Cell c = r.cells.back();
        if (c.x != target.x && c.y != target.y) throw LayoutError("route corner is not axis aligned");
        while (c != target) {
            c.x += (target.x > c.x) - (target.x < c.x);
            c.y += (target.y > c.y) - (target.y < c.y);
            r.cells.push_back(c);
        }
    }
    const std::size_t n = r.cells.size();
    if (n < 2) throw LayoutError("route between pads " + std::to_string(from) + " and " + std::to_string(to) + " is empty");
    r.in.assign(n, ground);
    r.out.assign(n, ground);
    // Climb from ground to each endpoint's altitude over the cells next to it.
    const int z_from = track.pad(from).position.z;
    const int z_to = track.pad(to).position.z;
    const auto climb = [&](int z_end, bool at_end) {
        const int d = std::abs(z_end - ground);
        if (static_cast<std::size_t>(d) + 2 > n) throw LayoutError("route too short to climb");
        const int s = z_end > ground ? 1 : -1;
        for (int j = 0; j < d; ++j) {
            // j-th cell away from the endpoint, entered/left toward it.
            const std::size_t i = at_end ? n - 2 - j : 1 + j;
            const int near = z_end - s * j;
            const int far = near - s;
            if (at_end) {
                r.in[i] = far;
                r.out[i] = near;
            } else {
                r.in[i] = near;
                r.out[i] = far;
            }
        }
    };
    climb(z_from, false);
    climb(z_to, true);
    r.in.front() = r.out.front() = z_from;
    r.in.back() = r.out.back() = z_to;
    return r;
}

bool flat_at(const Route& r, std::size_t i, int z) { return r.in[i] == z && r.out[i] == z; }

void raise_over(Route& r, std::size_t i, int ground) {
    const int top = ground + kCrossoverLift;
    if (i < 3 || i + 3 >= r.cells.size()) throw LayoutError("crossover too close to a route end");
    for (std::size_t j = i - 2; j <= i + 2; ++j) {
        if (!flat_at(r, j, ground)) throw LayoutError("crossover overlaps a climb");
    }
    for (int k = 0; k < kCrossoverLift; ++k) {
        r.in[i - kCrossoverLift + k] = ground + k;
        r.out[i - kCrossoverLift + k] = ground + k + 1;
        r.in[i + 1 + k] = top - k;
        r.out[i + 1 + k] = top - k - 1;
    }
    r.in[i] = r.out[i] = top;
}

class Grid {
public:
    void put(Block b) {
        auto [it, inserted] = blocks_.emplace(b.position, b);
        if (!inserted) {
            throw LayoutError("two blocks at (" + std::to_string(b.position.x) + ", " +
                              std::to_string(b.position.y) + ", " + std::to_string(b.position.z) + ")");
        }
    }
    bool has(Vec3 p) const { return blocks_.contains(p); }
    std::vector<Block> take() const {
        std::vector<Block> out;
        out.reserve(blocks_.size());
        for (const auto& [p, b] : blocks_) out.push_back(b);
        return out;
    }

private:
    std::map<Vec3, Block> blocks_;
};

void emit(Grid& grid, const Route& r) {
    for (std::size_t i = 1; i + 1 < r.cells.size(); ++i) {
        const Cell c = r.cells[i];
        const Orientation in_dir = orientation_of(r.cells[i - 1], c);
        const Orientation out_dir = orientation_of(c, r.cells[i + 1]);
        Block b;
        if (r.in[i] == r.out[i]) {
            b.position = {c.x, c.y, r.in[i]};
            b.type = in_dir == out_dir ? BlockType::road_straight : BlockType::road_curve;
            b.orientation = out_dir;
        } else {
            if (in_dir != out_dir) throw LayoutError("ramp on a corner");
            if (std::abs(r.in[i] - r.out[i]) != 1) throw LayoutError("ramp steeper than one block");
            b.position = {c.x, c.y, std::min(r.in[i], r.out[i])};
            b.type = BlockType::ramp;
            b.orientation = r.out[i] > r.in[i] ? out_dir : opposite(out_dir);
        }
        grid.put(b);
    }
}

BlockType block_type_of(PadKind kind) {
    switch (kind) {
        case PadKind::start: return BlockType::start;
        case PadKind::finish: return BlockType::finish;
        case PadKind::platform:
        case PadKind::landing: return BlockType::platform;
        case PadKind::checkpoint_touch: return BlockType::checkpoint_aerial;
        case PadKind::road: return BlockType::road_straight;
    }
    return BlockType::road_straight;
}

}  // namespace

Track layout_comb(const Track& track) {
    if (!track.meta()) throw LayoutError("comb layout needs a compiled track (no reduction metadata)");
    const auto& meta = *track.meta();
    const auto n = static_cast<std::uint32_t>(meta.variables.size());
    const auto m = static_cast<std::uint32_t>(meta.clauses.size());
    const CombSites sites(n, m);
    const auto plan = [&](PadId p) {
        const Vec3 v = track.pad(p).position;
        return std::pair<int, int>{v.x, v.y};
    };

    std::vector<Route> routes;
    PadId prev = track.start();
    for (const auto& v : meta.variables) {
        routes.push_back(make_route(track, prev, v.entry, {plan(prev), plan(v.entry)}, std::nullopt, CombSites::chain_z));
        prev = v.merge;
    }
    routes.push_back(make_route(track, prev, track.finish(), {plan(prev), plan(track.finish())}, std::nullopt,
                                CombSites::chain_z));

    std::uint32_t wire = 0;
    const auto add_wire = [&](PadId from, PadId to) {
        const auto [xs, ys] = plan(from);
        const auto [xd, yd] = plan(to);
        const int lane = sites.lane_y(wire);
        routes.push_back(make_route(track, from, to, {{xs, ys}, {xs, lane}, {xd, lane}, {xd, yd}}, wire,
                                    CombSites::ground_z));
        ++wire;
    };
    for (Var v = 1; v <= n; ++v) {
        for (bool value : {true, false}) {
            const Literal lit{v, value ? Polarity::positive : Polarity::negative};
            const auto& site = meta.variables[v - 1];
            PadId cur = site.landing(value);
            for (const auto& occ : meta.occurrences_of(lit)) {
                const auto& slot = meta.clauses.at(occ.clause).slots.at(occ.slot);
                add_wire(cur, slot.entry);
                cur = slot.exit;
            }
            add_wire(cur, site.end(value));
        }
    }

    // Cells shared by two routes are crossings; the later wire goes over.
    std::map<Cell, std::vector<std::pair<std::size_t, std::size_t>>> users;
    for (std::size_t r = 0; r < routes.size(); ++r) {
        for (std::size_t i = 1; i + 1 < routes[r].cells.size(); ++i) users[routes[r].cells[i]].emplace_back(r, i);
    }
    std::vector<std::pair<Vec3, Orientation>> bridges;
    for (const auto& [cell, list] : users) {
        if (list.size() == 1) continue;
        if (list.size() > 2) throw LayoutError("more than two wires share a cell");
        const auto& under = routes[list[0].first];
        auto& over = routes[list[1].first];
        if (!under.wire || !over.wire) throw LayoutError("a wire meets the variable chain");
        const std::size_t i = list[1].second;
        const std::size_t j = list[0].second;
        const Orientation dir = orientation_of(over.cells[i - 1], over.cells[i]);
        if (dir != orientation_of(over.cells[i], over.cells[i + 1]) ||
            orientation_of(under.cells[j - 1], under.cells[j]) != orientation_of(under.cells[j], under.cells[j + 1]) ||
            (step_of(dir).x == 0) == (step_of(orientation_of(under.cells[j - 1], under.cells[j])).x == 0)) {
            throw LayoutError("wires meet somewhere other than a straight crossing");
        }
        if (!flat_at(under, j, CombSites::ground_z)) throw LayoutError("crossing over a climb");
        raise_over(over, i, CombSites::ground_z);
        bridges.emplace_back(Vec3{cell.x, cell.y, CombSites::ground_z + kCrossoverLift}, dir);
    }

    Grid grid;
    for (const auto& r : routes) emit(grid, r);
    for (const auto& [pos, dir] : bridges) {
        const Vec3 side = step_of(dir).x != 0 ? Vec3{0, 1, 0} : Vec3{1, 0, 0};
        grid.put({pos + side, BlockType::barrier, dir});
        grid.put({pos - side, BlockType::barrier, dir});
    }
    for (const auto& p : track.pads()) {
        if (grid.has(p.position)) continue;
        Orientation o = Orientation::N;
        if (p.kind == PadKind::start || p.kind == PadKind::finish) o = Orientation::E;
        grid.put({p.position, block_type_of(p.kind), o});
    }

    Layout layout;
    layout.blocks = grid.take();
    for (const auto& l : track.links()) {
        if (!l.two_way()) layout.jumps.push_back({track.pad(l.from).position, track.pad(l.to).position});
    }
    std::sort(layout.jumps.begin(), layout.jumps.end(),
              [](const Jump& a, const Jump& b) { return std::tie(a.from, a.to) < std::tie(b.from, b.to); });
    for (const auto& r : routes) {
        if (r.wire) layout.lanes.push_back({*r.wire, r.corners});
    }
    try {
        return track.with_layout(std::move(layout));
    } catch (const TrackError& e) {
        throw LayoutError(std::string("comb layout is inconsistent with the track: ") + e.what());
    }
}

std::size_t crossing_count(const Track& track) {
    if (!track.layout()) throw LayoutError("track has no blocks; run a layout first");
    std::map<std::pair<int, int>, int> drivable;
    for (const auto& b : track.layout()->blocks) {
        if (is_drivable(b.type)) ++drivable[{b.position.x, b.position.y}];
    }
    return static_cast<std::size_t>(
        std::count_if(drivable.begin(), drivable.end(), [](const auto& e) { return e.second > 1; }));
}

std::optional<int> side_height(const Block& block, Orientation side) {
    if (!is_drivable(block.type)) return std::nullopt;
    if (block.type != BlockType::ramp) return block.position.z;
    if (side == block.orientation) return block.position.z + 1;
    if (side == opposite(block.orientation)) return block.position.z;
    return std::nullopt;
}

namespace {

class BlockIndex {
public:
    explicit BlockIndex(const Layout& layout) : layout_(layout) {
        for (std::size_t i = 0; i < layout.blocks.size(); ++i) at_.emplace(layout.blocks[i].position, i);
    }
    std::optional<std::size_t> find(Vec3 p) const {
        auto it = at_.find(p);
        if (it == at_.end()) return std::nullopt;
        return it->second;
    }
    std::vector<std::size_t> neighbors(std::size_t index) const {
        std::vector<std::size_t> out;
        const Block& b = layout_.blocks.at(index);
        for (Orientation d : {Orientation::N, Orientation::E, Orientation::S, Orientation::W}) {
            const auto h = side_height(b, d);
            if (!h) continue;
            const Vec3 step = step_of(d);
            for (int z : {*h - 1, *h}) {
                auto nb = find({b.position.x + step.x, b.position.y + step.y, z});
                if (nb && side_height(layout_.blocks[*nb], opposite(d)) == h) out.push_back(*nb);
            }
        }
        return out;
    }

private:
    const Layout& layout_;
    std::unordered_map<Vec3, std::size_t, Vec3Hash> at_;
};

}  // namespace

std::vector<std::size_t> block_neighbors(const Layout& layout, std::size_t index) {
    return BlockIndex(layout).neighbors(index);
}

std::vector<std::vector<PadId>> block_pad_graph(const Track& track) {
    if (!track.layout()) throw LayoutError("track has no blocks; run a layout first");
    const Layout& layout = *track.layout();
    const BlockIndex index(layout);
    std::unordered_map<std::size_t, PadId> pad_of_block;
    std::unordered_map<Vec3, PadId, Vec3Hash> pad_at;
    for (const auto& p : track.pads()) {
        auto b = index.find(p.position);
        if (!b) throw LayoutError("pad " + std::to_string(p.id) + " has no block");
        pad_of_block.emplace(*b, p.id);
        pad_at.emplace(p.position, p.id);
    }

    std::vector<std::vector<PadId>> adj(track.pads().size());
    std::vector<std::size_t> mark(layout.blocks.size(), SIZE_MAX);
    for (const auto& p : track.pads()) {
        const std::size_t origin = *index.find(p.position);
        std::vector<std::size_t> stack{origin};
        mark[origin] = p.id;
        while (!stack.empty()) {
            const std::size_t cur = stack.back();
            stack.pop_back();
            for (std::size_t nb : index.neighbors(cur)) {
                if (mark[nb] == p.id) continue;
                mark[nb] = p.id;
                if (auto it = pad_of_block.find(nb); it != pad_of_block.end()) {
                    adj[p.id].push_back(it->second);
                } else {
                    stack.push_back(nb);
                }
            }
        }
    }
    for (const auto& j : layout.jumps) {
        auto from = pad_at.find(j.from);
        auto to = pad_at.find(j.to);
        if (from == pad_at.end() || to == pad_at.end()) throw LayoutError("jump does not connect two pads");
        adj[from->second].push_back(to->second);
    }
    for (auto& a : adj) {
        std::sort(a.begin(), a.end());
        a.erase(std::unique(a.begin(), a.end()), a.end());
    }
    return adj;
}

}  // namespace sat2track
