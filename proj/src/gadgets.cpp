#include "sat2track/gadgets.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>

#include "sat2track/errors.hpp"

namespace sat2track {

std::uint32_t GadgetInstance::port(std::string_view name) const {
    for (const auto& p : ports) {
        if (p.name == name) return p.pad;
    }
    throw GadgetError("gadget has no port '" + std::string(name) + "'");
}

PadId EmbeddedGadget::port(std::string_view name) const {
    for (const auto& [n, pad] : ports) {
        if (n == name) return pad;
    }
    throw GadgetError("gadget has no port '" + std::string(name) + "'");
}

std::vector<bool> reachable(const GadgetInstance& gadget, std::uint32_t from) {
    std::vector<std::vector<std::uint32_t>> adj(gadget.pads.size());
    for (const auto& l : gadget.links) {
        adj[l.from].push_back(l.to);
        if (l.directionality == Directionality::two_way) adj[l.to].push_back(l.from);
    }
    std::vector<bool> seen(gadget.pads.size(), false);
    std::vector<std::uint32_t> stack{from};
    seen.at(from) = true;
    while (!stack.empty()) {
        auto p = stack.back();
        stack.pop_back();
        for (auto q : adj[p]) {
            if (!seen[q]) {
                seen[q] = true;
                stack.push_back(q);
            }
        }
    }
    return seen;
}

GadgetInstance variable_gadget(Vec3 base) {
    constexpr int S = kLanePitch;
    GadgetInstance g;
    g.kind = GadgetKind::variable;
    g.pads = {
        {base + Vec3{S, 0, kJumpHeight}, PadKind::platform, std::nullopt},
        {base + Vec3{0, 3, 0}, PadKind::landing, std::nullopt},
        {base + Vec3{2 * S, 3, 0}, PadKind::landing, std::nullopt},
    };
    g.links = {
        {0, 1, Directionality::one_way, LinkCause::jump},
        {0, 2, Directionality::one_way, LinkCause::jump},
    };
    g.ports = {{"entry", 0}, {"true_exit", 1}, {"false_exit", 2}};
    return g;
}

GadgetInstance clause_gadget(Vec3 base, Pairing pairing) {
    std::array<bool, 3> hit{};
    for (auto p : pairing) {
        if (p > 2 || hit[p]) throw GadgetError("clause pairing is not a permutation of {0,1,2}");
        hit[p] = true;
    }
    constexpr int S = kLanePitch;
    GadgetInstance g;
    g.kind = GadgetKind::clause;
    for (int i = 0; i < 3; ++i) {
        g.pads.push_back({base + Vec3{2 * i * S, 0, kJumpHeight}, PadKind::platform, std::nullopt});
    }
    for (int i = 0; i < 3; ++i) {
        g.pads.push_back({base + Vec3{2 * i * S, 2, kJumpHeight - 1}, PadKind::checkpoint_touch, 0u});
    }
    for (int k = 0; k < 3; ++k) {
        g.pads.push_back({base + Vec3{(2 * k + 1) * S, 0, 0}, PadKind::landing, std::nullopt});
    }
    for (std::uint32_t i = 0; i < 3; ++i) {
        g.links.push_back({i, 3 + i, Directionality::one_way, LinkCause::jump});
        g.links.push_back({3 + i, 6u + pairing[i], Directionality::one_way, LinkCause::drop});
    }
    for (std::uint32_t i = 0; i < 3; ++i) g.ports.push_back({"entry_" + std::to_string(i), i});
    for (std::uint32_t k = 0; k < 3; ++k) g.ports.push_back({"exit_" + std::to_string(k), 6 + k});
    return g;
}

GadgetInstance crossover_gadget(Vec3 base) {
    const Vec3 hi = base + Vec3{0, 0, kCrossoverLift};
    GadgetInstance g;
    g.kind = GadgetKind::crossover;
    g.pads = {
        {hi + Vec3{-1, 0, 0}, PadKind::road, std::nullopt},
        {hi, PadKind::road, std::nullopt},
        {hi + Vec3{1, 0, 0}, PadKind::road, std::nullopt},
        {base + Vec3{0, -1, 0}, PadKind::road, std::nullopt},
        {base, PadKind::road, std::nullopt},
        {base + Vec3{0, 1, 0}, PadKind::road, std::nullopt},
    };
    g.links = {
        {0, 1, Directionality::two_way, LinkCause::road},
        {1, 2, Directionality::two_way, LinkCause::road},
        {3, 4, Directionality::two_way, LinkCause::road},
        {4, 5, Directionality::two_way, LinkCause::road},
    };
    g.ports = {{"over_in", 0}, {"over_out", 2}, {"under_in", 3}, {"under_out", 5}};
    return g;
}

GadgetInstance broken_accelerator_gadget(Vec3 base, int accelerators) {
    if (accelerators < 2) throw GadgetError("broken accelerator gadget needs at least two accelerators per branch");
    GadgetInstance g;
    g.kind = GadgetKind::broken_accelerator;
    g.pads.push_back({base, PadKind::platform, std::nullopt});
    std::array<std::uint32_t, 2> ends{};
    for (int branch = 0; branch < 2; ++branch) {
        const int side = branch == 0 ? 1 : -1;
        std::uint32_t prev = 0;
        for (int i = 1; i <= accelerators; ++i) {
            const auto id = static_cast<std::uint32_t>(g.pads.size());
            g.pads.push_back({base + Vec3{i, side, 0}, PadKind::road, std::nullopt});
            g.links.push_back({prev, id, Directionality::two_way, LinkCause::accelerator});
            prev = id;
        }
        ends[branch] = prev;
    }
    g.ports = {{"entry", 0}, {"true_exit", ends[0]}, {"false_exit", ends[1]}};
    return g;
}

GadgetInstance wire(Vec3 from, Vec3 to, std::span<const Vec3> waypoints) {
    for (std::size_t i = 1; i < waypoints.size(); ++i) {
        const Vec3 d = waypoints[i] - waypoints[i - 1];
        if (std::abs(d.x) + std::abs(d.y) != 1 || std::abs(d.z) > 1) {
            throw GadgetError("waypoint discontinuity at waypoint " + std::to_string(i));
        }
    }
    std::vector<Vec3> points;
    points.reserve(waypoints.size() + 2);
    points.push_back(from);
    points.insert(points.end(), waypoints.begin(), waypoints.end());
    points.push_back(to);
    for (std::size_t i = 1; i < points.size(); ++i) {
        if (std::abs(points[i].z - points[i - 1].z) > 1) {
            throw GadgetError("wire hop " + std::to_string(i - 1) + " is steeper than one block");
        }
    }

    GadgetInstance g;
    g.kind = GadgetKind::wire;
    for (const auto& p : points) g.pads.push_back({p, PadKind::road, std::nullopt});
    for (std::uint32_t i = 1; i < points.size(); ++i) {
        g.links.push_back({i - 1, i, Directionality::two_way, LinkCause::road});
    }
    g.ports = {{"from", 0}, {"to", static_cast<std::uint32_t>(points.size() - 1)}};
    return g;
}

EmbeddedGadget embed(TrackBuilder& builder, const GadgetInstance& gadget,
                     std::span<const std::pair<std::string, PadId>> bindings) {
    EmbeddedGadget out;
    std::vector<std::optional<PadId>> bound(gadget.pads.size());
    for (const auto& [name, pad] : bindings) {
        if (pad >= builder.pad_count()) throw GadgetError("binding for '" + name + "' references a missing pad");
        bound[gadget.port(name)] = pad;
    }
    std::map<CheckpointId, CheckpointId> checkpoints;
    for (const auto& p : gadget.pads) {
        if (p.checkpoint && !checkpoints.contains(*p.checkpoint)) checkpoints[*p.checkpoint] = 0;
    }
    for (auto& [local, global] : checkpoints) global = builder.new_checkpoint();

    out.pads.reserve(gadget.pads.size());
    for (std::size_t i = 0; i < gadget.pads.size(); ++i) {
        if (bound[i]) {
            out.pads.push_back(*bound[i]);
            continue;
        }
        const auto& p = gadget.pads[i];
        std::optional<CheckpointId> cp;
        if (p.checkpoint) cp = checkpoints.at(*p.checkpoint);
        out.pads.push_back(builder.add_pad(p.position, p.kind, cp));
    }
    for (const auto& l : gadget.links) {
        out.links.push_back(builder.add_link(out.pads[l.from], out.pads[l.to], l.directionality, l.cause));
    }
    for (const auto& p : gadget.ports) out.ports.emplace_back(p.name, out.pads[p.pad]);
    return out;
}

}  // namespace sat2track
