#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "sat2track/geometry.hpp"
#include "sat2track/track.hpp"

namespace sat2track {

// Grid spacing between neighbouring gadget ports and between routing lanes.
inline constexpr int kLanePitch = 5;
// Entry platforms of variable and clause gadgets sit this far above their
// landings.
inline constexpr int kJumpHeight = 3;
// Altitude separation of the two paths in a crossover.
inline constexpr int kCrossoverLift = 2;

enum class GadgetKind : std::uint8_t { variable, clause, crossover, broken_accelerator, wire };

struct GadgetPad {
    Vec3 position;
    PadKind kind = PadKind::road;
    std::optional<CheckpointId> checkpoint;  // local to the instance
};

struct GadgetLink {
    std::uint32_t from = 0;
    std::uint32_t to = 0;
    Directionality directionality = Directionality::two_way;
    LinkCause cause = LinkCause::road;
};

struct Port {
    std::string name;
    std::uint32_t pad = 0;
};

// A self-contained subgraph with named ports. Pad indices are local.
struct GadgetInstance {
    GadgetKind kind = GadgetKind::wire;
    std::vector<GadgetPad> pads;
    std::vector<GadgetLink> links;
    std::vector<Port> ports;

    // Local pad behind `name`; throws GadgetError for unknown names.
    std::uint32_t port(std::string_view name) const;
};

// Directed reachability inside an instance (two-way links both ways).
std::vector<bool> reachable(const GadgetInstance& gadget, std::uint32_t from);

// Clause pairing: entry i is forced onto exit pairing[i].
using Pairing = std::array<std::uint8_t, 3>;
// Upper entry to lower exit, middle to middle, lower to upper.
inline constexpr Pairing kDefaultPairing = {2, 1, 0};

// High platform `entry` with one-way jumps onto `true_exit` and `false_exit`.
GadgetInstance variable_gadget(Vec3 base);

// Ports entry_0..2 and exit_0..2. Each entry jumps one-way onto its own
// aerial touch pad, which drops one-way onto exit pairing[i]. The three touch
// pads share local checkpoint 0. Throws GadgetError if `pairing` is not a
// bijection.
GadgetInstance clause_gadget(Vec3 base, Pairing pairing = kDefaultPairing);

// Two three-pad road chains, over_in..over_out lifted kCrossoverLift above
// under_in..under_out, sharing only the plan cell at `base`.
GadgetInstance crossover_gadget(Vec3 base);

// A fork whose two branches are chains of `accelerators` two-way accelerator
// links. Ports mirror the variable gadget (entry, true_exit, false_exit).
// This does not work as a variable gadget: the branches can be driven in
// reverse.
GadgetInstance broken_accelerator_gadget(Vec3 base, int accelerators = 3);

// Two-way road chain from `from` through fresh pads at `waypoints` to `to`.
// Consecutive waypoints must be one plan step apart, and every hop (including
// to and from the endpoints) may change altitude by at most one. Ports "from"
// and "to" are meant to be bound to existing pads when embedding.
GadgetInstance wire(Vec3 from, Vec3 to, std::span<const Vec3> waypoints = {});

struct EmbeddedGadget {
    std::vector<PadId> pads;    // local index -> track pad
    std::vector<LinkId> links;  // local index -> track link
    std::vector<std::pair<std::string, PadId>> ports;

    PadId port(std::string_view name) const;
};

// Copies `gadget` into `builder`. Ports listed in `bindings` reuse the given
// existing pads instead of creating new ones. Local checkpoints receive fresh
// track checkpoint ids in ascending local order.
EmbeddedGadget embed(TrackBuilder& builder, const GadgetInstance& gadget,
                     std::span<const std::pair<std::string, PadId>> bindings = {});

}  // namespace sat2track
