#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "sat2track/blocks.hpp"
#include "sat2track/geometry.hpp"
#include "sat2track/reduction_meta.hpp"

namespace sat2track {

enum class PadKind : std::uint8_t { start, finish, road, platform, checkpoint_touch, landing };
enum class Directionality : std::uint8_t { two_way, one_way };
enum class LinkCause : std::uint8_t { road, drop, jump, accelerator };
enum class Direction : std::uint8_t { forward, reverse };

struct Pad {
    PadId id = 0;
    Vec3 position;
    PadKind kind = PadKind::road;
    std::optional<CheckpointId> checkpoint;  // present iff kind == checkpoint_touch

    friend bool operator==(const Pad&, const Pad&) = default;
};

struct Link {
    LinkId id = 0;
    PadId from = 0;
    PadId to = 0;
    Directionality directionality = Directionality::two_way;
    LinkCause cause = LinkCause::road;

    bool two_way() const { return directionality == Directionality::two_way; }

    friend bool operator==(const Link&, const Link&) = default;
};

// A traversal available from some pad.
struct Move {
    LinkId link = 0;
    Direction direction = Direction::forward;
    PadId target = 0;
};

std::string_view to_string(PadKind kind);
std::string_view to_string(Directionality d);
std::string_view to_string(LinkCause cause);
PadKind parse_pad_kind(std::string_view text);
Directionality parse_directionality(std::string_view text);
LinkCause parse_link_cause(std::string_view text);

// Immutable pad/link graph. Pad and link ids equal their index. The
// constructor enforces every structural invariant and throws TrackError.
class Track {
public:
    Track(std::vector<Pad> pads, std::vector<Link> links, PadId start, PadId finish,
          std::optional<ReductionMeta> meta = std::nullopt,
          std::optional<Layout> layout = std::nullopt);

    const std::vector<Pad>& pads() const { return pads_; }
    const std::vector<Link>& links() const { return links_; }
    const Pad& pad(PadId id) const { return pads_.at(id); }
    const Link& link(LinkId id) const { return links_.at(id); }
    PadId start() const { return start_; }
    PadId finish() const { return finish_; }
    std::uint32_t checkpoint_count() const { return checkpoint_count_; }
    const std::optional<ReductionMeta>& meta() const { return meta_; }
    const std::optional<Layout>& layout() const { return layout_; }

    // Forward traversals of out-links and reverse traversals of two-way
    // in-links, ordered by (link id, forward before reverse).
    std::span<const Move> moves(PadId pad) const;
    // Touch pads carrying `checkpoint`, ascending.
    std::span<const PadId> touch_pads(CheckpointId checkpoint) const;

    Track with_layout(Layout layout) const;
    Track without_layout() const;

private:
    // Returns the checkpoint count.
    std::uint32_t validate() const;
    void validate_meta() const;
    void validate_layout() const;

    std::vector<Pad> pads_;
    std::vector<Link> links_;
    PadId start_;
    PadId finish_;
    std::uint32_t checkpoint_count_ = 0;
    std::optional<ReductionMeta> meta_;
    std::optional<Layout> layout_;

    std::vector<std::uint32_t> move_offsets_;
    std::vector<Move> moves_;
    std::vector<std::uint32_t> touch_offsets_;
    std::vector<PadId> touches_;
};

// Accumulates pads and links with sequential ids.
class TrackBuilder {
public:
    PadId add_pad(Vec3 position, PadKind kind, std::optional<CheckpointId> checkpoint = std::nullopt);
    LinkId add_link(PadId from, PadId to, Directionality directionality, LinkCause cause);
    CheckpointId new_checkpoint() { return next_checkpoint_++; }

    const Pad& pad(PadId id) const { return pads_.at(id); }
    std::size_t pad_count() const { return pads_.size(); }
    std::size_t link_count() const { return links_.size(); }

    Track build(PadId start, PadId finish, std::optional<ReductionMeta> meta = std::nullopt) const;

private:
    std::vector<Pad> pads_;
    std::vector<Link> links_;
    CheckpointId next_checkpoint_ = 0;
};

// Set of collected checkpoint ids with O(1) insert, lookup and size.
class CheckpointSet {
public:
    CheckpointSet() = default;
    explicit CheckpointSet(std::uint32_t capacity) : words_((capacity + 63) / 64, 0) {}

    bool contains(CheckpointId id) const {
        auto w = id / 64;
        return w < words_.size() && ((words_[w] >> (id % 64)) & 1u) != 0;
    }
    // Returns true if `id` was newly added.
    bool insert(CheckpointId id);
    std::uint32_t size() const { return size_; }
    bool empty() const { return size_ == 0; }
    std::vector<CheckpointId> to_vector() const;
    // Low 64 ids as a bit mask.
    std::uint64_t low_word() const { return words_.empty() ? 0 : words_[0]; }

    friend bool operator==(const CheckpointSet& a, const CheckpointSet& b) {
        return a.to_vector() == b.to_vector();
    }

private:
    std::vector<std::uint64_t> words_;
    std::uint32_t size_ = 0;
};

struct State {
    PadId pad = 0;
    CheckpointSet collected;
    std::optional<PadId> last_touch;

    friend bool operator==(const State&, const State&) = default;
};

State initial_state(const Track& track);

struct Action {
    enum class Kind : std::uint8_t { traverse, respawn };

    Kind kind = Kind::traverse;
    LinkId link = 0;
    Direction direction = Direction::forward;
    // Respawn destination. Absent means the last touched pad.
    std::optional<PadId> target;

    static Action traverse(LinkId link, Direction direction) {
        return {Kind::traverse, link, direction, std::nullopt};
    }
    static Action respawn(std::optional<PadId> target = std::nullopt) {
        return {Kind::respawn, 0, Direction::forward, target};
    }

    friend bool operator==(const Action&, const Action&) = default;
};

using Certificate = std::vector<Action>;

enum class RespawnPolicy : std::uint8_t { disabled, fixed, any_touch };

std::string_view to_string(RespawnPolicy policy);
RespawnPolicy parse_respawn_policy(std::string_view text);

// Traversals in moves() order, then respawns by ascending target pad. Under
// `fixed` the respawn carries no target; under `any_touch` there is one per
// pad sharing the last touched checkpoint.
std::vector<Action> legal_actions(const Track& track, const State& state, RespawnPolicy policy);

// Where a respawn may land from `state`; empty when respawning is impossible.
std::vector<PadId> respawn_targets(const Track& track, const State& state, RespawnPolicy policy);

// Applies `action` in place. Returns false (leaving `state` untouched) when
// the action is illegal.
bool advance(const Track& track, State& state, const Action& action, RespawnPolicy policy);

// Pure form of advance(); nullopt signals an illegal action.
std::optional<State> step(const Track& track, const State& state, const Action& action,
                          RespawnPolicy policy);

bool is_complete(const Track& track, const State& state);

}  // namespace sat2track
