#include "sat2track/track.hpp"

#include <algorithm>
#include <array>
#include <cstdlib>
#include <bit>
#include <string>
#include <unordered_set>

#include "sat2track/errors.hpp"

namespace sat2track {

namespace {

template <typename Enum, std::size_t N>
Enum parse_enum(std::string_view text, const std::array<std::string_view, N>& names,
                const char* what) {
    for (std::size_t i = 0; i < N; ++i) {
        if (names[i] == text) return static_cast<Enum>(i);
    }
    throw FormatError(std::string("unknown ") + what + " '" + std::string(text) + "'");
}

constexpr std::array<std::string_view, 6> kPadKinds = {
    "start", "finish", "road", "platform", "checkpoint_touch", "landing"};
constexpr std::array<std::string_view, 2> kDirectionality = {"two_way", "one_way"};
constexpr std::array<std::string_view, 4> kCauses = {"road", "drop", "jump", "accelerator"};
constexpr std::array<std::string_view, 3> kPolicies = {"disabled", "fixed", "any-touch"};
constexpr std::array<std::string_view, 9> kBlockTypes = {
    "road_straight", "road_curve", "platform", "ramp", "checkpoint_aerial",
    "start",         "finish",     "barrier",  "accelerator"};
constexpr std::array<std::string_view, 4> kOrientations = {"N", "E", "S", "W"};

std::string pad_str(PadId id) { return "pad " + std::to_string(id); }
std::string link_str(LinkId id) { return "link " + std::to_string(id); }

}  // namespace

std::string_view to_string(PadKind kind) { return kPadKinds[static_cast<std::size_t>(kind)]; }
std::string_view to_string(Directionality d) { return kDirectionality[static_cast<std::size_t>(d)]; }
std::string_view to_string(LinkCause cause) { return kCauses[static_cast<std::size_t>(cause)]; }
std::string_view to_string(RespawnPolicy p) { return kPolicies[static_cast<std::size_t>(p)]; }
std::string_view to_string(BlockType t) { return kBlockTypes[static_cast<std::size_t>(t)]; }
std::string_view to_string(Orientation o) { return kOrientations[static_cast<std::size_t>(o)]; }

PadKind parse_pad_kind(std::string_view t) { return parse_enum<PadKind>(t, kPadKinds, "pad kind"); }
Directionality parse_directionality(std::string_view t) {
    return parse_enum<Directionality>(t, kDirectionality, "link directionality");
}
LinkCause parse_link_cause(std::string_view t) { return parse_enum<LinkCause>(t, kCauses, "link cause"); }
RespawnPolicy parse_respawn_policy(std::string_view t) {
    if (t == "any_touch") return RespawnPolicy::any_touch;
    return parse_enum<RespawnPolicy>(t, kPolicies, "respawn policy");
}
BlockType parse_block_type(std::string_view t) { return parse_enum<BlockType>(t, kBlockTypes, "block type"); }
Orientation parse_orientation(std::string_view t) {
    return parse_enum<Orientation>(t, kOrientations, "orientation");
}

bool is_drivable(BlockType type) { return type != BlockType::barrier; }

Vec3 step_of(Orientation o) {
    switch (o) {
        case Orientation::N: return {0, 1, 0};
        case Orientation::E: return {1, 0, 0};
        case Orientation::S: return {0, -1, 0};
        case Orientation::W: return {-1, 0, 0};
    }
    return {};
}

Formula ReductionMeta::formula() const {
    Formula f;
    f.num_variables = static_cast<Var>(variables.size());
    f.clauses.reserve(clauses.size());
    for (const auto& c : clauses) {
        f.clauses.push_back({c.slots[0].literal, c.slots[1].literal, c.slots[2].literal});
    }
    return f;
}

// ---------------------------------------------------------------------------

Track::Track(std::vector<Pad> pads, std::vector<Link> links, PadId start, PadId finish,
             std::optional<ReductionMeta> meta, std::optional<Layout> layout)
    : pads_(std::move(pads)),
      links_(std::move(links)),
      start_(start),
      finish_(finish),
      meta_(std::move(meta)),
      layout_(std::move(layout)) {
    checkpoint_count_ = validate();

    const auto n = pads_.size();
    move_offsets_.assign(n + 1, 0);
    for (const auto& l : links_) {
        ++move_offsets_[l.from + 1];
        if (l.two_way()) ++move_offsets_[l.to + 1];
    }
    for (std::size_t i = 0; i < n; ++i) move_offsets_[i + 1] += move_offsets_[i];
    moves_.resize(move_offsets_[n]);
    std::vector<std::uint32_t> fill(move_offsets_.begin(), move_offsets_.end() - 1);
    for (const auto& l : links_) {
        moves_[fill[l.from]++] = {l.id, Direction::forward, l.to};
        if (l.two_way()) moves_[fill[l.to]++] = {l.id, Direction::reverse, l.from};
    }

    touch_offsets_.assign(checkpoint_count_ + 1, 0);
    for (const auto& p : pads_) {
        if (p.checkpoint) ++touch_offsets_[*p.checkpoint + 1];
    }
    for (std::uint32_t i = 0; i < checkpoint_count_; ++i) touch_offsets_[i + 1] += touch_offsets_[i];
    touches_.resize(touch_offsets_[checkpoint_count_]);
    fill.assign(touch_offsets_.begin(), touch_offsets_.end() - 1);
    for (const auto& p : pads_) {
        if (p.checkpoint) touches_[fill[*p.checkpoint]++] = p.id;
    }

    if (meta_) validate_meta();
    if (layout_) validate_layout();
}

std::uint32_t Track::validate() const {
    for (std::size_t i = 0; i < pads_.size(); ++i) {
        if (pads_[i].id != i) throw TrackError(pad_str(pads_[i].id) + " out of sequence");
    }
    for (std::size_t i = 0; i < links_.size(); ++i) {
        if (links_[i].id != i) throw TrackError(link_str(links_[i].id) + " out of sequence");
    }
    if (start_ >= pads_.size() || pads_[start_].kind != PadKind::start) {
        throw TrackError("start must reference a pad of kind start");
    }
    if (finish_ >= pads_.size() || pads_[finish_].kind != PadKind::finish) {
        throw TrackError("finish must reference a pad of kind finish");
    }

    std::size_t starts = 0;
    std::size_t finishes = 0;
    std::vector<bool> seen_checkpoint;
    for (const auto& p : pads_) {
        starts += p.kind == PadKind::start;
        finishes += p.kind == PadKind::finish;
        const bool touch = p.kind == PadKind::checkpoint_touch;
        if (touch != p.checkpoint.has_value()) {
            throw TrackError(pad_str(p.id) + ": checkpoint id present iff kind is checkpoint_touch");
        }
        if (p.checkpoint) {
            if (*p.checkpoint >= pads_.size()) throw TrackError(pad_str(p.id) + ": checkpoint id too large");
            if (*p.checkpoint >= seen_checkpoint.size()) seen_checkpoint.resize(*p.checkpoint + 1);
            seen_checkpoint[*p.checkpoint] = true;
        }
    }
    if (starts != 1 || finishes != 1) throw TrackError("track needs exactly one start and one finish pad");
    if (std::find(seen_checkpoint.begin(), seen_checkpoint.end(), false) != seen_checkpoint.end()) {
        throw TrackError("checkpoint ids are not contiguous from 0");
    }

    std::vector<std::vector<LinkId>> out(pads_.size());
    for (const auto& l : links_) {
        if (l.from >= pads_.size() || l.to >= pads_.size()) {
            throw TrackError(link_str(l.id) + " references a missing pad");
        }
        out[l.from].push_back(l.id);
    }
    for (const auto& l : links_) {
        const int zf = pads_[l.from].position.z;
        const int zt = pads_[l.to].position.z;
        if (l.two_way()) {
            if (l.cause != LinkCause::road && l.cause != LinkCause::accelerator) {
                throw TrackError(link_str(l.id) + ": two-way links must be road or accelerator");
            }
            if (std::abs(zf - zt) > 1) throw TrackError(link_str(l.id) + ": slope steeper than one block");
            continue;
        }
        if (zf > zt) continue;
        // Aerial checkpoint: a jump may pass through a touch pad that is not
        // below its source, provided everything the touch pad leads to lies
        // strictly below the source.
        const Pad& target = pads_[l.to];
        bool aerial = l.cause == LinkCause::jump && target.kind == PadKind::checkpoint_touch &&
                      !out[l.to].empty();
        if (aerial) {
            for (LinkId o : out[l.to]) {
                if (links_[o].two_way() || pads_[links_[o].to].position.z >= zf) aerial = false;
            }
        }
        if (!aerial) throw TrackError(link_str(l.id) + ": one-way link does not descend");
    }

    // Undirected sanity: finish must be connected to start.
    std::vector<std::vector<PadId>> adj(pads_.size());
    for (const auto& l : links_) {
        adj[l.from].push_back(l.to);
        adj[l.to].push_back(l.from);
    }
    std::vector<bool> seen(pads_.size(), false);
    std::vector<PadId> stack{start_};
    seen[start_] = true;
    while (!stack.empty()) {
        PadId p = stack.back();
        stack.pop_back();
        for (PadId q : adj[p]) {
            if (!seen[q]) {
                seen[q] = true;
                stack.push_back(q);
            }
        }
    }
    if (!seen[finish_]) throw TrackError("finish is not connected to start");
    return static_cast<std::uint32_t>(seen_checkpoint.size());
}

void Track::validate_meta() const {
    const auto& m = *meta_;
    auto check = [&](PadId p, const char* what) {
        if (p >= pads_.size()) throw TrackError(std::string("meta: ") + what + " references a missing pad");
    };
    for (const auto& v : m.variables) {
        check(v.entry, "variable entry");
        check(v.true_landing, "true landing");
        check(v.false_landing, "false landing");
        check(v.true_end, "true branch end");
        check(v.false_end, "false branch end");
        check(v.merge, "merge");
    }
    const auto n = static_cast<Var>(m.variables.size());
    std::vector<std::vector<bool>> slot_seen(m.clauses.size(), std::vector<bool>(3, false));
    for (std::size_t c = 0; c < m.clauses.size(); ++c) {
        const auto& site = m.clauses[c];
        if (site.checkpoint >= checkpoint_count_) throw TrackError("meta: clause checkpoint out of range");
        for (const auto& s : site.slots) {
            check(s.entry, "slot entry");
            check(s.touch, "slot touch");
            check(s.exit, "slot exit");
            if (pads_[s.touch].checkpoint != site.checkpoint) {
                throw TrackError("meta: slot touch pad does not carry the clause checkpoint");
            }
            if (s.literal.var < 1 || s.literal.var > n) throw TrackError("meta: slot literal out of range");
        }
    }
    if (m.occurrences.size() != 2 * static_cast<std::size_t>(n)) {
        throw TrackError("meta: occurrence table size mismatch");
    }
    for (std::size_t li = 0; li < m.occurrences.size(); ++li) {
        const Literal lit{static_cast<Var>(li / 2 + 1), li % 2 ? Polarity::negative : Polarity::positive};
        for (const auto& o : m.occurrences[li]) {
            if (o.clause >= m.clauses.size() || o.slot > 2) throw TrackError("meta: occurrence out of range");
            if (slot_seen[o.clause][o.slot]) throw TrackError("meta: clause slot listed twice");
            if (m.clauses[o.clause].slots[o.slot].literal != lit) {
                throw TrackError("meta: occurrence literal does not match its slot");
            }
            slot_seen[o.clause][o.slot] = true;
        }
    }
    for (const auto& row : slot_seen) {
        if (std::find(row.begin(), row.end(), false) != row.end()) {
            throw TrackError("meta: clause slot without occurrence");
        }
    }
}

void Track::validate_layout() const {
    std::unordered_set<Vec3, Vec3Hash> occupied;
    occupied.reserve(layout_->blocks.size());
    for (const auto& b : layout_->blocks) {
        if (!occupied.insert(b.position).second) throw TrackError("layout: two blocks share a position");
    }
    std::unordered_set<Vec3, Vec3Hash> pad_positions;
    for (const auto& p : pads_) {
        if (!occupied.contains(p.position)) throw TrackError(pad_str(p.id) + ": no block at its position");
        if (!pad_positions.insert(p.position).second) throw TrackError(pad_str(p.id) + ": shares a block");
    }
}

std::span<const Move> Track::moves(PadId pad) const {
    return {moves_.data() + move_offsets_.at(pad), moves_.data() + move_offsets_.at(pad + 1)};
}

std::span<const PadId> Track::touch_pads(CheckpointId checkpoint) const {
    if (checkpoint >= checkpoint_count_) return {};
    return {touches_.data() + touch_offsets_[checkpoint], touches_.data() + touch_offsets_[checkpoint + 1]};
}

Track Track::with_layout(Layout layout) const {
    return Track(pads_, links_, start_, finish_, meta_, std::move(layout));
}

Track Track::without_layout() const { return Track(pads_, links_, start_, finish_, meta_); }

// ---------------------------------------------------------------------------

PadId TrackBuilder::add_pad(Vec3 position, PadKind kind, std::optional<CheckpointId> checkpoint) {
    const auto id = static_cast<PadId>(pads_.size());
    pads_.push_back({id, position, kind, checkpoint});
    return id;
}

LinkId TrackBuilder::add_link(PadId from, PadId to, Directionality directionality, LinkCause cause) {
    const auto id = static_cast<LinkId>(links_.size());
    links_.push_back({id, from, to, directionality, cause});
    return id;
}

Track TrackBuilder::build(PadId start, PadId finish, std::optional<ReductionMeta> meta) const {
    return Track(pads_, links_, start, finish, std::move(meta));
}

// ---------------------------------------------------------------------------

bool CheckpointSet::insert(CheckpointId id) {
    auto w = id / 64;
    if (w >= words_.size()) words_.resize(w + 1, 0);
    const std::uint64_t bit = std::uint64_t{1} << (id % 64);
    if (words_[w] & bit) return false;
    words_[w] |= bit;
    ++size_;
    return true;
}

std::vector<CheckpointId> CheckpointSet::to_vector() const {
    std::vector<CheckpointId> out;
    out.reserve(size_);
    for (std::size_t w = 0; w < words_.size(); ++w) {
        std::uint64_t bits = words_[w];
        while (bits) {
            out.push_back(static_cast<CheckpointId>(w * 64 + std::countr_zero(bits)));
            bits &= bits - 1;
        }
    }
    return out;
}

State initial_state(const Track& track) {
    return State{track.start(), CheckpointSet(track.checkpoint_count()), std::nullopt};
}

std::vector<PadId> respawn_targets(const Track& track, const State& state, RespawnPolicy policy) {
    if (policy == RespawnPolicy::disabled || !state.last_touch) return {};
    if (policy == RespawnPolicy::fixed) return {*state.last_touch};
    auto cp = track.pad(*state.last_touch).checkpoint;
    auto pads = track.touch_pads(*cp);
    return {pads.begin(), pads.end()};
}

std::vector<Action> legal_actions(const Track& track, const State& state, RespawnPolicy policy) {
    std::vector<Action> out;
    for (const Move& m : track.moves(state.pad)) out.push_back(Action::traverse(m.link, m.direction));
    if (policy == RespawnPolicy::fixed && state.last_touch) {
        out.push_back(Action::respawn());
    } else if (policy == RespawnPolicy::any_touch) {
        for (PadId t : respawn_targets(track, state, policy)) out.push_back(Action::respawn(t));
    }
    return out;
}

bool advance(const Track& track, State& state, const Action& action, RespawnPolicy policy) {
    if (action.kind == Action::Kind::respawn) {
        if (policy == RespawnPolicy::disabled || !state.last_touch) return false;
        PadId target = action.target.value_or(*state.last_touch);
        if (target != *state.last_touch) {
            if (policy != RespawnPolicy::any_touch || target >= track.pads().size() ||
                track.pad(target).checkpoint != track.pad(*state.last_touch).checkpoint) {
                return false;
            }
        }
        state.pad = target;
        return true;
    }

    if (action.link >= track.links().size()) return false;
    const Link& l = track.link(action.link);
    PadId next = 0;
    if (action.direction == Direction::forward) {
        if (l.from != state.pad) return false;
        next = l.to;
    } else {
        if (!l.two_way() || l.to != state.pad) return false;
        next = l.from;
    }
    state.pad = next;
    if (auto cp = track.pad(next).checkpoint) {
        state.collected.insert(*cp);
        state.last_touch = next;
    }
    return true;
}

std::optional<State> step(const Track& track, const State& state, const Action& action,
                          RespawnPolicy policy) {
    State next = state;
    if (!advance(track, next, action, policy)) return std::nullopt;
    return next;
}

bool is_complete(const Track& track, const State& state) {
    return state.pad == track.finish() && state.collected.size() == track.checkpoint_count();
}

}  // namespace sat2track
