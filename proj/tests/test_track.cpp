#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "sat2track/compile.hpp"
#include "sat2track/errors.hpp"
#include "sat2track/gadgets.hpp"
#include "sat2track/track.hpp"

using namespace sat2track;

namespace {

Pad pad(PadId id, Vec3 p, PadKind k, std::optional<CheckpointId> cp = std::nullopt) { return {id, p, k, cp}; }
Link road(LinkId id, PadId a, PadId b) { return {id, a, b, Directionality::two_way, LinkCause::road}; }
Link drop(LinkId id, PadId a, PadId b) { return {id, a, b, Directionality::one_way, LinkCause::drop}; }

// start(0) - touch(1, cp 0) - finish(2), all two-way.
Track three_pad() {
    return Track({pad(0, {0, 0, 0}, PadKind::start), pad(1, {1, 0, 0}, PadKind::checkpoint_touch, 0),
                  pad(2, {2, 0, 0}, PadKind::finish)},
                 {road(0, 0, 1), road(1, 1, 2)}, 0, 2);
}

}  // namespace

TEST_CASE("track invariants") {
    SUBCASE("checkpoint ids must be contiguous") {
        CHECK_THROWS_AS(Track({pad(0, {0, 0, 0}, PadKind::start), pad(1, {1, 0, 0}, PadKind::checkpoint_touch, 1),
                               pad(2, {2, 0, 0}, PadKind::finish)},
                              {road(0, 0, 1), road(1, 1, 2)}, 0, 2),
                        TrackError);
    }
    SUBCASE("touch pads need a checkpoint and others must not have one") {
        CHECK_THROWS_AS(Track({pad(0, {0, 0, 0}, PadKind::start), pad(1, {1, 0, 0}, PadKind::checkpoint_touch),
                               pad(2, {2, 0, 0}, PadKind::finish)},
                              {road(0, 0, 1), road(1, 1, 2)}, 0, 2),
                        TrackError);
        CHECK_THROWS_AS(Track({pad(0, {0, 0, 0}, PadKind::start), pad(1, {1, 0, 0}, PadKind::road, 0),
                               pad(2, {2, 0, 0}, PadKind::finish)},
                              {road(0, 0, 1), road(1, 1, 2)}, 0, 2),
                        TrackError);
    }
    SUBCASE("one-way links must descend") {
        CHECK_THROWS_AS(Track({pad(0, {0, 0, 0}, PadKind::start), pad(1, {1, 0, 0}, PadKind::finish)},
                              {drop(0, 0, 1)}, 0, 1),
                        TrackError);
        CHECK_NOTHROW(Track({pad(0, {0, 0, 1}, PadKind::start), pad(1, {1, 0, 0}, PadKind::finish)},
                            {drop(0, 0, 1)}, 0, 1));
    }
    SUBCASE("two-way links change altitude by at most one") {
        CHECK_THROWS_AS(Track({pad(0, {0, 0, 0}, PadKind::start), pad(1, {1, 0, 2}, PadKind::finish)},
                              {road(0, 0, 1)}, 0, 1),
                        TrackError);
    }
    SUBCASE("two-way drops are rejected") {
        CHECK_THROWS_AS(Track({pad(0, {0, 0, 1}, PadKind::start), pad(1, {1, 0, 0}, PadKind::finish)},
                              {{0, 0, 1, Directionality::two_way, LinkCause::drop}}, 0, 1),
                        TrackError);
    }
    SUBCASE("start and finish must be connected") {
        CHECK_THROWS_AS(Track({pad(0, {0, 0, 0}, PadKind::start), pad(1, {1, 0, 0}, PadKind::finish)}, {}, 0, 1),
                        TrackError);
    }
    SUBCASE("link endpoints must exist") {
        CHECK_THROWS_AS(Track({pad(0, {0, 0, 0}, PadKind::start), pad(1, {1, 0, 0}, PadKind::finish)},
                              {road(0, 0, 5)}, 0, 1),
                        TrackError);
    }
}

TEST_CASE("aerial jump exception") {
    // A jump may rise onto a touch pad if everything the pad leads to lies
    // below the jump's source.
    std::vector<Pad> pads = {pad(0, {0, 0, 4}, PadKind::start), pad(1, {0, 2, 5}, PadKind::checkpoint_touch, 0),
                             pad(2, {1, 0, 1}, PadKind::finish)};
    const std::vector<Link> links = {{0, 0, 1, Directionality::one_way, LinkCause::jump}, drop(1, 1, 2)};
    CHECK_NOTHROW(Track(pads, links, 0, 2));
    pads[2].position.z = 4;
    CHECK_THROWS_AS(Track(pads, links, 0, 2), TrackError);
    pads[2].position.z = 1;
    pads[1].kind = PadKind::road;
    pads[1].checkpoint.reset();
    CHECK_THROWS_AS(Track(pads, links, 0, 2), TrackError);
}

TEST_CASE("one-way links descend on every compiled track") {
    std::mt19937_64 rng(5);
    for (int i = 0; i < 30; ++i) {
        Formula f{1 + static_cast<Var>(rng() % 4), {}};
        for (int j = 0; j < static_cast<int>(rng() % 5); ++j) {
            Clause c;
            for (auto& l : c) l = {1 + static_cast<Var>(rng() % f.num_variables), rng() % 2 ? Polarity::positive : Polarity::negative};
            f.clauses.push_back(c);
        }
        Track t = compile(f);
        for (const auto& l : t.links()) {
            if (l.two_way()) continue;
            const int zf = t.pad(l.from).position.z, zt = t.pad(l.to).position.z;
            if (zf > zt) continue;
            // Otherwise it must be the jump onto an aerial touch pad.
            CHECK(t.pad(l.to).kind == PadKind::checkpoint_touch);
        }
    }
}

TEST_CASE("legal actions") {
    SUBCASE("variable gadget entry offers exactly the two jumps") {
        TrackBuilder b;
        auto s = b.add_pad({-1, 0, 4}, PadKind::start);
        auto g = embed(b, variable_gadget({0, 0, 1}));
        auto f = b.add_pad({5, 3, 1}, PadKind::finish);
        b.add_link(s, g.port("entry"), Directionality::two_way, LinkCause::road);
        b.add_link(g.port("true_exit"), f, Directionality::two_way, LinkCause::road);
        Track t = b.build(s, f);
        State st{g.port("entry"), {}, std::nullopt};
        auto acts = legal_actions(t, st, RespawnPolicy::fixed);
        std::vector<Action> jumps;
        for (const auto& a : acts) {
            if (t.link(a.link).cause == LinkCause::jump) jumps.push_back(a);
        }
        REQUIRE(jumps.size() == 2);
        for (const auto& a : jumps) CHECK(a.direction == Direction::forward);
        CHECK(acts.size() == 3);  // plus the road back toward start
    }
    SUBCASE("interior of a road chain offers forward and reverse") {
        TrackBuilder b;
        auto s = b.add_pad({0, 0, 0}, PadKind::start);
        auto f = b.add_pad({3, 0, 0}, PadKind::finish);
        auto w = embed(b, wire({0, 0, 0}, {3, 0, 0}, std::vector<Vec3>{{1, 0, 0}, {2, 0, 0}}),
                       std::vector<std::pair<std::string, PadId>>{{"from", s}, {"to", f}});
        Track t = b.build(s, f);
        auto acts = legal_actions(t, {w.pads[1], {}, std::nullopt}, RespawnPolicy::fixed);
        REQUIRE(acts.size() == 2);
        CHECK(acts[0].direction == Direction::reverse);
        CHECK(acts[1].direction == Direction::forward);
        CHECK(acts[0].link < acts[1].link);
    }
    SUBCASE("no respawn before any touch") {
        Track t = three_pad();
        auto acts = legal_actions(t, initial_state(t), RespawnPolicy::fixed);
        for (const auto& a : acts) CHECK(a.kind == Action::Kind::traverse);
    }
}

TEST_CASE("advance and collection") {
    Track t = three_pad();
    State s = initial_state(t);
    REQUIRE(advance(t, s, Action::traverse(0, Direction::forward), RespawnPolicy::fixed));
    CHECK(s.collected.contains(0));
    CHECK(s.last_touch == PadId{1});
    SUBCASE("fixed respawn returns to the touched pad and keeps progress") {
        REQUIRE(advance(t, s, Action::traverse(0, Direction::reverse), RespawnPolicy::fixed));
        CHECK(s.pad == 0);
        REQUIRE(advance(t, s, Action::respawn(), RespawnPolicy::fixed));
        CHECK(s.pad == 1);
        CHECK(s.collected.size() == 1);
    }
    SUBCASE("re-entering a collected pad changes nothing but last touch") {
        advance(t, s, Action::traverse(0, Direction::reverse), RespawnPolicy::fixed);
        auto before = s.collected;
        REQUIRE(advance(t, s, Action::traverse(0, Direction::forward), RespawnPolicy::fixed));
        CHECK(s.collected == before);
        CHECK(s.last_touch == PadId{1});
    }
    SUBCASE("illegal actions leave the state untouched") {
        State copy = s;
        CHECK_FALSE(advance(t, s, Action::traverse(0, Direction::forward), RespawnPolicy::fixed));
        CHECK_FALSE(advance(t, s, Action::traverse(9, Direction::forward), RespawnPolicy::fixed));
        CHECK_FALSE(advance(t, s, Action::respawn(), RespawnPolicy::disabled));
        CHECK(s == copy);
    }
    SUBCASE("step is pure") {
        auto a = step(t, s, Action::traverse(1, Direction::forward), RespawnPolicy::fixed);
        auto b = step(t, s, Action::traverse(1, Direction::forward), RespawnPolicy::fixed);
        CHECK(a == b);
        CHECK(s.pad == 1);
    }
}

TEST_CASE("one-way links cannot be reversed") {
    Track t({pad(0, {0, 0, 1}, PadKind::start), pad(1, {1, 0, 0}, PadKind::finish)}, {drop(0, 0, 1)}, 0, 1);
    State s = initial_state(t);
    REQUIRE(advance(t, s, Action::traverse(0, Direction::forward), RespawnPolicy::fixed));
    CHECK_FALSE(advance(t, s, Action::traverse(0, Direction::reverse), RespawnPolicy::fixed));
}

TEST_CASE("any-touch respawn lands on pads sharing the checkpoint") {
    Track t = compile({1, {{Literal::from_dimacs(1), Literal::from_dimacs(1), Literal::from_dimacs(-1)}}});
    const auto& clause = t.meta()->clauses[0];
    State s{clause.slots[0].touch, {}, clause.slots[0].touch};
    s.collected.insert(0);
    auto targets = respawn_targets(t, s, RespawnPolicy::any_touch);
    CHECK(targets.size() == 3);
    CHECK(respawn_targets(t, s, RespawnPolicy::fixed) == std::vector<PadId>{clause.slots[0].touch});
    CHECK(respawn_targets(t, s, RespawnPolicy::disabled).empty());
    CHECK(advance(t, s, Action::respawn(clause.slots[2].touch), RespawnPolicy::any_touch));
    CHECK(s.pad == clause.slots[2].touch);
    CHECK_FALSE(advance(t, s, Action::respawn(clause.slots[1].touch), RespawnPolicy::fixed));
}

TEST_CASE("completion") {
    Track empty = compile({0, {}});
    State s = initial_state(empty);
    CHECK_FALSE(is_complete(empty, s));
    s.pad = empty.finish();
    CHECK(is_complete(empty, s));

    Track t = three_pad();
    State at_finish{2, {}, std::nullopt};
    CHECK_FALSE(is_complete(t, at_finish));
    State elsewhere{1, {}, std::nullopt};
    elsewhere.collected.insert(0);
    CHECK_FALSE(is_complete(t, elsewhere));
    at_finish.collected.insert(0);
    CHECK(is_complete(t, at_finish));
}

TEST_CASE("collected never shrinks along random walks") {
    std::mt19937_64 rng(9);
    Track t = compile({3, {{Literal::from_dimacs(1), Literal::from_dimacs(-2), Literal::from_dimacs(3)},
                           {Literal::from_dimacs(-1), Literal::from_dimacs(2), Literal::from_dimacs(2)}}});
    for (int run = 0; run < 50; ++run) {
        State s = initial_state(t);
        for (int k = 0; k < 200; ++k) {
            auto acts = legal_actions(t, s, RespawnPolicy::fixed);
            if (acts.empty()) break;
            auto before = s.collected.to_vector();
            REQUIRE(advance(t, s, acts[rng() % acts.size()], RespawnPolicy::fixed));
            auto after = s.collected.to_vector();
            CHECK(std::includes(after.begin(), after.end(), before.begin(), before.end()));
        }
    }
}

TEST_CASE("checkpoint set") {
    CheckpointSet s(130);
    CHECK(s.insert(129));
    CHECK_FALSE(s.insert(129));
    CHECK(s.insert(0));
    CHECK(s.size() == 2);
    CHECK(s.contains(129));
    CHECK_FALSE(s.contains(64));
    CHECK(s.to_vector() == std::vector<CheckpointId>{0, 129});
    CHECK(s.low_word() == 1);
    CheckpointSet grown;
    CHECK(grown.insert(70));
    CHECK(grown.contains(70));
}

TEST_CASE("policy names") {
    CHECK(parse_respawn_policy("any-touch") == RespawnPolicy::any_touch);
    CHECK(parse_respawn_policy("fixed") == RespawnPolicy::fixed);
    CHECK(to_string(RespawnPolicy::any_touch) == "any-touch");
    CHECK_THROWS_AS(parse_respawn_policy("sometimes"), Error);
}
