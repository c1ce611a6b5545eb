#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "sat2track/compile.hpp"
#include "sat2track/engine.hpp"
#include "sat2track/errors.hpp"

using namespace sat2track;

namespace {

Literal L(long v) { return Literal::from_dimacs(v); }

}  // namespace

TEST_CASE("verify") {
    Track empty = compile({0, {}});
    SUBCASE("empty certificate is valid but incomplete") {
        const auto r = verify(empty, {});
        CHECK(r.valid);
        CHECK_FALSE(r.complete);
        CHECK_FALSE(r.first_illegal_index.has_value());
        CHECK(r.actions_consumed == 0);
    }
    SUBCASE("reversing a one-way link is flagged at its index") {
        Track t = compile({1, {}});
        Certificate c = assignment_to_certificate(t, Assignment(std::vector<bool>{true}));
        // Find the jump and replace what follows with its reversal.
        std::size_t jump = 0;
        while (t.link(c[jump].link).two_way()) ++jump;
        c.resize(jump + 1);
        c.push_back(Action::traverse(c[jump].link, Direction::reverse));
        const auto r = verify(t, c);
        CHECK_FALSE(r.valid);
        CHECK_FALSE(r.complete);
        CHECK(r.first_illegal_index == jump + 1);
        CHECK(r.actions_consumed == jump + 1);
    }
    SUBCASE("text form") {
        const auto r = verify(empty, {Action::traverse(0, Direction::forward)});
        CHECK(to_text(r) == "valid true\ncomplete true\nfirst-illegal none\nactions 1\ncollected\ncheckpoints 0/0\n");
    }
}

TEST_CASE("solve examples") {
    SUBCASE("(x1) sets x1 true") {
        Track t = compile(normalize_to_3cnf({1, {{L(1)}}}).formula);
        auto c = solve(t);
        REQUIRE(c);
        CHECK(extract_assignment(t, *c).value(1));
    }
    SUBCASE("(x1) and (~x1) has no certificate") {
        CHECK_FALSE(solve(compile(normalize_to_3cnf({1, {{L(1)}, {L(-1)}}}).formula)).has_value());
    }
    SUBCASE("start, checkpoint, finish") {
        TrackBuilder b;
        const auto s = b.add_pad({0, 0, 0}, PadKind::start);
        const auto cp = b.add_pad({1, 0, 0}, PadKind::checkpoint_touch, b.new_checkpoint());
        const auto f = b.add_pad({2, 0, 0}, PadKind::finish);
        b.add_link(s, cp, Directionality::two_way, LinkCause::road);
        b.add_link(cp, f, Directionality::two_way, LinkCause::road);
        auto c = solve(b.build(s, f));
        REQUIRE(c);
        CHECK(*c == Certificate{Action::traverse(0, Direction::forward), Action::traverse(1, Direction::forward)});
    }
}

TEST_CASE("solver limits") {
    Formula f{3, {}};
    for (int i = 0; i < 5; ++i) f.clauses.push_back({L(1), L(2), L(3)});
    Track t = compile(f);
    try {
        solve(t, RespawnPolicy::fixed, {4, 1000});
        FAIL("expected a limit error");
    } catch (const LimitError& e) {
        CHECK(e.side() == LimitError::Side::solver);
    }
    CHECK_THROWS_AS(solve(t, RespawnPolicy::fixed, {20, 10}), LimitError);
}

TEST_CASE("solver agrees with independent searches on small random tracks") {
    std::mt19937_64 rng(41);
    int tracks = 0, completable = 0;
    while (tracks < 400) {
        auto t = oracle::random_small_track(rng);
        if (!t) continue;
        ++tracks;
        for (auto policy : {RespawnPolicy::disabled, RespawnPolicy::fixed, RespawnPolicy::any_touch}) {
            auto c = solve(*t, policy);
            const bool dfs = oracle::dfs_completable(*t, policy);
            const auto shortest = oracle::shortest_length(*t, policy);
            CHECK(c.has_value() == dfs);
            CHECK(shortest.has_value() == dfs);
            if (c) {
                ++completable;
                CHECK(c->size() == *shortest);
                CHECK(verify(*t, *c, policy).complete);
            }
        }
    }
    CHECK(completable > 0);
}

TEST_CASE("solver output is deterministic") {
    std::mt19937_64 rng(43);
    for (int i = 0; i < 30; ++i) {
        auto t = oracle::random_small_track(rng);
        if (!t) continue;
        CHECK(solve(*t) == solve(*t));
    }
}

TEST_CASE("equivalence check") {
    SUBCASE("single clause") {
        const auto r = equivalence_check({4, {{L(1), L(-3), L(4)}}});
        CHECK(r.sat);
        CHECK(r.completable);
        CHECK(r.agree);
        CHECK(r.witness_cross_checked);
    }
    SUBCASE("contradiction") {
        const auto r = equivalence_check(normalize_to_3cnf({1, {{L(1)}, {L(-1)}}}).formula);
        CHECK_FALSE(r.sat);
        CHECK_FALSE(r.completable);
        CHECK(r.agree);
    }
    SUBCASE("limits are reported by side") {
        EquivalenceLimits limits;
        limits.max_variables = 2;
        try {
            equivalence_check({4, {{L(1), L(-3), L(4)}}}, limits);
            FAIL("expected a limit error");
        } catch (const LimitError& e) {
            CHECK(e.side() == LimitError::Side::oracle);
        }
    }
}

TEST_CASE("respawn neutrality on compiled tracks") {
    std::mt19937_64 rng(45);
    for (int i = 0; i < 40; ++i) {
        Formula f{1 + static_cast<Var>(rng() % 4), {}};
        for (int j = 0; j < static_cast<int>(rng() % 6); ++j) {
            Clause c;
            for (auto& l : c) {
                const long v = 1 + static_cast<long>(rng() % f.num_variables);
                l = L(rng() % 2 ? v : -v);
            }
            f.clauses.push_back(c);
        }
        const auto cmp = compare_policies(compile(f));
        CHECK(cmp.disabled == cmp.fixed);
    }
}
