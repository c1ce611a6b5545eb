#include "sat2track/compile.hpp"

#include <string>
#include <unordered_map>
#include <utility>

#include "sat2track/errors.hpp"
#include "sat2track/gadgets.hpp"
#include "sat2track/placement.hpp"

namespace sat2track {

namespace {

void connect(TrackBuilder& b, PadId from, PadId to, std::span<const Vec3> waypoints) {
    const std::pair<std::string, PadId> bindings[] = {{"from", from}, {"to", to}};
    embed(b, wire(b.pad(from).position, b.pad(to).position, waypoints), bindings);
}

}  // namespace

Track compile(const Formula& formula) {
    try {
        validate(formula);
    } catch (const Error& e) {
        throw CompileError(std::string("refusing to compile: ") + e.what());
    }
    const Var n = formula.num_variables;
    const auto m = static_cast<std::uint32_t>(formula.clauses.size());
    const CombSites sites(n, m);

    TrackBuilder b;
    ReductionMeta meta;
    meta.occurrences.resize(2 * static_cast<std::size_t>(n));

    const PadId start = b.add_pad(sites.start(), PadKind::start);
    PadId prev = start;
    for (Var v = 1; v <= n; ++v) {
        auto gadget = embed(b, variable_gadget(sites.variable_base(v)));
        VariableSite site;
        site.entry = gadget.port("entry");
        site.true_landing = gadget.port("true_exit");
        site.false_landing = gadget.port("false_exit");
        connect(b, prev, site.entry, CombSites::chain_climb(b.pad(site.entry).position));
        site.true_end = b.add_pad(sites.branch_end(v, true), PadKind::road);
        site.false_end = b.add_pad(sites.branch_end(v, false), PadKind::road);
        site.merge = b.add_pad(sites.merge(v), PadKind::landing);
        b.add_link(site.true_end, site.merge, Directionality::one_way, LinkCause::drop);
        b.add_link(site.false_end, site.merge, Directionality::one_way, LinkCause::drop);
        meta.variables.push_back(site);
        prev = site.merge;
    }
    const PadId finish = b.add_pad(sites.finish(), PadKind::finish);
    connect(b, prev, finish, {});

    for (std::uint32_t c = 0; c < m; ++c) {
        auto gadget = embed(b, clause_gadget(sites.clause_base(c), kDefaultPairing));
        ClauseSite site;
        for (std::uint32_t s = 0; s < 3; ++s) {
            ClauseSlot& slot = site.slots[s];
            slot.literal = formula.clauses[c][s];
            slot.entry = gadget.port("entry_" + std::to_string(s));
            slot.touch = gadget.pads[3 + s];
            slot.exit = gadget.port("exit_" + std::to_string(kDefaultPairing[s]));
            meta.occurrences[ReductionMeta::literal_index(slot.literal)].push_back({c, s});
        }
        site.checkpoint = *b.pad(site.slots[0].touch).checkpoint;
        meta.clauses.push_back(site);
    }

    for (Var v = 1; v <= n; ++v) {
        for (bool value : {true, false}) {
            const Literal lit{v, value ? Polarity::positive : Polarity::negative};
            const auto& site = meta.variables[v - 1];
            PadId cur = site.landing(value);
            for (const auto& occ : meta.occurrences_of(lit)) {
                const ClauseSlot& slot = meta.clauses[occ.clause].slots[occ.slot];
                connect(b, cur, slot.entry, CombSites::clause_climb(b.pad(slot.entry).position));
                cur = slot.exit;
            }
            connect(b, cur, site.end(value), {});
        }
    }

    return b.build(start, finish, std::move(meta));
}

Certificate assignment_to_certificate(const Track& track, const Assignment& assignment) {
    if (!track.meta()) throw CompileError("track carries no reduction metadata");
    const auto& meta = *track.meta();
    const auto n = static_cast<Var>(meta.variables.size());
    if (assignment.size() < n) {
        throw CompileError("assignment covers " + std::to_string(assignment.size()) + " of " +
                           std::to_string(n) + " variables");
    }
    std::unordered_map<PadId, Var> entry_of;
    for (Var v = 1; v <= n; ++v) entry_of[meta.variables[v - 1].entry] = v;

    Certificate out;
    PadId cur = track.start();
    std::optional<LinkId> came;
    const std::size_t guard = 2 * track.links().size() + 2;
    while (cur != track.finish()) {
        if (out.size() > guard) throw CompileError("route does not reach finish");
        std::optional<Move> next;
        if (auto it = entry_of.find(cur); it != entry_of.end()) {
            const PadId landing = meta.variables[it->second - 1].landing(assignment.value(it->second));
            for (const Move& mv : track.moves(cur)) {
                if (mv.target == landing && mv.direction == Direction::forward) next = mv;
            }
        } else {
            for (const Move& mv : track.moves(cur)) {
                if (came && mv.link == *came) continue;
                if (next) throw CompileError("ambiguous route at pad " + std::to_string(cur));
                next = mv;
            }
        }
        if (!next) throw CompileError("dead end at pad " + std::to_string(cur));
        out.push_back(Action::traverse(next->link, next->direction));
        cur = next->target;
        came = next->link;
    }
    return out;
}

Assignment extract_assignment(const Track& track, const Certificate& certificate, RespawnPolicy policy) {
    if (!track.meta()) throw CompileError("track carries no reduction metadata");
    const auto& meta = *track.meta();
    const auto n = static_cast<Var>(meta.variables.size());
    std::unordered_map<PadId, Var> entry_of;
    for (Var v = 1; v <= n; ++v) entry_of[meta.variables[v - 1].entry] = v;

    std::vector<std::optional<bool>> values(n);
    State state = initial_state(track);
    for (std::size_t i = 0; i < certificate.size(); ++i) {
        const Action& a = certificate[i];
        const PadId from = state.pad;
        if (!advance(track, state, a, policy)) {
            throw CompileError("certificate is not valid on this track (action " + std::to_string(i) + ")");
        }
        if (a.kind != Action::Kind::traverse) continue;
        if (auto it = entry_of.find(from); it != entry_of.end() && !values[it->second - 1]) {
            const auto& site = meta.variables[it->second - 1];
            if (state.pad == site.true_landing) {
                values[it->second - 1] = true;
            } else if (state.pad == site.false_landing) {
                values[it->second - 1] = false;
            }
        }
    }
    if (!is_complete(track, state)) throw CompileError("certificate does not complete the track");
    std::vector<bool> out(n);
    for (Var v = 1; v <= n; ++v) {
        if (!values[v - 1]) throw CompileError("certificate never leaves the entry of variable " + std::to_string(v));
        out[v - 1] = *values[v - 1];
    }
    return Assignment(std::move(out));
}

}  // namespace sat2track
