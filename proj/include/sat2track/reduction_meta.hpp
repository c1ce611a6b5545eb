#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "sat2track/cnf.hpp"

namespace sat2track {

using PadId = std::uint32_t;
using LinkId = std::uint32_t;
using CheckpointId = std::uint32_t;

// Pads of one variable's gadget and its two literal branches.
struct VariableSite {
    PadId entry = 0;
    PadId true_landing = 0;
    PadId false_landing = 0;
    PadId true_end = 0;
    PadId false_end = 0;
    PadId merge = 0;

    PadId landing(bool value) const { return value ? true_landing : false_landing; }
    PadId end(bool value) const { return value ? true_end : false_end; }

    friend bool operator==(const VariableSite&, const VariableSite&) = default;
};

// One literal path through a clause gadget. `exit` is the exit the slot's
// jump is forced onto, i.e. exit port pairing(slot).
struct ClauseSlot {
    Literal literal;
    PadId entry = 0;
    PadId touch = 0;
    PadId exit = 0;

    friend bool operator==(const ClauseSlot&, const ClauseSlot&) = default;
};

struct ClauseSite {
    CheckpointId checkpoint = 0;
    std::array<ClauseSlot, 3> slots;

    friend bool operator==(const ClauseSite&, const ClauseSite&) = default;
};

struct Occurrence {
    std::uint32_t clause = 0;
    std::uint32_t slot = 0;

    friend bool operator==(const Occurrence&, const Occurrence&) = default;
};

struct ReductionMeta {
    std::vector<VariableSite> variables;  // variable v at index v-1
    std::vector<ClauseSite> clauses;
    // Clause slots visited by each literal's branch, in wire order. Indexed by
    // literal_index().
    std::vector<std::vector<Occurrence>> occurrences;

    static std::size_t literal_index(Literal l) { return 2 * (l.var - 1) + (l.negated() ? 1 : 0); }
    const std::vector<Occurrence>& occurrences_of(Literal l) const {
        return occurrences.at(literal_index(l));
    }

    // The 3-CNF formula the track was compiled from.
    Formula formula() const;

    friend bool operator==(const ReductionMeta&, const ReductionMeta&) = default;
};

}  // namespace sat2track
