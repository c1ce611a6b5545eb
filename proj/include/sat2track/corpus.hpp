#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sat2track/cnf.hpp"

namespace sat2track {

struct CorpusEntry {
    std::string name;
    Formula formula;
};

// Every formula over variables 1 and 2 with at most two clauses, where a
// clause is a multiset of three literals and a formula a multiset of clauses.
// 231 formulas, the empty one included.
std::vector<CorpusEntry> micro_corpus();

// `count` random 3-CNFs, n in [1, 8] and m in [0, 12], each literal drawn
// uniformly. Identical for identical seeds on every platform.
std::vector<CorpusEntry> random_corpus(std::uint64_t seed, std::size_t count);

// Fixed formulas that always run: (x1) and (~x1) after normalization, the
// clause (x1, ~x3, x4), and the empty formula.
std::vector<CorpusEntry> regression_corpus();

inline constexpr std::uint64_t kDefaultSeed = 20220401;
inline constexpr std::size_t kDefaultRandomCount = 500;

}  // namespace sat2track
