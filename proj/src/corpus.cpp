#include "sat2track/corpus.hpp"

#include <random>

namespace sat2track {

namespace {

// Uniform draw in [0, bound) without std::uniform_int_distribution, whose
// output differs between standard libraries.
std::uint64_t draw(std::mt19937_64& rng, std::uint64_t bound) {
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % bound;
    std::uint64_t x = rng();
    while (x >= limit) x = rng();
    return x % bound;
}

}  // namespace

std::vector<CorpusEntry> micro_corpus() {
    const std::vector<Literal> lits = {Literal::from_dimacs(1), Literal::from_dimacs(-1), Literal::from_dimacs(2),
                                       Literal::from_dimacs(-2)};
    std::vector<Clause> clauses;
    for (std::size_t a = 0; a < lits.size(); ++a) {
        for (std::size_t b = a; b < lits.size(); ++b) {
            for (std::size_t c = b; c < lits.size(); ++c) clauses.push_back({lits[a], lits[b], lits[c]});
        }
    }
    std::vector<CorpusEntry> out;
    out.push_back({"micro-empty", {2, {}}});
    for (std::size_t i = 0; i < clauses.size(); ++i) {
        out.push_back({"micro-" + std::to_string(i), {2, {clauses[i]}}});
    }
    for (std::size_t i = 0; i < clauses.size(); ++i) {
        for (std::size_t j = i; j < clauses.size(); ++j) {
            out.push_back({"micro-" + std::to_string(i) + "-" + std::to_string(j), {2, {clauses[i], clauses[j]}}});
        }
    }
    return out;
}

std::vector<CorpusEntry> random_corpus(std::uint64_t seed, std::size_t count) {
    std::mt19937_64 rng(seed);
    std::vector<CorpusEntry> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        Formula f;
        f.num_variables = static_cast<Var>(1 + draw(rng, 8));
        const auto m = draw(rng, 13);
        for (std::uint64_t j = 0; j < m; ++j) {
            Clause c;
            for (auto& l : c) {
                l.var = static_cast<Var>(1 + draw(rng, f.num_variables));
                l.polarity = draw(rng, 2) == 0 ? Polarity::positive : Polarity::negative;
            }
            f.clauses.push_back(c);
        }
        out.push_back({"random-" + std::to_string(seed) + "-" + std::to_string(i), std::move(f)});
    }
    return out;
}

std::vector<CorpusEntry> regression_corpus() {
    RawFormula contradiction{1, {{Literal::from_dimacs(1)}, {Literal::from_dimacs(-1)}}};
    Formula fig{4, {{Literal::from_dimacs(1), Literal::from_dimacs(-3), Literal::from_dimacs(4)}}};
    return {
        {"regression-contradiction", normalize_to_3cnf(contradiction).formula},
        {"regression-single-clause", std::move(fig)},
        {"regression-empty", {0, {}}},
    };
}

}  // namespace sat2track
