#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace sat2track {

using Var = std::uint32_t;

enum class Polarity : std::uint8_t { positive, negative };

struct Literal {
    Var var = 1;
    Polarity polarity = Polarity::positive;

    static Literal from_dimacs(long value);
    long to_dimacs() const;

    bool negated() const { return polarity == Polarity::negative; }
    Literal operator~() const {
        return {var, negated() ? Polarity::positive : Polarity::negative};
    }

    friend bool operator==(const Literal&, const Literal&) = default;
    friend auto operator<=>(const Literal& a, const Literal& b) {
        return a.to_dimacs_key() <=> b.to_dimacs_key();
    }

private:
    // Orders x1 < ~x1 < x2 < ~x2 ...
    std::uint64_t to_dimacs_key() const {
        return (std::uint64_t{var} << 1) | (negated() ? 1u : 0u);
    }
};

using Clause = std::array<Literal, 3>;

// Exactly-3-CNF instance. Clause order is significant: it fixes gadget order
// in compiled tracks.
struct Formula {
    Var num_variables = 0;
    std::vector<Clause> clauses;

    friend bool operator==(const Formula&, const Formula&) = default;
};

// Clauses of arbitrary width, as read from DIMACS.
struct RawFormula {
    Var num_variables = 0;
    std::vector<std::vector<Literal>> clauses;

    // An empty clause makes the formula trivially unsatisfiable. It is kept
    // rather than rejected so callers can still normalize and compile it.
    bool has_empty_clause() const;

    friend bool operator==(const RawFormula&, const RawFormula&) = default;
};

// Truth value per variable, variable 1 first.
class Assignment {
public:
    Assignment() = default;
    explicit Assignment(Var num_variables) : values_(num_variables, false) {}
    explicit Assignment(std::vector<bool> values) : values_(std::move(values)) {}

    // Bit i of `mask` is variable i+1.
    static Assignment from_mask(Var num_variables, std::uint64_t mask);

    Var size() const { return static_cast<Var>(values_.size()); }
    bool value(Var var) const { return values_.at(var - 1); }
    void set(Var var, bool value) { values_.at(var - 1) = value; }
    bool satisfies(Literal lit) const { return value(lit.var) != lit.negated(); }

    friend bool operator==(const Assignment&, const Assignment&) = default;

private:
    std::vector<bool> values_;
};

bool satisfies(const Formula& formula, const Assignment& assignment);
bool satisfies(const RawFormula& formula, const Assignment& assignment);

// Checks that every literal refers to a variable in 1..num_variables.
void validate(const Formula& formula);

RawFormula parse_dimacs(std::istream& in);
RawFormula parse_dimacs(std::string_view text);

// Canonical DIMACS: header, one clause per line, single spaces, LF endings.
std::string to_dimacs(const RawFormula& formula);
std::string to_dimacs(const Formula& formula);

RawFormula to_raw(const Formula& formula);

struct NormalizedFormula {
    Formula formula;
    Var original_variables = 0;
    // Variables introduced by clause splitting, ascending.
    std::vector<Var> fresh_variables;

    // Restricts an assignment of the normalized formula to the original
    // variables.
    Assignment project(const Assignment& assignment) const;
};

// Pads narrow clauses by repeating their last literal and splits wide ones
// with the chain transformation
//   (l1 .. lk) -> (l1 l2 y1)(~y1 l3 y2) .. (~y(k-3) l(k-1) lk).
// An empty clause becomes (y y y)(~y ~y ~y) for a fresh y.
NormalizedFormula normalize_to_3cnf(const RawFormula& raw);

inline constexpr Var kDefaultOracleVariableLimit = 24;

// Exhaustive search in mask order (variable 1 least significant, false before
// true). Returns the first satisfying assignment. Throws LimitError when
// num_variables exceeds `max_variables`.
std::optional<Assignment> sat_oracle(const Formula& formula,
                                     Var max_variables = kDefaultOracleVariableLimit);

// "v 1 -2 3 0" style text. Reading accepts any whitespace layout, ignores
// lines starting with 'c' or 's' and stops at the first 0.
std::string to_assignment_text(const Assignment& assignment);
Assignment parse_assignment(std::string_view text);

}  // namespace sat2track
