#include "sat2track/cnf.hpp"

#include <algorithm>
#include <charconv>
#include <istream>
#include <sstream>

#include "sat2track/errors.hpp"

namespace sat2track {

Literal Literal::from_dimacs(long value) {
    if (value == 0) {
        throw Error("literal 0 has no variable");
    }
    return value > 0 ? Literal{static_cast<Var>(value), Polarity::positive}
                     : Literal{static_cast<Var>(-value), Polarity::negative};
}

long Literal::to_dimacs() const {
    return negated() ? -static_cast<long>(var) : static_cast<long>(var);
}

bool RawFormula::has_empty_clause() const {
    return std::any_of(clauses.begin(), clauses.end(),
                       [](const auto& c) { return c.empty(); });
}

Assignment Assignment::from_mask(Var num_variables, std::uint64_t mask) {
    Assignment a(num_variables);
    for (Var v = 1; v <= num_variables; ++v) {
        a.values_[v - 1] = ((mask >> (v - 1)) & 1u) != 0;
    }
    return a;
}

bool satisfies(const Formula& formula, const Assignment& assignment) {
    return std::all_of(formula.clauses.begin(), formula.clauses.end(), [&](const Clause& c) {
        return std::any_of(c.begin(), c.end(),
                           [&](Literal l) { return assignment.satisfies(l); });
    });
}

bool satisfies(const RawFormula& formula, const Assignment& assignment) {
    return std::all_of(formula.clauses.begin(), formula.clauses.end(), [&](const auto& c) {
        return std::any_of(c.begin(), c.end(),
                           [&](Literal l) { return assignment.satisfies(l); });
    });
}

void validate(const Formula& formula) {
    for (std::size_t i = 0; i < formula.clauses.size(); ++i) {
        for (Literal l : formula.clauses[i]) {
            if (l.var < 1 || l.var > formula.num_variables) {
                throw Error("clause " + std::to_string(i) + ": variable " +
                            std::to_string(l.var) + " outside 1.." +
                            std::to_string(formula.num_variables));
            }
        }
    }
}

namespace {

bool is_blank(std::string_view line) {
    return line.find_first_not_of(" \t\r") == std::string_view::npos;
}

std::vector<std::string_view> split_tokens(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
        std::size_t j = i;
        while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
        if (j > i) out.push_back(line.substr(i, j - i));
        i = j;
    }
    return out;
}

std::optional<long> to_long(std::string_view token) {
    long value = 0;
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc() || ptr != token.data() + token.size()) return std::nullopt;
    return value;
}

}  // namespace

RawFormula parse_dimacs(std::istream& in) {
    RawFormula out;
    std::optional<long> declared_clauses;
    std::vector<Literal> current;
    std::size_t line_no = 0;
    std::size_t clause_line = 0;
    std::string line;
    bool stopped = false;

    while (!stopped && std::getline(in, line)) {
        ++line_no;
        std::string_view view(line);
        if (is_blank(view)) continue;
        auto tokens = split_tokens(view);
        if (tokens.front().front() == 'c') continue;
        if (tokens.front() == "p") {
            if (declared_clauses) throw ParseError(line_no, "duplicate header");
            if (tokens.size() != 4 || tokens[1] != "cnf") {
                throw ParseError(line_no, "malformed header, expected 'p cnf <vars> <clauses>'");
            }
            auto vars = to_long(tokens[2]);
            auto clauses = to_long(tokens[3]);
            if (!vars || !clauses || *vars < 0 || *clauses < 0 || *vars > 0xffffffffL) {
                throw ParseError(line_no, "malformed header counts");
            }
            out.num_variables = static_cast<Var>(*vars);
            declared_clauses = *clauses;
            continue;
        }
        if (!declared_clauses) throw ParseError(line_no, "clause data before 'p cnf' header");

        for (auto token : tokens) {
            if (token == "%") {  // SATLIB end marker
                stopped = true;
                break;
            }
            auto value = to_long(token);
            if (!value) throw ParseError(line_no, "malformed literal '" + std::string(token) + "'");
            if (*value == 0) {
                if (token.front() == '-') throw ParseError(line_no, "literal 0 inside clause");
                out.clauses.push_back(std::move(current));
                current.clear();
                continue;
            }
            if (current.empty()) clause_line = line_no;
            long magnitude = *value < 0 ? -*value : *value;
            if (magnitude > static_cast<long>(out.num_variables)) {
                throw ParseError(line_no, "variable " + std::to_string(magnitude) +
                                              " exceeds declared " +
                                              std::to_string(out.num_variables));
            }
            current.push_back(Literal::from_dimacs(*value));
        }
    }

    if (!declared_clauses) throw ParseError(line_no, "missing 'p cnf' header");
    if (!current.empty()) throw ParseError(clause_line, "clause not terminated by 0");
    if (static_cast<long>(out.clauses.size()) != *declared_clauses) {
        throw ParseError(line_no, "header declares " + std::to_string(*declared_clauses) +
                                      " clauses, found " + std::to_string(out.clauses.size()));
    }
    return out;
}

RawFormula parse_dimacs(std::string_view text) {
    std::istringstream in{std::string(text)};
    return parse_dimacs(in);
}

std::string to_dimacs(const RawFormula& formula) {
    std::string out = "p cnf " + std::to_string(formula.num_variables) + " " +
                      std::to_string(formula.clauses.size()) + "\n";
    for (const auto& clause : formula.clauses) {
        for (Literal l : clause) {
            out += std::to_string(l.to_dimacs());
            out += ' ';
        }
        out += "0\n";
    }
    return out;
}

RawFormula to_raw(const Formula& formula) {
    RawFormula raw;
    raw.num_variables = formula.num_variables;
    raw.clauses.reserve(formula.clauses.size());
    for (const auto& c : formula.clauses) raw.clauses.emplace_back(c.begin(), c.end());
    return raw;
}

std::string to_dimacs(const Formula& formula) { return to_dimacs(to_raw(formula)); }

Assignment NormalizedFormula::project(const Assignment& assignment) const {
    Assignment out(original_variables);
    for (Var v = 1; v <= original_variables; ++v) out.set(v, assignment.value(v));
    return out;
}

NormalizedFormula normalize_to_3cnf(const RawFormula& raw) {
    NormalizedFormula out;
    out.original_variables = raw.num_variables;
    Var next = raw.num_variables;
    auto fresh = [&] {
        ++next;
        out.fresh_variables.push_back(next);
        return Literal{next, Polarity::positive};
    };
    auto& clauses = out.formula.clauses;

    for (const auto& c : raw.clauses) {
        switch (c.size()) {
            case 0: {
                Literal y = fresh();
                clauses.push_back({y, y, y});
                clauses.push_back({~y, ~y, ~y});
                break;
            }
            case 1:
                clauses.push_back({c[0], c[0], c[0]});
                break;
            case 2:
                clauses.push_back({c[0], c[1], c[1]});
                break;
            case 3:
                clauses.push_back({c[0], c[1], c[2]});
                break;
            default: {
                Literal link = fresh();
                clauses.push_back({c[0], c[1], link});
                for (std::size_t i = 2; i + 2 < c.size(); ++i) {
                    Literal next_link = fresh();
                    clauses.push_back({~link, c[i], next_link});
                    link = next_link;
                }
                clauses.push_back({~link, c[c.size() - 2], c[c.size() - 1]});
                break;
            }
        }
    }
    out.formula.num_variables = next;
    return out;
}

std::optional<Assignment> sat_oracle(const Formula& formula, Var max_variables) {
    const Var n = formula.num_variables;
    if (n > max_variables || n > 62) {
        throw LimitError(LimitError::Side::oracle,
                         "oracle: " + std::to_string(n) + " variables exceed limit " +
                             std::to_string(std::min<Var>(max_variables, 62)));
    }
    validate(formula);

    // A clause holds under `mask` iff (mask & pos) != 0 or (~mask & neg) != 0.
    struct Masks {
        std::uint64_t pos = 0;
        std::uint64_t neg = 0;
    };
    std::vector<Masks> masks;
    masks.reserve(formula.clauses.size());
    for (const auto& c : formula.clauses) {
        Masks m;
        for (Literal l : c) {
            (l.negated() ? m.neg : m.pos) |= std::uint64_t{1} << (l.var - 1);
        }
        masks.push_back(m);
    }

    const std::uint64_t end = std::uint64_t{1} << n;
    for (std::uint64_t mask = 0; mask < end; ++mask) {
        bool ok = true;
        for (const auto& m : masks) {
            if ((mask & m.pos) == 0 && (~mask & m.neg) == 0) {
                ok = false;
                break;
            }
        }
        if (ok) return Assignment::from_mask(n, mask);
    }
    return std::nullopt;
}

std::string to_assignment_text(const Assignment& assignment) {
    std::string out = "v";
    for (Var v = 1; v <= assignment.size(); ++v) {
        out += ' ';
        if (!assignment.value(v)) out += '-';
        out += std::to_string(v);
    }
    out += " 0\n";
    return out;
}

Assignment parse_assignment(std::string_view text) {
    std::vector<std::optional<bool>> values;
    std::size_t line_no = 0;
    bool done = false;
    std::size_t pos = 0;
    while (!done && pos <= text.size()) {
        std::size_t eol = text.find('\n', pos);
        if (eol == std::string_view::npos) eol = text.size();
        std::string_view line = text.substr(pos, eol - pos);
        pos = eol + 1;
        ++line_no;
        auto tokens = split_tokens(line);
        if (tokens.empty() || tokens.front() == "c" || tokens.front() == "s") continue;
        for (auto token : tokens) {
            if (token == "v") continue;
            auto value = to_long(token);
            if (!value) throw ParseError(line_no, "malformed assignment literal '" + std::string(token) + "'");
            if (*value == 0) {
                done = true;
                break;
            }
            Literal l = Literal::from_dimacs(*value);
            if (l.var > values.size()) values.resize(l.var);
            if (values[l.var - 1] && *values[l.var - 1] == l.negated()) {
                throw ParseError(line_no, "variable " + std::to_string(l.var) + " assigned twice");
            }
            values[l.var - 1] = !l.negated();
        }
        if (pos > text.size()) break;
    }
    if (!done) throw ParseError(line_no, "assignment not terminated by 0");
    std::vector<bool> out(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (!values[i]) throw ParseError(line_no, "variable " + std::to_string(i + 1) + " unassigned");
        out[i] = *values[i];
    }
    return Assignment(std::move(out));
}

}  // namespace sat2track
