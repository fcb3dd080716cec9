#pragma once

// Test-side helpers: independent reference evaluator, brute-force
// enumeration, and a random-formula generator. Deliberately written without
// reusing the library's evaluation/solving paths so they can serve as
// oracles for them.

#include <map>
#include <random>
#include <string>
#include <vector>

#include "confsample/formula.hpp"

namespace testutil {

using confsample::Configuration;
using confsample::PropFormula;
using confsample::SpacePtr;
using confsample::VariabilitySpace;

using Assignment = std::map<std::string, bool>;

// Reference semantics, independent of confsample::evaluate.
inline bool evalRef(const PropFormula &f, const Assignment &a) {
    using Kind = PropFormula::Kind;
    switch (f.kind()) {
    case Kind::True:
        return true;
    case Kind::False:
        return false;
    case Kind::Var:
        return a.at(f.varName());
    case Kind::Not:
        return !evalRef(f.operand(0), a);
    case Kind::And:
        return evalRef(f.operand(0), a) && evalRef(f.operand(1), a);
    case Kind::Or:
        return evalRef(f.operand(0), a) || evalRef(f.operand(1), a);
    }
    return false;
}

// All 2^k assignments over `options`, in ascending-name lexicographic order
// with `true` before `false` (the tie-break order the solver pins down).
inline std::vector<Assignment> allAssignments(std::vector<std::string> options) {
    std::sort(options.begin(), options.end());
    const std::size_t k = options.size();
    std::vector<Assignment> out;
    out.reserve(std::size_t{1} << k);
    for (std::size_t bits = 0; bits < (std::size_t{1} << k); ++bits) {
        Assignment a;
        for (std::size_t i = 0; i < k; ++i)
            a[options[i]] = ((bits >> (k - 1 - i)) & 1) == 0; // 0-bit = enabled
        out.push_back(std::move(a));
    }
    return out;
}

inline bool bruteForceSatisfiable(const PropFormula &f, const std::vector<std::string> &options) {
    for (const Assignment &a : allAssignments(options))
        if (evalRef(f, a))
            return true;
    return false;
}

inline Configuration configOf(const SpacePtr &space, const Assignment &a) {
    std::vector<bool> values(space->size(), false);
    for (std::size_t i = 0; i < space->size(); ++i)
        values[i] = a.at(space->name(i));
    return Configuration(space, std::move(values));
}

// Pattern like "TFT" in space (ascending-name) order.
inline Configuration configOf(const SpacePtr &space, const std::string &pattern) {
    std::vector<bool> values;
    for (char c : pattern)
        values.push_back(c == 'T' || c == '1');
    return Configuration(space, std::move(values));
}

inline PropFormula randomFormula(std::mt19937_64 &rng, const std::vector<std::string> &options,
                                 int depth) {
    std::uniform_int_distribution<int> pick(0, 9);
    const int roll = depth <= 0 ? pick(rng) % 3 : pick(rng);
    switch (roll) {
    case 0:
    case 1:
        return PropFormula::var(options[rng() % options.size()]);
    case 2:
        return (rng() & 1) ? PropFormula::constant(true) : PropFormula::constant(false);
    case 3:
    case 4:
        return PropFormula::negation(randomFormula(rng, options, depth - 1));
    case 5:
    case 6:
    case 7:
        return PropFormula::conjunction(randomFormula(rng, options, depth - 1),
                                        randomFormula(rng, options, depth - 1));
    default:
        return PropFormula::disjunction(randomFormula(rng, options, depth - 1),
                                        randomFormula(rng, options, depth - 1));
    }
}

} // namespace testutil
