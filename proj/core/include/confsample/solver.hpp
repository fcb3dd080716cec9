#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "confsample/cnf.hpp"
#include "confsample/formula.hpp"

namespace confsample {

/// Work limit for one solver run. Exceeding it raises ResourceLimitError
/// instead of hanging on an intractable instance.
struct SolverBudget {
    std::uint64_t decisions = 10'000'000;
};

/// Propositional restrictions defining which configurations are valid.
/// An empty constraint set is represented as the constant True formula.
struct ConstraintModel {
    SpacePtr space;
    PropFormula formula = PropFormula::constant(true);
    std::string source = "none";

    static ConstraintModel unconstrained(SpacePtr space, std::string source = "none") {
        return {std::move(space), PropFormula::constant(true), std::move(source)};
    }
};

struct SolveStats {
    std::uint64_t decisions = 0;
    std::uint64_t propagations = 0;
};

/// Result of a satisfiability check. `model` is present exactly when
/// satisfiable; it is total over the CNF's non-auxiliary variables.
struct SolveResult {
    bool satisfiable = false;
    std::optional<Configuration> model;
    SolveStats stats;
};

enum class Polarity { Enabled, Disabled };

/// Complete DPLL check (unit propagation, pure-literal elimination, branching
/// ascending by variable index with positive polarity first). Deterministic.
SolveResult solveCnf(const CnfFormula &cnf, const SolverBudget &budget = {});

bool satisfiable(const ConstraintModel &m, const SolverBudget &budget = {});

/// Valid configuration maximizing the number of options set to `polarity`.
/// Among optima returns the lexicographically smallest by option-name order,
/// where an enabled option sorts before a disabled one. When `objective` is
/// non-empty, only those options are counted (the tie-break still applies to
/// the whole configuration). Throws UnsatisfiableError when no valid
/// configuration exists.
Configuration maxPolarityModel(const ConstraintModel &m, Polarity polarity,
                               const SolverBudget &budget = {},
                               const std::vector<std::string> &objective = {});

/// maxPolarityModel with the given option values forced. Throws
/// UnsatisfiableError when the fixed assignment is inconsistent with `m`.
Configuration constrainedExtreme(const ConstraintModel &m,
                                 const std::vector<std::pair<std::string, bool>> &fixed,
                                 Polarity polarity, const SolverBudget &budget = {},
                                 const std::vector<std::string> &objective = {});

struct EnumerationResult {
    std::vector<Configuration> configurations;
    /// True when `configurations` provably holds every valid configuration.
    bool exhaustive = false;
};

/// Up to `limit` distinct valid configurations in deterministic
/// (lexicographic, enabled-first) order.
EnumerationResult countOrEnumerate(const ConstraintModel &m, std::size_t limit,
                                   const SolverBudget &budget = {});

} // namespace confsample
