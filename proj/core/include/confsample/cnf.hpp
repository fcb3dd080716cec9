#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "confsample/formula.hpp"

namespace confsample {

/// One CNF variable. Variables 1..n map to configuration options (in space
/// order); higher indices are Tseitin auxiliaries tagged with the subformula
/// they stand for.
struct CnfVariable {
    std::string name; ///< option name, or a printable tag for auxiliaries
    bool auxiliary = false;
};

/// Clause set in DIMACS convention: signed 1-based literals, one vector per
/// clause. Equisatisfiable with the source formula; satisfying assignments
/// project onto satisfying assignments of the source options.
struct CnfFormula {
    std::vector<CnfVariable> variables;
    std::vector<std::vector<int>> clauses;

    int varCount() const { return static_cast<int>(variables.size()); }
    std::optional<int> varOf(std::string_view option) const;
};

/// Tseitin-style translation; clause count is linear in the node count.
/// Variables 1..space.size() are allocated for every option of `space`
/// (whether or not the formula mentions it). Formula variables must all be
/// declared in `space` (UnboundOptionError otherwise).
CnfFormula buildCnf(const PropFormula &formula, const VariabilitySpace &space);

/// buildCnf over the formula's own variable set.
CnfFormula toCnf(const PropFormula &formula);

/// DIMACS export with a sidecar option-name mapping: one `c map <index>
/// <name>` comment line per non-auxiliary variable.
void writeDimacs(const CnfFormula &cnf, std::ostream &out);

/// Parses the format written by writeDimacs. Unmapped variables get synthetic
/// names and are marked auxiliary.
CnfFormula readDimacs(std::istream &in);

} // namespace confsample
