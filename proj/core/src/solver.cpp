#include "confsample/solver.hpp"

#include <algorithm>
#include <cassert>
#include <deque>
#include <functional>
#include <set>

namespace confsample {

namespace {

// Counter-based DPLL kernel. Single-use: construct, run one of the entry
// points, discard. Variables are 1-based; literals are DIMACS-signed ints.
class Dpll {
public:
    Dpll(const CnfFormula &cnf, std::uint64_t decisionBudget, bool pureLiterals)
        : varCount_(cnf.varCount()), budget_(decisionBudget), pureLiterals_(pureLiterals) {
        values_.assign(varCount_ + 1, 0);
        occ_.assign(2 * (varCount_ + 1), {});
        activeCount_.assign(2 * (varCount_ + 1), 0);
        clauses_.reserve(cnf.clauses.size());
        for (const auto &raw : cnf.clauses) {
            // Normalize: dedupe literals, drop tautologies.
            std::vector<int> lits(raw);
            std::sort(lits.begin(), lits.end());
            lits.erase(std::unique(lits.begin(), lits.end()), lits.end());
            bool tautology = false;
            for (int lit : lits)
                tautology |= std::binary_search(lits.begin(), lits.end(), -lit);
            if (tautology)
                continue;
            if (lits.empty()) {
                emptyClause_ = true;
                continue;
            }
            const int index = static_cast<int>(clauses_.size());
            for (int lit : lits) {
                occ_[litIndex(lit)].push_back(index);
                ++activeCount_[litIndex(lit)];
            }
            const int size = static_cast<int>(lits.size());
            clauses_.push_back({std::move(lits), size, false, 0});
        }
    }

    SolveStats stats() const { return stats_; }

    // Complete satisfiability check; fills `model` (total over all variables)
    // when satisfiable.
    bool solve(const std::vector<int> &assumptions, std::vector<bool> &model) {
        if (!applyAssumptions(assumptions))
            return false;
        if (!search(model))
            return false;
        return true;
    }

    // Enumerates total models in lexicographic (var order, true-first) order,
    // branching only on variables 1..projectCount; the rest must be forced by
    // propagation. Returns the number of models emitted; sets `exhaustive`
    // when the search space was exhausted before `limit` was hit.
    std::uint64_t enumerate(int projectCount, std::uint64_t limit,
                            const std::function<void(const std::vector<bool> &)> &sink,
                            bool &exhaustive) {
        exhaustive = false;
        if (emptyClause_) {
            exhaustive = true;
            return 0;
        }
        if (!propagate()) {
            exhaustive = true;
            return 0;
        }
        std::uint64_t count = 0;
        const bool stopped = enumerateRec(projectCount, limit, sink, count);
        exhaustive = !stopped;
        return count;
    }

    // Maximizes the number of objective variables assigned `objValue` over
    // all total models consistent with `assumptions`. Returns the optimal
    // count, or -1 when unsatisfiable; `model` receives the lexicographically
    // smallest (true-first) optimal assignment.
    int maximize(const std::vector<int> &objectiveVars, bool objValue,
                 const std::vector<int> &assumptions, std::vector<bool> &model) {
        isObjective_.assign(varCount_ + 1, false);
        for (int v : objectiveVars)
            isObjective_[v] = true;
        objValue_ = objValue;
        objUnassigned_ = static_cast<int>(objectiveVars.size());
        objCount_ = 0;
        if (!applyAssumptions(assumptions))
            return -1;
        best_ = -1;
        maximizeRec(/*lexPhase=*/false);
        if (best_ < 0)
            return -1;
        maximizeRec(/*lexPhase=*/true);
        assert(!bestModel_.empty());
        model = bestModel_;
        return best_;
    }

private:
    struct Clause {
        std::vector<int> lits;
        int unassigned;
        bool satisfied;
        int satisfiedBy; // variable that satisfied it (trail-ordered undo key)
    };

    static std::size_t litIndex(int lit) {
        return static_cast<std::size_t>(std::abs(lit)) * 2 + (lit < 0 ? 1 : 0);
    }
    int valueOf(int lit) const {
        const int v = values_[std::abs(lit)];
        if (v == 0)
            return 0;
        return (lit > 0) == (v > 0) ? 1 : -1;
    }

    bool applyAssumptions(const std::vector<int> &assumptions) {
        if (emptyClause_)
            return false;
        for (int lit : assumptions) {
            const int current = valueOf(lit);
            if (current < 0)
                return false;
            if (current == 0 && !assign(std::abs(lit), lit > 0))
                return false;
        }
        return propagate();
    }

    // Assigns a variable and updates clause bookkeeping. Returns false on an
    // immediate conflict (some clause ran out of literals).
    bool assign(int var, bool value) {
        assert(values_[var] == 0);
        values_[var] = value ? 1 : -1;
        trail_.push_back(var);
        if (isObjective_.size() > static_cast<std::size_t>(var) && isObjective_[var]) {
            --objUnassigned_;
            if (value == objValue_)
                ++objCount_;
        }
        bool ok = true;
        const int trueLit = value ? var : -var;
        for (int c : occ_[litIndex(trueLit)]) {
            Clause &cl = clauses_[c];
            if (cl.satisfied)
                continue;
            cl.satisfied = true;
            cl.satisfiedBy = var;
            for (int lit : cl.lits) {
                std::size_t li = litIndex(lit);
                if (--activeCount_[li] == 0 && pureLiterals_)
                    pureQueue_.push_back(std::abs(lit));
            }
        }
        for (int c : occ_[litIndex(-trueLit)]) {
            Clause &cl = clauses_[c];
            if (cl.satisfied)
                continue;
            if (--cl.unassigned == 0)
                ok = false;
            else if (cl.unassigned == 1)
                unitQueue_.push_back(c);
        }
        return ok;
    }

    void undoTo(std::size_t mark) {
        while (trail_.size() > mark) {
            const int var = trail_.back();
            trail_.pop_back();
            const bool value = values_[var] > 0;
            const int trueLit = value ? var : -var;
            for (int c : occ_[litIndex(trueLit)]) {
                Clause &cl = clauses_[c];
                if (cl.satisfied && cl.satisfiedBy == var) {
                    cl.satisfied = false;
                    cl.satisfiedBy = 0;
                    for (int lit : cl.lits)
                        ++activeCount_[litIndex(lit)];
                }
            }
            for (int c : occ_[litIndex(-trueLit)]) {
                Clause &cl = clauses_[c];
                if (!cl.satisfied)
                    ++cl.unassigned;
            }
            if (isObjective_.size() > static_cast<std::size_t>(var) && isObjective_[var]) {
                ++objUnassigned_;
                if (value == objValue_)
                    --objCount_;
            }
            values_[var] = 0;
        }
        unitQueue_.clear();
        pureQueue_.clear();
    }

    // Unit propagation (and pure-literal assignments when enabled) to
    // fixpoint. Returns false on conflict.
    bool propagate() {
        while (true) {
            while (!unitQueue_.empty()) {
                const int c = unitQueue_.front();
                unitQueue_.pop_front();
                Clause &cl = clauses_[c];
                if (cl.satisfied)
                    continue;
                int unitLit = 0;
                for (int lit : cl.lits) {
                    const int val = valueOf(lit);
                    if (val > 0) {
                        unitLit = 0;
                        break; // became satisfied meanwhile
                    }
                    if (val == 0)
                        unitLit = lit;
                }
                if (unitLit == 0)
                    continue;
                ++stats_.propagations;
                if (!assign(std::abs(unitLit), unitLit > 0))
                    return false;
            }
            if (!pureLiterals_ || pureQueue_.empty())
                return true;
            const int var = pureQueue_.front();
            pureQueue_.pop_front();
            if (values_[var] != 0)
                continue;
            const std::size_t pos = activeCount_[litIndex(var)];
            const std::size_t neg = activeCount_[litIndex(-var)];
            if (pos == 0 && neg == 0)
                continue; // free variable: left to branching
            if (pos == 0 || neg == 0) {
                ++stats_.propagations;
                if (!assign(var, neg == 0))
                    return false;
            }
        }
    }

    int firstUnassigned(int limit) const {
        for (int v = 1; v <= limit; ++v)
            if (values_[v] == 0)
                return v;
        return 0;
    }

    void chargeDecision() {
        if (++stats_.decisions > budget_)
            throw ResourceLimitError("solver decision budget exceeded", budget_);
    }

    bool search(std::vector<bool> &model) {
        if (!propagate())
            return false;
        const int var = firstUnassigned(varCount_);
        if (var == 0) {
            extractModel(model);
            return true;
        }
        for (bool value : {true, false}) {
            chargeDecision();
            const std::size_t mark = trail_.size();
            if (assign(var, value) && search(model))
                return true;
            undoTo(mark);
        }
        return false;
    }

    bool enumerateRec(int projectCount, std::uint64_t limit,
                      const std::function<void(const std::vector<bool> &)> &sink,
                      std::uint64_t &count) {
        const int var = firstUnassigned(projectCount);
        if (var == 0) {
            assert(firstUnassigned(varCount_) == 0 && "auxiliaries must be forced");
            std::vector<bool> model;
            extractModel(model);
            sink(model);
            return ++count == limit;
        }
        for (bool value : {true, false}) {
            chargeDecision();
            const std::size_t mark = trail_.size();
            if (assign(var, value) && propagate()) {
                if (enumerateRec(projectCount, limit, sink, count))
                    return true;
            }
            undoTo(mark);
        }
        return false;
    }

    // Branch-and-bound. Phase one (lexPhase=false) tries the objective value
    // first and tightens `best_`; phase two re-walks in lexicographic order
    // (true first) and stops at the first model that reaches `best_`, which
    // is therefore the lexicographically smallest optimum.
    bool maximizeRec(bool lexPhase) {
        if (!propagate())
            return false;
        const int bound = objCount_ + objUnassigned_;
        if (lexPhase ? bound < best_ : bound <= best_)
            return false;
        const int var = firstUnassigned(varCount_);
        if (var == 0) {
            if (lexPhase) {
                extractModel(bestModel_);
                return true;
            }
            if (objCount_ > best_)
                best_ = objCount_;
            return false;
        }
        bool first = true;
        if (!lexPhase && isObjective_[var])
            first = objValue_; // greedy: reach strong incumbents early
        for (bool value : {first, !first}) {
            chargeDecision();
            const std::size_t mark = trail_.size();
            if (assign(var, value) && maximizeRec(lexPhase))
                return true;
            undoTo(mark);
        }
        return false;
    }

    void extractModel(std::vector<bool> &model) const {
        model.assign(varCount_ + 1, false);
        for (int v = 1; v <= varCount_; ++v)
            model[v] = values_[v] > 0;
    }

    int varCount_;
    std::uint64_t budget_;
    bool pureLiterals_;
    bool emptyClause_ = false;
    std::vector<Clause> clauses_;
    std::vector<std::vector<int>> occ_;
    std::vector<std::size_t> activeCount_;
    std::vector<signed char> values_;
    std::vector<int> trail_;
    std::deque<int> unitQueue_;
    std::deque<int> pureQueue_;
    SolveStats stats_;

    std::vector<bool> isObjective_;
    bool objValue_ = true;
    int objUnassigned_ = 0;
    int objCount_ = 0;
    int best_ = -1;
    std::vector<bool> bestModel_;
};

SpacePtr spaceOfCnf(const CnfFormula &cnf) {
    std::vector<std::string> names;
    for (const auto &v : cnf.variables)
        if (!v.auxiliary)
            names.push_back(v.name);
    return VariabilitySpace::of(std::move(names));
}

// CNF variables 1..n are the space options in space order when built via
// buildCnf; DIMACS imports may permute, so map by name.
Configuration configurationFromModel(const CnfFormula &cnf, const SpacePtr &space,
                                     const std::vector<bool> &model) {
    std::vector<bool> values(space->size(), false);
    for (std::size_t i = 0; i < cnf.variables.size(); ++i) {
        if (cnf.variables[i].auxiliary)
            continue;
        auto index = space->indexOf(cnf.variables[i].name);
        assert(index);
        values[*index] = model[i + 1];
    }
    return Configuration(space, std::move(values));
}

void checkModelAgainst(const ConstraintModel &m, const Configuration &config) {
#ifndef NDEBUG
    assert(evaluate(m.formula, config) && "solver model must satisfy the source formula");
#else
    (void)m;
    (void)config;
#endif
}

std::vector<int> objectiveVariables(const CnfFormula &cnf,
                                    const std::vector<std::string> &objective) {
    std::vector<int> vars;
    if (objective.empty()) {
        for (int v = 1; v <= cnf.varCount(); ++v)
            if (!cnf.variables[v - 1].auxiliary)
                vars.push_back(v);
        return vars;
    }
    for (const std::string &name : objective) {
        auto v = cnf.varOf(name);
        if (!v)
            throw UnboundOptionError(name);
        vars.push_back(*v);
    }
    return vars;
}

} // namespace

SolveResult solveCnf(const CnfFormula &cnf, const SolverBudget &budget) {
    Dpll dpll(cnf, budget.decisions, /*pureLiterals=*/true);
    SolveResult result;
    std::vector<bool> model;
    result.satisfiable = dpll.solve({}, model);
    result.stats = dpll.stats();
    if (result.satisfiable)
        result.model = configurationFromModel(cnf, spaceOfCnf(cnf), model);
    return result;
}

bool satisfiable(const ConstraintModel &m, const SolverBudget &budget) {
    const CnfFormula cnf = buildCnf(m.formula, *m.space);
    Dpll dpll(cnf, budget.decisions, /*pureLiterals=*/true);
    std::vector<bool> model;
    return dpll.solve({}, model);
}

Configuration maxPolarityModel(const ConstraintModel &m, Polarity polarity,
                               const SolverBudget &budget,
                               const std::vector<std::string> &objective) {
    return constrainedExtreme(m, {}, polarity, budget, objective);
}

Configuration constrainedExtreme(const ConstraintModel &m,
                                 const std::vector<std::pair<std::string, bool>> &fixed,
                                 Polarity polarity, const SolverBudget &budget,
                                 const std::vector<std::string> &objective) {
    const CnfFormula cnf = buildCnf(m.formula, *m.space);
    std::vector<int> assumptions;
    for (const auto &[name, value] : fixed) {
        auto v = cnf.varOf(name);
        if (!v)
            throw UnboundOptionError(name);
        assumptions.push_back(value ? *v : -*v);
    }
    Dpll dpll(cnf, budget.decisions, /*pureLiterals=*/false);
    std::vector<bool> model;
    const int bestCount = dpll.maximize(objectiveVariables(cnf, objective),
                                        polarity == Polarity::Enabled, assumptions, model);
    if (bestCount < 0) {
        std::string what = "no valid configuration";
        if (!fixed.empty())
            what += " with '" + fixed.front().first + "' " +
                    (fixed.front().second ? "enabled" : "disabled");
        throw UnsatisfiableError(what + " (constraints: " + m.source + ")");
    }
    Configuration config = configurationFromModel(cnf, m.space, model);
    checkModelAgainst(m, config);
    return config;
}

EnumerationResult countOrEnumerate(const ConstraintModel &m, std::size_t limit,
                                   const SolverBudget &budget) {
    assert(limit >= 1);
    const CnfFormula cnf = buildCnf(m.formula, *m.space);
    // Option variables come first (buildCnf allocates space options as 1..n).
    const int projectCount = static_cast<int>(m.space->size());
    Dpll dpll(cnf, budget.decisions, /*pureLiterals=*/false);
    EnumerationResult result;
    dpll.enumerate(projectCount, limit,
                   [&](const std::vector<bool> &model) {
                       result.configurations.push_back(
                           configurationFromModel(cnf, m.space, model));
                       checkModelAgainst(m, result.configurations.back());
                   },
                   result.exhaustive);
    return result;
}

} // namespace confsample
