#include "confsample/cnf.hpp"

#include <istream>
#include <map>
#include <ostream>
#include <sstream>

namespace confsample {

std::optional<int> CnfFormula::varOf(std::string_view option) const {
    for (std::size_t i = 0; i < variables.size(); ++i)
        if (!variables[i].auxiliary && variables[i].name == option)
            return static_cast<int>(i) + 1;
    return std::nullopt;
}

namespace {

// Folds constant subtrees so the Tseitin pass only sees {Var, Not, And, Or}
// or a bare constant. Equivalence-preserving.
PropFormula foldConstants(const PropFormula &f) {
    using Kind = PropFormula::Kind;
    switch (f.kind()) {
    case Kind::True:
    case Kind::False:
    case Kind::Var:
        return f;
    case Kind::Not: {
        PropFormula a = foldConstants(f.operand(0));
        if (a.isConstant(true))
            return PropFormula::constant(false);
        if (a.isConstant(false))
            return PropFormula::constant(true);
        return PropFormula::negation(std::move(a));
    }
    case Kind::And: {
        PropFormula a = foldConstants(f.operand(0));
        PropFormula b = foldConstants(f.operand(1));
        if (a.isConstant(false) || b.isConstant(false))
            return PropFormula::constant(false);
        if (a.isConstant(true))
            return b;
        if (b.isConstant(true))
            return a;
        return PropFormula::conjunction(std::move(a), std::move(b));
    }
    case Kind::Or: {
        PropFormula a = foldConstants(f.operand(0));
        PropFormula b = foldConstants(f.operand(1));
        if (a.isConstant(true) || b.isConstant(true))
            return PropFormula::constant(true);
        if (a.isConstant(false))
            return b;
        if (b.isConstant(false))
            return a;
        return PropFormula::disjunction(std::move(a), std::move(b));
    }
    }
    return f;
}

class TseitinBuilder {
public:
    TseitinBuilder(CnfFormula &cnf, const VariabilitySpace &space) : cnf_(cnf), space_(space) {}

    // Returns the literal representing `f`, allocating auxiliaries for
    // internal And/Or nodes.
    int encode(const PropFormula &f) {
        using Kind = PropFormula::Kind;
        switch (f.kind()) {
        case Kind::Var: {
            auto index = space_.indexOf(f.varName());
            if (!index)
                throw UnboundOptionError(f.varName());
            return static_cast<int>(*index) + 1;
        }
        case Kind::Not:
            return -encode(f.operand(0));
        case Kind::And: {
            const int a = encode(f.operand(0));
            const int b = encode(f.operand(1));
            const int x = freshAux("and");
            cnf_.clauses.push_back({-x, a});
            cnf_.clauses.push_back({-x, b});
            cnf_.clauses.push_back({x, -a, -b});
            return x;
        }
        case Kind::Or: {
            const int a = encode(f.operand(0));
            const int b = encode(f.operand(1));
            const int x = freshAux("or");
            cnf_.clauses.push_back({-x, a, b});
            cnf_.clauses.push_back({x, -a});
            cnf_.clauses.push_back({x, -b});
            return x;
        }
        default:
            // Constants are folded away before encoding.
            throw Error("internal: constant node reached Tseitin encoding");
        }
    }

private:
    int freshAux(const std::string &tag) {
        cnf_.variables.push_back({"$" + tag + std::to_string(cnf_.variables.size() + 1), true});
        return cnf_.varCount();
    }

    CnfFormula &cnf_;
    const VariabilitySpace &space_;
};

} // namespace

CnfFormula buildCnf(const PropFormula &formula, const VariabilitySpace &space) {
    CnfFormula cnf;
    cnf.variables.reserve(space.size());
    for (const std::string &name : space.names())
        cnf.variables.push_back({name, false});

    const PropFormula folded = foldConstants(formula);
    if (folded.isConstant(true))
        return cnf; // no clauses: every assignment satisfies
    if (folded.isConstant(false)) {
        cnf.clauses.push_back({}); // empty clause: unsatisfiable
        return cnf;
    }
    TseitinBuilder builder(cnf, space);
    const int root = builder.encode(folded);
    cnf.clauses.push_back({root});
    return cnf;
}

CnfFormula toCnf(const PropFormula &formula) {
    return buildCnf(formula, VariabilitySpace(formula.variables()));
}

void writeDimacs(const CnfFormula &cnf, std::ostream &out) {
    for (std::size_t i = 0; i < cnf.variables.size(); ++i)
        if (!cnf.variables[i].auxiliary)
            out << "c map " << (i + 1) << ' ' << cnf.variables[i].name << '\n';
    out << "p cnf " << cnf.varCount() << ' ' << cnf.clauses.size() << '\n';
    for (const auto &clause : cnf.clauses) {
        for (int lit : clause)
            out << lit << ' ';
        out << "0\n";
    }
}

CnfFormula readDimacs(std::istream &in) {
    CnfFormula cnf;
    std::map<int, std::string> mapping;
    std::size_t declaredClauses = 0;
    bool headerSeen = false;
    std::string line;
    while (std::getline(in, line)) {
        std::istringstream ls(line);
        std::string word;
        if (!(ls >> word))
            continue;
        if (word == "c") {
            std::string tag;
            int index;
            std::string name;
            if (ls >> tag >> index >> name && tag == "map")
                mapping[index] = name;
            continue;
        }
        if (word == "p") {
            std::string fmt;
            int vars = 0;
            if (!(ls >> fmt >> vars >> declaredClauses) || fmt != "cnf")
                throw Error("malformed DIMACS header: " + line);
            for (int v = 1; v <= vars; ++v) {
                auto it = mapping.find(v);
                if (it != mapping.end())
                    cnf.variables.push_back({it->second, false});
                else
                    cnf.variables.push_back({"$x" + std::to_string(v), true});
            }
            headerSeen = true;
            continue;
        }
        if (!headerSeen)
            throw Error("DIMACS clause before header: " + line);
        std::vector<int> clause;
        int lit = std::stoi(word);
        while (lit != 0) {
            clause.push_back(lit);
            if (!(ls >> lit))
                throw Error("DIMACS clause not terminated by 0: " + line);
        }
        cnf.clauses.push_back(std::move(clause));
    }
    if (!headerSeen)
        throw Error("DIMACS input has no header");
    if (cnf.clauses.size() != declaredClauses)
        throw Error("DIMACS clause count mismatch");
    return cnf;
}

} // namespace confsample
