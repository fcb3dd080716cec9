#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "confsample/errors.hpp"

namespace confsample {

/// True if `name` is a valid configuration-option identifier (a C macro name:
/// letters, digits and underscores, not starting with a digit).
bool isOptionName(std::string_view name);

/// Immutable, ordered set of configuration options. Names are unique and kept
/// sorted ascending; every index-based API below refers to that order.
class VariabilitySpace {
public:
    VariabilitySpace() = default;
    /// Sorts and validates the names. Throws std::invalid_argument on
    /// duplicates or names that are not valid identifiers.
    explicit VariabilitySpace(std::vector<std::string> names);

    static std::shared_ptr<const VariabilitySpace> of(std::vector<std::string> names);

    std::size_t size() const { return names_.size(); }
    bool empty() const { return names_.empty(); }
    const std::string &name(std::size_t index) const { return names_[index]; }
    const std::vector<std::string> &names() const { return names_; }
    std::optional<std::size_t> indexOf(std::string_view name) const;
    bool contains(std::string_view name) const { return indexOf(name).has_value(); }

    bool operator==(const VariabilitySpace &other) const { return names_ == other.names_; }

private:
    std::vector<std::string> names_;
};

using SpacePtr = std::shared_ptr<const VariabilitySpace>;

/// Total truth assignment over a VariabilitySpace. Value semantics; two
/// configurations are equal iff they assign the same values to the same
/// option names.
class Configuration {
public:
    Configuration() : space_(std::make_shared<VariabilitySpace>()) {}
    Configuration(SpacePtr space, std::vector<bool> values);

    static Configuration uniform(SpacePtr space, bool value);

    const VariabilitySpace &space() const { return *space_; }
    const SpacePtr &spacePtr() const { return space_; }
    std::size_t size() const { return values_.size(); }

    bool enabled(std::size_t index) const { return values_[index]; }
    /// Throws UnboundOptionError when the option is not in the space.
    bool enabled(std::string_view option) const;
    std::optional<bool> lookup(std::string_view option) const;

    Configuration with(std::size_t index, bool value) const;
    const std::vector<bool> &values() const { return values_; }

    std::size_t countEnabled() const;

    bool operator==(const Configuration &other) const;
    bool operator!=(const Configuration &other) const { return !(*this == other); }

private:
    SpacePtr space_;
    std::vector<bool> values_;
};

/// Propositional formula over configuration options: the representation of
/// presence conditions, constraints and fault conditions. Immutable tree of
/// {True, False, Var, Not, And, Or} nodes with structural sharing.
class PropFormula {
public:
    enum class Kind : std::uint8_t { True, False, Var, Not, And, Or };

    /// Default-constructed formula is the constant True.
    PropFormula();

    static PropFormula constant(bool value);
    static PropFormula var(std::string name);
    static PropFormula negation(PropFormula f);
    static PropFormula conjunction(PropFormula lhs, PropFormula rhs);
    static PropFormula disjunction(PropFormula lhs, PropFormula rhs);

    /// conjunction() that drops constant-True operands instead of nesting
    /// them; used when assembling presence conditions.
    static PropFormula conjoinReduced(PropFormula lhs, PropFormula rhs);

    Kind kind() const;
    bool isConstant(bool value) const;
    /// Var nodes only.
    const std::string &varName() const;
    /// Not: operand(0); And/Or: operand(0) and operand(1).
    PropFormula operand(std::size_t index) const;

    void collectVariables(std::set<std::string> &into) const;
    std::vector<std::string> variables() const;

    /// Canonical printing with `!`, `&&`, `||` and minimal parentheses;
    /// parse(toString()) reproduces the tree.
    std::string toString() const;

    /// Structural equality.
    bool operator==(const PropFormula &other) const;
    bool operator!=(const PropFormula &other) const { return !(*this == other); }

    struct Node; // implementation detail, defined in formula.cpp

private:
    explicit PropFormula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
    std::shared_ptr<const Node> node_;
};

/// Parses the expression grammar used in corpus files, constraint files and
/// reports: `!`, `&&`, `||`, parentheses, `defined(NAME)`/`defined NAME` or
/// bare `NAME`, literals `1`/`0`; C-preprocessor precedence (! > && > ||).
/// Throws ParseError on malformed input and UnsupportedExpressionError on
/// constructs outside the boolean fragment.
PropFormula parseFormula(std::string_view text);

/// One non-boolean subexpression that was abstracted into a fresh option.
struct AbstractedAtom {
    std::string text;   ///< offending substring, whitespace-normalized
    std::string option; ///< fresh option standing in for it
};

struct DirectiveCondition {
    PropFormula formula;
    std::vector<AbstractedAtom> abstracted;
};

/// Total variant of parseFormula for scanning real code: unsupported atoms
/// are replaced by deterministic fresh boolean options (named from a content
/// hash) instead of raising; completely unparseable text collapses into a
/// single fresh option.
DirectiveCondition parseDirectiveCondition(std::string_view text);

/// Standard boolean semantics. Throws UnboundOptionError when the formula
/// mentions an option the configuration does not assign.
bool evaluate(const PropFormula &formula, const Configuration &config);

/// Evaluation against an arbitrary assignment function (used by detection,
/// where missing options are treated as disabled, and by test oracles).
bool evaluate(const PropFormula &formula,
              const std::function<bool(const std::string &)> &assignment);

} // namespace confsample
