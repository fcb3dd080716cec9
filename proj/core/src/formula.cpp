#include "confsample/formula.hpp"

#include <algorithm>
#include <cassert>
#include <cctype>
#include <cstdio>

namespace confsample {

bool isOptionName(std::string_view name) {
    if (name.empty())
        return false;
    if (std::isdigit(static_cast<unsigned char>(name.front())))
        return false;
    return std::all_of(name.begin(), name.end(), [](unsigned char c) {
        return std::isalnum(c) || c == '_';
    });
}

// ---------------------------------------------------------------------------
// VariabilitySpace / Configuration
// ---------------------------------------------------------------------------

VariabilitySpace::VariabilitySpace(std::vector<std::string> names) : names_(std::move(names)) {
    std::sort(names_.begin(), names_.end());
    for (std::size_t i = 0; i < names_.size(); ++i) {
        if (!isOptionName(names_[i]))
            throw std::invalid_argument("invalid option name: '" + names_[i] + "'");
        if (i > 0 && names_[i] == names_[i - 1])
            throw std::invalid_argument("duplicate option name: '" + names_[i] + "'");
    }
}

std::shared_ptr<const VariabilitySpace> VariabilitySpace::of(std::vector<std::string> names) {
    return std::make_shared<const VariabilitySpace>(std::move(names));
}

std::optional<std::size_t> VariabilitySpace::indexOf(std::string_view name) const {
    auto it = std::lower_bound(names_.begin(), names_.end(), name);
    if (it == names_.end() || *it != name)
        return std::nullopt;
    return static_cast<std::size_t>(it - names_.begin());
}

Configuration::Configuration(SpacePtr space, std::vector<bool> values)
    : space_(std::move(space)), values_(std::move(values)) {
    assert(space_ && values_.size() == space_->size());
}

Configuration Configuration::uniform(SpacePtr space, bool value) {
    std::vector<bool> values(space->size(), value);
    return Configuration(std::move(space), std::move(values));
}

bool Configuration::enabled(std::string_view option) const {
    auto index = space_->indexOf(option);
    if (!index)
        throw UnboundOptionError(std::string(option));
    return values_[*index];
}

std::optional<bool> Configuration::lookup(std::string_view option) const {
    auto index = space_->indexOf(option);
    if (!index)
        return std::nullopt;
    return values_[*index];
}

Configuration Configuration::with(std::size_t index, bool value) const {
    std::vector<bool> values = values_;
    values[index] = value;
    return Configuration(space_, std::move(values));
}

std::size_t Configuration::countEnabled() const {
    return static_cast<std::size_t>(std::count(values_.begin(), values_.end(), true));
}

bool Configuration::operator==(const Configuration &other) const {
    if (space_ == other.space_)
        return values_ == other.values_;
    return *space_ == *other.space_ && values_ == other.values_;
}

// ---------------------------------------------------------------------------
// PropFormula
// ---------------------------------------------------------------------------

struct PropFormula::Node {
    Kind kind;
    std::string name;                   // Var
    std::shared_ptr<const Node> a, b;   // Not: a; And/Or: a and b
};

namespace {

const std::shared_ptr<const PropFormula::Node> &trueNode() {
    static const auto node = std::make_shared<const PropFormula::Node>(
        PropFormula::Node{PropFormula::Kind::True, {}, nullptr, nullptr});
    return node;
}

const std::shared_ptr<const PropFormula::Node> &falseNode() {
    static const auto node = std::make_shared<const PropFormula::Node>(
        PropFormula::Node{PropFormula::Kind::False, {}, nullptr, nullptr});
    return node;
}

} // namespace

PropFormula::PropFormula() : node_(trueNode()) {}

PropFormula PropFormula::constant(bool value) {
    return PropFormula(value ? trueNode() : falseNode());
}

PropFormula PropFormula::var(std::string name) {
    return PropFormula(std::make_shared<const Node>(
        Node{Kind::Var, std::move(name), nullptr, nullptr}));
}

PropFormula PropFormula::negation(PropFormula f) {
    return PropFormula(std::make_shared<const Node>(
        Node{Kind::Not, {}, std::move(f.node_), nullptr}));
}

PropFormula PropFormula::conjunction(PropFormula lhs, PropFormula rhs) {
    return PropFormula(std::make_shared<const Node>(
        Node{Kind::And, {}, std::move(lhs.node_), std::move(rhs.node_)}));
}

PropFormula PropFormula::disjunction(PropFormula lhs, PropFormula rhs) {
    return PropFormula(std::make_shared<const Node>(
        Node{Kind::Or, {}, std::move(lhs.node_), std::move(rhs.node_)}));
}

PropFormula PropFormula::conjoinReduced(PropFormula lhs, PropFormula rhs) {
    if (lhs.isConstant(true))
        return rhs;
    if (rhs.isConstant(true))
        return lhs;
    return conjunction(std::move(lhs), std::move(rhs));
}

PropFormula::Kind PropFormula::kind() const { return node_->kind; }

bool PropFormula::isConstant(bool value) const {
    return node_->kind == (value ? Kind::True : Kind::False);
}

const std::string &PropFormula::varName() const {
    assert(node_->kind == Kind::Var);
    return node_->name;
}

PropFormula PropFormula::operand(std::size_t index) const {
    assert(node_->kind == Kind::Not || node_->kind == Kind::And || node_->kind == Kind::Or);
    return PropFormula(index == 0 ? node_->a : node_->b);
}

void PropFormula::collectVariables(std::set<std::string> &into) const {
    switch (node_->kind) {
    case Kind::True:
    case Kind::False:
        return;
    case Kind::Var:
        into.insert(node_->name);
        return;
    case Kind::Not:
        PropFormula(node_->a).collectVariables(into);
        return;
    case Kind::And:
    case Kind::Or:
        PropFormula(node_->a).collectVariables(into);
        PropFormula(node_->b).collectVariables(into);
        return;
    }
}

std::vector<std::string> PropFormula::variables() const {
    std::set<std::string> vars;
    collectVariables(vars);
    return {vars.begin(), vars.end()};
}

bool PropFormula::operator==(const PropFormula &other) const {
    if (node_ == other.node_)
        return true;
    if (node_->kind != other.node_->kind)
        return false;
    switch (node_->kind) {
    case Kind::True:
    case Kind::False:
        return true;
    case Kind::Var:
        return node_->name == other.node_->name;
    case Kind::Not:
        return PropFormula(node_->a) == PropFormula(other.node_->a);
    case Kind::And:
    case Kind::Or:
        return PropFormula(node_->a) == PropFormula(other.node_->a) &&
               PropFormula(node_->b) == PropFormula(other.node_->b);
    }
    return false;
}

namespace {

int precedenceOf(PropFormula::Kind kind) {
    switch (kind) {
    case PropFormula::Kind::Or:
        return 1;
    case PropFormula::Kind::And:
        return 2;
    case PropFormula::Kind::Not:
        return 3;
    default:
        return 4;
    }
}

void printFormula(const PropFormula &f, int parentPrecedence, bool rightOperand,
                  std::string &out) {
    const int precedence = precedenceOf(f.kind());
    const bool parens = precedence < parentPrecedence ||
                        (precedence == parentPrecedence && rightOperand && parentPrecedence < 3);
    if (parens)
        out += '(';
    switch (f.kind()) {
    case PropFormula::Kind::True:
        out += '1';
        break;
    case PropFormula::Kind::False:
        out += '0';
        break;
    case PropFormula::Kind::Var:
        out += f.varName();
        break;
    case PropFormula::Kind::Not:
        out += '!';
        printFormula(f.operand(0), precedence, false, out);
        break;
    case PropFormula::Kind::And:
    case PropFormula::Kind::Or:
        printFormula(f.operand(0), precedence, false, out);
        out += f.kind() == PropFormula::Kind::And ? " && " : " || ";
        printFormula(f.operand(1), precedence, true, out);
        break;
    }
    if (parens)
        out += ')';
}

} // namespace

std::string PropFormula::toString() const {
    std::string out;
    printFormula(*this, 0, false, out);
    return out;
}

// ---------------------------------------------------------------------------
// Parsing
// ---------------------------------------------------------------------------

namespace {

enum class TokenKind { End, Name, Number, LParen, RParen, Not, AndAnd, OrOr, Defined, Other };

struct Token {
    TokenKind kind;
    std::string_view text;
    std::size_t pos;
};

std::vector<Token> lex(std::string_view text) {
    std::vector<Token> tokens;
    std::size_t i = 0;
    while (i < text.size()) {
        const char c = text[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
            continue;
        }
        const std::size_t start = i;
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            while (i < text.size() &&
                   (std::isalnum(static_cast<unsigned char>(text[i])) || text[i] == '_'))
                ++i;
            std::string_view word = text.substr(start, i - start);
            tokens.push_back({word == "defined" ? TokenKind::Defined : TokenKind::Name,
                              word, start});
            continue;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            while (i < text.size() &&
                   (std::isalnum(static_cast<unsigned char>(text[i])) || text[i] == '_' ||
                    text[i] == '.'))
                ++i;
            tokens.push_back({TokenKind::Number, text.substr(start, i - start), start});
            continue;
        }
        auto twoChar = [&](char a, char b) {
            return c == a && i + 1 < text.size() && text[i + 1] == b;
        };
        if (twoChar('&', '&')) {
            tokens.push_back({TokenKind::AndAnd, text.substr(start, 2), start});
            i += 2;
            continue;
        }
        if (twoChar('|', '|')) {
            tokens.push_back({TokenKind::OrOr, text.substr(start, 2), start});
            i += 2;
            continue;
        }
        if (c == '(') {
            tokens.push_back({TokenKind::LParen, text.substr(start, 1), start});
            ++i;
            continue;
        }
        if (c == ')') {
            tokens.push_back({TokenKind::RParen, text.substr(start, 1), start});
            ++i;
            continue;
        }
        if (c == '!') {
            if (i + 1 < text.size() && text[i + 1] == '=') {
                tokens.push_back({TokenKind::Other, text.substr(start, 2), start});
                i += 2;
            } else {
                tokens.push_back({TokenKind::Not, text.substr(start, 1), start});
                ++i;
            }
            continue;
        }
        // Anything else (comparison, arithmetic, bitwise, ternary, comma, ...)
        // marks a non-boolean construct.
        std::size_t len = 1;
        if (i + 1 < text.size()) {
            const char d = text[i + 1];
            if ((c == '<' && (d == '<' || d == '=')) || (c == '>' && (d == '>' || d == '=')) ||
                (c == '=' && d == '='))
                len = 2;
        }
        tokens.push_back({TokenKind::Other, text.substr(start, len), start});
        i += len;
    }
    tokens.push_back({TokenKind::End, {}, text.size()});
    return tokens;
}

std::string normalizeWhitespace(std::string_view text) {
    std::string out;
    bool pendingSpace = false;
    for (char c : text) {
        if (std::isspace(static_cast<unsigned char>(c))) {
            pendingSpace = !out.empty();
            continue;
        }
        if (pendingSpace) {
            out += ' ';
            pendingSpace = false;
        }
        out += c;
    }
    return out;
}

std::string freshOptionName(const std::string &normalizedText) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : normalizedText) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[9];
    std::snprintf(buf, sizeof buf, "%08x", static_cast<unsigned>(h & 0xffffffffu));
    return std::string("__COND_") + buf + "__";
}

class Parser {
public:
    Parser(std::string_view text, bool recover, std::vector<AbstractedAtom> *atoms)
        : text_(text), tokens_(lex(text)), recover_(recover), atoms_(atoms) {}

    PropFormula parseTopLevel() {
        PropFormula f = parseOrExpr();
        if (peek().kind != TokenKind::End)
            throw ParseError("unexpected trailing input '" + std::string(peek().text) + "'",
                             peek().pos);
        return f;
    }

private:
    const Token &peek(std::size_t ahead = 0) const {
        const std::size_t i = pos_ + ahead;
        return tokens_[std::min(i, tokens_.size() - 1)];
    }
    void advance() { ++pos_; }

    PropFormula parseOrExpr() {
        PropFormula f = parseAndExpr();
        while (peek().kind == TokenKind::OrOr) {
            advance();
            f = PropFormula::disjunction(std::move(f), parseAndExpr());
        }
        return f;
    }

    PropFormula parseAndExpr() {
        PropFormula f = parseAtom();
        while (peek().kind == TokenKind::AndAnd) {
            advance();
            f = PropFormula::conjunction(std::move(f), parseAtom());
        }
        return f;
    }

    static bool atomBoundary(TokenKind kind) {
        return kind == TokenKind::End || kind == TokenKind::AndAnd ||
               kind == TokenKind::OrOr || kind == TokenKind::RParen;
    }

    // Parses one operand of && / ||. A construct that cannot be read as a
    // boolean unary expression, or that is followed by a non-boolean operator,
    // is consumed whole (balancing parentheses) and either reported or
    // abstracted into a fresh option.
    PropFormula parseAtom() {
        const std::size_t start = pos_;
        const std::size_t atomsMark = atoms_ ? atoms_->size() : 0;
        PropFormula f;
        if (tryParseUnary(f) && atomBoundary(peek().kind))
            return f;
        pos_ = start;
        if (atoms_)
            atoms_->resize(atomsMark); // drop abstractions from the discarded parse
        const std::string text = consumeOpaqueAtom();
        if (text.empty())
            throw ParseError("expected expression", tokens_[start].pos);
        if (!recover_)
            throw UnsupportedExpressionError(text, tokens_[start].pos);
        const std::string name = freshOptionName(text);
        atoms_->push_back({text, name});
        return PropFormula::var(name);
    }

    bool tryParseUnary(PropFormula &out) {
        if (peek().kind == TokenKind::Not) {
            advance();
            PropFormula inner;
            if (!tryParseUnary(inner))
                return false;
            out = PropFormula::negation(std::move(inner));
            return true;
        }
        return tryParsePrimary(out);
    }

    bool tryParsePrimary(PropFormula &out) {
        switch (peek().kind) {
        case TokenKind::LParen: {
            advance();
            PropFormula inner = parseOrExpr();
            if (peek().kind != TokenKind::RParen)
                return false;
            advance();
            out = std::move(inner);
            return true;
        }
        case TokenKind::Defined: {
            advance();
            if (peek().kind == TokenKind::LParen) {
                if (peek(1).kind != TokenKind::Name || peek(2).kind != TokenKind::RParen)
                    return false;
                out = PropFormula::var(std::string(peek(1).text));
                advance();
                advance();
                advance();
                return true;
            }
            if (peek().kind == TokenKind::Name) {
                out = PropFormula::var(std::string(peek().text));
                advance();
                return true;
            }
            return false;
        }
        case TokenKind::Name:
            if (peek(1).kind == TokenKind::LParen)
                return false; // function-like macro call
            out = PropFormula::var(std::string(peek().text));
            advance();
            return true;
        case TokenKind::Number: {
            if (peek().text == "1")
                out = PropFormula::constant(true);
            else if (peek().text == "0")
                out = PropFormula::constant(false);
            else
                return false;
            advance();
            return true;
        }
        default:
            return false;
        }
    }

    // Consumes tokens up to the next &&, || or End at parenthesis depth zero
    // (an unmatched ')' also terminates); returns the normalized source slice.
    std::string consumeOpaqueAtom() {
        const std::size_t begin = tokens_[pos_].pos;
        std::size_t end = begin;
        int depth = 0;
        while (true) {
            const Token &t = peek();
            if (t.kind == TokenKind::End)
                break;
            if (depth == 0 && (t.kind == TokenKind::AndAnd || t.kind == TokenKind::OrOr))
                break;
            if (t.kind == TokenKind::RParen) {
                if (depth == 0)
                    break;
                --depth;
            } else if (t.kind == TokenKind::LParen) {
                ++depth;
            }
            end = t.pos + t.text.size();
            advance();
        }
        return normalizeWhitespace(text_.substr(begin, end - begin));
    }

    std::string_view text_;
    std::vector<Token> tokens_;
    std::size_t pos_ = 0;
    bool recover_;
    std::vector<AbstractedAtom> *atoms_;
};

} // namespace

PropFormula parseFormula(std::string_view text) {
    Parser parser(text, /*recover=*/false, nullptr);
    return parser.parseTopLevel();
}

DirectiveCondition parseDirectiveCondition(std::string_view text) {
    DirectiveCondition result;
    try {
        Parser parser(text, /*recover=*/true, &result.abstracted);
        result.formula = parser.parseTopLevel();
        return result;
    } catch (const ParseError &) {
        // Structurally broken condition: abstract the whole expression.
        result.abstracted.clear();
        const std::string normalized = normalizeWhitespace(text);
        const std::string name = freshOptionName(normalized);
        result.abstracted.push_back({normalized, name});
        result.formula = PropFormula::var(name);
        return result;
    }
}

// ---------------------------------------------------------------------------
// Evaluation
// ---------------------------------------------------------------------------

bool evaluate(const PropFormula &formula,
              const std::function<bool(const std::string &)> &assignment) {
    switch (formula.kind()) {
    case PropFormula::Kind::True:
        return true;
    case PropFormula::Kind::False:
        return false;
    case PropFormula::Kind::Var:
        return assignment(formula.varName());
    case PropFormula::Kind::Not:
        return !evaluate(formula.operand(0), assignment);
    case PropFormula::Kind::And:
        return evaluate(formula.operand(0), assignment) &&
               evaluate(formula.operand(1), assignment);
    case PropFormula::Kind::Or:
        return evaluate(formula.operand(0), assignment) ||
               evaluate(formula.operand(1), assignment);
    }
    return false;
}

bool evaluate(const PropFormula &formula, const Configuration &config) {
    return evaluate(formula,
                    [&config](const std::string &name) { return config.enabled(name); });
}

} // namespace confsample
