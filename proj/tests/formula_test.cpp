#include <doctest.h>

#include <random>

#include "confsample/formula.hpp"
#include "testutil.hpp"

using namespace confsample;
using testutil::allAssignments;
using testutil::configOf;
using testutil::evalRef;
using testutil::randomFormula;

TEST_CASE("variability space validates and sorts names") {
    VariabilitySpace space({"POINTER", "SPLT", "A"});
    CHECK(space.size() == 3);
    CHECK(space.name(0) == "A");
    CHECK(space.name(1) == "POINTER");
    CHECK(space.name(2) == "SPLT");
    CHECK(space.indexOf("SPLT") == 2);
    CHECK_FALSE(space.indexOf("MISSING").has_value());

    CHECK_THROWS_AS(VariabilitySpace({"A", "A"}), std::invalid_argument);
    CHECK_THROWS_AS(VariabilitySpace({"9BAD"}), std::invalid_argument);
    CHECK_THROWS_AS(VariabilitySpace({"not valid"}), std::invalid_argument);
    CHECK(isOptionName("_X9"));
    CHECK_FALSE(isOptionName(""));
}

TEST_CASE("configuration equality is by assignment") {
    auto space = VariabilitySpace::of({"A", "B"});
    auto other = VariabilitySpace::of({"A", "B"});
    CHECK(configOf(space, "TF") == configOf(other, "TF"));
    CHECK(configOf(space, "TF") != configOf(space, "FT"));
    CHECK(configOf(space, "TF").enabled("A"));
    CHECK_FALSE(configOf(space, "TF").enabled("B"));
    CHECK_THROWS_AS(configOf(space, "TF").enabled("C"), UnboundOptionError);
}

TEST_CASE("parse recognizes the presence-condition grammar") {
    const PropFormula expected = PropFormula::conjunction(
        PropFormula::var("SPLT"), PropFormula::negation(PropFormula::var("POINTER")));
    CHECK(parseFormula("defined(SPLT) && !defined(POINTER)") == expected);
    CHECK(parseFormula("SPLT && !POINTER") == expected);
    CHECK(parseFormula("defined SPLT && !defined POINTER") == expected);

    CHECK(parseFormula("1") == PropFormula::constant(true));
    CHECK(parseFormula("0") == PropFormula::constant(false));

    CHECK(parseFormula("A || (B && !C)") ==
          PropFormula::disjunction(
              PropFormula::var("A"),
              PropFormula::conjunction(PropFormula::var("B"),
                                       PropFormula::negation(PropFormula::var("C")))));

    // ! binds tighter than &&, which binds tighter than ||.
    CHECK(parseFormula("!A && B || C") ==
          PropFormula::disjunction(
              PropFormula::conjunction(PropFormula::negation(PropFormula::var("A")),
                                       PropFormula::var("B")),
              PropFormula::var("C")));

    // && is left-associative.
    CHECK(parseFormula("A && B && C") ==
          PropFormula::conjunction(
              PropFormula::conjunction(PropFormula::var("A"), PropFormula::var("B")),
              PropFormula::var("C")));
}

TEST_CASE("parse reports syntax errors with a position") {
    CHECK_THROWS_AS(parseFormula(""), ParseError);
    CHECK_THROWS_AS(parseFormula("A &&"), ParseError);
    CHECK_THROWS_AS(parseFormula("(A"), ParseError);
    CHECK_THROWS_AS(parseFormula(")"), ParseError);
    CHECK_THROWS_AS(parseFormula("A B"), ParseError);
    try {
        parseFormula("A && (B ||");
        FAIL("expected ParseError");
    } catch (const ParseError &e) {
        CHECK(e.position > 0);
    }
}

TEST_CASE("parse rejects non-boolean constructs as unsupported") {
    CHECK_THROWS_AS(parseFormula("X > 2"), UnsupportedExpressionError);
    CHECK_THROWS_AS(parseFormula("FOO(a, b)"), UnsupportedExpressionError);
    CHECK_THROWS_AS(parseFormula("5"), UnsupportedExpressionError);
    CHECK_THROWS_AS(parseFormula("A + B"), UnsupportedExpressionError);
    try {
        parseFormula("defined(A) && VERSION >= 2");
        FAIL("expected UnsupportedExpressionError");
    } catch (const UnsupportedExpressionError &e) {
        CHECK(e.snippet == "VERSION >= 2");
    }
}

TEST_CASE("directive-condition parsing abstracts unsupported atoms") {
    SUBCASE("atom inside a conjunction") {
        auto cond = parseDirectiveCondition("defined(A) && X > 2");
        REQUIRE(cond.abstracted.size() == 1);
        CHECK(cond.abstracted[0].text == "X > 2");
        CHECK(cond.formula ==
              PropFormula::conjunction(PropFormula::var("A"),
                                       PropFormula::var(cond.abstracted[0].option)));
        CHECK(isOptionName(cond.abstracted[0].option));
    }
    SUBCASE("whole condition is one atom") {
        auto cond = parseDirectiveCondition("VERSION >= 2");
        REQUIRE(cond.abstracted.size() == 1);
        CHECK(cond.formula == PropFormula::var(cond.abstracted[0].option));
    }
    SUBCASE("function-like macro") {
        auto cond = parseDirectiveCondition("HAVE(foo) || B");
        REQUIRE(cond.abstracted.size() == 1);
        CHECK(cond.abstracted[0].text == "HAVE(foo)");
        CHECK(cond.formula == PropFormula::disjunction(
                                  PropFormula::var(cond.abstracted[0].option),
                                  PropFormula::var("B")));
    }
    SUBCASE("parenthesized arithmetic collapses into a single atom") {
        auto cond = parseDirectiveCondition("(X + 1) > 2 && A");
        REQUIRE(cond.abstracted.size() == 1);
        CHECK(cond.abstracted[0].text == "(X + 1) > 2");
    }
    SUBCASE("broken syntax falls back to one opaque atom") {
        auto cond = parseDirectiveCondition("&& ||");
        REQUIRE(cond.abstracted.size() == 1);
        CHECK(cond.formula == PropFormula::var(cond.abstracted[0].option));
    }
    SUBCASE("fresh names are deterministic and content-addressed") {
        auto a = parseDirectiveCondition("X > 2");
        auto b = parseDirectiveCondition("X  >  2"); // whitespace-insensitive
        auto c = parseDirectiveCondition("X > 3");
        CHECK(a.abstracted[0].option == b.abstracted[0].option);
        CHECK(a.abstracted[0].option != c.abstracted[0].option);
    }
}

TEST_CASE("canonical printing uses minimal parentheses and round-trips") {
    auto a = PropFormula::var("A");
    auto b = PropFormula::var("B");
    auto c = PropFormula::var("C");
    CHECK(PropFormula::conjunction(PropFormula::conjunction(a, b), c).toString() ==
          "A && B && C");
    CHECK(PropFormula::conjunction(a, PropFormula::conjunction(b, c)).toString() ==
          "A && (B && C)");
    CHECK(PropFormula::negation(PropFormula::conjunction(a, b)).toString() == "!(A && B)");
    CHECK(PropFormula::disjunction(a, PropFormula::conjunction(b, PropFormula::negation(c)))
              .toString() == "A || B && !C");
    CHECK(PropFormula::conjunction(PropFormula::disjunction(a, b), c).toString() ==
          "(A || B) && C");
    CHECK(PropFormula::constant(true).toString() == "1");
    CHECK(PropFormula::negation(PropFormula::negation(a)).toString() == "!!A");
}

TEST_CASE("round-trip property: parse(print(f)) == f") {
    std::mt19937_64 rng(42);
    const std::vector<std::string> options = {"A", "B", "C", "D", "E", "F"};
    for (int i = 0; i < 300; ++i) {
        PropFormula f = randomFormula(rng, options, 4);
        CAPTURE(f.toString());
        CHECK(parseFormula(f.toString()) == f);
    }
}

TEST_CASE("evaluation follows standard boolean semantics") {
    auto space = VariabilitySpace::of({"POINTER", "SPLT"});
    const PropFormula faultPc = PropFormula::conjunction(
        PropFormula::var("SPLT"), PropFormula::negation(PropFormula::var("POINTER")));
    // Space order is {POINTER, SPLT}: POINTER off, SPLT on.
    CHECK(evaluate(faultPc, configOf(space, "FT")));
    CHECK_FALSE(evaluate(faultPc, configOf(space, "TT")));

    CHECK(evaluate(PropFormula::constant(true), Configuration()));

    auto ab = VariabilitySpace::of({"A", "B"});
    const PropFormula xorAb = parseFormula("(!A && B) || (A && !B)");
    CHECK_FALSE(evaluate(xorAb, configOf(ab, "TT")));
    CHECK(evaluate(xorAb, configOf(ab, "TF")));

    CHECK_THROWS_AS(evaluate(PropFormula::var("X"), configOf(ab, "TT")), UnboundOptionError);
}

TEST_CASE("evaluation homomorphism property") {
    std::mt19937_64 rng(7);
    const std::vector<std::string> options = {"A", "B", "C", "D"};
    auto space = VariabilitySpace::of(options);
    for (int i = 0; i < 200; ++i) {
        PropFormula f = randomFormula(rng, options, 3);
        PropFormula g = randomFormula(rng, options, 3);
        std::vector<bool> bits;
        for (std::size_t j = 0; j < options.size(); ++j)
            bits.push_back(rng() & 1);
        Configuration c(space, bits);
        CHECK(evaluate(PropFormula::conjunction(f, g), c) ==
              (evaluate(f, c) && evaluate(g, c)));
        CHECK(evaluate(PropFormula::disjunction(f, g), c) ==
              (evaluate(f, c) || evaluate(g, c)));
        CHECK(evaluate(PropFormula::negation(f), c) == !evaluate(f, c));
    }
}

TEST_CASE("evaluate agrees with the reference evaluator") {
    std::mt19937_64 rng(99);
    const std::vector<std::string> options = {"A", "B", "C", "D", "E"};
    auto space = VariabilitySpace::of(options);
    for (int i = 0; i < 100; ++i) {
        PropFormula f = randomFormula(rng, options, 4);
        for (const auto &assignment : allAssignments(options)) {
            CHECK(evaluate(f, configOf(space, assignment)) == evalRef(f, assignment));
        }
    }
}
