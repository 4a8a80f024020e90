#include "crsym/errors.hpp"
#include "crsym/parser.hpp"

#include "doctest.h"

using namespace crsym;

namespace {

SparsePoly z(int n, int j) { return SparsePoly::variable(n, Var::z(j)); }
SparsePoly zb(int n, int j) { return SparsePoly::variable(n, Var::zbar(j)); }

} // namespace

TEST_CASE("parse basic model expressions")
{
    SparsePoly cp = parse_polynomial("Re(z1 * conj(z2)^3)");
    CHECK(cp == (z(2, 0) * zb(2, 1).pow(3) + zb(2, 0) * z(2, 1).pow(3)) * Scalar(Rational(1, 2)));
    CHECK(parse_polynomial("|z1|^2 + |z2|^2") == z(2, 0) * zb(2, 0) + z(2, 1) * zb(2, 1));
    SparsePoly sq = parse_polynomial("z1^2");
    CHECK(sq == z(1, 0).pow(2));
    CHECK(parse_polynomial("x1^2") == ((z(1, 0) + zb(1, 0)) * Scalar(Rational(1, 2))).pow(2));
    CHECK(parse_polynomial("1/2i*z1") == z(1, 0) * Scalar(Rational(0), Rational(1, 2)));
    CHECK(parse_polynomial("(1+2i)*z1") == z(1, 0) * Scalar(Rational(1), Rational(2)));
    CHECK(parse_polynomial("z1/2") == z(1, 0) * Scalar(Rational(1, 2)));
    CHECK(parse_polynomial("-|z1|^4 + 3*|z1|^4") == (z(1, 0) * zb(1, 0)).pow(2) * Scalar(2));
    CHECK(parse_polynomial("|z1*z2|^2") == z(2, 0) * zb(2, 0) * z(2, 1) * zb(2, 1));
    CHECK(parse_polynomial("|z1|^2", 3).n() == 3);
}

TEST_CASE("parse errors carry kinds and positions")
{
    try {
        parse_polynomial("|z1|^2 + * z2");
        FAIL("expected failure");
    } catch (const SyntaxError &e) {
        CHECK(e.position() == 9);
    }
    CHECK_THROWS_AS(parse_polynomial("Re(z1"), SyntaxError);
    CHECK_THROWS_AS(parse_polynomial(""), SyntaxError);
    auto kind = [](const char *s) {
        try {
            parse_polynomial(s);
        } catch (const Error &e) {
            return e.kind();
        }
        return ErrorKind::InternalRankDrop;
    };
    CHECK(kind("|z1|^3") == ErrorKind::OddAbsolutePower);
    CHECK(kind("z1^-1") == ErrorKind::NonPolynomial);
    CHECK(kind("1/z1") == ErrorKind::NonPolynomial);
    CHECK(kind("w*z1") == ErrorKind::NonPolynomial);
}

TEST_CASE("model file format")
{
    auto src = parse_model_text("\n# comment\nIm w = |z1|^2 + |z2|^4\nweights: 1/2, 1/4\n");
    CHECK(src.text == " |z1|^2 + |z2|^4");
    REQUIRE(src.declared_weights);
    CHECK(src.declared_weights->size() == 2);
    auto parsed = parse_model(src);
    REQUIRE(parsed.weights);
    CHECK((*parsed.weights)[1] == Rational(1, 4));
    CHECK_THROWS_AS(parse_model_text("Re w = |z1|^2"), SyntaxError);
    CHECK_THROWS_AS(parse_model_text("Im w = |z1|^2\nbogus"), SyntaxError);
    CHECK_THROWS_AS(parse_model({"|z1|^2 + |z2|^2", std::vector<Rational>{Rational(1, 2)}}), Error);
}
