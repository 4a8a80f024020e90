#include "crsym/errors.hpp"
#include "crsym/parser.hpp"
#include "crsym/structure.hpp"

#include "doctest.h"

using namespace crsym;

namespace {

WeightVector W(std::initializer_list<Rational> l) { return WeightVector(std::vector<Rational>(l)); }

ModelHypersurface model(const char *expr, std::initializer_list<Rational> l)
{
    return validate_model(parse_polynomial(expr, static_cast<int>(l.size())), W(l));
}

SparsePoly poly(const char *expr, int n) { return parse_polynomial(expr, n); }

const Rational q4(1, 4);

VectorField rotation_z2_cubed(int n)
{
    VectorField Y(n, Rational(1, 2));
    Y.F[0] = poly("i*z2^3", n);
    return Y;
}

} // namespace

TEST_CASE("balanced test")
{
    auto cp = balanced_test(poly("Re(z1*conj(z2)^3)", 2));
    REQUIRE(cp);
    CHECK(cp->lambda_prime == std::vector<Rational>{1, Rational(1, 3)});
    CHECK(apply(cp->Y0, poly("Re(z1*conj(z2)^3)", 2)) == poly("Re(z1*conj(z2)^3)", 2));

    auto q = balanced_test(poly("|z1|^2+|z2|^4", 2));
    REQUIRE(q);
    CHECK(q->lambda_prime == std::vector<Rational>{1, Rational(1, 2)});

    CHECK_FALSE(balanced_test(poly("|z1|^4+Re(z1*conj(z1)^3)", 1)));
    CHECK_FALSE(balanced_test(poly("|z1|^2+|z1|^4", 1)));
    CHECK_FALSE(balanced_test(SparsePoly(2)));
}

TEST_CASE("reproducing fields")
{
    const auto lambda = W({Rational(1, 2)});
    auto Z = solve_reproducing(poly("z1^2", 1), poly("z1", 1), lambda);
    REQUIRE(Z);
    CHECK(Z->F[0] == poly("1/2*z1^2", 1));
    CHECK_FALSE(solve_reproducing(poly("z1^2", 1), poly("z1", 1), lambda, false) == std::nullopt);

    // Homogeneous R is always reproduced by S times the weighted Euler field.
    auto lam2 = W({Rational(1, 2), Rational(1, 4)});
    auto E = solve_reproducing(poly("z1+z2^2", 2), poly("z1", 2), lam2, true);
    REQUIRE(E);
    CHECK(E->F[0] == poly("z1^2", 2));
    CHECK(E->F[1] == poly("1/2*z1*z2", 2));
    CHECK_THROWS_AS(solve_reproducing(poly("z1", 2), poly("conj(z1)", 2), lam2), Error);
}

TEST_CASE("tube identity coefficients")
{
    auto r2 = lemtub_coefficients(2);
    CHECK(r2.nonsingular);
    CHECK(r2.verified);
    CHECK(r2.alpha == std::vector<Scalar>{Scalar(Rational(-1, 2)), Scalar(Rational(3, 2))});
    for (int m = 1; m <= 6; ++m) {
        auto r = lemtub_coefficients(m);
        CHECK(r.nonsingular);
        CHECK(r.verified);
        CHECK(r.alpha.size() == static_cast<std::size_t>(m));
    }
    CHECK(lemtub_coefficients(1).alpha == std::vector<Scalar>{Scalar(1)});
    CHECK_THROWS_AS(lemtub_coefficients(0), Error);
}

TEST_CASE("minimal factorization")
{
    const auto lambda = W({q4, q4});
    auto P = poly("Re(z1*conj(z2)^3)", 2);
    auto f = full_factorization(P, lambda);
    CHECK(f.Q.size() == 2);
    SparsePoly back(2);
    for (std::size_t r = 0; r < f.Q.size(); ++r)
        back += f.Q[r] * conjugate(f.Qhat[r]);
    CHECK(back == P);

    // |z1 + z2|^2 has rank one.
    auto rank1 = minimal_factorization(poly("|z1+z2|^2", 2), W({Rational(1, 2), Rational(1, 2)}));
    CHECK(rank1.Q.size() == 1);

    CHECK_THROWS_AS(minimal_factorization(P, lambda), Error);
}

TEST_CASE("jacobian determinants")
{
    std::vector<SparsePoly> R{poly("z2*z3", 3), poly("z3^2", 3)};
    CHECK(jacobian_delta(R, {1, 2}) == poly("2*z3^2", 3));
    CHECK(jacobian_delta(R, {2, 1}) == poly("-2*z3^2", 3));
    CHECK(jacobian_delta_H(R, {poly("z3", 3), SparsePoly(3)}, 0, {1, 2}) == poly("2*z3^2", 3));
    CHECK_THROWS_AS(jacobian_delta(R, {1}), Error);
}

TEST_CASE("chain decomposition of a single chain")
{
    auto M = model("Re(z1*conj(z2)^3)", {q4, q4});
    auto Y = rotation_z2_cubed(2);
    auto D = chain_decomposition(M, Y);
    REQUIRE(D.pairs.size() == 1);
    CHECK(D.pairs[0].s == 1);
    CHECK(D.pairs[0].l == 2);
    CHECK(D.reconstruction == M.P());
    auto check = verify_chain(M, Y, D);
    CHECK(check.ok);

    auto bad = D;
    bad.pairs[0].A[0][0][0] = Scalar(2);
    auto c2 = verify_chain(M, Y, bad);
    CHECK_FALSE(c2.ok);
    CHECK_FALSE(c2.violations.empty());

    auto swapped = D;
    std::swap(swapped.pairs[0].U[0], swapped.pairs[0].U[1]);
    CHECK_FALSE(verify_chain(M, Y, swapped).ok);
}

TEST_CASE("chain decomposition with a trivial chain")
{
    auto M = model("|z1|^2+Re(z2*conj(z3)^3)", {Rational(1, 2), q4, q4});
    VectorField Y(3, Rational(1, 2));
    Y.F[1] = poly("i*z3^3", 3);
    auto D = chain_decomposition(M, Y);
    CHECK(D.pairs.size() == 2);
    int lengths = 0;
    for (const auto &p : D.pairs)
        lengths += p.l * p.s;
    CHECK(lengths == 3);
    CHECK(verify_chain(M, Y, D).ok);
}

TEST_CASE("chain decomposition with chains of length one")
{
    auto M = model("|z1|^2+|z2|^2", {Rational(1, 2), Rational(1, 2), q4});
    VectorField Y(3, q4);
    Y.F[2] = poly("z3^2", 3);
    auto D = chain_decomposition(M, Y);
    REQUIRE(D.pairs.size() == 1);
    CHECK(D.pairs[0].s == 2);
    CHECK(D.pairs[0].l == 1);
    CHECK(D.pairs[0].A.empty());
    CHECK(verify_chain(M, Y, D).ok);
}

TEST_CASE("generalized rotation requirements")
{
    auto M = model("Re(z1*conj(z2)^3)", {q4, q4});
    VectorField zero(2, Rational(1, 2));
    CHECK_THROWS_AS(require_generalized_rotation(zero, M), Error);
    VectorField rot(2, Rational(0));
    rot.F[0] = poly("i*z1", 2);
    rot.F[1] = poly("-3*i*z2", 2);
    CHECK_THROWS_AS(chain_decomposition(M, rot), Error);
    VectorField notTangent(2, Rational(1, 2));
    notTangent.F[0] = poly("z2^3", 2);
    CHECK_THROWS_AS(chain_decomposition(M, notTangent), Error);
}

TEST_CASE("w-dependent symmetry with one power of Re z_l")
{
    auto M = model("Re(z1*conj(z2)^3)", {q4, q4});
    auto R = nc_analysis(M);
    REQUIRE(R.kind == NcCase::M1Canonical);
    CHECK(R.l == 0);
    CHECK(R.m == 1);
    REQUIRE(R.Q1);
    CHECK(*R.Q1 == poly("2*z2^3", 2));
    CHECK(*R.normalized_P == poly("x1*(z2^3+conj(z2)^3)", 2));
    REQUIRE(R.canonicalY);
    VectorField expected(2, Rational(3, 4));
    const SparsePoly w = SparsePoly::variable(2, Var::w());
    expected.F[0] = w * Scalar::i() + poly("2*z1*z2^3", 2);
    expected.F[1] = poly("1/3*z2^4", 2);
    expected.G = poly("2i*z1*z2^6", 2);
    CHECK(*R.canonicalY == expected);
    CHECK(raw_tangency_residual(*R.canonicalY, *R.normalized_P).is_zero());
    for (const auto &c : R.conditions)
        CHECK_MESSAGE(c.passed, c.name);
}

TEST_CASE("w-dependent symmetry with two powers of Re z_l")
{
    auto P = poly("x1^2+|z2|^4+|z2*z3|^2+|z3|^4", 3);
    auto M = validate_model(strip_pluriharmonic(P).first, W({Rational(1, 2), q4, q4}));
    auto R = nc_analysis(M);
    REQUIRE(R.kind == NcCase::M2Balanced);
    CHECK(R.m == 2);
    REQUIRE(R.p0_certificate);
    CHECK(R.p0_certificate->lambda_prime == std::vector<Rational>{0, Rational(1, 2), Rational(1, 2)});
    REQUIRE(R.a);
    REQUIRE(R.b);
    CHECK_FALSE(R.a->is_zero());
    CHECK_FALSE(R.b->is_zero());
    REQUIRE(R.canonicalY);
    CHECK(raw_tangency_residual(*R.canonicalY, *R.normalized_P).is_zero());
    CHECK(R.canonicalY->F[1] == poly("1/2*z1*z2", 3));
}

TEST_CASE("w-dependent symmetry with unequal weights")
{
    auto P = poly("x1*Re(i*z2^3) + Re(z3*conj(z3)^3)*Re(z2^3)", 3);
    auto M = validate_model(strip_pluriharmonic(P).first, W({q4, q4, Rational(1, 16)}));
    auto D = full_decomposition(M);
    CHECK(D.dimension_at(Rational(3, 4)) >= 1);
    auto R = nc_analysis(M, D);
    CHECK(R.kind == NcCase::Unsupported);
    CHECK(R.m == 1);
    CHECK(R.reason.rfind("unequal weights", 0) == 0);
    CHECK_FALSE(R.canonicalY);
}

TEST_CASE("models without w-dependent symmetries")
{
    auto M = model("|z1|^4+|z1*z2|^2+|z2|^4", {q4, q4});
    auto R = nc_analysis(M);
    CHECK(R.kind == NcCase::Unsupported);
    CHECK_FALSE(R.reason.empty());
    CHECK_FALSE(R.canonicalY);
}

TEST_CASE("coordinate change composition")
{
    const int n = 2;
    auto a = CoordinateChange::identity(n);
    a.z[0] = poly("z1+z2^2", n);
    auto b = CoordinateChange::identity(n);
    b.z[1] = poly("2*z2", n);
    const SparsePoly w = SparsePoly::variable(n, Var::w());
    b.w = w + poly("z1", n);
    auto c = a.then(b);
    CHECK(c.z[0] == poly("z1+4*z2^2", n));
    CHECK(c.z[1] == poly("2*z2", n));
    CHECK(c.w == w + poly("z1", n));
}
