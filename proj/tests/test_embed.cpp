#include "crsym/embed.hpp"
#include "crsym/errors.hpp"
#include "crsym/parser.hpp"

#include "doctest.h"

using namespace crsym;

namespace {

WeightVector W(std::initializer_list<Rational> l) { return WeightVector(std::vector<Rational>(l)); }

ModelHypersurface model(const char *expr, std::initializer_list<Rational> l)
{
    return validate_model(parse_polynomial(expr, static_cast<int>(l.size())), W(l));
}

SparsePoly poly(const char *expr, int n) { return parse_polynomial(expr, n); }

const Rational q4(1, 4), h2(1, 2);

} // namespace

TEST_CASE("chain embedding of Re(z1 conj(z2)^3)")
{
    auto M = model("Re(z1*conj(z2)^3)", {q4, q4});
    VectorField Y(2, h2);
    Y.F[0] = poly("i*z2^3", 2);
    auto D = chain_decomposition(M, Y);
    auto E = build_chain_embedding(M, Y, D);
    CHECK(E.Q.K == 5);
    CHECK(E.f.zeta.size() == 4);
    CHECK(E.f.eta == SparsePoly::variable(2, Var::w()));
    auto cert = verify_certificate(M.P(), E);
    CHECK(cert.pullback_ok);
    CHECK(cert.related_ok);
    CHECK(cert.tangent_ok);
    CHECK(cert.nondegenerate_ok);
    CHECK(cert.hermitian_rank == 4);
    CHECK(cert.ok());

    // Z is linear on the quadric.
    for (const auto &F : E.Z.F)
        for (const auto &[m, c] : F.terms())
            CHECK(m.total_degree() == 1);

    auto tampered = E;
    tampered.f.zeta[0] = tampered.f.zeta[0] + poly("z2", 2);
    auto bad = verify_certificate(M.P(), tampered);
    CHECK_FALSE(bad.pullback_ok);
    CHECK_FALSE(bad.ok());
    CHECK_FALSE(bad.failures.empty());
}

TEST_CASE("chain embedding of a Hermitian model")
{
    auto M = model("|z1|^2+|z2|^2", {h2, h2, q4});
    VectorField Y(3, q4);
    Y.F[2] = poly("z3^2", 3);
    auto E = build_chain_embedding(M, Y, chain_decomposition(M, Y));
    CHECK(E.Q.K == 5);
    for (const auto &z : E.f.zeta)
        CHECK(z.terms().begin()->first.total_degree() == 1);
    CHECK(verify_certificate(M.P(), E).ok());
}

TEST_CASE("chain embedding rejects an invalid decomposition")
{
    auto M = model("Re(z1*conj(z2)^3)", {q4, q4});
    VectorField Y(2, h2);
    Y.F[0] = poly("i*z2^3", 2);
    auto D = chain_decomposition(M, Y);
    D.pairs[0].B[0][0][0] = Scalar(3);
    CHECK_THROWS_AS(build_chain_embedding(M, Y, D), Error);
}

TEST_CASE("balanced embeddings")
{
    struct Case {
        const char *expr;
        std::vector<Rational> lambda;
        int K;
    };
    const Case cases[] = {
        {"|z1|^2", {h2}, 3},
        {"Re(z1*conj(z2)^3)", {q4, q4}, 5},
        {"|z1|^4+|z1*z2|^2+|z2|^4", {q4, q4}, 7},
        {"|z1|^2+|z2|^4", {h2, q4}, 5},
    };
    for (const auto &c : cases) {
        CAPTURE(c.expr);
        auto M = validate_model(poly(c.expr, static_cast<int>(c.lambda.size())), WeightVector(c.lambda));
        auto bal = balanced_test(M);
        REQUIRE(bal);
        auto E = build_balanced_embedding(M, *bal);
        CHECK(E.Q.K == c.K);
        CHECK(raw_tangency_residual(E.Y, M.P()).is_zero());
        auto cert = verify_certificate(M.P(), E);
        CHECK(cert.ok());
        for (const auto &f : cert.failures)
            MESSAGE(f);
    }
}

TEST_CASE("balanced embedding of the Heisenberg model")
{
    auto M = model("|z1|^2", {h2});
    auto E = build_balanced_embedding(M, *balanced_test(M));
    REQUIRE(E.f.zeta.size() == 2);
    CHECK(E.f.zeta[0] == poly("z1", 1));
    CHECK(E.f.zeta[1] == poly("z1", 1));
    const SparsePoly w = SparsePoly::variable(1, Var::w());
    CHECK(E.Y.F[0] == poly("z1", 1) * w);
    CHECK(E.Y.G == w * w);
}

TEST_CASE("embedding of a non-rigid canonical field")
{
    auto M = model("Re(z1*conj(z2)^3)", {q4, q4});
    auto R = nc_analysis(M);
    REQUIRE(R.kind == NcCase::M1Canonical);
    auto E = build_nc_embedding(M, R);
    REQUIRE(E);
    CHECK(E->kind == EmbeddingKind::NonRigid);
    auto cert = verify_certificate(*R.normalized_P, *E);
    for (const auto &f : cert.failures)
        MESSAGE(f);
    CHECK(cert.ok());

    auto P = poly("x1^2+|z2|^4", 2);
    auto M2 = validate_model(strip_pluriharmonic(P).first, W({h2, q4}));
    auto R2 = nc_analysis(M2);
    REQUIRE(R2.kind == NcCase::M2Balanced);
    auto E2 = build_nc_embedding(M2, R2);
    REQUIRE(E2);
    auto cert2 = verify_certificate(*R2.normalized_P, *E2);
    for (const auto &f : cert2.failures)
        MESSAGE(f);
    CHECK(cert2.ok());
}

TEST_CASE("no embedding without a canonical field")
{
    auto P = poly("x1*Re(i*z2^3) + Re(z3*conj(z3)^3)*Re(z2^3)", 3);
    auto M = validate_model(strip_pluriharmonic(P).first, W({q4, q4, Rational(1, 16)}));
    auto R = nc_analysis(M);
    CHECK_FALSE(build_nc_embedding(M, R));
}
