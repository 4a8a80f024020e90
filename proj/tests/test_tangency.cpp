#include "crsym/errors.hpp"
#include "crsym/parser.hpp"
#include "crsym/tangency.hpp"

#include "doctest.h"

#include <algorithm>

using namespace crsym;

namespace {

WeightVector W(std::initializer_list<Rational> l) { return WeightVector(std::vector<Rational>(l)); }

ModelHypersurface model(const char *expr, std::initializer_list<Rational> l)
{
    return validate_model(parse_polynomial(expr, static_cast<int>(l.size())), W(l));
}

SparsePoly poly(const char *expr, int n) { return parse_polynomial(expr, n); }

bool contains(const std::vector<Rational> &v, const Rational &x)
{
    return std::find(v.begin(), v.end(), x) != v.end();
}

} // namespace

TEST_CASE("tangency residual")
{
    auto H = model("|z1|^2", {Rational(1, 2)});
    CHECK(tangency_residual(VectorField::d_w(1), H).is_zero());

    auto F = model("Re(z1*conj(z2)^3)", {Rational(1, 4), Rational(1, 4)});
    VectorField rot(2, Rational(1, 2));
    rot.F[0] = poly("i*z2^3", 2);
    CHECK(tangency_residual(rot, F).is_zero());

    // Pure scaling of z1 is not tangent; with this sign convention the residual is -|z1|^2.
    VectorField scale(1, Rational(0));
    scale.F[0] = poly("z1", 1);
    CHECK(tangency_residual(scale, H) == poly("-|z1|^2", 1));
    scale.F[0] = poly("i*z1", 1);
    CHECK(tangency_residual(scale, H).is_zero());

    VectorField bad(1, Rational(0));
    bad.F[0] = poly("z1^2", 1);
    CHECK_THROWS_AS(tangency_residual(bad, H), Error);
}

TEST_CASE("candidate weights")
{
    auto H = model("|z1|^2", {Rational(1, 2)});
    auto h = candidate_weights(H);
    for (Rational mu : {Rational(-1), Rational(-1, 2), Rational(0), Rational(1, 2), Rational(1)})
        CHECK(contains(h, mu));
    CHECK(h.front() == -1);
    CHECK(h.back() == 1);

    auto F = model("Re(z1*conj(z2)^3)", {Rational(1, 4), Rational(1, 4)});
    auto f = candidate_weights(F);
    for (Rational mu : {Rational(0), Rational(1, 4), Rational(1, 2), Rational(3, 4), Rational(1)})
        CHECK(contains(f, mu));

    auto E = validate_model(
        strip_pluriharmonic(poly("x1*Re(i*z2^3) + Re(z3*conj(z3)^3)*Re(z2^3)", 3)).first,
        W({Rational(1, 4), Rational(1, 4), Rational(1, 16)}));
    CHECK(contains(candidate_weights(E), Rational(3, 4)));
}

TEST_CASE("graded components of the Heisenberg model")
{
    auto H = model("|z1|^2", {Rational(1, 2)});
    auto g_1 = graded_component(H, Rational(-1));
    REQUIRE(g_1.dimension() == 1);
    CHECK(g_1.basis[0] == VectorField::d_w(1));
    CHECK(graded_component(H, Rational(-1, 2)).dimension() == 2);
    auto g0 = graded_component(H, Rational(0));
    CHECK(g0.dimension() == 2);
    VectorField euler(1, Rational(0));
    euler.F[0] = poly("1/2*z1", 1);
    euler.G = SparsePoly::variable(1, Var::w());
    CHECK(in_real_span(euler, g0.basis));
    CHECK(graded_component(H, Rational(1, 2)).dimension() == 2);
    CHECK(graded_component(H, Rational(1)).dimension() == 1);
}

TEST_CASE("hyperquadric automorphism dimensions match (n+2)^2 - 1")
{
    auto H1 = model("|z1|^2", {Rational(1, 2)});
    CHECK(full_decomposition(H1).total_dimension() == 8);
    auto H2 = model("|z1|^2 + |z2|^2", {Rational(1, 2), Rational(1, 2)});
    auto D2 = full_decomposition(H2);
    CHECK(D2.total_dimension() == 15);
    CHECK(D2.g1_dimension() == 1);
    auto S = model("|z1|^2 - |z2|^2", {Rational(1, 2), Rational(1, 2)});
    CHECK(full_decomposition(S).total_dimension() == 15);
}

TEST_CASE("decomposition of Re(z1 conj(z2)^3)")
{
    auto F = model("Re(z1*conj(z2)^3)", {Rational(1, 4), Rational(1, 4)});
    auto D = full_decomposition(F);
    CHECK(D.gc_dimension() >= 1);
    CHECK(D.gnc_dimension() >= 1);
    CHECK(D.g1_dimension() == 1);
    VectorField rot(2, Rational(1, 2));
    rot.F[0] = poly("i*z2^3", 2);
    REQUIRE(D.gc.count(Rational(1, 2)));
    CHECK(in_real_span(rot, D.gc.at(Rational(1, 2)).basis));
    for (const auto &[mu, c] : D.components)
        for (const auto &Y : c.basis)
            CHECK(tangency_residual(Y, F).is_zero());
}

TEST_CASE("bracket closure and scaling membership")
{
    auto F = model("Re(z1*conj(z2)^3) + |z1|^2", {Rational(1, 2), Rational(1, 6)});
    auto D = full_decomposition(F);
    VectorField scaling(2, Rational(0));
    scaling.F[0] = poly("1/2*z1", 2);
    scaling.F[1] = poly("1/6*z2", 2);
    scaling.G = SparsePoly::variable(2, Var::w());
    CHECK(tangency_residual(scaling, F).is_zero());
    CHECK(in_real_span(scaling, D.components.at(Rational(0)).basis));
    for (const auto &[a, ca] : D.components)
        for (const auto &[b, cb] : D.components) {
            auto it = D.components.find(a + b);
            for (const auto &Ya : ca.basis)
                for (const auto &Yb : cb.basis) {
                    VectorField br = lie_bracket(Ya, Yb);
                    CHECK(raw_tangency_residual(br, F.P()).is_zero());
                    if (br.is_zero())
                        continue;
                    REQUIRE(it != D.components.end());
                    CHECK(in_real_span(br, it->second.basis));
                }
        }
}

TEST_CASE("lie brackets")
{
    VectorField a(1, Rational(1, 2));
    a.F[0] = poly("i", 1) * SparsePoly::variable(1, Var::w());
    VectorField br = lie_bracket(a, VectorField::d_w(1));
    CHECK(br.F[0] == poly("-i", 1));
    VectorField e(1, Rational(0)), q(1, Rational(1, 2));
    e.F[0] = poly("z1", 1);
    q.F[0] = poly("z1^2", 1);
    CHECK(lie_bracket(e, q).F[0] == poly("z1^2", 1));
    CHECK(lie_bracket(q, q).is_zero());
}

TEST_CASE("classify fields")
{
    auto F = model("Re(z1*conj(z2)^3)", {Rational(1, 4), Rational(1, 4)});
    CHECK(classify_field(VectorField::d_w(2), F).kind == FieldKind::Shift);
    VectorField rot(2, Rational(1, 2));
    rot.F[0] = poly("i*z2^3", 2);
    CHECK(classify_field(rot, F).kind == FieldKind::GeneralizedRotation);
    auto D = full_decomposition(F);
    for (const auto &[mu, c] : D.gnc)
        for (const auto &Y : c.basis) {
            auto cl = classify_field(Y, F);
            CHECK(cl.kind == FieldKind::Integration);
            CHECK(cl.l >= 1);
            CHECK(cl.rigid_base.is_rigid());
        }
    VectorField scale(2, Rational(0));
    scale.F[0] = poly("z1", 2);
    CHECK_THROWS_AS(classify_field(scale, F), Error);
}

TEST_CASE("degenerate models are refused")
{
    auto M = model("|z1*z2|^2", {Rational(1, 4), Rational(1, 4)});
    try {
        full_decomposition(M);
        FAIL("expected DegenerateModel");
    } catch (const Error &e) {
        CHECK(e.kind() == ErrorKind::DegenerateModel);
    }
}
