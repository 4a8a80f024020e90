#include "crsym/errors.hpp"
#include "crsym/report.hpp"

#include "doctest.h"

using namespace crsym;

namespace {

AnalysisReport run(const char *expr, AnalyzeOptions opts = {})
{
    return analyze(ModelSource{expr, std::nullopt}, opts);
}

} // namespace

TEST_CASE("Heisenberg model")
{
    auto r = run("|z1|^2");
    CHECK(r.status == ReportStatus::Complete);
    CHECK(r.total_dimension == 8);
    CHECK(r.weights == std::vector<Rational>{Rational(1, 2)});
    CHECK(r.balanced);
    REQUIRE_FALSE(r.embeddings.empty());
    for (const auto &e : r.embeddings)
        CHECK(e.certificate.ok());
}

TEST_CASE("Re(z1 conj(z2)^3) is balanced and a chain hypersurface")
{
    auto r = run("Re(z1*conj(z2)^3)");
    REQUIRE(r.balanced);
    CHECK(r.balanced->lambda_prime == std::vector<Rational>{1, Rational(1, 3)});
    CHECK(r.is_chain);
    CHECK(r.verdict == "balanced chain hypersurface");
    REQUIRE(r.nc);
    CHECK(r.nc->kind == NcCase::M1Canonical);
    bool chain_k5 = false;
    for (const auto &e : r.embeddings) {
        CAPTURE(e.source);
        CHECK(e.certificate.ok());
        if (e.embedding.kind == EmbeddingKind::Chain && e.embedding.Q.K == 5)
            chain_k5 = true;
    }
    CHECK(chain_k5);
}

TEST_CASE("1-jet determined model")
{
    auto r = run("|z1|^4+Re(z1*conj(z1)^3)");
    CHECK(r.one_jet_determined);
    CHECK_FALSE(r.balanced);
    CHECK(r.gc.empty());
    CHECK(r.verdict == "automorphisms determined by 1-jets");
}

TEST_CASE("degenerate model")
{
    auto r = run("|z1*z2|^2");
    CHECK(r.status == ReportStatus::Degenerate);
    REQUIRE(r.nondegeneracy.witness);
    CHECK(report_from_json(to_json(r)) == r);
}

TEST_CASE("invalid models throw structured errors")
{
    CHECK_THROWS_AS(run("z1+conj(z1"), SyntaxError);
    try {
        run("Re(z1^2)");
        FAIL("expected an error");
    } catch (const Error &e) {
        CHECK(e.kind() == ErrorKind::HasPluriharmonicTerms);
    }
}

TEST_CASE("JSON round trip")
{
    for (const char *expr : {"|z1|^2", "Re(z1*conj(z2)^3)", "|z1|^2+|z2|^4", "|z1|^4+Re(z1*conj(z1)^3)"}) {
        CAPTURE(expr);
        auto r = run(expr);
        auto text = to_json(r);
        auto back = report_from_json(text);
        CHECK(back == r);
        CHECK(to_json(back) == text);
    }
    CHECK_THROWS_AS(report_from_json("{"), Error);
    CHECK_THROWS_AS(report_from_json("{\"schema_version\": 99}"), Error);
}

TEST_CASE("single component and stripping")
{
    AnalyzeOptions o;
    o.component = Rational(0);
    auto r = run("|z1|^2", o);
    CHECK(r.status == ReportStatus::ComponentOnly);
    CHECK(r.total_dimension == 2);

    AnalyzeOptions s;
    s.strip_pluriharmonic = true;
    auto r2 = run("x1^2+|z2|^4", s);
    CHECK_FALSE(r2.stripped.is_zero());
    REQUIRE(r2.nc);
    CHECK(r2.nc->kind == NcCase::M2Balanced);
}

TEST_CASE("text rendering")
{
    auto t = to_text(run("Re(z1*conj(z2)^3)"));
    CHECK(t.find("balanced: yes, Lambda' = (1, 1/3)") != std::string::npos);
    CHECK(t.find("chain hypersurface: yes") != std::string::npos);
}
