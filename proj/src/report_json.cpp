// JSON form of AnalysisReport. Rationals are strings "p/q"; polynomials carry both a readable
// rendering and their exact term list, which is what the reader uses.

#include "crsym/errors.hpp"
#include "crsym/report.hpp"

#include "json.hpp"

namespace crsym {

using nlohmann::json;

namespace {

json rat(const Rational &q) { return to_string(q); }

Rational rat_of(const json &j)
{
    Rational q(j.get<std::string>());
    q.canonicalize();
    return q;
}

json scalar(const Scalar &s) { return json::array({rat(s.re()), rat(s.im())}); }
Scalar scalar_of(const json &j) { return Scalar(rat_of(j.at(0)), rat_of(j.at(1))); }

json rats(const std::vector<Rational> &v)
{
    json a = json::array();
    for (const auto &q : v)
        a.push_back(rat(q));
    return a;
}

std::vector<Rational> rats_of(const json &j)
{
    std::vector<Rational> v;
    for (const auto &e : j)
        v.push_back(rat_of(e));
    return v;
}

json poly(const SparsePoly &p)
{
    json terms = json::array();
    for (const auto &[m, c] : p.terms())
        terms.push_back({{"e", m.exponents()}, {"c", scalar(c)}});
    return {{"n", p.n()}, {"text", p.is_zero() ? "0" : p.to_string()}, {"terms", terms}};
}

SparsePoly poly_of(const json &j)
{
    const int n = j.at("n").get<int>();
    SparsePoly p(n);
    for (const auto &t : j.at("terms")) {
        Monomial m(n);
        auto e = t.at("e").get<std::vector<int>>();
        if (e.size() != m.exponents().size())
            throw Error(ErrorKind::DimensionMismatch, "monomial exponent vector has the wrong length");
        m.exponents() = e;
        p.add_term(m, scalar_of(t.at("c")));
    }
    return p;
}

json polys(const std::vector<SparsePoly> &v)
{
    json a = json::array();
    for (const auto &p : v)
        a.push_back(poly(p));
    return a;
}

std::vector<SparsePoly> polys_of(const json &j)
{
    std::vector<SparsePoly> v;
    for (const auto &e : j)
        v.push_back(poly_of(e));
    return v;
}

json field(const VectorField &Y)
{
    return {{"weight", rat(Y.weight)}, {"text", Y.to_string()}, {"F", polys(Y.F)}, {"G", poly(Y.G)}};
}

VectorField field_of(const json &j)
{
    VectorField Y;
    Y.weight = rat_of(j.at("weight"));
    Y.F = polys_of(j.at("F"));
    Y.G = poly_of(j.at("G"));
    return Y;
}

json fields(const std::vector<VectorField> &v)
{
    json a = json::array();
    for (const auto &Y : v)
        a.push_back(field(Y));
    return a;
}

std::vector<VectorField> fields_of(const json &j)
{
    std::vector<VectorField> v;
    for (const auto &e : j)
        v.push_back(field_of(e));
    return v;
}

template <typename T, typename F>
json opt(const std::optional<T> &v, F f)
{
    return v ? f(*v) : json(nullptr);
}

template <typename T, typename F>
std::optional<T> opt_of(const json &j, F f)
{
    if (j.is_null())
        return std::nullopt;
    return f(j);
}

json graded(const std::map<Rational, std::vector<VectorField>> &m)
{
    json a = json::array();
    for (const auto &[mu, basis] : m)
        a.push_back({{"weight", rat(mu)}, {"dimension", basis.size()}, {"basis", fields(basis)}});
    return a;
}

std::map<Rational, std::vector<VectorField>> graded_of(const json &j)
{
    std::map<Rational, std::vector<VectorField>> m;
    for (const auto &e : j)
        m.emplace(rat_of(e.at("weight")), fields_of(e.at("basis")));
    return m;
}

json matrix(const Matrix<Scalar> &M)
{
    json a = json::array();
    for (const auto &row : M) {
        json r = json::array();
        for (const auto &c : row)
            r.push_back(scalar(c));
        a.push_back(r);
    }
    return a;
}

Matrix<Scalar> matrix_of(const json &j)
{
    Matrix<Scalar> M;
    for (const auto &row : j) {
        std::vector<Scalar> r;
        for (const auto &c : row)
            r.push_back(scalar_of(c));
        M.push_back(std::move(r));
    }
    return M;
}

json chain_pair(const ChainPair &p)
{
    json U = json::array(), V = json::array(), A = json::array(), B = json::array();
    for (const auto &u : p.U)
        U.push_back(polys(u));
    for (const auto &v : p.V)
        V.push_back(polys(v));
    for (const auto &a : p.A)
        A.push_back(matrix(a));
    for (const auto &b : p.B)
        B.push_back(matrix(b));
    return {{"s", p.s}, {"l", p.l}, {"start_weight", rat(p.start_weight)},
            {"U", U}, {"V", V}, {"A", A}, {"B", B}};
}

ChainPair chain_pair_of(const json &j)
{
    ChainPair p;
    p.s = j.at("s").get<int>();
    p.l = j.at("l").get<int>();
    p.start_weight = rat_of(j.at("start_weight"));
    for (const auto &u : j.at("U"))
        p.U.push_back(polys_of(u));
    for (const auto &v : j.at("V"))
        p.V.push_back(polys_of(v));
    for (const auto &a : j.at("A"))
        p.A.push_back(matrix_of(a));
    for (const auto &b : j.at("B"))
        p.B.push_back(matrix_of(b));
    return p;
}

json balanced(const BalancedCertificate &c)
{
    return {{"lambda_prime", rats(c.lambda_prime)}, {"Y0", field(c.Y0)}};
}

BalancedCertificate balanced_of(const json &j)
{
    return {rats_of(j.at("lambda_prime")), field_of(j.at("Y0"))};
}

json change(const CoordinateChange &c)
{
    return {{"z", polys(c.z)}, {"w", poly(c.w)}, {"steps", c.steps}};
}

CoordinateChange change_of(const json &j)
{
    CoordinateChange c;
    c.z = polys_of(j.at("z"));
    c.w = poly_of(j.at("w"));
    c.steps = j.at("steps").get<std::vector<std::string>>();
    return c;
}

NcCase nc_case_of(const std::string &s)
{
    for (auto c : {NcCase::M2Balanced, NcCase::M1Canonical, NcCase::Unsupported})
        if (s == nc_case_name(c))
            return c;
    throw Error(ErrorKind::SyntaxError, "unknown case '" + s + "'");
}

json nc(const NcReport &r)
{
    json conds = json::array();
    for (const auto &c : r.conditions)
        conds.push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
    return {{"case", nc_case_name(r.kind)},
            {"reason", r.reason},
            {"l", r.l},
            {"m", r.m},
            {"shift", opt(r.shift, field)},
            {"change", opt(r.change, change)},
            {"normalized_P", opt(r.normalized_P, poly)},
            {"expansion", polys(r.expansion)},
            {"canonical_field", opt(r.canonicalY, field)},
            {"p0_certificate", opt(r.p0_certificate, balanced)},
            {"Q1", opt(r.Q1, poly)},
            {"family", polys(r.family)},
            {"chosen_subset", r.chosen_subset},
            {"a", opt(r.a, scalar)},
            {"b", opt(r.b, scalar)},
            {"conditions", conds}};
}

NcReport nc_of(const json &j)
{
    NcReport r;
    r.kind = nc_case_of(j.at("case").get<std::string>());
    r.reason = j.at("reason").get<std::string>();
    r.l = j.at("l").get<int>();
    r.m = j.at("m").get<int>();
    r.shift = opt_of<VectorField>(j.at("shift"), field_of);
    r.change = opt_of<CoordinateChange>(j.at("change"), change_of);
    r.normalized_P = opt_of<SparsePoly>(j.at("normalized_P"), poly_of);
    r.expansion = polys_of(j.at("expansion"));
    r.canonicalY = opt_of<VectorField>(j.at("canonical_field"), field_of);
    r.p0_certificate = opt_of<BalancedCertificate>(j.at("p0_certificate"), balanced_of);
    r.Q1 = opt_of<SparsePoly>(j.at("Q1"), poly_of);
    r.family = polys_of(j.at("family"));
    r.chosen_subset = j.at("chosen_subset").get<std::vector<int>>();
    r.a = opt_of<Scalar>(j.at("a"), scalar_of);
    r.b = opt_of<Scalar>(j.at("b"), scalar_of);
    for (const auto &c : j.at("conditions"))
        r.conditions.push_back({c.at("name").get<std::string>(), c.at("passed").get<bool>(),
                                c.at("detail").get<std::string>()});
    return r;
}

EmbeddingKind embedding_kind_of(const std::string &s)
{
    for (auto k : {EmbeddingKind::Chain, EmbeddingKind::Balanced, EmbeddingKind::NonRigid})
        if (s == embedding_kind_name(k))
            return k;
    throw Error(ErrorKind::SyntaxError, "unknown embedding kind '" + s + "'");
}

json embedding(const EmbeddingReport &e)
{
    const auto &E = e.embedding;
    const auto &c = e.certificate;
    return {{"source", e.source},
            {"kind", embedding_kind_name(E.kind)},
            {"K", E.Q.K},
            {"form", poly(E.Q.form)},
            {"zeta", polys(E.f.zeta)},
            {"eta", poly(E.f.eta)},
            {"Y", field(E.Y)},
            {"Z", field(E.Z)},
            {"certificate",
             {{"pullback_ok", c.pullback_ok},
              {"related_ok", c.related_ok},
              {"tangent_ok", c.tangent_ok},
              {"nondegenerate_ok", c.nondegenerate_ok},
              {"hermitian_rank", c.hermitian_rank},
              {"failures", c.failures}}}};
}

EmbeddingReport embedding_of(const json &j)
{
    EmbeddingReport e;
    e.source = j.at("source").get<std::string>();
    auto &E = e.embedding;
    E.kind = embedding_kind_of(j.at("kind").get<std::string>());
    E.Q.K = j.at("K").get<int>();
    E.Q.form = poly_of(j.at("form"));
    E.f.zeta = polys_of(j.at("zeta"));
    E.f.eta = poly_of(j.at("eta"));
    E.Y = field_of(j.at("Y"));
    E.Z = field_of(j.at("Z"));
    const auto &c = j.at("certificate");
    e.certificate.pullback_ok = c.at("pullback_ok").get<bool>();
    e.certificate.related_ok = c.at("related_ok").get<bool>();
    e.certificate.tangent_ok = c.at("tangent_ok").get<bool>();
    e.certificate.nondegenerate_ok = c.at("nondegenerate_ok").get<bool>();
    e.certificate.hermitian_rank = c.at("hermitian_rank").get<int>();
    e.certificate.failures = c.at("failures").get<std::vector<std::string>>();
    return e;
}

ReportStatus status_of(const std::string &s)
{
    for (auto st : {ReportStatus::Complete, ReportStatus::Degenerate, ReportStatus::ComponentOnly})
        if (s == report_status_name(st))
            return st;
    throw Error(ErrorKind::SyntaxError, "unknown status '" + s + "'");
}

} // namespace

std::string to_json(const AnalysisReport &r, int indent)
{
    recheck_fields(r);
    json candidates = json::array();
    for (const auto &c : r.weight_candidates)
        candidates.push_back(rats(c));
    json chains = json::array();
    for (const auto &c : r.chains) {
        json pairs = json::array();
        for (const auto &p : c.pairs)
            pairs.push_back(chain_pair(p));
        chains.push_back({{"Y", field(c.Y)}, {"pairs", pairs}, {"verified", c.verified},
                          {"violations", c.violations}});
    }
    json embeddings = json::array();
    for (const auto &e : r.embeddings)
        embeddings.push_back(embedding(e));

    json j = {
        {"schema_version", r.schema_version},
        {"input", r.input},
        {"n", r.n},
        {"P", poly(r.P)},
        {"stripped", poly(r.stripped)},
        {"weights", rats(r.weights)},
        {"weights_inferred", r.weights_inferred},
        {"weight_candidates", candidates},
        {"status", report_status_name(r.status)},
        {"nondegeneracy",
         {{"degenerate", r.nondegeneracy.degenerate},
          {"bound", rat(r.nondegeneracy.bound)},
          {"witness", opt(r.nondegeneracy.witness, field)}}},
        {"components", graded(r.components)},
        {"g_c", graded(r.gc)},
        {"g_nc", graded(r.gnc)},
        {"total_dimension", r.total_dimension},
        {"g1_dimension", r.g1_dimension},
        {"balanced", opt(r.balanced, balanced)},
        {"balanced_solvers_agree", r.balanced_solvers_agree},
        {"chains", chains},
        {"nc", opt(r.nc, nc)},
        {"embeddings", embeddings},
        {"is_chain", r.is_chain},
        {"one_jet_determined", r.one_jet_determined},
        {"verdict", r.verdict},
    };
    return j.dump(indent);
}

AnalysisReport report_from_json(const std::string &text)
{
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error &e) {
        throw Error(ErrorKind::SyntaxError, e.what());
    }
    try {
        AnalysisReport r;
        r.schema_version = j.at("schema_version").get<int>();
        if (r.schema_version != kReportSchemaVersion)
            throw Error(ErrorKind::SyntaxError,
                        "unsupported schema version " + std::to_string(r.schema_version));
        r.input = j.at("input").get<std::string>();
        r.n = j.at("n").get<int>();
        r.P = poly_of(j.at("P"));
        r.stripped = poly_of(j.at("stripped"));
        r.weights = rats_of(j.at("weights"));
        r.weights_inferred = j.at("weights_inferred").get<bool>();
        for (const auto &c : j.at("weight_candidates"))
            r.weight_candidates.push_back(rats_of(c));
        r.status = status_of(j.at("status").get<std::string>());
        const auto &nd = j.at("nondegeneracy");
        r.nondegeneracy.degenerate = nd.at("degenerate").get<bool>();
        r.nondegeneracy.bound = rat_of(nd.at("bound"));
        r.nondegeneracy.witness = opt_of<VectorField>(nd.at("witness"), field_of);
        r.components = graded_of(j.at("components"));
        r.gc = graded_of(j.at("g_c"));
        r.gnc = graded_of(j.at("g_nc"));
        r.total_dimension = j.at("total_dimension").get<int>();
        r.g1_dimension = j.at("g1_dimension").get<int>();
        r.balanced = opt_of<BalancedCertificate>(j.at("balanced"), balanced_of);
        r.balanced_solvers_agree = j.at("balanced_solvers_agree").get<bool>();
        for (const auto &c : j.at("chains")) {
            ChainReport cr;
            cr.Y = field_of(c.at("Y"));
            for (const auto &p : c.at("pairs"))
                cr.pairs.push_back(chain_pair_of(p));
            cr.verified = c.at("verified").get<bool>();
            cr.violations = c.at("violations").get<std::vector<std::string>>();
            r.chains.push_back(std::move(cr));
        }
        r.nc = opt_of<NcReport>(j.at("nc"), nc_of);
        for (const auto &e : j.at("embeddings"))
            r.embeddings.push_back(embedding_of(e));
        r.is_chain = j.at("is_chain").get<bool>();
        r.one_jet_determined = j.at("one_jet_determined").get<bool>();
        r.verdict = j.at("verdict").get<std::string>();
        return r;
    } catch (const json::exception &e) {
        throw Error(ErrorKind::SyntaxError, std::string("malformed report: ") + e.what());
    }
}

} // namespace crsym
