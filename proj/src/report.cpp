#include "crsym/report.hpp"

#include "crsym/errors.hpp"

#include <sstream>

namespace crsym {

const char *report_status_name(ReportStatus s)
{
    switch (s) {
    case ReportStatus::Complete:
        return "complete";
    case ReportStatus::Degenerate:
        return "degenerate";
    case ReportStatus::ComponentOnly:
        return "component";
    }
    return "?";
}

namespace {

std::map<Rational, std::vector<VectorField>> bases(const std::map<Rational, GradedComponent> &m)
{
    std::map<Rational, std::vector<VectorField>> out;
    for (const auto &[mu, c] : m)
        out.emplace(mu, c.basis);
    return out;
}

void require_tangent(const VectorField &Y, const SparsePoly &P, const std::string &what)
{
    if (!raw_tangency_residual(Y, P).is_zero())
        throw Error(ErrorKind::InternalRankDrop, what + " has a nonzero tangency residual");
}

} // namespace

AnalysisReport analyze(const ModelSource &src, const AnalyzeOptions &opts)
{
    ModelSource source = src;
    if (opts.weights)
        source.declared_weights = opts.weights;
    ParsedModel parsed = parse_model(source);

    AnalysisReport r;
    r.input = src.text;
    r.n = parsed.P.n();
    r.P = parsed.P;
    r.stripped = SparsePoly(r.n);
    if (opts.strip_pluriharmonic) {
        auto [rest, harm] = strip_pluriharmonic(parsed.P);
        r.P = rest;
        r.stripped = harm;
    }

    WeightVector lambda;
    if (parsed.weights) {
        lambda = *parsed.weights;
    } else {
        auto cands = infer_weights(r.P);
        if (cands.empty())
            throw Error(ErrorKind::NotHomogeneous, "no admissible weight vector makes P homogeneous");
        for (const auto &c : cands)
            r.weight_candidates.push_back(c.values());
        lambda = cands.front();
        r.weights_inferred = true;
    }
    r.weights = lambda.values();
    const ModelHypersurface M = validate_model(r.P, lambda);

    const Rational bound = opts.max_degeneracy_weight.value_or(default_degeneracy_bound(M));
    r.nondegeneracy = is_holomorphically_nondegenerate(M, bound);
    if (r.nondegeneracy.degenerate) {
        r.status = ReportStatus::Degenerate;
        r.verdict = "holomorphically degenerate";
        recheck_fields(r);
        return r;
    }

    if (opts.component) {
        auto c = graded_component(M, *opts.component);
        if (!c.basis.empty())
            r.components.emplace(*opts.component, c.basis);
        r.total_dimension = c.dimension();
        r.status = ReportStatus::ComponentOnly;
        r.verdict = "single component";
        recheck_fields(r);
        return r;
    }

    DecompositionOptions dopts;
    dopts.check_degeneracy = false;
    dopts.threads = opts.threads;
    const AutDecomposition D = full_decomposition(M, dopts);
    r.components = bases(D.components);
    r.gc = bases(D.gc);
    r.gnc = bases(D.gnc);
    r.total_dimension = D.total_dimension();
    r.g1_dimension = D.g1_dimension();

    r.balanced = balanced_test(M);
    auto diag = solve_reproducing(M.P(), SparsePoly::constant(r.n, Scalar(1)), lambda, true);
    r.balanced_solvers_agree = r.balanced.has_value() == diag.has_value();

    for (const auto &[mu, comp] : D.gc)
        for (const auto &Y : comp.basis) {
            ChainReport cr;
            cr.Y = Y;
            auto dec = chain_decomposition(M, Y);
            auto check = verify_chain(M, Y, dec);
            cr.pairs = std::move(dec.pairs);
            cr.verified = check.ok;
            cr.violations = check.violations;
            r.chains.push_back(std::move(cr));
        }
    r.is_chain = !r.chains.empty();
    for (const auto &c : r.chains)
        r.is_chain = r.is_chain && c.verified;

    r.nc = nc_analysis(M, D);

    if (!opts.skip_embedding) {
        if (r.balanced) {
            auto E = build_balanced_embedding(M, *r.balanced);
            r.embeddings.push_back({"balanced", E, verify_certificate(M.P(), E)});
        }
        for (std::size_t k = 0; k < r.chains.size(); ++k) {
            const auto &c = r.chains[k];
            if (!c.verified)
                continue;
            auto E = build_chain_embedding(M, c.Y, ChainDecomposition{c.pairs, M.P()});
            r.embeddings.push_back({"chain " + std::to_string(k + 1), E, verify_certificate(M.P(), E)});
        }
        if (auto E = build_nc_embedding(M, *r.nc))
            r.embeddings.push_back({"non-rigid", *E, verify_certificate(*r.nc->normalized_P, *E)});
    }

    r.one_jet_determined = !r.balanced && r.gc.empty();
    if (r.one_jet_determined)
        r.verdict = "automorphisms determined by 1-jets";
    else if (r.balanced && r.is_chain)
        r.verdict = "balanced chain hypersurface";
    else if (r.balanced)
        r.verdict = "balanced";
    else
        r.verdict = "chain hypersurface";
    recheck_fields(r);
    return r;
}

void recheck_fields(const AnalysisReport &r)
{
    for (const auto *group : {&r.components, &r.gc, &r.gnc})
        for (const auto &[mu, basis] : *group)
            for (const auto &Y : basis)
                require_tangent(Y, r.P, "field of weight " + to_string(mu));
    if (r.nondegeneracy.witness)
        require_tangent(*r.nondegeneracy.witness, r.P, "degeneracy witness");
    for (const auto &c : r.chains)
        require_tangent(c.Y, r.P, "chain field");
    if (r.nc) {
        if (r.nc->shift)
            require_tangent(*r.nc->shift, r.P, "shift");
        if (r.nc->canonicalY && r.nc->normalized_P)
            require_tangent(*r.nc->canonicalY, *r.nc->normalized_P, "canonical field");
    }
    for (const auto &e : r.embeddings) {
        const bool nonrigid = e.embedding.kind == EmbeddingKind::NonRigid;
        const SparsePoly &P = nonrigid && r.nc && r.nc->normalized_P ? *r.nc->normalized_P : r.P;
        require_tangent(e.embedding.Y, P, "embedded field (" + e.source + ")");
        require_tangent(e.embedding.Z, e.embedding.Q.form, "pushforward field (" + e.source + ")");
    }
}

namespace {

std::string algebra_name(const Rational &mu)
{
    if (mu == 0)
        return "g_0";
    return "g_{" + to_string(mu) + "}";
}

std::string weights_string(const std::vector<Rational> &w)
{
    std::string s = "(";
    for (std::size_t k = 0; k < w.size(); ++k)
        s += (k ? ", " : "") + to_string(w[k]);
    return s + ")";
}

void list_fields(std::ostringstream &os, const std::vector<VectorField> &basis, const char *indent)
{
    for (const auto &Y : basis)
        os << indent << Y.to_string() << "\n";
}

} // namespace

std::string to_text(const AnalysisReport &r)
{
    std::ostringstream os;
    os << "model: Im w = " << r.P.to_string() << "\n";
    if (!r.stripped.is_zero())
        os << "stripped pluriharmonic terms: " << r.stripped.to_string() << "\n";
    os << "weights: " << weights_string(r.weights);
    if (r.weights_inferred) {
        os << " (inferred; candidates";
        for (const auto &c : r.weight_candidates)
            os << " " << weights_string(c);
        os << ")";
    }
    os << "\n";
    if (r.status == ReportStatus::Degenerate) {
        os << "holomorphically degenerate: tangent field " << r.nondegeneracy.witness->to_string() << "\n";
        os << "verdict: " << r.verdict << "\n";
        return os.str();
    }
    os << "holomorphically nondegenerate (searched field weights up to " << to_string(r.nondegeneracy.bound)
       << ")\n";

    os << "graded components:\n";
    for (const auto &[mu, basis] : r.components) {
        os << "  " << algebra_name(mu) << ": dim " << basis.size();
        auto c = r.gc.find(mu), nc = r.gnc.find(mu);
        if (c != r.gc.end() || nc != r.gnc.end())
            os << " (g_c " << (c == r.gc.end() ? 0 : c->second.size()) << ", g_nc "
               << (nc == r.gnc.end() ? 0 : nc->second.size()) << ")";
        os << "\n";
        list_fields(os, basis, "    ");
    }
    os << "total real dimension: " << r.total_dimension << "\n";
    if (r.status == ReportStatus::ComponentOnly) {
        os << "verdict: " << r.verdict << "\n";
        return os.str();
    }

    int gc = 0, gnc = 0;
    for (const auto &[mu, b] : r.gc)
        gc += static_cast<int>(b.size());
    for (const auto &[mu, b] : r.gnc)
        gnc += static_cast<int>(b.size());
    os << "dim g_c = " << gc << ", dim g_nc = " << gnc << ", dim g_1 = " << r.g1_dimension << "\n";

    if (r.balanced)
        os << "balanced: yes, Lambda' = " << weights_string(r.balanced->lambda_prime) << "\n";
    else
        os << "balanced: no\n";
    os << "chain hypersurface: " << (r.is_chain ? "yes" : "no") << "\n";
    for (const auto &c : r.chains) {
        os << "  chains for Y = " << c.Y.to_string() << ":";
        for (const auto &p : c.pairs)
            os << " (s=" << p.s << ", l=" << p.l << ")";
        os << (c.verified ? " verified" : " NOT verified") << "\n";
        for (const auto &v : c.violations)
            os << "    violation: " << v << "\n";
    }

    if (r.nc) {
        const auto &nc = *r.nc;
        os << "w-dependent symmetries: " << nc_case_name(nc.kind);
        if (nc.l >= 0)
            os << ", l = " << nc.l + 1;
        if (nc.m >= 0)
            os << ", m = " << nc.m;
        if (!nc.reason.empty())
            os << " (" << nc.reason << ")";
        os << "\n";
        if (nc.normalized_P)
            os << "  normalized model: Im w = " << nc.normalized_P->to_string() << "\n";
        if (nc.canonicalY)
            os << "  canonical field: " << nc.canonicalY->to_string() << "\n";
        for (const auto &c : nc.conditions)
            os << "  [" << (c.passed ? "pass" : "fail") << "] " << c.name
               << (c.detail.empty() ? "" : ": " + c.detail) << "\n";
    }

    if (!r.embeddings.empty())
        os << "hyperquadric embeddings:\n";
    for (const auto &e : r.embeddings) {
        const auto &c = e.certificate;
        os << "  " << e.source << ": K = " << e.embedding.Q.K << ", pullback " << (c.pullback_ok ? "ok" : "FAILED")
           << ", f-related " << (c.related_ok ? "ok" : "FAILED") << ", Z tangent "
           << (c.tangent_ok ? "ok" : "FAILED") << ", Hermitian rank " << c.hermitian_rank << "\n";
    }
    os << "verdict: " << r.verdict << "\n";
    return os.str();
}

} // namespace crsym
