#include "crsym/embed.hpp"

#include "crsym/errors.hpp"

#include <map>
#include <set>

namespace crsym {

std::vector<Hyperquadric::PairTerm> Hyperquadric::pairing() const
{
    std::vector<PairTerm> out;
    for (const auto &[m, c] : form.terms()) {
        int i = -1, j = -1, deg = 0;
        for (int k = 0; k < m.n(); ++k) {
            deg += m.alpha(k) + m.beta(k);
            if (m.alpha(k) == 1)
                i = k;
            if (m.beta(k) == 1)
                j = k;
        }
        if (deg == 2 && i >= 0 && j >= 0)
            out.push_back({i, j, c});
    }
    return out;
}

Matrix<Scalar> Hyperquadric::hermitian_matrix() const
{
    const auto k = static_cast<std::size_t>(zeta_count());
    Matrix<Scalar> H(k, std::vector<Scalar>(k));
    for (const auto &t : pairing())
        H[static_cast<std::size_t>(t.i)][static_cast<std::size_t>(t.j)] = t.c;
    return H;
}

SparsePoly Hyperquadric::defining() const
{
    return imag_part(SparsePoly::variable(zeta_count(), Var::w())) - form;
}

const char *embedding_kind_name(EmbeddingKind k)
{
    switch (k) {
    case EmbeddingKind::Chain:
        return "chain";
    case EmbeddingKind::Balanced:
        return "balanced";
    case EmbeddingKind::NonRigid:
        return "non-rigid";
    }
    return "?";
}

namespace {

SparsePoly zeta_var(int K, int i) { return SparsePoly::variable(K, Var::z(i)); }

// Coefficients with sum c_k images[k] = target, or nullopt.
std::optional<std::vector<Scalar>> combination(const std::vector<SparsePoly> &images,
                                               const SparsePoly &target)
{
    const int k = static_cast<int>(images.size());
    std::map<Monomial, SparseRow<Scalar>, GrlexLess> rows;
    for (int c = 0; c < k; ++c)
        for (const auto &[m, v] : images[static_cast<std::size_t>(c)].terms())
            rows[m].emplace_back(c, v);
    for (const auto &[m, v] : target.terms())
        rows[m].emplace_back(k, v);
    RowReducer<Scalar> red(k + 1, k);
    for (auto &[m, r] : rows)
        if (!red.add_row(std::move(r)))
            return std::nullopt;
    return red.particular_solution();
}

Rational poly_weight(const SparsePoly &p, const WeightVector &lambda)
{
    return p.terms().begin()->first.weighted_degree(lambda);
}

} // namespace

Embedding build_chain_embedding(const ModelHypersurface &M, const VectorField &Y,
                                const ChainDecomposition &D)
{
    auto check = verify_chain(M, Y, D);
    if (!check.ok)
        throw Error(ErrorKind::InvalidChain, check.violations.front());
    const int n = M.n();
    int K = 0;
    for (const auto &cp : D.pairs)
        K += 2 * cp.s * cp.l;

    Embedding E;
    E.kind = EmbeddingKind::Chain;
    E.Y = Y;
    E.Z = VectorField(K, Y.weight);
    E.f.eta = SparsePoly::variable(n, Var::w());
    SparsePoly mixed(K);
    int base = 0;
    for (const auto &cp : D.pairs) {
        // U block then V block, each ordered by (k, i).
        auto u = [&](int k, int i) { return base + k * cp.s + i; };
        auto v = [&](int k, int i) { return base + (cp.l + k) * cp.s + i; };
        for (int k = 0; k < cp.l; ++k)
            for (int i = 0; i < cp.s; ++i)
                E.f.zeta.push_back(cp.U[static_cast<std::size_t>(k)][static_cast<std::size_t>(i)]);
        for (int k = 0; k < cp.l; ++k)
            for (int i = 0; i < cp.s; ++i)
                E.f.zeta.push_back(cp.V[static_cast<std::size_t>(k)][static_cast<std::size_t>(i)]);
        for (int k = 0; k < cp.l; ++k)
            for (int i = 0; i < cp.s; ++i)
                mixed += zeta_var(K, u(k, i)) * conjugate(zeta_var(K, v(cp.l - 1 - k, i)));
        for (int k = 0; k + 1 < cp.l; ++k) {
            const auto &A = cp.A[static_cast<std::size_t>(k)];
            const auto &B = cp.B[static_cast<std::size_t>(k)];
            for (int i = 0; i < cp.s; ++i)
                for (int m = 0; m < cp.s; ++m) {
                    const auto si = static_cast<std::size_t>(i), sm = static_cast<std::size_t>(m);
                    if (!A[si][sm].is_zero())
                        E.Z.F[static_cast<std::size_t>(u(k, i))] += zeta_var(K, u(k + 1, m)) * A[si][sm];
                    if (!B[si][sm].is_zero())
                        E.Z.F[static_cast<std::size_t>(v(k, i))] += zeta_var(K, v(k + 1, m)) * B[si][sm];
                }
        }
        base += 2 * cp.s * cp.l;
    }
    E.Q.K = K + 1;
    E.Q.form = real_part(mixed);
    return E;
}

Embedding build_balanced_embedding(const ModelHypersurface &M, const BalancedCertificate &cert)
{
    const int n = M.n();
    // Holomorphic multiindices of P in grlex order.
    std::set<Monomial, GrlexLess> idx;
    for (const auto &[m, c] : M.P().terms()) {
        Monomial a(n), b(n);
        for (int j = 0; j < n; ++j) {
            a.alpha(j) = m.alpha(j);
            b.alpha(j) = m.beta(j);
        }
        idx.insert(a);
        idx.insert(b);
    }
    const std::vector<Monomial> mono(idx.begin(), idx.end());
    const int R = static_cast<int>(mono.size());
    std::map<Monomial, int, GrlexLess> pos;
    for (int a = 0; a < R; ++a)
        pos[mono[static_cast<std::size_t>(a)]] = a;

    // P = Re sum_{a <= b} At_ab m_a conj(m_b) with At_ab = 2 C_ab (a < b), C_aa on the diagonal.
    Matrix<Scalar> At(static_cast<std::size_t>(R), std::vector<Scalar>(static_cast<std::size_t>(R)));
    for (const auto &[m, c] : M.P().terms()) {
        Monomial a(n), b(n);
        for (int j = 0; j < n; ++j) {
            a.alpha(j) = m.alpha(j);
            b.alpha(j) = m.beta(j);
        }
        const int ia = pos.at(a), ib = pos.at(b);
        if (ia < ib)
            At[static_cast<std::size_t>(ia)][static_cast<std::size_t>(ib)] = c * Scalar(2);
        else if (ia == ib)
            At[static_cast<std::size_t>(ia)][static_cast<std::size_t>(ib)] = c;
    }

    const int K = 2 * R;
    Embedding E;
    E.kind = EmbeddingKind::Balanced;
    E.f.eta = SparsePoly::variable(n, Var::w());
    for (int a = 0; a < R; ++a)
        E.f.zeta.push_back(SparsePoly::monomial(mono[static_cast<std::size_t>(a)]));
    SparsePoly mixed(K);
    for (int a = 0; a < R; ++a) {
        SparsePoly zp(n);
        for (int b = 0; b < R; ++b) {
            const Scalar &c = At[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)];
            if (!c.is_zero())
                zp.add_term(mono[static_cast<std::size_t>(b)], c.conj());
        }
        E.f.zeta.push_back(std::move(zp));
        mixed += zeta_var(K, a) * conjugate(zeta_var(K, R + a));
    }
    E.Q.K = K + 1;
    E.Q.form = real_part(mixed);

    const SparsePoly w = SparsePoly::variable(n, Var::w());
    E.Y = VectorField(n, Rational(1));
    for (int j = 0; j < n; ++j)
        E.Y.F[static_cast<std::size_t>(j)] = cert.Y0.F[static_cast<std::size_t>(j)] * w;
    E.Y.G = w * w;
    const SparsePoly eta = SparsePoly::variable(K, Var::w());
    E.Z = VectorField(K, Rational(1));
    for (int i = 0; i < K; ++i)
        E.Z.F[static_cast<std::size_t>(i)] = eta * zeta_var(K, i);
    E.Z.G = eta * eta;
    return E;
}

std::optional<Embedding> build_nc_embedding(const ModelHypersurface &M, const NcReport &R)
{
    if (!R.canonicalY || !R.normalized_P || R.l < 0 || R.expansion.empty())
        return std::nullopt;
    const int n = M.n();
    const auto &lambda = M.lambda();
    const SparsePoly &P = *R.normalized_P;
    const VectorField &Y = *R.canonicalY;

    // zeta family: z_l, Q_1, and both sides of a minimal factorization of the mixed part of P_0.
    std::vector<SparsePoly> cands{SparsePoly::variable(n, Var::z(R.l))};
    if (R.Q1)
        cands.push_back(*R.Q1);
    auto fact = full_factorization(split_pluriharmonic(R.expansion[0]).second, lambda);
    for (std::size_t r = 0; r < fact.Q.size(); ++r) {
        cands.push_back(fact.Q[r]);
        cands.push_back(fact.Qhat[r]);
    }
    std::vector<SparsePoly> family;
    for (const auto &c : cands) {
        if (c.is_zero())
            continue;
        auto mult = combination(family, c);
        if (!mult)
            family.push_back(c);
    }
    const int K = static_cast<int>(family.size());
    std::vector<Rational> wts;
    for (const auto &p : family)
        wts.push_back(poly_weight(p, lambda));
    const auto zw = WeightVector::unchecked(wts);

    Embedding E;
    E.kind = EmbeddingKind::NonRigid;
    E.Y = Y;
    E.f.zeta = family;
    E.f.eta = SparsePoly::variable(n, Var::w());

    // Quadratic form: every zeta/conj(zeta) monomial of degree <= 2 and weight 1.
    std::vector<SparsePoly> terms, images;
    for (const auto &a : holomorphic_monomials(zw, Rational(1), false)) {
        for (const auto &b : holomorphic_monomials(zw, Rational(1), false)) {
            if (a.total_degree() + b.total_degree() > 2 || a.total_degree() + b.total_degree() == 0)
                continue;
            if (a.weighted_degree(zw) + b.weighted_degree(zw) != 1)
                continue;
            SparsePoly t = SparsePoly::monomial(a) * conjugate(SparsePoly::monomial(b));
            images.push_back(compose(t, E.f.zeta, n));
            terms.push_back(std::move(t));
        }
    }
    auto coef = combination(images, P);
    if (!coef)
        return std::nullopt;
    SparsePoly form(K);
    for (std::size_t k = 0; k < terms.size(); ++k)
        if (!(*coef)[k].is_zero())
            form += terms[k] * (*coef)[k];
    E.Q.K = K + 1;
    E.Q.form = real_part(form);

    // Z componentwise: Y(f_i) as a polynomial in (zeta, eta) of the matching weight.
    E.Z = VectorField(K, Y.weight);
    auto push = [&](const SparsePoly &target, const Rational &weight) -> std::optional<SparsePoly> {
        std::vector<SparsePoly> monos, imgs;
        for (const auto &m : holomorphic_monomials(zw, weight, true)) {
            if (m.weighted_degree(zw) != weight)
                continue;
            monos.push_back(SparsePoly::monomial(m));
            imgs.push_back(compose(monos.back(), E.f.zeta, n, E.f.eta));
        }
        auto c = combination(imgs, target);
        if (!c)
            return std::nullopt;
        SparsePoly out(K);
        for (std::size_t k = 0; k < monos.size(); ++k)
            if (!(*c)[k].is_zero())
                out += monos[k] * (*c)[k];
        return out;
    };
    for (int i = 0; i < K; ++i) {
        auto zi = push(apply(Y, family[static_cast<std::size_t>(i)]), wts[static_cast<std::size_t>(i)] + Y.weight);
        if (!zi)
            return std::nullopt;
        E.Z.F[static_cast<std::size_t>(i)] = *zi;
    }
    auto zeta_eta = push(Y.G, 1 + Y.weight);
    if (!zeta_eta)
        return std::nullopt;
    E.Z.G = *zeta_eta;
    return E;
}

RelatednessCertificate verify_certificate(const SparsePoly &P, const Embedding &E)
{
    RelatednessCertificate cert;
    const int n = P.n();
    const int K = E.Q.zeta_count();
    if (static_cast<int>(E.f.zeta.size()) != K || E.Z.n() != K || E.Y.n() != n) {
        cert.failures.push_back("inconsistent shapes");
        return cert;
    }
    const SparsePoly lhs = compose(E.Q.defining(), E.f.zeta, n, E.f.eta);
    cert.pullback_ok = lhs == imag_part(SparsePoly::variable(n, Var::w())) - P;
    if (!cert.pullback_ok)
        cert.failures.push_back("pullback of the quadric differs from Im w - P");

    cert.related_ok = true;
    for (int i = 0; i < K; ++i) {
        const auto si = static_cast<std::size_t>(i);
        if (apply(E.Y, E.f.zeta[si]) != compose(E.Z.F[si], E.f.zeta, n, E.f.eta)) {
            cert.related_ok = false;
            cert.failures.push_back("component zeta" + std::to_string(i + 1) + " is not related");
        }
    }
    if (apply(E.Y, E.f.eta) != compose(E.Z.G, E.f.zeta, n, E.f.eta)) {
        cert.related_ok = false;
        cert.failures.push_back("component eta is not related");
    }

    cert.tangent_ok = raw_tangency_residual(E.Z, E.Q.form).is_zero();
    if (!cert.tangent_ok)
        cert.failures.push_back("Z is not tangent to the quadric");

    cert.hermitian_rank = matrix_rank(E.Q.hermitian_matrix());
    cert.nondegenerate_ok = cert.hermitian_rank == K;
    if (!cert.nondegenerate_ok)
        cert.failures.push_back("Hermitian form has rank " + std::to_string(cert.hermitian_rank) +
                                " < " + std::to_string(K));
    return cert;
}

} // namespace crsym
