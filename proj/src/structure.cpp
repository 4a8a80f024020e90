#include "crsym/structure.hpp"

#include "crsym/errors.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace crsym {

namespace {

Monomial holomorphic_part(const Monomial &m)
{
    Monomial h(m.n());
    for (int j = 0; j < m.n(); ++j)
        h.alpha(j) = m.alpha(j);
    return h;
}

Monomial antiholomorphic_part_as_holomorphic(const Monomial &m)
{
    Monomial h(m.n());
    for (int j = 0; j < m.n(); ++j)
        h.alpha(j) = m.beta(j);
    return h;
}

} // namespace

std::optional<BalancedCertificate> balanced_test(const SparsePoly &P)
{
    const int n = P.n();
    if (P.is_zero())
        return std::nullopt;
    std::set<std::vector<int>> multi;
    for (const auto &[m, c] : P.terms()) {
        std::vector<int> a(static_cast<std::size_t>(n)), b(static_cast<std::size_t>(n));
        for (int j = 0; j < n; ++j) {
            a[static_cast<std::size_t>(j)] = m.alpha(j);
            b[static_cast<std::size_t>(j)] = m.beta(j);
        }
        multi.insert(a);
        multi.insert(b);
    }
    RowReducer<Rational> red(n + 1, n);
    for (const auto &a : multi) {
        SparseRow<Rational> row;
        for (int j = 0; j < n; ++j)
            if (a[static_cast<std::size_t>(j)] != 0)
                row.emplace_back(j, Rational(a[static_cast<std::size_t>(j)]));
        row.emplace_back(n, Rational(1));
        if (!red.add_row(std::move(row)))
            return std::nullopt;
    }
    auto x = red.particular_solution();
    if (!x)
        return std::nullopt;
    BalancedCertificate cert;
    cert.lambda_prime = *x;
    cert.Y0 = VectorField(n, Rational(0));
    for (int j = 0; j < n; ++j)
        cert.Y0.F[static_cast<std::size_t>(j)] =
            SparsePoly::variable(n, Var::z(j)) * Scalar(cert.lambda_prime[static_cast<std::size_t>(j)]);
    if (apply(cert.Y0, P) != P)
        throw Error(ErrorKind::InternalRankDrop, "balanced field does not reproduce P");
    return cert;
}

std::optional<BalancedCertificate> balanced_test(const ModelHypersurface &M)
{
    return balanced_test(M.P());
}

std::optional<VectorField> solve_reproducing(const SparsePoly &R, const SparsePoly &S,
                                             const WeightVector &lambda, bool diagonal_only)
{
    const int n = R.n();
    if (!S.is_holomorphic_type() || !S.is_w_free())
        throw Error(ErrorKind::InvalidModelPolynomial, "S must be holomorphic and w-free");
    Rational nu = 0;
    if (!S.is_zero()) {
        auto parts = weighted_components(S, lambda);
        if (parts.size() != 1)
            throw Error(ErrorKind::NotHomogeneous, "S is not weighted homogeneous");
        nu = parts.front().first;
    }
    // Unknown columns: (slot, holomorphic coefficient polynomial).
    std::vector<std::pair<int, SparsePoly>> unknowns;
    for (int j = 0; j < n; ++j) {
        if (diagonal_only) {
            unknowns.emplace_back(j, S * SparsePoly::variable(n, Var::z(j)));
            continue;
        }
        for (const auto &m : holomorphic_monomials(lambda, nu + lambda[j], false))
            if (m.weighted_degree(lambda) == nu + lambda[j])
                unknowns.emplace_back(j, SparsePoly::monomial(m));
    }
    const int k = static_cast<int>(unknowns.size());
    std::map<Monomial, SparseRow<Scalar>, GrlexLess> eqs;
    for (int c = 0; c < k; ++c) {
        const auto &[j, coef] = unknowns[static_cast<std::size_t>(c)];
        SparsePoly img = coef * partial(R, Var::z(j));
        for (const auto &[m, v] : img.terms())
            eqs[m].emplace_back(c, v);
    }
    const SparsePoly SR = S * R;
    for (const auto &[m, v] : SR.terms())
        eqs[m].emplace_back(k, v);
    RowReducer<Scalar> red(k + 1, k);
    for (auto &[m, row] : eqs)
        if (!red.add_row(std::move(row)))
            return std::nullopt;
    auto x = red.particular_solution();
    if (!x)
        return std::nullopt;
    VectorField Z(n, nu);
    for (int c = 0; c < k; ++c) {
        const auto &v = (*x)[static_cast<std::size_t>(c)];
        if (v.is_zero())
            continue;
        const auto &[j, coef] = unknowns[static_cast<std::size_t>(c)];
        Z.F[static_cast<std::size_t>(j)] += coef * v;
    }
    if (apply(Z, R) != S * R)
        throw Error(ErrorKind::InternalRankDrop, "reproducing field check failed");
    return Z;
}

LemtubResult lemtub_coefficients(int m)
{
    if (m < 1)
        throw Error(ErrorKind::DimensionMismatch, "m must be positive");
    const int d = 2 * m - 1;
    auto binom = [](int a, int b) {
        mpz_class r;
        mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(a), static_cast<unsigned long>(b));
        return Rational(r);
    };
    auto pow2 = [](int e) {
        mpz_class r = 1;
        r <<= static_cast<unsigned long>(e);
        return Rational(r);
    };
    // Coefficient of z^(d-k) conj(z)^k for k < m:
    //   sum_{j >= k} alpha_j C(j, k) / 2^(j+1) = C(d, k) / 2^d.
    LemtubResult out;
    out.alpha.assign(static_cast<std::size_t>(m), Scalar(0));
    out.nonsingular = true;
    for (int k = m - 1; k >= 0; --k) {
        Rational diag = binom(k, k) / pow2(k + 1);
        if (sgn(diag) == 0) {
            out.nonsingular = false;
            return out;
        }
        Scalar rhs(binom(d, k) / pow2(d));
        for (int j = k + 1; j < m; ++j)
            rhs -= out.alpha[static_cast<std::size_t>(j)] * Scalar(binom(j, k) / pow2(j + 1));
        out.alpha[static_cast<std::size_t>(k)] = rhs * Scalar(1 / diag);
    }
    SparsePoly z = SparsePoly::variable(1, Var::z(0));
    SparsePoly x = real_part(z);
    SparsePoly rhs(1);
    for (int j = 0; j < m; ++j)
        rhs += x.pow(j) * real_part(z.pow(d - j) * out.alpha[static_cast<std::size_t>(j)]);
    out.verified = (x.pow(d) - rhs).is_zero();
    return out;
}

Factorization minimal_factorization(const SparsePoly &Pc, const WeightVector &lambda)
{
    Factorization out;
    if (Pc.is_zero())
        return out;
    const int n = Pc.n();
    std::optional<Rational> c;
    std::map<Monomial, int, GrlexLess> rows, cols;
    for (const auto &[m, v] : Pc.terms()) {
        if (m.p() || m.q() || m.l())
            throw Error(ErrorKind::NotBihomogeneous, "component depends on w");
        Rational h = m.holomorphic_weight(lambda);
        if (c && *c != h)
            throw Error(ErrorKind::NotBihomogeneous,
                        "holomorphic weights " + to_string(*c) + " and " + to_string(h));
        c = h;
        rows.emplace(holomorphic_part(m), 0);
        cols.emplace(antiholomorphic_part_as_holomorphic(m), 0);
    }
    int idx = 0;
    for (auto &[m, i] : rows)
        i = idx++;
    idx = 0;
    for (auto &[m, i] : cols)
        i = idx++;
    const int nr = static_cast<int>(rows.size()), nc = static_cast<int>(cols.size());
    Matrix<Scalar> C(static_cast<std::size_t>(nr), std::vector<Scalar>(static_cast<std::size_t>(nc)));
    for (const auto &[m, v] : Pc.terms())
        C[static_cast<std::size_t>(rows.at(holomorphic_part(m)))]
         [static_cast<std::size_t>(cols.at(antiholomorphic_part_as_holomorphic(m)))] = v;
    auto rf = rank_factorize(C, nc);
    std::vector<Monomial> row_mono(static_cast<std::size_t>(nr)), col_mono(static_cast<std::size_t>(nc));
    for (const auto &[m, i] : rows)
        row_mono[static_cast<std::size_t>(i)] = m;
    for (const auto &[m, i] : cols)
        col_mono[static_cast<std::size_t>(i)] = m;
    for (std::size_t r = 0; r < rf.pivot_columns.size(); ++r) {
        SparsePoly q(n), qh(n);
        const int pc = rf.pivot_columns[r];
        for (int a = 0; a < nr; ++a)
            q.add_term(row_mono[static_cast<std::size_t>(a)],
                       C[static_cast<std::size_t>(a)][static_cast<std::size_t>(pc)]);
        for (int b = 0; b < nc; ++b)
            qh.add_term(col_mono[static_cast<std::size_t>(b)],
                        rf.rref[r][static_cast<std::size_t>(b)].conj());
        out.Q.push_back(std::move(q));
        out.Qhat.push_back(std::move(qh));
    }
    SparsePoly back(n);
    for (std::size_t r = 0; r < out.Q.size(); ++r)
        back += out.Q[r] * conjugate(out.Qhat[r]);
    if (back != Pc)
        throw Error(ErrorKind::InternalRankDrop, "factorization does not reproduce the component");
    return out;
}

Factorization full_factorization(const SparsePoly &P, const WeightVector &lambda)
{
    Factorization out;
    for (const auto &[c, part] : holo_weight_expansion(P, lambda)) {
        auto f = minimal_factorization(part, lambda);
        out.Q.insert(out.Q.end(), f.Q.begin(), f.Q.end());
        out.Qhat.insert(out.Qhat.end(), f.Qhat.begin(), f.Qhat.end());
    }
    return out;
}

namespace {

SparsePoly poly_determinant(const std::vector<std::vector<SparsePoly>> &m, int n)
{
    const std::size_t k = m.size();
    if (k == 0)
        return SparsePoly::constant(n, Scalar(1));
    if (k == 1)
        return m[0][0];
    SparsePoly det(n);
    for (std::size_t c = 0; c < k; ++c) {
        if (m[0][c].is_zero())
            continue;
        std::vector<std::vector<SparsePoly>> minor;
        for (std::size_t r = 1; r < k; ++r) {
            std::vector<SparsePoly> row;
            for (std::size_t cc = 0; cc < k; ++cc)
                if (cc != c)
                    row.push_back(m[r][cc]);
            minor.push_back(std::move(row));
        }
        SparsePoly t = m[0][c] * poly_determinant(minor, n);
        det += (c % 2 == 0) ? t : -t;
    }
    return det;
}

std::vector<std::vector<SparsePoly>> jacobian_matrix(const std::vector<SparsePoly> &R,
                                                     const std::vector<int> &vars)
{
    if (R.size() != vars.size())
        throw Error(ErrorKind::DimensionMismatch, std::to_string(R.size()) + " functions, " +
                                                      std::to_string(vars.size()) + " variables");
    std::vector<std::vector<SparsePoly>> J;
    for (const auto &r : R) {
        std::vector<SparsePoly> row;
        for (int v : vars)
            row.push_back(partial(r, Var::z(v)));
        J.push_back(std::move(row));
    }
    return J;
}

} // namespace

SparsePoly jacobian_delta(const std::vector<SparsePoly> &R, const std::vector<int> &vars)
{
    int n = R.empty() ? 1 : R.front().n();
    return poly_determinant(jacobian_matrix(R, vars), n);
}

SparsePoly jacobian_delta_H(const std::vector<SparsePoly> &R, const std::vector<SparsePoly> &H,
                            int j, const std::vector<int> &vars)
{
    auto J = jacobian_matrix(R, vars);
    if (H.size() != R.size() || j < 0 || j >= static_cast<int>(vars.size()))
        throw Error(ErrorKind::DimensionMismatch, "replacement column has the wrong shape");
    for (std::size_t r = 0; r < J.size(); ++r)
        J[r][static_cast<std::size_t>(j)] = H[r];
    int n = R.empty() ? 1 : R.front().n();
    return poly_determinant(J, n);
}

} // namespace crsym
