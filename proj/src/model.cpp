#include "crsym/model.hpp"

#include "crsym/errors.hpp"
#include "crsym/linalg.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace crsym {

ModelHypersurface validate_model(const SparsePoly &P, const WeightVector &lambda)
{
    if (P.n() != lambda.n())
        throw Error(ErrorKind::DimensionMismatch,
                    "polynomial has " + std::to_string(P.n()) + " variables, weights have " +
                        std::to_string(lambda.n()));
    if (P.is_zero())
        throw Error(ErrorKind::ZeroPolynomial, "P is identically zero");
    if (!P.is_w_free() || !P.is_u_free())
        throw Error(ErrorKind::InvalidModelPolynomial, "P depends on w");
    if (!P.is_real_type())
        throw Error(ErrorKind::NotReal, "P differs from its conjugate");
    auto [rest, harmonic] = strip_pluriharmonic(P);
    if (!harmonic.is_zero())
        throw Error(ErrorKind::HasPluriharmonicTerms, harmonic.to_string());
    auto parts = weighted_components(P, lambda);
    if (parts.size() != 1 || parts.front().first != 1) {
        std::string degs;
        for (const auto &[k, part] : parts)
            if (k != 1)
                degs += (degs.empty() ? "" : ", ") + to_string(k);
        throw Error(ErrorKind::NotHomogeneous, "terms of weighted degree " + degs);
    }
    ModelHypersurface M;
    M.lambda_ = lambda;
    M.P_ = P;
    return M;
}

std::pair<SparsePoly, SparsePoly> strip_pluriharmonic(const SparsePoly &P)
{
    auto [harmonic, mixed] = split_pluriharmonic(P);
    return {mixed, harmonic};
}

namespace {

// Unique solution of the stacked rows (coeffs | rhs) in n unknowns, if any.
std::optional<std::vector<Rational>> solve_unique(const std::vector<std::vector<Rational>> &rows,
                                                  int n)
{
    RowReducer<Rational> red(n + 1, n);
    for (const auto &r : rows)
        if (!red.add_row(to_sparse(r)))
            return std::nullopt;
    if (red.rank() != n)
        return std::nullopt;
    return red.particular_solution();
}

} // namespace

std::vector<WeightVector> infer_weights(const SparsePoly &P)
{
    if (P.is_zero())
        throw Error(ErrorKind::ZeroPolynomial, "P is identically zero");
    const int n = P.n();
    std::set<std::vector<int>> degrees;
    for (const auto &[m, c] : P.terms()) {
        std::vector<int> d(static_cast<std::size_t>(n));
        for (int j = 0; j < n; ++j)
            d[static_cast<std::size_t>(j)] = m.alpha(j) + m.beta(j);
        degrees.insert(d);
    }
    std::vector<std::vector<Rational>> equalities;
    for (const auto &d : degrees) {
        std::vector<Rational> row(static_cast<std::size_t>(n + 1));
        for (int j = 0; j < n; ++j)
            row[static_cast<std::size_t>(j)] = d[static_cast<std::size_t>(j)];
        row[static_cast<std::size_t>(n)] = 1;
        equalities.push_back(std::move(row));
    }
    // Inequalities as rows a.lambda <= b; tight versions become equalities.
    // 0: lambda_1 <= 1/2;  1..n-1: lambda_{j+1} - lambda_j <= 0;  n: -lambda_n <= 0.
    std::vector<std::vector<Rational>> ineq;
    {
        std::vector<Rational> r(static_cast<std::size_t>(n + 1));
        r[0] = 1;
        r[static_cast<std::size_t>(n)] = Rational(1, 2);
        ineq.push_back(r);
    }
    for (int j = 0; j + 1 < n; ++j) {
        std::vector<Rational> r(static_cast<std::size_t>(n + 1));
        r[static_cast<std::size_t>(j + 1)] = 1;
        r[static_cast<std::size_t>(j)] = -1;
        ineq.push_back(r);
    }
    {
        std::vector<Rational> r(static_cast<std::size_t>(n + 1));
        r[static_cast<std::size_t>(n - 1)] = -1;
        ineq.push_back(r);
    }
    auto feasible = [&](const std::vector<Rational> &x) {
        for (const auto &r : ineq) {
            Rational s = 0;
            for (int j = 0; j < n; ++j)
                s += r[static_cast<std::size_t>(j)] * x[static_cast<std::size_t>(j)];
            if (s > r[static_cast<std::size_t>(n)])
                return false;
        }
        return true;
    };
    std::set<std::vector<Rational>> vertices;
    const int m = static_cast<int>(ineq.size());
    for (unsigned mask = 0; mask < (1u << m); ++mask) {
        auto rows = equalities;
        for (int k = 0; k < m; ++k)
            if (mask & (1u << k))
                rows.push_back(ineq[static_cast<std::size_t>(k)]);
        auto x = solve_unique(rows, n);
        if (x && feasible(*x) && sgn(x->back()) > 0)
            vertices.insert(*x);
    }
    std::vector<WeightVector> out;
    for (const auto &v : vertices)
        out.emplace_back(v);
    return out;
}

std::vector<Monomial> holomorphic_monomials(const WeightVector &lambda, const Rational &max_degree,
                                            bool with_w)
{
    const int n = lambda.n();
    std::vector<Monomial> out;
    if (sgn(max_degree) < 0)
        return out;
    Monomial m(n);
    // Depth-first over exponents; index n stands for w.
    auto rec = [&](auto &&self, int idx, Rational budget) -> void {
        if (idx == n + 1 || (idx == n && !with_w)) {
            out.push_back(m);
            return;
        }
        const Rational step = idx == n ? Rational(1) : lambda[idx];
        int &e = idx == n ? m.p() : m.alpha(idx);
        for (e = 0; budget - step * e >= 0; ++e)
            self(self, idx + 1, budget - step * e);
        e = 0;
    };
    rec(rec, 0, max_degree);
    std::sort(out.begin(), out.end(), GrlexLess{});
    return out;
}

Rational default_degeneracy_bound(const ModelHypersurface &) { return Rational(1); }

NondegeneracyVerdict is_holomorphically_nondegenerate(const ModelHypersurface &M,
                                                      const Rational &max_weight)
{
    const int n = M.n();
    const auto &lambda = M.lambda();
    NondegeneracyVerdict verdict;
    verdict.bound = max_weight;

    std::vector<SparsePoly> dP;
    for (int j = 0; j < n; ++j)
        dP.push_back(partial(M.P(), Var::z(j)));

    // (weight, slot, monomial) candidates grouped by field weight.
    std::map<Rational, std::vector<std::pair<int, Monomial>>> by_weight;
    for (int j = 0; j < n; ++j)
        for (const auto &mono : holomorphic_monomials(lambda, max_weight + lambda[j], false))
            by_weight[mono.weighted_degree(lambda) - lambda[j]].emplace_back(j, mono);

    for (const auto &[mu, unknowns] : by_weight) {
        std::map<Monomial, SparseRow<Scalar>, GrlexLess> eqs;
        for (std::size_t col = 0; col < unknowns.size(); ++col) {
            const auto &[j, mono] = unknowns[col];
            SparsePoly image = dP[static_cast<std::size_t>(j)].times_monomial(mono);
            for (const auto &[tm, c] : image.terms())
                eqs[tm].emplace_back(static_cast<int>(col), c);
        }
        RowReducer<Scalar> red(static_cast<int>(unknowns.size()));
        for (auto &[tm, row] : eqs)
            red.add_row(std::move(row));
        auto kernel = red.kernel_basis();
        if (kernel.empty())
            continue;
        const auto &x = kernel.front();
        VectorField X(n, mu);
        for (std::size_t col = 0; col < unknowns.size(); ++col) {
            if (x[col].is_zero())
                continue;
            const auto &[j, mono] = unknowns[col];
            X.F[static_cast<std::size_t>(j)].add_term(mono, x[col]);
        }
        // Normalize so the leading coefficient of the first nonzero slot is 1.
        for (const auto &f : X.F)
            if (!f.is_zero()) {
                X *= f.leading_term().second.inverse();
                break;
            }
        verdict.degenerate = true;
        verdict.witness = std::move(X);
        return verdict;
    }
    return verdict;
}

} // namespace crsym
