// Chain decomposition of P under a generalized rotation Y.
//
// The holomorphic factors of P span a space H with P in H (x) conj(H). Tangency of a rigid Y
// forces Y(H) in H, and Y acts nilpotently there because it raises the z-weight. A graded
// Jordan basis e of H gives the U-chains; the dual family f with P = sum_x e_x conj(f_x)
// satisfies Y(f_k) = -f_{k-1} along every chain, which gives the V-chains with A = I, B = -I.

#include "crsym/errors.hpp"
#include "crsym/structure.hpp"

#include <algorithm>
#include <map>

namespace crsym {

namespace {

ScalarMatrix identity_matrix(int s, const Scalar &d = Scalar(1))
{
    ScalarMatrix m(static_cast<std::size_t>(s), std::vector<Scalar>(static_cast<std::size_t>(s)));
    for (int i = 0; i < s; ++i)
        m[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = d;
    return m;
}

ScalarMatrix neg_conj_transpose(const ScalarMatrix &m)
{
    const std::size_t r = m.size(), c = r ? m[0].size() : 0;
    ScalarMatrix out(c, std::vector<Scalar>(r));
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j)
            out[j][i] = -m[i][j].conj();
    return out;
}

Monomial holo(const Monomial &m, bool from_beta)
{
    Monomial h(m.n());
    for (int j = 0; j < m.n(); ++j)
        h.alpha(j) = from_beta ? m.beta(j) : m.alpha(j);
    return h;
}

// Coordinates of polynomials over a shared holomorphic monomial index.
class MonomialIndex {
public:
    int id(const Monomial &m)
    {
        auto [it, fresh] = ids_.emplace(m, static_cast<int>(ids_.size()));
        return it->second;
    }
    SparseRow<Scalar> coords(const SparsePoly &p)
    {
        SparseRow<Scalar> row;
        for (const auto &[m, c] : p.terms())
            row.emplace_back(id(m), c);
        std::sort(row.begin(), row.end(), [](const auto &a, const auto &b) { return a.first < b.first; });
        return row;
    }

private:
    std::map<Monomial, int, GrlexLess> ids_;
};

// Solves sum_i x_i basis[i] = v; nullopt when v is outside the span.
std::optional<std::vector<Scalar>> express(const std::vector<SparsePoly> &basis, const SparsePoly &v)
{
    const int d = static_cast<int>(basis.size());
    std::map<Monomial, SparseRow<Scalar>, GrlexLess> rows;
    for (int i = 0; i < d; ++i)
        for (const auto &[m, c] : basis[static_cast<std::size_t>(i)].terms())
            rows[m].emplace_back(i, c);
    for (const auto &[m, c] : v.terms())
        rows[m].emplace_back(d, c);
    RowReducer<Scalar> red(d + 1, d);
    for (auto &[m, r] : rows)
        if (!red.add_row(std::move(r)))
            return std::nullopt;
    return red.particular_solution();
}

using Vec = std::vector<Scalar>;

Vec mat_vec(const ScalarMatrix &N, const Vec &v)
{
    Vec out(v.size());
    for (std::size_t i = 0; i < N.size(); ++i)
        for (std::size_t j = 0; j < v.size(); ++j)
            if (!N[i][j].is_zero() && !v[j].is_zero())
                out[i] += N[i][j] * v[j];
    return out;
}

bool is_zero_vec(const Vec &v)
{
    return std::all_of(v.begin(), v.end(), [](const Scalar &s) { return s.is_zero(); });
}

// Kernel of N^L restricted to the coordinates in `support`, as full-length vectors.
std::vector<Vec> restricted_kernel(const ScalarMatrix &NL, const std::vector<int> &support, int d)
{
    const int k = static_cast<int>(support.size());
    RowReducer<Scalar> red(k);
    for (int r = 0; r < d; ++r) {
        SparseRow<Scalar> row;
        for (int c = 0; c < k; ++c) {
            const Scalar &v = NL[static_cast<std::size_t>(r)][static_cast<std::size_t>(support[static_cast<std::size_t>(c)])];
            if (!v.is_zero())
                row.emplace_back(c, v);
        }
        if (!row.empty())
            red.add_row(std::move(row));
    }
    std::vector<Vec> out;
    for (const auto &x : red.kernel_basis()) {
        Vec full(static_cast<std::size_t>(d));
        for (int c = 0; c < k; ++c)
            full[static_cast<std::size_t>(support[static_cast<std::size_t>(c)])] = x[static_cast<std::size_t>(c)];
        out.push_back(std::move(full));
    }
    return out;
}

ScalarMatrix mat_mul(const ScalarMatrix &a, const ScalarMatrix &b)
{
    const std::size_t n = a.size();
    ScalarMatrix out(n, Vec(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k) {
            if (a[i][k].is_zero())
                continue;
            for (std::size_t j = 0; j < n; ++j)
                if (!b[k][j].is_zero())
                    out[i][j] += a[i][k] * b[k][j];
        }
    return out;
}

} // namespace

SparsePoly ChainPair::pairing() const
{
    const int n = U.empty() || U[0].empty() ? 1 : U[0][0].n();
    SparsePoly acc(n);
    for (int k = 0; k < l; ++k)
        for (int i = 0; i < s; ++i)
            acc += U[static_cast<std::size_t>(k)][static_cast<std::size_t>(i)] *
                   conjugate(V[static_cast<std::size_t>(l - 1 - k)][static_cast<std::size_t>(i)]);
    return real_part(acc);
}

void require_generalized_rotation(const VectorField &Y, const ModelHypersurface &M)
{
    auto reject = [](const std::string &why) { throw Error(ErrorKind::NotGeneralizedRotation, why); };
    if (Y.n() != M.n())
        reject("dimension mismatch");
    if (Y.is_zero())
        reject("zero field");
    if (!Y.is_rigid())
        reject("field depends on w");
    if (!(Y.weight > 0 && Y.weight < 1))
        reject("weight " + to_string(Y.weight) + " outside (0, 1)");
    if (!Y.weights_consistent(M.lambda()))
        reject("field is not homogeneous of its weight");
    if (!raw_tangency_residual(Y, M.P()).is_zero())
        reject("field is not tangent");
}

ChainDecomposition chain_decomposition(const ModelHypersurface &M, const VectorField &Y)
{
    require_generalized_rotation(Y, M);
    const int n = M.n();
    const Rational mu = Y.weight;
    const auto &lambda = M.lambda();

    // Column polynomials q_beta = sum_alpha C_{alpha beta} z^alpha, grouped by z-weight.
    std::map<Monomial, SparsePoly, GrlexLess> columns;
    for (const auto &[m, c] : M.P().terms()) {
        auto [it, fresh] = columns.try_emplace(holo(m, true), SparsePoly(n));
        it->second.add_term(holo(m, false), c);
    }
    std::map<Rational, std::vector<SparsePoly>> spanning;
    for (const auto &[beta, q] : columns)
        spanning[q.terms().begin()->first.holomorphic_weight(lambda)].push_back(q);

    // Basis of H: independent column polynomials, weight by weight.
    std::vector<SparsePoly> basis;
    std::vector<Rational> weight_of;
    MonomialIndex index;
    for (const auto &[c, qs] : spanning) {
        RowReducer<Scalar> red(1 << 20);
        for (const auto &q : qs) {
            int before = red.rank();
            red.add_row(index.coords(q));
            if (red.rank() > before) {
                basis.push_back(q);
                weight_of.push_back(c);
            }
        }
    }
    const int d = static_cast<int>(basis.size());

    // Matrix of Y on H; column i holds the coordinates of Y(basis[i]).
    ScalarMatrix N(static_cast<std::size_t>(d), Vec(static_cast<std::size_t>(d)));
    for (int i = 0; i < d; ++i) {
        auto x = express(basis, apply(Y, basis[static_cast<std::size_t>(i)]));
        if (!x)
            throw Error(ErrorKind::InternalRankDrop, "Y does not preserve the span of the factors");
        for (int r = 0; r < d; ++r)
            N[static_cast<std::size_t>(r)][static_cast<std::size_t>(i)] = (*x)[static_cast<std::size_t>(r)];
    }

    // Powers of N until zero.
    std::vector<ScalarMatrix> powers{identity_matrix(d)};
    while (true) {
        const auto &last = powers.back();
        bool zero = std::all_of(last.begin(), last.end(), [](const Vec &r) { return is_zero_vec(r); });
        if (zero || static_cast<int>(powers.size()) > d + 1)
            break;
        powers.push_back(mat_mul(N, last));
    }
    const int maxL = static_cast<int>(powers.size()) - 1;

    std::map<Rational, std::vector<int>> support;
    for (int i = 0; i < d; ++i)
        support[weight_of[static_cast<std::size_t>(i)]].push_back(i);
    auto kernel = [&](int L, const Rational &c) -> std::vector<Vec> {
        auto it = support.find(c);
        if (it == support.end() || L <= 0)
            return {};
        if (L > maxL)
            L = maxL;
        return restricted_kernel(powers[static_cast<std::size_t>(L)], it->second, d);
    };

    struct Chain {
        int L;
        Rational c;
        std::vector<Vec> e;
    };
    std::vector<Chain> chains;
    for (int L = maxL; L >= 1; --L) {
        for (const auto &[c, idx] : support) {
            RowReducer<Scalar> red(d);
            for (const auto &v : kernel(L - 1, c))
                red.add_row(to_sparse(v));
            for (const auto &v : kernel(L + 1, c - mu))
                red.add_row(to_sparse(mat_vec(N, v)));
            for (const auto &v : kernel(L, c)) {
                int before = red.rank();
                red.add_row(to_sparse(v));
                if (red.rank() == before)
                    continue;
                Chain ch{L, c, {v}};
                for (int k = 1; k < L; ++k)
                    ch.e.push_back(mat_vec(N, ch.e.back()));
                if (!is_zero_vec(mat_vec(N, ch.e.back())))
                    throw Error(ErrorKind::InternalRankDrop, "chain does not terminate");
                chains.push_back(std::move(ch));
            }
        }
    }

    // Chain vectors as polynomials.
    std::vector<SparsePoly> e_polys;
    std::vector<std::pair<std::size_t, int>> owner;
    for (std::size_t ci = 0; ci < chains.size(); ++ci)
        for (int k = 0; k < chains[ci].L; ++k) {
            SparsePoly p(n);
            const auto &v = chains[ci].e[static_cast<std::size_t>(k)];
            for (int i = 0; i < d; ++i)
                if (!v[static_cast<std::size_t>(i)].is_zero())
                    p += basis[static_cast<std::size_t>(i)] * v[static_cast<std::size_t>(i)];
            e_polys.push_back(std::move(p));
            owner.emplace_back(ci, k);
        }
    if (static_cast<int>(e_polys.size()) != d)
        throw Error(ErrorKind::InternalRankDrop, "Jordan chains do not span the factor space");

    // Dual family: P = sum_x e_x conj(f_x).
    std::vector<SparsePoly> f(static_cast<std::size_t>(d), SparsePoly(n));
    for (const auto &[beta, q] : columns) {
        auto x = express(e_polys, q);
        if (!x)
            throw Error(ErrorKind::InternalRankDrop, "column outside the chain span");
        for (int i = 0; i < d; ++i)
            if (!(*x)[static_cast<std::size_t>(i)].is_zero())
                f[static_cast<std::size_t>(i)].add_term(beta, (*x)[static_cast<std::size_t>(i)].conj());
    }

    // Group chains of equal length and start weight into pairs of width s.
    std::map<std::pair<Rational, int>, std::vector<std::size_t>> groups;
    for (std::size_t ci = 0; ci < chains.size(); ++ci)
        groups[{chains[ci].c, -chains[ci].L}].push_back(ci);
    std::vector<std::vector<std::size_t>> position(chains.size());
    for (std::size_t x = 0; x < owner.size(); ++x)
        position[owner[x].first].push_back(x);

    ChainDecomposition D;
    D.reconstruction = SparsePoly(n);
    for (const auto &[key, members] : groups) {
        ChainPair cp;
        cp.s = static_cast<int>(members.size());
        cp.l = -key.second;
        cp.start_weight = key.first;
        cp.U.assign(static_cast<std::size_t>(cp.l), {});
        cp.V.assign(static_cast<std::size_t>(cp.l), {});
        for (std::size_t ci : members) {
            const auto &pos = position[ci];
            for (int k = 0; k < cp.l; ++k) {
                cp.U[static_cast<std::size_t>(k)].push_back(e_polys[pos[static_cast<std::size_t>(k)]]);
                cp.V[static_cast<std::size_t>(k)].push_back(f[pos[static_cast<std::size_t>(cp.l - 1 - k)]]);
            }
        }
        for (int j = 0; j + 1 < cp.l; ++j) {
            cp.A.push_back(identity_matrix(cp.s));
            cp.B.push_back(identity_matrix(cp.s, Scalar(-1)));
        }
        D.reconstruction += cp.pairing();
        D.pairs.push_back(std::move(cp));
    }
    if (D.reconstruction != M.P())
        throw Error(ErrorKind::InternalRankDrop, "chain pairing does not reconstruct P");
    return D;
}

ChainCheck verify_chain(const ModelHypersurface &M, const VectorField &Y, const ChainDecomposition &D)
{
    ChainCheck out;
    auto fail = [&](const std::string &msg) {
        out.ok = false;
        out.violations.push_back(msg);
    };
    if (Y.n() != M.n()) {
        fail("field dimension differs from the model");
        return out;
    }
    if (!raw_tangency_residual(Y, M.P()).is_zero())
        fail("Y is not tangent to the model");
    const int n = M.n();
    SparsePoly total(n);
    for (std::size_t p = 0; p < D.pairs.size(); ++p) {
        const auto &cp = D.pairs[p];
        const std::string tag = "pair " + std::to_string(p + 1) + ": ";
        auto shape_ok = [&](const std::vector<std::vector<SparsePoly>> &W) {
            if (static_cast<int>(W.size()) != cp.l)
                return false;
            return std::all_of(W.begin(), W.end(), [&](const auto &v) { return static_cast<int>(v.size()) == cp.s; });
        };
        auto mats_ok = [&](const std::vector<ScalarMatrix> &Ms) {
            if (static_cast<int>(Ms.size()) != std::max(cp.l - 1, 0))
                return false;
            for (const auto &m : Ms) {
                if (static_cast<int>(m.size()) != cp.s)
                    return false;
                for (const auto &r : m)
                    if (static_cast<int>(r.size()) != cp.s)
                        return false;
            }
            return true;
        };
        if (cp.s < 1 || cp.l < 1 || !shape_ok(cp.U) || !shape_ok(cp.V) || !mats_ok(cp.A) || !mats_ok(cp.B)) {
            fail(tag + "inconsistent shapes");
            continue;
        }
        auto check_chain = [&](const std::vector<std::vector<SparsePoly>> &W,
                               const std::vector<ScalarMatrix> &Ms, const char *name) {
            for (int j = 0; j < cp.l; ++j)
                for (int i = 0; i < cp.s; ++i) {
                    SparsePoly lhs = apply(Y, W[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)]);
                    SparsePoly rhs(n);
                    if (j + 1 < cp.l)
                        for (int k = 0; k < cp.s; ++k)
                            rhs += W[static_cast<std::size_t>(j + 1)][static_cast<std::size_t>(k)] *
                                   Ms[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)][static_cast<std::size_t>(k)];
                    if (lhs != rhs)
                        fail(tag + "Y(" + name + "^(" + std::to_string(j + 1) + ")) relation fails");
                }
        };
        check_chain(cp.U, cp.A, "U");
        check_chain(cp.V, cp.B, "V");
        for (int j = 0; j + 1 < cp.l; ++j) {
            const auto &A = cp.A[static_cast<std::size_t>(j)];
            if (A != neg_conj_transpose(cp.B[static_cast<std::size_t>(cp.l - 2 - j)]))
                fail(tag + "A_" + std::to_string(j + 1) + " != -B_" + std::to_string(cp.l - 1 - j) + "^*");
            if (determinant(A).is_zero())
                fail(tag + "A_" + std::to_string(j + 1) + " is singular");
            if (determinant(cp.B[static_cast<std::size_t>(j)]).is_zero())
                fail(tag + "B_" + std::to_string(j + 1) + " is singular");
        }
        total += cp.pairing();
    }
    if (total != M.P())
        fail("sum of chain pairings differs from P");
    return out;
}

} // namespace crsym
