#include "crsym/tangency.hpp"

#include "crsym/errors.hpp"
#include "crsym/linalg.hpp"

#include <algorithm>
#include <future>
#include <set>
#include <thread>
#include <tuple>

namespace crsym {

int AutDecomposition::total_dimension() const
{
    int d = 0;
    for (const auto &[mu, c] : components)
        d += c.dimension();
    return d;
}

int AutDecomposition::dimension_at(const Rational &mu) const
{
    auto it = components.find(mu);
    return it == components.end() ? 0 : it->second.dimension();
}

int AutDecomposition::gc_dimension() const
{
    int d = 0;
    for (const auto &[mu, c] : gc)
        d += c.dimension();
    return d;
}

int AutDecomposition::gnc_dimension() const
{
    int d = 0;
    for (const auto &[mu, c] : gnc)
        d += c.dimension();
    return d;
}

SparsePoly tangency_residual(const VectorField &Y, const ModelHypersurface &M)
{
    if (!Y.weights_consistent(M.lambda()))
        throw Error(ErrorKind::WeightMismatch,
                    "field is not homogeneous of weight " + to_string(Y.weight));
    return raw_tangency_residual(Y, M.P());
}

std::vector<Rational> candidate_weights(const ModelHypersurface &M)
{
    const auto &lambda = M.lambda();
    std::set<Rational> out;
    for (const auto &m : holomorphic_monomials(lambda, Rational(2), true)) {
        Rational d = m.weighted_degree(lambda);
        auto keep = [&](const Rational &mu) {
            if (mu >= -1 && mu <= 1)
                out.insert(mu);
        };
        for (int j = 0; j < lambda.n(); ++j)
            keep(d - lambda[j]);
        keep(d - 1);
    }
    return {out.begin(), out.end()};
}

namespace {

struct Unknown {
    int slot; // n means the d/dw coefficient
    Monomial mono;
};

// Residual of the single-monomial field c * mono * d/d(slot) for c = 1 and c = i.
struct ResidualBasis {
    const ModelHypersurface &M;
    std::vector<SparsePoly> W;               // (u + iP)^p
    std::vector<std::vector<SparsePoly>> WD; // (u + iP)^p * P_{z_j}

    ResidualBasis(const ModelHypersurface &model, int max_p) : M(model)
    {
        const int n = M.n();
        SparsePoly wp = SparsePoly::constant(n, Scalar(1));
        SparsePoly base = substitute_w(SparsePoly::variable(n, Var::w()), M.P());
        for (int p = 0; p <= max_p; ++p) {
            W.push_back(wp);
            wp = wp * base;
        }
        for (int j = 0; j < n; ++j) {
            SparsePoly d = partial(M.P(), Var::z(j));
            std::vector<SparsePoly> row;
            for (const auto &w : W)
                row.push_back(w * d);
            WD.push_back(std::move(row));
        }
    }

    std::pair<SparsePoly, SparsePoly> residuals(const Unknown &u) const
    {
        Monomial zpart = u.mono;
        const int p = zpart.p();
        zpart.p() = 0;
        const Scalar half(Rational(1, 2));
        if (u.slot == M.n()) {
            SparsePoly X = W[static_cast<std::size_t>(p)].times_monomial(zpart);
            return {imag_part(X) * half, real_part(X) * half};
        }
        SparsePoly X = WD[static_cast<std::size_t>(u.slot)][static_cast<std::size_t>(p)]
                           .times_monomial(zpart);
        return {-real_part(X), imag_part(X)};
    }
};

std::vector<Unknown> enumerate_unknowns(const ModelHypersurface &M, const Rational &mu)
{
    const auto &lambda = M.lambda();
    const int n = M.n();
    std::vector<Unknown> out;
    for (int s = 0; s <= n; ++s) {
        Rational deg = mu + (s == n ? Rational(1) : lambda[s]);
        for (const auto &m : holomorphic_monomials(lambda, deg, true))
            if (m.weighted_degree(lambda) == deg)
                out.push_back({s, m});
    }
    // Rigid unknowns first, then by increasing w-power, so the kernel basis vectors attached
    // to rigid free columns span exactly the rigid subspace.
    std::stable_sort(out.begin(), out.end(),
                     [](const Unknown &a, const Unknown &b) { return a.mono.p() < b.mono.p(); });
    return out;
}

VectorField field_from(const ModelHypersurface &M, const Rational &mu,
                       const std::vector<Unknown> &unknowns, const std::vector<Rational> &x)
{
    VectorField Y(M.n(), mu);
    for (std::size_t k = 0; k < unknowns.size(); ++k) {
        Scalar c(x[2 * k], x[2 * k + 1]);
        if (c.is_zero())
            continue;
        const auto &u = unknowns[k];
        SparsePoly &target = u.slot == M.n() ? Y.G : Y.F[static_cast<std::size_t>(u.slot)];
        target.add_term(u.mono, c);
    }
    return Y;
}

} // namespace

GradedComponent graded_component(const ModelHypersurface &M, const Rational &mu)
{
    GradedComponent out;
    out.weight = mu;
    auto unknowns = enumerate_unknowns(M, mu);
    if (unknowns.empty())
        return out;
    int max_p = 0;
    for (const auto &u : unknowns)
        max_p = std::max(max_p, u.mono.p());
    ResidualBasis rb(M, max_p);

    // One real equation per (residual monomial, re/im); conjugate monomials are redundant.
    std::map<Monomial, std::pair<SparseRow<Rational>, SparseRow<Rational>>, GrlexLess> eqs;
    for (std::size_t k = 0; k < unknowns.size(); ++k) {
        auto [r1, ri] = rb.residuals(unknowns[k]);
        for (int part = 0; part < 2; ++part) {
            const SparsePoly &r = part == 0 ? r1 : ri;
            const int col = static_cast<int>(2 * k) + part;
            for (const auto &[m, c] : r.terms()) {
                Monomial mc = m.conj();
                if (GrlexLess{}(mc, m))
                    continue;
                auto &rows = eqs[m];
                if (sgn(c.re()) != 0)
                    rows.first.emplace_back(col, c.re());
                if (sgn(c.im()) != 0)
                    rows.second.emplace_back(col, c.im());
            }
        }
    }
    const int ncols = static_cast<int>(2 * unknowns.size());
    RowReducer<Rational> red(ncols);
    for (auto &[m, rows] : eqs) {
        if (!rows.first.empty())
            red.add_row(std::move(rows.first));
        if (!rows.second.empty())
            red.add_row(std::move(rows.second));
    }
    for (const auto &x : red.kernel_basis()) {
        VectorField Y = field_from(M, mu, unknowns, x);
        if (!raw_tangency_residual(Y, M.P()).is_zero())
            throw Error(ErrorKind::InternalRankDrop,
                        "kernel field at weight " + to_string(mu) + " is not tangent");
        out.basis.push_back(std::move(Y));
    }
    return out;
}

AutDecomposition full_decomposition(const ModelHypersurface &M, const DecompositionOptions &opts)
{
    if (opts.check_degeneracy) {
        auto v = is_holomorphically_nondegenerate(M, default_degeneracy_bound(M));
        if (v.degenerate)
            throw Error(ErrorKind::DegenerateModel, "tangent field " + v.witness->to_string());
    }
    const auto weights = candidate_weights(M);
    std::vector<GradedComponent> results(weights.size());
    unsigned threads = opts.threads ? opts.threads : std::max(1u, std::thread::hardware_concurrency());
    threads = std::min<unsigned>(threads, static_cast<unsigned>(weights.size()));
    if (threads <= 1) {
        for (std::size_t k = 0; k < weights.size(); ++k)
            results[k] = graded_component(M, weights[k]);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::future<void>> workers;
        for (unsigned t = 0; t < threads; ++t)
            workers.push_back(std::async(std::launch::async, [&] {
                for (std::size_t k; (k = next++) < weights.size();)
                    results[k] = graded_component(M, weights[k]);
            }));
        for (auto &w : workers)
            w.get();
    }

    AutDecomposition D;
    for (auto &c : results) {
        if (c.basis.empty())
            continue;
        const Rational mu = c.weight;
        if (mu > 0 && mu < 1) {
            GradedComponent rigid{mu, {}}, moving{mu, {}};
            for (const auto &Y : c.basis)
                (Y.is_rigid() ? rigid : moving).basis.push_back(Y);
            if (!rigid.basis.empty())
                D.gc.emplace(mu, std::move(rigid));
            if (!moving.basis.empty())
                D.gnc.emplace(mu, std::move(moving));
        }
        if (mu == 1)
            D.transversal = true;
        D.components.emplace(mu, std::move(c));
    }
    return D;
}

const char *field_kind_name(FieldKind k)
{
    switch (k) {
    case FieldKind::Zero:
        return "zero";
    case FieldKind::Shift:
        return "shift";
    case FieldKind::Rotation:
        return "rotation";
    case FieldKind::GeneralizedRotation:
        return "generalized rotation";
    case FieldKind::Integration:
        return "integration";
    case FieldKind::Transversal:
        return "transversal 2-integration";
    }
    return "?";
}

FieldClassification classify_field(const VectorField &Y, const ModelHypersurface &M)
{
    if (!tangency_residual(Y, M).is_zero())
        throw Error(ErrorKind::NotTangent, Y.to_string());
    FieldClassification c;
    VectorField base = Y;
    while (!base.is_rigid()) {
        base = w_derivative(base);
        ++c.l;
    }
    c.rigid_base = base;
    if (Y.is_zero())
        c.kind = FieldKind::Zero;
    else if (Y.weight == 1)
        c.kind = FieldKind::Transversal;
    else if (c.l > 0)
        c.kind = FieldKind::Integration;
    else if (Y.weight < 0)
        c.kind = FieldKind::Shift;
    else if (Y.weight == 0)
        c.kind = FieldKind::Rotation;
    else
        c.kind = FieldKind::GeneralizedRotation;
    return c;
}

namespace {

// Real coordinates of a family of fields over a shared (slot, monomial, re/im) index.
std::vector<SparseRow<Rational>> real_coordinates(const std::vector<VectorField> &fields,
                                                  int &ncols)
{
    std::map<std::tuple<int, std::vector<int>>, int> index;
    auto col = [&](int slot, const Monomial &m) {
        auto key = std::make_tuple(slot, m.exponents());
        auto it = index.find(key);
        if (it == index.end())
            it = index.emplace(key, static_cast<int>(2 * index.size())).first;
        return it->second;
    };
    std::vector<SparseRow<Rational>> rows;
    for (const auto &Y : fields) {
        std::map<int, Rational> row;
        for (int s = 0; s <= Y.n(); ++s) {
            const SparsePoly &p = s == Y.n() ? Y.G : Y.F[static_cast<std::size_t>(s)];
            for (const auto &[m, c] : p.terms()) {
                int k = col(s, m);
                if (sgn(c.re()) != 0)
                    row[k] = c.re();
                if (sgn(c.im()) != 0)
                    row[k + 1] = c.im();
            }
        }
        rows.emplace_back(row.begin(), row.end());
    }
    ncols = static_cast<int>(2 * index.size());
    return rows;
}

} // namespace

int real_rank(const std::vector<VectorField> &fields)
{
    int ncols = 0;
    auto rows = real_coordinates(fields, ncols);
    RowReducer<Rational> red(ncols);
    for (auto &r : rows)
        red.add_row(std::move(r));
    return red.rank();
}

bool in_real_span(const VectorField &Y, const std::vector<VectorField> &fields)
{
    auto all = fields;
    all.push_back(Y);
    return real_rank(all) == real_rank(fields);
}

} // namespace crsym
