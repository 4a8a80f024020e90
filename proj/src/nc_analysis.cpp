// Normalization of w-dependent symmetries. A 1-integrating field Y gives the shift X = [d/dw, Y];
// straightening X to i d/dz_l makes P a polynomial in Re z_l, and the remaining analysis depends
// on its top power m.

#include "crsym/errors.hpp"
#include "crsym/structure.hpp"

#include <algorithm>
#include <functional>

namespace crsym {

CoordinateChange CoordinateChange::identity(int n)
{
    CoordinateChange c;
    for (int j = 0; j < n; ++j)
        c.z.push_back(SparsePoly::variable(n, Var::z(j)));
    c.w = SparsePoly::variable(n, Var::w());
    return c;
}

CoordinateChange CoordinateChange::then(const CoordinateChange &next) const
{
    const int n = static_cast<int>(z.size());
    CoordinateChange out;
    for (const auto &zj : z)
        out.z.push_back(compose(zj, next.z, n, next.w));
    out.w = compose(w, next.z, n, next.w);
    out.steps = steps;
    out.steps.insert(out.steps.end(), next.steps.begin(), next.steps.end());
    return out;
}

const char *nc_case_name(NcCase c)
{
    switch (c) {
    case NcCase::M2Balanced:
        return "M2Balanced";
    case NcCase::M1Canonical:
        return "M1Canonical";
    case NcCase::Unsupported:
        return "Unsupported";
    }
    return "?";
}

namespace {

// Terms of p that do not involve z_l or conj(z_l).
SparsePoly at_zero(const SparsePoly &p, int l)
{
    SparsePoly out(p.n());
    for (const auto &[m, c] : p.terms())
        if (m.alpha(l) == 0 && m.beta(l) == 0)
            out.add_term(m, c);
    return out;
}

// Holomorphic h with Re h = p, for pluriharmonic real p.
SparsePoly holomorphic_generator(const SparsePoly &p)
{
    SparsePoly h(p.n());
    for (const auto &[m, c] : p.terms()) {
        if (m.total_degree() == 0)
            h.add_term(m, c);
        else if (m.is_holomorphic())
            h.add_term(m, c * Scalar(2));
    }
    return h;
}

bool is_real_constant(const SparsePoly &p, Rational &value)
{
    if (p.size() != 1)
        return false;
    const auto &[m, c] = *p.terms().begin();
    if (m.total_degree() != 0 || sgn(c.im()) != 0)
        return false;
    value = c.re();
    return true;
}

// Coefficients c_k making fixed + sum c_k candidates[k] tangent to P; nullopt if none exist.
std::optional<std::vector<Scalar>> solve_completion(const SparsePoly &P, const VectorField &fixed,
                                                    const std::vector<VectorField> &candidates)
{
    const int k = static_cast<int>(candidates.size());
    std::map<Monomial, std::pair<SparseRow<Rational>, SparseRow<Rational>>, GrlexLess> eqs;
    auto add = [&](const SparsePoly &r, int col) {
        for (const auto &[m, c] : r.terms()) {
            auto &rows = eqs[m];
            if (sgn(c.re()) != 0)
                rows.first.emplace_back(col, c.re());
            if (sgn(c.im()) != 0)
                rows.second.emplace_back(col, c.im());
        }
    };
    for (int c = 0; c < k; ++c) {
        const auto &C = candidates[static_cast<std::size_t>(c)];
        add(raw_tangency_residual(C, P), 2 * c);
        add(raw_tangency_residual(C * Scalar::i(), P), 2 * c + 1);
    }
    add(-raw_tangency_residual(fixed, P), 2 * k);
    RowReducer<Rational> red(2 * k + 1, 2 * k);
    for (auto &[m, rows] : eqs) {
        if (!rows.first.empty() && !red.add_row(std::move(rows.first)))
            return std::nullopt;
        if (!rows.second.empty() && !red.add_row(std::move(rows.second)))
            return std::nullopt;
    }
    auto x = red.particular_solution();
    if (!x)
        return std::nullopt;
    std::vector<Scalar> out;
    for (int c = 0; c < k; ++c)
        out.emplace_back((*x)[static_cast<std::size_t>(2 * c)], (*x)[static_cast<std::size_t>(2 * c + 1)]);
    return out;
}

VectorField combine(const VectorField &fixed, const std::vector<VectorField> &candidates,
                    const std::vector<Scalar> &coef)
{
    VectorField Y = fixed;
    for (std::size_t k = 0; k < candidates.size(); ++k)
        if (!coef[k].is_zero())
            Y += candidates[k] * coef[k];
    return Y;
}

// Monomials z_l * z'^gamma of the given weighted degree.
std::vector<SparsePoly> zl_times_monomials(const WeightVector &lambda, int l, const Rational &deg)
{
    const int n = lambda.n();
    std::vector<SparsePoly> out;
    for (const auto &m : holomorphic_monomials(lambda, deg - lambda[l], false))
        if (m.alpha(l) == 0 && m.weighted_degree(lambda) == deg - lambda[l])
            out.push_back(SparsePoly::monomial(m) * SparsePoly::variable(n, Var::z(l)));
    return out;
}

struct Normalization {
    int l = -1;
    CoordinateChange change;
    SparsePoly P;
    /// Im w_old - P_old = scale * (Im w_new - P_new).
    Rational scale = 1;
};

// Straightens the shift X (rigid, F_l a nonzero constant) to i d/dz_l.
Normalization straighten(const SparsePoly &P, const VectorField &X, int l)
{
    const int n = P.n();
    VectorField D = X * (-Scalar::i());
    Normalization out;
    out.l = l;
    auto flow = [&](SparsePoly f, bool is_w) {
        SparsePoly img = is_w ? SparsePoly::variable(n, Var::w()) : at_zero(f, l);
        SparsePoly zl_pow = SparsePoly::constant(n, Scalar(1));
        Rational fact = 1;
        for (int k = 1; k < 64; ++k) {
            f = apply(D, f);
            if (f.is_zero())
                return img;
            zl_pow = zl_pow * SparsePoly::variable(n, Var::z(l));
            fact *= k;
            img += zl_pow * at_zero(f, l) * Scalar(1 / fact);
        }
        throw Error(ErrorKind::InternalRankDrop, "shift flow does not terminate");
    };
    for (int j = 0; j < n; ++j)
        out.change.z.push_back(flow(SparsePoly::variable(n, Var::z(j)), false));
    out.change.w = flow(SparsePoly::variable(n, Var::w()), true);
    out.change.steps.push_back("straighten the shift to i d/dz" + std::to_string(l + 1));
    SparsePoly H = out.change.w - SparsePoly::variable(n, Var::w());
    out.P = compose(P, out.change.z, n) - imag_part(H);
    return out;
}

void apply_step(Normalization &N, CoordinateChange step, const Rational &scale)
{
    const int n = N.P.n();
    SparsePoly H = step.w;
    N.change = N.change.then(step);
    // Im w_mid = scale * Im w_new + Im(rest of the w image).
    SparsePoly rest = H - SparsePoly::variable(n, Var::w()) * Scalar(scale);
    N.P = (compose(N.P, step.z, n) - imag_part(rest)) * Scalar(1 / scale);
    N.scale *= scale;
}

// P = sum_k (Re z_l)^k P_k when P depends on z_l only through Re z_l.
std::optional<std::vector<SparsePoly>> expand_in_re(const SparsePoly &P, int l)
{
    const int n = P.n();
    auto powers = collect_powers(identify_conjugate(P, l), Var::z(l));
    std::vector<SparsePoly> out;
    SparsePoly x = real_part(SparsePoly::variable(n, Var::z(l)));
    SparsePoly back(n);
    for (const auto &[k, c] : powers) {
        if (out.size() <= static_cast<std::size_t>(k))
            out.resize(static_cast<std::size_t>(k) + 1, SparsePoly(n));
        out[static_cast<std::size_t>(k)] = c;
        back += x.pow(k) * c;
    }
    if (back != P)
        return std::nullopt;
    return out;
}

std::string poly_summary(const SparsePoly &p) { return p.is_zero() ? "0" : p.to_string(); }

void finish_m2(NcReport &R, Normalization &N, const WeightVector &lambda)
{
    const int n = N.P.n(), l = N.l;
    auto fail = [&](const std::string &why) {
        R.kind = NcCase::Unsupported;
        R.reason = why;
    };
    Rational c;
    bool ok = is_real_constant(R.expansion[2], c);
    R.conditions.push_back({"P_2 is a real constant", ok, poly_summary(R.expansion[2])});
    if (!ok)
        return fail("P_2 is not a real constant");

    if (c != 1) {
        CoordinateChange scale = CoordinateChange::identity(n);
        scale.w = SparsePoly::variable(n, Var::w()) * Scalar(c);
        scale.steps.push_back("w -> " + to_string(c) + " w");
        apply_step(N, scale, c);
    }

    auto P1 = (*expand_in_re(N.P, l))[1];
    auto [harm1, mixed1] = split_pluriharmonic(P1);
    R.conditions.push_back({"P_1 is pluriharmonic", mixed1.is_zero(), poly_summary(P1)});
    if (!mixed1.is_zero())
        return fail("P_1 has mixed terms");
    if (!P1.is_zero()) {
        CoordinateChange shift = CoordinateChange::identity(n);
        SparsePoly h = holomorphic_generator(P1);
        shift.z[static_cast<std::size_t>(l)] -= h * Scalar(Rational(1, 2));
        shift.steps.push_back("z" + std::to_string(l + 1) + " -> z" + std::to_string(l + 1) +
                              " - (" + h.to_string() + ")/2");
        apply_step(N, shift, 1);
    }
    auto expansion = expand_in_re(N.P, l);
    if (!expansion)
        return fail("normalization lost the Re z_l structure");
    R.expansion = *expansion;
    auto [harm0, P0] = split_pluriharmonic(R.expansion[0]);
    if (!harm0.is_zero()) {
        CoordinateChange wshift = CoordinateChange::identity(n);
        wshift.w += holomorphic_generator(harm0) * Scalar::i();
        wshift.steps.push_back("w -> w + i(" + holomorphic_generator(harm0).to_string() + ")");
        apply_step(N, wshift, 1);
        R.expansion = *expand_in_re(N.P, l);
    }

    VectorField S(n, Rational(0));
    if (!P0.is_zero()) {
        auto cert = balanced_test(P0);
        R.conditions.push_back({"P_0 is balanced", cert.has_value(), poly_summary(P0)});
        if (!cert)
            return fail("P_0 is not balanced");
        R.p0_certificate = cert;
        S = cert->Y0;
    }
    const Rational mu = 1 - lambda[l];
    VectorField fixed(n, mu);
    fixed.F[static_cast<std::size_t>(l)] = SparsePoly::variable(n, Var::w()) * Scalar::i();
    SparsePoly zl = SparsePoly::variable(n, Var::z(l));
    for (int j = 0; j < n; ++j)
        fixed.F[static_cast<std::size_t>(j)] += zl * S.F[static_cast<std::size_t>(j)];
    VectorField a_field(n, mu), b_field(n, mu);
    a_field.F[static_cast<std::size_t>(l)] = zl.pow(2);
    b_field.G = zl.pow(3);
    auto coef = solve_completion(N.P, fixed, {a_field, b_field});
    R.conditions.push_back({"canonical field solves", coef.has_value(), ""});
    if (!coef)
        return fail("no canonical field of the expected form");
    R.a = (*coef)[0];
    R.b = (*coef)[1];
    R.canonicalY = combine(fixed, {a_field, b_field}, *coef);
    R.kind = NcCase::M2Balanced;
}

// First (n-1)-subset of the family with nonzero Jacobian over vars.
std::optional<std::vector<int>> generating_subset(const std::vector<SparsePoly> &family,
                                                  const std::vector<int> &vars)
{
    const int k = static_cast<int>(vars.size());
    const int f = static_cast<int>(family.size());
    std::vector<int> pick;
    std::optional<std::vector<int>> found;
    std::function<void(int)> rec = [&](int start) {
        if (found)
            return;
        if (static_cast<int>(pick.size()) == k) {
            std::vector<SparsePoly> R;
            for (int i : pick)
                R.push_back(family[static_cast<std::size_t>(i)]);
            if (!jacobian_delta(R, vars).is_zero())
                found = pick;
            return;
        }
        for (int i = start; i < f; ++i) {
            pick.push_back(i);
            rec(i + 1);
            pick.pop_back();
        }
    };
    rec(0);
    return found;
}

void finish_m1(NcReport &R, Normalization &N, const WeightVector &lambda)
{
    const int n = N.P.n(), l = N.l;
    auto fail = [&](const std::string &why) {
        R.kind = NcCase::Unsupported;
        R.reason = why;
    };
    bool equal = true;
    for (int j = 1; j < n; ++j)
        equal = equal && lambda[j] == lambda[0];
    R.conditions.push_back({"equal weights", equal, lambda.to_string()});
    if (!equal)
        return fail("unequal weights - canonical form not guaranteed");

    SparsePoly P1 = R.expansion[1];
    auto [harm1, mixed1] = split_pluriharmonic(P1);
    bool c1 = mixed1.is_zero() && !P1.is_zero();
    R.conditions.push_back({"P_1 is the real part of a holomorphic Q_1", c1, poly_summary(P1)});
    if (!c1)
        return fail("P_1 is not pluriharmonic");
    R.Q1 = holomorphic_generator(P1);
    const SparsePoly &Q1 = *R.Q1;

    auto [harm0, P0] = split_pluriharmonic(R.expansion[0]);
    if (!harm0.is_zero()) {
        CoordinateChange wshift = CoordinateChange::identity(n);
        wshift.w += holomorphic_generator(harm0) * Scalar::i();
        wshift.steps.push_back("w -> w + i(" + holomorphic_generator(harm0).to_string() + ")");
        apply_step(N, wshift, 1);
        R.expansion = *expand_in_re(N.P, l);
    }

    R.family = {Q1};
    for (const auto &q : full_factorization(P0, lambda).Qhat)
        R.family.push_back(q);
    std::vector<int> vars;
    for (int j = 0; j < n; ++j)
        if (j != l)
            vars.push_back(j);
    auto subset = generating_subset(R.family, vars);
    R.conditions.push_back({"generating family", subset.has_value(),
                            std::to_string(R.family.size()) + " polynomials"});
    if (!subset)
        return fail("family is not generating");
    R.chosen_subset = *subset;
    std::vector<SparsePoly> Rsel;
    for (int i : *subset)
        Rsel.push_back(R.family[static_cast<std::size_t>(i)]);
    const SparsePoly delta = jacobian_delta(Rsel, vars);

    const Rational mu = 1 - lambda[l];
    VectorField S(n, mu);
    bool divisible = true;
    std::string detail;
    for (std::size_t j = 0; j < vars.size(); ++j) {
        SparsePoly num = Q1 * jacobian_delta_H(Rsel, Rsel, static_cast<int>(j), vars) * Scalar(Rational(1, 2));
        auto [quot, rem] = divide(num, delta);
        if (!rem.is_zero()) {
            divisible = false;
            detail = "remainder for z" + std::to_string(vars[j] + 1);
        }
        S.F[static_cast<std::size_t>(vars[j])] = quot;
    }
    R.conditions.push_back({"divisibility by the Jacobian", divisible, detail});
    if (!divisible)
        return fail("Cramer numerators are not divisible by the Jacobian");

    bool reproduces = true;
    for (const auto &q : R.family)
        reproduces = reproduces && apply(S, q) == Q1 * q * Scalar(Rational(1, 2));
    R.conditions.push_back({"Y'_0(Q_k) = Q_1 Q_k / 2", reproduces, ""});
    if (!reproduces)
        return fail("Y'_0 does not reproduce the family");

    VectorField fixed = S;
    fixed.F[static_cast<std::size_t>(l)] += SparsePoly::variable(n, Var::w()) * Scalar::i();
    std::vector<VectorField> cands;
    for (const auto &m : zl_times_monomials(lambda, l, mu + lambda[l])) {
        VectorField C(n, mu);
        C.F[static_cast<std::size_t>(l)] = m;
        cands.push_back(std::move(C));
    }
    for (const auto &m : zl_times_monomials(lambda, l, mu + 1)) {
        VectorField C(n, mu);
        C.G = m;
        cands.push_back(std::move(C));
    }
    auto coef = solve_completion(N.P, fixed, cands);
    R.conditions.push_back({"canonical field solves", coef.has_value(), ""});
    if (!coef)
        return fail("no canonical field of the expected form");
    R.canonicalY = combine(fixed, cands, *coef);
    R.kind = NcCase::M1Canonical;
}

} // namespace

NcReport nc_analysis(const ModelHypersurface &M, const AutDecomposition &D)
{
    NcReport R;
    const int n = M.n();
    const auto &lambda = M.lambda();
    if (D.gnc.empty()) {
        R.reason = "no w-dependent symmetry of weight in (0, 1)";
        return R;
    }
    // Highest weight first: the shift then has the smallest |weight|.
    VectorField X;
    for (auto it = D.gnc.rbegin(); it != D.gnc.rend() && R.l < 0; ++it)
        for (const auto &Y : it->second.basis) {
            if (Y.w_degree() != 1)
                continue;
            VectorField cand = w_derivative(Y);
            for (int j = 0; j < n && R.l < 0; ++j) {
                const auto &F = cand.F[static_cast<std::size_t>(j)];
                if (F.size() == 1 && F.terms().begin()->first.total_degree() == 0) {
                    R.l = j;
                    X = cand;
                }
            }
            if (R.l >= 0)
                break;
        }
    if (R.l < 0) {
        R.reason = "no nontransversal shift";
        return R;
    }
    R.shift = X;
    const int l = R.l;
    Normalization N = straighten(M.P(), X, l);
    auto expansion = expand_in_re(N.P, l);
    if (!expansion) {
        R.reason = "P does not depend on z" + std::to_string(l + 1) + " through Re z" +
                   std::to_string(l + 1) + " only";
        return R;
    }
    R.expansion = *expansion;
    R.m = static_cast<int>(R.expansion.size()) - 1;
    if (R.m == 2)
        finish_m2(R, N, lambda);
    else if (R.m == 1)
        finish_m1(R, N, lambda);
    else
        R.reason = "top power m = " + std::to_string(R.m) + " is outside {1, 2}";
    R.change = N.change;
    R.normalized_P = N.P;

    if (R.canonicalY) {
        const auto &Y = *R.canonicalY;
        bool tangent = raw_tangency_residual(Y, N.P).is_zero();
        VectorField rest = w_derivative(Y) - VectorField::d_z(n, l, Scalar::i());
        rest.weight = Y.weight - 1;
        bool integrates = rest.is_rigid();
        R.conditions.push_back({"canonical field is tangent", tangent, ""});
        R.conditions.push_back({"[d/dw, Y] = i d/dz_l + rigid", integrates, ""});
        SparsePoly lhs = imag_part(N.change.w) - compose(M.P(), N.change.z, n);
        SparsePoly rhs = (imag_part(SparsePoly::variable(n, Var::w())) - N.P) * Scalar(N.scale);
        bool pulled = lhs == rhs;
        R.conditions.push_back({"coordinate change maps the model", pulled, ""});
        if (!tangent || !integrates || !pulled)
            throw Error(ErrorKind::InternalRankDrop, "canonical field failed verification");
    }
    return R;
}

NcReport nc_analysis(const ModelHypersurface &M)
{
    return nc_analysis(M, full_decomposition(M));
}

} // namespace crsym
