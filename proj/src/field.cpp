#include "crsym/field.hpp"

#include "crsym/errors.hpp"

namespace crsym {

VectorField::VectorField(int n, Rational weight)
    : F(static_cast<std::size_t>(n), SparsePoly(n)), G(n), weight(std::move(weight))
{
}

VectorField VectorField::d_w(int n)
{
    VectorField Y(n, Rational(-1));
    Y.G = SparsePoly::constant(n, Scalar(1));
    return Y;
}

VectorField VectorField::d_z(int n, int j, const Scalar &c)
{
    VectorField Y(n, Rational(0));
    Y.F[static_cast<std::size_t>(j)] = SparsePoly::constant(n, c);
    return Y;
}

bool VectorField::is_zero() const
{
    for (const auto &f : F)
        if (!f.is_zero())
            return false;
    return G.is_zero();
}

bool VectorField::is_rigid() const { return w_degree() <= 0; }

int VectorField::w_degree() const
{
    int d = G.degree_in(Var::w());
    for (const auto &f : F)
        d = std::max(d, f.degree_in(Var::w()));
    return d;
}

VectorField &VectorField::operator+=(const VectorField &o)
{
    if (F.size() != o.F.size())
        throw Error(ErrorKind::DimensionMismatch, "adding fields of different dimension");
    for (std::size_t j = 0; j < F.size(); ++j)
        F[j] += o.F[j];
    G += o.G;
    return *this;
}

VectorField &VectorField::operator-=(const VectorField &o)
{
    if (F.size() != o.F.size())
        throw Error(ErrorKind::DimensionMismatch, "subtracting fields of different dimension");
    for (std::size_t j = 0; j < F.size(); ++j)
        F[j] -= o.F[j];
    G -= o.G;
    return *this;
}

VectorField &VectorField::operator*=(const Scalar &c)
{
    for (auto &f : F)
        f *= c;
    G *= c;
    return *this;
}

bool VectorField::weights_consistent(const WeightVector &lambda) const
{
    if (lambda.n() != n())
        return false;
    auto homogeneous = [&](const SparsePoly &p, const Rational &deg) {
        if (!p.is_holomorphic_type())
            return false;
        for (const auto &[m, c] : p.terms())
            if (m.weighted_degree(lambda) != deg)
                return false;
        return true;
    };
    for (int j = 0; j < n(); ++j)
        if (!homogeneous(F[static_cast<std::size_t>(j)], weight + lambda[j]))
            return false;
    return homogeneous(G, weight + 1);
}

std::string VectorField::to_string() const
{
    std::string s;
    auto add = [&](const SparsePoly &c, const std::string &d) {
        if (c.is_zero())
            return;
        if (!s.empty())
            s += " + ";
        s += "(" + c.to_string() + ")*" + d;
    };
    for (int j = 0; j < n(); ++j)
        add(F[static_cast<std::size_t>(j)], "d/dz" + std::to_string(j + 1));
    add(G, "d/dw");
    return s.empty() ? "0" : s;
}

SparsePoly apply(const VectorField &Y, const SparsePoly &f)
{
    SparsePoly r(f.n());
    for (int j = 0; j < Y.n(); ++j) {
        const auto &Fj = Y.F[static_cast<std::size_t>(j)];
        if (Fj.is_zero())
            continue;
        SparsePoly d = partial(f, Var::z(j));
        if (!d.is_zero())
            r += Fj * d;
    }
    if (!Y.G.is_zero()) {
        SparsePoly d = partial(f, Var::w());
        if (!d.is_zero())
            r += Y.G * d;
    }
    return r;
}

VectorField lie_bracket(const VectorField &a, const VectorField &b)
{
    if (a.n() != b.n())
        throw Error(ErrorKind::DimensionMismatch, "bracket of fields of different dimension");
    VectorField r(a.n(), a.weight + b.weight);
    for (std::size_t j = 0; j < a.F.size(); ++j)
        r.F[j] = apply(a, b.F[j]) - apply(b, a.F[j]);
    r.G = apply(a, b.G) - apply(b, a.G);
    return r;
}

VectorField w_derivative(const VectorField &Y)
{
    VectorField r(Y.n(), Y.weight - 1);
    for (std::size_t j = 0; j < Y.F.size(); ++j)
        r.F[j] = partial(Y.F[j], Var::w());
    r.G = partial(Y.G, Var::w());
    return r;
}

SparsePoly raw_tangency_residual(const VectorField &Y, const SparsePoly &P)
{
    const int n = Y.n();
    SparsePoly acc(n);
    for (int j = 0; j < n; ++j) {
        const auto &Fj = Y.F[static_cast<std::size_t>(j)];
        if (Fj.is_zero())
            continue;
        acc += substitute_w(Fj, P) * partial(P, Var::z(j));
    }
    SparsePoly r = imag_part(substitute_w(Y.G, P)) * Scalar(Rational(1, 2));
    r -= real_part(acc);
    return r;
}

} // namespace crsym
