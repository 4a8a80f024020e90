#ifndef CRSYM_FIELD_HPP
#define CRSYM_FIELD_HPP

#include "crsym/poly.hpp"
#include "crsym/weights.hpp"

#include <optional>
#include <string>
#include <vector>

namespace crsym {

/// Holomorphic polynomial vector field sum_j F_j d/dz_j + G d/dw with homogeneous weight mu:
/// F_j has weighted degree mu + lambda_j and G has weighted degree mu + 1.
struct VectorField {
    std::vector<SparsePoly> F;
    SparsePoly G;
    Rational weight;

    VectorField() = default;
    VectorField(int n, Rational weight);

    static VectorField d_w(int n);
    static VectorField d_z(int n, int j, const Scalar &c = Scalar(1));

    int n() const { return static_cast<int>(F.size()); }
    bool is_zero() const;
    /// Coefficients do not depend on w.
    bool is_rigid() const;
    int w_degree() const;

    VectorField &operator+=(const VectorField &o);
    VectorField &operator-=(const VectorField &o);
    VectorField &operator*=(const Scalar &c);
    friend VectorField operator+(VectorField a, const VectorField &b) { return a += b; }
    friend VectorField operator-(VectorField a, const VectorField &b) { return a -= b; }
    friend VectorField operator*(VectorField a, const Scalar &c) { return a *= c; }
    friend bool operator==(const VectorField &a, const VectorField &b)
    {
        return a.F == b.F && a.G == b.G && a.weight == b.weight;
    }

    /// Checks that every coefficient is holomorphic and weighted homogeneous of the right degree.
    bool weights_consistent(const WeightVector &lambda) const;

    std::string to_string() const;
};

/// Y(f) = sum_j F_j df/dz_j + G df/dw, the holomorphic derivation (conjugate variables untouched).
SparsePoly apply(const VectorField &Y, const SparsePoly &f);

/// Standard bracket [Y1, Y2] = Y1(Y2) - Y2(Y1) componentwise; weights add.
VectorField lie_bracket(const VectorField &a, const VectorField &b);

/// d/dw applied to every coefficient, i.e. [d_w, Y].
VectorField w_derivative(const VectorField &Y);

/// 1/2 Im G(z, u+iP) - Re sum_j F_j(z, u+iP) dP/dz_j. Y is an infinitesimal automorphism of
/// {Im w = P} iff this is the zero polynomial. P may carry pluriharmonic terms.
SparsePoly raw_tangency_residual(const VectorField &Y, const SparsePoly &P);

} // namespace crsym

#endif
