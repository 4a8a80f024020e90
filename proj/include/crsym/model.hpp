#ifndef CRSYM_MODEL_HPP
#define CRSYM_MODEL_HPP

#include "crsym/field.hpp"
#include "crsym/poly.hpp"
#include "crsym/weights.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace crsym {

/// Validated rigid hypersurface {Im w = P(z, conj z)} with P real, free of pluriharmonic
/// terms and weighted homogeneous of degree one.
class ModelHypersurface {
public:
    int n() const { return lambda_.n(); }
    const WeightVector &lambda() const { return lambda_; }
    const SparsePoly &P() const { return P_; }

    friend bool operator==(const ModelHypersurface &a, const ModelHypersurface &b)
    {
        return a.lambda_ == b.lambda_ && a.P_ == b.P_;
    }

private:
    friend ModelHypersurface validate_model(const SparsePoly &P, const WeightVector &lambda);
    WeightVector lambda_;
    SparsePoly P_;
};

ModelHypersurface validate_model(const SparsePoly &P, const WeightVector &lambda);

/// (P', H) with H the pluriharmonic terms of P and P' = P - H.
std::pair<SparsePoly, SparsePoly> strip_pluriharmonic(const SparsePoly &P);

/// Vertices of {lambda : sum_i (alpha_i + beta_i) lambda_i = 1 for every term} intersected
/// with 1/2 >= lambda_1 >= ... >= lambda_n > 0, sorted lexicographically.
std::vector<WeightVector> infer_weights(const SparsePoly &P);

/// Holomorphic monomials z^k w^p with weighted degree <= max_degree, in grlex order.
std::vector<Monomial> holomorphic_monomials(const WeightVector &lambda, const Rational &max_degree,
                                            bool with_w);

struct NondegeneracyVerdict {
    bool degenerate = false;
    /// Largest field weight searched.
    Rational bound;
    /// Tangent field sum a_j(z) d/dz_j with sum a_j P_{z_j} = 0, when degenerate.
    std::optional<VectorField> witness;

    friend bool operator==(const NondegeneracyVerdict &, const NondegeneracyVerdict &) = default;
};

/// Weight bound used when none is supplied.
Rational default_degeneracy_bound(const ModelHypersurface &M);

/// Searches w-free fields X = sum a_j d/dz_j of weight mu <= max_weight with X(P) = 0.
NondegeneracyVerdict is_holomorphically_nondegenerate(const ModelHypersurface &M,
                                                      const Rational &max_weight);

} // namespace crsym

#endif
