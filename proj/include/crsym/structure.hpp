#ifndef CRSYM_STRUCTURE_HPP
#define CRSYM_STRUCTURE_HPP

#include "crsym/field.hpp"
#include "crsym/linalg.hpp"
#include "crsym/model.hpp"
#include "crsym/tangency.hpp"

#include <optional>
#include <string>
#include <vector>

namespace crsym {

// ---------------------------------------------------------------------------------------------
// Balanced models and reproducing fields

struct BalancedCertificate {
    /// Lambda' with |alpha|_{Lambda'} = |beta|_{Lambda'} = 1 on every term of P.
    std::vector<Rational> lambda_prime;
    /// sum_j lambda'_j z_j d/dz_j, so that Y0(P) = P.
    VectorField Y0;

    friend bool operator==(const BalancedCertificate &, const BalancedCertificate &) = default;
};

/// Solves the balance equations; free unknowns are set to zero.
std::optional<BalancedCertificate> balanced_test(const SparsePoly &P);
std::optional<BalancedCertificate> balanced_test(const ModelHypersurface &M);

/// Holomorphic w-free Z, homogeneous of the weighted degree of S, with Z(R) = S * R.
/// With diagonal_only, Z is restricted to sum_j c_j S z_j d/dz_j.
std::optional<VectorField> solve_reproducing(const SparsePoly &R, const SparsePoly &S,
                                             const WeightVector &lambda,
                                             bool diagonal_only = false);

// ---------------------------------------------------------------------------------------------
// Tube identity (Re z)^(2m-1) = sum_j (Re z)^j Re(alpha_j z^(2m-1-j))

struct LemtubResult {
    std::vector<Scalar> alpha;
    /// The triangular matching system has a nonzero diagonal (unique solution).
    bool nonsingular = false;
    /// The expanded identity is the zero polynomial.
    bool verified = false;
};

LemtubResult lemtub_coefficients(int m);

// ---------------------------------------------------------------------------------------------
// Minimal factorizations and Jacobians

struct Factorization {
    /// P_c = sum_r Q[r] * conj(Qhat[r]).
    std::vector<SparsePoly> Q;
    std::vector<SparsePoly> Qhat;
};

/// Rank factorization of a single bihomogeneous component. Throws NotBihomogeneous.
Factorization minimal_factorization(const SparsePoly &Pc, const WeightVector &lambda);

/// Concatenated factorizations of every bihomogeneous component of P.
Factorization full_factorization(const SparsePoly &P, const WeightVector &lambda);

/// det(dR_i / dz_{vars[k]}). Throws DimensionMismatch.
SparsePoly jacobian_delta(const std::vector<SparsePoly> &R, const std::vector<int> &vars);

/// Same determinant with column j replaced by H.
SparsePoly jacobian_delta_H(const std::vector<SparsePoly> &R, const std::vector<SparsePoly> &H,
                            int j, const std::vector<int> &vars);

// ---------------------------------------------------------------------------------------------
// Chains

using ScalarMatrix = Matrix<Scalar>;

/// Symmetric pair of Y-chains of width s and length l:
/// Y(U[j]) = A[j] U[j+1], Y(U[l-1]) = 0, and likewise for V with B.
struct ChainPair {
    int s = 0;
    int l = 0;
    std::vector<std::vector<SparsePoly>> U;
    std::vector<std::vector<SparsePoly>> V;
    std::vector<ScalarMatrix> A;
    std::vector<ScalarMatrix> B;
    /// z-weight of U[0].
    Rational start_weight;

    /// Re sum_k <U[k], V[l-1-k]> with <a, b> = sum_i a_i conj(b_i).
    SparsePoly pairing() const;

    friend bool operator==(const ChainPair &, const ChainPair &) = default;
};

struct ChainDecomposition {
    std::vector<ChainPair> pairs;
    /// Sum of the pairings; equals P.
    SparsePoly reconstruction;
};

/// Checks that Y is rigid, nonzero, of weight in (0, 1) and tangent. Throws NotGeneralizedRotation.
void require_generalized_rotation(const VectorField &Y, const ModelHypersurface &M);

ChainDecomposition chain_decomposition(const ModelHypersurface &M, const VectorField &Y);

struct ChainCheck {
    bool ok = true;
    std::vector<std::string> violations;
};

ChainCheck verify_chain(const ModelHypersurface &M, const VectorField &Y,
                        const ChainDecomposition &D);

// ---------------------------------------------------------------------------------------------
// Analysis of w-dependent symmetries

/// Holomorphic coordinate change old = Phi(new): z_j = z[j], w = w_of.
struct CoordinateChange {
    std::vector<SparsePoly> z;
    SparsePoly w;
    /// Human-readable record of each applied step.
    std::vector<std::string> steps;

    static CoordinateChange identity(int n);
    /// Apply `next` after this change (new coordinates of this become old ones of next).
    CoordinateChange then(const CoordinateChange &next) const;

    friend bool operator==(const CoordinateChange &, const CoordinateChange &) = default;
};

enum class NcCase { M2Balanced, M1Canonical, Unsupported };

const char *nc_case_name(NcCase c);

struct NcCondition {
    std::string name;
    bool passed = false;
    std::string detail;

    friend bool operator==(const NcCondition &, const NcCondition &) = default;
};

struct NcReport {
    NcCase kind = NcCase::Unsupported;
    std::string reason;
    /// Distinguished variable (0-based), or -1 when no nontransversal shift integrates.
    int l = -1;
    /// Top power of Re z_l; -1 when not computed.
    int m = -1;
    /// The shift X = [d/dw, Y] used for the normalization, in original coordinates.
    std::optional<VectorField> shift;
    /// Change from original to normalized coordinates.
    std::optional<CoordinateChange> change;
    /// Model in normalized coordinates; pluriharmonic terms in z_l may remain.
    std::optional<SparsePoly> normalized_P;
    /// P_k with P = sum_k (Re z_l)^k P_k in normalized coordinates.
    std::vector<SparsePoly> expansion;
    std::optional<VectorField> canonicalY;
    /// Balanced certificate of P_0 (two-power case).
    std::optional<BalancedCertificate> p0_certificate;
    /// Q_1 and the family used for the Jacobian conditions (one-power case).
    std::optional<SparsePoly> Q1;
    std::vector<SparsePoly> family;
    std::vector<int> chosen_subset;
    /// Constants of the two-power canonical field.
    std::optional<Scalar> a, b;
    std::vector<NcCondition> conditions;

    friend bool operator==(const NcReport &, const NcReport &) = default;
};

/// Uses the w-dependent representatives of D (computed for M).
NcReport nc_analysis(const ModelHypersurface &M, const AutDecomposition &D);
NcReport nc_analysis(const ModelHypersurface &M);

} // namespace crsym

#endif
