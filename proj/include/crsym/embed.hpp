#ifndef CRSYM_EMBED_HPP
#define CRSYM_EMBED_HPP

#include "crsym/structure.hpp"

#include <optional>
#include <string>
#include <vector>

namespace crsym {

/// Quadric {Im eta = form(zeta, conj(zeta))} in C^(K) with K - 1 zeta variables and eta.
/// The target space is modelled as z-variables zeta_1..zeta_{K-1} with eta in the w slot.
struct Hyperquadric {
    /// zeta count + 1 (eta).
    int K = 0;
    /// Real quadratic form over the zeta variables; may carry pluriharmonic quadratic terms.
    SparsePoly form;

    struct PairTerm {
        int i = 0;
        int j = 0;
        /// Contributes c * zeta_i * conj(zeta_j) to the Hermitian part.
        Scalar c;
    };

    int zeta_count() const { return K - 1; }
    /// Mixed terms of the form.
    std::vector<PairTerm> pairing() const;
    Matrix<Scalar> hermitian_matrix() const;
    /// Im eta - form.
    SparsePoly defining() const;

    friend bool operator==(const Hyperquadric &, const Hyperquadric &) = default;
};

/// Holomorphic map (z, w) -> (zeta, eta).
struct PolyMap {
    std::vector<SparsePoly> zeta;
    SparsePoly eta;

    friend bool operator==(const PolyMap &, const PolyMap &) = default;
};

enum class EmbeddingKind { Chain, Balanced, NonRigid };

const char *embedding_kind_name(EmbeddingKind k);

struct Embedding {
    EmbeddingKind kind = EmbeddingKind::Chain;
    Hyperquadric Q;
    PolyMap f;
    /// Symmetry of the source model and its pushforward on Q.
    VectorField Y;
    VectorField Z;

    friend bool operator==(const Embedding &, const Embedding &) = default;
};

struct RelatednessCertificate {
    /// Defining polynomial of Q composed with f equals Im w - P.
    bool pullback_ok = false;
    /// Y(f_i) = Z_i o f for every component.
    bool related_ok = false;
    /// Z is tangent to Q.
    bool tangent_ok = false;
    /// Hermitian part of the form has full rank K - 1.
    bool nondegenerate_ok = false;
    int hermitian_rank = 0;
    std::vector<std::string> failures;

    bool ok() const { return pullback_ok && related_ok && tangent_ok && nondegenerate_ok; }

    friend bool operator==(const RelatednessCertificate &, const RelatednessCertificate &) = default;
};

/// Chain construction for a generalized rotation Y with chain decomposition D.
/// Throws InvalidChain when D does not pass verify_chain.
Embedding build_chain_embedding(const ModelHypersurface &M, const VectorField &Y,
                                const ChainDecomposition &D);

/// Monomial construction for a balanced model; Y = (sum lambda'_j z_j d/dz_j) w + w^2 d/dw.
Embedding build_balanced_embedding(const ModelHypersurface &M, const BalancedCertificate &cert);

/// Embedding of the canonical field of a non-rigid report, in its normalized coordinates.
/// Returns nullopt when the report has no canonical field or the components of Y cannot be
/// written as polynomials in the chosen zeta family.
std::optional<Embedding> build_nc_embedding(const ModelHypersurface &M, const NcReport &R);

/// Checks the certificate identities exactly against Im w = P.
RelatednessCertificate verify_certificate(const SparsePoly &P, const Embedding &E);

} // namespace crsym

#endif
