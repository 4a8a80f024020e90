#ifndef CRSYM_TANGENCY_HPP
#define CRSYM_TANGENCY_HPP

#include "crsym/field.hpp"
#include "crsym/model.hpp"

#include <map>
#include <string>
#include <vector>

namespace crsym {

struct GradedComponent {
    Rational weight;
    /// Real basis. Rigid fields come first, followed by w-dependent representatives.
    std::vector<VectorField> basis;

    int dimension() const { return static_cast<int>(basis.size()); }
};

/// g = g_{-1} + sum g_{-mu} + g_0 + g_c + g_nc + g_1.
struct AutDecomposition {
    /// Full kernel at every candidate weight with a nonzero kernel.
    std::map<Rational, GradedComponent> components;
    /// Rigid fields of weight in (0, 1).
    std::map<Rational, GradedComponent> gc;
    /// w-dependent representatives of weight in (0, 1), modulo gc.
    std::map<Rational, GradedComponent> gnc;
    /// g_1 is nonzero.
    bool transversal = false;

    int total_dimension() const;
    int dimension_at(const Rational &mu) const;
    int gc_dimension() const;
    int gnc_dimension() const;
    int g1_dimension() const { return dimension_at(Rational(1)); }
};

/// Residual of Re Y against Im w = P; zero iff Y is an infinitesimal automorphism.
/// Throws WeightMismatch when Y is not homogeneous of its declared weight.
SparsePoly tangency_residual(const VectorField &Y, const ModelHypersurface &M);

/// Every mu in [-1, 1] carried by some monomial field, ascending.
std::vector<Rational> candidate_weights(const ModelHypersurface &M);

GradedComponent graded_component(const ModelHypersurface &M, const Rational &mu);

struct DecompositionOptions {
    /// Refuse holomorphically degenerate models (checked up to the default bound).
    bool check_degeneracy = true;
    /// Worker threads for independent weights; 0 picks the hardware count.
    unsigned threads = 0;
};

AutDecomposition full_decomposition(const ModelHypersurface &M,
                                    const DecompositionOptions &opts = {});

enum class FieldKind { Zero, Shift, Rotation, GeneralizedRotation, Integration, Transversal };

const char *field_kind_name(FieldKind k);

struct FieldClassification {
    FieldKind kind = FieldKind::Zero;
    /// Number of brackets with d/dw needed to reach a rigid field.
    int l = 0;
    /// The rigid field reached by iterated brackets with d/dw.
    VectorField rigid_base;
};

/// Throws NotTangent if Y has a nonzero residual on M.
FieldClassification classify_field(const VectorField &Y, const ModelHypersurface &M);

/// Rank of a family of fields as a real vector space.
int real_rank(const std::vector<VectorField> &fields);

/// Whether Y lies in the real span of the given fields.
bool in_real_span(const VectorField &Y, const std::vector<VectorField> &fields);

} // namespace crsym

#endif
