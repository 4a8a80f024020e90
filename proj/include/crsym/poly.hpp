#ifndef CRSYM_POLY_HPP
#define CRSYM_POLY_HPP

#include "crsym/scalar.hpp"

#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace crsym {

class WeightVector;

/// Identifies one of z_j, conj(z_j), w, conj(w) or the auxiliary real variable u = Re w.
struct Var {
    enum class Kind { Z, ZBar, W, WBar, U };
    Kind kind;
    int index = 0;

    static Var z(int j) { return {Kind::Z, j}; }
    static Var zbar(int j) { return {Kind::ZBar, j}; }
    static Var w() { return {Kind::W, 0}; }
    static Var wbar() { return {Kind::WBar, 0}; }
    static Var u() { return {Kind::U, 0}; }
};

/// Exponent vector z^alpha conj(z)^beta w^p conj(w)^q u^l over n complex variables.
///
/// Storage layout is [alpha_0..alpha_{n-1}, beta_0..beta_{n-1}, p, q, l]. The auxiliary
/// exponent l only appears in polynomials produced by substitute_w.
class Monomial {
public:
    Monomial() = default;
    explicit Monomial(int n) : e_(static_cast<std::size_t>(2 * n + 3), 0) {}

    int n() const { return static_cast<int>((e_.size() - 3) / 2); }

    int alpha(int j) const { return e_[static_cast<std::size_t>(j)]; }
    int beta(int j) const { return e_[static_cast<std::size_t>(n() + j)]; }
    int p() const { return e_[e_.size() - 3]; }
    int q() const { return e_[e_.size() - 2]; }
    int l() const { return e_[e_.size() - 1]; }

    int &alpha(int j) { return e_[static_cast<std::size_t>(j)]; }
    int &beta(int j) { return e_[static_cast<std::size_t>(n() + j)]; }
    int &p() { return e_[e_.size() - 3]; }
    int &q() { return e_[e_.size() - 2]; }
    int &l() { return e_[e_.size() - 1]; }

    int exponent(Var v) const;
    int &exponent(Var v);

    int total_degree() const;
    bool is_holomorphic() const;
    /// Only z exponents (and possibly w) are nonzero, or only conj(z) (and conj(w)).
    bool is_pluriharmonic() const;

    Monomial conj() const;
    Monomial operator*(const Monomial &o) const;

    /// z-part weight sum_i alpha_i lambda_i.
    Rational holomorphic_weight(const WeightVector &lambda) const;
    /// Full weighted degree (p + q + l) + sum_i (alpha_i + beta_i) lambda_i.
    Rational weighted_degree(const WeightVector &lambda) const;

    const std::vector<int> &exponents() const { return e_; }
    std::vector<int> &exponents() { return e_; }

    friend bool operator==(const Monomial &a, const Monomial &b) { return a.e_ == b.e_; }

private:
    std::vector<int> e_;
};

/// Graded lexicographic order on (alpha, beta, p, q, l).
struct GrlexLess {
    bool operator()(const Monomial &a, const Monomial &b) const;
};

/// Exact sparse polynomial with Gaussian-rational coefficients. No zero coefficients are stored.
class SparsePoly {
public:
    using TermMap = std::map<Monomial, Scalar, GrlexLess>;

    SparsePoly() = default;
    explicit SparsePoly(int n) : n_(n) {}

    static SparsePoly constant(int n, const Scalar &c);
    static SparsePoly variable(int n, Var v);
    static SparsePoly monomial(const Monomial &m, const Scalar &c = Scalar(1));

    int n() const { return n_; }
    const TermMap &terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }

    Scalar coeff(const Monomial &m) const;
    void add_term(const Monomial &m, const Scalar &c);

    SparsePoly operator-() const;
    SparsePoly &operator+=(const SparsePoly &o);
    SparsePoly &operator-=(const SparsePoly &o);
    SparsePoly &operator*=(const Scalar &c);
    friend SparsePoly operator+(SparsePoly a, const SparsePoly &b) { return a += b; }
    friend SparsePoly operator-(SparsePoly a, const SparsePoly &b) { return a -= b; }
    friend SparsePoly operator*(SparsePoly a, const Scalar &c) { return a *= c; }
    friend SparsePoly operator*(const Scalar &c, SparsePoly a) { return a *= c; }
    friend SparsePoly operator*(const SparsePoly &a, const SparsePoly &b);
    friend bool operator==(const SparsePoly &a, const SparsePoly &b)
    {
        return a.terms_ == b.terms_;
    }
    friend bool operator!=(const SparsePoly &a, const SparsePoly &b) { return !(a == b); }

    SparsePoly times_monomial(const Monomial &m, const Scalar &c = Scalar(1)) const;
    SparsePoly pow(int k) const;

    bool is_real_type() const;
    bool is_holomorphic_type() const;
    bool is_w_free() const;
    bool is_u_free() const;
    /// Highest exponent of the given variable, or -1 for the zero polynomial.
    int degree_in(Var v) const;

    /// Leading term under GrlexLess (largest monomial).
    const std::pair<const Monomial, Scalar> &leading_term() const;

    std::string to_string() const;

private:
    int n_ = 0;
    TermMap terms_;
};

/// Swaps z <-> conj(z), w <-> conj(w) and conjugates coefficients. u is real and kept.
SparsePoly conjugate(const SparsePoly &p);
SparsePoly real_part(const SparsePoly &p);
SparsePoly imag_part(const SparsePoly &p);

SparsePoly partial(const SparsePoly &p, Var v);

/// Replaces w by u + i*P and conj(w) by u - i*P. P must be real-type and free of w and u.
SparsePoly substitute_w(const SparsePoly &p, const SparsePoly &P);

/// Terms grouped by full weighted degree, ascending.
std::vector<std::pair<Rational, SparsePoly>> weighted_components(const SparsePoly &p,
                                                                 const WeightVector &lambda);

/// Terms grouped by z-only weight sum alpha_i lambda_i, ascending. p must be w-free.
std::vector<std::pair<Rational, SparsePoly>> holo_weight_expansion(const SparsePoly &p,
                                                                   const WeightVector &lambda);

/// Substitutes holomorphic images for z (and optionally w); conjugate variables receive the
/// conjugated images. Images live in a space with `target_n` z-variables. p must be u-free.
SparsePoly compose(const SparsePoly &p, std::span<const SparsePoly> z_images, int target_n,
                   const std::optional<SparsePoly> &w_image = std::nullopt);

/// Replaces conj(z_j) by z_j (used to read off dependence on Re z_j only).
SparsePoly identify_conjugate(const SparsePoly &p, int j);

/// Coefficients of powers of v: p = sum_k v^k * result[k], with result[k] free of v.
std::map<int, SparsePoly> collect_powers(const SparsePoly &p, Var v);

/// Splits p into (pluriharmonic terms, remaining mixed terms).
std::pair<SparsePoly, SparsePoly> split_pluriharmonic(const SparsePoly &p);

/// Multivariate division with remainder by a single divisor in grlex order.
std::pair<SparsePoly, SparsePoly> divide(const SparsePoly &p, const SparsePoly &divisor);

/// Embeds p (over n variables) into a space with more z-variables; index map gives new index.
SparsePoly reindex(const SparsePoly &p, int target_n, std::span<const int> index_map);

} // namespace crsym

#endif
