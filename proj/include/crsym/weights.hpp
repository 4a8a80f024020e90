#ifndef CRSYM_WEIGHTS_HPP
#define CRSYM_WEIGHTS_HPP

#include "crsym/scalar.hpp"

#include <string>
#include <vector>

namespace crsym {

/// Weights lambda_1 >= ... >= lambda_n with 0 < lambda_j <= 1/2.
class WeightVector {
public:
    WeightVector() = default;
    /// Throws ModelError(WeightOutOfRange) when the constraints fail.
    explicit WeightVector(std::vector<Rational> lambdas);

    /// Builds without validation. Used for auxiliary tuples that are not multitype weights.
    static WeightVector unchecked(std::vector<Rational> lambdas);

    int n() const { return static_cast<int>(l_.size()); }
    const Rational &operator[](int j) const { return l_[static_cast<std::size_t>(j)]; }
    const std::vector<Rational> &values() const { return l_; }

    /// lcm of denominators.
    mpz_class denominator_lcm() const;
    bool all_equal() const;

    std::string to_string() const;

    friend bool operator==(const WeightVector &a, const WeightVector &b) { return a.l_ == b.l_; }
    friend bool operator<(const WeightVector &a, const WeightVector &b) { return a.l_ < b.l_; }

private:
    std::vector<Rational> l_;
};

} // namespace crsym

#endif
