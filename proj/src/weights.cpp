#include "crsym/weights.hpp"

#include "crsym/errors.hpp"

namespace crsym {

const char *error_kind_name(ErrorKind kind)
{
    switch (kind) {
    case ErrorKind::NotReal: return "NotReal";
    case ErrorKind::HasPluriharmonicTerms: return "HasPluriharmonicTerms";
    case ErrorKind::NotHomogeneous: return "NotHomogeneous";
    case ErrorKind::ZeroPolynomial: return "ZeroPolynomial";
    case ErrorKind::WeightOutOfRange: return "WeightOutOfRange";
    case ErrorKind::InvalidModelPolynomial: return "InvalidModelPolynomial";
    case ErrorKind::WeightMismatch: return "WeightMismatch";
    case ErrorKind::NotTangent: return "NotTangent";
    case ErrorKind::NotBihomogeneous: return "NotBihomogeneous";
    case ErrorKind::NotGeneralizedRotation: return "NotGeneralizedRotation";
    case ErrorKind::InternalRankDrop: return "InternalRankDrop";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::InvalidChain: return "InvalidChain";
    case ErrorKind::SyntaxError: return "SyntaxError";
    case ErrorKind::NonPolynomial: return "NonPolynomial";
    case ErrorKind::OddAbsolutePower: return "OddAbsolutePower";
    case ErrorKind::DegenerateModel: return "DegenerateModel";
    }
    return "Unknown";
}

WeightVector::WeightVector(std::vector<Rational> lambdas) : l_(std::move(lambdas))
{
    for (auto &q : l_)
        q.canonicalize();
    const Rational half(1, 2);
    for (std::size_t j = 0; j < l_.size(); ++j) {
        if (sgn(l_[j]) <= 0 || l_[j] > half)
            throw Error(ErrorKind::WeightOutOfRange,
                        "lambda_" + std::to_string(j + 1) + " = " + crsym::to_string(l_[j]) +
                            " not in (0, 1/2]");
        if (j > 0 && l_[j] > l_[j - 1])
            throw Error(ErrorKind::WeightOutOfRange, "weights must be nonincreasing");
    }
}

WeightVector WeightVector::unchecked(std::vector<Rational> lambdas)
{
    WeightVector w;
    w.l_ = std::move(lambdas);
    for (auto &q : w.l_)
        q.canonicalize();
    return w;
}

mpz_class WeightVector::denominator_lcm() const
{
    mpz_class l = 1;
    for (const auto &q : l_)
        mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), q.get_den().get_mpz_t());
    return l;
}

bool WeightVector::all_equal() const
{
    for (const auto &q : l_)
        if (q != l_.front())
            return false;
    return true;
}

std::string WeightVector::to_string() const
{
    std::string s = "(";
    for (std::size_t j = 0; j < l_.size(); ++j) {
        if (j)
            s += ", ";
        s += crsym::to_string(l_[j]);
    }
    return s + ")";
}

} // namespace crsym
