#ifndef CRSYM_ERRORS_HPP
#define CRSYM_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace crsym {

enum class ErrorKind {
    NotReal,
    HasPluriharmonicTerms,
    NotHomogeneous,
    ZeroPolynomial,
    WeightOutOfRange,
    InvalidModelPolynomial,
    WeightMismatch,
    NotTangent,
    NotBihomogeneous,
    NotGeneralizedRotation,
    InternalRankDrop,
    DimensionMismatch,
    InvalidChain,
    SyntaxError,
    NonPolynomial,
    OddAbsolutePower,
    DegenerateModel,
};

const char *error_kind_name(ErrorKind kind);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string &detail)
        : std::runtime_error(std::string(error_kind_name(kind)) + ": " + detail), kind_(kind)
    {
    }

    ErrorKind kind() const { return kind_; }

private:
    ErrorKind kind_;
};

/// Parser failure with a 0-based character offset into the input.
class SyntaxError : public Error {
public:
    SyntaxError(std::size_t position, const std::string &detail)
        : Error(ErrorKind::SyntaxError, "at position " + std::to_string(position) + ": " + detail),
          position_(position)
    {
    }

    std::size_t position() const { return position_; }

private:
    std::size_t position_;
};

} // namespace crsym

#endif
