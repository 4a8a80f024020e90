#ifndef CRSYM_PARSER_HPP
#define CRSYM_PARSER_HPP

#include "crsym/poly.hpp"
#include "crsym/weights.hpp"

#include <optional>
#include <string>
#include <vector>

namespace crsym {

/// Right-hand side text plus optional declared weights.
struct ModelSource {
    std::string text;
    std::optional<std::vector<Rational>> declared_weights;
};

struct ParsedModel {
    SparsePoly P;
    std::optional<WeightVector> weights;
};

/// Parses a polynomial expression in z1..zn, conj(.), Re/Im(.), |.|^(2m), x_k = Re z_k,
/// y_k = Im z_k, i and rational constants. The dimension is the largest variable index, or
/// min_n when larger. Throws SyntaxError, Error(NonPolynomial) or Error(OddAbsolutePower).
SparsePoly parse_polynomial(const std::string &text, int min_n = 0);

ParsedModel parse_model(const ModelSource &src);

/// Reads "Im w = <expr>" from the first nonblank line and an optional "weights: a/b, ..."
/// line. Throws SyntaxError on malformed headers.
ModelSource parse_model_text(const std::string &content);
ModelSource read_model_file(const std::string &path);

/// Parses "a/b, c/d, ..." (commas optional whitespace).
std::vector<Rational> parse_weight_list(const std::string &text);

} // namespace crsym

#endif
