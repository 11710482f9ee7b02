#pragma once

#include <string>

#include "hahn/polynomial.hpp"

namespace hahn {

/// Text literal grammars. Shapes are s-expressions:
///   int | rat | dyadic
///   (hahnsum RANGE SCALAR)        RANGE: omega | -omega | (range LO HI)
///   (extsum omega SCALAR D)
///   (lex SCALAR SCALAR)
///   (quot SHAPE CUT)
/// Group elements: {idx:coeff, ...} [+ k*a], rationals as p/q.
/// Series: c*t^{GROUP} + ... [(cut GROUP)], bare rationals as constants.
/// Polynomials: [SERIES, SERIES, ...] with index = degree.
/// Parse failures raise ParseError with 1-based line/column positions.

Rat parse_rational(const std::string& text);
ShapePtr parse_shape(const std::string& text);
GroupElement parse_group_element(const std::string& text, const ShapePtr& shape);
SeriesElement parse_series(const std::string& text, const ShapePtr& shape);
SeriesPolynomial parse_polynomial(const std::string& text, const ShapePtr& shape);

} // namespace hahn
