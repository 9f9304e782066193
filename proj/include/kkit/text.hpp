/* SPDX-License-Identifier: Apache-2.0
 *
 * Copyright 2026 The kkit Authors
 */

#ifndef KKIT_TEXT_HPP
#define KKIT_TEXT_HPP

#include <string_view>

#include "kkit/system.hpp"

namespace kkit {

/// Parses a texp-polynomial over the variables x1..xn, e.g.
/// "2 * x1^2 - 1/3 * x2 * E(x1)^2 + (x1 - 1)^3". E(xi) is allowed for
/// i <= ell only. Throws ParseError.
ExpPolynomial parse_polynomial(std::string_view text, const Shape& shape);

/// System file: a header line "shape: ell n" followed by one polynomial per
/// line. Blank lines and lines starting with '#' are ignored.
KhovanskiiSystem parse_system(std::string_view text);

} // namespace kkit

#endif
