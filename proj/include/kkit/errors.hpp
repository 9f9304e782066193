/* SPDX-License-Identifier: Apache-2.0
 *
 * Copyright 2026 The kkit Authors
 */

#ifndef KKIT_ERRORS_HPP
#define KKIT_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace kkit {

struct Error : std::runtime_error {
	using std::runtime_error::runtime_error;
};

/// Operands of incompatible (ell, n) shapes, or a malformed shape.
struct ShapeError : Error {
	using Error::Error;
};

struct ParseError : Error {
	ParseError(const std::string& msg, std::size_t pos)
	: Error(msg + " at position " + std::to_string(pos)), position(pos)
	{}
	std::size_t position;
};

/// A JSON document (certificate, box) that does not have the expected layout.
struct FormatError : Error {
	using Error::Error;
};

/// A reduction step whose preconditions do not hold (inconsistent relation,
/// no regular minor, ...).
struct ReductionError : Error {
	using Error::Error;
};

} // namespace kkit

#endif
