/* SPDX-License-Identifier: Apache-2.0
 *
 * Copyright 2026 The kkit Authors
 */

#ifndef KKIT_SHAPE_HPP
#define KKIT_SHAPE_HPP

#include <cstddef>
#include <string>

#include "kkit/errors.hpp"

namespace kkit {

/// (ell, n): n variables, the first ell of which are exponentiated.
struct Shape {
	std::size_t ell = 0;
	std::size_t n = 0;

	Shape() = default;
	/// Throws ShapeError unless 0 <= ell <= n and n >= 1.
	Shape(std::size_t ell_, std::size_t n_) : ell(ell_), n(n_)
	{
		if (n == 0)
			throw ShapeError("empty shape: n must be at least 1");
		if (ell > n)
			throw ShapeError("shape (" + std::to_string(ell) + "," + std::to_string(n) + "): ell exceeds n");
	}

	friend bool operator==(const Shape&, const Shape&) = default;

	std::string str() const { return "(" + std::to_string(ell) + "," + std::to_string(n) + ")"; }
};

inline void require_same_shape(const Shape& a, const Shape& b, const char* what)
{
	if (a != b)
		throw ShapeError(std::string(what) + ": shape mismatch " + a.str() + " vs " + b.str());
}

} // namespace kkit

#endif
