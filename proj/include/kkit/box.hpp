/* SPDX-License-Identifier: Apache-2.0
 *
 * Copyright 2026 The kkit Authors
 */

#ifndef KKIT_BOX_HPP
#define KKIT_BOX_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "kkit/interval.hpp"
#include "kkit/shape.hpp"

namespace kkit {

/// Product of n intervals. When used as a search domain the first ell
/// coordinates are kept inside [-1, 1], the closure of U_{ell,n}.
class Box {
public:
	Box() = default;
	Box(Shape shape, std::vector<Interval> coords);

	const Shape& shape() const { return shape_; }
	std::size_t size() const { return coords_.size(); }
	const Interval& operator[](std::size_t i) const { return coords_[i]; }
	Interval& operator[](std::size_t i) { return coords_[i]; }
	const std::vector<Interval>& coords() const { return coords_; }

	std::vector<Dyadic> midpoint() const;
	Box midpoint_box() const;
	Dyadic max_width() const;
	std::size_t widest() const;
	bool is_point() const;

	bool contains(const Box& o) const;
	bool interior_contains(const Box& o) const;
	bool overlaps(const Box& o) const;
	/// Every exponentiated coordinate lies strictly inside (-1, 1).
	bool exp_coords_inside() const;

	/// Splits coordinate i at the given point, which must lie inside it.
	std::pair<Box, Box> split(std::size_t i, const Dyadic& at) const;
	std::pair<Box, Box> bisect(std::size_t i) const { return split(i, coords_[i].midpoint()); }

	friend bool operator==(const Box& a, const Box& b) { return a.shape_ == b.shape_ && a.coords_ == b.coords_; }

	std::string decimal(int digits = 17) const;

private:
	Shape shape_;
	std::vector<Interval> coords_;
};

std::optional<Box> intersect(const Box& a, const Box& b);
Box hull(const Box& a, const Box& b);

/// Clips the exponentiated coordinates to [-1 + 2^-prec, 1 - 2^-prec].
/// Returns nullopt when a coordinate lies entirely outside that range.
std::optional<Box> clip_to_domain(const Box& b, Precision prec);

} // namespace kkit

#endif
