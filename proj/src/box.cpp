/* SPDX-License-Identifier: Apache-2.0
 *
 * Copyright 2026 The kkit Authors
 */

#include "kkit/box.hpp"

#include <stdexcept>

namespace kkit {

Box::Box(Shape shape, std::vector<Interval> coords) : shape_(shape), coords_(std::move(coords))
{
	if (coords_.size() != shape_.n)
		throw ShapeError("box has " + std::to_string(coords_.size()) + " coordinates, shape " + shape_.str() +
		                 " needs " + std::to_string(shape_.n));
}

std::vector<Dyadic> Box::midpoint() const
{
	std::vector<Dyadic> m;
	m.reserve(coords_.size());
	for (const auto& c : coords_)
		m.push_back(c.midpoint());
	return m;
}

Box Box::midpoint_box() const
{
	std::vector<Interval> m;
	m.reserve(coords_.size());
	for (const auto& c : coords_)
		m.emplace_back(c.midpoint());
	return {shape_, std::move(m)};
}

Dyadic Box::max_width() const
{
	Dyadic w;
	for (const auto& c : coords_)
		w = max(w, c.width());
	return w;
}

std::size_t Box::widest() const
{
	std::size_t best = 0;
	for (std::size_t i = 1; i < coords_.size(); i++)
		if (coords_[best].width() < coords_[i].width())
			best = i;
	return best;
}

bool Box::is_point() const
{
	for (const auto& c : coords_)
		if (!c.is_point())
			return false;
	return true;
}

bool Box::contains(const Box& o) const
{
	if (o.size() != size())
		return false;
	for (std::size_t i = 0; i < size(); i++)
		if (!coords_[i].contains(o.coords_[i]))
			return false;
	return true;
}

bool Box::interior_contains(const Box& o) const
{
	if (o.size() != size())
		return false;
	for (std::size_t i = 0; i < size(); i++)
		if (!coords_[i].interior_contains(o.coords_[i]))
			return false;
	return true;
}

bool Box::overlaps(const Box& o) const
{
	if (o.size() != size())
		return false;
	for (std::size_t i = 0; i < size(); i++)
		if (!coords_[i].overlaps(o.coords_[i]))
			return false;
	return true;
}

bool Box::exp_coords_inside() const
{
	for (std::size_t i = 0; i < shape_.ell; i++)
		if (coords_[i].lo() <= Dyadic(-1) || coords_[i].hi() >= Dyadic(1))
			return false;
	return true;
}

std::pair<Box, Box> Box::split(std::size_t i, const Dyadic& at) const
{
	if (!coords_.at(i).contains(at))
		throw std::invalid_argument("split point outside the coordinate interval");
	Box a = *this, b = *this;
	a.coords_[i] = Interval(coords_[i].lo(), at);
	b.coords_[i] = Interval(at, coords_[i].hi());
	return {std::move(a), std::move(b)};
}

std::string Box::decimal(int digits) const
{
	std::string s;
	for (std::size_t i = 0; i < coords_.size(); i++) {
		if (i)
			s += " x ";
		s += coords_[i].decimal(digits);
	}
	return s;
}

std::optional<Box> intersect(const Box& a, const Box& b)
{
	require_same_shape(a.shape(), b.shape(), "box intersection");
	std::vector<Interval> c;
	for (std::size_t i = 0; i < a.size(); i++) {
		auto x = intersect(a[i], b[i]);
		if (!x)
			return std::nullopt;
		c.push_back(*x);
	}
	return Box(a.shape(), std::move(c));
}

Box hull(const Box& a, const Box& b)
{
	require_same_shape(a.shape(), b.shape(), "box hull");
	std::vector<Interval> c;
	for (std::size_t i = 0; i < a.size(); i++)
		c.push_back(hull(a[i], b[i]));
	return {a.shape(), std::move(c)};
}

std::optional<Box> clip_to_domain(const Box& b, Precision prec)
{
	Box r = b;
	Dyadic eps = Dyadic::pow2(-prec);
	Interval dom(Dyadic(-1) + eps, Dyadic(1) - eps);
	for (std::size_t i = 0; i < b.shape().ell; i++) {
		auto x = intersect(b[i], dom);
		if (!x)
			return std::nullopt;
		r[i] = *x;
	}
	return r;
}

} // namespace kkit
