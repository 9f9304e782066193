/* SPDX-License-Identifier: Apache-2.0
 *
 * Copyright 2026 The kkit Authors
 */

#include "kkit/system.hpp"

namespace kkit {

PolyMatrix formal_jacobian(const std::vector<ExpPolynomial>& eqs)
{
	PolyMatrix j;
	j.reserve(eqs.size());
	for (const auto& f : eqs) {
		std::vector<ExpPolynomial> row;
		row.reserve(f.shape().n);
		for (std::size_t k = 0; k < f.shape().n; k++)
			row.push_back(formal_partial(f, k));
		j.push_back(std::move(row));
	}
	return j;
}

KhovanskiiSystem::KhovanskiiSystem(Shape shape, std::vector<ExpPolynomial> equations)
: shape_(Shape(shape.ell, shape.n)), equations_(std::move(equations))
{
	if (equations_.size() != shape_.n)
		throw ShapeError("Khovanskii system of shape " + shape_.str() + " needs " + std::to_string(shape_.n) +
		                 " equations, got " + std::to_string(equations_.size()));
	for (const auto& f : equations_)
		require_same_shape(f.shape(), shape_, "Khovanskii system");
	jacobian_ = formal_jacobian(equations_);
}

std::vector<Interval> KhovanskiiSystem::eval_interior(const Box& box, Precision prec) const
{
	require_same_shape(shape_, box.shape(), "system evaluation");
	std::vector<Interval> out;
	for (const auto& f : equations_)
		out.push_back(evaluate(f, box, prec, true));
	return out;
}

std::vector<Interval> KhovanskiiSystem::eval(const Box& box, Precision prec) const
{
	require_same_shape(shape_, box.shape(), "system evaluation");
	std::vector<Interval> out;
	out.reserve(equations_.size());
	for (const auto& f : equations_)
		out.push_back(evaluate(f, box, prec));
	return out;
}

std::vector<std::vector<Interval>> KhovanskiiSystem::jacobian(const Box& box, Precision prec) const
{
	require_same_shape(shape_, box.shape(), "system Jacobian");
	return evaluate(jacobian_, box, prec);
}

std::string KhovanskiiSystem::str() const
{
	std::string s = "shape: " + std::to_string(shape_.ell) + " " + std::to_string(shape_.n) + "\n";
	for (const auto& f : equations_)
		s += f.str() + "\n";
	return s;
}

} // namespace kkit
