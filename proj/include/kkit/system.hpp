/* SPDX-License-Identifier: Apache-2.0
 *
 * Copyright 2026 The kkit Authors
 */

#ifndef KKIT_SYSTEM_HPP
#define KKIT_SYSTEM_HPP

#include <memory>
#include <string>
#include <vector>

#include "kkit/exp_polynomial.hpp"

namespace kkit {

/// Square system of equations that the certification machinery can work
/// with: interval values and interval Jacobian over a box.
class SquareSystem {
public:
	virtual ~SquareSystem() = default;

	virtual const Shape& shape() const = 0;
	std::size_t size() const { return shape().n; }
	virtual std::vector<Interval> eval(const Box& box, Precision prec) const = 0;
	virtual std::vector<std::vector<Interval>> jacobian(const Box& box, Precision prec) const = 0;
	/// Values over the part of the box inside U_{ell,n} only; search uses it
	/// to exclude boxes that touch the boundary of the open domain.
	virtual std::vector<Interval> eval_interior(const Box& box, Precision prec) const { return eval(box, prec); }
	/// Human-readable one-equation-per-line text.
	virtual std::string str() const = 0;
};

/// n texp-polynomials of a common (ell, n) shape together with their formal
/// Jacobian. Immutable after construction.
class KhovanskiiSystem final : public SquareSystem {
public:
	/// Throws ShapeError unless there are exactly n equations of the shape.
	KhovanskiiSystem(Shape shape, std::vector<ExpPolynomial> equations);

	const Shape& shape() const override { return shape_; }
	const std::vector<ExpPolynomial>& equations() const { return equations_; }
	/// Entry (i, j) = formal_partial(equations[i], j).
	const PolyMatrix& jacobian() const { return jacobian_; }

	std::vector<Interval> eval(const Box& box, Precision prec) const override;
	std::vector<std::vector<Interval>> jacobian(const Box& box, Precision prec) const override;
	std::vector<Interval> eval_interior(const Box& box, Precision prec) const override;
	std::string str() const override;

	friend bool operator==(const KhovanskiiSystem& a, const KhovanskiiSystem& b)
	{
		return a.shape_ == b.shape_ && a.equations_ == b.equations_;
	}

private:
	Shape shape_;
	std::vector<ExpPolynomial> equations_;
	PolyMatrix jacobian_;
};

/// Formal Jacobian of arbitrary (possibly non-square) equation lists.
PolyMatrix formal_jacobian(const std::vector<ExpPolynomial>& eqs);

} // namespace kkit

#endif
