/* SPDX-License-Identifier: Apache-2.0
 *
 * Copyright 2026 The kkit Authors
 */

#ifndef KKIT_EXP_POLYNOMIAL_HPP
#define KKIT_EXP_POLYNOMIAL_HPP

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "kkit/box.hpp"
#include "kkit/rational.hpp"
#include "kkit/shape.hpp"

namespace kkit {

/// Exponent key of a monomial: n x-exponents followed by ell y-exponents,
/// where y_i stands for texp(x_i).
using Exponents = std::vector<unsigned>;

struct ExpMonomial {
	Rational coeff;
	Exponents exps;

	std::span<const unsigned> xpow(const Shape& s) const { return {exps.data(), s.n}; }
	std::span<const unsigned> ypow(const Shape& s) const { return {exps.data() + s.n, s.ell}; }
	unsigned degree() const;

	friend bool operator==(const ExpMonomial&, const ExpMonomial&) = default;
};

/// Graded lexicographic comparison of exponent keys (-1, 0, 1).
int grlex_compare(const Exponents& a, const Exponents& b);

/// Exact polynomial over Q in x_1..x_n and y_1..y_ell, read with the
/// semantics y_i = texp(x_i).
///
/// Monomials are kept sorted by descending graded lexicographic order on
/// (xpow, ypow) with non-zero coefficients and no repeated keys, so two
/// polynomials are equal iff their monomial lists are equal. The zero
/// polynomial has no monomials. Variable indices are 0-based.
class ExpPolynomial {
public:
	ExpPolynomial() = default;
	explicit ExpPolynomial(Shape shape) : shape_(shape) {}
	/// Canonicalizes: merges equal keys, drops zeros, sorts.
	ExpPolynomial(Shape shape, std::vector<ExpMonomial> monomials);

	static ExpPolynomial constant(Shape shape, const Rational& c);
	static ExpPolynomial x(Shape shape, std::size_t i);
	/// y_i = texp(x_i), i < ell.
	static ExpPolynomial texp(Shape shape, std::size_t i);

	const Shape& shape() const { return shape_; }
	const std::vector<ExpMonomial>& monomials() const { return terms_; }
	bool is_zero() const { return terms_.empty(); }
	bool is_constant() const;
	/// Constant term (0 when absent).
	Rational constant_term() const;
	unsigned degree() const;
	/// True when no monomial carries a y factor.
	bool is_pure() const;

	ExpPolynomial operator-() const;
	friend ExpPolynomial operator+(const ExpPolynomial& a, const ExpPolynomial& b);
	friend ExpPolynomial operator-(const ExpPolynomial& a, const ExpPolynomial& b);
	friend ExpPolynomial operator*(const ExpPolynomial& a, const ExpPolynomial& b);
	friend ExpPolynomial operator*(const Rational& c, const ExpPolynomial& p);
	ExpPolynomial& operator+=(const ExpPolynomial& o) { return *this = *this + o; }
	ExpPolynomial& operator-=(const ExpPolynomial& o) { return *this = *this - o; }
	ExpPolynomial& operator*=(const ExpPolynomial& o) { return *this = *this * o; }
	ExpPolynomial pow(unsigned k) const;

	friend bool operator==(const ExpPolynomial&, const ExpPolynomial&) = default;

	/// Substitutes x_i -> xs[i] and y_i -> ys[i]; all replacements must share
	/// one target shape.
	ExpPolynomial compose(const Shape& target, const std::vector<ExpPolynomial>& xs,
	                      const std::vector<ExpPolynomial>& ys) const;

	/// Canonical text, e.g. "1 * E(x1) - 2" or "2 * x1^2 * x2 + 1/3".
	std::string str() const;

private:
	Shape shape_;
	std::vector<ExpMonomial> terms_;
};

/// d p / d x_i with the rule d texp(x_i) / d x_i = texp(x_i):
/// dp/dx_i + (dp/dy_i) * y_i for i < ell, dp/dx_i otherwise.
/// Throws std::out_of_range for i >= n.
ExpPolynomial formal_partial(const ExpPolynomial& p, std::size_t i);

/// Interval enclosure of p over the box; texp factors use texp_enclosure.
/// The result is exact when the box is a single point and p has no y factor.
/// Throws ShapeError when the shapes differ. With interior set, texp factors
/// use texp_interior (values over the part of the box inside U_{ell,n}).
Interval evaluate(const ExpPolynomial& p, const Box& box, Precision prec, bool interior = false);

/// Exact value at a rational point; requires p to be pure (no y factor).
Rational evaluate_exact(const ExpPolynomial& p, const std::vector<Rational>& point);

using PolyMatrix = std::vector<std::vector<ExpPolynomial>>;

/// Symbolic determinant by cofactor expansion along the first row. An empty
/// matrix has determinant 1 in the given shape.
ExpPolynomial determinant(const PolyMatrix& m, const Shape& shape);

/// Enclosures of every entry of a polynomial matrix over a box.
std::vector<std::vector<Interval>> evaluate(const PolyMatrix& m, const Box& box, Precision prec);

} // namespace kkit

#endif
