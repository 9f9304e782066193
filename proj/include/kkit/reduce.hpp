/* SPDX-License-Identifier: Apache-2.0
 *
 * Copyright 2026 The kkit Authors
 */

#ifndef KKIT_REDUCE_HPP
#define KKIT_REDUCE_HPP

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "kkit/certify.hpp"
#include "kkit/dependence.hpp"
#include "kkit/system.hpp"

namespace kkit {

/// coeff * x^xpow * Exp(lambda . x + offset), Exp being the total
/// exponential. A zero lambda with zero offset means no Exp factor.
struct GenExpMonomial {
	Rational coeff;
	std::vector<unsigned> xpow;
	std::vector<Rational> lambda;
	Rational offset;

	bool has_exp() const;

	friend bool operator==(const GenExpMonomial&, const GenExpMonomial&) = default;
};

/// Sum of GenExpMonomial over n variables, kept canonical like
/// ExpPolynomial: distinct keys (xpow, lambda, offset), non-zero
/// coefficients, sorted.
class GenExpPolynomial {
public:
	GenExpPolynomial() = default;
	explicit GenExpPolynomial(std::size_t n) : n_(n) {}
	GenExpPolynomial(std::size_t n, std::vector<GenExpMonomial> monomials);

	std::size_t n() const { return n_; }
	const std::vector<GenExpMonomial>& monomials() const { return terms_; }
	bool is_zero() const { return terms_.empty(); }

	friend GenExpPolynomial operator+(const GenExpPolynomial& a, const GenExpPolynomial& b);
	friend bool operator==(const GenExpPolynomial&, const GenExpPolynomial&) = default;

	/// "1 * Exp(2 * x1) - 2"; offsets print as a trailing constant inside Exp.
	std::string str() const;

private:
	std::size_t n_ = 0;
	std::vector<GenExpMonomial> terms_;
};

GenExpPolynomial partial(const GenExpPolynomial& p, std::size_t j);
Interval evaluate(const GenExpPolynomial& p, const Box& box, Precision prec);

/// Square system of generalized exponential polynomials. Exp factors are
/// evaluated with exp_fin_enclosure, so no domain restriction applies beyond
/// boundedness; shape().ell only marks which coordinates came from
/// exponentiated ones.
class GenExpSystem final : public SquareSystem {
public:
	GenExpSystem(Shape shape, std::vector<GenExpPolynomial> equations);

	const Shape& shape() const override { return shape_; }
	const std::vector<GenExpPolynomial>& equations() const { return equations_; }
	std::vector<Interval> eval(const Box& box, Precision prec) const override;
	std::vector<std::vector<Interval>> jacobian(const Box& box, Precision prec) const override;
	std::string str() const override;

private:
	Shape shape_;
	std::vector<GenExpPolynomial> equations_;
	std::vector<std::vector<GenExpPolynomial>> jacobian_;
};

struct ReducedSystem {
	std::shared_ptr<const GenExpSystem> system;
	Shape original;
	DependenceRelation relation;
	/// Index of the original equation that was dropped.
	std::size_t dropped = 0;
	Certificate certificate;
	/// Equivalent texp-polynomial system, when every lambda is integral, every
	/// offset vanishes and the certified box keeps the arguments in (-1, 1).
	std::optional<KhovanskiiSystem> plain;

	/// Substitutes back: x_i = d X_i (i < ell-1), x_ell = k . X + g/d, the
	/// remaining coordinates unchanged.
	Box to_original(const Box& reduced, Precision prec) const;
};

/// Replaces x_ell through the relation, clears negative Exp exponents, drops
/// the first equation whose removal leaves a regular square system at the
/// zero, and re-certifies. Throws ReductionError when the relation is not
/// consistent with the certificate, the reduced system cannot be
/// re-certified, or the dropped equation does not vanish at the new zero.
ReducedSystem eliminate_dependence(const KhovanskiiSystem& sys, const Certificate& cert,
                                   const DependenceRelation& rel);

/// Replaces texp(x_ell) by a fresh last variable u and appends u - texp(x_ell).
/// Requires ell >= 1.
KhovanskiiSystem denest(const KhovanskiiSystem& sys);

struct AugmentedSystem {
	KhovanskiiSystem system;
	/// h_1 was negated so that the Jacobian determinant is positive.
	bool flipped = false;
	/// Start box around the extended zero (needs a certificate).
	std::optional<Box> start;
	std::string diagnostic;
};

/// Appends x_{n+1}^2 det J - 1 and x_{n+2} M - 1, where M is the minor of
/// rows 1..n-1 with column minor_index left out, then de-nests texp(x_ell)
/// when ell >= 1.
AugmentedSystem regularize_augment(const KhovanskiiSystem& sys, std::size_t minor_index,
                                   const Certificate* cert = nullptr);

/// Square system whose zeros include the points of {g = 0} closest to and
/// farthest from center: g_1..g_k plus, for j > k, the minors of
/// [grad g_1; ...; grad g_k; x - center] on columns 1..k and j. Requires
/// 1 <= k < n.
KhovanskiiSystem witness_slice(const std::vector<ExpPolynomial>& eqs, const std::vector<Rational>& center);

} // namespace kkit

#endif
