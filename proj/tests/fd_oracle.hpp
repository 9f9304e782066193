// SPDX-License-Identifier: Apache-2.0
// Central finite differences of interval evaluation at 256 bits. Used as an
// independent check of the symbolic derivative.

#ifndef KKIT_TESTS_FD_ORACLE_HPP
#define KKIT_TESTS_FD_ORACLE_HPP

#include <vector>

#include "kkit/exp_polynomial.hpp"

namespace fd {

inline constexpr kkit::Precision bits = 256;

inline kkit::Rational value_at(const kkit::ExpPolynomial& p, const std::vector<kkit::Rational>& pt)
{
	std::vector<kkit::Interval> c;
	for (const auto& q : pt)
		c.push_back(kkit::Interval::from_rational(q, bits));
	return kkit::evaluate(p, kkit::Box(p.shape(), c), bits).midpoint().to_rational();
}

/// (f(x + h e_j) - f(x - h e_j)) / 2h with h = 1e-7.
inline kkit::Rational central_difference(const kkit::ExpPolynomial& p, std::vector<kkit::Rational> pt, std::size_t j)
{
	const kkit::Rational h = kkit::Rational::parse("1/10000000");
	kkit::Rational x = pt[j];
	pt[j] = x + h;
	kkit::Rational up = value_at(p, pt);
	pt[j] = x - h;
	kkit::Rational down = value_at(p, pt);
	return (up - down) / (h + h);
}

/// |fd - exact| / max(|exact|, 1)
inline double relative_error(const kkit::Rational& fd, const kkit::Rational& exact)
{
	kkit::Rational diff = fd - exact;
	kkit::Rational scale = exact.sign() < 0 ? -exact : exact;
	if (scale < kkit::Rational(1))
		scale = 1;
	double r = (diff / scale).to_double();
	return r < 0 ? -r : r;
}

} // namespace fd

#endif
