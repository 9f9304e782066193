/* SPDX-License-Identifier: Apache-2.0
 *
 * Copyright 2026 The kkit Authors
 */

#include "kkit/enclose.hpp"

#include <cmath>
#include <stdexcept>

namespace kkit {

namespace {

constexpr Precision guard_bits = 16;

} // namespace

unsigned series_order(Precision prec)
{
	// smallest m with 3 * 2^(prec+2) < m!
	mpz_class bound = mpz_class(3) << static_cast<mp_bitcnt_t>(prec + 2), fact = 1;
	unsigned m = 1;
	while (fact <= bound)
		fact *= ++m;
	return m;
}

Interval exp_point(const Dyadic& a, Precision prec)
{
	if (a.is_zero())
		return Interval(1);
	if (a.abs() > Dyadic(1))
		throw std::domain_error("exp_point expects |a| <= 1");
	const Precision wp = prec + guard_bits;
	const unsigned m = series_order(prec);
	const Interval x(a);

	// Horner: 1 + x/1 (1 + x/2 (1 + ... (1 + x/(m-1))))
	Interval t(1);
	for (unsigned k = m - 1; k >= 1; k--) {
		t = div_int(mul(x, t, wp), static_cast<long>(k), wp);
		t = add(t, Interval(1), wp);
	}

	// remainder |exp(xi) a^m / m!| <= 3 |a|^m / m!
	mpz_class fact;
	mpz_fac_ui(fact.get_mpz_t(), m);
	Dyadic am = pow(Interval(a.abs()), m, wp).hi();
	Dyadic rem = Dyadic::from_rational(Rational(3) * am.to_rational() / Rational(fact), wp, Round::up);

	Interval r(t.lo() - rem, t.hi() + rem);
	return round_out(r, prec);
}

Interval texp_enclosure(const Interval& x, Precision prec)
{
	const Dyadic one(1), neg_one(-1);
	bool meets_outside = x.lo() <= neg_one || x.hi() >= one;
	bool meets_inside = x.lo() < one && x.hi() > neg_one;
	if (!meets_inside)
		return Interval(0);
	if (!meets_outside) {
		Dyadic lo = exp_point(x.lo(), prec).lo();
		Dyadic hi = exp_point(x.hi(), prec).hi();
		return {max(lo, Dyadic(0)), hi};
	}
	// texp is discontinuous at +-1: hull the inside image with 0
	Dyadic b = min(x.hi(), one);
	return {Dyadic(0), exp_point(b, prec).hi()};
}

Interval texp_interior(const Interval& x, Precision prec)
{
	auto cut = intersect(x, Interval(Dyadic(-1), Dyadic(1)));
	if (!cut)
		return Interval(0);
	return exp_fin_enclosure(*cut, prec);
}

Interval exp_fin_enclosure(const Interval& x, Precision prec)
{
	const Dyadic mag = x.mag();
	// least n with |X| < n
	mpz_class fl;
	{
		Rational q = mag.to_rational();
		mpz_fdiv_q(fl.get_mpz_t(), q.num().get_mpz_t(), q.den().get_mpz_t());
	}
	if (!fl.fits_slong_p())
		throw std::domain_error("exp_fin_enclosure argument too large");
	long n = fl.get_si() + 1;
	const Precision wp = prec + guard_bits + static_cast<Precision>(std::log2(static_cast<double>(n)) + 1);
	for (;; n++) {
		Interval scaled = n == 1 ? x : div_int(x, n, wp);
		if (scaled.lo() <= Dyadic(-1) || scaled.hi() >= Dyadic(1))
			continue; // rounding reached the boundary of (-1, 1)
		Interval t = texp_enclosure(scaled, wp);
		Interval r = round_out(pow(t, static_cast<unsigned>(n), wp), prec);
		if (r.lo().sign() <= 0)
			throw std::logic_error("exp_fin_enclosure lost positivity");
		return r;
	}
}

} // namespace kkit
