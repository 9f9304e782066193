/* SPDX-License-Identifier: Apache-2.0
 *
 * Copyright 2026 The kkit Authors
 */

#include "kkit/interval.hpp"

#include <algorithm>
#include <array>
#include <stdexcept>

namespace kkit {

Interval::Interval(Dyadic lo, Dyadic hi) : lo_(std::move(lo)), hi_(std::move(hi))
{
	if (hi_ < lo_)
		throw std::invalid_argument("interval with lo > hi: [" + lo_.str() + ", " + hi_.str() + "]");
}

Interval Interval::from_rational(const Rational& q, Precision prec)
{
	return {Dyadic::from_rational(q, prec, Round::down), Dyadic::from_rational(q, prec, Round::up)};
}

Interval Interval::from_rationals(const Rational& lo, const Rational& hi, Precision prec)
{
	return {Dyadic::from_rational(lo, prec, Round::down), Dyadic::from_rational(hi, prec, Round::up)};
}

Dyadic Interval::mig() const
{
	if (contains_zero())
		return {};
	return min(lo_.abs(), hi_.abs());
}

std::string Interval::str() const
{
	return "[\"" + lo_.str() + "\", \"" + hi_.str() + "\"]";
}

std::string Interval::decimal(int digits) const
{
	return "[" + lo_.decimal(digits) + ", " + hi_.decimal(digits) + "]";
}

std::ostream& operator<<(std::ostream& os, const Interval& x) { return os << x.decimal(); }

Interval add(const Interval& a, const Interval& b, Precision prec)
{
	return {round(a.lo() + b.lo(), prec, Round::down), round(a.hi() + b.hi(), prec, Round::up)};
}

Interval sub(const Interval& a, const Interval& b, Precision prec)
{
	return {round(a.lo() - b.hi(), prec, Round::down), round(a.hi() - b.lo(), prec, Round::up)};
}

Interval mul(const Interval& a, const Interval& b, Precision prec)
{
	// common sign cases need only two products
	if (a.lo().sign() >= 0 && b.lo().sign() >= 0)
		return {round(a.lo() * b.lo(), prec, Round::down), round(a.hi() * b.hi(), prec, Round::up)};
	if (a.is_point() && b.is_point()) {
		Dyadic p = a.lo() * b.lo();
		return {round(p, prec, Round::down), round(p, prec, Round::up)};
	}
	std::array<Dyadic, 4> p{a.lo() * b.lo(), a.lo() * b.hi(), a.hi() * b.lo(), a.hi() * b.hi()};
	auto [mn, mx] = std::minmax_element(p.begin(), p.end(), [](const Dyadic& x, const Dyadic& y) { return x < y; });
	return {round(*mn, prec, Round::down), round(*mx, prec, Round::up)};
}

namespace {

// |m|^k by repeated squaring, every step rounded in the same direction
Dyadic pow_round(Dyadic m, unsigned k, Precision prec, Round dir)
{
	Dyadic res(1);
	while (k) {
		if (k & 1)
			res = round(res * m, prec, dir);
		k >>= 1;
		if (k)
			m = round(m * m, prec, dir);
	}
	return res;
}

} // namespace

Interval pow(const Interval& a, unsigned k, Precision prec)
{
	if (k == 0)
		return Interval(1);
	if (a.lo().sign() >= 0)
		return {pow_round(a.lo(), k, prec, Round::down), pow_round(a.hi(), k, prec, Round::up)};
	if (k % 2 == 1) {
		// odd powers are increasing; the sign of each endpoint decides the direction
		Dyadic lo = -pow_round(a.lo().abs(), k, prec, Round::up);
		Dyadic hi = a.hi().sign() < 0 ? -pow_round(a.hi().abs(), k, prec, Round::down)
		                              : pow_round(a.hi(), k, prec, Round::up);
		return {lo, hi};
	}
	if (a.hi().sign() <= 0)
		return pow(-a, k, prec);
	return {Dyadic(0), pow_round(a.mag(), k, prec, Round::up)};
}

Interval div_int(const Interval& a, long k, Precision prec)
{
	return {div_int(a.lo(), k, prec, Round::down), div_int(a.hi(), k, prec, Round::up)};
}

namespace {

// x / y for dyadics, rounded, y != 0
Dyadic div_round(const Dyadic& x, const Dyadic& y, Precision prec, Round dir)
{
	if (x.is_zero())
		return {};
	return Dyadic::from_rational(x.to_rational() / y.to_rational(), prec, dir);
}

} // namespace

Interval div(const Interval& a, const Interval& b, Precision prec)
{
	if (b.contains_zero())
		throw std::domain_error("interval division by an interval containing zero");
	std::array<Dyadic, 4> lo{div_round(a.lo(), b.lo(), prec, Round::down), div_round(a.lo(), b.hi(), prec, Round::down),
	                         div_round(a.hi(), b.lo(), prec, Round::down), div_round(a.hi(), b.hi(), prec, Round::down)};
	std::array<Dyadic, 4> hi{div_round(a.lo(), b.lo(), prec, Round::up), div_round(a.lo(), b.hi(), prec, Round::up),
	                         div_round(a.hi(), b.lo(), prec, Round::up), div_round(a.hi(), b.hi(), prec, Round::up)};
	auto less = [](const Dyadic& x, const Dyadic& y) { return x < y; };
	return {*std::min_element(lo.begin(), lo.end(), less), *std::max_element(hi.begin(), hi.end(), less)};
}

namespace {

// floor/ceil of sqrt(x) at prec bits, x >= 0
Dyadic sqrt_round(const Dyadic& x, Precision prec, Round dir)
{
	if (x.is_zero())
		return {};
	// x = m * 2^e; make e even and m carry at least 2*prec bits
	mpz_class m = x.mantissa();
	std::int64_t e = x.exponent();
	auto nb = static_cast<std::int64_t>(x.bits());
	std::int64_t shift = std::max<std::int64_t>(0, 2 * prec + 4 - nb);
	if ((e - shift) % 2 != 0)
		shift++;
	mpz_mul_2exp(m.get_mpz_t(), m.get_mpz_t(), static_cast<mp_bitcnt_t>(shift));
	e -= shift;
	mpz_class r;
	mpz_sqrt(r.get_mpz_t(), m.get_mpz_t());
	if (dir == Round::up && r * r != m)
		r += 1;
	return round(Dyadic(r, e / 2), prec, dir);
}

} // namespace

Interval sqrt(const Interval& a, Precision prec)
{
	if (a.lo().sign() < 0)
		throw std::domain_error("sqrt of an interval with negative part");
	return {sqrt_round(a.lo(), prec, Round::down), sqrt_round(a.hi(), prec, Round::up)};
}

Interval hull(const Interval& a, const Interval& b)
{
	return {min(a.lo(), b.lo()), max(a.hi(), b.hi())};
}

std::optional<Interval> intersect(const Interval& a, const Interval& b)
{
	const Dyadic& lo = max(a.lo(), b.lo());
	const Dyadic& hi = min(a.hi(), b.hi());
	if (hi < lo)
		return std::nullopt;
	return Interval(lo, hi);
}

Interval inflate(const Interval& a, const Dyadic& r)
{
	return {a.lo() - r, a.hi() + r};
}

Interval widen_ulp(const Interval& a, Precision prec)
{
	return {a.lo() - ulp(a.lo(), prec), a.hi() + ulp(a.hi(), prec)};
}

Interval round_out(const Interval& a, Precision prec)
{
	return {round(a.lo(), prec, Round::down), round(a.hi(), prec, Round::up)};
}

} // namespace kkit
