/* SPDX-License-Identifier: Apache-2.0
 *
 * Copyright 2026 The kkit Authors
 */

#ifndef KKIT_DYADIC_HPP
#define KKIT_DYADIC_HPP

#include <cstdint>
#include <string>
#include <string_view>

#include <gmpxx.h>

#include "kkit/rational.hpp"

namespace kkit {

/// Working precision in bits (significant bits kept by a rounded mantissa).
using Precision = std::int64_t;

enum class Round { down, up, nearest };

/// Exact binary fraction mantissa * 2^exponent.
///
/// The mantissa is kept odd (or zero, in which case the exponent is 0), so
/// every value has exactly one representation and operator== is structural.
class Dyadic {
public:
	Dyadic() = default;
	Dyadic(long v) : mant_(v) { normalize(); }
	Dyadic(int v) : mant_(v) { normalize(); }
	Dyadic(mpz_class mantissa, std::int64_t exponent);

	/// Exact conversion; throws on NaN or infinity.
	static Dyadic from_double(double v);
	/// Parses "m*2^e", a plain integer, or a decimal/rational literal. Values
	/// that are not dyadic are rejected unless a rounding direction is given.
	static Dyadic parse(std::string_view text);
	static Dyadic parse(std::string_view text, Precision prec, Round dir);
	/// Rounds a rational to prec significant bits.
	static Dyadic from_rational(const Rational& q, Precision prec, Round dir);
	static Dyadic pow2(std::int64_t e) { return Dyadic(mpz_class(1), e); }

	const mpz_class& mantissa() const { return mant_; }
	std::int64_t exponent() const { return exp_; }

	int sign() const { return sgn(mant_); }
	bool is_zero() const { return mant_ == 0; }
	bool is_integer() const { return is_zero() || exp_ >= 0; }
	/// Position of the leading bit: |x| lies in [2^(top-1), 2^top).
	std::int64_t top() const;
	std::size_t bits() const;

	Dyadic operator-() const;
	friend Dyadic operator+(const Dyadic& a, const Dyadic& b);
	friend Dyadic operator-(const Dyadic& a, const Dyadic& b);
	friend Dyadic operator*(const Dyadic& a, const Dyadic& b);
	Dyadic& operator+=(const Dyadic& o) { return *this = *this + o; }
	Dyadic& operator-=(const Dyadic& o) { return *this = *this - o; }
	Dyadic& operator*=(const Dyadic& o) { return *this = *this * o; }

	/// Exact multiplication by 2^k.
	Dyadic ldexp(std::int64_t k) const;
	Dyadic abs() const { return sign() < 0 ? -*this : *this; }

	friend int compare(const Dyadic& a, const Dyadic& b);
	friend bool operator==(const Dyadic& a, const Dyadic& b)
	{
		return a.exp_ == b.exp_ && a.mant_ == b.mant_;
	}
	friend bool operator!=(const Dyadic& a, const Dyadic& b) { return !(a == b); }
	friend bool operator<(const Dyadic& a, const Dyadic& b) { return compare(a, b) < 0; }
	friend bool operator<=(const Dyadic& a, const Dyadic& b) { return compare(a, b) <= 0; }
	friend bool operator>(const Dyadic& a, const Dyadic& b) { return compare(a, b) > 0; }
	friend bool operator>=(const Dyadic& a, const Dyadic& b) { return compare(a, b) >= 0; }

	Rational to_rational() const;
	double to_double() const;
	/// "mantissa*2^exponent", e.g. "3*2^-2".
	std::string str() const;
	/// Approximate decimal rendering with the given number of significant digits.
	std::string decimal(int digits = 20) const;

private:
	void normalize();

	mpz_class mant_{0};
	std::int64_t exp_ = 0;
};

Dyadic round(const Dyadic& x, Precision prec, Round dir);
/// x / k rounded to prec bits; k > 0.
Dyadic div_int(const Dyadic& x, long k, Precision prec, Round dir);
/// Unit in the last place of x at the given precision (2^(top-prec)); for
/// zero, 2^-prec.
Dyadic ulp(const Dyadic& x, Precision prec);
inline const Dyadic& min(const Dyadic& a, const Dyadic& b) { return b < a ? b : a; }
inline const Dyadic& max(const Dyadic& a, const Dyadic& b) { return a < b ? b : a; }

} // namespace kkit

#endif
