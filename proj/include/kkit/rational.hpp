/* SPDX-License-Identifier: Apache-2.0
 *
 * Copyright 2026 The kkit Authors
 */

#ifndef KKIT_RATIONAL_HPP
#define KKIT_RATIONAL_HPP

#include <string>
#include <string_view>

#include <gmpxx.h>

namespace kkit {

/// Exact rational number, always stored in lowest terms with a positive
/// denominator.
class Rational {
public:
	Rational() = default;
	Rational(long v) : q_(v) {}
	Rational(int v) : q_(v) {}
	Rational(const mpz_class& v) : q_(v) {}
	Rational(const mpz_class& num, const mpz_class& den);
	explicit Rational(mpq_class q) : q_(std::move(q)) { q_.canonicalize(); }

	/// Accepts "n", "n/d" and decimal literals such as "-0.125" or "1.5e-3".
	static Rational parse(std::string_view text);

	const mpq_class& value() const { return q_; }
	mpz_class num() const { return q_.get_num(); }
	mpz_class den() const { return q_.get_den(); }

	int sign() const { return sgn(q_); }
	bool is_zero() const { return sgn(q_) == 0; }
	bool is_one() const { return q_ == 1; }
	bool is_integer() const { return q_.get_den() == 1; }

	Rational operator-() const { return Rational(mpq_class(-q_)); }
	friend Rational operator+(const Rational& a, const Rational& b) { return Rational(mpq_class(a.q_ + b.q_)); }
	friend Rational operator-(const Rational& a, const Rational& b) { return Rational(mpq_class(a.q_ - b.q_)); }
	friend Rational operator*(const Rational& a, const Rational& b) { return Rational(mpq_class(a.q_ * b.q_)); }
	/// Throws std::domain_error on division by zero.
	friend Rational operator/(const Rational& a, const Rational& b);
	Rational& operator+=(const Rational& o) { return *this = *this + o; }
	Rational& operator-=(const Rational& o) { return *this = *this - o; }
	Rational& operator*=(const Rational& o) { return *this = *this * o; }

	friend bool operator==(const Rational& a, const Rational& b) { return a.q_ == b.q_; }
	friend bool operator!=(const Rational& a, const Rational& b) { return a.q_ != b.q_; }
	friend bool operator<(const Rational& a, const Rational& b) { return a.q_ < b.q_; }
	friend bool operator<=(const Rational& a, const Rational& b) { return a.q_ <= b.q_; }
	friend bool operator>(const Rational& a, const Rational& b) { return a.q_ > b.q_; }
	friend bool operator>=(const Rational& a, const Rational& b) { return a.q_ >= b.q_; }

	Rational pow(unsigned k) const;
	double to_double() const { return q_.get_d(); }
	/// "num" or "num/den".
	std::string str() const;

private:
	mpq_class q_{0};
};

} // namespace kkit

#endif
