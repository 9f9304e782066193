/* SPDX-License-Identifier: Apache-2.0
 *
 * Copyright 2026 The kkit Authors
 */

#include "kkit/dyadic.hpp"

#include <cmath>
#include <cstdlib>
#include <limits>
#include <stdexcept>

#include "kkit/errors.hpp"

namespace kkit {

Dyadic::Dyadic(mpz_class mantissa, std::int64_t exponent)
: mant_(std::move(mantissa)), exp_(exponent)
{
	normalize();
}

void Dyadic::normalize()
{
	if (mant_ == 0) {
		exp_ = 0;
		return;
	}
	mp_bitcnt_t tz = mpz_scan1(mant_.get_mpz_t(), 0);
	if (tz > 0) {
		mpz_fdiv_q_2exp(mant_.get_mpz_t(), mant_.get_mpz_t(), tz);
		exp_ += static_cast<std::int64_t>(tz);
	}
}

Dyadic Dyadic::from_double(double v)
{
	if (!std::isfinite(v))
		throw std::domain_error("non-finite double");
	if (v == 0)
		return {};
	int e = 0;
	double m = std::frexp(v, &e);
	// 53 significant bits fit exactly into a long after scaling
	auto scaled = static_cast<long>(std::ldexp(m, 53));
	return Dyadic(mpz_class(scaled), static_cast<std::int64_t>(e) - 53);
}

std::int64_t Dyadic::top() const
{
	if (is_zero())
		return std::numeric_limits<std::int64_t>::min() / 4;
	return exp_ + static_cast<std::int64_t>(bits());
}

std::size_t Dyadic::bits() const
{
	return is_zero() ? 0 : mpz_sizeinbase(mant_.get_mpz_t(), 2);
}

Dyadic Dyadic::operator-() const
{
	Dyadic r = *this;
	r.mant_ = -r.mant_;
	return r;
}

Dyadic operator+(const Dyadic& a, const Dyadic& b)
{
	if (a.is_zero())
		return b;
	if (b.is_zero())
		return a;
	if (a.exp_ <= b.exp_) {
		mpz_class t;
		mpz_mul_2exp(t.get_mpz_t(), b.mant_.get_mpz_t(), b.exp_ - a.exp_);
		return Dyadic(a.mant_ + t, a.exp_);
	}
	mpz_class t;
	mpz_mul_2exp(t.get_mpz_t(), a.mant_.get_mpz_t(), a.exp_ - b.exp_);
	return Dyadic(b.mant_ + t, b.exp_);
}

Dyadic operator-(const Dyadic& a, const Dyadic& b) { return a + (-b); }

Dyadic operator*(const Dyadic& a, const Dyadic& b)
{
	if (a.is_zero() || b.is_zero())
		return {};
	Dyadic r;
	r.mant_ = a.mant_ * b.mant_;
	r.exp_ = a.exp_ + b.exp_;
	return r; // product of odd mantissas is odd
}

Dyadic Dyadic::ldexp(std::int64_t k) const
{
	if (is_zero())
		return *this;
	Dyadic r = *this;
	r.exp_ += k;
	return r;
}

int compare(const Dyadic& a, const Dyadic& b)
{
	int sa = a.sign(), sb = b.sign();
	if (sa != sb)
		return sa < sb ? -1 : 1;
	if (sa == 0)
		return 0;
	std::int64_t ta = a.top(), tb = b.top();
	if (ta != tb)
		return (ta < tb) == (sa > 0) ? -1 : 1;
	return (a - b).sign();
}

Rational Dyadic::to_rational() const
{
	if (exp_ >= 0) {
		mpz_class n;
		mpz_mul_2exp(n.get_mpz_t(), mant_.get_mpz_t(), exp_);
		return Rational(n);
	}
	mpz_class d;
	mpz_setbit(d.get_mpz_t(), -exp_);
	return Rational(mant_, d);
}

double Dyadic::to_double() const
{
	if (is_zero())
		return 0.0;
	long e = 0;
	double d = mpz_get_d_2exp(&e, mant_.get_mpz_t());
	return std::ldexp(d, static_cast<int>(e + exp_));
}

std::string Dyadic::str() const
{
	return mant_.get_str() + "*2^" + std::to_string(exp_);
}

std::string Dyadic::decimal(int digits) const
{
	if (is_zero())
		return "0";
	mpf_class f(0, static_cast<mp_bitcnt_t>(bits() + 4 * digits + 64));
	f = mant_;
	if (exp_ >= 0)
		mpf_mul_2exp(f.get_mpf_t(), f.get_mpf_t(), exp_);
	else
		mpf_div_2exp(f.get_mpf_t(), f.get_mpf_t(), -exp_);
	mp_exp_t e10 = 0;
	std::string s = f.get_str(e10, 10, digits);
	std::string out;
	if (s[0] == '-') {
		out = "-";
		s.erase(0, 1);
	}
	if (e10 <= 0) {
		out += "0." + std::string(static_cast<std::size_t>(-e10), '0') + s;
	} else if (static_cast<std::size_t>(e10) >= s.size()) {
		out += s + std::string(e10 - s.size(), '0');
	} else {
		out += s.substr(0, e10) + "." + s.substr(e10);
	}
	return out;
}

Dyadic Dyadic::parse(std::string_view text)
{
	if (auto star = text.find("*2^"); star != std::string_view::npos) {
		std::string m(text.substr(0, star));
		std::string e(text.substr(star + 3));
		mpz_class mant;
		if (m.empty() || mant.set_str(m, 10) != 0)
			throw ParseError("bad dyadic mantissa '" + m + "'", 0);
		char* end = nullptr;
		long long ex = std::strtoll(e.c_str(), &end, 10);
		if (e.empty() || *end != '\0')
			throw ParseError("bad dyadic exponent '" + e + "'", star + 3);
		return Dyadic(mant, ex);
	}
	Rational q = Rational::parse(text);
	mpz_class den = q.den();
	if (mpz_popcount(den.get_mpz_t()) != 1)
		throw ParseError("'" + std::string(text) + "' is not a dyadic rational", 0);
	return Dyadic(q.num(), -static_cast<std::int64_t>(mpz_sizeinbase(den.get_mpz_t(), 2) - 1));
}

Dyadic Dyadic::parse(std::string_view text, Precision prec, Round dir)
{
	if (text.find("*2^") != std::string_view::npos)
		return parse(text);
	return from_rational(Rational::parse(text), prec, dir);
}

Dyadic Dyadic::from_rational(const Rational& q, Precision prec, Round dir)
{
	if (q.is_zero())
		return {};
	mpz_class a = q.num(), b = q.den();
	if (mpz_popcount(b.get_mpz_t()) == 1) {
		Dyadic exact(a, -static_cast<std::int64_t>(mpz_sizeinbase(b.get_mpz_t(), 2) - 1));
		return round(exact, prec, dir);
	}
	auto la = static_cast<std::int64_t>(mpz_sizeinbase(a.get_mpz_t(), 2));
	auto lb = static_cast<std::int64_t>(mpz_sizeinbase(b.get_mpz_t(), 2));
	std::int64_t s = prec - (la - lb) + 2;
	mpz_class num = a;
	if (s >= 0)
		mpz_mul_2exp(num.get_mpz_t(), num.get_mpz_t(), s);
	else
		b <<= static_cast<mp_bitcnt_t>(-s);
	mpz_class m;
	switch (dir) {
	case Round::down:
		mpz_fdiv_q(m.get_mpz_t(), num.get_mpz_t(), b.get_mpz_t());
		break;
	case Round::up:
		mpz_cdiv_q(m.get_mpz_t(), num.get_mpz_t(), b.get_mpz_t());
		break;
	case Round::nearest: {
		mpz_class twice = 2 * num + b;
		mpz_fdiv_q(m.get_mpz_t(), twice.get_mpz_t(), mpz_class(2 * b).get_mpz_t());
		break;
	}
	}
	return round(Dyadic(m, -s), prec, dir);
}

Dyadic round(const Dyadic& x, Precision prec, Round dir)
{
	auto nb = static_cast<Precision>(x.bits());
	if (nb <= prec)
		return x;
	auto shift = static_cast<mp_bitcnt_t>(nb - prec);
	mpz_class m;
	const mpz_class& src = x.mantissa();
	switch (dir) {
	case Round::down:
		mpz_fdiv_q_2exp(m.get_mpz_t(), src.get_mpz_t(), shift);
		break;
	case Round::up:
		mpz_cdiv_q_2exp(m.get_mpz_t(), src.get_mpz_t(), shift);
		break;
	case Round::nearest: {
		mpz_class t = src;
		mpz_class half;
		mpz_setbit(half.get_mpz_t(), shift - 1);
		t += half;
		mpz_fdiv_q_2exp(m.get_mpz_t(), t.get_mpz_t(), shift);
		break;
	}
	}
	return Dyadic(m, x.exponent() + static_cast<std::int64_t>(shift));
}

Dyadic div_int(const Dyadic& x, long k, Precision prec, Round dir)
{
	if (k <= 0)
		throw std::domain_error("div_int expects a positive divisor");
	if (x.is_zero())
		return {};
	if ((k & (k - 1)) == 0) {
		std::int64_t lg = 0;
		while ((1L << lg) < k)
			lg++;
		return round(x.ldexp(-lg), prec, dir);
	}
	// shift so the quotient carries at least prec+2 bits, then round once more
	auto extra = static_cast<mp_bitcnt_t>(prec + 2 + 64);
	mpz_class num;
	mpz_mul_2exp(num.get_mpz_t(), x.mantissa().get_mpz_t(), extra);
	mpz_class q;
	mpz_class kk(k);
	if (dir == Round::up)
		mpz_cdiv_q(q.get_mpz_t(), num.get_mpz_t(), kk.get_mpz_t());
	else
		mpz_fdiv_q(q.get_mpz_t(), num.get_mpz_t(), kk.get_mpz_t());
	return round(Dyadic(q, x.exponent() - static_cast<std::int64_t>(extra)), prec, dir);
}

Dyadic ulp(const Dyadic& x, Precision prec)
{
	if (x.is_zero())
		return Dyadic::pow2(-prec);
	return Dyadic::pow2(x.top() - prec);
}

} // namespace kkit
