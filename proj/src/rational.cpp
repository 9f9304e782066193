/* SPDX-License-Identifier: Apache-2.0
 *
 * Copyright 2026 The kkit Authors
 */

#include "kkit/rational.hpp"

#include <cctype>
#include <stdexcept>

#include "kkit/errors.hpp"

namespace kkit {

Rational::Rational(const mpz_class& num, const mpz_class& den)
{
	if (den == 0)
		throw std::domain_error("rational with zero denominator");
	q_ = mpq_class(num, den);
	q_.canonicalize();
}

Rational operator/(const Rational& a, const Rational& b)
{
	if (b.is_zero())
		throw std::domain_error("division by zero");
	return Rational(mpq_class(a.q_ / b.q_));
}

namespace {

mpz_class parse_digits(std::string_view s, std::size_t offset)
{
	if (s.empty())
		throw ParseError("expected digits", offset);
	for (std::size_t i = 0; i < s.size(); i++)
		if (!std::isdigit(static_cast<unsigned char>(s[i])))
			throw ParseError("invalid digit", offset + i);
	return mpz_class(std::string(s), 10);
}

} // namespace

Rational Rational::parse(std::string_view text)
{
	std::size_t i = 0;
	bool neg = false;
	if (i < text.size() && (text[i] == '-' || text[i] == '+')) {
		neg = text[i] == '-';
		i++;
	}
	std::string_view rest = text.substr(i);
	long exp10 = 0;
	if (auto e = rest.find_first_of("eE"); e != std::string_view::npos && rest.find('/') == std::string_view::npos) {
		std::string_view es = rest.substr(e + 1);
		bool eneg = !es.empty() && es[0] == '-';
		if (!es.empty() && (es[0] == '-' || es[0] == '+'))
			es.remove_prefix(1);
		mpz_class ev = parse_digits(es, i + e + 1);
		if (!ev.fits_slong_p() || ev > 100000)
			throw ParseError("exponent out of range", i + e + 1);
		exp10 = eneg ? -ev.get_si() : ev.get_si();
		rest = rest.substr(0, e);
	}
	Rational r;
	if (auto slash = rest.find('/'); slash != std::string_view::npos) {
		mpz_class n = parse_digits(rest.substr(0, slash), i);
		mpz_class d = parse_digits(rest.substr(slash + 1), i + slash + 1);
		if (d == 0)
			throw ParseError("zero denominator", i + slash + 1);
		r = Rational(n, d);
	} else if (auto dot = rest.find('.'); dot != std::string_view::npos) {
		std::string_view ip = rest.substr(0, dot), fp = rest.substr(dot + 1);
		mpz_class n = ip.empty() ? mpz_class(0) : parse_digits(ip, i);
		mpz_class f = fp.empty() ? mpz_class(0) : parse_digits(fp, i + dot + 1);
		if (ip.empty() && fp.empty())
			throw ParseError("expected number", i);
		mpz_class scale;
		mpz_ui_pow_ui(scale.get_mpz_t(), 10, fp.size());
		r = Rational(n * scale + f, scale);
	} else {
		r = Rational(parse_digits(rest, i));
	}
	if (exp10 != 0) {
		mpz_class scale;
		mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(exp10 < 0 ? -exp10 : exp10));
		r = exp10 < 0 ? r / Rational(scale) : r * Rational(scale);
	}
	return neg ? -r : r;
}

Rational Rational::pow(unsigned k) const
{
	mpz_class n, d;
	mpz_pow_ui(n.get_mpz_t(), q_.get_num_mpz_t(), k);
	mpz_pow_ui(d.get_mpz_t(), q_.get_den_mpz_t(), k);
	return Rational(n, d);
}

std::string Rational::str() const
{
	if (q_.get_den() == 1)
		return q_.get_num().get_str();
	return q_.get_num().get_str() + "/" + q_.get_den().get_str();
}

} // namespace kkit
