/* SPDX-License-Identifier: Apache-2.0
 *
 * Copyright 2026 The kkit Authors
 */

#include "kkit/text.hpp"

#include <cctype>
#include <optional>
#include <sstream>
#include <string>

#include "kkit/errors.hpp"

namespace kkit {

namespace {

// expr   := ['+'|'-'] term (('+'|'-') term)*
// term   := factor (('*' | '/') factor)*, dividing only by non-zero constants
// factor := atom ('^' integer)?
// atom   := number | number '/' number | 'x'<i> | 'E(' 'x'<i> ')' | '(' expr ')'
class PolyParser {
public:
	PolyParser(std::string_view src, const Shape& shape) : src_(src), shape_(shape) {}

	ExpPolynomial parse()
	{
		ExpPolynomial p = expr();
		skip();
		if (pos_ != src_.size())
			fail("unexpected '" + std::string(1, src_[pos_]) + "'");
		return p;
	}

private:
	[[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, pos_); }

	void skip()
	{
		while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_])))
			pos_++;
	}

	bool accept(char c)
	{
		skip();
		if (pos_ < src_.size() && src_[pos_] == c) {
			pos_++;
			return true;
		}
		return false;
	}

	void expect(char c)
	{
		if (!accept(c))
			fail(std::string("expected '") + c + "'");
	}

	std::string digits()
	{
		std::size_t start = pos_;
		while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_])))
			pos_++;
		return std::string(src_.substr(start, pos_ - start));
	}

	ExpPolynomial expr()
	{
		bool neg = false;
		if (accept('-'))
			neg = true;
		else
			accept('+');
		ExpPolynomial acc = term();
		if (neg)
			acc = -acc;
		for (;;) {
			if (accept('+'))
				acc += term();
			else if (accept('-'))
				acc -= term();
			else
				return acc;
		}
	}

	ExpPolynomial term()
	{
		ExpPolynomial acc = factor();
		for (;;) {
			if (accept('*')) {
				acc *= factor();
			} else if (accept('/')) {
				std::size_t at = pos_;
				ExpPolynomial d = factor();
				if (!d.is_constant() || d.is_zero()) {
					pos_ = at;
					fail("can only divide by a non-zero constant");
				}
				acc = (Rational(1) / d.constant_term()) * acc;
			} else {
				return acc;
			}
		}
	}

	ExpPolynomial factor()
	{
		ExpPolynomial base = atom();
		if (accept('^')) {
			skip();
			std::string d = digits();
			if (d.empty())
				fail("expected a non-negative integer exponent");
			if (d.size() > 6)
				fail("exponent too large");
			base = base.pow(static_cast<unsigned>(std::stoul(d)));
		}
		return base;
	}

	std::size_t var_index()
	{
		skip();
		if (pos_ >= src_.size() || src_[pos_] != 'x')
			fail("expected a variable x<i>");
		pos_++;
		std::size_t at = pos_;
		std::string d = digits();
		if (d.empty() || d[0] == '0' || d.size() > 9)
			fail("bad variable index");
		std::size_t i = std::stoul(d);
		if (i > shape_.n) {
			pos_ = at;
			fail("variable x" + d + " outside shape " + shape_.str());
		}
		return i - 1;
	}

	ExpPolynomial atom()
	{
		skip();
		if (pos_ >= src_.size())
			fail("unexpected end of input");
		char c = src_[pos_];
		if (c == '(') {
			pos_++;
			ExpPolynomial p = expr();
			expect(')');
			return p;
		}
		if (std::isdigit(static_cast<unsigned char>(c)))
			return ExpPolynomial::constant(shape_, number());
		if (c == 'x')
			return ExpPolynomial::x(shape_, var_index());
		if (c == 'E') {
			std::size_t at = pos_;
			pos_++;
			expect('(');
			std::size_t i = var_index();
			expect(')');
			if (i >= shape_.ell) {
				pos_ = at;
				fail("E(x" + std::to_string(i + 1) + ") needs ell >= " + std::to_string(i + 1));
			}
			return ExpPolynomial::texp(shape_, i);
		}
		fail("unexpected '" + std::string(1, c) + "'");
	}

	Rational number()
	{
		std::size_t start = pos_;
		std::string lit = digits();
		if (pos_ < src_.size() && src_[pos_] == '.') {
			pos_++;
			lit += "." + digits();
		} else if (pos_ + 1 < src_.size() && src_[pos_] == '/' &&
		           std::isdigit(static_cast<unsigned char>(src_[pos_ + 1]))) {
			pos_++;
			lit += "/" + digits();
		}
		try {
			return Rational::parse(lit);
		} catch (const ParseError& e) {
			throw ParseError("bad number '" + lit + "'", start);
		}
	}

	std::string_view src_;
	Shape shape_;
	std::size_t pos_ = 0;
};

} // namespace

ExpPolynomial parse_polynomial(std::string_view text, const Shape& shape)
{
	return PolyParser(text, shape).parse();
}

KhovanskiiSystem parse_system(std::string_view text)
{
	std::istringstream in{std::string(text)};
	std::string line;
	std::size_t offset = 0;
	std::optional<Shape> shape;
	std::vector<ExpPolynomial> eqs;
	while (std::getline(in, line)) {
		std::size_t line_start = offset;
		offset += line.size() + 1;
		std::size_t first = line.find_first_not_of(" \t\r");
		if (first == std::string::npos || line[first] == '#')
			continue;
		std::string body = line.substr(first);
		while (!body.empty() && (body.back() == '\r' || body.back() == ' ' || body.back() == '\t'))
			body.pop_back();
		if (!shape) {
			std::istringstream hs(body);
			std::string tag;
			long ell = -1, n = -1;
			hs >> tag >> ell >> n;
			std::string rest;
			if (tag != "shape:" || ell < 0 || n < 0 || (hs >> rest))
				throw ParseError("expected header 'shape: ell n'", line_start + first);
			try {
				shape = Shape(static_cast<std::size_t>(ell), static_cast<std::size_t>(n));
			} catch (const ShapeError& e) {
				throw ParseError(e.what(), line_start + first);
			}
			continue;
		}
		try {
			eqs.push_back(parse_polynomial(body, *shape));
		} catch (const ParseError& e) {
			throw ParseError(std::string("equation ") + std::to_string(eqs.size() + 1) + ": " + e.what(),
			                 line_start + first + e.position);
		}
	}
	if (!shape)
		throw ParseError("missing 'shape: ell n' header", 0);
	if (eqs.size() != shape->n)
		throw ParseError("shape " + shape->str() + " needs " + std::to_string(shape->n) + " equations, found " +
		                     std::to_string(eqs.size()),
		                 text.size());
	return KhovanskiiSystem(*shape, std::move(eqs));
}

} // namespace kkit
