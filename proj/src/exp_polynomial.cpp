/* SPDX-License-Identifier: Apache-2.0
 *
 * Copyright 2026 The kkit Authors
 */

#include "kkit/exp_polynomial.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <stdexcept>

#include "kkit/enclose.hpp"

namespace kkit {

unsigned ExpMonomial::degree() const
{
	unsigned d = 0;
	for (unsigned e : exps)
		d += e;
	return d;
}

int grlex_compare(const Exponents& a, const Exponents& b)
{
	unsigned da = 0, db = 0;
	for (unsigned e : a)
		da += e;
	for (unsigned e : b)
		db += e;
	if (da != db)
		return da < db ? -1 : 1;
	for (std::size_t i = 0; i < a.size() && i < b.size(); i++)
		if (a[i] != b[i])
			return a[i] < b[i] ? -1 : 1;
	return 0;
}

namespace {

struct GrlexLess {
	bool operator()(const Exponents& a, const Exponents& b) const { return grlex_compare(a, b) < 0; }
};

using TermMap = std::map<Exponents, Rational, GrlexLess>;

std::vector<ExpMonomial> from_map(TermMap&& m)
{
	std::vector<ExpMonomial> out;
	out.reserve(m.size());
	for (auto it = m.rbegin(); it != m.rend(); ++it)
		if (!it->second.is_zero())
			out.push_back({it->second, it->first});
	return out;
}

} // namespace

ExpPolynomial::ExpPolynomial(Shape shape, std::vector<ExpMonomial> monomials) : shape_(shape)
{
	TermMap acc;
	for (auto& t : monomials) {
		if (t.exps.size() != shape.n + shape.ell)
			throw ShapeError("monomial exponent vector does not match shape " + shape.str());
		acc[t.exps] += t.coeff;
	}
	terms_ = from_map(std::move(acc));
}

ExpPolynomial ExpPolynomial::constant(Shape shape, const Rational& c)
{
	ExpPolynomial p(shape);
	if (!c.is_zero())
		p.terms_.push_back({c, Exponents(shape.n + shape.ell, 0)});
	return p;
}

ExpPolynomial ExpPolynomial::x(Shape shape, std::size_t i)
{
	if (i >= shape.n)
		throw std::out_of_range("variable index out of range");
	ExpPolynomial p(shape);
	Exponents e(shape.n + shape.ell, 0);
	e[i] = 1;
	p.terms_.push_back({Rational(1), std::move(e)});
	return p;
}

ExpPolynomial ExpPolynomial::texp(Shape shape, std::size_t i)
{
	if (i >= shape.ell)
		throw std::out_of_range("texp applied to a non-exponentiated variable");
	ExpPolynomial p(shape);
	Exponents e(shape.n + shape.ell, 0);
	e[shape.n + i] = 1;
	p.terms_.push_back({Rational(1), std::move(e)});
	return p;
}

bool ExpPolynomial::is_constant() const
{
	return terms_.empty() || (terms_.size() == 1 && terms_[0].degree() == 0);
}

Rational ExpPolynomial::constant_term() const
{
	if (!terms_.empty() && terms_.back().degree() == 0)
		return terms_.back().coeff;
	return Rational(0);
}

unsigned ExpPolynomial::degree() const { return terms_.empty() ? 0 : terms_.front().degree(); }

bool ExpPolynomial::is_pure() const
{
	for (const auto& t : terms_)
		for (unsigned e : t.ypow(shape_))
			if (e)
				return false;
	return true;
}

ExpPolynomial ExpPolynomial::operator-() const
{
	ExpPolynomial r = *this;
	for (auto& t : r.terms_)
		t.coeff = -t.coeff;
	return r;
}

ExpPolynomial operator+(const ExpPolynomial& a, const ExpPolynomial& b)
{
	require_same_shape(a.shape_, b.shape_, "polynomial addition");
	ExpPolynomial r(a.shape_);
	// merge of two descending lists
	std::size_t i = 0, j = 0;
	while (i < a.terms_.size() || j < b.terms_.size()) {
		int c;
		if (i == a.terms_.size())
			c = -1;
		else if (j == b.terms_.size())
			c = 1;
		else
			c = grlex_compare(a.terms_[i].exps, b.terms_[j].exps);
		if (c > 0) {
			r.terms_.push_back(a.terms_[i++]);
		} else if (c < 0) {
			r.terms_.push_back(b.terms_[j++]);
		} else {
			Rational s = a.terms_[i].coeff + b.terms_[j].coeff;
			if (!s.is_zero())
				r.terms_.push_back({s, a.terms_[i].exps});
			i++;
			j++;
		}
	}
	return r;
}

ExpPolynomial operator-(const ExpPolynomial& a, const ExpPolynomial& b) { return a + (-b); }

ExpPolynomial operator*(const ExpPolynomial& a, const ExpPolynomial& b)
{
	require_same_shape(a.shape_, b.shape_, "polynomial multiplication");
	TermMap acc;
	for (const auto& s : a.terms_)
		for (const auto& t : b.terms_) {
			Exponents e = s.exps;
			for (std::size_t k = 0; k < e.size(); k++)
				e[k] += t.exps[k];
			acc[e] += s.coeff * t.coeff;
		}
	ExpPolynomial r(a.shape_);
	r.terms_ = from_map(std::move(acc));
	return r;
}

ExpPolynomial operator*(const Rational& c, const ExpPolynomial& p)
{
	if (c.is_zero())
		return ExpPolynomial(p.shape_);
	ExpPolynomial r = p;
	for (auto& t : r.terms_)
		t.coeff *= c;
	return r;
}

ExpPolynomial ExpPolynomial::pow(unsigned k) const
{
	ExpPolynomial r = constant(shape_, Rational(1));
	ExpPolynomial b = *this;
	while (k) {
		if (k & 1)
			r = r * b;
		k >>= 1;
		if (k)
			b = b * b;
	}
	return r;
}

ExpPolynomial ExpPolynomial::compose(const Shape& target, const std::vector<ExpPolynomial>& xs,
                                     const std::vector<ExpPolynomial>& ys) const
{
	if (xs.size() != shape_.n || ys.size() != shape_.ell)
		throw ShapeError("compose: replacement count does not match shape " + shape_.str());
	for (const auto& p : xs)
		require_same_shape(p.shape(), target, "compose");
	for (const auto& p : ys)
		require_same_shape(p.shape(), target, "compose");
	ExpPolynomial r(target);
	for (const auto& t : terms_) {
		ExpPolynomial m = constant(target, t.coeff);
		for (std::size_t i = 0; i < shape_.n; i++)
			if (t.exps[i])
				m = m * xs[i].pow(t.exps[i]);
		for (std::size_t i = 0; i < shape_.ell; i++)
			if (t.exps[shape_.n + i])
				m = m * ys[i].pow(t.exps[shape_.n + i]);
		r += m;
	}
	return r;
}

std::string ExpPolynomial::str() const
{
	if (terms_.empty())
		return "0";
	std::string s;
	bool first = true;
	for (const auto& t : terms_) {
		Rational c = t.coeff;
		if (first) {
			if (c.sign() < 0) {
				s += "-";
				c = -c;
			}
		} else {
			s += c.sign() < 0 ? " - " : " + ";
			if (c.sign() < 0)
				c = -c;
		}
		first = false;
		s += c.str();
		for (std::size_t i = 0; i < shape_.n; i++)
			if (unsigned e = t.exps[i]) {
				s += " * x" + std::to_string(i + 1);
				if (e > 1)
					s += "^" + std::to_string(e);
			}
		for (std::size_t i = 0; i < shape_.ell; i++)
			if (unsigned e = t.exps[shape_.n + i]) {
				s += " * E(x" + std::to_string(i + 1) + ")";
				if (e > 1)
					s += "^" + std::to_string(e);
			}
	}
	return s;
}

ExpPolynomial formal_partial(const ExpPolynomial& p, std::size_t i)
{
	const Shape& s = p.shape();
	if (i >= s.n)
		throw std::out_of_range("formal_partial: variable index " + std::to_string(i) + " out of range for shape " +
		                        s.str());
	std::vector<ExpMonomial> out;
	for (const auto& t : p.monomials()) {
		if (unsigned e = t.exps[i]) {
			ExpMonomial d = t;
			d.coeff *= Rational(static_cast<long>(e));
			d.exps[i] = e - 1;
			out.push_back(std::move(d));
		}
		if (i < s.ell) {
			// d(y_i^e)/dx_i = e * y_i^(e-1) * y_i
			if (unsigned e = t.exps[s.n + i]) {
				ExpMonomial d = t;
				d.coeff *= Rational(static_cast<long>(e));
				out.push_back(std::move(d));
			}
		}
	}
	return ExpPolynomial(s, std::move(out));
}

namespace {

class PowerCache {
public:
	PowerCache(const Interval& base, Precision prec) : base_(base), prec_(prec) {}

	const Interval& get(unsigned k)
	{
		if (cache_.size() <= k)
			cache_.resize(k + 1);
		if (!cache_[k])
			cache_[k] = pow(base_, k, prec_);
		return *cache_[k];
	}

private:
	Interval base_;
	Precision prec_;
	std::vector<std::optional<Interval>> cache_;
};

} // namespace

Interval evaluate(const ExpPolynomial& p, const Box& box, Precision prec, bool interior)
{
	const Shape& s = p.shape();
	require_same_shape(s, box.shape(), "evaluate");
	if (p.is_zero())
		return Interval(0);

	if (box.is_point() && p.is_pure()) {
		std::vector<Rational> pt;
		for (std::size_t i = 0; i < s.n; i++)
			pt.push_back(box[i].lo().to_rational());
		// width zero whenever the value is a dyadic of at most prec bits
		return Interval::from_rational(evaluate_exact(p, pt), prec);
	}

	std::vector<PowerCache> xc, yc;
	xc.reserve(s.n);
	yc.reserve(s.ell);
	for (std::size_t i = 0; i < s.n; i++)
		xc.emplace_back(box[i], prec);
	for (std::size_t i = 0; i < s.ell; i++)
		yc.emplace_back(interior ? texp_interior(box[i], prec) : texp_enclosure(box[i], prec), prec);

	Interval sum(0);
	for (const auto& t : p.monomials()) {
		Interval m = Interval::from_rational(t.coeff, prec);
		for (std::size_t i = 0; i < s.n; i++)
			if (unsigned e = t.exps[i])
				m = mul(m, xc[i].get(e), prec);
		for (std::size_t i = 0; i < s.ell; i++)
			if (unsigned e = t.exps[s.n + i])
				m = mul(m, yc[i].get(e), prec);
		sum = add(sum, m, prec);
	}
	return sum;
}

Rational evaluate_exact(const ExpPolynomial& p, const std::vector<Rational>& point)
{
	const Shape& s = p.shape();
	if (point.size() != s.n)
		throw ShapeError("evaluate_exact: point dimension does not match shape " + s.str());
	if (!p.is_pure())
		throw std::invalid_argument("evaluate_exact: polynomial has texp factors");
	Rational sum(0);
	for (const auto& t : p.monomials()) {
		Rational m = t.coeff;
		for (std::size_t i = 0; i < s.n; i++)
			if (unsigned e = t.exps[i])
				m *= point[i].pow(e);
		sum += m;
	}
	return sum;
}

ExpPolynomial determinant(const PolyMatrix& m, const Shape& shape)
{
	const std::size_t k = m.size();
	if (k == 0)
		return ExpPolynomial::constant(shape, Rational(1));
	for (const auto& row : m)
		if (row.size() != k)
			throw std::invalid_argument("determinant of a non-square matrix");
	if (k == 1)
		return m[0][0];
	if (k == 2)
		return m[0][0] * m[1][1] - m[0][1] * m[1][0];
	ExpPolynomial det(shape);
	for (std::size_t j = 0; j < k; j++) {
		if (m[0][j].is_zero())
			continue;
		PolyMatrix minor;
		for (std::size_t r = 1; r < k; r++) {
			std::vector<ExpPolynomial> row;
			for (std::size_t c = 0; c < k; c++)
				if (c != j)
					row.push_back(m[r][c]);
			minor.push_back(std::move(row));
		}
		ExpPolynomial term = m[0][j] * determinant(minor, shape);
		det = j % 2 == 0 ? det + term : det - term;
	}
	return det;
}

std::vector<std::vector<Interval>> evaluate(const PolyMatrix& m, const Box& box, Precision prec)
{
	std::vector<std::vector<Interval>> out;
	out.reserve(m.size());
	for (const auto& row : m) {
		std::vector<Interval> r;
		r.reserve(row.size());
		for (const auto& p : row)
			r.push_back(evaluate(p, box, prec));
		out.push_back(std::move(r));
	}
	return out;
}

} // namespace kkit
