/* SPDX-License-Identifier: Apache-2.0
 *
 * Copyright 2026 The kkit Authors
 */

#include "kkit/dependence.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "kkit/errors.hpp"

namespace kkit {

DependenceRelation::DependenceRelation(mpz_class d_, std::vector<mpz_class> k_, Rational g_)
: d(std::move(d_)), k(std::move(k_)), g(std::move(g_))
{
	if (d == 0)
		throw std::invalid_argument("dependence relation with d = 0");
}

DependenceRelation DependenceRelation::parse(const std::string& text)
{
	auto s1 = text.find(';');
	auto s2 = s1 == std::string::npos ? std::string::npos : text.find(';', s1 + 1);
	if (s2 == std::string::npos)
		throw ParseError("relation must look like 'd;k1,k2,...;g'", 0);
	mpz_class d;
	std::string ds = text.substr(0, s1);
	if (ds.empty() || d.set_str(ds, 10) != 0)
		throw ParseError("bad d '" + ds + "'", 0);
	std::vector<mpz_class> k;
	std::string ks = text.substr(s1 + 1, s2 - s1 - 1);
	if (!ks.empty()) {
		std::istringstream in(ks);
		std::string item;
		while (std::getline(in, item, ',')) {
			mpz_class v;
			if (item.empty() || v.set_str(item, 10) != 0)
				throw ParseError("bad k entry '" + item + "'", s1 + 1);
			k.push_back(v);
		}
	}
	Rational g = Rational::parse(text.substr(s2 + 1));
	if (d == 0)
		throw ParseError("d must be non-zero", 0);
	return {d, std::move(k), g};
}

std::string DependenceRelation::str() const
{
	std::string s = d.get_str() + ";";
	for (std::size_t i = 0; i < k.size(); i++)
		s += (i ? "," : "") + k[i].get_str();
	return s + ";" + g.str();
}

namespace {

mpq_class dot(const std::vector<mpq_class>& a, const std::vector<mpq_class>& b)
{
	mpq_class s = 0;
	for (std::size_t i = 0; i < a.size(); i++)
		s += a[i] * b[i];
	return s;
}

void gram_schmidt(const std::vector<std::vector<mpz_class>>& b, std::vector<std::vector<mpq_class>>& bstar,
                  std::vector<std::vector<mpq_class>>& mu, std::vector<mpq_class>& norms)
{
	const std::size_t n = b.size(), dim = b.empty() ? 0 : b[0].size();
	bstar.assign(n, std::vector<mpq_class>(dim));
	mu.assign(n, std::vector<mpq_class>(n));
	norms.assign(n, 0);
	for (std::size_t i = 0; i < n; i++) {
		for (std::size_t c = 0; c < dim; c++)
			bstar[i][c] = b[i][c];
		std::vector<mpq_class> bi = bstar[i];
		for (std::size_t j = 0; j < i; j++) {
			mu[i][j] = norms[j] == 0 ? mpq_class(0) : mpq_class(dot(bi, bstar[j]) / norms[j]);
			for (std::size_t c = 0; c < dim; c++)
				bstar[i][c] -= mu[i][j] * bstar[j][c];
		}
		norms[i] = dot(bstar[i], bstar[i]);
	}
}

mpz_class round_nearest(const mpq_class& q)
{
	mpq_class t = q + mpq_class(1, 2);
	mpz_class r;
	mpz_fdiv_q(r.get_mpz_t(), t.get_num_mpz_t(), t.get_den_mpz_t());
	return r;
}

} // namespace

void lll_reduce(std::vector<std::vector<mpz_class>>& b)
{
	const std::size_t n = b.size();
	if (n < 2)
		return;
	const mpq_class delta(3, 4);
	std::vector<std::vector<mpq_class>> bstar, mu;
	std::vector<mpq_class> norms;
	gram_schmidt(b, bstar, mu, norms);
	std::size_t k = 1;
	while (k < n) {
		for (std::size_t jj = k; jj-- > 0;) {
			mpz_class q = round_nearest(mu[k][jj]);
			if (q != 0) {
				for (std::size_t c = 0; c < b[k].size(); c++)
					b[k][c] -= q * b[jj][c];
				gram_schmidt(b, bstar, mu, norms);
			}
		}
		if (norms[k] >= (delta - mu[k][k - 1] * mu[k][k - 1]) * norms[k - 1]) {
			k++;
		} else {
			std::swap(b[k], b[k - 1]);
			gram_schmidt(b, bstar, mu, norms);
			k = std::max<std::size_t>(k - 1, 1);
		}
	}
}

std::optional<std::vector<mpz_class>> integer_dependence(const std::vector<Interval>& values, long coeff_bound,
                                                         Precision precision)
{
	if (coeff_bound < 1)
		throw std::invalid_argument("integer_dependence: coeff_bound must be at least 1");
	const Dyadic tol = Dyadic::pow2(8 - precision);
	for (const auto& v : values)
		if (v.width() > tol)
			throw std::invalid_argument("integer_dependence: enclosure " + v.decimal(6) +
			                            " is wider than the detection tolerance");
	const std::size_t m = values.size();
	if (m == 0)
		return std::nullopt;

	std::vector<Dyadic> mids;
	for (const auto& v : values)
		mids.push_back(v.midpoint());

	// rows (e_i, round(S * mid_i)) with S = 1/tol
	std::vector<std::vector<mpz_class>> basis(m, std::vector<mpz_class>(m + 1, 0));
	for (std::size_t i = 0; i < m; i++) {
		basis[i][i] = 1;
		Dyadic scaled = mids[i].ldexp(precision - 8);
		basis[i][m] = round_nearest(scaled.to_rational().value());
	}
	lll_reduce(basis);

	std::optional<std::vector<mpz_class>> best;
	mpz_class best_norm;
	for (const auto& row : basis) {
		std::vector<mpz_class> u(row.begin(), row.begin() + static_cast<long>(m));
		mpz_class norm = 0;
		bool nonzero = false;
		for (const auto& x : u) {
			mpz_class a = abs(x);
			if (a > norm)
				norm = a;
			nonzero = nonzero || x != 0;
		}
		if (!nonzero || norm > coeff_bound)
			continue;
		Dyadic residual;
		for (std::size_t i = 0; i < m; i++)
			residual += Dyadic(u[i], 0) * mids[i];
		if (residual.abs() >= tol)
			continue;
		auto first = std::find_if(u.begin(), u.end(), [](const mpz_class& x) { return x != 0; });
		if (*first < 0)
			for (auto& x : u)
				x = -x;
		if (!best || norm < best_norm || (norm == best_norm && u < *best)) {
			best = u;
			best_norm = norm;
		}
	}
	return best;
}

std::optional<DependenceRelation> relation_from_integers(const std::vector<mpz_class>& u)
{
	if (u.size() < 2)
		throw std::invalid_argument("relation_from_integers expects (a_1..a_ell, 1) coefficients");
	const std::size_t ell = u.size() - 1;
	if (u[ell - 1] == 0)
		return std::nullopt;
	// sum_{i<ell} u_i a_i + u_ell a_ell + u_0 = 0  =>  u_ell a_ell = -sum u_i a_i - u_0
	std::vector<mpz_class> k;
	for (std::size_t i = 0; i + 1 < ell; i++)
		k.push_back(-u[i]);
	return DependenceRelation(u[ell - 1], std::move(k), Rational(mpz_class(-u[ell])));
}

} // namespace kkit
