// SPDX-License-Identifier: Apache-2.0

#include "kkit/reduce.hpp"

#include <algorithm>
#include <stdexcept>

#include "kkit/enclose.hpp"
#include "kkit/errors.hpp"

namespace kkit {

bool GenExpMonomial::has_exp() const
{
	if (!offset.is_zero())
		return true;
	return std::any_of(lambda.begin(), lambda.end(), [](const Rational& r) { return !r.is_zero(); });
}

namespace {

int compare_rationals(const std::vector<Rational>& a, const std::vector<Rational>& b)
{
	for (std::size_t i = 0; i < a.size(); i++) {
		if (a[i] < b[i])
			return -1;
		if (b[i] < a[i])
			return 1;
	}
	return 0;
}

// -1, 0, 1 on the key (xpow, lambda, offset); coefficients ignored
int compare_keys(const GenExpMonomial& a, const GenExpMonomial& b)
{
	if (int c = grlex_compare(a.xpow, b.xpow))
		return c;
	if (int c = compare_rationals(a.lambda, b.lambda))
		return c;
	if (a.offset < b.offset)
		return -1;
	return b.offset < a.offset ? 1 : 0;
}

std::string signed_list(const std::vector<std::pair<Rational, std::string>>& parts)
{
	std::string s;
	bool first = true;
	for (const auto& [coeff, factor] : parts) {
		Rational c = coeff;
		if (first) {
			if (c.sign() < 0)
				s += "-";
		} else {
			s += c.sign() < 0 ? " - " : " + ";
		}
		if (c.sign() < 0)
			c = -c;
		first = false;
		s += c.str() + factor;
	}
	return s;
}

} // namespace

GenExpPolynomial::GenExpPolynomial(std::size_t n, std::vector<GenExpMonomial> monomials) : n_(n)
{
	for (const auto& m : monomials)
		if (m.xpow.size() != n || m.lambda.size() != n)
			throw ShapeError("generalized monomial does not have " + std::to_string(n) + " variables");
	std::sort(monomials.begin(), monomials.end(),
	          [](const GenExpMonomial& a, const GenExpMonomial& b) { return compare_keys(a, b) > 0; });
	for (auto& m : monomials) {
		if (!terms_.empty() && compare_keys(terms_.back(), m) == 0)
			terms_.back().coeff += m.coeff;
		else
			terms_.push_back(std::move(m));
		if (terms_.back().coeff.is_zero())
			terms_.pop_back();
	}
}

GenExpPolynomial operator+(const GenExpPolynomial& a, const GenExpPolynomial& b)
{
	if (a.n_ != b.n_)
		throw ShapeError("generalized polynomials over different variable counts");
	std::vector<GenExpMonomial> all = a.terms_;
	all.insert(all.end(), b.terms_.begin(), b.terms_.end());
	return GenExpPolynomial(a.n_, std::move(all));
}

std::string GenExpPolynomial::str() const
{
	if (terms_.empty())
		return "0";
	std::vector<std::pair<Rational, std::string>> parts;
	for (const auto& t : terms_) {
		std::string f;
		for (std::size_t i = 0; i < n_; i++)
			if (unsigned e = t.xpow[i]) {
				f += " * x" + std::to_string(i + 1);
				if (e > 1)
					f += "^" + std::to_string(e);
			}
		if (t.has_exp()) {
			std::vector<std::pair<Rational, std::string>> arg;
			for (std::size_t i = 0; i < n_; i++)
				if (!t.lambda[i].is_zero())
					arg.emplace_back(t.lambda[i], " * x" + std::to_string(i + 1));
			if (!t.offset.is_zero())
				arg.emplace_back(t.offset, "");
			f += " * Exp(" + signed_list(arg) + ")";
		}
		parts.emplace_back(t.coeff, f);
	}
	return signed_list(parts);
}

GenExpPolynomial partial(const GenExpPolynomial& p, std::size_t j)
{
	if (j >= p.n())
		throw std::out_of_range("partial: variable index out of range");
	std::vector<GenExpMonomial> out;
	for (const auto& t : p.monomials()) {
		if (unsigned e = t.xpow[j]) {
			GenExpMonomial d = t;
			d.coeff *= Rational(static_cast<long>(e));
			d.xpow[j] = e - 1;
			out.push_back(std::move(d));
		}
		if (!t.lambda[j].is_zero()) {
			GenExpMonomial d = t;
			d.coeff *= t.lambda[j];
			out.push_back(std::move(d));
		}
	}
	return GenExpPolynomial(p.n(), std::move(out));
}

Interval evaluate(const GenExpPolynomial& p, const Box& box, Precision prec)
{
	if (box.size() != p.n())
		throw ShapeError("evaluate: box does not match the variable count");
	Interval sum(0);
	for (const auto& t : p.monomials()) {
		Interval m = Interval::from_rational(t.coeff, prec);
		for (std::size_t i = 0; i < p.n(); i++)
			if (unsigned e = t.xpow[i])
				m = mul(m, pow(box[i], e, prec), prec);
		if (t.has_exp()) {
			Interval arg = Interval::from_rational(t.offset, prec);
			for (std::size_t i = 0; i < p.n(); i++)
				if (!t.lambda[i].is_zero())
					arg = add(arg, mul(Interval::from_rational(t.lambda[i], prec), box[i], prec), prec);
			m = mul(m, exp_fin_enclosure(arg, prec), prec);
		}
		sum = add(sum, m, prec);
	}
	return sum;
}

GenExpSystem::GenExpSystem(Shape shape, std::vector<GenExpPolynomial> equations)
    : shape_(shape), equations_(std::move(equations))
{
	if (equations_.size() != shape_.n)
		throw ShapeError("generalized system needs " + std::to_string(shape_.n) + " equations, got " +
		                 std::to_string(equations_.size()));
	for (const auto& e : equations_) {
		if (e.n() != shape_.n)
			throw ShapeError("generalized equation over the wrong variable count");
		std::vector<GenExpPolynomial> row;
		for (std::size_t j = 0; j < shape_.n; j++)
			row.push_back(partial(e, j));
		jacobian_.push_back(std::move(row));
	}
}

std::vector<Interval> GenExpSystem::eval(const Box& box, Precision prec) const
{
	std::vector<Interval> out;
	for (const auto& e : equations_)
		out.push_back(evaluate(e, box, prec));
	return out;
}

std::vector<std::vector<Interval>> GenExpSystem::jacobian(const Box& box, Precision prec) const
{
	std::vector<std::vector<Interval>> out;
	for (const auto& row : jacobian_) {
		std::vector<Interval> r;
		for (const auto& e : row)
			r.push_back(evaluate(e, box, prec));
		out.push_back(std::move(r));
	}
	return out;
}

std::string GenExpSystem::str() const
{
	std::string s;
	for (const auto& e : equations_)
		s += e.str() + "\n";
	return s;
}

namespace {

Interval from_mpz(const mpz_class& z) { return Interval(Dyadic(z, 0)); }

// x_i = d X_i for i < ell-1, x_ell = k . X + g/d, x_i = X_{i-1} after
struct Substitution {
	Shape from, to;
	const DependenceRelation& rel;

	std::size_t last() const { return from.ell - 1; }

	std::vector<ExpPolynomial> coordinates() const
	{
		Shape pure(0, to.n);
		std::vector<ExpPolynomial> xs;
		for (std::size_t i = 0; i < from.n; i++) {
			if (i < last()) {
				xs.push_back(Rational(rel.d) * ExpPolynomial::x(pure, i));
			} else if (i == last()) {
				ExpPolynomial v = ExpPolynomial::constant(pure, rel.g / Rational(rel.d));
				for (std::size_t j = 0; j < rel.k.size(); j++)
					v += Rational(rel.k[j]) * ExpPolynomial::x(pure, j);
				xs.push_back(v);
			} else {
				xs.push_back(ExpPolynomial::x(pure, i - 1));
			}
		}
		return xs;
	}

	GenExpPolynomial apply(const ExpPolynomial& p) const
	{
		Shape pure(0, to.n);
		std::vector<ExpPolynomial> xs = coordinates();
		std::vector<GenExpMonomial> out;
		for (const auto& t : p.monomials()) {
			ExpPolynomial poly = ExpPolynomial::constant(pure, t.coeff);
			for (std::size_t i = 0; i < from.n; i++)
				if (unsigned e = t.exps[i])
					poly *= xs[i].pow(e);
			std::vector<Rational> lambda(to.n);
			Rational offset;
			for (std::size_t i = 0; i < from.ell; i++) {
				Rational b(static_cast<long>(t.exps[from.n + i]));
				if (b.is_zero())
					continue;
				if (i < last()) {
					lambda[i] += b * Rational(rel.d);
				} else {
					for (std::size_t j = 0; j < rel.k.size(); j++)
						lambda[j] += b * Rational(rel.k[j]);
					offset += b * rel.g / Rational(rel.d);
				}
			}
			for (const auto& q : poly.monomials())
				out.push_back({q.coeff, std::vector<unsigned>(q.exps.begin(), q.exps.begin() + to.n), lambda, offset});
		}
		return GenExpPolynomial(to.n, std::move(out));
	}
};

// multiplies by Exp(m . X) with m the smallest shift making every lambda >= 0
GenExpPolynomial clear_negative(const GenExpPolynomial& p)
{
	std::vector<Rational> shift(p.n());
	for (const auto& t : p.monomials())
		for (std::size_t j = 0; j < p.n(); j++)
			if (-t.lambda[j] > shift[j])
				shift[j] = -t.lambda[j];
	std::vector<GenExpMonomial> out;
	for (auto t : p.monomials()) {
		for (std::size_t j = 0; j < p.n(); j++)
			t.lambda[j] += shift[j];
		out.push_back(std::move(t));
	}
	return GenExpPolynomial(p.n(), std::move(out));
}

Interval relation_residual(const DependenceRelation& rel, const Box& zero, Precision prec)
{
	std::size_t last = rel.k.size();
	Interval r = sub(mul(from_mpz(rel.d), zero[last], prec), Interval::from_rational(rel.g, prec), prec);
	for (std::size_t i = 0; i < last; i++)
		r = sub(r, mul(from_mpz(rel.k[i]), zero[i], prec), prec);
	return r;
}

Box transform_box(const Shape& to, const DependenceRelation& rel, const Box& b, Precision prec)
{
	std::vector<Interval> c;
	std::size_t last = rel.k.size();
	Interval d = from_mpz(rel.d);
	for (std::size_t i = 0; i < b.size(); i++) {
		if (i < last)
			c.push_back(div(b[i], d, prec));
		else if (i > last)
			c.push_back(b[i]);
	}
	return Box(to, std::move(c));
}

Box inflate_box(const Box& b, const Dyadic& rel_radius)
{
	std::vector<Interval> c;
	for (const auto& x : b.coords())
		c.push_back(inflate(x, x.width() + rel_radius * (Dyadic(1) + x.mag())));
	return Box(b.shape(), std::move(c));
}

std::optional<KhovanskiiSystem> plain_form(const GenExpSystem& sys, const Box& zero)
{
	const Shape& s = sys.shape();
	if (!zero.exp_coords_inside())
		return std::nullopt;
	std::vector<ExpPolynomial> eqs;
	for (const auto& e : sys.equations()) {
		std::vector<ExpMonomial> ms;
		for (const auto& t : e.monomials()) {
			if (!t.offset.is_zero())
				return std::nullopt;
			Exponents ex(t.xpow.begin(), t.xpow.end());
			for (std::size_t j = 0; j < s.n; j++) {
				const Rational& l = t.lambda[j];
				if (l.is_zero())
					continue;
				if (j >= s.ell || !l.is_integer() || l.sign() < 0 || !l.num().fits_ulong_p())
					return std::nullopt;
			}
			for (std::size_t j = 0; j < s.ell; j++)
				ex.push_back(static_cast<unsigned>(t.lambda[j].num().get_ui()));
			ms.push_back({t.coeff, std::move(ex)});
		}
		eqs.emplace_back(s, std::move(ms));
	}
	return KhovanskiiSystem(s, std::move(eqs));
}

} // namespace

Box ReducedSystem::to_original(const Box& reduced, Precision prec) const
{
	std::size_t last = relation.k.size();
	std::vector<Interval> c;
	Interval xl = Interval::from_rational(relation.g / Rational(relation.d), prec);
	for (std::size_t j = 0; j < last; j++)
		xl = add(xl, mul(from_mpz(relation.k[j]), reduced[j], prec), prec);
	for (std::size_t i = 0; i < original.n; i++) {
		if (i < last)
			c.push_back(mul(from_mpz(relation.d), reduced[i], prec));
		else if (i == last)
			c.push_back(xl);
		else
			c.push_back(reduced[i - 1]);
	}
	return Box(original, std::move(c));
}

ReducedSystem eliminate_dependence(const KhovanskiiSystem& sys, const Certificate& cert,
                                   const DependenceRelation& rel)
{
	const Shape& s = sys.shape();
	if (s.ell == 0)
		throw ReductionError("system has no exponentiated coordinate to eliminate");
	if (rel.k.size() != s.ell - 1)
		throw ReductionError("relation has " + std::to_string(rel.k.size()) + " coefficients, expected " +
		                     std::to_string(s.ell - 1));
	if (s.n < 2)
		throw ReductionError("eliminating the only variable leaves nothing to certify");
	if (cert.box.shape() != s)
		throw ReductionError("certificate does not belong to a system of shape " + s.str());

	Precision prec = std::max<Precision>(cert.precision, 64);
	if (!relation_residual(rel, cert.zero(), prec).contains_zero())
		throw ReductionError("relation " + rel.str() + " is inconsistent with the certified zero");

	Shape to(s.ell - 1, s.n - 1);
	Substitution subst{s, to, rel};
	std::vector<GenExpPolynomial> all;
	for (const auto& e : sys.equations())
		all.push_back(clear_negative(subst.apply(e)));

	Box outer = transform_box(to, rel, cert.box, prec);
	Box start = transform_box(to, rel, cert.zero(), prec);
	start = intersect(inflate_box(start, Dyadic::pow2(-40)), outer).value_or(start);

	std::optional<std::size_t> drop;
	std::shared_ptr<const GenExpSystem> reduced;
	for (std::size_t i = 0; i < s.n && !drop; i++) {
		std::vector<GenExpPolynomial> kept;
		for (std::size_t j = 0; j < s.n; j++)
			if (j != i)
				kept.push_back(all[j]);
		auto candidate = std::make_shared<const GenExpSystem>(to, std::move(kept));
		if (!interval_jacobian(*candidate, start, prec).det.contains_zero()) {
			drop = i;
			reduced = candidate;
		}
	}
	if (!drop)
		throw ReductionError("no equation can be dropped while keeping the Jacobian regular at the zero");

	CertifyBudget budget;
	budget.start_precision = prec;
	budget.max_precision = std::max<Precision>(4096, prec);
	CertifyResult r = certify_regular_zero(reduced, start, budget);
	if (auto* f = std::get_if<Failure>(&r))
		throw ReductionError("reduced system could not be re-certified: " + to_string(f->reason) +
		                     (f->detail.empty() ? "" : " (" + f->detail + ")"));

	ReducedSystem out{reduced, s, rel, *drop, std::get<Certificate>(r), std::nullopt};
	Box back = out.to_original(out.certificate.zero(), out.certificate.precision);
	if (!back.exp_coords_inside())
		throw ReductionError("transformed zero leaves the exponential domain");
	if (!evaluate(sys.equations()[*drop], back, out.certificate.precision).contains_zero())
		throw ReductionError("dropped equation does not vanish at the reduced zero; relation rejected");
	out.plain = plain_form(*reduced, out.certificate.zero());
	return out;
}

KhovanskiiSystem denest(const KhovanskiiSystem& sys)
{
	const Shape& s = sys.shape();
	if (s.ell == 0)
		throw ShapeError("denest needs an exponentiated coordinate");
	Shape t(s.ell, s.n + 1);
	std::vector<ExpPolynomial> xs, ys;
	for (std::size_t i = 0; i < s.n; i++)
		xs.push_back(ExpPolynomial::x(t, i));
	for (std::size_t i = 0; i + 1 < s.ell; i++)
		ys.push_back(ExpPolynomial::texp(t, i));
	ys.push_back(ExpPolynomial::x(t, s.n));
	std::vector<ExpPolynomial> eqs;
	for (const auto& e : sys.equations())
		eqs.push_back(e.compose(t, xs, ys));
	eqs.push_back(ExpPolynomial::x(t, s.n) - ExpPolynomial::texp(t, s.ell - 1));
	return KhovanskiiSystem(t, std::move(eqs));
}

AugmentedSystem regularize_augment(const KhovanskiiSystem& sys, std::size_t minor_index, const Certificate* cert)
{
	const Shape& s = sys.shape();
	if (minor_index >= s.n)
		throw std::out_of_range("minor index " + std::to_string(minor_index) + " out of range");
	Precision prec = cert ? std::max<Precision>(cert->precision, 64) : 64;

	std::vector<ExpPolynomial> h = sys.equations();
	bool flipped = false;
	if (cert && evaluate(determinant(sys.jacobian(), s), cert->zero(), prec).negative()) {
		h[0] = -h[0];
		flipped = true;
	}
	KhovanskiiSystem base(s, h);
	ExpPolynomial det = determinant(base.jacobian(), s);
	PolyMatrix sub;
	for (std::size_t i = 0; i + 1 < s.n; i++) {
		std::vector<ExpPolynomial> row;
		for (std::size_t j = 0; j < s.n; j++)
			if (j != minor_index)
				row.push_back(base.jacobian()[i][j]);
		sub.push_back(std::move(row));
	}
	ExpPolynomial minor = determinant(sub, s);

	Shape t(s.ell, s.n + 2);
	std::vector<ExpPolynomial> xs, ys;
	for (std::size_t i = 0; i < s.n; i++)
		xs.push_back(ExpPolynomial::x(t, i));
	for (std::size_t i = 0; i < s.ell; i++)
		ys.push_back(ExpPolynomial::texp(t, i));
	std::vector<ExpPolynomial> eqs;
	for (const auto& e : h)
		eqs.push_back(e.compose(t, xs, ys));
	ExpPolynomial one = ExpPolynomial::constant(t, 1);
	eqs.push_back(ExpPolynomial::x(t, s.n).pow(2) * det.compose(t, xs, ys) - one);
	eqs.push_back(ExpPolynomial::x(t, s.n + 1) * minor.compose(t, xs, ys) - one);
	KhovanskiiSystem aug(t, std::move(eqs));
	if (s.ell > 0)
		aug = denest(aug);

	AugmentedSystem out{aug, flipped, std::nullopt, {}};
	if (!cert)
		return out;
	const Box& z = cert->zero();
	Interval di = evaluate(det, z, prec), mi = evaluate(minor, z, prec);
	if (!di.positive()) {
		out.diagnostic = "determinant enclosure " + di.decimal(6) + " is not positive at the zero";
		return out;
	}
	if (mi.contains_zero()) {
		out.diagnostic = "minor enclosure " + mi.decimal(6) + " contains zero at the zero";
		return out;
	}
	std::vector<Interval> c;
	Box near = inflate_box(z, Dyadic::pow2(-30));
	for (std::size_t i = 0; i < s.n; i++)
		c.push_back(intersect(near[i], cert->box[i]).value_or(z[i]));
	std::vector<Interval> extra = {div(Interval(1), sqrt(di, prec), prec), div(Interval(1), mi, prec)};
	if (s.ell > 0)
		extra.push_back(texp_enclosure(z[s.ell - 1], prec));
	for (const auto& e : extra)
		c.push_back(inflate(e, e.width() + Dyadic::pow2(-30) * (Dyadic(1) + e.mag())));
	out.start = Box(aug.shape(), std::move(c));
	return out;
}

KhovanskiiSystem witness_slice(const std::vector<ExpPolynomial>& eqs, const std::vector<Rational>& center)
{
	if (eqs.empty())
		throw ShapeError("witness slice needs at least one equation");
	Shape s = eqs[0].shape();
	for (const auto& e : eqs)
		require_same_shape(e.shape(), s, "witness_slice");
	std::size_t k = eqs.size();
	if (k >= s.n)
		throw ShapeError("witness slice needs fewer equations than variables (" + std::to_string(k) +
		                 " >= " + std::to_string(s.n) + ")");
	if (center.size() != s.n)
		throw ShapeError("witness slice center has " + std::to_string(center.size()) + " coordinates, expected " +
		                 std::to_string(s.n));

	PolyMatrix rows = formal_jacobian(eqs);
	std::vector<ExpPolynomial> offset;
	for (std::size_t j = 0; j < s.n; j++)
		offset.push_back(ExpPolynomial::x(s, j) - ExpPolynomial::constant(s, center[j]));
	rows.push_back(offset);

	std::vector<ExpPolynomial> out = eqs;
	for (std::size_t j = k; j < s.n; j++) {
		PolyMatrix m;
		for (const auto& row : rows) {
			std::vector<ExpPolynomial> r(row.begin(), row.begin() + k);
			r.push_back(row[j]);
			m.push_back(std::move(r));
		}
		out.push_back(determinant(m, s));
	}
	return KhovanskiiSystem(s, std::move(out));
}

} // namespace kkit
