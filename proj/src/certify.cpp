/* SPDX-License-Identifier: Apache-2.0
 *
 * Copyright 2026 The kkit Authors
 */

#include "kkit/certify.hpp"

#include <algorithm>
#include <stdexcept>

namespace kkit {

std::string to_string(FailureReason r)
{
	switch (r) {
	case FailureReason::no_contraction:
		return "no-contraction";
	case FailureReason::jacobian_singular:
		return "jacobian-singular";
	case FailureReason::domain_violation:
		return "domain-violation";
	case FailureReason::budget_exhausted:
		return "budget-exhausted";
	case FailureReason::excluded:
		return "excluded";
	}
	return "unknown";
}

namespace {

Interval cofactor_det(const IntervalMatrix& m, Precision prec)
{
	const std::size_t n = m.size();
	if (n == 0)
		return Interval(1);
	if (n == 1)
		return m[0][0];
	if (n == 2)
		return sub(mul(m[0][0], m[1][1], prec), mul(m[0][1], m[1][0], prec), prec);
	Interval det(0);
	for (std::size_t j = 0; j < n; j++) {
		IntervalMatrix minor;
		for (std::size_t r = 1; r < n; r++) {
			std::vector<Interval> row;
			for (std::size_t c = 0; c < n; c++)
				if (c != j)
					row.push_back(m[r][c]);
			minor.push_back(std::move(row));
		}
		Interval t = mul(m[0][j], cofactor_det(minor, prec), prec);
		det = j % 2 == 0 ? add(det, t, prec) : sub(det, t, prec);
	}
	return det;
}

std::optional<Interval> elimination_det(IntervalMatrix a, Precision prec)
{
	const std::size_t n = a.size();
	bool negate = false;
	Interval det(1);
	for (std::size_t k = 0; k < n; k++) {
		std::size_t piv = k;
		for (std::size_t r = k + 1; r < n; r++)
			if (a[piv][k].mig() < a[r][k].mig())
				piv = r;
		if (a[piv][k].contains_zero())
			return std::nullopt;
		if (piv != k) {
			std::swap(a[piv], a[k]);
			negate = !negate;
		}
		det = mul(det, a[k][k], prec);
		for (std::size_t i = k + 1; i < n; i++) {
			Interval f = div(a[i][k], a[k][k], prec);
			for (std::size_t j = k + 1; j < n; j++)
				a[i][j] = sub(a[i][j], mul(f, a[k][j], prec), prec);
		}
	}
	return negate ? -det : det;
}

Interval hadamard_bound(const IntervalMatrix& m, Precision prec)
{
	Interval bound(1);
	for (const auto& row : m) {
		Interval s(0);
		for (const auto& x : row)
			s = add(s, Interval(x.mag()), prec);
		bound = mul(bound, s, prec);
	}
	return {-bound.hi(), bound.hi()};
}

bool margin_inside(const Interval& inner, const Interval& outer, Precision prec)
{
	return inner.lo() - outer.lo() >= ulp(outer.lo(), prec) && outer.hi() - inner.hi() >= ulp(outer.hi(), prec);
}

bool strictly_inside_with_margin(const Box& inner, const Box& outer, Precision prec)
{
	for (std::size_t i = 0; i < outer.size(); i++)
		if (!margin_inside(inner[i], outer[i], prec))
			return false;
	return true;
}

// When K(X) is a single point it does not depend on X at all (affine system,
// exact inverse), so any box around it would certify. Such certificates are
// pinned to the image widened by two ulps on each side.
Box pinned_box(const Box& k, Precision prec)
{
	std::vector<Interval> c;
	for (const auto& x : k.coords())
		c.emplace_back(x.lo() - ulp(x.lo(), prec).ldexp(1), x.hi() + ulp(x.hi(), prec).ldexp(1));
	return {k.shape(), c};
}

DyadicMatrix midpoint_matrix(const IntervalMatrix& m)
{
	DyadicMatrix out;
	for (const auto& row : m) {
		std::vector<Dyadic> r;
		for (const auto& x : row)
			r.push_back(x.midpoint());
		out.push_back(std::move(r));
	}
	return out;
}

Box point_box(const Shape& shape, const std::vector<Dyadic>& m)
{
	std::vector<Interval> c;
	for (const auto& x : m)
		c.emplace_back(x);
	return {shape, std::move(c)};
}

} // namespace

Interval interval_determinant(const IntervalMatrix& m, Precision prec)
{
	const std::size_t n = m.size();
	for (const auto& row : m)
		if (row.size() != n)
			throw std::invalid_argument("determinant of a non-square interval matrix");
	auto ge = elimination_det(m, prec);
	if (n <= 4) {
		Interval cf = cofactor_det(m, prec);
		if (ge) {
			if (auto both = intersect(*ge, cf))
				return *both;
			// both are enclosures of the same set, so they must overlap
			throw std::logic_error("determinant enclosures disagree");
		}
		return cf;
	}
	return ge ? *ge : hadamard_bound(m, prec);
}

std::vector<Interval> interval_eval_system(const SquareSystem& sys, const Box& box, Precision prec)
{
	require_same_shape(sys.shape(), box.shape(), "interval_eval_system");
	return sys.eval(box, prec);
}

JacobianEnclosure interval_jacobian(const SquareSystem& sys, const Box& box, Precision prec)
{
	require_same_shape(sys.shape(), box.shape(), "interval_jacobian");
	JacobianEnclosure j;
	j.entries = sys.jacobian(box, prec);
	j.det = interval_determinant(j.entries, prec);
	return j;
}

std::vector<Interval> centered_eval(const SquareSystem& sys, const Box& box, Precision prec)
{
	std::vector<Interval> natural = sys.eval(box, prec);
	if (box.is_point() || !box.exp_coords_inside())
		return natural;
	const std::size_t n = box.size();
	std::vector<Dyadic> m = box.midpoint();
	std::vector<Interval> fm = sys.eval(point_box(box.shape(), m), prec);
	IntervalMatrix jx = sys.jacobian(box, prec);
	std::vector<Interval> out;
	for (std::size_t i = 0; i < n; i++) {
		Interval v = fm[i];
		for (std::size_t j = 0; j < n; j++)
			v = add(v, mul(jx[i][j], sub(box[j], Interval(m[j]), prec), prec), prec);
		auto both = intersect(v, natural[i]);
		out.push_back(both ? *both : natural[i]);
	}
	return out;
}

std::optional<DyadicMatrix> approximate_inverse(const DyadicMatrix& a, Precision prec)
{
	const std::size_t n = a.size();
	DyadicMatrix m = a, inv(n, std::vector<Dyadic>(n));
	for (std::size_t i = 0; i < n; i++)
		inv[i][i] = Dyadic(1);
	Dyadic scale;
	for (const auto& row : a)
		for (const auto& x : row)
			scale = max(scale, x.abs());
	if (scale.is_zero())
		return std::nullopt;
	const Dyadic tiny = scale * Dyadic::pow2(8 - prec);
	auto rn = [prec](const Dyadic& x) { return round(x, prec, Round::nearest); };
	for (std::size_t k = 0; k < n; k++) {
		std::size_t piv = k;
		for (std::size_t r = k + 1; r < n; r++)
			if (m[piv][k].abs() < m[r][k].abs())
				piv = r;
		if (m[piv][k].abs() <= tiny)
			return std::nullopt;
		std::swap(m[piv], m[k]);
		std::swap(inv[piv], inv[k]);
		Rational p = m[k][k].to_rational();
		for (std::size_t j = 0; j < n; j++) {
			m[k][j] = Dyadic::from_rational(m[k][j].to_rational() / p, prec, Round::nearest);
			inv[k][j] = Dyadic::from_rational(inv[k][j].to_rational() / p, prec, Round::nearest);
		}
		for (std::size_t i = 0; i < n; i++) {
			if (i == k || m[i][k].is_zero())
				continue;
			Dyadic f = m[i][k];
			for (std::size_t j = 0; j < n; j++) {
				m[i][j] = rn(m[i][j] - f * m[k][j]);
				inv[i][j] = rn(inv[i][j] - f * inv[k][j]);
			}
		}
	}
	return inv;
}

Box krawczyk_image(const SquareSystem& sys, const Box& box, const std::vector<Dyadic>& m, const DyadicMatrix& y,
                   Precision prec)
{
	const std::size_t n = box.size();
	if (m.size() != n || y.size() != n)
		throw ShapeError("krawczyk: midpoint or preconditioner dimension mismatch");
	for (const auto& row : y)
		if (row.size() != n)
			throw ShapeError("krawczyk: preconditioner is not square");
	std::vector<Interval> fm = sys.eval(point_box(box.shape(), m), prec);
	IntervalMatrix jx = sys.jacobian(box, prec);
	std::vector<Interval> dx;
	for (std::size_t j = 0; j < n; j++)
		dx.push_back(sub(box[j], Interval(m[j]), prec));

	std::vector<Interval> k;
	for (std::size_t i = 0; i < n; i++) {
		Interval acc(m[i]);
		for (std::size_t j = 0; j < n; j++)
			acc = sub(acc, mul(Interval(y[i][j]), fm[j], prec), prec);
		for (std::size_t j = 0; j < n; j++) {
			Interval mij(i == j ? 1 : 0);
			for (std::size_t l = 0; l < n; l++)
				mij = sub(mij, mul(Interval(y[i][l]), jx[l][j], prec), prec);
			acc = add(acc, mul(mij, dx[j], prec), prec);
		}
		k.push_back(acc);
	}
	return {box.shape(), std::move(k)};
}

KrawczykResult krawczyk(const SquareSystem& sys, const Box& box, Precision prec)
{
	require_same_shape(sys.shape(), box.shape(), "krawczyk");
	KrawczykResult res;
	for (const auto& v : sys.eval(box, prec))
		if (!v.contains_zero()) {
			res.verdict = Verdict::excluded;
			res.diagnostic = "a component excludes zero over the box";
			return res;
		}
	if (!box.exp_coords_inside()) {
		res.diagnostic = "exponentiated coordinate reaches +-1";
		return res;
	}
	res.midpoint = box.midpoint();
	IntervalMatrix jm = sys.jacobian(point_box(box.shape(), res.midpoint), prec);
	auto y = approximate_inverse(midpoint_matrix(jm), prec);
	if (!y) {
		res.diagnostic = "midpoint Jacobian numerically singular";
		return res;
	}
	res.preconditioner = std::move(*y);
	Box k = krawczyk_image(sys, box, res.midpoint, res.preconditioner, prec);
	res.image = k;
	auto cut = intersect(k, box);
	if (!cut) {
		res.verdict = Verdict::excluded;
		res.diagnostic = "K(X) does not meet X";
		return res;
	}
	res.strict = strictly_inside_with_margin(k, box, prec);
	if (res.strict || !(*cut == box)) {
		res.verdict = Verdict::contracted;
		res.box = *cut;
	} else {
		res.diagnostic = "K(X) does not shrink X";
	}
	return res;
}

namespace {

bool touches_clip(const Box& b, Precision prec)
{
	Dyadic eps = Dyadic::pow2(-prec);
	for (std::size_t i = 0; i < b.shape().ell; i++)
		if (b[i].lo() <= Dyadic(-1) + eps || b[i].hi() >= Dyadic(1) - eps)
			return true;
	return false;
}

// Could the system vanish on the parts of box removed by clipping?
bool boundary_may_vanish(const SquareSystem& sys, const Box& box, Precision clip_prec)
{
	const Dyadic hi = Dyadic(1) - Dyadic::pow2(-clip_prec), lo = -hi;
	for (std::size_t i = 0; i < box.shape().ell; i++) {
		std::vector<Interval> slivers;
		if (box[i].hi() > hi)
			slivers.emplace_back(max(box[i].lo(), hi), box[i].hi());
		if (box[i].lo() < lo)
			slivers.emplace_back(box[i].lo(), min(box[i].hi(), lo));
		for (const auto& s : slivers) {
			Box b = box;
			b[i] = s;
			auto v = sys.eval(b, 64);
			if (std::all_of(v.begin(), v.end(), [](const Interval& c) { return c.contains_zero(); }))
				return true;
		}
	}
	return false;
}

Failure failure(FailureReason r, std::string detail) { return {r, std::move(detail)}; }

} // namespace

CertifyResult certify_regular_zero(std::shared_ptr<const SquareSystem> sys, const Box& box,
                                   const CertifyBudget& budget)
{
	require_same_shape(sys->shape(), box.shape(), "certify_regular_zero");
	Precision prec = budget.start_precision;
	const Precision clip_prec = prec;
	auto clipped = clip_to_domain(box, prec);
	if (!clipped)
		return failure(FailureReason::domain_violation, "exponentiated coordinate outside (-1, 1)");
	Box x = *clipped;
	bool was_clipped = !(x == box);

	std::optional<Certificate> best;
	FailureReason last = FailureReason::no_contraction;
	std::string last_detail = "no contraction";
	bool exhausted = true;
	for (int it = 0; it < budget.max_iterations; it++) {
		KrawczykResult r = krawczyk(*sys, x, prec);
		if (r.verdict == Verdict::excluded) {
			if (best) {
				exhausted = false;
				break;
			}
			if (was_clipped && boundary_may_vanish(*sys, box, clip_prec))
				return failure(FailureReason::domain_violation, "zero candidate at the boundary of (-1, 1)");
			return failure(FailureReason::excluded, r.diagnostic);
		}
		if (r.verdict == Verdict::inconclusive) {
			if (best) {
				exhausted = false;
				break;
			}
			last_detail = r.diagnostic;
			last = r.diagnostic.find("singular") != std::string::npos ? FailureReason::jacobian_singular
			                                                         : FailureReason::no_contraction;
			if (prec * 2 > budget.max_precision) {
				exhausted = false;
				break;
			}
			prec *= 2;
			continue;
		}
		if (r.strict) {
			Dyadic wx = x.max_width(), wk = r.image->max_width();
			if (wk.is_zero()) {
				// the image cannot shrink further; certify its pinned box instead
				Box pin = pinned_box(*r.image, prec);
				KrawczykResult p = krawczyk(*sys, pin, prec);
				if (pin.exp_coords_inside() && p.strict && p.image->max_width().is_zero()) {
					x = pin;
					r = std::move(p);
				} else {
					last_detail = "pinned box of a point image does not contract";
					if (best) {
						exhausted = false;
						break;
					}
					x = *r.image;
					continue;
				}
			}
			JacobianEnclosure jac = interval_jacobian(*sys, x, prec);
			if (!jac.det.contains_zero()) {
				best = Certificate{sys, x, r.midpoint, r.preconditioner, *r.image, std::move(jac), prec};
			} else {
				last = FailureReason::jacobian_singular;
				last_detail = "determinant enclosure contains zero";
			}
			// stop once the image no longer halves the box
			if (best && (wk.is_zero() || wk.ldexp(1) > wx)) {
				exhausted = false;
				break;
			}
			x = *r.image;
			continue;
		}
		if (best) {
			exhausted = false;
			break;
		}
		x = *r.box;
	}
	if (best)
		return *best;
	if (was_clipped && touches_clip(x, clip_prec))
		return failure(FailureReason::domain_violation, "zero candidate at the boundary of (-1, 1): " + last_detail);
	if (exhausted)
		return failure(FailureReason::budget_exhausted, "iteration budget exhausted: " + last_detail);
	return failure(last, last_detail);
}

bool check_certificate(const Certificate& cert)
{
	try {
		if (!cert.system)
			return false;
		const SquareSystem& sys = *cert.system;
		const Box& x = cert.box;
		const std::size_t n = sys.size();
		if (!(x.shape() == sys.shape()) || !(cert.krawczyk_image.shape() == sys.shape()))
			return false;
		if (!x.exp_coords_inside())
			return false;
		if (cert.midpoint.size() != n || cert.preconditioner.size() != n)
			return false;
		for (std::size_t i = 0; i < n; i++)
			if (!x[i].contains(cert.midpoint[i]))
				return false;

		Box k = krawczyk_image(sys, x, cert.midpoint, cert.preconditioner, cert.precision);
		if (!strictly_inside_with_margin(k, x, cert.precision))
			return false;
		if (!cert.krawczyk_image.contains(k) || !x.interior_contains(cert.krawczyk_image))
			return false;
		if (k.max_width().is_zero() && !(x == pinned_box(k, cert.precision)))
			return false;

		JacobianEnclosure jac = interval_jacobian(sys, x, cert.precision);
		if (jac.det.contains_zero() || cert.jacobian.det.contains_zero())
			return false;
		if (!cert.jacobian.det.contains(jac.det))
			return false;
		if (cert.jacobian.entries.size() != n)
			return false;
		for (std::size_t i = 0; i < n; i++) {
			if (cert.jacobian.entries[i].size() != n)
				return false;
			for (std::size_t j = 0; j < n; j++)
				if (!cert.jacobian.entries[i][j].contains(jac.entries[i][j]))
					return false;
		}
		return true;
	} catch (const std::exception&) {
		return false;
	}
}

} // namespace kkit
