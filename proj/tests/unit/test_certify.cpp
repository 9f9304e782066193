// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include "kkit/certify.hpp"
#include "kkit/text.hpp"
#include "oracles.hpp"

using namespace kkit;

namespace {

std::shared_ptr<const KhovanskiiSystem> sys(const char* text) { return std::make_shared<KhovanskiiSystem>(parse_system(text)); }

Box box1(const Shape& s, const char* lo, const char* hi)
{
	return {s, {Interval::from_rationals(Rational::parse(lo), Rational::parse(hi), 64)}};
}

Certificate certify_ok(std::shared_ptr<const KhovanskiiSystem> s, const Box& b)
{
	auto r = certify_regular_zero(s, b);
	REQUIRE(std::holds_alternative<Certificate>(r));
	return std::get<Certificate>(r);
}

} // namespace

TEST_SUITE("certify")
{
	TEST_CASE("interval_eval_system")
	{
		auto a = sys("shape: 1 1\nE(x1) - 1\n");
		CHECK(interval_eval_system(*a, box1(a->shape(), "0", "0"), 64)[0] == Interval(0));
		auto b = sys("shape: 1 1\nE(x1) - 2\n");
		Interval v = interval_eval_system(*b, box1(b->shape(), "0.6", "0.8"), 64)[0];
		CHECK(v.contains_zero());
		Rational eps = Rational::parse("1e-12");
		CHECK(v.lo().to_rational() >= oracle::value(oracle::exp_0_6) - 2 - eps);
		CHECK(v.hi().to_rational() <= oracle::value(oracle::exp_0_8) - 2 + eps);
		auto c = sys("shape: 0 1\nx1^2 - 2\n");
		CHECK(interval_eval_system(*c, box1(c->shape(), "2", "3"), 64)[0] == Interval(Dyadic(2), Dyadic(7)));
		CHECK_THROWS_AS(interval_eval_system(*c, box1(Shape(1, 1), "0", "0"), 64), ShapeError);
	}

	TEST_CASE("interval_jacobian")
	{
		auto a = sys("shape: 1 1\nE(x1) - 2\n");
		auto j = interval_jacobian(*a, box1(a->shape(), "0.69", "0.70"), 64);
		CHECK(j.det.lo().to_rational() >= Rational::parse("1.99"));
		CHECK(j.det.hi().to_rational() <= Rational::parse("2.02"));
		CHECK(oracle::value(oracle::exp_0_69) - Rational::parse("1e-15") <= j.det.lo().to_rational());

		auto b = sys("shape: 0 2\nx1^2 + x2^2 - 1\nx2\n");
		Box bb(Shape(0, 2), {Interval::from_rationals(Rational::parse("0.9"), Rational::parse("1.1"), 64),
		                     Interval::from_rationals(Rational::parse("-0.1"), Rational::parse("0.1"), 64)});
		auto jb = interval_jacobian(*b, bb, 64);
		CHECK(jb.det.lo().to_rational() >= Rational::parse("1.8") - Rational::parse("1e-15"));
		CHECK(jb.det.hi().to_rational() <= Rational::parse("2.2") + Rational::parse("1e-15"));
		CHECK_FALSE(jb.det.contains_zero());

		auto c = sys("shape: 0 2\nx1^2\nx1*x2\n");
		Box cb(Shape(0, 2), {Interval(Dyadic(-1), Dyadic(1)), Interval(Dyadic(-1), Dyadic(1))});
		CHECK(interval_jacobian(*c, cb, 64).det.contains_zero());
	}

	TEST_CASE("interval determinant")
	{
		IntervalMatrix m = {{Interval(2), Interval(1)}, {Interval(1), Interval(3)}};
		CHECK(interval_determinant(m, 64).contains(Dyadic(5)));
		CHECK(interval_determinant({}, 64) == Interval(1));
		// 5x5 identity-like with a small perturbation
		IntervalMatrix big(5, std::vector<Interval>(5, Interval(Dyadic::parse("-1*2^-6"), Dyadic::parse("1*2^-6"))));
		for (int i = 0; i < 5; i++)
			big[i][i] = Interval(1);
		Interval d = interval_determinant(big, 64);
		CHECK(d.contains(Dyadic(1)));
		CHECK(d.positive());
	}

	TEST_CASE("krawczyk examples")
	{
		auto a = sys("shape: 0 1\nx1^2 - 2\n");
		auto r = krawczyk(*a, box1(a->shape(), "1.3", "1.5"), 64);
		CHECK(r.verdict == Verdict::contracted);
		CHECK(r.strict);
		REQUIRE(r.box);
		CHECK(oracle::contains((*r.box)[0], oracle::sqrt2));

		auto b = sys("shape: 0 1\nx1\n");
		CHECK(krawczyk(*b, box1(b->shape(), "1", "2"), 64).verdict == Verdict::excluded);

		auto c = sys("shape: 1 1\nE(x1) - 2\n");
		auto rc = krawczyk(*c, box1(c->shape(), "0.6", "0.8"), 64);
		CHECK(rc.verdict == Verdict::contracted);
		REQUIRE(rc.box);
		CHECK(oracle::contains((*rc.box)[0], oracle::ln2));

		// singular midpoint Jacobian
		auto d = sys("shape: 0 1\nx1^2\n");
		auto rd = krawczyk(*d, box1(d->shape(), "-1", "1"), 64);
		CHECK(rd.verdict == Verdict::inconclusive);
		CHECK_FALSE(rd.diagnostic.empty());
	}

	TEST_CASE("certified constants")
	{
		auto a = sys("shape: 1 1\nE(x1) - 2\n");
		Certificate ca = certify_ok(a, box1(a->shape(), "0.6", "0.8"));
		CHECK(oracle::within(ca.zero()[0], oracle::ln2, "1e-12"));
		CHECK(ca.box.exp_coords_inside());
		CHECK(ca.box.interior_contains(ca.krawczyk_image));
		CHECK_FALSE(ca.jacobian.det.contains_zero());

		auto b = sys("shape: 1 1\nE(x1) - 1\n");
		Certificate cb = certify_ok(b, box1(b->shape(), "-0.1", "0.1"));
		CHECK(cb.zero()[0].contains(Dyadic(0)));

		auto c = sys("shape: 1 1\nx1*E(x1) - 1\n");
		Certificate cc = certify_ok(c, box1(c->shape(), "0.5", "0.6"));
		CHECK(oracle::within(cc.zero()[0], oracle::omega, "1e-12"));

		auto d = sys("shape: 1 1\nE(x1) - 3\n");
		auto rd = certify_regular_zero(d, box1(d->shape(), "-0.99", "0.99"));
		CHECK(std::holds_alternative<Failure>(rd));
	}

	TEST_CASE("failures")
	{
		// zero on the boundary of the exponential domain
		auto a = sys("shape: 1 1\nx1 - 1\n");
		auto ra = certify_regular_zero(a, box1(a->shape(), "0.5", "1"));
		REQUIRE(std::holds_alternative<Failure>(ra));
		CHECK(std::get<Failure>(ra).reason == FailureReason::domain_violation);

		auto b = sys("shape: 0 1\nx1^2\n");
		auto rb = certify_regular_zero(b, box1(b->shape(), "-1", "1"));
		REQUIRE(std::holds_alternative<Failure>(rb));
		CHECK(std::get<Failure>(rb).reason != FailureReason::excluded);

		auto c = sys("shape: 0 1\nx1 - 5\n");
		auto rc = certify_regular_zero(c, box1(c->shape(), "-1", "1"));
		REQUIRE(std::holds_alternative<Failure>(rc));
		CHECK(std::get<Failure>(rc).reason == FailureReason::excluded);
		CHECK(to_string(FailureReason::budget_exhausted) == "budget-exhausted");
	}

	TEST_CASE("check_certificate and mutations")
	{
		auto a = sys("shape: 1 1\nE(x1) - 2\n");
		Certificate cert = certify_ok(a, box1(a->shape(), "0.6", "0.8"));
		CHECK(check_certificate(cert));

		Certificate wide = cert;
		Dyadic m = wide.box[0].midpoint(), r = wide.box[0].width().ldexp(-1);
		wide.box[0] = Interval(m - r * Dyadic(10), m + r * Dyadic(10));
		CHECK_FALSE(check_certificate(wide));

		Certificate flipped = cert;
		flipped.jacobian.entries[0][0] = -flipped.jacobian.entries[0][0];
		flipped.jacobian.det = -flipped.jacobian.det;
		CHECK_FALSE(check_certificate(flipped));

		Certificate moved = cert;
		moved.krawczyk_image[0] = Interval(Dyadic(0));
		CHECK_FALSE(check_certificate(moved));

		auto b = sys("shape: 0 2\nx1^2 + x2^2 - 1\nx1 - x2\n");
		Box bb(Shape(0, 2), {Interval::from_rationals(Rational::parse("0.6"), Rational::parse("0.8"), 64),
		                     Interval::from_rationals(Rational::parse("0.6"), Rational::parse("0.8"), 64)});
		Certificate c2 = certify_ok(b, bb);
		CHECK(check_certificate(c2));
		CHECK(oracle::within(c2.zero()[0], oracle::inv_sqrt2, "1e-12"));
		for (std::size_t i = 0; i < 2; i++)
			for (std::size_t j = 0; j < 2; j++) {
				Certificate f = c2;
				f.jacobian.entries[i][j] = -f.jacobian.entries[i][j];
				CHECK_FALSE(check_certificate(f));
			}
	}

	TEST_CASE("point images are pinned")
	{
		// exact inverse: K(X) = {4} for every box
		auto a = sys("shape: 0 1\n4 - x1\n");
		Certificate c = certify_ok(a, box1(a->shape(), "0", "8"));
		CHECK(c.zero()[0] == Interval(4));
		CHECK(c.box[0].interior_contains(Interval(4)));
		CHECK(c.box[0].width() <= ulp(Dyadic(4), c.precision).ldexp(3));
		CHECK(check_certificate(c));

		Certificate wide = c;
		wide.box[0] = Interval(Dyadic(0), Dyadic(8));
		CHECK_FALSE(check_certificate(wide));
	}

	TEST_CASE("precision monotonicity")
	{
		auto a = sys("shape: 1 1\nx1*E(x1) - 1\n");
		Box b = box1(a->shape(), "0.5", "0.6");
		Dyadic prev;
		bool first = true;
		for (Precision p : {64, 128, 256}) {
			CertifyBudget budget;
			budget.start_precision = p;
			auto r = certify_regular_zero(a, b, budget);
			REQUIRE(std::holds_alternative<Certificate>(r));
			Dyadic w = std::get<Certificate>(r).krawczyk_image.max_width();
			if (!first)
				CHECK(w <= prev);
			prev = w;
			first = false;
		}
	}

	TEST_CASE("uniqueness under subdivision")
	{
		auto a = sys("shape: 0 2\nx1^2 + x2^2 - 1\nx1 - x2\n");
		Box b(Shape(0, 2), {Interval::from_rationals(Rational::parse("0.6"), Rational::parse("0.8"), 64),
		                    Interval::from_rationals(Rational::parse("0.6"), Rational::parse("0.8"), 64)});
		auto [l, r] = b.split(0, Dyadic::parse("0.75"));
		int found = 0;
		for (const Box& half : {l, r}) {
			auto [ll, rr] = half.split(1, Dyadic::parse("0.6875"));
			for (const Box& q : {ll, rr}) {
				auto res = certify_regular_zero(a, q);
				if (auto* c = std::get_if<Certificate>(&res)) {
					CHECK(oracle::contains(c->zero()[0], oracle::inv_sqrt2));
					found++;
				}
			}
		}
		CHECK(found == 1);
	}
}
