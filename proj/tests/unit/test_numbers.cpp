// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <random>

#include "kkit/box.hpp"
#include "kkit/interval.hpp"

using namespace kkit;

namespace {

Interval iv(const char* lo, const char* hi) { return {Dyadic::parse(lo), Dyadic::parse(hi)}; }

} // namespace

TEST_SUITE("numbers")
{
	TEST_CASE("rational parsing and normalization")
	{
		CHECK(Rational::parse("6/8").str() == "3/4");
		CHECK(Rational::parse("-0.125").str() == "-1/8");
		CHECK_THROWS(Rational::parse("4/-2"));
		CHECK(Rational::parse("-2.5e-3") == Rational::parse("-1/400"));
		CHECK(Rational::parse("3E2") == Rational(300));
		CHECK(Rational::parse("3").is_integer());
		CHECK_THROWS(Rational::parse("1/0"));
		CHECK_THROWS(Rational::parse("abc"));
		CHECK_THROWS_AS(Rational(1) / Rational(0), std::domain_error);
		CHECK(Rational::parse("2/3").pow(3) == Rational::parse("8/27"));
	}

	TEST_CASE("dyadic normal form")
	{
		Dyadic a(mpz_class(12), 0);
		CHECK(a.mantissa() == 3);
		CHECK(a.exponent() == 2);
		CHECK(a.str() == "3*2^2");
		CHECK(Dyadic::parse("3*2^2") == Dyadic(12));
		CHECK(Dyadic::parse("0.375") == Dyadic(mpz_class(3), -3));
		CHECK_THROWS(Dyadic::parse("0.1"));
		CHECK(Dyadic(mpz_class(0), 17).exponent() == 0);
		CHECK(Dyadic::from_double(0.75).str() == "3*2^-2");
	}

	TEST_CASE("directed rounding brackets the exact value")
	{
		Rational third = Rational::parse("1/3");
		for (Precision p : {2, 10, 53, 200}) {
			Dyadic lo = Dyadic::from_rational(third, p, Round::down);
			Dyadic hi = Dyadic::from_rational(third, p, Round::up);
			CHECK(lo.to_rational() < third);
			CHECK(third < hi.to_rational());
			CHECK(hi - lo == ulp(lo, p));
			CHECK(lo.bits() <= static_cast<std::size_t>(p));
		}
		Dyadic exact(mpz_class(5), -4);
		CHECK(round(exact, 10, Round::down) == exact);
		CHECK(round(exact, 10, Round::up) == exact);
	}

	TEST_CASE("interval arithmetic")
	{
		CHECK(add(iv("1", "2"), iv("3", "4"), 64) == iv("4", "6"));
		CHECK(mul(iv("-1", "2"), iv("3", "4"), 64) == iv("-4", "8"));
		CHECK(pow(iv("-2", "3"), 2, 64) == iv("0", "9"));
		CHECK(pow(iv("-3", "-2"), 3, 64) == iv("-27", "-8"));
		CHECK(pow(iv("-2", "3"), 0, 64) == Interval(1));
		CHECK(hull(iv("0", "1"), iv("3", "4")) == iv("0", "4"));
		CHECK(iv("1", "3").midpoint() == Dyadic(2));
		CHECK(iv("1", "3").width() == Dyadic(2));
		CHECK(inflate(iv("1", "3"), Dyadic(1)) == iv("0", "4"));
		CHECK_FALSE(intersect(iv("0", "1"), iv("2", "3")).has_value());
		CHECK_THROWS_AS(Interval(Dyadic(2), Dyadic(1)), std::invalid_argument);
		CHECK_THROWS_AS(div(Interval(1), iv("-1", "1"), 64), std::domain_error);
	}

	TEST_CASE("rounded operations contain random point images")
	{
		std::mt19937_64 rng(7);
		std::uniform_int_distribution<long> num(-4000, 4000);
		auto pick = [&] { return Dyadic(mpz_class(num(rng)), -9); };
		for (int t = 0; t < 500; t++) {
			Dyadic a = pick(), b = pick(), c = pick(), d = pick();
			Interval x(min(a, b), max(a, b)), y(min(c, d), max(c, d));
			for (Precision p : {3, 8, 24}) {
				CHECK(add(x, y, p).contains(a + c));
				CHECK(sub(x, y, p).contains(b - d));
				CHECK(mul(x, y, p).contains(a * d));
				CHECK(pow(x, 3, p).contains(b * b * b));
				CHECK(pow(x, 4, p).contains(a * a * a * a));
			}
		}
	}

	TEST_CASE("sqrt and division")
	{
		Interval r = sqrt(Interval(2), 128);
		CHECK(r.lo() * r.lo() < Dyadic(2));
		CHECK(r.hi() * r.hi() > Dyadic(2));
		Interval q = div(Interval(1), Interval(3), 64);
		CHECK(q.lo().to_rational() < Rational::parse("1/3"));
		CHECK(q.hi().to_rational() > Rational::parse("1/3"));
	}

	TEST_CASE("shapes and boxes")
	{
		CHECK_THROWS_AS(Shape(0, 0), ShapeError);
		CHECK_THROWS_AS(Shape(3, 2), ShapeError);
		Box b(Shape(1, 2), {iv("-1", "1"), iv("2", "3")});
		CHECK_FALSE(b.exp_coords_inside());
		auto clipped = clip_to_domain(b, 10);
		REQUIRE(clipped);
		CHECK((*clipped)[0].hi() == Dyadic(1) - Dyadic::pow2(-10));
		CHECK((*clipped)[1] == iv("2", "3"));
		CHECK(clipped->exp_coords_inside());
		CHECK_FALSE(clip_to_domain(Box(Shape(1, 1), {iv("1", "2")}), 10));
		auto [l, r] = b.bisect(1);
		CHECK(l[1] == iv("2", "5*2^-1"));
		CHECK(r[1] == iv("5*2^-1", "3"));
		CHECK(b.widest() == 0);
	}
}
