// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include "kkit/reduce.hpp"
#include "kkit/text.hpp"
#include "oracles.hpp"

using namespace kkit;

namespace {

std::shared_ptr<const KhovanskiiSystem> sys(const char* text)
{
	return std::make_shared<KhovanskiiSystem>(parse_system(text));
}

Box box_of(const Shape& s, std::vector<std::pair<const char*, const char*>> c)
{
	std::vector<Interval> v;
	for (auto [lo, hi] : c)
		v.push_back(Interval::from_rationals(Rational::parse(lo), Rational::parse(hi), 64));
	return {s, v};
}

Certificate certify_ok(std::shared_ptr<const SquareSystem> s, const Box& b)
{
	auto r = certify_regular_zero(s, b);
	if (auto* f = std::get_if<Failure>(&r))
		FAIL("certification failed: " << to_string(f->reason) << " " << f->detail);
	return std::get<Certificate>(r);
}

} // namespace

TEST_SUITE("reduce")
{
	TEST_CASE("generalized polynomials")
	{
		GenExpPolynomial p(2, {{Rational(2), {1, 0}, {Rational(0), Rational(3)}, Rational(1, 2)},
		                       {Rational(-1), {0, 0}, {Rational(0), Rational(0)}, Rational(0)},
		                       {Rational(1), {1, 0}, {Rational(0), Rational(3)}, Rational(1, 2)}});
		CHECK(p.monomials().size() == 2);
		CHECK(p.str() == "3 * x1 * Exp(3 * x2 + 1/2) - 1");
		CHECK(partial(p, 1).str() == "9 * x1 * Exp(3 * x2 + 1/2)");
		CHECK(partial(p, 0).str() == "3 * Exp(3 * x2 + 1/2)");

		Box pt(Shape(0, 2), {Interval(1), Interval(Dyadic(-1, -1))});
		// 3 * exp(-1) - 1
		Interval v = evaluate(p, pt, 128);
		Rational want = Rational(3) * Rational::parse("0.367879441171442321595523770161460867445811131031767834507837") - 1;
		CHECK(v.lo().to_rational() <= want + Rational::parse("1e-50"));
		CHECK(v.hi().to_rational() >= want - Rational::parse("1e-50"));
		CHECK(v.width() < Dyadic::pow2(-100));
	}

	TEST_CASE("eliminate_dependence worked example")
	{
		auto s = sys("shape: 2 2\n2*x2 - x1\nE(x1) - 2\n");
		Certificate c = certify_ok(s, box_of(s->shape(), {{"0.6", "0.8"}, {"0.3", "0.4"}}));
		ReducedSystem r = eliminate_dependence(*s, c, DependenceRelation::parse("2;1;0"));
		CHECK(r.system->shape() == Shape(1, 1));
		CHECK(r.dropped == 0);
		CHECK(r.system->str() == "1 * Exp(2 * x1) - 2\n");
		CHECK(oracle::within(r.certificate.zero()[0], oracle::half_ln2, "1e-10"));
		CHECK(check_certificate(r.certificate));
		REQUIRE(r.plain.has_value());
		CHECK(r.plain->str() == "shape: 1 1\n1 * E(x1)^2 - 2\n");
		CHECK(c.box.contains(r.to_original(r.certificate.zero(), r.certificate.precision)));
	}

	TEST_CASE("eliminate_dependence with a fixed coordinate")
	{
		auto s = sys("shape: 2 2\nE(x1) * E(x2) - 2\n2*x2 - 1\n");
		Certificate c = certify_ok(s, box_of(s->shape(), {{"0.1", "0.3"}, {"0.4", "0.6"}}));
		ReducedSystem r = eliminate_dependence(*s, c, DependenceRelation::parse("1;0;1/2"));
		CHECK(r.dropped == 1);
		CHECK(r.system->str() == "1 * Exp(1 * x1 + 1/2) - 2\n");
		CHECK(!r.plain.has_value());
		CHECK(oracle::within(r.certificate.zero()[0], oracle::ln2_minus_half, "1e-10"));
		CHECK(c.box.contains(r.to_original(r.certificate.zero(), r.certificate.precision)));

		// reduced equation agrees with the original at x2 = 1/2
		for (const char* x : {"-0.75", "0", "0.25", "0.5"}) {
			Box red(Shape(1, 1), {Interval::from_rational(Rational::parse(x), 200)});
			Box full(s->shape(), {red[0], Interval(Dyadic(1, -1))});
			Interval a = evaluate(r.system->equations()[0], red, 200);
			Interval b = evaluate(s->equations()[0], full, 200);
			CHECK(a.overlaps(b));
			CHECK(a.width() < Dyadic::pow2(-150));
		}
	}

	TEST_CASE("negative exponents are cleared")
	{
		auto s = sys("shape: 2 2\nx1 + x2\nE(x1) - E(x2) - 5/6\n");
		Certificate c = certify_ok(s, box_of(s->shape(), {{"0.3", "0.5"}, {"-0.5", "-0.3"}}));
		ReducedSystem r = eliminate_dependence(*s, c, DependenceRelation::parse("1;-1;0"));
		for (const auto& e : r.system->equations())
			for (const auto& m : e.monomials())
				for (const auto& l : m.lambda)
					CHECK(l.sign() >= 0);
		CHECK(oracle::within(r.certificate.zero()[0], oracle::ln_3_2, "1e-10"));
		REQUIRE(r.plain.has_value());
		CHECK(r.plain->str() == "shape: 1 1\n1 * E(x1)^2 - 5/6 * E(x1) - 1\n");
	}

	TEST_CASE("eliminate_dependence rejects bad relations")
	{
		auto s = sys("shape: 2 2\n2*x2 - x1\nE(x1) - 2\n");
		Certificate c = certify_ok(s, box_of(s->shape(), {{"0.6", "0.8"}, {"0.3", "0.4"}}));
		CHECK_THROWS_AS(eliminate_dependence(*s, c, DependenceRelation::parse("2;1;1/3")), ReductionError);
		CHECK_THROWS_AS(eliminate_dependence(*s, c, DependenceRelation::parse("2;;0")), ReductionError);
		auto one = sys("shape: 1 1\nE(x1) - 2\n");
		Certificate c1 = certify_ok(one, box_of(one->shape(), {{"0.6", "0.8"}}));
		CHECK_THROWS_AS(eliminate_dependence(*one, c1, DependenceRelation::parse("1;;0")), ReductionError);
	}

	TEST_CASE("denest")
	{
		auto s = sys("shape: 1 1\nE(x1)*E(x1) - 4\n");
		KhovanskiiSystem d = denest(*s);
		CHECK(d.shape() == Shape(1, 2));
		CHECK(d.str() == "shape: 1 2\n1 * x2^2 - 4\n1 * x2 - 1 * E(x1)\n");
		CHECK_THROWS_AS(denest(*sys("shape: 0 1\nx1 - 1\n")), ShapeError);
	}

	TEST_CASE("regularize_augment")
	{
		auto s = sys("shape: 1 1\nE(x1) - 2\n");
		Certificate c = certify_ok(s, box_of(s->shape(), {{"0.6", "0.8"}}));
		AugmentedSystem a = regularize_augment(*s, 0, &c);
		CHECK(a.system.shape() == Shape(1, 4));
		CHECK(!a.flipped);
		CHECK(a.system.str() == "shape: 1 4\n1 * x4 - 2\n1 * x2^2 * x4 - 1\n1 * x3 - 1\n1 * x4 - 1 * E(x1)\n");
		REQUIRE(a.start.has_value());
		Certificate ac = certify_ok(std::make_shared<KhovanskiiSystem>(a.system), *a.start);
		CHECK(oracle::within(ac.zero()[1], oracle::inv_sqrt2, "1e-10"));
		CHECK(oracle::within(ac.zero()[0], oracle::ln2, "1e-10"));
		CHECK(c.box[0].contains(ac.zero()[0]));
		CHECK(check_certificate(ac));

		auto neg = sys("shape: 1 1\n2 - E(x1)\n");
		Certificate cn = certify_ok(neg, box_of(neg->shape(), {{"0.6", "0.8"}}));
		AugmentedSystem an = regularize_augment(*neg, 0, &cn);
		CHECK(an.flipped);
		REQUIRE(an.start.has_value());
		certify_ok(std::make_shared<KhovanskiiSystem>(an.system), *an.start);

		auto pure = sys("shape: 0 2\nx1^2 + x2^2 - 1\nx1 - x2\n");
		Certificate cp = certify_ok(pure, box_of(pure->shape(), {{"0.6", "0.8"}, {"0.6", "0.8"}}));
		for (std::size_t m : {0u, 1u}) {
			AugmentedSystem ap = regularize_augment(*pure, m, &cp);
			CHECK(ap.system.shape() == Shape(0, 4));
			REQUIRE(ap.start.has_value());
			Certificate cc = certify_ok(std::make_shared<KhovanskiiSystem>(ap.system), *ap.start);
			CHECK(cp.box.contains(Box(pure->shape(), {cc.zero()[0], cc.zero()[1]})));
		}
		CHECK_THROWS_AS(regularize_augment(*pure, 2), std::out_of_range);
		CHECK(!regularize_augment(*pure, 0).start.has_value());
	}

	TEST_CASE("witness_slice")
	{
		Shape s2(0, 2);
		ExpPolynomial circle = parse_polynomial("x1^2 + x2^2 - 1", s2);
		KhovanskiiSystem w = witness_slice({circle}, {Rational(2), Rational(0)});
		CHECK(w.equations()[1].str() == "4 * x2");
		auto ws = std::make_shared<KhovanskiiSystem>(w);
		Certificate near = certify_ok(ws, box_of(s2, {{"0.75", "1.25"}, {"-0.25", "0.25"}}));
		CHECK(near.zero()[0].contains(Dyadic(1)));
		Certificate far = certify_ok(ws, box_of(s2, {{"-1.25", "-0.75"}, {"-0.25", "0.25"}}));
		CHECK(far.zero()[0].contains(Dyadic(-1)));

		Shape s12(1, 2);
		KhovanskiiSystem t = witness_slice({parse_polynomial("E(x1) - x2", s12)}, {Rational(0), Rational(0)});
		Certificate ct = certify_ok(std::make_shared<KhovanskiiSystem>(t), box_of(s12, {{"-0.5", "-0.35"}, {"0.6", "0.75"}}));
		CHECK(oracle::within(ct.zero()[0], oracle::slice_root, "1e-10"));

		CHECK_THROWS_AS(witness_slice({circle, circle}, {Rational(0), Rational(0)}), ShapeError);
		CHECK_THROWS_AS(witness_slice({circle}, {Rational(0)}), ShapeError);
	}
}
