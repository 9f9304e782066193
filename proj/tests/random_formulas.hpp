// SPDX-License-Identifier: Apache-2.0
// Seeded random formulas over x, y, z with texp applied to variables only.

#ifndef KKIT_TESTS_RANDOM_FORMULAS_HPP
#define KKIT_TESTS_RANDOM_FORMULAS_HPP

#include <random>
#include <string>
#include <vector>

#include "kkit/rational.hpp"

namespace testgen {

class FormulaGen {
public:
	explicit FormulaGen(std::uint64_t seed) : rng_(seed) {}

	/// Formula text with boolean depth <= depth.
	std::string formula(int depth)
	{
		int pick = depth <= 0 ? 0 : uniform(0, 4);
		switch (pick) {
		case 1:
			return "(" + formula(depth - 1) + " & " + formula(depth - 1) + ")";
		case 2:
			return "(" + formula(depth - 1) + " | " + formula(depth - 1) + ")";
		case 3:
			return "!(" + formula(depth - 1) + ")";
		default:
			return term(2) + " " + rel() + " " + term(2);
		}
	}

	std::string term(int depth)
	{
		int pick = depth <= 0 ? uniform(0, 2) : uniform(0, 6);
		switch (pick) {
		case 0:
			return constant();
		case 1:
			return var();
		case 2:
			return "E(" + var() + ")";
		case 3:
			return "(" + term(depth - 1) + " + " + term(depth - 1) + ")";
		case 4:
			return "(" + term(depth - 1) + " - " + term(depth - 1) + ")";
		case 5:
			return term(depth - 1) + " * " + term(depth - 1);
		default:
			return "(" + term(depth - 1) + ")^" + std::to_string(uniform(0, 3));
		}
	}

	/// Rational in [-3, 3] on a 1/32 grid, at least 1/16 away from +-1.
	kkit::Rational point_coordinate()
	{
		for (;;) {
			long k = uniform(-96, 96);
			long a = k < 0 ? -k : k;
			if (a > 32 - 2 && a < 32 + 2)
				continue;
			return kkit::Rational(mpz_class(k), mpz_class(32));
		}
	}

private:
	int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

	std::string var() { return std::string(1, "xyz"[uniform(0, 2)]); }

	std::string rel()
	{
		static const char* rels[] = {"=", "!=", "<", "<=", ">", ">="};
		return rels[uniform(0, 5)];
	}

	std::string constant()
	{
		int n = uniform(0, 6), d = uniform(1, 3);
		return d == 1 ? std::to_string(n) : std::to_string(n) + "/" + std::to_string(d);
	}

	std::mt19937_64 rng_;
};

} // namespace testgen

#endif
