/* SPDX-License-Identifier: Apache-2.0
 *
 * Copyright 2026 The kkit Authors
 */

#ifndef KKIT_DEPENDENCE_HPP
#define KKIT_DEPENDENCE_HPP

#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "kkit/interval.hpp"

namespace kkit {

/// d * a_ell = sum_i k_i * a_i + g among the exponentiated coordinates
/// a_1..a_ell of a zero, with k of length ell - 1.
struct DependenceRelation {
	mpz_class d;
	std::vector<mpz_class> k;
	Rational g;

	/// Throws std::invalid_argument when d == 0.
	DependenceRelation(mpz_class d_, std::vector<mpz_class> k_, Rational g_);

	/// Parses "d;k1,k2,...;g" (k may be empty: "1;;3/4").
	static DependenceRelation parse(const std::string& text);
	std::string str() const;
};

/// LLL-reduces the rows of an integer lattice basis in place (delta = 3/4).
void lll_reduce(std::vector<std::vector<mpz_class>>& basis);

/// Searches for an integer vector u with |u_i| <= coeff_bound and
/// |u . mid(values)| below the detection tolerance 2^(8 - precision), via
/// lattice reduction on the scaled midpoints.
///
/// The result is only a candidate: nothing here proves the relation holds.
/// Candidates are normalized so the first non-zero entry is positive. Throws
/// std::invalid_argument when an enclosure is wider than the tolerance or
/// coeff_bound < 1.
std::optional<std::vector<mpz_class>> integer_dependence(const std::vector<Interval>& values, long coeff_bound,
                                                         Precision precision);

/// Turns an integer relation u over (a_1, ..., a_ell, 1) into d, k, g with
/// u_ell != 0. Returns nullopt when u_ell == 0.
std::optional<DependenceRelation> relation_from_integers(const std::vector<mpz_class>& u);

} // namespace kkit

#endif
