/* SPDX-License-Identifier: Apache-2.0
 *
 * Copyright 2026 The kkit Authors
 */

// Reference constants to 60 significant digits, computed offline with an
// independent arbitrary-precision library (series for exp, Newton for the
// roots). They are frozen here and never derived from kkit itself.

#ifndef KKIT_TESTS_ORACLES_HPP
#define KKIT_TESTS_ORACLES_HPP

#include <string>

#include "kkit/box.hpp"
#include "kkit/rational.hpp"

namespace oracle {

inline constexpr const char* exp_half = "1.64872127070012814684865078781416357165377610071014801157508";
inline constexpr const char* exp_neg_half = "0.606530659712633423603799534991180453441918135487186955682892";
inline constexpr const char* exp_two = "7.38905609893065022723042746057500781318031557055184732408713";
inline constexpr const char* e = "2.71828182845904523536028747135266249775724709369995957496697";
inline constexpr const char* ln2 = "0.69314718055994530941723212145817656807550013436025525412068";
inline constexpr const char* ln3 = "1.09861228866810969139524523692252570464749055782274945173469";
inline constexpr const char* ln4 = "1.38629436111989061883446424291635313615100026872051050824136";
inline constexpr const char* ln_3_2 = "0.405465108108164381978013115464349136571990423462494197614014";
inline constexpr const char* ln2_minus_half = "0.19314718055994530941723212145817656807550013436025525412068";
inline constexpr const char* omega = "0.567143290409783872999968662210355549753815787186512508135131";
inline constexpr const char* ln_ln2 = "-0.366512920581664327012439158232669469454263447837105263053678";
inline constexpr const char* half_ln2 = "0.34657359027997265470861606072908828403775006718012762706034";
inline constexpr const char* inv_sqrt2 = "0.70710678118654752440084436210484903928483593768847403658834";
inline constexpr const char* sqrt2 = "1.41421356237309504880168872420969807856967187537694807317668";
// root of x + exp(2x) = 0
inline constexpr const char* slice_root = "-0.426302751006862745673236207347658733449226650075701754386054";
inline constexpr const char* exp_0_6 = "1.82211880039050897487536766816286451338223880854643538632055";
inline constexpr const char* exp_0_69 = "1.99371553324308232889964617693438007211177094790386749241021";
inline constexpr const char* exp_0_7 = "2.01375270747047652162454938858306527001754239414586731156899";
inline constexpr const char* exp_0_8 = "2.22554092849246760457953753139507675705363413504848459611858";

inline kkit::Rational value(const char* s) { return kkit::Rational::parse(s); }

// The stored digits are truncated, so the true value is within 1e-58 of
// them; containment is checked up to that slack.
inline bool contains(const kkit::Interval& x, const char* s)
{
	const kkit::Rational v = value(s), slack = kkit::Rational::parse("1e-58");
	return x.lo().to_rational() <= v + slack && v - slack <= x.hi().to_rational();
}

/// max(|lo - v|, |hi - v|) <= tol
inline bool within(const kkit::Interval& x, const char* s, const char* tol)
{
	kkit::Rational v = value(s), t = kkit::Rational::parse(tol);
	kkit::Rational a = x.lo().to_rational() - v, b = x.hi().to_rational() - v;
	if (a.sign() < 0)
		a = -a;
	if (b.sign() < 0)
		b = -b;
	return a <= t && b <= t;
}

} // namespace oracle

#endif
