/* SPDX-License-Identifier: Apache-2.0
 *
 * Copyright 2026 The kkit Authors
 */

#ifndef KKIT_INTERVAL_HPP
#define KKIT_INTERVAL_HPP

#include <optional>
#include <ostream>
#include <string>

#include "kkit/dyadic.hpp"
#include "kkit/rational.hpp"

namespace kkit {

/// Closed interval [lo, hi] with dyadic endpoints.
///
/// Arithmetic that takes a Precision rounds the lower endpoint down and the
/// upper endpoint up to that many significant bits, so the result always
/// contains the exact real image of the operands. The precision-free
/// operators are exact.
class Interval {
public:
	Interval() = default;
	Interval(const Dyadic& point) : lo_(point), hi_(point) {}
	Interval(long v) : lo_(v), hi_(v) {}
	Interval(int v) : lo_(v), hi_(v) {}
	/// Throws std::invalid_argument when lo > hi.
	Interval(Dyadic lo, Dyadic hi);

	/// Outward-rounded enclosure of a rational.
	static Interval from_rational(const Rational& q, Precision prec);
	static Interval from_rationals(const Rational& lo, const Rational& hi, Precision prec);

	const Dyadic& lo() const { return lo_; }
	const Dyadic& hi() const { return hi_; }

	bool is_point() const { return lo_ == hi_; }
	Dyadic midpoint() const { return (lo_ + hi_).ldexp(-1); }
	Dyadic width() const { return hi_ - lo_; }
	/// Magnitude max |x| over the interval.
	Dyadic mag() const { return max(lo_.abs(), hi_.abs()); }
	/// Mignitude min |x| over the interval.
	Dyadic mig() const;

	bool contains(const Dyadic& x) const { return lo_ <= x && x <= hi_; }
	bool contains(const Interval& o) const { return lo_ <= o.lo_ && o.hi_ <= hi_; }
	bool contains_zero() const { return lo_.sign() <= 0 && hi_.sign() >= 0; }
	/// o lies in the open interior (lo, hi).
	bool interior_contains(const Interval& o) const { return lo_ < o.lo_ && o.hi_ < hi_; }
	bool overlaps(const Interval& o) const { return lo_ <= o.hi_ && o.lo_ <= hi_; }
	/// Strictly positive / strictly negative.
	bool positive() const { return lo_.sign() > 0; }
	bool negative() const { return hi_.sign() < 0; }

	Interval operator-() const { return {-hi_, -lo_}; }
	friend bool operator==(const Interval& a, const Interval& b) { return a.lo_ == b.lo_ && a.hi_ == b.hi_; }
	friend bool operator!=(const Interval& a, const Interval& b) { return !(a == b); }

	/// ["lo", "hi"] with endpoints in dyadic string form.
	std::string str() const;
	/// Human-readable decimal rendering.
	std::string decimal(int digits = 17) const;

private:
	Dyadic lo_;
	Dyadic hi_;
};

Interval add(const Interval& a, const Interval& b, Precision prec);
Interval sub(const Interval& a, const Interval& b, Precision prec);
Interval mul(const Interval& a, const Interval& b, Precision prec);
/// Non-negative integer power; even powers of intervals straddling zero are
/// tightened to start at 0.
Interval pow(const Interval& a, unsigned k, Precision prec);
/// Division by a positive integer.
Interval div_int(const Interval& a, long k, Precision prec);
/// Division by an interval that excludes zero; throws std::domain_error
/// otherwise.
Interval div(const Interval& a, const Interval& b, Precision prec);
/// Enclosure of sqrt over a non-negative interval.
Interval sqrt(const Interval& a, Precision prec);

Interval hull(const Interval& a, const Interval& b);
std::optional<Interval> intersect(const Interval& a, const Interval& b);
/// [lo - r, hi + r] for r >= 0.
Interval inflate(const Interval& a, const Dyadic& r);
/// Widens each endpoint outward by one ulp at prec.
Interval widen_ulp(const Interval& a, Precision prec);
Interval round_out(const Interval& a, Precision prec);

std::ostream& operator<<(std::ostream& os, const Interval& x);

} // namespace kkit

#endif
