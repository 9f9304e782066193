/* SPDX-License-Identifier: Apache-2.0
 *
 * Copyright 2026 The kkit Authors
 */

#ifndef KKIT_CERTIFY_HPP
#define KKIT_CERTIFY_HPP

#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "kkit/system.hpp"

namespace kkit {

using IntervalMatrix = std::vector<std::vector<Interval>>;
using DyadicMatrix = std::vector<std::vector<Dyadic>>;

struct JacobianEnclosure {
	IntervalMatrix entries;
	/// Contains the determinant of every point matrix in entries.
	Interval det;
};

/// Determinant enclosure by interval Gaussian elimination with partial
/// pivoting; cofactor expansion is used alongside (n <= 4) or as fallback
/// when no pivot excludes zero.
Interval interval_determinant(const IntervalMatrix& m, Precision prec);

std::vector<Interval> interval_eval_system(const SquareSystem& sys, const Box& box, Precision prec);
JacobianEnclosure interval_jacobian(const SquareSystem& sys, const Box& box, Precision prec);

/// Mean-value enclosure F(m) + J(X)(X - m) intersected with the natural
/// enclosure. Requires the exponentiated coordinates strictly inside (-1, 1).
std::vector<Interval> centered_eval(const SquareSystem& sys, const Box& box, Precision prec);

/// Approximate inverse in rounded (non-rigorous) dyadic arithmetic. Returns
/// nullopt when a pivot vanishes at the working precision.
std::optional<DyadicMatrix> approximate_inverse(const DyadicMatrix& a, Precision prec);

/// K(X) = m - Y F(m) + (I - Y J(X)) (X - m) for explicit m and Y.
Box krawczyk_image(const SquareSystem& sys, const Box& box, const std::vector<Dyadic>& m, const DyadicMatrix& y,
                   Precision prec);

enum class Verdict { contracted, excluded, inconclusive };

struct KrawczykResult {
	Verdict verdict = Verdict::inconclusive;
	/// K(X) intersected with X (contracted only).
	std::optional<Box> box;
	/// K(X) before intersection, when it was computed.
	std::optional<Box> image;
	/// K(X) lies in the interior of X with at least one ulp of margin.
	bool strict = false;
	std::vector<Dyadic> midpoint;
	DyadicMatrix preconditioner;
	std::string diagnostic;
};

KrawczykResult krawczyk(const SquareSystem& sys, const Box& box, Precision prec);

/// Evidence that box holds exactly one zero of system, that the zero is
/// regular and that its exponentiated coordinates lie in (-1, 1).
struct Certificate {
	std::shared_ptr<const SquareSystem> system;
	Box box;
	std::vector<Dyadic> midpoint;
	DyadicMatrix preconditioner;
	Box krawczyk_image;
	JacobianEnclosure jacobian;
	Precision precision = 64;

	/// The certified zero lies in krawczyk_image.
	const Box& zero() const { return krawczyk_image; }
};

struct CertifyBudget {
	Precision start_precision = 64;
	Precision max_precision = 4096;
	int max_iterations = 64;
};

enum class FailureReason { no_contraction, jacobian_singular, domain_violation, budget_exhausted, excluded };

std::string to_string(FailureReason r);

struct Failure {
	FailureReason reason;
	std::string detail;
};

using CertifyResult = std::variant<Certificate, Failure>;

/// Iterates the Krawczyk operator, shrinking the box and doubling the
/// precision on inconclusive steps, until a contraction with a regular
/// Jacobian is found. The exponentiated coordinates are clipped to
/// [-1 + 2^-prec, 1 - 2^-prec] first.
CertifyResult certify_regular_zero(std::shared_ptr<const SquareSystem> sys, const Box& box,
                                   const CertifyBudget& budget = {});

/// Re-derives K(X), the Jacobian enclosure and its determinant from the
/// system and box at cert.precision, trusting only the stored midpoint and
/// preconditioner. True iff every stored enclosure contains its recomputed
/// counterpart, K(X) is strictly inside the box, the determinant excludes
/// zero and the exponentiated coordinates lie strictly inside (-1, 1).
bool check_certificate(const Certificate& cert);

} // namespace kkit

#endif
