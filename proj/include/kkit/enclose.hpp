/* SPDX-License-Identifier: Apache-2.0
 *
 * Copyright 2026 The kkit Authors
 */

#ifndef KKIT_ENCLOSE_HPP
#define KKIT_ENCLOSE_HPP

#include "kkit/interval.hpp"

namespace kkit {

/// Number of Taylor terms m used at the given precision: the smallest m with
/// 3/m! < 2^-(prec+2).
unsigned series_order(Precision prec);

/// Enclosure of exp(a) for a point a in [-1, 1]: the degree m-1 Taylor sum
/// plus the Lagrange remainder bound 3*|a|^m/m!.
Interval exp_point(const Dyadic& a, Precision prec);

/// Enclosure of the restricted exponential over X: exp on the part of X
/// inside (-1, 1), hulled with 0 whenever X reaches the closed complement
/// (including the endpoints +-1).
Interval texp_enclosure(const Interval& x, Precision prec);

/// Enclosure of texp over the points of X that lie in (-1, 1): by continuity
/// exp over X intersected with [-1, 1]. Used where the open domain is known,
/// so the jump to 0 at +-1 does not widen the result. Returns 0 when X
/// misses [-1, 1].
Interval texp_interior(const Interval& x, Precision prec);

/// Enclosure of the total exponential over a bounded X, computed as
/// texp(X/n)^n with the least integer n such that |X| lies in (-n, n).
/// The result is strictly positive.
Interval exp_fin_enclosure(const Interval& x, Precision prec);

} // namespace kkit

#endif
