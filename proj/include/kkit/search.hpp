/* SPDX-License-Identifier: Apache-2.0
 *
 * Copyright 2026 The kkit Authors
 */

#ifndef KKIT_SEARCH_HPP
#define KKIT_SEARCH_HPP

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "kkit/certify.hpp"
#include "kkit/formula.hpp"

namespace kkit {

struct SearchConfig {
	/// Unbounded coordinates are searched in [-radius, radius].
	Dyadic radius = Dyadic(8);
	int max_depth = 48;
	Precision start_precision = 64;
	Precision max_precision = 4096;
	/// 0 picks std::thread::hardware_concurrency().
	unsigned workers = 0;
	/// Seeds the witness-slice centers.
	std::uint64_t seed = 1;
	/// Total number of boxes one paving may examine.
	std::size_t max_boxes = 200000;

	/// Throws std::invalid_argument on a non-positive radius, depth < 1 or a
	/// bad precision ladder.
	void validate() const;
	unsigned worker_count() const;
};

enum class Status { sat, region_unsat, unknown };

/// "SAT", "REGION-UNSAT", "UNKNOWN".
std::string to_string(Status s);

struct SolveReport {
	Status status = Status::unknown;
	/// One per certified zero, sorted by zero enclosure.
	std::vector<Certificate> certificates;
	/// Leaf boxes shown to hold no zero except a certified one.
	std::vector<Box> cells;
	std::vector<Box> excluded;
	std::vector<Box> unknown;
};

/// Search region for a shape: [-1, 1] on exponentiated coordinates,
/// [-radius, radius] elsewhere.
Box default_region(const Shape& shape, const SearchConfig& cfg);

/// Branch and prune over region (exponentiated coordinates are intersected
/// with [-1, 1]). Cells, excluded and unknown boxes cover the region. The
/// result does not depend on cfg.workers. Throws ShapeError on a region of
/// the wrong shape.
SolveReport solve_square(std::shared_ptr<const SquareSystem> sys, const Box& region, const SearchConfig& cfg);

/// A side condition and its enclosure over the witness box.
struct Verification {
	std::string condition;
	Interval value;
};

struct DisjunctReport {
	std::string disjunct;
	std::vector<std::string> vars;
	Status status = Status::unknown;
	/// The clause a SAT witness satisfies.
	std::string clause;
	/// SAT through equations: certificate of the equation block (or of its
	/// witness slice); its zero enclosure is the witness.
	std::optional<Certificate> certificate;
	/// SAT: enclosure of every disjunct variable (a point when no equation
	/// was involved).
	std::vector<Interval> witness;
	std::vector<Verification> checks;
	std::string note;
	/// Box counts of the refutation paving (when it ran).
	std::size_t excluded = 0;
	std::size_t unknown = 0;
};

struct SatReport {
	Status status = Status::unknown;
	/// Variables of the flattened formula (source variables first).
	std::vector<std::string> vars;
	/// SAT: enclosure per entry of vars.
	std::vector<Interval> witness;
	std::vector<DisjunctReport> disjuncts;
};

DisjunctReport solve_disjunct(const Disjunct& d, const SearchConfig& cfg);

/// flatten, normalize_complexity, solve each disjunct. SAT as soon as one
/// disjunct is SAT, REGION-UNSAT when all are.
SatReport solve_formula(const Formula& f, const SearchConfig& cfg);

} // namespace kkit

#endif
