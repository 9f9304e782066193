// SPDX-License-Identifier: Apache-2.0

#include "kkit/search.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <random>
#include <stdexcept>
#include <thread>

#include "kkit/errors.hpp"
#include "kkit/reduce.hpp"

namespace kkit {

void SearchConfig::validate() const
{
	if (radius.sign() <= 0)
		throw std::invalid_argument("search radius must be positive");
	if (max_depth < 1)
		throw std::invalid_argument("search depth must be at least 1");
	if (start_precision < 16 || max_precision < start_precision)
		throw std::invalid_argument("precision ladder must satisfy 16 <= start <= cap");
	if (max_boxes < 1)
		throw std::invalid_argument("box budget must be positive");
}

unsigned SearchConfig::worker_count() const
{
	if (workers)
		return workers;
	return std::max(1u, std::thread::hardware_concurrency());
}

std::string to_string(Status s)
{
	switch (s) {
	case Status::sat:
		return "SAT";
	case Status::region_unsat:
		return "REGION-UNSAT";
	default:
		return "UNKNOWN";
	}
}

Box default_region(const Shape& shape, const SearchConfig& cfg)
{
	std::vector<Interval> c;
	for (std::size_t i = 0; i < shape.n; i++)
		c.push_back(i < shape.ell ? Interval(Dyadic(-1), Dyadic(1)) : Interval(-cfg.radius, cfg.radius));
	return Box(shape, std::move(c));
}

namespace {

int compare_boxes(const Box& a, const Box& b)
{
	for (std::size_t i = 0; i < std::min(a.size(), b.size()); i++) {
		if (int c = compare(a[i].lo(), b[i].lo()))
			return c;
		if (int c = compare(a[i].hi(), b[i].hi()))
			return c;
	}
	return a.size() < b.size() ? -1 : a.size() > b.size();
}

void sort_boxes(std::vector<Box>& v)
{
	std::sort(v.begin(), v.end(), [](const Box& a, const Box& b) { return compare_boxes(a, b) < 0; });
}

enum class Kind { split, excluded, certified, accept };

struct Outcome {
	Kind kind = Kind::split;
	std::optional<Certificate> cert;
	std::optional<Box> domain;
};

struct Node {
	Box box;
	int depth;
};

struct Hit {
	Box cell;
	Box domain;
	Certificate cert;
};

struct Paving {
	std::vector<Box> excluded, unknown, accepted;
	std::vector<Hit> hits;
};

template <class Classify>
std::vector<Outcome> classify_level(const std::vector<Node>& level, const Classify& classify, unsigned workers)
{
	std::vector<Outcome> res(level.size());
	unsigned t = static_cast<unsigned>(std::min<std::size_t>(workers, level.size()));
	if (t <= 1) {
		for (std::size_t i = 0; i < level.size(); i++)
			res[i] = classify(level[i].box);
		return res;
	}
	std::atomic<std::size_t> next{0};
	std::exception_ptr err;
	std::mutex m;
	auto work = [&] {
		for (;;) {
			std::size_t i = next++;
			if (i >= level.size())
				return;
			try {
				res[i] = classify(level[i].box);
			} catch (...) {
				std::lock_guard<std::mutex> lock(m);
				if (!err)
					err = std::current_exception();
			}
		}
	};
	std::vector<std::thread> pool;
	for (unsigned i = 1; i < t; i++)
		pool.emplace_back(work);
	work();
	for (auto& th : pool)
		th.join();
	if (err)
		std::rethrow_exception(err);
	return res;
}

// widest coordinate relative to the region, split off-center so that
// simple rational zeros rarely land on a cut
std::optional<std::pair<Box, Box>> split_box(const Box& b, const Box& region)
{
	std::optional<std::size_t> best;
	for (std::size_t i = 0; i < b.size(); i++) {
		if (b[i].width().is_zero() || region[i].width().is_zero())
			continue;
		if (!best || b[i].width() * region[*best].width() > b[*best].width() * region[i].width())
			best = i;
	}
	if (!best)
		return std::nullopt;
	const Interval& x = b[*best];
	Dyadic at = x.lo() + x.width() * Dyadic(mpz_class(33), -6);
	return b.split(*best, at);
}

// Level-synchronous paving: every level is classified in parallel, then
// merged in order, so the result is independent of the worker count.
template <class Classify>
Paving pave(const Box& region, const SearchConfig& cfg, const Classify& classify, bool stop_on_accept)
{
	Paving out;
	std::vector<Node> level{{region, 0}};
	std::size_t budget = cfg.max_boxes;
	unsigned workers = cfg.worker_count();
	while (!level.empty()) {
		if (level.size() > budget) {
			for (auto& nd : level)
				out.unknown.push_back(std::move(nd.box));
			break;
		}
		budget -= level.size();
		std::vector<Outcome> res = classify_level(level, classify, workers);
		std::vector<Node> next;
		for (std::size_t i = 0; i < level.size(); i++) {
			Node& nd = level[i];
			switch (res[i].kind) {
			case Kind::excluded:
				out.excluded.push_back(std::move(nd.box));
				break;
			case Kind::accept:
				out.accepted.push_back(std::move(nd.box));
				break;
			case Kind::certified:
				out.hits.push_back({std::move(nd.box), std::move(*res[i].domain), std::move(*res[i].cert)});
				break;
			case Kind::split: {
				auto halves = nd.depth < cfg.max_depth ? split_box(nd.box, region) : std::nullopt;
				if (!halves) {
					out.unknown.push_back(std::move(nd.box));
					break;
				}
				next.push_back({std::move(halves->first), nd.depth + 1});
				next.push_back({std::move(halves->second), nd.depth + 1});
				break;
			}
			}
		}
		if (stop_on_accept && !out.accepted.empty()) {
			for (auto& nd : next)
				out.unknown.push_back(std::move(nd.box));
			break;
		}
		level = std::move(next);
	}
	return out;
}

bool small_relative(const Box& b, const Box& region, int shift)
{
	for (std::size_t i = 0; i < b.size(); i++)
		if (b[i].width().ldexp(shift) > region[i].width())
			return false;
	return true;
}

bool clear_of_boundary(const Box& b, Precision prec)
{
	auto c = clip_to_domain(b, prec);
	return c && *c == b && b.exp_coords_inside();
}

Box inflate_within(const Box& b, const Box& region)
{
	std::vector<Interval> c;
	for (std::size_t i = 0; i < b.size(); i++) {
		Interval w = inflate(b[i], b[i].width().ldexp(-3));
		c.push_back(intersect(w, region[i]).value_or(b[i]));
	}
	return Box(b.shape(), std::move(c));
}

struct SquareClassifier {
	std::shared_ptr<const SquareSystem> sys;
	Box region;
	SearchConfig cfg;

	std::optional<Outcome> attempt(const Box& dom) const
	{
		Precision p = cfg.start_precision;
		if (!clear_of_boundary(dom, p))
			return std::nullopt;
		KrawczykResult kr = krawczyk(*sys, dom, p);
		if (kr.verdict == Verdict::excluded)
			return Outcome{Kind::excluded, std::nullopt, std::nullopt};
		if (kr.verdict != Verdict::contracted || !kr.strict)
			return std::nullopt;
		CertifyResult r = certify_regular_zero(sys, dom, {p, cfg.max_precision, 64});
		if (auto* c = std::get_if<Certificate>(&r))
			return Outcome{Kind::certified, *c, dom};
		return std::nullopt;
	}

	Outcome operator()(const Box& box) const
	{
		Precision p = cfg.start_precision;
		bool inside = box.exp_coords_inside();
		for (const auto& v : inside ? centered_eval(*sys, box, p) : sys->eval_interior(box, p))
			if (!v.contains_zero())
				return {Kind::excluded, std::nullopt, std::nullopt};
		if (!inside || !small_relative(box, region, 2))
			return {};
		if (auto o = attempt(box))
			return *o;
		// a zero sitting on a cut: retry on a slightly larger box
		if (small_relative(box, region, 12))
			if (auto o = attempt(inflate_within(box, region)))
				return *o;
		return {};
	}
};

SolveReport finish(Paving&& pv)
{
	SolveReport rep;
	std::sort(pv.hits.begin(), pv.hits.end(), [](const Hit& a, const Hit& b) { return compare_boxes(a.cell, b.cell) < 0; });
	std::vector<const Hit*> kept;
	for (const auto& h : pv.hits) {
		rep.cells.push_back(h.cell);
		bool dup = std::any_of(kept.begin(), kept.end(), [&](const Hit* k) {
			return k->domain.contains(h.cert.zero()) || h.domain.contains(k->cert.zero());
		});
		if (!dup)
			kept.push_back(&h);
	}
	for (const Hit* k : kept)
		rep.certificates.push_back(k->cert);
	std::sort(rep.certificates.begin(), rep.certificates.end(), [](const Certificate& a, const Certificate& b) {
		return compare_boxes(a.zero(), b.zero()) < 0;
	});
	rep.excluded = std::move(pv.excluded);
	rep.unknown = std::move(pv.unknown);
	sort_boxes(rep.cells);
	sort_boxes(rep.excluded);
	sort_boxes(rep.unknown);
	if (!rep.certificates.empty())
		rep.status = Status::sat;
	else if (rep.unknown.empty())
		rep.status = Status::region_unsat;
	return rep;
}

} // namespace

SolveReport solve_square(std::shared_ptr<const SquareSystem> sys, const Box& region, const SearchConfig& cfg)
{
	cfg.validate();
	require_same_shape(sys->shape(), region.shape(), "solve_square");
	std::vector<Interval> c = region.coords();
	for (std::size_t i = 0; i < sys->shape().ell; i++) {
		auto cut = intersect(c[i], Interval(Dyadic(-1), Dyadic(1)));
		if (!cut)
			throw ShapeError("search region misses [-1, 1] in exponentiated coordinate " + std::to_string(i + 1));
		c[i] = *cut;
	}
	Box r(region.shape(), std::move(c));
	return finish(pave(r, cfg, SquareClassifier{sys, r, cfg}, false));
}

namespace {

// side conditions live on the open domain, so texp is evaluated on the interior
std::optional<bool> holds_over(const SideCondition& c, const Box& box, Precision p, Interval& value)
{
	value = evaluate(c.f, box, p, true);
	const Interval& v = value;
	switch (c.rel) {
	case Rel::gt:
		if (v.positive())
			return true;
		if (v.hi().sign() <= 0)
			return false;
		return std::nullopt;
	case Rel::ge:
		if (v.lo().sign() >= 0)
			return true;
		if (v.negative())
			return false;
		return std::nullopt;
	case Rel::ne:
		if (!v.contains_zero())
			return true;
		if (v == Interval(0))
			return false;
		return std::nullopt;
	default:
		if (!v.contains_zero())
			return false;
		if (v == Interval(0))
			return true;
		return std::nullopt;
	}
}

std::optional<bool> holds_all(const std::vector<SideCondition>& cs, const Box& box, Precision p,
                              std::vector<Verification>* log = nullptr)
{
	bool undecided = false;
	for (const auto& c : cs) {
		Interval v;
		auto r = holds_over(c, box, p, v);
		if (log)
			log->push_back({c.f.str() + " " + to_string(c.rel) + " 0", v});
		if (r && !*r)
			return false;
		if (!r)
			undecided = true;
	}
	if (undecided)
		return std::nullopt;
	return true;
}

struct ClauseResult {
	Status status = Status::unknown;
	std::optional<Certificate> cert;
	std::vector<Interval> witness;
	std::vector<Verification> checks;
	std::string note;
};

// true boxes of the side conditions; accept stops the paving
Paving conditions_paving(const std::vector<SideCondition>& cs, const Box& region, const SearchConfig& cfg)
{
	auto classify = [&](const Box& b) -> Outcome {
		auto r = holds_all(cs, b, cfg.start_precision);
		if (r && !*r)
			return {Kind::excluded, std::nullopt, std::nullopt};
		if (r && *r && b.exp_coords_inside())
			return {Kind::accept, std::nullopt, std::nullopt};
		return {};
	};
	return pave(region, cfg, classify, true);
}

std::optional<ClauseResult> try_certificate(std::shared_ptr<const KhovanskiiSystem> sys, const Certificate& cert,
                                            const std::vector<SideCondition>& cs, const SearchConfig& cfg,
                                            bool& undecided)
{
	Certificate c = cert;
	for (;;) {
		std::vector<Verification> log;
		auto r = holds_all(cs, c.zero(), c.precision, &log);
		if (r) {
			if (!*r)
				return std::nullopt;
			ClauseResult out;
			out.status = Status::sat;
			out.witness = c.zero().coords();
			out.cert = c;
			out.checks = std::move(log);
			return out;
		}
		// undecided: tighten the enclosure at a higher precision
		Precision p = c.precision * 2;
		if (p > cfg.max_precision)
			break;
		CertifyResult next = certify_regular_zero(sys, c.box, {p, cfg.max_precision, 64});
		if (!std::holds_alternative<Certificate>(next))
			break;
		Certificate tighter = std::get<Certificate>(next);
		if (!(tighter.zero().max_width() < c.zero().max_width()) && tighter.precision <= c.precision)
			break;
		c = std::move(tighter);
	}
	undecided = true;
	return std::nullopt;
}

std::vector<Rational> random_center(std::mt19937_64& rng, const Box& region)
{
	std::vector<Rational> c;
	std::uniform_int_distribution<long> pick(-999, 999);
	for (std::size_t i = 0; i < region.size(); i++) {
		Rational lo = region[i].lo().to_rational(), hi = region[i].hi().to_rational();
		Rational mid = (lo + hi) * Rational(1, 2), half = (hi - lo) * Rational(1, 2);
		c.push_back(mid + half * Rational(pick(rng), 1000));
	}
	return c;
}

ClauseResult solve_clause(const ExistentialSystem& e, const Shape& base, const Box& region, std::size_t index,
                          const SearchConfig& cfg)
{
	const std::size_t k = e.equalities.size(), n = base.n;
	ClauseResult out;
	if (k == 0) {
		Paving pv = conditions_paving(e.inequalities, region, cfg);
		if (!pv.accepted.empty()) {
			Box pt = pv.accepted.front().midpoint_box();
			std::vector<Verification> log;
			auto r = holds_all(e.inequalities, pt, cfg.start_precision, &log);
			if (r && *r) {
				out.status = Status::sat;
				out.witness = pt.coords();
				out.checks = std::move(log);
				return out;
			}
		}
		out.status = pv.accepted.empty() && pv.unknown.empty() ? Status::region_unsat : Status::unknown;
		out.note = "no box where every side condition holds";
		return out;
	}
	if (k > n) {
		out.note = "over-determined equation block (" + std::to_string(k) + " equations, " + std::to_string(n) +
		           " variables)";
		return out;
	}
	if (k == n) {
		auto sys = std::make_shared<const KhovanskiiSystem>(base, e.equalities);
		SolveReport rep = solve_square(sys, region, cfg);
		bool undecided = false;
		for (const auto& c : rep.certificates)
			if (auto r = try_certificate(sys, c, e.inequalities, cfg, undecided))
				return *r;
		if (rep.unknown.empty() && !undecided) {
			out.status = Status::region_unsat;
			return out;
		}
		out.note = undecided ? "side condition undecided at a certified zero"
		                     : std::to_string(rep.unknown.size()) + " boxes left undecided by the equation search";
		return out;
	}

	// under-determined: critical points of the distance to a center
	std::vector<std::vector<Rational>> centers;
	Paving near = conditions_paving(e.inequalities, region, cfg);
	if (!near.accepted.empty()) {
		std::vector<Rational> c;
		for (const auto& d : near.accepted.front().midpoint())
			c.push_back(d.to_rational());
		centers.push_back(std::move(c));
	}
	std::mt19937_64 rng(cfg.seed * 0x9e3779b97f4a7c15ULL + index);
	while (centers.size() < 4)
		centers.push_back(random_center(rng, region));
	bool undecided = false;
	for (const auto& center : centers) {
		auto sys = std::make_shared<const KhovanskiiSystem>(witness_slice(e.equalities, center));
		SolveReport rep = solve_square(sys, region, cfg);
		for (const auto& c : rep.certificates)
			if (auto r = try_certificate(sys, c, e.inequalities, cfg, undecided))
				return *r;
	}
	out.note = "witness slices found no point satisfying the side conditions";
	return out;
}

std::optional<bool> guards_hold(const Disjunct& d, const Box& box)
{
	bool undecided = false;
	for (const auto& g : d.guards) {
		const Interval& x = box[g.var];
		bool in = Dyadic(-1) < x.lo() && x.hi() < Dyadic(1);
		bool out = x.lo() >= Dyadic(1) || x.hi() <= Dyadic(-1);
		if (g.inside ? out : in)
			return false;
		if (!(g.inside ? in : out))
			undecided = true;
	}
	if (undecided)
		return std::nullopt;
	return true;
}

std::optional<bool> disjunct_holds(const Disjunct& d, const Box& box, Precision p)
{
	auto g = guards_hold(d, box);
	if (g && !*g)
		return false;
	auto m = eval_formula(d.matrix, box.coords(), p, true);
	if (m && !*m)
		return false;
	if (g && m)
		return true;
	return std::nullopt;
}

} // namespace

DisjunctReport solve_disjunct(const Disjunct& d, const SearchConfig& cfg)
{
	cfg.validate();
	if (d.vars.empty())
		throw std::invalid_argument("solve_disjunct needs at least one variable");
	DisjunctReport rep;
	rep.disjunct = d.str();
	rep.vars = d.vars;
	Shape base(d.ell, d.vars.size());
	Box region = default_region(base, cfg);

	std::vector<ExistentialSystem> systems = atoms_to_equations(d);
	bool all_unsat = true;
	for (std::size_t i = 0; i < systems.size(); i++) {
		ClauseResult r = solve_clause(systems[i], base, region, i, cfg);
		if (r.status == Status::sat) {
			rep.status = Status::sat;
			rep.clause = systems[i].clause;
			rep.certificate = std::move(r.cert);
			rep.witness = std::move(r.witness);
			rep.checks = std::move(r.checks);
			return rep;
		}
		if (r.status != Status::region_unsat) {
			all_unsat = false;
			if (rep.note.empty())
				rep.note = r.note;
		}
	}
	if (all_unsat) {
		rep.status = Status::region_unsat;
		rep.note = systems.empty() ? "every clause contains a false constant atom" : "every clause refuted";
		return rep;
	}

	// refutation over the disjunct's own variables
	Precision p = cfg.start_precision;
	auto classify = [&](const Box& b) -> Outcome {
		auto r = disjunct_holds(d, b, p);
		if (r && !*r)
			return {Kind::excluded, std::nullopt, std::nullopt};
		if (r && *r)
			return {Kind::accept, std::nullopt, std::nullopt};
		return {};
	};
	Paving pv = pave(region, cfg, classify, true);
	rep.excluded = pv.excluded.size();
	rep.unknown = pv.unknown.size();
	if (!pv.accepted.empty()) {
		Box pt = pv.accepted.front().midpoint_box();
		if (auto r = disjunct_holds(d, pt, p); r && *r) {
			rep.status = Status::sat;
			rep.witness = pt.coords();
			rep.note.clear();
			return rep;
		}
	}
	if (pv.unknown.empty() && pv.accepted.empty()) {
		rep.status = Status::region_unsat;
		rep.note = "matrix false on every box of the region";
	}
	return rep;
}

SatReport solve_formula(const Formula& f, const SearchConfig& cfg)
{
	cfg.validate();
	SatReport rep;
	if (f.vars.empty()) {
		auto truth = decide(f.root, {}, cfg.max_precision);
		rep.status = !truth ? Status::unknown : *truth ? Status::sat : Status::region_unsat;
		return rep;
	}
	Flattened fl = flatten(f);
	Formula comb = fl.combined();
	rep.vars = comb.vars;
	bool all_unsat = true;
	for (const auto& d : normalize_complexity(comb)) {
		DisjunctReport dr = solve_disjunct(d, cfg);
		Status s = dr.status;
		if (s == Status::sat) {
			std::vector<std::size_t> idx = d.source_index(comb);
			rep.witness.assign(comb.vars.size(), Interval(0));
			for (std::size_t i = 0; i < idx.size(); i++)
				rep.witness[idx[i]] = dr.witness[i];
		}
		rep.disjuncts.push_back(std::move(dr));
		if (s == Status::sat) {
			rep.status = Status::sat;
			return rep;
		}
		all_unsat = all_unsat && s == Status::region_unsat;
	}
	rep.status = all_unsat ? Status::region_unsat : Status::unknown;
	return rep;
}

} // namespace kkit
