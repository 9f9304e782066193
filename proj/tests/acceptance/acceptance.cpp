// SPDX-License-Identifier: Apache-2.0
//
// Acceptance run: one PASS/FAIL line per criterion, non-zero exit status if
// any criterion fails or overruns its time limit.

#include <sys/wait.h>
#include <unistd.h>

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

#include "fd_oracle.hpp"
#include "kkit/enclose.hpp"
#include "kkit/reduce.hpp"
#include "kkit/search.hpp"
#include "kkit/serialize.hpp"
#include "kkit/text.hpp"
#include "oracles.hpp"
#include "random_formulas.hpp"
#include "random_systems.hpp"
#include "sturm.hpp"

#ifndef KKIT_CLI_PATH
#error "KKIT_CLI_PATH must name the kkit executable"
#endif

using namespace kkit;
namespace fs = std::filesystem;

namespace {

struct Outcome {
	bool pass = true;
	std::string detail;

	void fail(const std::string& why)
	{
		if (pass)
			detail = why;
		pass = false;
	}
};

std::shared_ptr<const KhovanskiiSystem> sys(const std::string& text)
{
	return std::make_shared<KhovanskiiSystem>(parse_system(text));
}

Box box_of(const Shape& s, const std::string& text)
{
	return parse_box(text, s);
}

std::optional<Certificate> certify(std::shared_ptr<const SquareSystem> s, const Box& b)
{
	auto r = certify_regular_zero(std::move(s), b);
	if (auto* c = std::get_if<Certificate>(&r))
		return *c;
	return std::nullopt;
}

// Every certificate produced along the way; criterion 9 audits them.
std::vector<Certificate> emitted;

Outcome exp_brackets()
{
	Outcome o;
	Interval r = exp_fin_enclosure(Interval(-1), 128);
	for (int n : {1, 3, 5, 7, 9}) {
		Rational lower, upper, term(1);
		for (int k = 0; k <= n + 1; k++) {
			if (k > 0)
				term = term * Rational(-1, k);
			if (k <= n)
				lower += term;
			upper += term;
		}
		if (!(lower < r.lo().to_rational() && r.hi().to_rational() < upper))
			o.fail("bracket fails for n = " + std::to_string(n));
	}
	o.detail = o.pass ? "5 brackets strict" : o.detail;
	return o;
}

Outcome growth()
{
	Outcome o;
	int checked = 0;
	for (long k = -80; k <= 80; k++) {
		Dyadic x(mpz_class(k), -3);
		if (!(exp_fin_enclosure(Interval(x), 64).lo() >= x + Dyadic(1)))
			o.fail("exp(x) >= x + 1 fails at " + x.decimal(6));
		checked++;
	}
	for (long n : {1L, 2L, 3L})
		for (long x : {4 * n * n + 1, 8 * n * n, 100L}) {
			Dyadic xp = 1;
			for (long i = 0; i < n; i++)
				xp *= Dyadic(x);
			if (!(exp_fin_enclosure(Interval(x), 64).lo() > xp))
				o.fail("exp(x) > x^n fails at x = " + std::to_string(x));
			checked++;
		}
	if (o.pass)
		o.detail = std::to_string(checked) + " grid checks";
	return o;
}

Outcome constants()
{
	Outcome o;
	struct Case {
		const char* system;
		const char* box;
		const char* oracle;
		const char* name;
	};
	for (const Case& c : {Case{"shape: 1 1\nE(x1) - 2\n", "[0.6,0.8]", oracle::ln2, "ln 2"},
	                      Case{"shape: 1 1\nx1 * E(x1) - 1\n", "[0.5,0.6]", oracle::omega, "omega"}}) {
		auto t0 = std::chrono::steady_clock::now();
		auto s = sys(c.system);
		auto cert = certify(s, box_of(s->shape(), c.box));
		std::chrono::duration<double> dt = std::chrono::steady_clock::now() - t0;
		if (!cert) {
			o.fail(std::string(c.name) + " not certified");
			continue;
		}
		emitted.push_back(*cert);
		if (!oracle::within(cert->zero()[0], c.oracle, "1e-12"))
			o.fail(std::string(c.name) + " off by more than 1e-12");
		if (dt.count() > 2)
			o.fail(std::string(c.name) + " took longer than 2 s");
	}
	if (o.pass)
		o.detail = "ln 2 and omega within 1e-12";
	return o;
}

Outcome jacobians()
{
	Outcome o;
	std::mt19937_64 rng(2024);
	double worst = 0;
	for (int t = 0; t < 100; t++) {
		std::size_t n = 1 + t % 3, ell = (t / 3) % (n + 1);
		Shape s(ell, n);
		std::vector<ExpPolynomial> eqs;
		for (std::size_t i = 0; i < n; i++)
			eqs.push_back(testgen::polynomial(rng, s, 3));
		KhovanskiiSystem k(s, eqs);
		auto pt = testgen::point(rng, s);
		for (std::size_t i = 0; i < n; i++)
			for (std::size_t j = 0; j < n; j++) {
				Rational exact = fd::value_at(k.jacobian()[i][j], pt);
				double err = fd::relative_error(fd::central_difference(eqs[i], pt, j), exact);
				worst = std::max(worst, err);
				if (err > 1e-6)
					o.fail("system " + std::to_string(t) + " entry (" + std::to_string(i) + "," +
					       std::to_string(j) + ") error " + std::to_string(err));
			}
	}
	if (o.pass) {
		std::ostringstream d;
		d << "100 systems, worst relative error " << worst;
		o.detail = d.str();
	}
	return o;
}

Outcome sturm_agreement()
{
	Outcome o;
	std::mt19937_64 rng(99);
	std::uniform_int_distribution<int> coeff(-6, 6), deg(1, 6);
	SearchConfig cfg;
	int compared = 0, roots_total = 0;
	while (compared < 50) {
		sturm::Poly p;
		int d = deg(rng);
		for (int i = 0; i <= d; i++)
			p.push_back(Rational(coeff(rng), 1 + (i % 3)));
		if (p.back().is_zero())
			p.back() = Rational(1);
		sturm::trim(p);
		p = sturm::squarefree(p);
		Rational lo(-8), hi(8);
		if (p.size() < 2 || sturm::eval(p, lo).is_zero() || sturm::eval(p, hi).is_zero())
			continue;
		std::string text = "shape: 0 1\n";
		for (std::size_t i = 0; i < p.size(); i++)
			text += (i ? " + " : "") + std::string("(") + p[i].str() + ")*x1^" + std::to_string(i);
		auto s = sys(text + "\n");
		SolveReport r = solve_square(s, Box(s->shape(), {Interval(Dyadic(-8), Dyadic(8))}), cfg);
		auto roots = sturm::isolate(p, lo, hi, Rational(1, 1 << 30));
		auto chain = sturm::chain(p);
		compared++;
		roots_total += static_cast<int>(roots.size());
		if (!r.unknown.empty() || r.certificates.size() != roots.size()) {
			o.fail("polynomial " + text.substr(11) + ": " + std::to_string(r.certificates.size()) +
			       " certificates vs " + std::to_string(roots.size()) + " roots");
			continue;
		}
		for (std::size_t i = 0; i < roots.size(); i++) {
			const Interval& z = r.certificates[i].zero()[0];
			Rational zl = z.lo().to_rational(), zh = z.hi().to_rational();
			if (sturm::count(chain, zl, zh) + sturm::eval(p, zl).is_zero() != 1)
				o.fail("enclosure does not hold exactly one root");
			if (!z.overlaps(Interval::from_rationals(roots[i].first, roots[i].second, 64)))
				o.fail("enclosure misses the Sturm interval");
			if (i > 0 && r.certificates[i - 1].zero()[0].overlaps(z))
				o.fail("overlapping enclosures");
		}
		for (const auto& c : r.certificates)
			emitted.push_back(c);
	}
	if (o.pass)
		o.detail = "50 polynomials, " + std::to_string(roots_total) + " roots matched";
	return o;
}

Outcome normalization()
{
	Outcome o;
	auto ds = normalize_complexity(Formula::parse("x+y>2 & E(x)=z"));
	if (ds.size() != 2 || ds[0].str() != "x in (-1,1) & x + y > 2 & E(x) = z" ||
	    ds[1].str() != "x notin (-1,1) & x + y > 2 & 0 = z")
		o.fail("worked split not reproduced");

	testgen::FormulaGen gen(606);
	int total = 0, decided = 0;
	for (int t = 0; t < 200; t++) {
		Formula f = Formula::parse(gen.formula(3));
		auto split = normalize_complexity(f);
		for (int s = 0; s < 50; s++) {
			std::vector<Rational> pt;
			for (std::size_t i = 0; i < f.vars.size(); i++)
				pt.push_back(gen.point_coordinate());
			total++;
			auto truth = decide(f.root, pt);
			if (!truth)
				continue;
			int holding = 0;
			bool undecided = false;
			for (const auto& d : split) {
				auto v = decide(d, f, pt);
				if (!v)
					undecided = true;
				else if (*v)
					holding++;
			}
			if (undecided)
				continue;
			decided++;
			if (holding != (*truth ? 1 : 0))
				o.fail("disagreement on " + f.str());
		}
	}
	if (decided * 10 < total * 9)
		o.fail("only " + std::to_string(decided) + " of " + std::to_string(total) + " points decided");
	if (o.pass)
		o.detail = std::to_string(decided) + " of " + std::to_string(total) + " points decided, all agree";
	return o;
}

Outcome dependence()
{
	Outcome o;
	auto s = sys("shape: 2 2\n2*x2 - x1\nE(x1) - 2\n");
	auto c = certify(s, box_of(s->shape(), "[[0.6,0.8],[0.3,0.4]]"));
	if (!c) {
		o.fail("original system not certified");
		return o;
	}
	emitted.push_back(*c);
	try {
		ReducedSystem r = eliminate_dependence(*s, *c, DependenceRelation::parse("2;1;0"));
		emitted.push_back(r.certificate);
		if (r.system->shape().n != 1)
			o.fail("reduced system is not univariate");
		if (!oracle::within(r.certificate.zero()[0], oracle::half_ln2, "1e-10"))
			o.fail("reduced zero off by more than 1e-10");
		if (!c->box.contains(r.to_original(r.certificate.zero(), r.certificate.precision)))
			o.fail("inverse substitution leaves the original box");
		if (o.pass)
			o.detail = "X1 = " + r.certificate.zero()[0].decimal(15);
	} catch (const ReductionError& e) {
		o.fail(e.what());
	}
	return o;
}

Outcome augmentation()
{
	Outcome o;
	auto s = sys("shape: 1 1\nE(x1) - 2\n");
	auto c = certify(s, box_of(s->shape(), "[0.6,0.8]"));
	if (!c) {
		o.fail("original system not certified");
		return o;
	}
	AugmentedSystem a = regularize_augment(*s, 0, &*c);
	if (!a.start) {
		o.fail("no start box: " + a.diagnostic);
		return o;
	}
	auto ac = certify(std::make_shared<KhovanskiiSystem>(a.system), *a.start);
	if (!ac) {
		o.fail("extended zero not certified");
		return o;
	}
	emitted.push_back(*ac);
	if (!oracle::within(ac->zero()[1], oracle::inv_sqrt2, "1e-10"))
		o.fail("x2 off by more than 1e-10");
	if (!c->box[0].contains(ac->zero()[0]))
		o.fail("projection leaves the original box");
	if (o.pass)
		o.detail = "x2 = " + ac->zero()[1].decimal(15);
	return o;
}

int run_check(const fs::path& cert)
{
	std::string cmd = std::string("\"") + KKIT_CLI_PATH + "\" check --cert \"" + cert.string() + "\" >/dev/null 2>&1";
	int status = std::system(cmd.c_str());
	return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string negate(const std::string& d)
{
	return d[0] == '-' ? d.substr(1) : "-" + d;
}

Outcome audit()
{
	Outcome o;
	// a few certificates that come out of formula search as well
	SearchConfig cfg;
	cfg.workers = 1;
	for (const char* f : {"E(E(x)) = 2", "x+y>2 & E(x)=z", "x^2 + y^2 = 1 & E(x) = y"}) {
		SatReport r = solve_formula(Formula::parse(f), cfg);
		for (const auto& d : r.disjuncts)
			if (d.certificate)
				emitted.push_back(*d.certificate);
	}

	fs::path dir = fs::temp_directory_path() / ("kkit_acceptance_" + std::to_string(getpid()));
	fs::create_directories(dir);
	int good = 0, caught = 0, mutants = 0;
	for (std::size_t i = 0; i < emitted.size(); i++) {
		json j = certificate_json(emitted[i]);
		fs::path p = dir / ("cert" + std::to_string(i) + ".json");
		std::ofstream(p) << dump(j);
		if (run_check(p) == 0)
			good++;
		else
			o.fail("certificate " + std::to_string(i) + " rejected");

		// box widened 10x about its midpoint
		json wide = j;
		for (std::size_t k = 0; k < emitted[i].box.size(); k++) {
			const Interval& x = emitted[i].box[k];
			Dyadic m = x.midpoint(), h = (x.hi() - x.lo()) * Dyadic(5);
			wide["box"][k] = to_json(Interval(m - h, m + h));
		}
		// first Jacobian entry whose negation differs
		json flip = j;
		bool flipped = false;
		for (std::size_t r = 0; r < emitted[i].jacobian.entries.size() && !flipped; r++)
			for (std::size_t c = 0; c < emitted[i].jacobian.entries[r].size() && !flipped; c++) {
				const Interval& e = emitted[i].jacobian.entries[r][c];
				if (e == -e)
					continue;
				flip["jacobian"]["entries"][r][c] = json::array({negate(e.hi().str()), negate(e.lo().str())});
				flipped = true;
			}
		std::vector<json> muts{wide};
		if (flipped)
			muts.push_back(flip);
		else
			o.fail("certificate " + std::to_string(i) + " has no flippable Jacobian entry");
		for (std::size_t m = 0; m < muts.size(); m++) {
			fs::path q = dir / ("cert" + std::to_string(i) + "_mut" + std::to_string(m) + ".json");
			std::ofstream(q) << dump(muts[m]);
			mutants++;
			if (run_check(q) == 4)
				caught++;
			else
				o.fail("mutant " + q.filename().string() + " accepted");
		}
	}
	if (o.pass)
		fs::remove_all(dir);
	if (emitted.empty())
		o.fail("no certificates to audit");
	if (o.pass)
		o.detail = std::to_string(good) + "/" + std::to_string(emitted.size()) + " certificates pass, " +
		           std::to_string(caught) + "/" + std::to_string(mutants) + " mutants rejected";
	return o;
}

const char* corpus[] = {
	"E(x) = 2",
	"E(x) = x",
	"E(E(x)) = 2",
	"x * E(x) = 1",
	"x^2 + y^2 = 1 & E(x) = y",
	"x+y>2 & E(x)=z",
	"x^2 + y^2 < 1 & x > 1/2",
	"E(x) = 3 & -1 < x & x < 1",
	"E(x) + E(y) = 1 & x - y = 1/4",
	"x^3 - x = 1/8 | E(x) < -1",
};

Outcome determinism()
{
	Outcome o;
	int sat = 0;
	for (const char* f : corpus) {
		std::string first;
		for (unsigned w : {1u, 4u, 8u}) {
			SearchConfig cfg;
			cfg.workers = w;
			SatReport r = solve_formula(Formula::parse(f), cfg);
			std::string doc = dump(report_json(r, cfg));
			if (w == 1) {
				first = doc;
				sat += r.status == Status::sat;
			} else if (doc != first) {
				o.fail(std::string("reports differ for \"") + f + "\" at " + std::to_string(w) + " workers");
			}
		}
	}
	if (o.pass)
		o.detail = "10 formulas (" + std::to_string(sat) + " SAT) identical at 1, 4, 8 workers";
	return o;
}

} // namespace

int main()
{
	struct Criterion {
		int id;
		const char* name;
		double limit;
		std::function<Outcome()> run;
	};
	const std::vector<Criterion> criteria = {
		{1, "Exp(-1) bracketing", 1, exp_brackets},
		{2, "growth inequalities", 5, growth},
		{3, "certified constants", 4, constants},
		{4, "Jacobian correctness", 30, jacobians},
		{5, "Sturm oracle equivalence", 60, sturm_agreement},
		{6, "normalization semantics", 120, normalization},
		{7, "dependence elimination", 2, dependence},
		{8, "augmentation", 2, augmentation},
		{9, "certificate audit", 30, audit},
		{10, "determinism", 120, determinism},
	};
	int failed = 0;
	for (const auto& c : criteria) {
		auto t0 = std::chrono::steady_clock::now();
		Outcome o;
		try {
			o = c.run();
		} catch (const std::exception& e) {
			o.fail(std::string("exception: ") + e.what());
		}
		std::chrono::duration<double> dt = std::chrono::steady_clock::now() - t0;
		if (dt.count() > c.limit)
			o.fail("took " + std::to_string(dt.count()) + " s, limit " + std::to_string(c.limit) + " s");
		char secs[32];
		std::snprintf(secs, sizeof secs, "%.2f s", dt.count());
		std::cout << "criterion " << c.id << " " << (o.pass ? "PASS" : "FAIL") << "  " << c.name << "  (" << secs
		          << ")  " << o.detail << std::endl;
		failed += !o.pass;
	}
	std::cout << (failed ? "acceptance: FAIL (" + std::to_string(failed) + " criteria)" : "acceptance: PASS")
	          << std::endl;
	return failed ? 1 : 0;
}
