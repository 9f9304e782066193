// SPDX-License-Identifier: Apache-2.0
#include "kkit/cli.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

#include <CLI11.hpp>

#include "kkit/errors.hpp"
#include "kkit/serialize.hpp"
#include "kkit/text.hpp"

namespace kkit::cli {

namespace {

struct UsageError : Error {
	using Error::Error;
};

std::string read_input(const std::string& path)
{
	if (path == "-")
		return {std::istreambuf_iterator<char>(std::cin), {}};
	std::ifstream in(path, std::ios::binary);
	if (!in)
		throw UsageError("cannot read '" + path + "'");
	return {std::istreambuf_iterator<char>(in), {}};
}

// A box argument is either a file or the box text itself.
std::string box_text(const std::string& arg)
{
	std::ifstream in(arg, std::ios::binary);
	if (in)
		return {std::istreambuf_iterator<char>(in), {}};
	return arg;
}

json parse_json(const std::string& text, const std::string& what)
{
	try {
		return json::parse(text);
	} catch (const json::parse_error& e) {
		throw FormatError(what + ": " + e.what());
	}
}

struct Settings {
	std::string radius = "8";
	int depth = 48;
	Precision precision = 4096;
	Precision start_precision = 64;
	unsigned workers = 0;
	std::uint64_t seed = 1;
	std::size_t max_boxes = 200000;

	SearchConfig config() const
	{
		SearchConfig c;
		try {
			c.radius = Dyadic::parse(radius, 64, Round::up);
		} catch (const std::exception& e) {
			throw UsageError("bad radius '" + radius + "': " + e.what());
		}
		c.max_depth = depth;
		c.max_precision = precision;
		c.start_precision = start_precision;
		c.workers = workers;
		c.seed = seed;
		c.max_boxes = max_boxes;
		try {
			c.validate();
		} catch (const std::invalid_argument& e) {
			throw UsageError(e.what());
		}
		return c;
	}

	CertifyBudget budget() const
	{
		if (start_precision < 2 || precision < start_precision)
			throw UsageError("precision must be at least the start precision");
		CertifyBudget b;
		b.start_precision = start_precision;
		b.max_precision = precision;
		return b;
	}
};

void precision_flags(CLI::App* cmd, Settings& s)
{
	cmd->add_option("--precision", s.precision, "Precision cap in bits")->envname("KKIT_PRECISION");
	cmd->add_option("--start-precision", s.start_precision, "Starting precision in bits")
		->envname("KKIT_START_PRECISION");
}

void search_flags(CLI::App* cmd, Settings& s)
{
	precision_flags(cmd, s);
	cmd->add_option("--radius", s.radius, "Search radius for unbounded coordinates")->envname("KKIT_RADIUS");
	cmd->add_option("--depth", s.depth, "Maximum subdivision depth")->envname("KKIT_DEPTH");
	cmd->add_option("--workers", s.workers, "Worker threads (0 = logical cores)")->envname("KKIT_WORKERS");
	cmd->add_option("--seed", s.seed, "Seed for witness-slice centers")->envname("KKIT_SEED");
	cmd->add_option("--max-boxes", s.max_boxes, "Box budget per paving")->envname("KKIT_MAX_BOXES");
}

int exit_for(Status s)
{
	return s == Status::unknown ? unknown : ok;
}

class Runner {
public:
	Runner(std::ostream& out, std::ostream& err) : out_(out), err_(err) {}

	int run(const std::vector<std::string>& args)
	{
		CLI::App app("Certified zeros of restricted-exponential systems", "kkit");
		app.require_subcommand(1);
		app.fallthrough();
		app.set_help_all_flag("--help-all", "Expand all help");

		std::string output;
		app.add_option("-o,--output", output, "Write the result to a file instead of stdout");

		Settings s;
		std::string file, expr, system, box, cert, relation;
		bool disjuncts = false, timing = false;

		auto* parse = app.add_subcommand("parse", "Echo a formula in canonical form");
		parse->add_option("file", file, "Formula file ('-' for stdin)");
		parse->add_option("-e,--expr", expr, "Formula text");
		parse->add_flag("--disjuncts", disjuncts, "Also print the flattened case split");

		auto* jac = app.add_subcommand("jac", "Print the formal Jacobian of a system");
		jac->add_option("--system", system, "System file")->required();

		auto* certify = app.add_subcommand("certify", "Certify a regular zero in a box");
		certify->add_option("--system", system, "System file")->required();
		certify->add_option("--box", box, "Box file or JSON text")->required();
		precision_flags(certify, s);

		auto* solve = app.add_subcommand("solve", "Search a formula or a square system");
		auto* f_opt = solve->add_option("--formula", file, "Formula file");
		auto* e_opt = solve->add_option("-e,--expr", expr, "Formula text");
		auto* s_opt = solve->add_option("--system", system, "System file");
		solve->add_option("--box", box, "Search box for --system")->needs(s_opt);
		f_opt->excludes(e_opt)->excludes(s_opt);
		e_opt->excludes(s_opt);
		solve->add_flag("--timing", timing, "Add wall-clock time to the report");
		search_flags(solve, s);

		auto* reduce = app.add_subcommand("reduce", "Eliminate an exponential dependence");
		reduce->add_option("--system", system, "System file")->required();
		reduce->add_option("--cert", cert, "Certificate file")->required();
		reduce->add_option("--relation", relation, "Relation \"d;k1,...;g\"")->required();

		auto* check = app.add_subcommand("check", "Re-verify a certificate");
		check->add_option("--cert", cert, "Certificate file")->required();

		std::vector<std::string> reversed(args.rbegin(), args.rend());
		try {
			app.parse(reversed);
		} catch (const CLI::ParseError& e) {
			int code = app.exit(e, out_, err_);
			return code == 0 ? ok : usage;
		}

		std::ostringstream doc;
		int code = ok;
		try {
			if (parse->parsed())
				code = do_parse(doc, file, expr, disjuncts);
			else if (jac->parsed())
				code = do_jac(doc, system);
			else if (certify->parsed())
				code = do_certify(doc, system, box, s);
			else if (solve->parsed())
				code = do_solve(doc, file, expr, system, box, s, timing);
			else if (reduce->parsed())
				code = do_reduce(doc, system, cert, relation);
			else
				code = do_check(doc, cert);
		} catch (const UsageError& e) {
			err_ << "kkit: " << e.what() << "\n";
			return usage;
		} catch (const ReductionError& e) {
			err_ << "kkit: reduction failed: " << e.what() << "\n";
			return certification_failed;
		} catch (const Error& e) {
			// ParseError, FormatError, ShapeError: the input is malformed.
			err_ << "kkit: " << e.what() << "\n";
			return parse_error;
		}

		if (output.empty()) {
			out_ << doc.str();
		} else {
			std::ofstream f(output, std::ios::binary);
			if (!(f << doc.str())) {
				err_ << "kkit: cannot write '" << output << "'\n";
				return usage;
			}
		}
		return code;
	}

private:
	static std::string formula_text(const std::string& file, const std::string& expr)
	{
		if (!expr.empty())
			return expr;
		if (file.empty())
			throw UsageError("give a formula file or --expr");
		return read_input(file);
	}

	int do_parse(std::ostream& doc, const std::string& file, const std::string& expr, bool disjuncts)
	{
		Formula f = Formula::parse(formula_text(file, expr));
		doc << f.str() << "\n";
		if (disjuncts) {
			Flattened flat = flatten(f);
			doc << "flattened: " << flat.combined().str() << "\n";
			for (const auto& d : normalize_complexity(flat.combined()))
				doc << "disjunct: " << d.str() << "\n";
		}
		return ok;
	}

	int do_jac(std::ostream& doc, const std::string& path)
	{
		KhovanskiiSystem sys = parse_system(read_input(path));
		const PolyMatrix& m = sys.jacobian();
		doc << "shape: " << sys.shape().ell << " " << sys.shape().n << "\n";
		for (std::size_t i = 0; i < m.size(); i++)
			for (std::size_t j = 0; j < m[i].size(); j++)
				doc << "d f" << i + 1 << " / d x" << j + 1 << " = " << m[i][j].str() << "\n";
		doc << "det = " << determinant(m, sys.shape()).str() << "\n";
		return ok;
	}

	int do_certify(std::ostream& doc, const std::string& path, const std::string& box, const Settings& s)
	{
		auto sys = std::make_shared<KhovanskiiSystem>(parse_system(read_input(path)));
		Box b = parse_box(box_text(box), sys->shape());
		CertifyResult r = certify_regular_zero(sys, b, s.budget());
		if (const auto* f = std::get_if<Failure>(&r)) {
			doc << dump({{"status", "failed"}, {"reason", to_string(f->reason)}, {"detail", f->detail}});
			return certification_failed;
		}
		doc << dump(certificate_json(std::get<Certificate>(r)));
		return ok;
	}

	int do_solve(std::ostream& doc, const std::string& file, const std::string& expr, const std::string& system,
	             const std::string& box, const Settings& s, bool timing)
	{
		SearchConfig cfg = s.config();
		auto start = std::chrono::steady_clock::now();
		json j;
		int code;
		if (!system.empty()) {
			auto sys = std::make_shared<KhovanskiiSystem>(parse_system(read_input(system)));
			Box region = box.empty() ? default_region(sys->shape(), cfg) : parse_box(box_text(box), sys->shape());
			SolveReport r = solve_square(sys, region, cfg);
			j = report_json(r, cfg);
			code = exit_for(r.status);
		} else {
			SatReport r = solve_formula(Formula::parse(formula_text(file, expr)), cfg);
			j = report_json(r, cfg);
			code = exit_for(r.status);
		}
		if (timing) {
			std::chrono::duration<double> dt = std::chrono::steady_clock::now() - start;
			j["timing"] = {{"seconds", dt.count()}, {"workers", cfg.worker_count()}};
		}
		doc << dump(j);
		return code;
	}

	int do_reduce(std::ostream& doc, const std::string& system, const std::string& cert, const std::string& relation)
	{
		KhovanskiiSystem sys = parse_system(read_input(system));
		Certificate c = certificate_from_json(parse_json(read_input(cert), "certificate"));
		const auto* cs = dynamic_cast<const KhovanskiiSystem*>(c.system.get());
		if (!cs || !(*cs == sys))
			throw UsageError("certificate was issued for a different system");
		if (!check_certificate(c)) {
			err_ << "kkit: certificate does not check\n";
			return certification_failed;
		}
		DependenceRelation rel = [&] {
			try {
				return DependenceRelation::parse(relation);
			} catch (const ParseError&) {
				throw;
			} catch (const std::exception& e) {
				throw UsageError(std::string("bad relation: ") + e.what());
			}
		}();
		doc << dump(reduced_json(eliminate_dependence(sys, c, rel)));
		return ok;
	}

	int do_check(std::ostream& doc, const std::string& cert)
	{
		Certificate c = certificate_from_json(parse_json(read_input(cert), "certificate"));
		bool good = check_certificate(c);
		doc << (good ? "ok" : "rejected") << "\n";
		return good ? ok : certification_failed;
	}

	std::ostream& out_;
	std::ostream& err_;
};

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
	return Runner(out, err).run(args);
}

} // namespace kkit::cli
