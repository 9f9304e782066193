// SPDX-License-Identifier: Apache-2.0
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "kkit/cli.hpp"
#include "kkit/errors.hpp"
#include "kkit/serialize.hpp"
#include "kkit/text.hpp"

namespace py = pybind11;
using namespace kkit;

namespace {

Dyadic radius_of(const py::object& r)
{
	if (py::isinstance<py::str>(r))
		return Dyadic::parse(r.cast<std::string>(), 64, Round::up);
	if (py::isinstance<py::int_>(r))
		return Dyadic::parse(py::str(r).cast<std::string>());
	return Dyadic::from_double(r.cast<double>());
}

SearchConfig make_config(const py::object& radius, int depth, Precision precision, unsigned workers,
                         std::uint64_t seed, std::size_t max_boxes)
{
	SearchConfig c;
	c.radius = radius_of(radius);
	c.max_depth = depth;
	c.max_precision = precision;
	c.workers = workers;
	c.seed = seed;
	c.max_boxes = max_boxes;
	c.validate();
	return c;
}

std::string certify(const std::string& system, const std::string& box, Precision start, Precision cap)
{
	auto sys = std::make_shared<KhovanskiiSystem>(parse_system(system));
	Box b = parse_box(box, sys->shape());
	CertifyBudget budget;
	budget.start_precision = start;
	budget.max_precision = cap;
	CertifyResult r;
	{
		py::gil_scoped_release nogil;
		r = certify_regular_zero(sys, b, budget);
	}
	if (const auto* f = std::get_if<Failure>(&r))
		return json({{"status", "failed"}, {"reason", to_string(f->reason)}, {"detail", f->detail}}).dump();
	return certificate_json(std::get<Certificate>(r)).dump();
}

std::string solve(const std::string& formula, const SearchConfig& cfg)
{
	Formula f = Formula::parse(formula);
	SatReport r;
	{
		py::gil_scoped_release nogil;
		r = solve_formula(f, cfg);
	}
	return report_json(r, cfg).dump();
}

std::string solve_system(const std::string& system, const std::optional<std::string>& box, const SearchConfig& cfg)
{
	auto sys = std::make_shared<KhovanskiiSystem>(parse_system(system));
	Box region = box ? parse_box(*box, sys->shape()) : default_region(sys->shape(), cfg);
	SolveReport r;
	{
		py::gil_scoped_release nogil;
		r = solve_square(sys, region, cfg);
	}
	return report_json(r, cfg).dump();
}

std::string reduce(const std::string& system, const std::string& cert, const std::string& relation)
{
	KhovanskiiSystem sys = parse_system(system);
	Certificate c = certificate_from_json(json::parse(cert));
	if (!check_certificate(c))
		throw ReductionError("certificate does not check");
	return reduced_json(eliminate_dependence(sys, c, DependenceRelation::parse(relation))).dump();
}

} // namespace

PYBIND11_MODULE(_kkit, m)
{
	m.doc() = "Native core of kkit. Use the kkit package, which wraps these in dicts.";

	auto base = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
	py::register_exception<ParseError>(m, "ParseError", base.ptr());
	py::register_exception<FormatError>(m, "FormatError", base.ptr());
	py::register_exception<ShapeError>(m, "ShapeError", base.ptr());
	py::register_exception<ReductionError>(m, "ReductionError", base.ptr());

	m.def(
		"parse_formula", [](const std::string& text) { return Formula::parse(text).str(); }, py::arg("text"),
		"Canonical text of a formula.");
	m.def(
		"disjuncts",
		[](const std::string& text) {
			std::vector<std::string> out;
			for (const auto& d : normalize_complexity(flatten(Formula::parse(text)).combined()))
				out.push_back(d.str());
			return out;
		},
		py::arg("text"), "Case split of the flattened formula, all-inside branch first.");
	m.def(
		"jacobian",
		[](const std::string& system) {
			KhovanskiiSystem s = parse_system(system);
			std::vector<std::vector<std::string>> out;
			for (const auto& row : s.jacobian()) {
				out.emplace_back();
				for (const auto& p : row)
					out.back().push_back(p.str());
			}
			return out;
		},
		py::arg("system"), "Formal Jacobian entries of a system text.");

	py::class_<SearchConfig>(m, "SearchConfig");
	m.def("make_config", &make_config, py::arg("radius") = 8, py::arg("depth") = 48, py::arg("precision") = 4096,
	      py::arg("workers") = 0, py::arg("seed") = 1, py::arg("max_boxes") = 200000);

	m.def("certify", &certify, py::arg("system"), py::arg("box"), py::arg("start_precision") = 64,
	      py::arg("max_precision") = 4096);
	m.def(
		"check", [](const std::string& cert) { return check_certificate(certificate_from_json(json::parse(cert))); },
		py::arg("certificate"));
	m.def("solve", &solve, py::arg("formula"), py::arg("config"));
	m.def("solve_system", &solve_system, py::arg("system"), py::arg("box"), py::arg("config"));
	m.def("reduce", &reduce, py::arg("system"), py::arg("certificate"), py::arg("relation"));
	m.def(
		"run",
		[](const std::vector<std::string>& args) {
			std::ostringstream out, err;
			int code;
			{
				py::gil_scoped_release nogil;
				code = cli::run(args, out, err);
			}
			return py::make_tuple(code, out.str(), err.str());
		},
		py::arg("args"), "Runs the command line with the given arguments; returns (status, stdout, stderr).");
}
