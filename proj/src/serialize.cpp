// SPDX-License-Identifier: Apache-2.0
#include "kkit/serialize.hpp"

#include <memory>
#include <utility>
#include <vector>

#include "kkit/errors.hpp"
#include "kkit/text.hpp"

namespace kkit {

namespace {

json shape_json(const Shape& s)
{
	return json::array({s.ell, s.n});
}

Shape shape_from_json(const json& j)
{
	if (!j.is_array() || j.size() != 2 || !j[0].is_number_unsigned() || !j[1].is_number_unsigned())
		throw FormatError("shape must be [ell, n]");
	return Shape(j[0].get<std::size_t>(), j[1].get<std::size_t>());
}

const json& field(const json& j, const char* name)
{
	if (!j.is_object() || !j.contains(name))
		throw FormatError(std::string("missing field '") + name + "'");
	return j.at(name);
}

Rational rational_from_json(const json& j)
{
	if (!j.is_string())
		throw FormatError("expected a rational string");
	try {
		return Rational::parse(j.get<std::string>());
	} catch (const std::exception& e) {
		throw FormatError(std::string("bad rational: ") + e.what());
	}
}

json genexp_json(const GenExpSystem& sys)
{
	json eqs = json::array();
	for (const auto& p : sys.equations()) {
		json terms = json::array();
		for (const auto& m : p.monomials()) {
			json lambda = json::array();
			for (const auto& l : m.lambda)
				lambda.push_back(l.str());
			terms.push_back({{"coeff", m.coeff.str()}, {"xpow", m.xpow}, {"lambda", lambda}, {"offset", m.offset.str()}});
		}
		eqs.push_back(std::move(terms));
	}
	return {{"shape", shape_json(sys.shape())}, {"equations", eqs}, {"text", sys.str()}};
}

std::shared_ptr<const GenExpSystem> genexp_from_json(const json& j)
{
	Shape shape = shape_from_json(field(j, "shape"));
	const json& eqs = field(j, "equations");
	if (!eqs.is_array())
		throw FormatError("equations must be an array");
	std::vector<GenExpPolynomial> polys;
	for (const auto& e : eqs) {
		if (!e.is_array())
			throw FormatError("equation must be an array of monomials");
		std::vector<GenExpMonomial> terms;
		for (const auto& t : e) {
			GenExpMonomial m;
			m.coeff = rational_from_json(field(t, "coeff"));
			const json& xp = field(t, "xpow");
			const json& la = field(t, "lambda");
			if (!xp.is_array() || xp.size() != shape.n || !la.is_array() || la.size() != shape.n)
				throw FormatError("monomial of the wrong length");
			for (const auto& v : xp) {
				if (!v.is_number_unsigned())
					throw FormatError("exponent must be a non-negative integer");
				m.xpow.push_back(v.get<unsigned>());
			}
			for (const auto& v : la)
				m.lambda.push_back(rational_from_json(v));
			m.offset = rational_from_json(field(t, "offset"));
			terms.push_back(std::move(m));
		}
		polys.emplace_back(shape.n, std::move(terms));
	}
	try {
		return std::make_shared<GenExpSystem>(shape, std::move(polys));
	} catch (const ShapeError& e) {
		throw FormatError(e.what());
	}
}

json system_json(const SquareSystem& sys)
{
	if (const auto* g = dynamic_cast<const GenExpSystem*>(&sys))
		return genexp_json(*g);
	return sys.str();
}

json matrix_json(const DyadicMatrix& m)
{
	json out = json::array();
	for (const auto& row : m) {
		json r = json::array();
		for (const auto& d : row)
			r.push_back(to_json(d));
		out.push_back(std::move(r));
	}
	return out;
}

std::vector<Dyadic> dyadics_from_json(const json& j, std::size_t n)
{
	if (!j.is_array() || j.size() != n)
		throw FormatError("expected an array of " + std::to_string(n) + " numbers");
	std::vector<Dyadic> out;
	for (const auto& d : j)
		out.push_back(dyadic_from_json(d));
	return out;
}

json boxes_json(const std::vector<Box>& boxes)
{
	json out = json::array();
	for (const auto& b : boxes)
		out.push_back(to_json(b));
	return out;
}

json decimal_json(const std::vector<Interval>& v)
{
	json out = json::array();
	for (const auto& x : v)
		out.push_back(x.decimal(17));
	return out;
}

json disjunct_json(const DisjunctReport& d)
{
	json j = {{"disjunct", d.disjunct}, {"vars", d.vars}, {"status", to_string(d.status)}};
	if (!d.clause.empty())
		j["clause"] = d.clause;
	if (d.certificate)
		j["certificate"] = certificate_json(*d.certificate);
	if (!d.witness.empty()) {
		json w = json::array();
		for (const auto& x : d.witness)
			w.push_back(to_json(x));
		j["witness"] = w;
	}
	if (!d.checks.empty()) {
		json c = json::array();
		for (const auto& v : d.checks)
			c.push_back({{"condition", v.condition}, {"value", to_json(v.value)}});
		j["checks"] = c;
	}
	if (!d.note.empty())
		j["note"] = d.note;
	j["excluded"] = d.excluded;
	j["unknown"] = d.unknown;
	return j;
}

// Box text is read through the SAX interface so that decimal literals reach
// us as written instead of as doubles.
struct Node {
	bool array = false;
	std::string text;
	std::vector<Node> items;
};

class BoxReader : public nlohmann::json_sax<nlohmann::json> {
public:
	Node root;

	bool null() override { return fail("null"); }
	bool boolean(bool) override { return fail("boolean"); }
	bool number_integer(number_integer_t v) override { return leaf(std::to_string(v)); }
	bool number_unsigned(number_unsigned_t v) override { return leaf(std::to_string(v)); }
	bool number_float(number_float_t, const string_t& s) override { return leaf(s); }
	bool string(string_t& s) override { return leaf(s); }
	bool binary(binary_t&) override { return fail("binary"); }
	bool start_object(std::size_t) override { return fail("object"); }
	bool key(string_t&) override { return fail("object"); }
	bool end_object() override { return fail("object"); }
	bool start_array(std::size_t) override
	{
		Node n;
		n.array = true;
		stack_.push_back(std::move(n));
		return true;
	}
	bool end_array() override
	{
		Node n = std::move(stack_.back());
		stack_.pop_back();
		return place(std::move(n));
	}
	bool parse_error(std::size_t pos, const std::string&, const nlohmann::detail::exception& e) override
	{
		error = e.what() + std::string(" at byte ") + std::to_string(pos);
		return false;
	}

	std::string error;

private:
	bool fail(const char* what)
	{
		error = std::string("unexpected ") + what + " in box";
		return false;
	}
	bool leaf(std::string s)
	{
		Node n;
		n.text = std::move(s);
		return place(std::move(n));
	}
	bool place(Node n)
	{
		if (stack_.empty())
			root = std::move(n);
		else
			stack_.back().items.push_back(std::move(n));
		return true;
	}

	std::vector<Node> stack_;
};

Dyadic endpoint(const Node& n, Precision prec, Round dir)
{
	if (n.array)
		throw FormatError("box endpoint must be a number");
	try {
		return Dyadic::parse(n.text, prec, dir);
	} catch (const std::exception& e) {
		throw FormatError("bad box endpoint '" + n.text + "': " + e.what());
	}
}

bool is_pair(const Node& n)
{
	return n.array && n.items.size() == 2 && !n.items[0].array && !n.items[1].array;
}

} // namespace

json to_json(const Dyadic& d)
{
	return d.str();
}

json to_json(const Interval& x)
{
	return json::array({x.lo().str(), x.hi().str()});
}

json to_json(const Box& b)
{
	json out = json::array();
	for (const auto& x : b.coords())
		out.push_back(to_json(x));
	return out;
}

Dyadic dyadic_from_json(const json& j)
{
	if (!j.is_string())
		throw FormatError("expected a dyadic string");
	try {
		return Dyadic::parse(j.get<std::string>());
	} catch (const std::exception& e) {
		throw FormatError(std::string("bad dyadic: ") + e.what());
	}
}

Interval interval_from_json(const json& j)
{
	if (!j.is_array() || j.size() != 2)
		throw FormatError("interval must be a [lo, hi] pair");
	Dyadic lo = dyadic_from_json(j[0]), hi = dyadic_from_json(j[1]);
	if (hi < lo)
		throw FormatError("interval with lo > hi");
	return {lo, hi};
}

Box box_from_json(const json& j, const Shape& shape)
{
	if (!j.is_array() || j.size() != shape.n)
		throw FormatError("box must have " + std::to_string(shape.n) + " coordinates");
	std::vector<Interval> coords;
	for (const auto& x : j)
		coords.push_back(interval_from_json(x));
	return {shape, coords};
}

json config_json(const SearchConfig& cfg)
{
	// workers is left out: it never changes a report.
	return {{"radius", to_json(cfg.radius)},         {"max_depth", cfg.max_depth},
	        {"start_precision", cfg.start_precision}, {"max_precision", cfg.max_precision},
	        {"seed", cfg.seed},                       {"max_boxes", cfg.max_boxes}};
}

json certificate_json(const Certificate& c)
{
	json entries = json::array();
	for (const auto& row : c.jacobian.entries) {
		json r = json::array();
		for (const auto& x : row)
			r.push_back(to_json(x));
		entries.push_back(std::move(r));
	}
	json mid = json::array();
	for (const auto& d : c.midpoint)
		mid.push_back(to_json(d));
	return {{"system", system_json(*c.system)},
	        {"box", to_json(c.box)},
	        {"midpoint", mid},
	        {"preconditioner", matrix_json(c.preconditioner)},
	        {"krawczyk_image", to_json(c.krawczyk_image)},
	        {"jacobian", {{"entries", entries}, {"det", to_json(c.jacobian.det)}}},
	        {"precision", c.precision},
	        {"zero", decimal_json(c.zero().coords())}};
}

Certificate certificate_from_json(const json& j)
{
	Certificate c;
	const json& sys = field(j, "system");
	if (sys.is_string())
		c.system = std::make_shared<KhovanskiiSystem>(parse_system(sys.get<std::string>()));
	else
		c.system = genexp_from_json(sys);
	const Shape& shape = c.system->shape();
	std::size_t n = shape.n;

	c.box = box_from_json(field(j, "box"), shape);
	c.midpoint = dyadics_from_json(field(j, "midpoint"), n);
	const json& pre = field(j, "preconditioner");
	if (!pre.is_array() || pre.size() != n)
		throw FormatError("preconditioner must be " + std::to_string(n) + " rows");
	for (const auto& row : pre)
		c.preconditioner.push_back(dyadics_from_json(row, n));
	c.krawczyk_image = box_from_json(field(j, "krawczyk_image"), shape);

	const json& jac = field(j, "jacobian");
	const json& entries = field(jac, "entries");
	if (!entries.is_array() || entries.size() != n)
		throw FormatError("jacobian must be " + std::to_string(n) + " rows");
	for (const auto& row : entries) {
		if (!row.is_array() || row.size() != n)
			throw FormatError("jacobian row of the wrong length");
		std::vector<Interval> r;
		for (const auto& x : row)
			r.push_back(interval_from_json(x));
		c.jacobian.entries.push_back(std::move(r));
	}
	c.jacobian.det = interval_from_json(field(jac, "det"));

	const json& prec = field(j, "precision");
	if (!prec.is_number_integer() || prec.get<Precision>() < 2)
		throw FormatError("precision must be an integer >= 2");
	c.precision = prec.get<Precision>();
	return c;
}

json report_json(const SolveReport& r, const SearchConfig& cfg)
{
	json certs = json::array();
	for (const auto& c : r.certificates)
		certs.push_back(certificate_json(c));
	return {{"status", to_string(r.status)}, {"certificates", certs},    {"cells", boxes_json(r.cells)},
	        {"excluded", boxes_json(r.excluded)}, {"unknown", boxes_json(r.unknown)}, {"config", config_json(cfg)}};
}

json report_json(const SatReport& r, const SearchConfig& cfg)
{
	json j = {{"status", to_string(r.status)}, {"vars", r.vars}};
	if (!r.witness.empty()) {
		json w = json::array();
		for (const auto& x : r.witness)
			w.push_back(to_json(x));
		j["witness"] = w;
		j["witness_decimal"] = decimal_json(r.witness);
	}
	json ds = json::array();
	for (const auto& d : r.disjuncts)
		ds.push_back(disjunct_json(d));
	j["disjuncts"] = ds;
	j["config"] = config_json(cfg);
	return j;
}

json reduced_json(const ReducedSystem& r)
{
	json j = {{"original_shape", shape_json(r.original)},
	          {"relation", r.relation.str()},
	          {"dropped", r.dropped},
	          {"system", genexp_json(*r.system)},
	          {"plain", r.plain ? json(r.plain->str()) : json(nullptr)},
	          {"certificate", certificate_json(r.certificate)},
	          {"original_zero", to_json(r.to_original(r.certificate.zero(), r.certificate.precision))}};
	return j;
}

Box parse_box(std::string_view text, const Shape& shape, Precision prec)
{
	BoxReader reader;
	if (!nlohmann::json::sax_parse(text, &reader))
		throw FormatError(reader.error.empty() ? "malformed box" : reader.error);
	const Node& root = reader.root;
	std::vector<const Node*> pairs;
	if (shape.n == 1 && is_pair(root))
		pairs.push_back(&root);
	else if (root.array)
		for (const auto& item : root.items)
			pairs.push_back(&item);
	if (pairs.size() != shape.n)
		throw FormatError("box must have " + std::to_string(shape.n) + " coordinates");
	std::vector<Interval> coords;
	for (const Node* p : pairs) {
		if (!is_pair(*p))
			throw FormatError("box coordinate must be a [lo, hi] pair");
		Dyadic lo = endpoint(p->items[0], prec, Round::down);
		Dyadic hi = endpoint(p->items[1], prec, Round::up);
		if (hi < lo)
			throw FormatError("box coordinate with lo > hi");
		coords.emplace_back(lo, hi);
	}
	return {shape, coords};
}

std::string dump(const json& j)
{
	return j.dump(2) + "\n";
}

} // namespace kkit
