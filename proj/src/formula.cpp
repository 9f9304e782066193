/* SPDX-License-Identifier: Apache-2.0
 *
 * Copyright 2026 The kkit Authors
 */

#include "kkit/formula.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <set>
#include <stdexcept>

#include "kkit/enclose.hpp"
#include "kkit/errors.hpp"

namespace kkit {

Term make_constant(const Rational& c)
{
	auto n = std::make_shared<TermNode>();
	n->kind = TermKind::constant;
	n->value = c;
	return n;
}

Term make_variable(std::size_t index)
{
	auto n = std::make_shared<TermNode>();
	n->kind = TermKind::variable;
	n->var = index;
	return n;
}

Term make_binary(TermKind kind, Term a, Term b)
{
	auto n = std::make_shared<TermNode>();
	n->kind = kind;
	n->a = std::move(a);
	n->b = std::move(b);
	return n;
}

Term make_neg(Term a)
{
	auto n = std::make_shared<TermNode>();
	n->kind = TermKind::neg;
	n->a = std::move(a);
	return n;
}

Term make_pow(Term a, unsigned k)
{
	auto n = std::make_shared<TermNode>();
	n->kind = TermKind::pow;
	n->a = std::move(a);
	n->exponent = k;
	return n;
}

Term make_texp(Term a)
{
	auto n = std::make_shared<TermNode>();
	n->kind = TermKind::texp;
	n->a = std::move(a);
	return n;
}

bool same_term(const Term& a, const Term& b)
{
	if (a == b)
		return true;
	if (!a || !b || a->kind != b->kind)
		return false;
	switch (a->kind) {
	case TermKind::constant:
		return a->value == b->value;
	case TermKind::variable:
		return a->var == b->var;
	case TermKind::pow:
		return a->exponent == b->exponent && same_term(a->a, b->a);
	case TermKind::neg:
	case TermKind::texp:
		return same_term(a->a, b->a);
	default:
		return same_term(a->a, b->a) && same_term(a->b, b->b);
	}
}

std::string to_string(Rel r)
{
	switch (r) {
	case Rel::eq: return "=";
	case Rel::ne: return "!=";
	case Rel::lt: return "<";
	case Rel::le: return "<=";
	case Rel::gt: return ">";
	case Rel::ge: return ">=";
	}
	return "?";
}

Rel negate(Rel r)
{
	switch (r) {
	case Rel::eq: return Rel::ne;
	case Rel::ne: return Rel::eq;
	case Rel::lt: return Rel::ge;
	case Rel::le: return Rel::gt;
	case Rel::gt: return Rel::le;
	case Rel::ge: return Rel::lt;
	}
	return r;
}

FormulaTree make_atom(Atom a)
{
	auto n = std::make_shared<FormulaNode>();
	n->kind = Connective::atom;
	n->atom = std::move(a);
	return n;
}

namespace {

FormulaTree make_nary(Connective kind, std::vector<FormulaTree> children)
{
	if (children.empty())
		throw std::invalid_argument("empty connective");
	std::vector<FormulaTree> flat;
	for (auto& c : children) {
		if (c->kind == kind)
			flat.insert(flat.end(), c->children.begin(), c->children.end());
		else
			flat.push_back(std::move(c));
	}
	if (flat.size() == 1)
		return flat[0];
	auto n = std::make_shared<FormulaNode>();
	n->kind = kind;
	n->children = std::move(flat);
	return n;
}

} // namespace

FormulaTree make_and(std::vector<FormulaTree> children) { return make_nary(Connective::conj, std::move(children)); }
FormulaTree make_or(std::vector<FormulaTree> children) { return make_nary(Connective::disj, std::move(children)); }

// ---------------------------------------------------------------- printing

namespace {

int term_prec(const Term& t)
{
	switch (t->kind) {
	case TermKind::add:
	case TermKind::sub:
		return 1;
	case TermKind::mul:
		return 2;
	case TermKind::neg:
		return 3;
	case TermKind::pow:
		return 4;
	case TermKind::constant:
		if (t->value.sign() < 0)
			return 3;
		return t->value.is_integer() ? 5 : 4;
	default:
		return 5;
	}
}

void print_term(std::string& out, const Term& t, const std::vector<std::string>& vars, int min_prec)
{
	const bool paren = term_prec(t) < min_prec;
	if (paren)
		out += "(";
	switch (t->kind) {
	case TermKind::constant:
		out += t->value.str();
		break;
	case TermKind::variable:
		out += t->var < vars.size() ? vars[t->var] : "v" + std::to_string(t->var);
		break;
	case TermKind::add:
	case TermKind::sub:
		print_term(out, t->a, vars, 1);
		out += t->kind == TermKind::add ? " + " : " - ";
		print_term(out, t->b, vars, 2);
		break;
	case TermKind::mul:
		print_term(out, t->a, vars, 2);
		out += " * ";
		print_term(out, t->b, vars, 3);
		break;
	case TermKind::neg:
		out += "-";
		print_term(out, t->a, vars, 3);
		break;
	case TermKind::pow:
		print_term(out, t->a, vars, 5);
		out += "^" + std::to_string(t->exponent);
		break;
	case TermKind::texp:
		out += "E(";
		print_term(out, t->a, vars, 0);
		out += ")";
		break;
	}
	if (paren)
		out += ")";
}

void print_formula(std::string& out, const FormulaTree& f, const std::vector<std::string>& vars, bool nested)
{
	switch (f->kind) {
	case Connective::atom:
		out += atom_str(f->atom, vars);
		return;
	case Connective::conj:
		for (std::size_t i = 0; i < f->children.size(); i++) {
			if (i)
				out += " & ";
			print_formula(out, f->children[i], vars, true);
		}
		return;
	case Connective::disj:
		if (nested)
			out += "(";
		for (std::size_t i = 0; i < f->children.size(); i++) {
			if (i)
				out += " | ";
			print_formula(out, f->children[i], vars, true);
		}
		if (nested)
			out += ")";
		return;
	}
}

} // namespace

std::string term_str(const Term& t, const std::vector<std::string>& vars)
{
	std::string s;
	print_term(s, t, vars, 0);
	return s;
}

std::string atom_str(const Atom& a, const std::vector<std::string>& vars)
{
	return term_str(a.lhs, vars) + " " + to_string(a.rel) + " " + term_str(a.rhs, vars);
}

std::string Formula::str() const
{
	std::string s;
	print_formula(s, root, vars, false);
	return s;
}

// ----------------------------------------------------------------- parsing

namespace {

FormulaTree negate_tree(const FormulaTree& f)
{
	if (f->kind == Connective::atom)
		return make_atom({f->atom.lhs, negate(f->atom.rel), f->atom.rhs});
	std::vector<FormulaTree> c;
	for (const auto& ch : f->children)
		c.push_back(negate_tree(ch));
	return f->kind == Connective::conj ? make_or(std::move(c)) : make_and(std::move(c));
}

// formula := conj ('|' conj)*
// conj    := unary ('&' unary)*
// unary   := '!' unary | '(' formula ')' | term rel term
// term    := product (('+' | '-') product)*
// product := signed ('*' signed)*
// signed  := '-' signed | power
// power   := primary ('^' integer)?
// primary := integer ('/' integer)? | ident | 'E' '(' term ')' | '(' term ')'
class FormulaParser {
public:
	explicit FormulaParser(std::string_view src) : src_(src) {}

	Formula parse()
	{
		FormulaTree root = disj();
		skip();
		if (pos_ != src_.size())
			fail("unexpected '" + std::string(1, src_[pos_]) + "'");
		return {vars_, root};
	}

private:
	[[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, pos_); }

	void skip()
	{
		while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_])))
			pos_++;
	}

	bool peek(char c)
	{
		skip();
		return pos_ < src_.size() && src_[pos_] == c;
	}

	bool accept(char c)
	{
		if (!peek(c))
			return false;
		pos_++;
		return true;
	}

	void expect(char c)
	{
		if (!accept(c))
			fail(std::string("expected '") + c + "'");
	}

	FormulaTree disj()
	{
		std::vector<FormulaTree> c{conj()};
		while (accept('|'))
			c.push_back(conj());
		return make_or(std::move(c));
	}

	FormulaTree conj()
	{
		std::vector<FormulaTree> c{unary()};
		while (accept('&'))
			c.push_back(unary());
		return make_and(std::move(c));
	}

	FormulaTree unary()
	{
		skip();
		if (pos_ + 1 < src_.size() && src_[pos_] == '!' && src_[pos_ + 1] != '=') {
			pos_++;
			return negate_tree(unary());
		}
		if (peek('(')) {
			// either a parenthesized formula or an atom whose left side starts with '('
			const std::size_t start = pos_, nvars = vars_.size();
			try {
				return atom();
			} catch (const ParseError& as_atom) {
				pos_ = start;
				rollback(nvars);
				try {
					expect('(');
					FormulaTree f = disj();
					expect(')');
					return f;
				} catch (const ParseError& as_group) {
					throw as_group.position >= as_atom.position ? as_group : as_atom;
				}
			}
		}
		return atom();
	}

	void rollback(std::size_t nvars)
	{
		while (vars_.size() > nvars) {
			index_.erase(vars_.back());
			vars_.pop_back();
		}
	}

	FormulaTree atom()
	{
		Term lhs = term();
		Rel rel = relation();
		Term rhs = term();
		return make_atom({lhs, rel, rhs});
	}

	Rel relation()
	{
		skip();
		auto two = src_.substr(pos_, 2);
		if (two == "<=" || two == ">=" || two == "!=") {
			pos_ += 2;
			return two == "<=" ? Rel::le : two == ">=" ? Rel::ge : Rel::ne;
		}
		if (accept('='))
			return Rel::eq;
		if (accept('<'))
			return Rel::lt;
		if (accept('>'))
			return Rel::gt;
		fail("expected a comparison (= != < <= > >=)");
	}

	Term term()
	{
		Term acc = product();
		for (;;) {
			if (accept('+'))
				acc = make_binary(TermKind::add, acc, product());
			else if (accept('-'))
				acc = make_binary(TermKind::sub, acc, product());
			else
				return acc;
		}
	}

	Term product()
	{
		Term acc = signed_factor();
		while (accept('*'))
			acc = make_binary(TermKind::mul, acc, signed_factor());
		return acc;
	}

	Term signed_factor()
	{
		if (accept('-'))
			return make_neg(signed_factor());
		return power();
	}

	std::string digits()
	{
		std::size_t start = pos_;
		while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_])))
			pos_++;
		return std::string(src_.substr(start, pos_ - start));
	}

	Term power()
	{
		Term base = primary();
		if (accept('^')) {
			skip();
			std::string d = digits();
			if (d.empty())
				fail("expected a non-negative integer exponent");
			if (d.size() > 6)
				fail("exponent too large");
			base = make_pow(base, static_cast<unsigned>(std::stoul(d)));
		}
		return base;
	}

	Term primary()
	{
		skip();
		if (pos_ >= src_.size())
			fail("unexpected end of input");
		const char c = src_[pos_];
		if (std::isdigit(static_cast<unsigned char>(c))) {
			mpz_class num(digits());
			skip();
			if (pos_ < src_.size() && src_[pos_] == '/') {
				std::size_t save = pos_;
				pos_++;
				skip();
				std::string d = digits();
				if (d.empty()) {
					pos_ = save;
					fail("expected a denominator");
				}
				mpz_class den(d);
				if (den == 0)
					fail("zero denominator");
				return make_constant(Rational(num, den));
			}
			return make_constant(Rational(num));
		}
		if (c == '(') {
			pos_++;
			Term t = term();
			expect(')');
			return t;
		}
		if (std::isalpha(static_cast<unsigned char>(c))) {
			const std::size_t start = pos_;
			while (pos_ < src_.size() && std::isalnum(static_cast<unsigned char>(src_[pos_])))
				pos_++;
			std::string name(src_.substr(start, pos_ - start));
			if (name == "E") {
				expect('(');
				Term t = term();
				expect(')');
				return make_texp(t);
			}
			bool valid = std::islower(static_cast<unsigned char>(name[0])) &&
			             std::all_of(name.begin(), name.end(), [](char ch) {
				             return std::islower(static_cast<unsigned char>(ch)) ||
				                    std::isdigit(static_cast<unsigned char>(ch));
			             });
			if (!valid || peek('(')) {
				pos_ = start;
				fail("unknown identifier '" + name + "'");
			}
			return make_variable(variable(name));
		}
		fail("unexpected '" + std::string(1, c) + "'");
	}

	std::size_t variable(const std::string& name)
	{
		auto it = index_.find(name);
		if (it != index_.end())
			return it->second;
		vars_.push_back(name);
		index_[name] = vars_.size() - 1;
		return vars_.size() - 1;
	}

	std::string_view src_;
	std::size_t pos_ = 0;
	std::vector<std::string> vars_;
	std::map<std::string, std::size_t> index_;
};

} // namespace

Formula Formula::parse(std::string_view text) { return FormulaParser(text).parse(); }

// ----------------------------------------------------------------- flatten

namespace {

template <class F>
FormulaTree map_atoms(const FormulaTree& f, F&& fn)
{
	if (f->kind == Connective::atom)
		return fn(f->atom);
	std::vector<FormulaTree> c;
	for (const auto& ch : f->children)
		c.push_back(map_atoms(ch, fn));
	return f->kind == Connective::conj ? make_and(std::move(c)) : make_or(std::move(c));
}

template <class F>
void for_each_term(const Term& t, F&& fn)
{
	fn(t);
	if (t->a)
		for_each_term(t->a, fn);
	if (t->b)
		for_each_term(t->b, fn);
}

template <class F>
void for_each_atom(const FormulaTree& f, F&& fn)
{
	if (f->kind == Connective::atom)
		fn(f->atom);
	else
		for (const auto& c : f->children)
			for_each_atom(c, fn);
}

class Flattener {
public:
	explicit Flattener(const Formula& f) : vars_(f.vars), taken_(f.vars.begin(), f.vars.end()) {}

	Term rewrite(const Term& t)
	{
		switch (t->kind) {
		case TermKind::constant:
		case TermKind::variable:
			return t;
		case TermKind::neg:
			return make_neg(rewrite(t->a));
		case TermKind::pow:
			return make_pow(rewrite(t->a), t->exponent);
		case TermKind::texp: {
			Term arg = rewrite(t->a);
			if (arg->kind == TermKind::variable)
				return make_texp(arg);
			return make_texp(make_variable(fresh_for(arg)));
		}
		default:
			return make_binary(t->kind, rewrite(t->a), rewrite(t->b));
		}
	}

	std::vector<std::string> vars_;
	std::vector<Atom> definitions_;

private:
	std::size_t fresh_for(const Term& t)
	{
		std::string key = term_str(t, vars_);
		if (auto it = memo_.find(key); it != memo_.end())
			return it->second;
		std::string name;
		do
			name = "u" + std::to_string(++counter_);
		while (taken_.count(name));
		taken_.insert(name);
		vars_.push_back(name);
		std::size_t idx = vars_.size() - 1;
		memo_[key] = idx;
		definitions_.push_back({make_variable(idx), Rel::eq, t});
		return idx;
	}

	std::set<std::string> taken_;
	std::map<std::string, std::size_t> memo_;
	int counter_ = 0;
};

} // namespace

Flattened flatten(const Formula& f)
{
	Flattener fl(f);
	FormulaTree root = map_atoms(f.root, [&](const Atom& a) {
		Term l = fl.rewrite(a.lhs);
		Term r = fl.rewrite(a.rhs);
		return make_atom({l, a.rel, r});
	});
	return {{fl.vars_, root}, fl.definitions_};
}

Formula Flattened::combined() const
{
	std::vector<FormulaTree> c;
	for (const auto& d : definitions)
		c.push_back(make_atom(d));
	c.push_back(formula.root);
	return {formula.vars, make_and(std::move(c))};
}

// --------------------------------------------------------- case splitting

namespace {

// Renumbers variables and replaces texp(v) by 0 for v outside; constants are
// folded only where something was replaced, so untouched subterms print as
// they were written.
struct Substituted {
	Term t;
	bool changed;
};

Term fold(const Term& t)
{
	auto c = [](const Term& x) { return x->kind == TermKind::constant; };
	auto is = [&](const Term& x, long v) { return c(x) && x->value == Rational(v); };
	switch (t->kind) {
	case TermKind::add:
		if (c(t->a) && c(t->b))
			return make_constant(t->a->value + t->b->value);
		if (is(t->a, 0))
			return t->b;
		if (is(t->b, 0))
			return t->a;
		return t;
	case TermKind::sub:
		if (c(t->a) && c(t->b))
			return make_constant(t->a->value - t->b->value);
		if (is(t->b, 0))
			return t->a;
		if (is(t->a, 0))
			return fold(make_neg(t->b));
		return t;
	case TermKind::mul:
		if (c(t->a) && c(t->b))
			return make_constant(t->a->value * t->b->value);
		if (is(t->a, 0) || is(t->b, 0))
			return make_constant(0);
		if (is(t->a, 1))
			return t->b;
		if (is(t->b, 1))
			return t->a;
		return t;
	case TermKind::neg:
		if (c(t->a))
			return make_constant(-t->a->value);
		return t;
	case TermKind::pow:
		if (c(t->a))
			return make_constant(t->a->value.pow(t->exponent));
		return t;
	default:
		return t;
	}
}

Substituted substitute(const Term& t, const std::vector<std::size_t>& remap, const std::vector<bool>& outside)
{
	switch (t->kind) {
	case TermKind::constant:
		return {t, false};
	case TermKind::variable:
		return {t->var == remap[t->var] ? t : make_variable(remap[t->var]), false};
	case TermKind::texp:
		if (outside[t->a->var])
			return {make_constant(0), true};
		return {make_texp(make_variable(remap[t->a->var])), false};
	case TermKind::neg: {
		auto a = substitute(t->a, remap, outside);
		Term r = make_neg(a.t);
		return {a.changed ? fold(r) : r, a.changed};
	}
	case TermKind::pow: {
		auto a = substitute(t->a, remap, outside);
		Term r = make_pow(a.t, t->exponent);
		return {a.changed ? fold(r) : r, a.changed};
	}
	default: {
		auto a = substitute(t->a, remap, outside);
		auto b = substitute(t->b, remap, outside);
		Term r = make_binary(t->kind, a.t, b.t);
		bool ch = a.changed || b.changed;
		return {ch ? fold(r) : r, ch};
	}
	}
}

std::vector<std::size_t> texp_arguments(const FormulaTree& f)
{
	std::set<std::size_t> args;
	for_each_atom(f, [&](const Atom& a) {
		for (const Term& side : {a.lhs, a.rhs})
			for_each_term(side, [&](const Term& t) {
				if (t->kind != TermKind::texp)
					return;
				if (t->a->kind != TermKind::variable)
					throw std::invalid_argument("normalize_complexity expects a flat formula (texp of variables only)");
				args.insert(t->a->var);
			});
	});
	return {args.begin(), args.end()};
}

} // namespace

std::vector<Disjunct> normalize_complexity(const Formula& flat)
{
	const std::vector<std::size_t> targs = texp_arguments(flat.root);
	const std::size_t k = targs.size(), nv = flat.vars.size();
	if (k > 20)
		throw Error("too many texp arguments for a case split");
	std::vector<Disjunct> out;
	for (std::size_t mask = 0; mask < (std::size_t(1) << k); mask++) {
		// bit for targs[0] is the most significant; a set bit means outside
		std::vector<bool> outside(nv, false), inside(nv, false);
		for (std::size_t j = 0; j < k; j++) {
			bool out_j = (mask >> (k - 1 - j)) & 1;
			(out_j ? outside : inside)[targs[j]] = true;
		}
		std::vector<std::size_t> order;
		for (std::size_t v = 0; v < nv; v++)
			if (inside[v])
				order.push_back(v);
		const std::size_t ell = order.size();
		for (std::size_t v = 0; v < nv; v++)
			if (!inside[v])
				order.push_back(v);
		std::vector<std::size_t> remap(nv);
		Disjunct d;
		for (std::size_t i = 0; i < nv; i++) {
			remap[order[i]] = i;
			d.vars.push_back(flat.vars[order[i]]);
		}
		d.ell = ell;
		for (std::size_t v : targs)
			d.guards.push_back({remap[v], inside[v]});
		d.matrix = map_atoms(flat.root, [&](const Atom& a) {
			return make_atom({substitute(a.lhs, remap, outside).t, a.rel, substitute(a.rhs, remap, outside).t});
		});
		out.push_back(std::move(d));
	}
	return out;
}

std::string Disjunct::str() const
{
	std::string s;
	for (const auto& g : guards) {
		s += vars[g.var] + (g.inside ? " in (-1,1)" : " notin (-1,1)");
		s += " & ";
	}
	std::string m;
	print_formula(m, matrix, vars, !guards.empty());
	return s + m;
}

std::vector<std::size_t> Disjunct::source_index(const Formula& source) const
{
	std::vector<std::size_t> idx;
	for (const auto& v : vars) {
		auto it = std::find(source.vars.begin(), source.vars.end(), v);
		if (it == source.vars.end())
			throw std::invalid_argument("disjunct variable '" + v + "' not in source formula");
		idx.push_back(static_cast<std::size_t>(it - source.vars.begin()));
	}
	return idx;
}

// --------------------------------------------------------------- equations

ExpPolynomial term_to_polynomial(const Term& t, const Shape& shape)
{
	switch (t->kind) {
	case TermKind::constant:
		return ExpPolynomial::constant(shape, t->value);
	case TermKind::variable:
		if (t->var >= shape.n)
			throw ShapeError("variable index outside shape " + shape.str());
		return ExpPolynomial::x(shape, t->var);
	case TermKind::add:
		return term_to_polynomial(t->a, shape) + term_to_polynomial(t->b, shape);
	case TermKind::sub:
		return term_to_polynomial(t->a, shape) - term_to_polynomial(t->b, shape);
	case TermKind::mul:
		return term_to_polynomial(t->a, shape) * term_to_polynomial(t->b, shape);
	case TermKind::neg:
		return -term_to_polynomial(t->a, shape);
	case TermKind::pow:
		return term_to_polynomial(t->a, shape).pow(t->exponent);
	case TermKind::texp:
		if (t->a->kind != TermKind::variable || t->a->var >= shape.ell)
			throw ShapeError("texp applied to something other than an exponentiated variable");
		return ExpPolynomial::texp(shape, t->a->var);
	}
	throw std::logic_error("bad term");
}

namespace {

using Clause = std::vector<Atom>;

constexpr std::size_t max_clauses = 4096;

std::vector<Clause> dnf(const FormulaTree& f)
{
	switch (f->kind) {
	case Connective::atom:
		if (f->atom.rel == Rel::le)
			return {{Atom{f->atom.lhs, Rel::lt, f->atom.rhs}}, {Atom{f->atom.lhs, Rel::eq, f->atom.rhs}}};
		return {{f->atom}};
	case Connective::disj: {
		std::vector<Clause> out;
		for (const auto& c : f->children) {
			auto sub = dnf(c);
			out.insert(out.end(), sub.begin(), sub.end());
			if (out.size() > max_clauses)
				throw Error("formula expands to too many clauses");
		}
		return out;
	}
	case Connective::conj: {
		std::vector<Clause> out{{}};
		for (const auto& c : f->children) {
			auto sub = dnf(c);
			std::vector<Clause> next;
			for (const auto& a : out)
				for (const auto& b : sub) {
					Clause m = a;
					m.insert(m.end(), b.begin(), b.end());
					next.push_back(std::move(m));
				}
			if (next.size() > max_clauses)
				throw Error("formula expands to too many clauses");
			out = std::move(next);
		}
		return out;
	}
	}
	return {};
}

bool holds(const Rational& v, Rel r)
{
	switch (r) {
	case Rel::eq: return v.is_zero();
	case Rel::ne: return !v.is_zero();
	case Rel::lt: return v.sign() < 0;
	case Rel::le: return v.sign() <= 0;
	case Rel::gt: return v.sign() > 0;
	case Rel::ge: return v.sign() >= 0;
	}
	return false;
}

} // namespace

std::vector<ExistentialSystem> atoms_to_equations(const Disjunct& d)
{
	if (d.vars.empty())
		throw Error("atoms_to_equations needs at least one variable");
	std::vector<Clause> clauses = dnf(d.matrix);
	// x notin (-1,1)  <=>  x >= 1  |  -x >= 1
	for (const auto& g : d.guards) {
		if (g.inside)
			continue;
		std::vector<Clause> next;
		for (const auto& c : clauses) {
			Clause a = c, b = c;
			a.push_back({make_variable(g.var), Rel::ge, make_constant(1)});
			b.push_back({make_neg(make_variable(g.var)), Rel::ge, make_constant(1)});
			next.push_back(std::move(a));
			next.push_back(std::move(b));
		}
		if (next.size() > max_clauses)
			throw Error("formula expands to too many clauses");
		clauses = std::move(next);
	}

	const std::size_t n0 = d.vars.size();
	const Shape base(d.ell, n0);
	std::vector<ExistentialSystem> out;
	for (const auto& clause : clauses) {
		// F = lhs - rhs on the base shape; constant atoms are decided here
		std::vector<std::pair<ExpPolynomial, Rel>> live;
		bool falsified = false;
		for (const auto& a : clause) {
			ExpPolynomial f = term_to_polynomial(a.lhs, base) - term_to_polynomial(a.rhs, base);
			if (f.is_constant()) {
				if (!holds(f.constant_term(), a.rel))
					falsified = true;
				continue;
			}
			live.emplace_back(std::move(f), a.rel);
		}
		if (falsified)
			continue;
		std::size_t aux = 0;
		for (const auto& [f, rel] : live)
			aux += rel != Rel::eq;

		ExistentialSystem sys;
		sys.shape = Shape(d.ell, n0 + aux);
		sys.names = d.vars;
		std::set<std::string> taken(d.vars.begin(), d.vars.end());
		for (std::size_t i = 0, k = 0; i < aux; i++) {
			std::string name;
			do
				name = "w" + std::to_string(++k);
			while (taken.count(name));
			taken.insert(name);
			sys.names.push_back(name);
		}
		for (std::size_t i = 0; i < n0; i++)
			sys.witness_map[d.vars[i]] = i;

		// lift base-shape polynomials into the wider shape
		std::vector<ExpPolynomial> xs, ys;
		for (std::size_t i = 0; i < n0; i++)
			xs.push_back(ExpPolynomial::x(sys.shape, i));
		for (std::size_t i = 0; i < d.ell; i++)
			ys.push_back(ExpPolynomial::texp(sys.shape, i));

		std::size_t w = n0;
		for (const auto& [f0, rel] : live) {
			ExpPolynomial f = f0.compose(sys.shape, xs, ys);
			if (rel == Rel::lt)
				f = -f;
			if (rel == Rel::eq) {
				sys.equations.push_back(f);
				sys.equalities.push_back(f0);
				continue;
			}
			sys.inequalities.push_back({rel == Rel::lt ? -f0 : f0, rel == Rel::lt ? Rel::gt : rel});
			ExpPolynomial y = ExpPolynomial::x(sys.shape, w++);
			ExpPolynomial one = ExpPolynomial::constant(sys.shape, 1);
			switch (rel) {
			case Rel::gt:
			case Rel::lt:
				sys.equations.push_back(f * y * y - one);
				sys.conditions.push_back({f, Rel::gt});
				break;
			case Rel::ne:
				sys.equations.push_back(f * y - one);
				sys.conditions.push_back({f, Rel::ne});
				break;
			case Rel::ge:
				sys.equations.push_back(f - y * y);
				sys.conditions.push_back({f, Rel::ge});
				break;
			default:
				break;
			}
		}
		std::string text;
		for (std::size_t i = 0; i < clause.size(); i++)
			text += (i ? " & " : "") + atom_str(clause[i], d.vars);
		sys.clause = text;
		out.push_back(std::move(sys));
	}
	return out;
}

// -------------------------------------------------------------- evaluation

Interval eval_term(const Term& t, const std::vector<Interval>& values, Precision prec, bool interior)
{
	switch (t->kind) {
	case TermKind::constant:
		return Interval::from_rational(t->value, prec);
	case TermKind::variable:
		return values.at(t->var);
	case TermKind::add:
		return add(eval_term(t->a, values, prec, interior), eval_term(t->b, values, prec, interior), prec);
	case TermKind::sub:
		return sub(eval_term(t->a, values, prec, interior), eval_term(t->b, values, prec, interior), prec);
	case TermKind::mul:
		return mul(eval_term(t->a, values, prec, interior), eval_term(t->b, values, prec, interior), prec);
	case TermKind::neg:
		return -eval_term(t->a, values, prec, interior);
	case TermKind::pow:
		return pow(eval_term(t->a, values, prec, interior), t->exponent, prec);
	case TermKind::texp:
		{
		Interval x = eval_term(t->a, values, prec, interior);
		return interior ? texp_interior(x, prec) : texp_enclosure(x, prec);
	}
	}
	throw std::logic_error("bad term");
}

namespace {

std::optional<bool> eval_atom(const Atom& a, const std::vector<Interval>& values, Precision prec, bool interior)
{
	Interval dlt = sub(eval_term(a.lhs, values, prec, interior), eval_term(a.rhs, values, prec, interior), prec);
	const Dyadic& lo = dlt.lo();
	const Dyadic& hi = dlt.hi();
	switch (a.rel) {
	case Rel::eq:
	case Rel::ne: {
		std::optional<bool> eq;
		if (lo.is_zero() && hi.is_zero())
			eq = true;
		else if (!dlt.contains_zero())
			eq = false;
		if (!eq)
			return std::nullopt;
		return a.rel == Rel::eq ? *eq : !*eq;
	}
	case Rel::lt:
		if (hi.sign() < 0)
			return true;
		if (lo.sign() >= 0)
			return false;
		return std::nullopt;
	case Rel::le:
		if (hi.sign() <= 0)
			return true;
		if (lo.sign() > 0)
			return false;
		return std::nullopt;
	case Rel::gt:
		if (lo.sign() > 0)
			return true;
		if (hi.sign() <= 0)
			return false;
		return std::nullopt;
	case Rel::ge:
		if (lo.sign() >= 0)
			return true;
		if (hi.sign() < 0)
			return false;
		return std::nullopt;
	}
	return std::nullopt;
}

} // namespace

std::optional<bool> eval_formula(const FormulaTree& f, const std::vector<Interval>& values, Precision prec,
                                 bool interior)
{
	if (f->kind == Connective::atom)
		return eval_atom(f->atom, values, prec, interior);
	const bool is_and = f->kind == Connective::conj;
	bool unknown = false;
	for (const auto& c : f->children) {
		auto v = eval_formula(c, values, prec, interior);
		if (!v)
			unknown = true;
		else if (*v != is_and)
			return !is_and;
	}
	if (unknown)
		return std::nullopt;
	return is_and;
}

std::optional<bool> decide(const FormulaTree& f, const std::vector<Rational>& point, Precision max_prec)
{
	for (Precision p = 64; p <= max_prec; p *= 2) {
		std::vector<Interval> v;
		for (const auto& q : point)
			v.push_back(Interval::from_rational(q, p));
		if (auto r = eval_formula(f, v, p))
			return r;
	}
	return std::nullopt;
}

std::optional<bool> decide(const Disjunct& d, const Formula& source, const std::vector<Rational>& point,
                           Precision max_prec)
{
	std::vector<std::size_t> idx = d.source_index(source);
	std::vector<Rational> local;
	for (std::size_t i : idx)
		local.push_back(point.at(i));
	for (const auto& g : d.guards) {
		const Rational& x = local[g.var];
		bool in = Rational(-1) < x && x < Rational(1);
		if (in != g.inside)
			return false;
	}
	return decide(d.matrix, local, max_prec);
}

} // namespace kkit
