/* SPDX-License-Identifier: Apache-2.0
 *
 * Copyright 2026 The kkit Authors
 */

#ifndef KKIT_FORMULA_HPP
#define KKIT_FORMULA_HPP

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "kkit/exp_polynomial.hpp"

namespace kkit {

enum class TermKind { constant, variable, add, sub, mul, neg, pow, texp };

struct TermNode;
using Term = std::shared_ptr<const TermNode>;

struct TermNode {
	TermKind kind;
	Rational value;         // constant
	std::size_t var = 0;    // variable
	unsigned exponent = 0;  // pow
	Term a, b;
};

Term make_constant(const Rational& c);
Term make_variable(std::size_t index);
Term make_binary(TermKind kind, Term a, Term b);
Term make_neg(Term a);
Term make_pow(Term a, unsigned k);
Term make_texp(Term a);

bool same_term(const Term& a, const Term& b);

enum class Rel { eq, ne, lt, le, gt, ge };

std::string to_string(Rel r);
Rel negate(Rel r);

struct Atom {
	Term lhs;
	Rel rel;
	Term rhs;
};

struct FormulaNode;
using FormulaTree = std::shared_ptr<const FormulaNode>;

enum class Connective { atom, conj, disj };

/// Negation-normal form: negations live only inside atom relations.
struct FormulaNode {
	Connective kind;
	Atom atom;
	std::vector<FormulaTree> children;
};

FormulaTree make_atom(Atom a);
/// n-ary conjunction/disjunction; nested nodes of the same kind are spliced
/// and a single child is returned unchanged.
FormulaTree make_and(std::vector<FormulaTree> children);
FormulaTree make_or(std::vector<FormulaTree> children);

/// Quantifier-free formula over named real variables (ordered by first
/// appearance in the source text).
struct Formula {
	std::vector<std::string> vars;
	FormulaTree root;

	/// Throws ParseError (syntax, unknown identifier).
	static Formula parse(std::string_view text);
	std::string str() const;
};

std::string term_str(const Term& t, const std::vector<std::string>& vars);
std::string atom_str(const Atom& a, const std::vector<std::string>& vars);

struct Flattened {
	/// texp applied to variables only, no nesting; vars extended by fresh
	/// u1, u2, ...
	Formula formula;
	/// u = inner-term, one per distinct extracted subterm.
	std::vector<Atom> definitions;

	/// formula with the definitions conjoined in front.
	Formula combined() const;
};

Flattened flatten(const Formula& f);

struct Guard {
	std::size_t var;
	bool inside;
};

/// One branch of the texp case split: the guarded-inside variables come
/// first (positions 0..ell-1) and are the only texp arguments in matrix.
struct Disjunct {
	std::vector<std::string> vars;
	std::size_t ell = 0;
	std::vector<Guard> guards;
	FormulaTree matrix;

	std::string str() const;
	/// Position of each variable in the source formula's variable list.
	std::vector<std::size_t> source_index(const Formula& source) const;
};

/// Case split of a flat formula on x in (-1,1) versus x notin (-1,1) for every
/// texp argument, with texp(x) replaced by 0 in the outside branches. The
/// all-inside branch comes first; branches follow the variable order.
std::vector<Disjunct> normalize_complexity(const Formula& flat);

/// Witness obligation left over from an inequality: f must be > 0 or != 0 at
/// the solution. The auxiliary equation already forces it at an exact zero;
/// search re-verifies it over the certified box.
struct SideCondition {
	ExpPolynomial f;
	Rel rel;
};

/// Equations whose real zeros (x, w) project onto solutions x of one clause
/// of a disjunct. Coordinates: the disjunct's variables, then auxiliary
/// witnesses w1, w2, ...
struct ExistentialSystem {
	Shape shape;
	std::vector<ExpPolynomial> equations;
	std::vector<std::string> names;
	/// Disjunct variable name -> coordinate index.
	std::map<std::string, std::size_t> witness_map;
	std::vector<SideCondition> conditions;
	/// The same clause over the disjunct's variables only: the = atoms as
	/// F = 0 and the remaining atoms as side conditions (< already negated
	/// into >).
	std::vector<ExpPolynomial> equalities;
	std::vector<SideCondition> inequalities;
	/// The clause this system encodes, as text (for reports).
	std::string clause;
};

/// Converts each conjunctive clause of the disjunct (after splitting <= into
/// < or =, and outside guards into x >= 1 or -x >= 1) to equations:
/// F > 0 -> F*w^2 - 1, F != 0 -> F*w - 1, F >= 0 -> F - w^2, F = 0 as is.
/// A conjunctive matrix without <= or outside guards yields one system.
std::vector<ExistentialSystem> atoms_to_equations(const Disjunct& d);

/// Converts a term over the disjunct's variables into a texp-polynomial;
/// throws ShapeError when texp is applied to anything but an inside variable.
ExpPolynomial term_to_polynomial(const Term& t, const Shape& shape);

/// Interval enclosure of a term with variable values given as intervals.
/// With interior set, texp is enclosed only over arguments inside (-1, 1)
/// (see texp_interior); callers use this when a guard already keeps those
/// arguments inside.
Interval eval_term(const Term& t, const std::vector<Interval>& values, Precision prec, bool interior = false);

/// Three-valued truth over a box of variable values.
std::optional<bool> eval_formula(const FormulaTree& f, const std::vector<Interval>& values, Precision prec,
                                 bool interior = false);

/// Truth at a rational point, refining precision from 64 bits up to
/// max_prec; nullopt when some atom stays undecided (e.g. an equation
/// between distinct transcendental expressions that agree numerically).
std::optional<bool> decide(const FormulaTree& f, const std::vector<Rational>& point, Precision max_prec = 2048);

/// Truth of a disjunct (guards and matrix) at a point given in the source
/// formula's variable order.
std::optional<bool> decide(const Disjunct& d, const Formula& source, const std::vector<Rational>& point,
                           Precision max_prec = 2048);

} // namespace kkit

#endif
