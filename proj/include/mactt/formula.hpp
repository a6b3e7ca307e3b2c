#pragma once

// Bounded formulas over hereditarily finite sets.
//
// Every quantifier carries a bounding term, so there is no way to write an
// unbounded quantifier. Evaluation is call-by-value over materialized sets.

#include <map>
#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <variant>

#include "mactt/hfset.hpp"

namespace mactt {

/// A variable name or a set constant.
struct Term {
    std::variant<std::string, HFSet> value;

    static Term var(std::string name) { return Term{std::move(name)}; }
    static Term constant(HFSet set) { return Term{std::move(set)}; }
};

using Env = std::map<std::string, HFSet, std::less<>>;

class Formula {
public:
    enum class Kind { Truth, Member, Equal, Not, And, Or, Implies, Iff, Forall, Exists };

    static Formula truth(bool value);
    static Formula member(Term element, Term set);
    static Formula equal(Term lhs, Term rhs);
    static Formula negation(Formula body);
    static Formula conjunction(Formula lhs, Formula rhs);
    static Formula disjunction(Formula lhs, Formula rhs);
    static Formula implication(Formula lhs, Formula rhs);
    static Formula biconditional(Formula lhs, Formula rhs);
    static Formula forall(std::string var, Term bound, Formula body);
    static Formula exists(std::string var, Term bound, Formula body);

    Kind kind() const;
    bool truth_value() const;
    const Term& lhs_term() const;
    const Term& rhs_term() const;
    /// Operand(s) of connectives; for quantifiers `left()` is the body.
    const Formula& left() const;
    const Formula& right() const;
    const std::string& bound_variable() const;
    const Term& bound() const;

private:
    struct Node;
    explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
    std::shared_ptr<const Node> node_;
};

std::set<std::string> free_variables(const Formula& phi);

/// Tarskian truth. Throws DomainError naming the first unbound variable.
bool eval_bounded(const Formula& phi, const Env& env);

/// {x in s | phi(x)} where `var` is the separated variable.
HFSet separation(const HFSet& s, std::string_view var, const Formula& phi, const Env& env = {});

/// Syntax:
///   forall x in T . phi     exists x in T . phi
///   phi <-> psi   phi -> psi   phi | psi   phi & psi   !phi
///   t in u   t = u   t != u   true   false   ( phi )
/// Terms are identifiers or set literals. Quantifier bodies extend as far
/// right as possible.
Formula parse_formula(std::string_view text);

std::string to_string(const Formula& phi);

}  // namespace mactt
