#include "mactt/formula.hpp"

#include <cctype>
#include <optional>
#include <vector>

#include "mactt/error.hpp"
#include "text_cursor.hpp"

namespace mactt {

struct Formula::Node {
    Kind kind = Kind::Truth;
    bool value = false;
    std::optional<Term> a;
    std::optional<Term> b;
    std::string var;
    std::optional<Formula> left;
    std::optional<Formula> right;
};

Formula Formula::truth(bool value) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Truth;
    n->value = value;
    return Formula(std::move(n));
}

Formula Formula::member(Term element, Term set) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Member;
    n->a = std::move(element);
    n->b = std::move(set);
    return Formula(std::move(n));
}

Formula Formula::equal(Term lhs, Term rhs) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Equal;
    n->a = std::move(lhs);
    n->b = std::move(rhs);
    return Formula(std::move(n));
}

Formula Formula::negation(Formula body) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Not;
    n->left = std::move(body);
    return Formula(std::move(n));
}

#define MACTT_BINARY(NAME, KIND)                              \
    Formula Formula::NAME(Formula lhs, Formula rhs) {         \
        auto n = std::make_shared<Node>();                    \
        n->kind = Kind::KIND;                                 \
        n->left = std::move(lhs);                             \
        n->right = std::move(rhs);                            \
        return Formula(std::move(n));                         \
    }
MACTT_BINARY(conjunction, And)
MACTT_BINARY(disjunction, Or)
MACTT_BINARY(implication, Implies)
MACTT_BINARY(biconditional, Iff)
#undef MACTT_BINARY

Formula Formula::forall(std::string var, Term bound, Formula body) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Forall;
    n->var = std::move(var);
    n->a = std::move(bound);
    n->left = std::move(body);
    return Formula(std::move(n));
}

Formula Formula::exists(std::string var, Term bound, Formula body) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Exists;
    n->var = std::move(var);
    n->a = std::move(bound);
    n->left = std::move(body);
    return Formula(std::move(n));
}

Formula::Kind Formula::kind() const { return node_->kind; }
bool Formula::truth_value() const { return node_->value; }
const Term& Formula::lhs_term() const { return *node_->a; }
const Term& Formula::rhs_term() const { return *node_->b; }
const Formula& Formula::left() const { return *node_->left; }
const Formula& Formula::right() const { return *node_->right; }
const std::string& Formula::bound_variable() const { return node_->var; }
const Term& Formula::bound() const { return *node_->a; }

namespace {

void collect_term(const Term& t, const std::set<std::string>& bound, std::set<std::string>& out) {
    if (const auto* name = std::get_if<std::string>(&t.value)) {
        if (!bound.count(*name)) out.insert(*name);
    }
}

void collect(const Formula& phi, std::set<std::string>& bound, std::set<std::string>& out) {
    using K = Formula::Kind;
    switch (phi.kind()) {
        case K::Truth:
            return;
        case K::Member:
        case K::Equal:
            collect_term(phi.lhs_term(), bound, out);
            collect_term(phi.rhs_term(), bound, out);
            return;
        case K::Not:
            collect(phi.left(), bound, out);
            return;
        case K::And:
        case K::Or:
        case K::Implies:
        case K::Iff:
            collect(phi.left(), bound, out);
            collect(phi.right(), bound, out);
            return;
        case K::Forall:
        case K::Exists: {
            collect_term(phi.bound(), bound, out);
            bool fresh = bound.insert(phi.bound_variable()).second;
            collect(phi.left(), bound, out);
            if (fresh) bound.erase(phi.bound_variable());
            return;
        }
    }
}

const HFSet& value_of(const Term& t, const Env& env) {
    if (const auto* set = std::get_if<HFSet>(&t.value)) return *set;
    const auto& name = std::get<std::string>(t.value);
    auto it = env.find(name);
    if (it == env.end()) throw DomainError("unbound variable '" + name + "'");
    return it->second;
}

bool eval(const Formula& phi, Env& env) {
    using K = Formula::Kind;
    switch (phi.kind()) {
        case K::Truth:
            return phi.truth_value();
        case K::Member:
            return value_of(phi.rhs_term(), env).contains(value_of(phi.lhs_term(), env));
        case K::Equal:
            return value_of(phi.lhs_term(), env) == value_of(phi.rhs_term(), env);
        case K::Not:
            return !eval(phi.left(), env);
        case K::And:
            return eval(phi.left(), env) && eval(phi.right(), env);
        case K::Or:
            return eval(phi.left(), env) || eval(phi.right(), env);
        case K::Implies:
            return !eval(phi.left(), env) || eval(phi.right(), env);
        case K::Iff:
            return eval(phi.left(), env) == eval(phi.right(), env);
        case K::Forall:
        case K::Exists: {
            const bool universal = phi.kind() == K::Forall;
            HFSet range = value_of(phi.bound(), env);
            const std::string& var = phi.bound_variable();
            std::optional<HFSet> shadowed;
            if (auto it = env.find(var); it != env.end()) shadowed = it->second;
            bool result = universal;
            for (const auto& x : range.members()) {
                env.insert_or_assign(var, x);
                if (eval(phi.left(), env) != universal) {
                    result = !universal;
                    break;
                }
            }
            if (shadowed) {
                env.insert_or_assign(var, *shadowed);
            } else {
                env.erase(var);
            }
            return result;
        }
    }
    return false;
}

}  // namespace

std::set<std::string> free_variables(const Formula& phi) {
    std::set<std::string> bound;
    std::set<std::string> out;
    collect(phi, bound, out);
    return out;
}

bool eval_bounded(const Formula& phi, const Env& env) {
    // Unbound variables are reported even when short-circuiting would skip them.
    for (const auto& name : free_variables(phi)) {
        if (!env.count(name)) throw DomainError("unbound variable '" + name + "'");
    }
    Env scratch = env;
    return eval(phi, scratch);
}

HFSet separation(const HFSet& s, std::string_view var, const Formula& phi, const Env& env) {
    Env scratch = env;
    const std::string name(var);
    for (const auto& free : free_variables(phi)) {
        if (free != name && !scratch.count(free)) throw DomainError("unbound variable '" + free + "'");
    }
    std::vector<HFSet> kept;
    for (const auto& x : s.members()) {
        scratch.insert_or_assign(name, x);
        if (eval(phi, scratch)) kept.push_back(x);
    }
    return HFSet::of(std::move(kept));
}

namespace {

class FormulaParser {
public:
    explicit FormulaParser(std::string_view text) : cursor_(text) {}

    Formula parse() {
        Formula phi = parse_iff();
        cursor_.skip_space();
        if (!cursor_.at_end()) cursor_.fail("unexpected trailing input");
        return phi;
    }

private:
    bool keyword(std::string_view word) {
        cursor_.skip_space();
        if (!cursor_.starts_with(word)) return false;
        char after = cursor_.rest().size() > word.size() ? cursor_.rest()[word.size()] : '\0';
        if (std::isalnum(static_cast<unsigned char>(after)) || after == '_') return false;
        cursor_.consume(word);
        return true;
    }

    bool symbol(std::string_view sym) {
        cursor_.skip_space();
        return cursor_.consume(sym);
    }

    Formula parse_iff() {
        Formula lhs = parse_implies();
        while (symbol("<->")) lhs = Formula::biconditional(lhs, parse_implies());
        return lhs;
    }

    Formula parse_implies() {
        Formula lhs = parse_or();
        if (symbol("->")) return Formula::implication(lhs, parse_implies());
        return lhs;
    }

    Formula parse_or() {
        Formula lhs = parse_and();
        while (symbol("|")) lhs = Formula::disjunction(lhs, parse_and());
        return lhs;
    }

    Formula parse_and() {
        Formula lhs = parse_unary();
        while (symbol("&")) lhs = Formula::conjunction(lhs, parse_unary());
        return lhs;
    }

    Formula parse_unary() {
        cursor_.skip_space();
        if (cursor_.peek() == '!' && cursor_.peek(1) != '=') {
            cursor_.advance();
            return Formula::negation(parse_unary());
        }
        const bool universal = keyword("forall");
        if (universal || keyword("exists")) {
            cursor_.skip_space();
            std::string var = cursor_.identifier();
            if (var.empty()) cursor_.fail("expected a variable after quantifier");
            if (!keyword("in")) cursor_.fail("quantifier needs a bound: expected 'in'");
            Term bound = parse_term();
            if (!symbol(".")) cursor_.fail("expected '.' after quantifier bound");
            Formula body = parse_iff();
            return universal ? Formula::forall(var, bound, body) : Formula::exists(var, bound, body);
        }
        if (keyword("true")) return Formula::truth(true);
        if (keyword("false")) return Formula::truth(false);
        if (symbol("(")) {
            Formula inner = parse_iff();
            if (!symbol(")")) cursor_.fail("expected ')'");
            return inner;
        }
        Term lhs = parse_term();
        if (keyword("in")) return Formula::member(lhs, parse_term());
        if (symbol("!=")) return Formula::negation(Formula::equal(lhs, parse_term()));
        if (symbol("=")) return Formula::equal(lhs, parse_term());
        cursor_.fail("expected 'in', '=' or '!=' after term");
    }

    Term parse_term() {
        cursor_.skip_space();
        if (detail::hfset_starts(cursor_)) return Term::constant(detail::read_hfset(cursor_));
        std::string name = cursor_.identifier();
        if (name.empty()) cursor_.fail("expected a variable or set literal");
        static const std::set<std::string> reserved = {"forall", "exists", "in", "true", "false"};
        if (reserved.count(name)) cursor_.fail("reserved word '" + name + "' used as a variable");
        return Term::var(std::move(name));
    }

    detail::TextCursor cursor_;
};

std::string term_text(const Term& t) {
    if (const auto* name = std::get_if<std::string>(&t.value)) return *name;
    return to_string(std::get<HFSet>(t.value));
}

std::string render(const Formula& phi) {
    using K = Formula::Kind;
    switch (phi.kind()) {
        case K::Truth:
            return phi.truth_value() ? "true" : "false";
        case K::Member:
            return term_text(phi.lhs_term()) + " in " + term_text(phi.rhs_term());
        case K::Equal:
            return term_text(phi.lhs_term()) + " = " + term_text(phi.rhs_term());
        case K::Not:
            return "!(" + render(phi.left()) + ")";
        case K::And:
            return "(" + render(phi.left()) + " & " + render(phi.right()) + ")";
        case K::Or:
            return "(" + render(phi.left()) + " | " + render(phi.right()) + ")";
        case K::Implies:
            return "(" + render(phi.left()) + " -> " + render(phi.right()) + ")";
        case K::Iff:
            return "(" + render(phi.left()) + " <-> " + render(phi.right()) + ")";
        case K::Forall:
        case K::Exists:
            return std::string("(") + (phi.kind() == K::Forall ? "forall " : "exists ") + phi.bound_variable() +
                   " in " + term_text(phi.bound()) + " . " + render(phi.left()) + ")";
    }
    return {};
}

}  // namespace

Formula parse_formula(std::string_view text) { return FormulaParser(text).parse(); }

std::string to_string(const Formula& phi) { return render(phi); }

}  // namespace mactt
