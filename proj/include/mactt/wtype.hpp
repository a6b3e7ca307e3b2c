#pragma once

// Signatures, polynomial functors and W-types over finite signatures.
//
// A signature is a function F : B -> A; the operators are the members of A
// and the arity of a is its fiber, ordered by hf_compare. A term
// a(t_0, ..., t_{k-1}) is encoded as <a, {<b_j, code(t_j)>}> where b_j is the
// j-th argument position of a. With that encoding a one-layer term over X is
// exactly an element of P_F(X), so P_F^n(empty) is literally the set of codes
// of terms of height <= n.

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "mactt/error.hpp"
#include "mactt/fin_function.hpp"
#include "mactt/hfset.hpp"

namespace mactt {

class Signature {
public:
    /// `names[i]` names the i-th member of arities.codomain().
    Signature(FinFunction arities, std::vector<std::string> names);

    /// Operator i is the ordinal #i; its positions are the pairs <#i,#j>, listed
    /// like every fiber in Ackermann order (so <#1,#1> comes before <#1,#0>).
    static Signature from_list(const std::vector<std::pair<std::string, std::size_t>>& ops);

    const FinFunction& arities() const noexcept { return arities_; }
    std::size_t size() const noexcept { return names_.size(); }
    const HFSet& op(std::size_t i) const { return ops_.at(i); }
    const std::string& name(std::size_t i) const { return names_.at(i); }
    std::size_t arity(std::size_t i) const { return positions_.at(i).size(); }
    std::span<const HFSet> positions(std::size_t i) const { return positions_.at(i); }
    std::optional<std::size_t> find(std::string_view name) const;
    std::optional<std::size_t> find(const HFSet& op) const;

    bool has_constant() const;
    std::size_t max_arity() const;

private:
    FinFunction arities_;
    std::vector<std::string> names_;
    std::vector<HFSet> ops_;
    std::vector<std::vector<HFSet>> positions_;
};

/// `op <name> <arity>` per line, `#` comments. Operator i (file order) is #i.
Signature parse_signature(std::string_view text);
std::string to_string(const Signature& sig);

/// A well-founded tree; `op` indexes the signature it is used with.
class WTerm {
public:
    WTerm(std::size_t op, std::vector<WTerm> children = {});

    std::size_t op() const noexcept { return op_; }
    const std::vector<WTerm>& children() const noexcept { return children_; }
    /// Constants have height 1.
    std::size_t height() const;
    std::size_t node_count() const;

    friend bool operator==(const WTerm& a, const WTerm& b);

private:
    std::size_t op_;
    std::vector<WTerm> children_;
};

bool well_formed(const Signature& sig, const WTerm& t);
HFSet encode(const Signature& sig, const WTerm& t);
/// Throws DomainError if the set is not the code of a term.
WTerm decode(const Signature& sig, const HFSet& code);

/// Prefix literal: `s(s(z))`; constants print bare.
std::string to_string(const Signature& sig, const WTerm& t);
WTerm parse_wterm(const Signature& sig, std::string_view text);

// ---------------------------------------------------------------------------
// Polynomial functor

/// P_F(x) = { <a, g> : g the graph of a map fiber(a) -> x }.
HFSet poly_apply(const Signature& sig, const HFSet& x);

struct PolyIteration {
    std::vector<HFSet> stages;            // P^0(empty) ... P^n(empty)
    std::vector<FinFunction> inclusions;  // stages[i] -> stages[i+1]
    /// Index from which all further iterates are equal, when this is known
    /// structurally (no constants, or no operator of positive arity).
    std::optional<std::size_t> stable_from;
};
PolyIteration poly_iterate(const Signature& sig, std::size_t n);

/// All terms of height <= depth, sorted by their codes.
std::vector<WTerm> enumerate_wterms(const Signature& sig, std::size_t depth);

/// Structural recursion into an algebra given as a function P_F(C) -> C.
/// Throws DomainError if the algebra is undefined on a layer that occurs.
HFSet fold_wterm(const Signature& sig, const FinFunction& algebra, const WTerm& t);

/// Number of functions h : terms(depth) -> C with h(a(t..)) = alg(a, h(t..))
/// for every term of height <= depth, by trying all of them.
std::size_t count_algebra_morphisms(const Signature& sig, const FinFunction& algebra, std::size_t depth);

// ---------------------------------------------------------------------------
// Finite-sequence realization

class SequenceError : public Error {
public:
    SequenceError(std::size_t position, const std::string& message);
    std::size_t position() const noexcept { return position_; }

private:
    std::size_t position_;
};

std::vector<std::size_t> seq_encode(const WTerm& t);
/// Single left-to-right pass with an open-slot counter.
WTerm seq_decode(const Signature& sig, std::span<const std::size_t> symbols);
std::vector<std::string> seq_names(const Signature& sig, std::span<const std::size_t> symbols);
/// Throws SequenceError for unknown names as well.
std::vector<std::size_t> seq_from_names(const Signature& sig, std::span<const std::string> names);

struct KonigReport {
    /// counts[h-1] = number of terms of height exactly h (trailing zeros trimmed).
    std::vector<std::size_t> counts;
    /// |P^h(empty)| for h = 0..depth.
    std::vector<std::size_t> iterate_sizes;
    std::size_t max_height = 0;
    std::size_t max_node_count = 0;
    bool finite = true;       // every term has finite height and size
    bool within_bound = true; // cumulative counts match the iterates
};
KonigReport konig_report(const Signature& sig, std::size_t depth);

}  // namespace mactt
