#pragma once

// Selected pullbacks, dependent sums and products with canonical
// representatives, and budgeted image/preimage checks on class-function
// windows.

#include <cstddef>
#include <functional>
#include <optional>
#include <string>

#include "mactt/fin_function.hpp"
#include "mactt/hfset.hpp"
#include "mactt/sset.hpp"

namespace mactt {

/// Pullback of h : C -> B along f : A -> B.
struct PullbackCone {
    HFSet apex;
    FinFunction leg;  // apex -> A, this is f*(h)
    FinFunction top;  // apex -> C
};

/// The apex enumerates {(a,c) | f(a) = h(c)} lexicographically and labels the
/// pairs 0, 1, ...; the leg is then already in canonical form over A.
PullbackCone selected_pullback(const FinFunction& f, const FinFunction& h);

/// Canonical form of f after k.
FinFunction sigma_dependent(const FinFunction& k, const FinFunction& f);

/// The fiber over b is the set of sections of k over f^-1(b), canonicalized
/// over the codomain of f.
FinFunction pi_dependent(const FinFunction& k, const FinFunction& f);

/// Number of maps m -> n over their common codomain.
std::size_t count_slice_maps(const FinFunction& m, const FinFunction& n);

struct SsetPullback {
    SimplicialSet object;
    SimplicialMap leg;  // to the source of f
    SimplicialMap top;  // to the source of h
};

/// Degreewise pullback. Simplices are the pairs (x,c) with f(x) = h(c),
/// labelled by ordinals in (dimension, x, c) order.
SsetPullback selected_pullback_sset(const SimplicialMap& f, const SimplicialMap& h);

// ---------------------------------------------------------------------------
// Windows on class functions

class ClassFunctionView {
public:
    /// Partial rule; nullopt means the rule has no value at that argument.
    using Rule = std::function<std::optional<HFSet>(const HFSet&)>;

    /// A finite function; no budget applies.
    explicit ClassFunctionView(FinFunction f);
    /// A rule observed on a domain window; each evaluation costs one unit.
    ClassFunctionView(Rule rule, HFSet domain_window, std::size_t budget);

    bool is_finite() const noexcept { return finite_.has_value(); }
    const HFSet& domain_window() const noexcept { return window_; }
    std::size_t budget() const noexcept { return budget_; }
    ClassFunctionView with_budget(std::size_t budget) const;

    std::optional<HFSet> evaluate(const HFSet& x) const;

private:
    std::optional<FinFunction> finite_;
    Rule rule_;
    HFSet window_;
    std::size_t budget_ = 0;
};

struct WindowVerdict {
    enum class Answer { Yes, No, Unknown };
    Answer answer = Answer::Unknown;
    HFSet set;    // image or preimage (Yes only)
    HFSet graph;  // graph of the restriction (Yes only)
    std::size_t evaluations = 0;
    /// Element at which the rule has no value (No only).
    std::optional<HFSet> witness;
};
std::string to_string(WindowVerdict::Answer a);

/// Image of a subset of the domain window.
WindowVerdict is_bounded_window(const ClassFunctionView& g, const HFSet& a);
/// Preimage of a set, computed over the whole domain window.
WindowVerdict is_locally_small_window(const ClassFunctionView& g, const HFSet& b);

}  // namespace mactt
