#pragma once

#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "mactt/hfset.hpp"

namespace mactt {

/// A function between hereditarily finite sets, coded as the triple
/// (domain, graph, codomain). The graph is the set of Kuratowski pairs
/// <x, f(x)>; values are also kept aligned with the sorted domain.
class FinFunction {
public:
    /// `values[i]` is the image of the i-th member of `domain`.
    FinFunction(HFSet domain, HFSet codomain, std::vector<HFSet> values);

    static FinFunction from_pairs(const std::vector<std::pair<HFSet, HFSet>>& pairs, HFSet codomain);
    static FinFunction from_graph(const HFSet& domain, const HFSet& graph, HFSet codomain);
    static FinFunction identity(const HFSet& set);
    /// Inverse of encode(): the triple <domain,<graph,codomain>>.
    static FinFunction decode(const HFSet& triple);

    const HFSet& domain() const noexcept { return domain_; }
    const HFSet& codomain() const noexcept { return codomain_; }
    std::span<const HFSet> values() const noexcept { return values_; }

    HFSet graph() const;
    /// <domain,<graph,codomain>>.
    HFSet encode() const;

    const HFSet& operator()(const HFSet& x) const;
    /// Preimage of a single point.
    HFSet fiber(const HFSet& b) const;
    HFSet image() const;
    bool is_injective() const;
    bool is_surjective() const;

    friend bool operator==(const FinFunction&, const FinFunction&) = default;

private:
    HFSet domain_;
    HFSet codomain_;
    std::vector<HFSet> values_;
};

/// g after f. Requires codomain(f) == domain(g).
FinFunction compose(const FinFunction& g, const FinFunction& f);

/// Restriction of f to a subset of its domain.
FinFunction restrict_to(const FinFunction& f, const HFSet& subset);

std::string to_string(const FinFunction& f);
/// Accepts the encoded triple literal `<A,<G,B>>`.
FinFunction parse_fin_function(std::string_view text);

}  // namespace mactt
