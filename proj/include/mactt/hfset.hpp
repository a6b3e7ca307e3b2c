#pragma once

// Hereditarily finite sets in canonical form.
//
// Every HFSet keeps its members sorted strictly increasing under the
// Ackermann order, so two values are extensionally equal exactly when their
// member lists are identical. The Ackermann order is the order of the codes
//
//     N(x) = sum over y in x of 2^N(y)
//
// and is computed structurally: compare the member lists from the largest
// element down, the first difference decides, and a proper suffix is smaller.

#include <compare>
#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace mactt {

class HFSet {
public:
    /// The empty set.
    HFSet();

    /// Canonicalizes an arbitrary list of members (sorts, drops duplicates).
    static HFSet of(std::vector<HFSet> members);
    /// Von Neumann ordinal n = {0, ..., n-1}.
    static HFSet ordinal(std::size_t n);
    /// Kuratowski pair <a,b> = {{a},{a,b}}.
    static HFSet pair(const HFSet& a, const HFSet& b);
    static HFSet singleton(const HFSet& a);
    /// Tuple <x0,<x1,<...,xk>>> for k >= 1; a single entry is itself.
    static HFSet tuple(std::span<const HFSet> entries);

    std::span<const HFSet> members() const& noexcept;
    /// The span would dangle; bind the set to a variable first.
    std::span<const HFSet> members() const&& = delete;
    std::size_t size() const noexcept;
    bool empty() const noexcept;
    bool contains(const HFSet& x) const;
    bool is_subset_of(const HFSet& other) const;

    /// n if this set is the ordinal n.
    std::optional<std::size_t> as_ordinal() const noexcept;
    /// (a,b) if this set is the Kuratowski pair <a,b>.
    std::optional<std::pair<HFSet, HFSet>> as_pair() const;

    std::size_t hash() const noexcept;

    friend bool operator==(const HFSet& a, const HFSet& b) noexcept;
    friend std::strong_ordering operator<=>(const HFSet& a, const HFSet& b) noexcept;
    friend std::strong_ordering hf_compare(const HFSet& a, const HFSet& b) noexcept;

private:
    struct Node;
    explicit HFSet(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
    static HFSet from_canonical(std::vector<HFSet> sorted_unique);
    static const std::shared_ptr<const Node>& empty_node();

    std::shared_ptr<const Node> node_;
};

/// Ackermann order. Total, and agrees with comparing the codes N(a), N(b).
std::strong_ordering hf_compare(const HFSet& a, const HFSet& b) noexcept;

HFSet set_union(const HFSet& a, const HFSet& b);
HFSet set_intersection(const HFSet& a, const HFSet& b);
HFSet set_difference(const HFSet& a, const HFSet& b);
HFSet powerset(const HFSet& a);
/// Set of all pairs <x,y> with x in a and y in b.
HFSet cartesian_product(const HFSet& a, const HFSet& b);

/// Canonical text: ordinals as `#n`, Kuratowski pairs as `<a,b>`, anything
/// else as `{a,b,...}` in increasing order. No whitespace is emitted.
std::string to_string(const HFSet& x);

/// Parses `{}`, `{a,b}`, `#n` and `<a,b>` (whitespace allowed). Throws
/// ParseError on malformed input.
HFSet parse_hfset(std::string_view text);

struct HFSetHash {
    std::size_t operator()(const HFSet& x) const noexcept { return x.hash(); }
};

}  // namespace mactt
