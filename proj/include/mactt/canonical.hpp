#pragma once

// Choices of representatives driven by the global order: minimal members of
// equivalence classes, and canonical functions up to isomorphism over a base.

#include <functional>

#include "mactt/fin_function.hpp"
#include "mactt/hfset.hpp"

namespace mactt {

using Relation = std::function<bool(const HFSet&, const HFSet&)>;

/// The set of hf_compare-minimal members of each equivalence class of
/// `related` on the members of `a`. Throws DomainError naming a witness
/// when `related` is not reflexive, symmetric and transitive on `a`.
HFSet quotient_min(const HFSet& a, const Relation& related);

/// Fixed representative of the isomorphism class of f over its codomain.
///
/// The domain becomes the ordinal |dom f|; labels 0,1,... are handed out
/// fiber by fiber, fibers visited in increasing order of their base point.
/// The result depends only on the codomain and the fiber cardinalities.
FinFunction canonical_over_base(const FinFunction& f);

/// Brute-force reference: the hf_compare-least encoded triple among all
/// relabelings of dom f by injections into `label_pool`. Exponential; meant
/// for domains of at most five elements.
FinFunction min_iso_oracle(const FinFunction& f, const HFSet& label_pool);

}  // namespace mactt
