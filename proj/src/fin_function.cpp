#include "mactt/fin_function.hpp"

#include <algorithm>
#include <optional>

#include "mactt/error.hpp"

namespace mactt {

namespace {
std::size_t position_of(const HFSet& set, const HFSet& x) {
    auto m = set.members();
    auto it = std::lower_bound(m.begin(), m.end(), x,
                               [](const HFSet& a, const HFSet& b) { return hf_compare(a, b) < 0; });
    if (it == m.end() || !(*it == x)) throw DomainError("element " + to_string(x) + " is not in the domain");
    return static_cast<std::size_t>(it - m.begin());
}
}  // namespace

FinFunction::FinFunction(HFSet domain, HFSet codomain, std::vector<HFSet> values)
    : domain_(std::move(domain)), codomain_(std::move(codomain)), values_(std::move(values)) {
    if (values_.size() != domain_.size()) throw DomainError("function needs exactly one value per domain element");
    for (std::size_t i = 0; i < values_.size(); ++i) {
        if (!codomain_.contains(values_[i])) {
            throw DomainError("value " + to_string(values_[i]) + " of " + to_string(domain_.members()[i]) +
                              " is outside the codomain");
        }
    }
}

FinFunction FinFunction::from_pairs(const std::vector<std::pair<HFSet, HFSet>>& pairs, HFSet codomain) {
    std::vector<HFSet> xs;
    xs.reserve(pairs.size());
    for (const auto& [x, y] : pairs) xs.push_back(x);
    HFSet domain = HFSet::of(xs);
    std::vector<std::optional<HFSet>> slots(domain.size());
    for (const auto& [x, y] : pairs) {
        auto& slot = slots[position_of(domain, x)];
        if (slot && !(*slot == y)) throw DomainError("graph assigns two values to " + to_string(x));
        slot = y;
    }
    std::vector<HFSet> values;
    values.reserve(slots.size());
    for (auto& s : slots) values.push_back(*s);
    return FinFunction(std::move(domain), std::move(codomain), std::move(values));
}

FinFunction FinFunction::from_graph(const HFSet& domain, const HFSet& graph, HFSet codomain) {
    std::vector<std::pair<HFSet, HFSet>> pairs;
    for (const auto& p : graph.members()) {
        auto xy = p.as_pair();
        if (!xy) throw DomainError("graph member " + to_string(p) + " is not a pair");
        pairs.push_back(*xy);
    }
    FinFunction f = from_pairs(pairs, std::move(codomain));
    if (!(f.domain() == domain)) throw DomainError("graph does not cover the stated domain exactly");
    return f;
}

FinFunction FinFunction::identity(const HFSet& set) {
    return FinFunction(set, set, std::vector<HFSet>(set.members().begin(), set.members().end()));
}

FinFunction FinFunction::decode(const HFSet& triple) {
    auto outer = triple.as_pair();
    if (!outer) throw DomainError("function literal must be a triple <A,<G,B>>");
    auto inner = outer->second.as_pair();
    if (!inner) throw DomainError("function literal must be a triple <A,<G,B>>");
    return from_graph(outer->first, inner->first, inner->second);
}

HFSet FinFunction::graph() const {
    std::vector<HFSet> pairs;
    pairs.reserve(values_.size());
    for (std::size_t i = 0; i < values_.size(); ++i) pairs.push_back(HFSet::pair(domain_.members()[i], values_[i]));
    return HFSet::of(std::move(pairs));
}

HFSet FinFunction::encode() const { return HFSet::pair(domain_, HFSet::pair(graph(), codomain_)); }

const HFSet& FinFunction::operator()(const HFSet& x) const { return values_[position_of(domain_, x)]; }

HFSet FinFunction::fiber(const HFSet& b) const {
    std::vector<HFSet> out;
    for (std::size_t i = 0; i < values_.size(); ++i) {
        if (values_[i] == b) out.push_back(domain_.members()[i]);
    }
    return HFSet::of(std::move(out));
}

HFSet FinFunction::image() const { return HFSet::of(values_); }

bool FinFunction::is_injective() const { return image().size() == domain_.size(); }

bool FinFunction::is_surjective() const { return image().size() == codomain_.size(); }

FinFunction compose(const FinFunction& g, const FinFunction& f) {
    if (!(f.codomain() == g.domain())) throw DomainError("compose: codomain of f differs from domain of g");
    std::vector<HFSet> values;
    values.reserve(f.values().size());
    for (const auto& y : f.values()) values.push_back(g(y));
    return FinFunction(f.domain(), g.codomain(), std::move(values));
}

FinFunction restrict_to(const FinFunction& f, const HFSet& subset) {
    std::vector<HFSet> values;
    values.reserve(subset.size());
    for (const auto& x : subset.members()) values.push_back(f(x));
    return FinFunction(subset, f.codomain(), std::move(values));
}

std::string to_string(const FinFunction& f) { return to_string(f.encode()); }

FinFunction parse_fin_function(std::string_view text) { return FinFunction::decode(parse_hfset(text)); }

}  // namespace mactt
