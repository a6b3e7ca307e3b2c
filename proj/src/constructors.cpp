#include "mactt/constructors.hpp"

#include <map>

#include "mactt/canonical.hpp"
#include "mactt/error.hpp"

namespace mactt {

PullbackCone selected_pullback(const FinFunction& f, const FinFunction& h) {
    if (!(f.codomain() == h.codomain())) throw DomainError("selected_pullback: codomains differ");
    std::vector<HFSet> legs;
    std::vector<HFSet> tops;
    const auto as = f.domain().members();
    const auto cs = h.domain().members();
    for (std::size_t i = 0; i < as.size(); ++i) {
        for (std::size_t j = 0; j < cs.size(); ++j) {
            if (f.values()[i] == h.values()[j]) {
                legs.push_back(as[i]);
                tops.push_back(cs[j]);
            }
        }
    }
    HFSet apex = HFSet::ordinal(legs.size());
    FinFunction leg(apex, f.domain(), std::move(legs));
    FinFunction top(apex, h.domain(), std::move(tops));
    return PullbackCone{std::move(apex), std::move(leg), std::move(top)};
}

FinFunction sigma_dependent(const FinFunction& k, const FinFunction& f) {
    if (!(k.codomain() == f.domain())) throw DomainError("sigma_dependent: codomain of k is not the domain of f");
    return canonical_over_base(compose(f, k));
}

FinFunction pi_dependent(const FinFunction& k, const FinFunction& f) {
    if (!(k.codomain() == f.domain())) throw DomainError("pi_dependent: codomain of k is not the domain of f");
    std::vector<std::pair<HFSet, HFSet>> pairs;
    for (const auto& b : f.codomain().members()) {
        const HFSet over_set = f.fiber(b);
        const auto over = over_set.members();
        std::vector<std::vector<HFSet>> choices;
        bool empty = false;
        for (const auto& a : over) {
            const HFSet fib = k.fiber(a);
            choices.emplace_back(fib.members().begin(), fib.members().end());
            if (fib.empty()) empty = true;
        }
        if (empty) continue;
        std::vector<std::size_t> pick(over.size(), 0);
        while (true) {
            std::vector<HFSet> graph;
            for (std::size_t t = 0; t < over.size(); ++t) graph.push_back(HFSet::pair(over[t], choices[t][pick[t]]));
            pairs.emplace_back(HFSet::pair(b, HFSet::of(std::move(graph))), b);
            std::size_t t = 0;
            while (t < pick.size() && ++pick[t] == choices[t].size()) pick[t++] = 0;
            if (t == pick.size()) break;
        }
    }
    return canonical_over_base(FinFunction::from_pairs(pairs, f.codomain()));
}

std::size_t count_slice_maps(const FinFunction& m, const FinFunction& n) {
    if (!(m.codomain() == n.codomain())) throw DomainError("count_slice_maps: different bases");
    std::map<HFSet, std::size_t> fiber_size;
    for (const auto& v : n.values()) ++fiber_size[v];
    std::size_t count = 1;
    for (const auto& v : m.values()) {
        auto it = fiber_size.find(v);
        if (it == fiber_size.end()) return 0;
        count *= it->second;
    }
    return count;
}

SsetPullback selected_pullback_sset(const SimplicialMap& f, const SimplicialMap& h) {
    if (!(f.target() == h.target())) throw DomainError("selected_pullback_sset: maps have different targets");
    const SimplicialSet& x = f.source();
    const SimplicialSet& c = h.source();
    const int d = x.truncation();
    SimplicialSetBuilder b(d);
    std::map<std::pair<SimplexIndex, SimplexIndex>, std::size_t> handle;
    std::vector<std::pair<SimplexIndex, SimplexIndex>> parts;
    for (int n = 0; n <= d; ++n) {
        auto [xl, xh] = x.range(n);
        auto [cl, ch] = c.range(n);
        for (SimplexIndex a = xl; a < xh; ++a) {
            for (SimplexIndex e = cl; e < ch; ++e) {
                if (f(a) != h(e)) continue;
                handle.emplace(std::pair{a, e}, b.add_simplex(HFSet::ordinal(parts.size()), n));
                parts.emplace_back(a, e);
            }
        }
    }
    for (std::size_t k = 0; k < parts.size(); ++k) {
        auto [a, e] = parts[k];
        const int n = x.dim(a);
        for (int i = 0; n >= 1 && i <= n; ++i) b.set_face(k, i, handle.at({x.face(a, i), c.face(e, i)}));
        for (int i = 0; n < d && i <= n; ++i) {
            b.set_degeneracy(k, i, handle.at({x.degeneracy(a, i), c.degeneracy(e, i)}));
        }
    }
    auto built = b.build();
    std::vector<SimplexIndex> leg(parts.size());
    std::vector<SimplexIndex> top(parts.size());
    for (std::size_t k = 0; k < parts.size(); ++k) {
        leg[built.placement[k]] = parts[k].first;
        top[built.placement[k]] = parts[k].second;
    }
    SimplicialMap leg_map(built.set, x, std::move(leg));
    SimplicialMap top_map(built.set, c, std::move(top));
    return SsetPullback{built.set, std::move(leg_map), std::move(top_map)};
}

// ---------------------------------------------------------------------------

ClassFunctionView::ClassFunctionView(FinFunction f) : finite_(std::move(f)) { window_ = finite_->domain(); }

ClassFunctionView::ClassFunctionView(Rule rule, HFSet domain_window, std::size_t budget)
    : rule_(std::move(rule)), window_(std::move(domain_window)), budget_(budget) {
    if (!rule_) throw DomainError("class function view needs a rule");
}

ClassFunctionView ClassFunctionView::with_budget(std::size_t budget) const {
    ClassFunctionView copy = *this;
    copy.budget_ = budget;
    return copy;
}

std::optional<HFSet> ClassFunctionView::evaluate(const HFSet& x) const {
    if (finite_) {
        if (!finite_->domain().contains(x)) return std::nullopt;
        return (*finite_)(x);
    }
    return rule_(x);
}

std::string to_string(WindowVerdict::Answer a) {
    switch (a) {
        case WindowVerdict::Answer::Yes: return "yes";
        case WindowVerdict::Answer::No: return "no";
        case WindowVerdict::Answer::Unknown: return "unknown";
    }
    return "unknown";
}

namespace {

// Evaluates g on every member of `xs`, keeping those whose value satisfies
// `keep_value`. Returns a verdict with the kept arguments/values.
WindowVerdict scan(const ClassFunctionView& g, const HFSet& xs, const std::function<bool(const HFSet&)>& keep_value,
                   bool collect_values) {
    WindowVerdict v;
    if (!g.is_finite() && xs.size() > g.budget()) {
        v.answer = WindowVerdict::Answer::Unknown;
        v.evaluations = g.budget();
        return v;
    }
    std::vector<HFSet> out;
    std::vector<HFSet> graph;
    for (const auto& x : xs.members()) {
        auto y = g.evaluate(x);
        ++v.evaluations;
        if (!y) {
            v.answer = WindowVerdict::Answer::No;
            v.witness = x;
            return v;
        }
        if (!keep_value(*y)) continue;
        out.push_back(collect_values ? *y : x);
        graph.push_back(HFSet::pair(x, *y));
    }
    v.answer = WindowVerdict::Answer::Yes;
    v.set = HFSet::of(std::move(out));
    v.graph = HFSet::of(std::move(graph));
    return v;
}

}  // namespace

WindowVerdict is_bounded_window(const ClassFunctionView& g, const HFSet& a) {
    if (!a.is_subset_of(g.domain_window())) throw DomainError("subset lies outside the domain window");
    return scan(g, a, [](const HFSet&) { return true; }, true);
}

WindowVerdict is_locally_small_window(const ClassFunctionView& g, const HFSet& b) {
    return scan(g, g.domain_window(), [&](const HFSet& y) { return b.contains(y); }, false);
}

}  // namespace mactt
