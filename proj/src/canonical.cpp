#include "mactt/canonical.hpp"

#include <optional>
#include <vector>

#include "mactt/error.hpp"

namespace mactt {

HFSet quotient_min(const HFSet& a, const Relation& related) {
    auto m = a.members();
    const std::size_t n = m.size();
    std::vector<std::vector<char>> table(n, std::vector<char>(n));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) table[i][j] = related(m[i], m[j]) ? 1 : 0;
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (!table[i][i]) throw DomainError("relation is not reflexive at " + to_string(m[i]));
        for (std::size_t j = 0; j < n; ++j) {
            if (table[i][j] != table[j][i]) {
                throw DomainError("relation is not symmetric at (" + to_string(m[i]) + ", " + to_string(m[j]) + ")");
            }
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (!table[i][j]) continue;
            for (std::size_t k = 0; k < n; ++k) {
                if (table[j][k] && !table[i][k]) {
                    throw DomainError("relation is not transitive at (" + to_string(m[i]) + ", " + to_string(m[j]) +
                                      ", " + to_string(m[k]) + ")");
                }
            }
        }
    }
    // Members are visited in increasing order, so the first member of each
    // class seen is its minimum.
    std::vector<HFSet> reps;
    std::vector<std::size_t> rep_index;
    for (std::size_t i = 0; i < n; ++i) {
        bool covered = false;
        for (std::size_t r : rep_index) {
            if (table[r][i]) {
                covered = true;
                break;
            }
        }
        if (!covered) {
            rep_index.push_back(i);
            reps.push_back(m[i]);
        }
    }
    return HFSet::of(std::move(reps));
}

FinFunction canonical_over_base(const FinFunction& f) {
    std::vector<HFSet> values;
    values.reserve(f.domain().size());
    for (const auto& b : f.codomain().members()) {
        for (const auto& y : f.values()) {
            if (y == b) values.push_back(b);
        }
    }
    HFSet domain = HFSet::ordinal(values.size());
    return FinFunction(std::move(domain), f.codomain(), std::move(values));
}

namespace {

void search_relabelings(const FinFunction& f, std::span<const HFSet> pool, std::vector<char>& used,
                        std::vector<std::pair<HFSet, HFSet>>& pairs, std::optional<HFSet>& best,
                        std::optional<FinFunction>& best_fn) {
    const std::size_t depth = pairs.size();
    if (depth == f.domain().size()) {
        FinFunction g = FinFunction::from_pairs(pairs, f.codomain());
        HFSet code = g.encode();
        if (!best || hf_compare(code, *best) < 0) {
            best = code;
            best_fn = std::move(g);
        }
        return;
    }
    for (std::size_t i = 0; i < pool.size(); ++i) {
        if (used[i]) continue;
        used[i] = 1;
        pairs.emplace_back(pool[i], f.values()[depth]);
        search_relabelings(f, pool, used, pairs, best, best_fn);
        pairs.pop_back();
        used[i] = 0;
    }
}

}  // namespace

FinFunction min_iso_oracle(const FinFunction& f, const HFSet& label_pool) {
    if (label_pool.size() < f.domain().size()) {
        throw DomainError("label pool has " + std::to_string(label_pool.size()) + " members but the domain needs " +
                          std::to_string(f.domain().size()));
    }
    std::vector<char> used(label_pool.size());
    std::vector<std::pair<HFSet, HFSet>> pairs;
    std::optional<HFSet> best;
    std::optional<FinFunction> best_fn;
    search_relabelings(f, label_pool.members(), used, pairs, best, best_fn);
    return *best_fn;
}

}  // namespace mactt
