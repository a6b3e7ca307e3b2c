#include <catch_amalgamated.hpp>

#include "mactt/canonical.hpp"
#include "mactt/constructors.hpp"
#include "mactt/error.hpp"
#include "mactt/kan.hpp"
#include "oracles.hpp"
#include "properties.hpp"

using namespace mactt;

namespace {

HFSet ord(std::size_t n) { return HFSet::ordinal(n); }

}  // namespace

TEST_CASE("selected pullback examples", "[constructors]") {
    const FinFunction id = FinFunction::identity(ord(3));
    FinFunction h(ord(4), ord(3), {ord(2), ord(0), ord(0), ord(1)});
    PullbackCone along_id = selected_pullback(id, h);
    CHECK(along_id.apex == ord(4));
    CHECK(along_id.leg == canonical_over_base(h));

    PullbackCone of_id = selected_pullback(h, id);
    CHECK(of_id.apex == ord(4));
    CHECK(of_id.leg.is_injective());
    CHECK(of_id.leg.is_surjective());

    FinFunction two_to_one(ord(2), ord(1), {ord(0), ord(0)});
    PullbackCone c = selected_pullback(two_to_one, FinFunction::identity(ord(1)));
    CHECK(c.apex.size() == 2);
    CHECK(c.leg.is_injective());

    FinFunction empty(HFSet(), ord(3), {});
    PullbackCone e = selected_pullback(h, empty);
    CHECK(e.apex.empty());
    CHECK(e.leg.domain().empty());
    CHECK_THROWS_AS(selected_pullback(h, two_to_one), DomainError);
}

TEST_CASE("pullbacks are universal", "[constructors]") {
    // cones from a test object T correspond to maps T -> apex
    std::mt19937_64 rng(61);
    for (int i = 0; i < 60; ++i) {
        const HFSet b = ord(1 + rng() % 3);
        FinFunction f = oracle::random_function(rng, ord(rng() % 4), b);
        FinFunction h = oracle::random_function(rng, oracle::random_labels(rng, rng() % 4), b);
        PullbackCone p = selected_pullback(f, h);
        const HFSet t = ord(rng() % 3);
        std::size_t cones = 0;
        oracle::for_each_function(t, f.domain(), [&](const FinFunction& u) {
            oracle::for_each_function(t, h.domain(), [&](const FinFunction& v) {
                if (compose(f, u) == compose(h, v)) ++cones;
            });
        });
        std::size_t maps = 0;
        oracle::for_each_function(t, p.apex, [&](const FinFunction&) { ++maps; });
        REQUIRE(cones == maps);
    }
}

TEST_CASE("strict functoriality on random triples", "[constructors]") {
    std::mt19937_64 rng(67);
    for (int i = 0; i < 300; ++i) {
        const HFSet b = oracle::random_labels(rng, 1 + rng() % 5);
        const HFSet a = oracle::random_labels(rng, rng() % 6);
        const HFSet c = oracle::random_labels(rng, rng() % 6);
        const HFSet d = oracle::random_labels(rng, a.empty() ? 0 : rng() % 6);
        FinFunction f = oracle::random_function(rng, a, b);
        FinFunction h = oracle::random_function(rng, c, b);
        FinFunction g = oracle::random_function(rng, d, a);
        REQUIRE(props::strict_functoriality(f, g, h).empty());
    }
    // identity coherence
    FinFunction h(ord(3), ord(2), {ord(1), ord(1), ord(0)});
    CHECK(selected_pullback(FinFunction::identity(ord(2)), h).leg == canonical_over_base(h));
}

TEST_CASE("pullbacks depend only on the inputs up to relabeling", "[constructors]") {
    std::mt19937_64 rng(71);
    for (int i = 0; i < 100; ++i) {
        const HFSet b = ord(1 + rng() % 3);
        FinFunction f = oracle::random_function(rng, ord(rng() % 4), b);
        FinFunction h = oracle::random_function(rng, ord(rng() % 4), b);
        // relabel h's domain; the leg (a function into dom f) must not change
        const HFSet labels = oracle::random_labels(rng, h.domain().size());
        std::vector<std::pair<HFSet, HFSet>> pairs;
        for (std::size_t t = 0; t < labels.size(); ++t) pairs.emplace_back(labels.members()[t], h.values()[t]);
        FinFunction h2 = FinFunction::from_pairs(pairs, b);
        REQUIRE(selected_pullback(f, h).leg == selected_pullback(f, h2).leg);
    }
}

TEST_CASE("dependent sums and products", "[constructors]") {
    // k with fibers (2,1) over A = {0,1}
    FinFunction k(ord(3), ord(2), {ord(0), ord(0), ord(1)});
    FinFunction collapse(ord(2), ord(1), {ord(0), ord(0)});
    CHECK(sigma_dependent(k, collapse).fiber(ord(0)).size() == 3);
    CHECK(sigma_dependent(FinFunction::identity(ord(3)), k) == canonical_over_base(k));
    CHECK(sigma_dependent(k, FinFunction::identity(ord(2))) == canonical_over_base(k));

    // fibers (2,3) over f^-1(b) = {a0,a1}
    FinFunction k23(ord(5), ord(2), {ord(0), ord(0), ord(1), ord(1), ord(1)});
    CHECK(pi_dependent(k23, collapse).fiber(ord(0)).size() == 6);
    CHECK(pi_dependent(k, FinFunction::identity(ord(2))) == canonical_over_base(k));
    FinFunction gap(ord(2), ord(2), {ord(0), ord(0)});
    CHECK(pi_dependent(gap, collapse).fiber(ord(0)).empty());
    CHECK_THROWS_AS(pi_dependent(k, k), DomainError);
    CHECK_THROWS_AS(sigma_dependent(k, k), DomainError);
}

TEST_CASE("slice-map counts agree with brute force", "[constructors]") {
    std::mt19937_64 rng(73);
    for (int i = 0; i < 200; ++i) {
        const HFSet b = ord(1 + rng() % 3);
        FinFunction m = oracle::random_function(rng, ord(rng() % 4), b);
        FinFunction n = oracle::random_function(rng, oracle::random_labels(rng, rng() % 4), b);
        REQUIRE(count_slice_maps(m, n) == oracle::brute_slice_maps(m, n));
    }
}

TEST_CASE("adjunction counts on random slices", "[constructors]") {
    std::mt19937_64 rng(79);
    for (int i = 0; i < 150; ++i) {
        const HFSet b = oracle::random_labels(rng, 1 + rng() % 3);
        const HFSet a = oracle::random_labels(rng, 1 + rng() % 3);
        FinFunction f = oracle::random_function(rng, a, b);
        FinFunction k = oracle::random_function(rng, oracle::random_labels(rng, rng() % 4), a);
        FinFunction m = oracle::random_function(rng, oracle::random_labels(rng, rng() % 3), b);
        REQUIRE(props::adjunction_counts(k, f, m, true).empty());
    }
}

TEST_CASE("simplicial pullbacks", "[constructors]") {
    const int d = 3;
    const SimplicialSet pt = terminal_sset(d);
    const SimplicialMap two = to_terminal(coproduct_sset(pt, pt).object);
    SsetPullback p = selected_pullback_sset(two, two);
    CHECK(p.object.count(0) == 4);
    CHECK(validate_presheaf(p.object).empty());
    CHECK(is_fibration(p.leg, 2).ok);

    const SimplicialSet d1 = representable(1, d);
    SsetPullback along_id = selected_pullback_sset(SimplicialMap::identity(d1), SimplicialMap::identity(d1));
    CHECK(along_id.object.size() == d1.size());
    CHECK(along_id.leg.is_monic());
    CHECK(compose(SimplicialMap::identity(d1), along_id.leg) == compose(SimplicialMap::identity(d1), along_id.top));

    // disjoint images
    auto cp = coproduct_sset(pt, pt);
    SsetPullback none = selected_pullback_sset(cp.left, cp.right);
    CHECK(none.object.empty());
    CHECK(validate_presheaf(none.object).empty());

    // pullbacks of fibrations stay fibrations on random instances
    std::mt19937_64 rng(83);
    for (int i = 0; i < 5; ++i) {
        const SimplicialSet x = oracle::random_subcomplex(rng, 2, d).cell;
        auto maps = all_maps(x, d1);
        if (maps.empty()) continue;
        const SimplicialMap h = maps[rng() % maps.size()];
        SsetPullback q = selected_pullback_sset(SimplicialMap::identity(d1), h);
        REQUIRE(validate_presheaf(q.object).empty());
        REQUIRE(q.object.size() == x.size());
        // d1 x (pt + pt) -> d1 is a fibration; so is its pullback along h
        auto prod = product_sset(d1, cp.object);
        SsetPullback r = selected_pullback_sset(prod.first, h);
        REQUIRE(validate_presheaf(r.object).empty());
        REQUIRE(is_fibration(r.top, 2).ok);
    }
}

TEST_CASE("image and preimage windows", "[constructors]") {
    FinFunction f(ord(4), ord(3), {ord(2), ord(0), ord(0), ord(1)});
    ClassFunctionView finite(f);
    WindowVerdict img = is_bounded_window(finite, HFSet::of({ord(1), ord(2)}));
    CHECK(img.answer == WindowVerdict::Answer::Yes);
    CHECK(img.set == HFSet::of({ord(0)}));
    CHECK(img.graph.size() == 2);
    WindowVerdict pre = is_locally_small_window(finite, HFSet::of({ord(0)}));
    CHECK(pre.answer == WindowVerdict::Answer::Yes);
    CHECK(pre.set == f.fiber(ord(0)));

    auto identity_rule = [](const HFSet& x) -> std::optional<HFSet> { return x; };
    ClassFunctionView id(identity_rule, ord(10), 100);
    WindowVerdict all = is_bounded_window(id, ord(10));
    CHECK(all.answer == WindowVerdict::Answer::Yes);
    CHECK(all.set == ord(10));
    CHECK(is_bounded_window(id.with_budget(0), ord(10)).answer == WindowVerdict::Answer::Unknown);
    CHECK(is_bounded_window(id.with_budget(0), HFSet()).answer == WindowVerdict::Answer::Yes);
    CHECK(is_locally_small_window(id.with_budget(3), ord(2)).answer == WindowVerdict::Answer::Unknown);

    auto doubling = [](const HFSet& x) -> std::optional<HFSet> { return ord(2 * *x.as_ordinal()); };
    ClassFunctionView dbl(doubling, ord(10), 100);
    WindowVerdict half = is_locally_small_window(dbl, ord(10));
    CHECK(half.answer == WindowVerdict::Answer::Yes);
    CHECK(half.set == ord(5));

    auto partial = [](const HFSet& x) -> std::optional<HFSet> {
        if (x == ord(3)) return std::nullopt;
        return x;
    };
    WindowVerdict no = is_bounded_window(ClassFunctionView(partial, ord(5), 100), ord(5));
    CHECK(no.answer == WindowVerdict::Answer::No);
    CHECK(no.witness == ord(3));
    CHECK_THROWS_AS(is_bounded_window(id, ord(11)), DomainError);

    // verdicts are monotone in the budget
    for (std::size_t b = 0; b <= 12; ++b) {
        auto v = is_bounded_window(id.with_budget(b), ord(10)).answer;
        CHECK(v == (b >= 10 ? WindowVerdict::Answer::Yes : WindowVerdict::Answer::Unknown));
    }
}

TEST_CASE("preimages commute with selected pullbacks", "[constructors]") {
    std::mt19937_64 rng(89);
    for (int i = 0; i < 100; ++i) {
        const HFSet b = ord(1 + rng() % 3);
        FinFunction f = oracle::random_function(rng, ord(rng() % 5), b);
        FinFunction h = oracle::random_function(rng, ord(rng() % 5), b);
        PullbackCone p = selected_pullback(f, h);
        std::vector<HFSet> pick;
        for (const auto& a : f.domain().members()) {
            if (rng() % 2) pick.push_back(a);
        }
        const HFSet s = HFSet::of(pick);
        WindowVerdict v = is_locally_small_window(ClassFunctionView(p.leg), s);
        REQUIRE(v.answer == WindowVerdict::Answer::Yes);
        std::size_t expect = 0;
        for (const auto& a : s.members()) expect += h.fiber(f(a)).size();
        REQUIRE(v.set.size() == expect);
        // and the restricted leg is again a selected pullback, of f restricted to s
        PullbackCone q = selected_pullback(restrict_to(f, s), h);
        REQUIRE(q.apex.size() == expect);
    }
}
