#include <catch_amalgamated.hpp>

#include <cmath>

#include "mactt/error.hpp"
#include "mactt/wtype.hpp"
#include "oracles.hpp"

using namespace mactt;

namespace {

Signature nat() { return Signature::from_list({{"z", 0}, {"s", 1}}); }
Signature bintree() { return Signature::from_list({{"leaf", 0}, {"node", 2}}); }

/// Terms of height <= depth, built by brute force over a growing pool.
std::size_t count_by_cardinality(const Signature& sig, std::size_t depth) {
    std::size_t x = 0;
    for (std::size_t i = 0; i < depth; ++i) {
        std::size_t next = 0;
        for (std::size_t a = 0; a < sig.size(); ++a) {
            next += static_cast<std::size_t>(std::pow(static_cast<double>(x), static_cast<double>(sig.arity(a))));
        }
        x = next;
    }
    return x;
}

}  // namespace

TEST_CASE("one layer of the polynomial functor", "[wtype]") {
    const Signature n = nat();
    const HFSet one = poly_apply(n, HFSet());
    CHECK(one.size() == 1);
    CHECK(one == HFSet::of({encode(n, WTerm(*n.find("z")))}));
    CHECK(poly_apply(n, HFSet::of({HFSet::ordinal(7)})).size() == 2);
    const Signature pairing = Signature::from_list({{"b", 2}});
    CHECK(poly_apply(pairing, HFSet::ordinal(3)).size() == 9);
    for (const Signature& sig : {nat(), bintree(), Signature::from_list({{"a", 0}, {"b", 0}, {"t", 3}, {"u", 1}})}) {
        for (std::size_t k = 0; k <= 4; ++k) {
            std::size_t expect = 0;
            for (std::size_t a = 0; a < sig.size(); ++a) {
                expect += static_cast<std::size_t>(std::pow(static_cast<double>(k), static_cast<double>(sig.arity(a))));
            }
            REQUIRE(poly_apply(sig, HFSet::ordinal(k)).size() == expect);
        }
    }
}

TEST_CASE("iterates from the empty set", "[wtype]") {
    auto it = poly_iterate(nat(), 6);
    REQUIRE(it.stages.size() == 7);
    for (std::size_t i = 0; i <= 6; ++i) CHECK(it.stages[i].size() == i);
    for (std::size_t i = 0; i < 6; ++i) {
        CHECK(it.inclusions[i].domain() == it.stages[i]);
        CHECK(it.inclusions[i].codomain() == it.stages[i + 1]);
        CHECK(it.inclusions[i].is_injective());
        for (const auto& x : it.stages[i].members()) CHECK(it.inclusions[i](x) == x);
    }
    auto b = poly_iterate(bintree(), 4);
    std::vector<std::size_t> sizes;
    for (const auto& s : b.stages) sizes.push_back(s.size());
    CHECK(sizes == std::vector<std::size_t>{0, 1, 2, 5, 26});
    auto none = poly_iterate(Signature::from_list({{"s", 1}, {"b", 2}}), 4);
    for (const auto& s : none.stages) CHECK(s.empty());
    CHECK(none.stable_from == 0);
    CHECK(poly_iterate(Signature::from_list({{"a", 0}, {"b", 0}}), 3).stable_from == 1);
    CHECK_FALSE(poly_iterate(nat(), 3).stable_from);
}

TEST_CASE("enumeration matches the iterates", "[wtype]") {
    for (const Signature& sig : {nat(), bintree(), Signature::from_list({{"a", 0}, {"u", 1}, {"b", 2}})}) {
        for (std::size_t depth = 0; depth <= 5; ++depth) {
            if (count_by_cardinality(sig, depth) > 20000) break;
            auto terms = enumerate_wterms(sig, depth);
            REQUIRE(terms.size() == count_by_cardinality(sig, depth));
            std::vector<HFSet> codes;
            for (const auto& t : terms) {
                REQUIRE(well_formed(sig, t));
                REQUIRE(t.height() <= depth);
                codes.push_back(encode(sig, t));
                REQUIRE(decode(sig, codes.back()) == t);
            }
            REQUIRE(std::is_sorted(codes.begin(), codes.end(), [](auto& a, auto& b) { return hf_compare(a, b) < 0; }));
            REQUIRE(HFSet::of(codes) == poly_iterate(sig, depth).stages.back());
        }
    }
    const Signature n = nat();
    auto three = enumerate_wterms(n, 3);
    std::vector<std::string> names;
    for (const auto& t : three) names.push_back(to_string(n, t));
    CHECK(names == std::vector<std::string>{"z", "s(z)", "s(s(z))"});
    CHECK(enumerate_wterms(bintree(), 0).empty());
    auto b2 = enumerate_wterms(bintree(), 2);
    names.clear();
    for (const auto& t : b2) names.push_back(to_string(bintree(), t));
    CHECK(names == std::vector<std::string>{"leaf", "node(leaf,leaf)"});
}

TEST_CASE("folds", "[wtype]") {
    const Signature n = nat();
    const std::size_t z = *n.find("z");
    const std::size_t s = *n.find("s");
    const HFSet zero = HFSet::ordinal(0);
    const HFSet one = HFSet::ordinal(1);
    auto layer = [&](std::size_t op, std::vector<HFSet> args) {
        std::vector<HFSet> graph;
        for (std::size_t j = 0; j < args.size(); ++j) graph.push_back(HFSet::pair(n.positions(op)[j], args[j]));
        return HFSet::pair(n.op(op), HFSet::of(graph));
    };
    // z -> 0, s(x) -> 1 - x on {0,1}
    FinFunction flip = FinFunction::from_pairs(
        {{layer(z, {}), zero}, {layer(s, {zero}), one}, {layer(s, {one}), zero}}, HFSet::ordinal(2));
    CHECK(fold_wterm(n, flip, parse_wterm(n, "s(s(z))")) == zero);
    CHECK(fold_wterm(n, flip, parse_wterm(n, "s(s(s(z)))")) == one);

    // capped successor on ordinals < 5
    std::vector<std::pair<HFSet, HFSet>> pairs{{layer(z, {}), zero}};
    for (std::size_t k = 0; k < 5; ++k) pairs.emplace_back(layer(s, {HFSet::ordinal(k)}), HFSet::ordinal(std::min<std::size_t>(k + 1, 4)));
    FinFunction capped = FinFunction::from_pairs(pairs, HFSet::ordinal(5));
    WTerm t(z);
    for (std::size_t k = 0; k < 8; ++k) {
        CHECK(fold_wterm(n, capped, t) == HFSet::ordinal(std::min<std::size_t>(k, 4)));
        t = WTerm(s, {t});
    }

    // folding into the term algebra rebuilds the term
    auto terms = enumerate_wterms(n, 4);
    auto stages = poly_iterate(n, 5).stages;
    std::vector<std::pair<HFSet, HFSet>> tautological;
    const HFSet layer4 = poly_apply(n, stages[4]);
    for (const auto& x : layer4.members()) tautological.emplace_back(x, x);
    FinFunction term_alg = FinFunction::from_pairs(tautological, poly_apply(n, stages[4]));
    for (const auto& u : terms) CHECK(fold_wterm(n, term_alg, u) == encode(n, u));

    FinFunction partial = FinFunction::from_pairs({{layer(z, {}), zero}}, HFSet::ordinal(1));
    CHECK_THROWS_AS(fold_wterm(n, partial, parse_wterm(n, "s(z)")), DomainError);
}

TEST_CASE("exactly one algebra morphism out of the terms", "[wtype]") {
    // every algebra structure on carriers of size 1..3, for nat; depth 3
    const Signature n = nat();
    for (std::size_t c = 1; c <= 3; ++c) {
        const HFSet carrier = HFSet::ordinal(c);
        oracle::for_each_function(poly_apply(n, carrier), carrier, [&](const FinFunction& alg) {
            REQUIRE(count_algebra_morphisms(n, alg, 3) == 1);
        });
    }
}

TEST_CASE("prefix sequences", "[wtype]") {
    const Signature n = nat();
    const WTerm ssz = parse_wterm(n, "s(s(z))");
    auto seq = seq_encode(ssz);
    CHECK(seq_names(n, seq) == std::vector<std::string>{"s", "s", "z"});
    CHECK(seq_decode(n, seq) == ssz);
    CHECK(seq_encode(WTerm(*n.find("z"))).size() == 1);
    const std::vector<std::string> bad{"s", "z", "z"};
    try {
        seq_decode(n, seq_from_names(n, bad));
        FAIL("expected a sequence error");
    } catch (const SequenceError& e) {
        CHECK(e.position() == 2);
    }
    CHECK_THROWS_AS(seq_decode(n, seq_from_names(n, std::vector<std::string>{"s"})), SequenceError);
    CHECK_THROWS_AS(seq_from_names(n, std::vector<std::string>{"q"}), SequenceError);
    std::set<std::vector<std::size_t>> seen;
    for (const Signature& sig : {nat(), bintree()}) {
        seen.clear();
        for (const auto& t : enumerate_wterms(sig, 4)) {
            auto e = seq_encode(t);
            REQUIRE(seq_decode(sig, e) == t);
            REQUIRE(seen.insert(e).second);
            REQUIRE(seq_from_names(sig, seq_names(sig, e)) == e);
        }
    }
}

TEST_CASE("finite trees over finite arities", "[wtype]") {
    auto k = konig_report(nat(), 5);
    CHECK(k.counts == std::vector<std::size_t>{1, 1, 1, 1, 1});
    CHECK(k.finite);
    CHECK(k.within_bound);
    CHECK(konig_report(bintree(), 3).counts == std::vector<std::size_t>{1, 1, 3});
    auto empty = konig_report(Signature::from_list({}), 3);
    CHECK(empty.counts.empty());
    CHECK(empty.max_height == 0);
}

TEST_CASE("signature files and term literals", "[wtype]") {
    Signature sig = parse_signature("# trees\nop leaf 0\nop node 2   # binary\n");
    CHECK(sig.size() == 2);
    CHECK(sig.op(0) == HFSet::ordinal(0));
    CHECK(sig.positions(1)[0] == HFSet::pair(HFSet::ordinal(1), HFSet::ordinal(1)));
    CHECK(sig.positions(1)[1] == HFSet::pair(HFSet::ordinal(1), HFSet::ordinal(0)));
    CHECK(parse_signature(to_string(sig)).arities() == sig.arities());
    CHECK(sig.max_arity() == 2);
    CHECK(sig.has_constant());
    WTerm t = parse_wterm(sig, "node(leaf, node(leaf,leaf))");
    CHECK(to_string(sig, t) == "node(leaf,node(leaf,leaf))");
    CHECK(t.height() == 3);
    CHECK(t.node_count() == 5);
    CHECK_THROWS_AS(parse_wterm(sig, "node(leaf)"), ParseError);
    CHECK_THROWS_AS(parse_signature("op a 0\nop a 1\n"), ParseError);
    CHECK_THROWS_AS(parse_signature("op a -1\n"), ParseError);
    try {
        parse_signature("op a 0\nfoo\n");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.line() == 2);
    }
    CHECK_THROWS_AS(decode(sig, HFSet::ordinal(5)), DomainError);
}
