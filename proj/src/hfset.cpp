#include "mactt/hfset.hpp"

#include <algorithm>
#include <limits>

#include "mactt/error.hpp"
#include "text_cursor.hpp"

namespace mactt {

namespace {
constexpr std::size_t kNotOrdinal = std::numeric_limits<std::size_t>::max();

std::size_t mix(std::size_t seed, std::size_t value) {
    return seed ^ (value + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}
}  // namespace

struct HFSet::Node {
    std::vector<HFSet> members;
    std::size_t hash = 0;
    std::size_t ordinal = kNotOrdinal;
};

const std::shared_ptr<const HFSet::Node>& HFSet::empty_node() {
    static const std::shared_ptr<const Node> node = [] {
        auto n = std::make_shared<Node>();
        n->hash = 0x5bd1e995;
        n->ordinal = 0;
        return std::shared_ptr<const Node>(std::move(n));
    }();
    return node;
}

HFSet::HFSet() : node_(empty_node()) {}

HFSet HFSet::from_canonical(std::vector<HFSet> sorted_unique) {
    if (sorted_unique.empty()) return HFSet();
    auto node = std::make_shared<Node>();
    std::size_t h = 0x5bd1e995 + sorted_unique.size();
    bool ordinal = true;
    for (std::size_t i = 0; i < sorted_unique.size(); ++i) {
        h = mix(h, sorted_unique[i].hash());
        if (ordinal && sorted_unique[i].node_->ordinal != i) ordinal = false;
    }
    node->hash = h;
    node->ordinal = ordinal ? sorted_unique.size() : kNotOrdinal;
    node->members = std::move(sorted_unique);
    return HFSet(std::move(node));
}

HFSet HFSet::of(std::vector<HFSet> members) {
    std::sort(members.begin(), members.end(),
              [](const HFSet& a, const HFSet& b) { return hf_compare(a, b) < 0; });
    members.erase(std::unique(members.begin(), members.end()), members.end());
    return from_canonical(std::move(members));
}

HFSet HFSet::ordinal(std::size_t n) {
    // Ordinals are increasing in the Ackermann order, so 0..n-1 is already sorted.
    std::vector<HFSet> members;
    members.reserve(n);
    HFSet current;
    for (std::size_t i = 0; i < n; ++i) {
        members.push_back(current);
        current = from_canonical(members);
    }
    return current;
}

HFSet HFSet::singleton(const HFSet& a) { return from_canonical({a}); }

HFSet HFSet::pair(const HFSet& a, const HFSet& b) {
    if (a == b) return singleton(singleton(a));
    return of({singleton(a), of({a, b})});
}

HFSet HFSet::tuple(std::span<const HFSet> entries) {
    if (entries.empty()) throw DomainError("tuple needs at least one entry");
    HFSet out = entries.back();
    for (std::size_t i = entries.size() - 1; i-- > 0;) out = pair(entries[i], out);
    return out;
}

std::span<const HFSet> HFSet::members() const& noexcept { return node_->members; }
std::size_t HFSet::size() const noexcept { return node_->members.size(); }
bool HFSet::empty() const noexcept { return node_->members.empty(); }
std::size_t HFSet::hash() const noexcept { return node_->hash; }

bool HFSet::contains(const HFSet& x) const {
    const auto& m = node_->members;
    auto it = std::lower_bound(m.begin(), m.end(), x,
                               [](const HFSet& a, const HFSet& b) { return hf_compare(a, b) < 0; });
    return it != m.end() && *it == x;
}

bool HFSet::is_subset_of(const HFSet& other) const {
    return std::all_of(node_->members.begin(), node_->members.end(),
                       [&](const HFSet& x) { return other.contains(x); });
}

std::optional<std::size_t> HFSet::as_ordinal() const noexcept {
    if (node_->ordinal == kNotOrdinal) return std::nullopt;
    return node_->ordinal;
}

std::optional<std::pair<HFSet, HFSet>> HFSet::as_pair() const {
    const auto& m = node_->members;
    if (m.size() == 1) {
        const auto& inner = m[0].node_->members;
        if (inner.size() == 1) return std::make_pair(inner[0], inner[0]);
        return std::nullopt;
    }
    if (m.size() != 2) return std::nullopt;
    // {x} precedes {x,y} because it is a proper subset.
    const auto& first = m[0].node_->members;
    const auto& second = m[1].node_->members;
    if (first.size() != 1 || second.size() != 2) return std::nullopt;
    const HFSet& x = first[0];
    if (second[0] == x) return std::make_pair(x, second[1]);
    if (second[1] == x) return std::make_pair(x, second[0]);
    return std::nullopt;
}

bool operator==(const HFSet& a, const HFSet& b) noexcept {
    if (a.node_ == b.node_) return true;
    if (a.node_->hash != b.node_->hash) return false;
    // Unshared copies of a large ordinal would otherwise be walked as trees.
    if (a.node_->ordinal != kNotOrdinal || b.node_->ordinal != kNotOrdinal) return a.node_->ordinal == b.node_->ordinal;
    const auto& x = a.node_->members;
    const auto& y = b.node_->members;
    if (x.size() != y.size()) return false;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (!(x[i] == y[i])) return false;
    }
    return true;
}

std::strong_ordering operator<=>(const HFSet& a, const HFSet& b) noexcept { return hf_compare(a, b); }

std::strong_ordering hf_compare(const HFSet& a, const HFSet& b) noexcept {
    if (a.node_->ordinal != kNotOrdinal && b.node_->ordinal != kNotOrdinal) return a.node_->ordinal <=> b.node_->ordinal;
    if (a == b) return std::strong_ordering::equal;
    auto x = a.members();
    auto y = b.members();
    std::size_t i = x.size();
    std::size_t j = y.size();
    while (i > 0 && j > 0) {
        --i;
        --j;
        auto c = hf_compare(x[i], y[j]);
        if (c != 0) return c;
    }
    if (i > 0) return std::strong_ordering::greater;
    if (j > 0) return std::strong_ordering::less;
    return std::strong_ordering::equal;
}

namespace {
bool less(const HFSet& a, const HFSet& b) { return hf_compare(a, b) < 0; }
}  // namespace

HFSet set_union(const HFSet& a, const HFSet& b) {
    std::vector<HFSet> out;
    std::set_union(a.members().begin(), a.members().end(), b.members().begin(), b.members().end(),
                   std::back_inserter(out), less);
    return HFSet::of(std::move(out));
}

HFSet set_intersection(const HFSet& a, const HFSet& b) {
    std::vector<HFSet> out;
    std::set_intersection(a.members().begin(), a.members().end(), b.members().begin(),
                          b.members().end(), std::back_inserter(out), less);
    return HFSet::of(std::move(out));
}

HFSet set_difference(const HFSet& a, const HFSet& b) {
    std::vector<HFSet> out;
    std::set_difference(a.members().begin(), a.members().end(), b.members().begin(),
                        b.members().end(), std::back_inserter(out), less);
    return HFSet::of(std::move(out));
}

HFSet powerset(const HFSet& a) {
    if (a.size() > 20) throw DomainError("powerset of a set with more than 20 members");
    std::vector<HFSet> subsets;
    const std::size_t n = a.size();
    subsets.reserve(std::size_t{1} << n);
    for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
        std::vector<HFSet> members;
        for (std::size_t i = 0; i < n; ++i) {
            if (mask & (std::size_t{1} << i)) members.push_back(a.members()[i]);
        }
        subsets.push_back(HFSet::of(std::move(members)));
    }
    return HFSet::of(std::move(subsets));
}

HFSet cartesian_product(const HFSet& a, const HFSet& b) {
    std::vector<HFSet> out;
    out.reserve(a.size() * b.size());
    for (const auto& x : a.members()) {
        for (const auto& y : b.members()) out.push_back(HFSet::pair(x, y));
    }
    return HFSet::of(std::move(out));
}

namespace {
void print(const HFSet& x, std::string& out) {
    if (auto n = x.as_ordinal()) {
        out += '#';
        out += std::to_string(*n);
        return;
    }
    if (auto p = x.as_pair()) {
        out += '<';
        print(p->first, out);
        out += ',';
        print(p->second, out);
        out += '>';
        return;
    }
    out += '{';
    bool first = true;
    for (const auto& m : x.members()) {
        if (!first) out += ',';
        first = false;
        print(m, out);
    }
    out += '}';
}
}  // namespace

std::string to_string(const HFSet& x) {
    std::string out;
    print(x, out);
    return out;
}

namespace detail {

bool hfset_starts(const TextCursor& cursor) {
    TextCursor probe = cursor;
    probe.skip_space();
    char c = probe.peek();
    return c == '{' || c == '#' || c == '<';
}

HFSet read_hfset(TextCursor& cursor) {
    cursor.skip_space();
    char c = cursor.peek();
    if (c == '#') {
        cursor.advance();
        if (!std::isdigit(static_cast<unsigned char>(cursor.peek()))) cursor.fail("expected digits after '#'");
        std::size_t n = 0;
        while (std::isdigit(static_cast<unsigned char>(cursor.peek()))) {
            n = n * 10 + static_cast<std::size_t>(cursor.advance() - '0');
            if (n > 100000) cursor.fail("ordinal literal too large");
        }
        return HFSet::ordinal(n);
    }
    if (c == '<') {
        cursor.advance();
        HFSet a = read_hfset(cursor);
        cursor.expect(",");
        HFSet b = read_hfset(cursor);
        cursor.expect(">");
        return HFSet::pair(a, b);
    }
    if (c == '{') {
        cursor.advance();
        std::vector<HFSet> members;
        cursor.skip_space();
        if (cursor.consume("}")) return HFSet();
        while (true) {
            members.push_back(read_hfset(cursor));
            cursor.skip_space();
            if (cursor.consume("}")) break;
            if (!cursor.consume(",")) cursor.fail("expected ',' or '}'");
        }
        return HFSet::of(std::move(members));
    }
    if (cursor.at_end()) cursor.fail("unexpected end of input, expected a set literal");
    cursor.fail(std::string("unexpected character '") + c + "', expected a set literal");
}

}  // namespace detail

HFSet parse_hfset(std::string_view text) {
    detail::TextCursor cursor(text);
    HFSet out = detail::read_hfset(cursor);
    cursor.skip_space();
    if (!cursor.at_end()) cursor.fail("trailing characters after set literal");
    return out;
}

}  // namespace mactt
