#include "mactt/wtype.hpp"

#include <algorithm>
#include <charconv>
#include <functional>
#include <unordered_map>

#include "text_cursor.hpp"

namespace mactt {

namespace {

bool name_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '#';
}

bool valid_name(std::string_view s) {
    return !s.empty() && std::all_of(s.begin(), s.end(), name_char) && s.front() != '#';
}

}  // namespace

Signature::Signature(FinFunction arities, std::vector<std::string> names)
    : arities_(std::move(arities)), names_(std::move(names)) {
    const auto ops = arities_.codomain().members();
    if (ops.size() != names_.size()) {
        throw DomainError("signature has " + std::to_string(ops.size()) + " operators but " +
                          std::to_string(names_.size()) + " names");
    }
    for (std::size_t i = 0; i < ops.size(); ++i) {
        if (!valid_name(names_[i])) throw DomainError("invalid operator name '" + names_[i] + "'");
        for (std::size_t j = 0; j < i; ++j) {
            if (names_[j] == names_[i]) throw DomainError("duplicate operator name '" + names_[i] + "'");
        }
        ops_.push_back(ops[i]);
        const HFSet fiber = arities_.fiber(ops[i]);
        positions_.emplace_back(fiber.members().begin(), fiber.members().end());
    }
}

Signature Signature::from_list(const std::vector<std::pair<std::string, std::size_t>>& ops) {
    std::vector<std::pair<HFSet, HFSet>> pairs;
    std::vector<std::string> names;
    for (std::size_t i = 0; i < ops.size(); ++i) {
        const HFSet a = HFSet::ordinal(i);
        for (std::size_t j = 0; j < ops[i].second; ++j) pairs.emplace_back(HFSet::pair(a, HFSet::ordinal(j)), a);
        names.push_back(ops[i].first);
    }
    return Signature(FinFunction::from_pairs(pairs, HFSet::ordinal(ops.size())), std::move(names));
}

std::optional<std::size_t> Signature::find(std::string_view name) const {
    for (std::size_t i = 0; i < names_.size(); ++i) {
        if (names_[i] == name) return i;
    }
    return std::nullopt;
}

std::optional<std::size_t> Signature::find(const HFSet& op) const {
    auto it = std::lower_bound(ops_.begin(), ops_.end(), op,
                               [](const HFSet& a, const HFSet& b) { return hf_compare(a, b) < 0; });
    if (it == ops_.end() || !(*it == op)) return std::nullopt;
    return static_cast<std::size_t>(it - ops_.begin());
}

bool Signature::has_constant() const {
    return std::any_of(positions_.begin(), positions_.end(), [](const auto& p) { return p.empty(); });
}

std::size_t Signature::max_arity() const {
    std::size_t m = 0;
    for (const auto& p : positions_) m = std::max(m, p.size());
    return m;
}

Signature parse_signature(std::string_view text) {
    std::vector<std::pair<std::string, std::size_t>> ops;
    std::size_t line_no = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t end = text.find('\n', start);
        if (end == std::string_view::npos) end = text.size();
        std::string_view line = text.substr(start, end - start);
        ++line_no;
        start = end + 1;
        if (auto hash = line.find('#'); hash != std::string_view::npos) {
            // '#' only starts a comment at the beginning of a token
            if (hash == 0 || std::isspace(static_cast<unsigned char>(line[hash - 1]))) line = line.substr(0, hash);
        }
        detail::TextCursor c(line, line_no, 1);
        c.skip_space();
        if (c.at_end()) continue;
        std::string keyword = c.identifier();
        if (keyword != "op") c.fail("expected 'op'");
        c.skip_space();
        const std::size_t name_col = c.column();
        std::string name;
        while (!c.at_end() && name_char(c.peek())) name.push_back(c.advance());
        if (!valid_name(name)) throw ParseError(line_no, name_col, "invalid operator name");
        for (const auto& [existing, _] : ops) {
            if (existing == name) throw ParseError(line_no, name_col, "duplicate operator '" + name + "'");
        }
        c.skip_space();
        std::string digits;
        const std::size_t arity_col = c.column();
        while (std::isdigit(static_cast<unsigned char>(c.peek()))) digits.push_back(c.advance());
        std::size_t arity = 0;
        auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), arity);
        if (digits.empty() || ec != std::errc() || arity > 64) throw ParseError(line_no, arity_col, "expected an arity");
        (void)ptr;
        c.skip_space();
        if (!c.at_end()) c.fail("unexpected text after arity");
        ops.emplace_back(std::move(name), arity);
        if (end == text.size()) break;
    }
    return Signature::from_list(ops);
}

std::string to_string(const Signature& sig) {
    std::string out;
    for (std::size_t i = 0; i < sig.size(); ++i) {
        out += "op " + sig.name(i) + " " + std::to_string(sig.arity(i)) + "\n";
    }
    return out;
}

// ---------------------------------------------------------------------------

WTerm::WTerm(std::size_t op, std::vector<WTerm> children) : op_(op), children_(std::move(children)) {}

std::size_t WTerm::height() const {
    std::size_t h = 0;
    for (const auto& c : children_) h = std::max(h, c.height());
    return h + 1;
}

std::size_t WTerm::node_count() const {
    std::size_t n = 1;
    for (const auto& c : children_) n += c.node_count();
    return n;
}

bool operator==(const WTerm& a, const WTerm& b) { return a.op_ == b.op_ && a.children_ == b.children_; }

bool well_formed(const Signature& sig, const WTerm& t) {
    if (t.op() >= sig.size() || t.children().size() != sig.arity(t.op())) return false;
    return std::all_of(t.children().begin(), t.children().end(),
                       [&](const WTerm& c) { return well_formed(sig, c); });
}

HFSet encode(const Signature& sig, const WTerm& t) {
    if (t.op() >= sig.size()) throw DomainError("term uses an operator outside the signature");
    auto pos = sig.positions(t.op());
    if (pos.size() != t.children().size()) {
        throw DomainError("operator " + sig.name(t.op()) + " expects " + std::to_string(pos.size()) + " arguments");
    }
    std::vector<HFSet> graph;
    graph.reserve(pos.size());
    for (std::size_t j = 0; j < pos.size(); ++j) graph.push_back(HFSet::pair(pos[j], encode(sig, t.children()[j])));
    return HFSet::pair(sig.op(t.op()), HFSet::of(std::move(graph)));
}

WTerm decode(const Signature& sig, const HFSet& code) {
    auto top = code.as_pair();
    if (!top) throw DomainError("not a term code: " + to_string(code));
    auto op = sig.find(top->first);
    if (!op) throw DomainError("unknown operator " + to_string(top->first));
    auto pos = sig.positions(*op);
    const auto& graph = top->second;
    if (graph.size() != pos.size()) throw DomainError("wrong number of arguments in " + to_string(code));
    std::vector<WTerm> children;
    children.reserve(pos.size());
    for (std::size_t j = 0; j < pos.size(); ++j) {
        std::optional<HFSet> child;
        for (const auto& entry : graph.members()) {
            auto pc = entry.as_pair();
            if (pc && pc->first == pos[j]) child = pc->second;
        }
        if (!child) throw DomainError("missing argument position in " + to_string(code));
        children.push_back(decode(sig, *child));
    }
    return WTerm(*op, std::move(children));
}

std::string to_string(const Signature& sig, const WTerm& t) {
    std::string out = sig.name(t.op());
    if (t.children().empty()) return out;
    out += '(';
    for (std::size_t j = 0; j < t.children().size(); ++j) {
        if (j) out += ',';
        out += to_string(sig, t.children()[j]);
    }
    return out + ')';
}

namespace {

WTerm read_term(const Signature& sig, detail::TextCursor& c) {
    c.skip_space();
    const std::size_t line = c.line();
    const std::size_t col = c.column();
    std::string name;
    while (!c.at_end() && name_char(c.peek())) name.push_back(c.advance());
    if (name.empty()) c.fail("expected an operator name");
    auto op = sig.find(name);
    if (!op) throw ParseError(line, col, "unknown operator '" + name + "'");
    std::vector<WTerm> children;
    c.skip_space();
    if (c.consume("(")) {
        c.skip_space();
        if (!c.consume(")")) {
            while (true) {
                children.push_back(read_term(sig, c));
                c.skip_space();
                if (c.consume(")")) break;
                if (!c.consume(",")) c.fail("expected ',' or ')'");
            }
        }
    }
    if (children.size() != sig.arity(*op)) {
        throw ParseError(line, col, "operator '" + name + "' expects " + std::to_string(sig.arity(*op)) +
                                        " arguments, got " + std::to_string(children.size()));
    }
    return WTerm(*op, std::move(children));
}

}  // namespace

WTerm parse_wterm(const Signature& sig, std::string_view text) {
    detail::TextCursor c(text);
    WTerm t = read_term(sig, c);
    c.skip_space();
    if (!c.at_end()) c.fail("trailing characters after term");
    return t;
}

// ---------------------------------------------------------------------------

HFSet poly_apply(const Signature& sig, const HFSet& x) {
    auto xs = x.members();
    std::vector<HFSet> out;
    for (std::size_t i = 0; i < sig.size(); ++i) {
        auto pos = sig.positions(i);
        const std::size_t k = pos.size();
        if (k > 0 && xs.empty()) continue;
        std::vector<std::size_t> choice(k, 0);
        while (true) {
            std::vector<HFSet> graph;
            graph.reserve(k);
            for (std::size_t j = 0; j < k; ++j) graph.push_back(HFSet::pair(pos[j], xs[choice[j]]));
            out.push_back(HFSet::pair(sig.op(i), HFSet::of(std::move(graph))));
            std::size_t j = 0;
            while (j < k && ++choice[j] == xs.size()) choice[j++] = 0;
            if (j == k) break;
        }
    }
    return HFSet::of(std::move(out));
}

PolyIteration poly_iterate(const Signature& sig, std::size_t n) {
    PolyIteration it;
    it.stages.push_back(HFSet());
    for (std::size_t i = 0; i < n; ++i) {
        HFSet next = poly_apply(sig, it.stages.back());
        if (!it.stages.back().is_subset_of(next)) throw Error("polynomial iterate is not increasing");
        std::vector<std::pair<HFSet, HFSet>> pairs;
        for (const auto& m : it.stages.back().members()) pairs.emplace_back(m, m);
        it.inclusions.push_back(FinFunction::from_pairs(pairs, next));
        it.stages.push_back(std::move(next));
    }
    if (!sig.has_constant()) {
        it.stable_from = 0;
    } else if (sig.max_arity() == 0) {
        it.stable_from = 1;
    }
    return it;
}

std::vector<WTerm> enumerate_wterms(const Signature& sig, std::size_t depth) {
    std::vector<WTerm> level;  // all terms of height <= h
    for (std::size_t h = 1; h <= depth; ++h) {
        std::vector<WTerm> next;
        for (std::size_t i = 0; i < sig.size(); ++i) {
            const std::size_t k = sig.arity(i);
            if (k > 0 && level.empty()) continue;
            std::vector<std::size_t> choice(k, 0);
            while (true) {
                std::vector<WTerm> children;
                children.reserve(k);
                for (std::size_t j = 0; j < k; ++j) children.push_back(level[choice[j]]);
                next.emplace_back(i, std::move(children));
                std::size_t j = 0;
                while (j < k && ++choice[j] == level.size()) choice[j++] = 0;
                if (j == k) break;
            }
        }
        level = std::move(next);
    }
    std::vector<std::pair<HFSet, std::size_t>> keyed;
    keyed.reserve(level.size());
    for (std::size_t i = 0; i < level.size(); ++i) keyed.emplace_back(encode(sig, level[i]), i);
    std::sort(keyed.begin(), keyed.end(), [](const auto& a, const auto& b) { return hf_compare(a.first, b.first) < 0; });
    std::vector<WTerm> out;
    out.reserve(level.size());
    for (const auto& [_, i] : keyed) out.push_back(level[i]);
    return out;
}

namespace {

HFSet layer(const Signature& sig, std::size_t op, std::span<const HFSet> values) {
    auto pos = sig.positions(op);
    std::vector<HFSet> graph;
    graph.reserve(pos.size());
    for (std::size_t j = 0; j < pos.size(); ++j) graph.push_back(HFSet::pair(pos[j], values[j]));
    return HFSet::pair(sig.op(op), HFSet::of(std::move(graph)));
}

}  // namespace

HFSet fold_wterm(const Signature& sig, const FinFunction& algebra, const WTerm& t) {
    if (!well_formed(sig, t)) throw DomainError("term is not well formed over the signature");
    std::vector<HFSet> values;
    values.reserve(t.children().size());
    for (const auto& c : t.children()) values.push_back(fold_wterm(sig, algebra, c));
    HFSet l = layer(sig, t.op(), values);
    if (!algebra.domain().contains(l)) throw DomainError("algebra is undefined on " + to_string(l));
    return algebra(l);
}

std::size_t count_algebra_morphisms(const Signature& sig, const FinFunction& algebra, std::size_t depth) {
    const auto terms = enumerate_wterms(sig, depth);
    const auto carrier = algebra.codomain().members();
    std::unordered_map<HFSet, std::size_t, HFSetHash> index;
    std::vector<HFSet> codes;
    for (std::size_t i = 0; i < terms.size(); ++i) {
        codes.push_back(encode(sig, terms[i]));
        index.emplace(codes.back(), i);
    }
    // children indices of each term
    std::vector<std::vector<std::size_t>> kids(terms.size());
    for (std::size_t i = 0; i < terms.size(); ++i) {
        for (const auto& c : terms[i].children()) kids[i].push_back(index.at(encode(sig, c)));
    }
    double space = 1;
    for (std::size_t i = 0; i < terms.size(); ++i) space *= static_cast<double>(carrier.size());
    if (space > 5e7) throw DomainError("too many candidate functions to enumerate");
    if (carrier.empty()) return terms.empty() ? 1 : 0;

    std::size_t count = 0;
    std::vector<std::size_t> h(terms.size(), 0);
    std::vector<HFSet> args;
    while (true) {
        bool commutes = true;
        for (std::size_t i = 0; i < terms.size() && commutes; ++i) {
            args.clear();
            for (std::size_t k : kids[i]) args.push_back(carrier[h[k]]);
            HFSet l = layer(sig, terms[i].op(), args);
            commutes = algebra.domain().contains(l) && algebra(l) == carrier[h[i]];
        }
        if (commutes) ++count;
        std::size_t j = 0;
        while (j < h.size() && ++h[j] == carrier.size()) h[j++] = 0;
        if (j == h.size()) break;
    }
    return count;
}

// ---------------------------------------------------------------------------

SequenceError::SequenceError(std::size_t position, const std::string& message)
    : Error("position " + std::to_string(position) + ": " + message), position_(position) {}

std::vector<std::size_t> seq_encode(const WTerm& t) {
    std::vector<std::size_t> out;
    std::function<void(const WTerm&)> walk = [&](const WTerm& u) {
        out.push_back(u.op());
        for (const auto& c : u.children()) walk(c);
    };
    walk(t);
    return out;
}

WTerm seq_decode(const Signature& sig, std::span<const std::size_t> symbols) {
    std::size_t open = 1;
    for (std::size_t i = 0; i < symbols.size(); ++i) {
        if (open == 0) throw SequenceError(i, "symbol after a complete term");
        if (symbols[i] >= sig.size()) throw SequenceError(i, "unknown operator");
        open = open - 1 + sig.arity(symbols[i]);
    }
    if (open > 0) {
        throw SequenceError(symbols.size(), "sequence ends with " + std::to_string(open) + " open argument slot(s)");
    }
    std::size_t next = 0;
    std::function<WTerm()> build = [&]() {
        const std::size_t op = symbols[next++];
        std::vector<WTerm> children;
        for (std::size_t j = 0; j < sig.arity(op); ++j) children.push_back(build());
        return WTerm(op, std::move(children));
    };
    return build();
}

std::vector<std::string> seq_names(const Signature& sig, std::span<const std::size_t> symbols) {
    std::vector<std::string> out;
    for (std::size_t s : symbols) out.push_back(sig.name(s));
    return out;
}

std::vector<std::size_t> seq_from_names(const Signature& sig, std::span<const std::string> names) {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < names.size(); ++i) {
        auto op = sig.find(names[i]);
        if (!op) throw SequenceError(i, "unknown operator '" + names[i] + "'");
        out.push_back(*op);
    }
    return out;
}

KonigReport konig_report(const Signature& sig, std::size_t depth) {
    KonigReport r;
    const auto terms = enumerate_wterms(sig, depth);
    r.counts.assign(depth, 0);
    for (const auto& t : terms) {
        const std::size_t h = t.height();
        r.max_height = std::max(r.max_height, h);
        r.max_node_count = std::max(r.max_node_count, t.node_count());
        if (h == 0 || h > depth) {
            r.finite = false;
            continue;
        }
        ++r.counts[h - 1];
    }
    const auto it = poly_iterate(sig, depth);
    std::size_t cumulative = 0;
    for (std::size_t h = 0; h <= depth; ++h) {
        r.iterate_sizes.push_back(it.stages[h].size());
        if (h > 0) cumulative += r.counts[h - 1];
        if (cumulative != it.stages[h].size()) r.within_bound = false;
    }
    while (!r.counts.empty() && r.counts.back() == 0) r.counts.pop_back();
    return r;
}

}  // namespace mactt
