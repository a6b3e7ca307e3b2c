#include "mactt/delta.hpp"

#include <algorithm>

#include "mactt/error.hpp"
#include "text_cursor.hpp"

namespace mactt {

DeltaMap::DeltaMap(int source, int target, std::vector<int> values)
    : source_(source), target_(target), values_(std::move(values)) {
    if (source < 0 || target < 0) throw DomainError("simplex dimensions must be non-negative");
    if (values_.size() != static_cast<std::size_t>(source) + 1) {
        throw DomainError("map out of [" + std::to_string(source) + "] needs " + std::to_string(source + 1) +
                          " values");
    }
    for (std::size_t i = 0; i < values_.size(); ++i) {
        if (values_[i] < 0 || values_[i] > target) throw DomainError("value out of range in " + to_string(*this));
        if (i > 0 && values_[i] < values_[i - 1]) throw DomainError("map is not monotone: " + to_string(*this));
    }
}

DeltaMap DeltaMap::identity(int n) {
    std::vector<int> v(static_cast<std::size_t>(n) + 1);
    for (int i = 0; i <= n; ++i) v[static_cast<std::size_t>(i)] = i;
    return DeltaMap(n, n, std::move(v));
}

DeltaMap DeltaMap::face(int n, int i) {
    if (n < 1 || i < 0 || i > n) throw DomainError("face index out of range");
    std::vector<int> v;
    for (int t = 0; t < n; ++t) v.push_back(t < i ? t : t + 1);
    return DeltaMap(n - 1, n, std::move(v));
}

DeltaMap DeltaMap::degeneracy(int n, int i) {
    if (n < 0 || i < 0 || i > n) throw DomainError("degeneracy index out of range");
    std::vector<int> v;
    for (int t = 0; t <= n + 1; ++t) v.push_back(t <= i ? t : t - 1);
    return DeltaMap(n + 1, n, std::move(v));
}

DeltaMap DeltaMap::constant(int source, int target, int value) {
    return DeltaMap(source, target, std::vector<int>(static_cast<std::size_t>(source) + 1, value));
}

bool DeltaMap::is_identity() const { return source_ == target_ && is_injective(); }

bool DeltaMap::is_injective() const {
    return std::adjacent_find(values_.begin(), values_.end()) == values_.end();
}

bool DeltaMap::is_surjective() const {
    return values_.front() == 0 && values_.back() == target_ &&
           std::adjacent_find(values_.begin(), values_.end(), [](int a, int b) { return b > a + 1; }) ==
               values_.end();
}

FinFunction DeltaMap::to_fin_function() const {
    std::vector<HFSet> values;
    values.reserve(values_.size());
    for (int v : values_) values.push_back(HFSet::ordinal(static_cast<std::size_t>(v)));
    return FinFunction(HFSet::ordinal(static_cast<std::size_t>(source_) + 1),
                       HFSet::ordinal(static_cast<std::size_t>(target_) + 1), std::move(values));
}

namespace {
void check_dimension(int n, int d, const char* what) {
    if (n < 0) throw DomainError(std::string(what) + " must be non-negative");
    if (n > d) {
        throw TruncationError(std::string(what) + " " + std::to_string(n) + " exceeds truncation " + std::to_string(d),
                              n);
    }
}

void extend(int n, int m, std::vector<int>& prefix, std::vector<DeltaMap>& out) {
    if (prefix.size() == static_cast<std::size_t>(n) + 1) {
        out.emplace_back(n, m, prefix);
        return;
    }
    int lo = prefix.empty() ? 0 : prefix.back();
    for (int v = lo; v <= m; ++v) {
        prefix.push_back(v);
        extend(n, m, prefix, out);
        prefix.pop_back();
    }
}
}  // namespace

std::vector<DeltaMap> delta_hom(int n, int m, int d) {
    check_dimension(n, d, "source dimension");
    check_dimension(m, d, "target dimension");
    std::vector<DeltaMap> out;
    std::vector<int> prefix;
    extend(n, m, prefix, out);
    return out;
}

DeltaMap delta_compose(const DeltaMap& g, const DeltaMap& f) {
    if (f.target() != g.source()) {
        throw DomainError("cannot compose " + to_string(g) + " after " + to_string(f) + ": endpoints differ");
    }
    std::vector<int> v;
    v.reserve(f.values().size());
    for (int x : f.values()) v.push_back(g(x));
    return DeltaMap(f.source(), g.target(), std::move(v));
}

DeltaGenerators delta_generators(int n, int d) {
    check_dimension(n, d, "dimension");
    DeltaGenerators gens;
    if (n >= 1) {
        for (int i = 0; i <= n; ++i) gens.faces.push_back(DeltaMap::face(n, i));
    }
    if (n < d) {
        for (int i = 0; i <= n; ++i) gens.degeneracies.push_back(DeltaMap::degeneracy(n, i));
    }
    return gens;
}

GeneratorWord normal_form(const DeltaMap& f) {
    GeneratorWord word;
    for (int v = f.target(); v >= 0; --v) {
        if (std::find(f.values().begin(), f.values().end(), v) == f.values().end()) word.face_indices.push_back(v);
    }
    for (int j = 0; j < f.source(); ++j) {
        if (f(j) == f(j + 1)) word.degeneracy_indices.push_back(j);
    }
    return word;
}

DeltaMap from_normal_form(const GeneratorWord& word, int source) {
    DeltaMap acc = DeltaMap::identity(source);
    // Rightmost generators act first: sigma_{j_t} ... then delta_{i_1} last.
    for (auto it = word.degeneracy_indices.rbegin(); it != word.degeneracy_indices.rend(); ++it) {
        acc = delta_compose(DeltaMap::degeneracy(acc.target() - 1, *it), acc);
    }
    for (auto it = word.face_indices.rbegin(); it != word.face_indices.rend(); ++it) {
        acc = delta_compose(DeltaMap::face(acc.target() + 1, *it), acc);
    }
    return acc;
}

std::pair<DeltaMap, DeltaMap> epi_mono(const DeltaMap& f) {
    std::vector<int> image(f.values().begin(), f.values().end());
    image.erase(std::unique(image.begin(), image.end()), image.end());
    const int r = static_cast<int>(image.size()) - 1;
    std::vector<int> epi;
    for (int x : f.values()) {
        epi.push_back(static_cast<int>(std::lower_bound(image.begin(), image.end(), x) - image.begin()));
    }
    return {DeltaMap(f.source(), r, std::move(epi)), DeltaMap(r, f.target(), std::move(image))};
}

std::string to_string(const DeltaMap& f) {
    std::string out = std::to_string(f.source()) + "->" + std::to_string(f.target()) + ":[";
    for (std::size_t i = 0; i < f.values().size(); ++i) {
        if (i) out += ',';
        out += std::to_string(f.values()[i]);
    }
    return out + "]";
}

namespace {
int read_int(detail::TextCursor& c) {
    c.skip_space();
    if (!std::isdigit(static_cast<unsigned char>(c.peek()))) c.fail("expected a number");
    int n = 0;
    while (std::isdigit(static_cast<unsigned char>(c.peek()))) {
        n = n * 10 + (c.advance() - '0');
        if (n > 1000000) c.fail("number too large");
    }
    return n;
}
}  // namespace

DeltaMap parse_delta_map(std::string_view text) {
    detail::TextCursor c(text);
    int n = read_int(c);
    c.expect("->");
    int m = read_int(c);
    c.expect(":");
    c.expect("[");
    std::vector<int> values;
    c.skip_space();
    if (!c.consume("]")) {
        while (true) {
            values.push_back(read_int(c));
            c.skip_space();
            if (c.consume("]")) break;
            if (!c.consume(",")) c.fail("expected ',' or ']'");
        }
    }
    c.skip_space();
    if (!c.at_end()) c.fail("trailing characters after map");
    try {
        return DeltaMap(n, m, std::move(values));
    } catch (const DomainError& e) {
        throw ParseError(1, 1, e.what());
    }
}

std::size_t binomial(std::size_t n, std::size_t k) {
    if (k > n) return 0;
    std::size_t r = 1;
    for (std::size_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

}  // namespace mactt
