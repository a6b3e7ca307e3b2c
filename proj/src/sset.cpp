#include "mactt/sset.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <unordered_map>

#include "mactt/error.hpp"

namespace mactt {

struct SimplicialSet::Data {
    int d = 0;
    std::vector<HFSet> ids;
    std::vector<int> dims;
    std::vector<std::size_t> offsets;  // offsets[n] = first index of dimension n, size d+2
    std::vector<std::vector<SimplexIndex>> faces;
    std::vector<std::vector<SimplexIndex>> degeneracies;
    std::unordered_map<HFSet, SimplexIndex, HFSetHash> lookup;
};

SimplicialSet::SimplicialSet(int d) {
    if (d < 0) throw DomainError("truncation must be non-negative");
    auto data = std::make_shared<Data>();
    data->d = d;
    data->offsets.assign(static_cast<std::size_t>(d) + 2, 0);
    data_ = std::move(data);
}

int SimplicialSet::truncation() const noexcept { return data_->d; }
std::size_t SimplicialSet::size() const noexcept { return data_->ids.size(); }
const HFSet& SimplicialSet::id(SimplexIndex x) const { return data_->ids.at(x); }
int SimplicialSet::dim(SimplexIndex x) const { return data_->dims.at(x); }

std::optional<SimplexIndex> SimplicialSet::find(const HFSet& id) const {
    auto it = data_->lookup.find(id);
    if (it == data_->lookup.end()) return std::nullopt;
    return it->second;
}

SimplexIndex SimplicialSet::index_of(const HFSet& id) const {
    auto x = find(id);
    if (!x) throw DomainError("no simplex with id " + to_string(id));
    return *x;
}

std::pair<SimplexIndex, SimplexIndex> SimplicialSet::range(int n) const {
    if (n < 0 || n > data_->d) return {0, 0};
    return {data_->offsets[static_cast<std::size_t>(n)], data_->offsets[static_cast<std::size_t>(n) + 1]};
}

std::size_t SimplicialSet::count(int n) const {
    auto [lo, hi] = range(n);
    return hi - lo;
}

SimplexIndex SimplicialSet::face(SimplexIndex x, int i) const {
    return data_->faces.at(x).at(static_cast<std::size_t>(i));
}

SimplexIndex SimplicialSet::degeneracy(SimplexIndex x, int i) const {
    return data_->degeneracies.at(x).at(static_cast<std::size_t>(i));
}

SimplexIndex SimplicialSet::act(const DeltaMap& f, SimplexIndex x) const {
    if (f.target() != dim(x)) {
        throw DomainError("cannot act by " + to_string(f) + " on a simplex of dimension " + std::to_string(dim(x)));
    }
    if (f.source() > data_->d) throw TruncationError("action source exceeds truncation", f.source());
    GeneratorWord word = normal_form(f);
    SimplexIndex y = x;
    for (int i : word.face_indices) y = face(y, i);
    for (int j : word.degeneracy_indices) y = degeneracy(y, j);
    return y;
}

SimplexIndex SimplicialSet::act_alternative(const DeltaMap& f, SimplexIndex x) const {
    if (f.target() != dim(x)) {
        throw DomainError("cannot act by " + to_string(f) + " on a simplex of dimension " + std::to_string(dim(x)));
    }
    if (f.is_identity()) return x;
    std::vector<int> v(f.values().begin(), f.values().end());
    if (!f.is_surjective()) {
        int missing = 0;
        while (std::find(v.begin(), v.end(), missing) != v.end()) ++missing;
        for (int& t : v) {
            if (t > missing) --t;
        }
        return act_alternative(DeltaMap(f.source(), f.target() - 1, std::move(v)), face(x, missing));
    }
    int j = f.source() - 1;
    while (v[static_cast<std::size_t>(j)] != v[static_cast<std::size_t>(j) + 1]) --j;
    v.erase(v.begin() + j + 1);
    return degeneracy(act_alternative(DeltaMap(f.source() - 1, f.target(), std::move(v)), x), j);
}

bool SimplicialSet::is_degenerate(SimplexIndex x) const {
    const int n = dim(x);
    for (int i = 0; i < n; ++i) {
        if (degeneracy(face(x, i), i) == x) return true;
    }
    return false;
}

int SimplicialSet::max_nondegenerate_dim() const {
    for (int n = data_->d; n >= 0; --n) {
        auto [lo, hi] = range(n);
        for (SimplexIndex x = lo; x < hi; ++x) {
            if (!is_degenerate(x)) return n;
        }
    }
    return -1;
}

HFSet SimplicialSet::total() const { return HFSet::of(data_->ids); }

FinFunction SimplicialSet::projection() const {
    std::vector<std::pair<HFSet, HFSet>> pairs;
    pairs.reserve(size());
    for (SimplexIndex x = 0; x < size(); ++x) {
        pairs.emplace_back(id(x), HFSet::ordinal(static_cast<std::size_t>(dim(x))));
    }
    return FinFunction::from_pairs(pairs, HFSet::ordinal(static_cast<std::size_t>(data_->d) + 1));
}

bool operator==(const SimplicialSet& a, const SimplicialSet& b) {
    if (a.data_ == b.data_) return true;
    const auto& x = *a.data_;
    const auto& y = *b.data_;
    return x.d == y.d && x.ids == y.ids && x.faces == y.faces && x.degeneracies == y.degeneracies;
}

// ---------------------------------------------------------------------------

SimplicialSetBuilder::SimplicialSetBuilder(int d) : d_(d) {
    if (d < 0) throw DomainError("truncation must be non-negative");
}

std::size_t SimplicialSetBuilder::add_simplex(HFSet id, int dim) {
    if (dim < 0 || dim > d_) {
        throw TruncationError("simplex " + to_string(id) + " has dimension " + std::to_string(dim) +
                                  " outside 0.." + std::to_string(d_),
                              dim);
    }
    ids_.push_back(std::move(id));
    dims_.push_back(dim);
    faces_.emplace_back(dim >= 1 ? static_cast<std::size_t>(dim) + 1 : 0);
    degeneracies_.emplace_back(dim < d_ ? static_cast<std::size_t>(dim) + 1 : 0);
    return ids_.size() - 1;
}

void SimplicialSetBuilder::set_face(std::size_t x, int i, std::size_t y) {
    auto& slots = faces_.at(x);
    if (i < 0 || static_cast<std::size_t>(i) >= slots.size() || y >= ids_.size()) {
        throw DomainError("face d_" + std::to_string(i) + " is not defined on " + to_string(ids_.at(x)));
    }
    slots[static_cast<std::size_t>(i)] = y;
}

void SimplicialSetBuilder::set_degeneracy(std::size_t x, int i, std::size_t y) {
    auto& slots = degeneracies_.at(x);
    if (i < 0 || static_cast<std::size_t>(i) >= slots.size() || y >= ids_.size()) {
        throw DomainError("degeneracy s_" + std::to_string(i) + " is not defined on " + to_string(ids_.at(x)));
    }
    slots[static_cast<std::size_t>(i)] = y;
}

SimplicialSetBuilder::Result SimplicialSetBuilder::build() const {
    const std::size_t n = ids_.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (dims_[a] != dims_[b]) return dims_[a] < dims_[b];
        return hf_compare(ids_[a], ids_[b]) < 0;
    });
    std::vector<SimplexIndex> placement(n);
    for (std::size_t pos = 0; pos < n; ++pos) placement[order[pos]] = pos;

    auto data = std::make_shared<SimplicialSet::Data>();
    data->d = d_;
    data->offsets.assign(static_cast<std::size_t>(d_) + 2, 0);
    data->ids.reserve(n);
    data->dims.reserve(n);
    data->faces.resize(n);
    data->degeneracies.resize(n);
    for (std::size_t pos = 0; pos < n; ++pos) {
        const std::size_t h = order[pos];
        if (pos > 0 && data->ids.back() == ids_[h]) throw DomainError("duplicate simplex id " + to_string(ids_[h]));
        data->ids.push_back(ids_[h]);
        data->dims.push_back(dims_[h]);
        auto fill = [&](const std::vector<std::optional<std::size_t>>& slots, std::vector<SimplexIndex>& out,
                        const char* kind) {
            out.reserve(slots.size());
            for (std::size_t i = 0; i < slots.size(); ++i) {
                if (!slots[i]) {
                    throw DomainError(std::string("missing action entry ") + kind + std::to_string(i) + "@" +
                                      std::to_string(dims_[h]) + " on " + to_string(ids_[h]));
                }
                out.push_back(placement[*slots[i]]);
            }
        };
        fill(faces_[h], data->faces[pos], "d_");
        fill(degeneracies_[h], data->degeneracies[pos], "s_");
    }
    for (std::size_t pos = 0; pos < n; ++pos) {
        if (!data->lookup.emplace(data->ids[pos], pos).second) {
            throw DomainError("duplicate simplex id " + to_string(data->ids[pos]));
        }
        data->offsets[static_cast<std::size_t>(data->dims[pos]) + 1] = pos + 1;
    }
    for (std::size_t k = 1; k < data->offsets.size(); ++k) {
        data->offsets[k] = std::max(data->offsets[k], data->offsets[k - 1]);
    }
    return Result{SimplicialSet(std::shared_ptr<const SimplicialSet::Data>(std::move(data))), std::move(placement)};
}

// ---------------------------------------------------------------------------

namespace {

std::string gen_name(char kind, int i, int n) {
    return std::string(1, kind) + "_" + std::to_string(i) + "@" + std::to_string(n);
}

}  // namespace

std::vector<PresheafViolation> validate_presheaf(const SimplicialSet& x) {
    std::vector<PresheafViolation> out;
    const int d = x.truncation();
    for (SimplexIndex s = 0; s < x.size(); ++s) {
        const int n = x.dim(s);
        for (int i = 0; n >= 1 && i <= n; ++i) {
            if (x.dim(x.face(s, i)) != n - 1) {
                out.push_back({"dimension", gen_name('d', i, n), x.id(s), "face has the wrong dimension"});
            }
        }
        for (int i = 0; n < d && i <= n; ++i) {
            if (x.dim(x.degeneracy(s, i)) != n + 1) {
                out.push_back({"dimension", gen_name('s', i, n), x.id(s), "degeneracy has the wrong dimension"});
            }
        }
    }
    if (!out.empty()) return out;

    auto report = [&](const char* law, std::string gens, SimplexIndex s, SimplexIndex lhs, SimplexIndex rhs) {
        out.push_back({law, std::move(gens), x.id(s), to_string(x.id(lhs)) + " != " + to_string(x.id(rhs))});
    };
    for (SimplexIndex s = 0; s < x.size(); ++s) {
        const int n = x.dim(s);
        // d_i d_j = d_{j-1} d_i, i < j
        for (int j = 0; n >= 2 && j <= n; ++j) {
            for (int i = 0; i < j; ++i) {
                SimplexIndex lhs = x.face(x.face(s, j), i);
                SimplexIndex rhs = x.face(x.face(s, i), j - 1);
                if (lhs != rhs) report("d_i d_j = d_{j-1} d_i", gen_name('d', i, n - 1) + " " + gen_name('d', j, n), s, lhs, rhs);
            }
        }
        if (n < d) {
            for (int j = 0; j <= n; ++j) {
                SimplexIndex sj = x.degeneracy(s, j);
                for (int i = 0; i <= n + 1; ++i) {
                    SimplexIndex lhs = x.face(sj, i);
                    SimplexIndex rhs;
                    const char* law;
                    if (i < j) {
                        rhs = x.degeneracy(x.face(s, i), j - 1);
                        law = "d_i s_j = s_{j-1} d_i";
                    } else if (i == j || i == j + 1) {
                        rhs = s;
                        law = "d_j s_j = d_{j+1} s_j = id";
                    } else {
                        rhs = x.degeneracy(x.face(s, i - 1), j);
                        law = "d_i s_j = s_j d_{i-1}";
                    }
                    if (lhs != rhs) report(law, gen_name('d', i, n + 1) + " " + gen_name('s', j, n), s, lhs, rhs);
                }
            }
        }
        // s_i s_j = s_{j+1} s_i, i <= j
        if (n + 2 <= d) {
            for (int j = 0; j <= n; ++j) {
                for (int i = 0; i <= j; ++i) {
                    SimplexIndex lhs = x.degeneracy(x.degeneracy(s, j), i);
                    SimplexIndex rhs = x.degeneracy(x.degeneracy(s, i), j + 1);
                    if (lhs != rhs) report("s_i s_j = s_{j+1} s_i", gen_name('s', i, n + 1) + " " + gen_name('s', j, n), s, lhs, rhs);
                }
            }
        }
    }
    return out;
}

std::string to_string(const PresheafViolation& v) {
    return v.law + " fails for " + v.generator + " at " + to_string(v.simplex) + ": " + v.detail;
}

std::vector<SimplexIndex> simplices_at(const SimplicialSet& x, int n) {
    if (n < 0 || n > x.truncation()) {
        throw TruncationError("dimension " + std::to_string(n) + " outside 0.." + std::to_string(x.truncation()), n);
    }
    auto [lo, hi] = x.range(n);
    std::vector<SimplexIndex> out(hi - lo);
    std::iota(out.begin(), out.end(), lo);
    return out;
}

// ---------------------------------------------------------------------------

std::optional<std::string> map_violation(const SimplicialSet& source, const SimplicialSet& target,
                                         std::span<const SimplexIndex> carrier) {
    if (source.truncation() != target.truncation()) return "source and target have different truncations";
    if (carrier.size() != source.size()) return "carrier size differs from the number of source simplices";
    for (SimplexIndex s = 0; s < source.size(); ++s) {
        if (carrier[s] >= target.size()) return "carrier value out of range at " + to_string(source.id(s));
        if (target.dim(carrier[s]) != source.dim(s)) return "dimension not preserved at " + to_string(source.id(s));
    }
    for (SimplexIndex s = 0; s < source.size(); ++s) {
        const int n = source.dim(s);
        for (int i = 0; n >= 1 && i <= n; ++i) {
            if (carrier[source.face(s, i)] != target.face(carrier[s], i)) {
                return "does not commute with " + gen_name('d', i, n) + " at " + to_string(source.id(s));
            }
        }
        for (int i = 0; n < source.truncation() && i <= n; ++i) {
            if (carrier[source.degeneracy(s, i)] != target.degeneracy(carrier[s], i)) {
                return "does not commute with " + gen_name('s', i, n) + " at " + to_string(source.id(s));
            }
        }
    }
    return std::nullopt;
}

SimplicialMap::SimplicialMap(SimplicialSet source, SimplicialSet target, std::vector<SimplexIndex> carrier)
    : source_(std::move(source)), target_(std::move(target)), carrier_(std::move(carrier)) {
    if (auto why = map_violation(source_, target_, carrier_)) throw DomainError("not a simplicial map: " + *why);
}

SimplicialMap::SimplicialMap(SimplicialSet source, SimplicialSet target, std::vector<SimplexIndex> carrier,
                             Unchecked)
    : source_(std::move(source)), target_(std::move(target)), carrier_(std::move(carrier)) {}

SimplicialMap SimplicialMap::identity(const SimplicialSet& x) {
    std::vector<SimplexIndex> c(x.size());
    std::iota(c.begin(), c.end(), 0);
    return SimplicialMap(x, x, std::move(c), Unchecked{});
}

bool SimplicialMap::is_monic() const {
    std::vector<SimplexIndex> sorted = carrier_;
    std::sort(sorted.begin(), sorted.end());
    return std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end();
}

FinFunction SimplicialMap::to_fin_function() const {
    std::vector<std::pair<HFSet, HFSet>> pairs;
    pairs.reserve(carrier_.size());
    for (SimplexIndex s = 0; s < carrier_.size(); ++s) pairs.emplace_back(source_.id(s), target_.id(carrier_[s]));
    return FinFunction::from_pairs(pairs, target_.total());
}

SimplicialMap compose(const SimplicialMap& g, const SimplicialMap& f) {
    if (!(f.target() == g.source())) throw DomainError("cannot compose simplicial maps: endpoints differ");
    std::vector<SimplexIndex> c;
    c.reserve(f.carrier().size());
    for (SimplexIndex s : f.carrier()) c.push_back(g(s));
    return SimplicialMap(f.source(), g.target(), std::move(c), SimplicialMap::Unchecked{});
}

// ---------------------------------------------------------------------------

namespace {

constexpr SimplexIndex kUnassigned = static_cast<SimplexIndex>(-1);

class MapSearch {
public:
    MapSearch(const SimplicialSet& s, const SimplicialSet& t, const MapConstraints& c,
              const std::function<bool(std::span<const SimplexIndex>)>& visit)
        : s_(s), t_(t), c_(c), visit_(visit), assign_(s.size(), kUnassigned) {
        for (SimplexIndex x = 0; x < s.size(); ++x) {
            if (!s.is_degenerate(x)) roots_.push_back(x);
        }
    }

    void run() {
        if (s_.truncation() != t_.truncation()) throw DomainError("map search: truncations differ");
        if (!c_.fixed.empty()) {
            if (c_.fixed.size() != s_.size()) throw DomainError("map search: fixed table has the wrong size");
            for (SimplexIndex x = 0; x < s_.size(); ++x) {
                if (c_.fixed[x] && !assign(x, *c_.fixed[x])) return;
            }
        }
        descend(0);
    }

private:
    bool assign(SimplexIndex x0, SimplexIndex y0) {
        stack_.clear();
        stack_.emplace_back(x0, y0);
        while (!stack_.empty()) {
            auto [x, y] = stack_.back();
            stack_.pop_back();
            if (y >= t_.size() || t_.dim(y) != s_.dim(x)) return false;
            if (assign_[x] != kUnassigned) {
                if (assign_[x] != y) return false;
                continue;
            }
            if (c_.allowed && !c_.allowed(x, y)) return false;
            assign_[x] = y;
            trail_.push_back(x);
            const int n = s_.dim(x);
            for (int i = 0; n >= 1 && i <= n; ++i) stack_.emplace_back(s_.face(x, i), t_.face(y, i));
            for (int i = 0; n < s_.truncation() && i <= n; ++i) {
                stack_.emplace_back(s_.degeneracy(x, i), t_.degeneracy(y, i));
            }
        }
        return true;
    }

    void undo(std::size_t mark) {
        while (trail_.size() > mark) {
            assign_[trail_.back()] = kUnassigned;
            trail_.pop_back();
        }
    }

    bool descend(std::size_t k) {
        while (k < roots_.size() && assign_[roots_[k]] != kUnassigned) ++k;
        if (k == roots_.size()) {
            return visit_(assign_);
        }
        const SimplexIndex x = roots_[k];
        const int n = s_.dim(x);
        auto [lo, hi] = t_.range(n);
        for (SimplexIndex y = lo; y < hi; ++y) {
            bool faces_match = true;
            for (int i = 0; n >= 1 && i <= n; ++i) {
                SimplexIndex fx = assign_[s_.face(x, i)];
                if (fx != kUnassigned && fx != t_.face(y, i)) {
                    faces_match = false;
                    break;
                }
            }
            if (!faces_match) continue;
            const std::size_t mark = trail_.size();
            bool keep_going = true;
            if (assign(x, y)) keep_going = descend(k + 1);
            undo(mark);
            if (!keep_going) return false;
        }
        return true;
    }

    const SimplicialSet& s_;
    const SimplicialSet& t_;
    const MapConstraints& c_;
    const std::function<bool(std::span<const SimplexIndex>)>& visit_;
    std::vector<SimplexIndex> assign_;
    std::vector<SimplexIndex> trail_;
    std::vector<SimplexIndex> roots_;
    std::vector<std::pair<SimplexIndex, SimplexIndex>> stack_;
};

}  // namespace

void for_each_map(const SimplicialSet& source, const SimplicialSet& target, const MapConstraints& constraints,
                  const std::function<bool(std::span<const SimplexIndex>)>& visit) {
    MapSearch(source, target, constraints, visit).run();
}

std::vector<SimplicialMap> all_maps(const SimplicialSet& source, const SimplicialSet& target) {
    std::vector<SimplicialMap> out;
    for_each_map(source, target, {}, [&](std::span<const SimplexIndex> c) {
        out.emplace_back(source, target, std::vector<SimplexIndex>(c.begin(), c.end()));
        return true;
    });
    return out;
}

std::size_t count_maps(const SimplicialSet& source, const SimplicialSet& target) {
    std::size_t n = 0;
    for_each_map(source, target, {}, [&](std::span<const SimplexIndex>) {
        ++n;
        return true;
    });
    return n;
}

// ---------------------------------------------------------------------------

SimplicialSet representable(int n, int d) {
    if (n < 0) throw DomainError("representable needs n >= 0");
    if (n > d) throw TruncationError("representable(" + std::to_string(n) + ") exceeds truncation " + std::to_string(d), n);
    SimplicialSetBuilder b(d);
    std::map<DeltaMap, std::size_t> handle;
    for (int m = 0; m <= d; ++m) {
        for (auto& f : delta_hom(m, n, d)) {
            std::size_t h = b.add_simplex(f.to_fin_function().graph(), m);
            handle.emplace(std::move(f), h);
        }
    }
    for (const auto& [f, h] : handle) {
        const int m = f.source();
        for (int i = 0; m >= 1 && i <= m; ++i) b.set_face(h, i, handle.at(delta_compose(f, DeltaMap::face(m, i))));
        for (int i = 0; m < d && i <= m; ++i) {
            b.set_degeneracy(h, i, handle.at(delta_compose(f, DeltaMap::degeneracy(m, i))));
        }
    }
    return b.build().set;
}

DeltaMap simplex_as_map(const SimplicialSet& representable_n, SimplexIndex x) {
    const int n = static_cast<int>(representable_n.count(0)) - 1;
    const int m = representable_n.dim(x);
    std::vector<int> values(static_cast<std::size_t>(m) + 1, -1);
    for (const auto& p : representable_n.id(x).members()) {
        auto xy = p.as_pair();
        auto i = xy ? xy->first.as_ordinal() : std::nullopt;
        auto v = xy ? xy->second.as_ordinal() : std::nullopt;
        if (!i || !v || *i >= values.size()) throw DomainError("simplex id is not the graph of a monotone map");
        values[*i] = static_cast<int>(*v);
    }
    return DeltaMap(m, n, std::move(values));
}

SimplicialMap yoneda_map(const SimplicialSet& x, SimplexIndex s) {
    const int n = x.dim(s);
    SimplicialSet rep = representable(n, x.truncation());
    std::vector<SimplexIndex> c(rep.size());
    for (SimplexIndex u = 0; u < rep.size(); ++u) c[u] = x.act(simplex_as_map(rep, u), s);
    return SimplicialMap(rep, x, std::move(c));
}

std::vector<SimplicialMap> natural_maps(int n, const SimplicialSet& x) {
    return all_maps(representable(n, x.truncation()), x);
}

std::string to_string(const CellKind& c) {
    if (c.shape == CellKind::Shape::Horn) return "horn(" + std::to_string(c.n) + "," + std::to_string(c.k) + ")";
    return "boundary(" + std::to_string(c.n) + ")";
}

CellSubobject restrict_to(const SimplicialSet& x, const std::vector<char>& keep) {
    if (keep.size() != x.size()) throw DomainError("restrict_to: mask has the wrong size");
    SimplicialSetBuilder b(x.truncation());
    std::vector<std::size_t> handle(x.size(), static_cast<std::size_t>(-1));
    for (SimplexIndex s = 0; s < x.size(); ++s) {
        if (keep[s]) handle[s] = b.add_simplex(x.id(s), x.dim(s));
    }
    auto member = [&](SimplexIndex s, SimplexIndex t) {
        if (!keep[t]) throw DomainError("restrict_to: selection is not closed at " + to_string(x.id(s)));
        return handle[t];
    };
    for (SimplexIndex s = 0; s < x.size(); ++s) {
        if (!keep[s]) continue;
        const int n = x.dim(s);
        for (int i = 0; n >= 1 && i <= n; ++i) b.set_face(handle[s], i, member(s, x.face(s, i)));
        for (int i = 0; n < x.truncation() && i <= n; ++i) b.set_degeneracy(handle[s], i, member(s, x.degeneracy(s, i)));
    }
    SimplicialSet sub = b.build().set;
    std::vector<SimplexIndex> c(sub.size());
    for (SimplexIndex s = 0; s < sub.size(); ++s) c[s] = x.index_of(sub.id(s));
    SimplicialMap inclusion(sub, x, std::move(c));
    return CellSubobject{std::move(sub), std::move(inclusion)};
}

CellSubobject cell_subobject(const CellKind& kind, int d) {
    const int n = kind.n;
    if (n < 0) throw DomainError("cell dimension must be non-negative");
    if (n > d) throw TruncationError(to_string(kind) + " exceeds truncation " + std::to_string(d), n);
    if (kind.shape == CellKind::Shape::Horn && (kind.k < 0 || kind.k > n)) {
        throw DomainError("horn index out of range: " + to_string(kind));
    }
    SimplicialSet rep = representable(n, d);
    std::vector<char> keep(rep.size());
    for (SimplexIndex s = 0; s < rep.size(); ++s) {
        DeltaMap f = simplex_as_map(rep, s);
        std::vector<char> hit(static_cast<std::size_t>(n) + 1);
        for (int v : f.values()) hit[static_cast<std::size_t>(v)] = 1;
        bool in = false;
        for (int i = 0; i <= n; ++i) {
            if (hit[static_cast<std::size_t>(i)]) continue;
            if (kind.shape == CellKind::Shape::Boundary || i != kind.k) in = true;
        }
        keep[s] = in ? 1 : 0;
    }
    return restrict_to(rep, keep);
}

SimplicialSet truncate(const SimplicialSet& x, int d) {
    if (d < 0) throw DomainError("truncation must be non-negative");
    if (d > x.truncation()) {
        throw TruncationError("cannot raise truncation from " + std::to_string(x.truncation()) + " to " +
                                  std::to_string(d),
                              d);
    }
    SimplicialSetBuilder b(d);
    auto [lo, hi] = std::pair<SimplexIndex, SimplexIndex>{0, x.range(d).second};
    for (SimplexIndex s = lo; s < hi; ++s) b.add_simplex(x.id(s), x.dim(s));
    for (SimplexIndex s = lo; s < hi; ++s) {
        const int n = x.dim(s);
        for (int i = 0; n >= 1 && i <= n; ++i) b.set_face(s, i, x.face(s, i));
        for (int i = 0; n < d && i <= n; ++i) b.set_degeneracy(s, i, x.degeneracy(s, i));
    }
    return b.build().set;
}

ProductResult product_sset(const SimplicialSet& x, const SimplicialSet& y) {
    const int d = x.truncation();
    if (y.truncation() != d) throw DomainError("product of simplicial sets with different truncations");
    SimplicialSetBuilder b(d);
    // handle of (a,c) = base[n] + (a - xlo) * |y[n]| + (c - ylo)
    std::vector<std::size_t> base(static_cast<std::size_t>(d) + 1);
    std::vector<std::pair<SimplexIndex, SimplexIndex>> parts;
    for (int n = 0; n <= d; ++n) {
        base[static_cast<std::size_t>(n)] = parts.size();
        auto [xl, xh] = x.range(n);
        auto [yl, yh] = y.range(n);
        for (SimplexIndex a = xl; a < xh; ++a) {
            for (SimplexIndex c = yl; c < yh; ++c) {
                b.add_simplex(HFSet::pair(x.id(a), y.id(c)), n);
                parts.emplace_back(a, c);
            }
        }
    }
    auto handle = [&](SimplexIndex a, SimplexIndex c) {
        const int n = x.dim(a);
        return base[static_cast<std::size_t>(n)] + (a - x.range(n).first) * y.count(n) + (c - y.range(n).first);
    };
    for (std::size_t h = 0; h < parts.size(); ++h) {
        auto [a, c] = parts[h];
        const int n = x.dim(a);
        for (int i = 0; n >= 1 && i <= n; ++i) b.set_face(h, i, handle(x.face(a, i), y.face(c, i)));
        for (int i = 0; n < d && i <= n; ++i) b.set_degeneracy(h, i, handle(x.degeneracy(a, i), y.degeneracy(c, i)));
    }
    auto built = b.build();
    std::vector<SimplexIndex> first(parts.size());
    std::vector<SimplexIndex> second(parts.size());
    for (std::size_t h = 0; h < parts.size(); ++h) {
        first[built.placement[h]] = parts[h].first;
        second[built.placement[h]] = parts[h].second;
    }
    SimplicialMap p1(built.set, x, std::move(first));
    SimplicialMap p2(built.set, y, std::move(second));
    return ProductResult{built.set, std::move(p1), std::move(p2)};
}

CoproductResult coproduct_sset(const SimplicialSet& x, const SimplicialSet& y) {
    const int d = x.truncation();
    if (y.truncation() != d) throw DomainError("coproduct of simplicial sets with different truncations");
    SimplicialSetBuilder b(d);
    const HFSet tag0 = HFSet::ordinal(0);
    const HFSet tag1 = HFSet::ordinal(1);
    for (SimplexIndex a = 0; a < x.size(); ++a) b.add_simplex(HFSet::pair(x.id(a), tag0), x.dim(a));
    for (SimplexIndex c = 0; c < y.size(); ++c) b.add_simplex(HFSet::pair(y.id(c), tag1), y.dim(c));
    const std::size_t off = x.size();
    auto wire = [&](const SimplicialSet& z, std::size_t shift) {
        for (SimplexIndex s = 0; s < z.size(); ++s) {
            const int n = z.dim(s);
            for (int i = 0; n >= 1 && i <= n; ++i) b.set_face(shift + s, i, shift + z.face(s, i));
            for (int i = 0; n < d && i <= n; ++i) b.set_degeneracy(shift + s, i, shift + z.degeneracy(s, i));
        }
    };
    wire(x, 0);
    wire(y, off);
    auto built = b.build();
    std::vector<SimplexIndex> inl(x.size());
    std::vector<SimplexIndex> inr(y.size());
    for (SimplexIndex a = 0; a < x.size(); ++a) inl[a] = built.placement[a];
    for (SimplexIndex c = 0; c < y.size(); ++c) inr[c] = built.placement[off + c];
    SimplicialMap left(x, built.set, std::move(inl));
    SimplicialMap right(y, built.set, std::move(inr));
    return CoproductResult{built.set, std::move(left), std::move(right)};
}

SimplicialSet terminal_sset(int d) { return representable(0, d); }

SimplicialSet initial_sset(int d) { return SimplicialSet(d); }

SimplicialMap to_terminal(const SimplicialSet& x) {
    SimplicialSet point = terminal_sset(x.truncation());
    std::vector<SimplexIndex> c(x.size());
    for (SimplexIndex s = 0; s < x.size(); ++s) c[s] = point.range(x.dim(s)).first;
    return SimplicialMap(x, point, std::move(c));
}

ExponentialResult exponential_sset(const SimplicialSet& y, const SimplicialSet& x, int degree) {
    const int d = x.truncation();
    if (y.truncation() != d) throw DomainError("exponential of simplicial sets with different truncations");
    if (degree < 0) throw DomainError("exponent degree must be non-negative");
    const int required = std::max(x.max_nondegenerate_dim(), 0) + degree;
    if (required > d) {
        throw TruncationError("exponential up to degree " + std::to_string(degree) + " needs truncation " +
                                  std::to_string(required) + ", have " + std::to_string(d),
                              required);
    }

    struct Level {
        ProductResult domain;                               // x * Delta[n]
        std::vector<std::vector<SimplexIndex>> maps;        // carriers
        std::map<std::vector<SimplexIndex>, std::size_t> position;
        std::vector<SimplexIndex> x_part;                   // per domain simplex
        std::vector<DeltaMap> rep_part;
        SimplicialSet rep;
    };
    std::vector<Level> levels;
    levels.reserve(static_cast<std::size_t>(degree) + 1);
    for (int n = 0; n <= degree; ++n) {
        SimplicialSet rep = representable(n, d);
        ProductResult dom = product_sset(x, rep);
        Level level{dom, {}, {}, {}, {}, rep};
        for_each_map(dom.object, y, {}, [&](std::span<const SimplexIndex> c) {
            level.position.emplace(std::vector<SimplexIndex>(c.begin(), c.end()), level.maps.size());
            level.maps.emplace_back(c.begin(), c.end());
            return true;
        });
        for (SimplexIndex q = 0; q < dom.object.size(); ++q) {
            level.x_part.push_back(dom.first(q));
            level.rep_part.push_back(simplex_as_map(rep, dom.second(q)));
        }
        levels.push_back(std::move(level));
    }

    // g . f for f : [m] -> [n], g a map on x * Delta[n].
    auto precompose = [&](const std::vector<SimplexIndex>& g, int n, int m, const DeltaMap& f) {
        const Level& src = levels[static_cast<std::size_t>(m)];
        const Level& dst = levels[static_cast<std::size_t>(n)];
        std::vector<SimplexIndex> out(src.domain.object.size());
        for (SimplexIndex q = 0; q < out.size(); ++q) {
            DeltaMap u = delta_compose(f, src.rep_part[q]);
            HFSet target_id = HFSet::pair(x.id(src.x_part[q]), u.to_fin_function().graph());
            out[q] = g[dst.domain.object.index_of(target_id)];
        }
        return out;
    };

    auto graph_id = [&](const Level& level, const std::vector<SimplexIndex>& g) {
        std::vector<HFSet> pairs;
        pairs.reserve(g.size());
        for (SimplexIndex q = 0; q < g.size(); ++q) pairs.push_back(HFSet::pair(level.domain.object.id(q), y.id(g[q])));
        return HFSet::of(std::move(pairs));
    };

    SimplicialSetBuilder b(degree);
    std::vector<std::size_t> base;
    for (int n = 0; n <= degree; ++n) {
        base.push_back(b.size());
        const Level& level = levels[static_cast<std::size_t>(n)];
        for (const auto& g : level.maps) b.add_simplex(graph_id(level, g), n);
    }
    for (int n = 0; n <= degree; ++n) {
        const Level& level = levels[static_cast<std::size_t>(n)];
        for (std::size_t k = 0; k < level.maps.size(); ++k) {
            const std::size_t h = base[static_cast<std::size_t>(n)] + k;
            for (int i = 0; n >= 1 && i <= n; ++i) {
                auto g = precompose(level.maps[k], n, n - 1, DeltaMap::face(n, i));
                b.set_face(h, i, base[static_cast<std::size_t>(n) - 1] +
                                     levels[static_cast<std::size_t>(n) - 1].position.at(g));
            }
            for (int i = 0; n < degree && i <= n; ++i) {
                auto g = precompose(level.maps[k], n, n + 1, DeltaMap::degeneracy(n, i));
                b.set_degeneracy(h, i, base[static_cast<std::size_t>(n) + 1] +
                                           levels[static_cast<std::size_t>(n) + 1].position.at(g));
            }
        }
    }
    SimplicialSet object = b.build().set;
    std::unordered_map<HFSet, std::size_t, HFSetHash> by_id;
    for (int n = 0; n <= degree; ++n) {
        const Level& level = levels[static_cast<std::size_t>(n)];
        for (std::size_t k = 0; k < level.maps.size(); ++k) by_id.emplace(graph_id(level, level.maps[k]), k);
    }

    SimplicialSet x_low = truncate(x, degree);
    SimplicialSet y_low = truncate(y, degree);
    ProductResult pairing = product_sset(object, x_low);
    std::vector<SimplexIndex> ev(pairing.object.size());
    for (SimplexIndex q = 0; q < ev.size(); ++q) {
        const SimplexIndex gi = pairing.first(q);
        const SimplexIndex ai = pairing.second(q);
        const int n = object.dim(gi);
        const Level& level = levels[static_cast<std::size_t>(n)];
        const auto& carrier = level.maps[by_id.at(object.id(gi))];
        HFSet cell = HFSet::pair(x_low.id(ai), DeltaMap::identity(n).to_fin_function().graph());
        SimplexIndex yi = carrier[level.domain.object.index_of(cell)];
        ev[q] = y_low.index_of(y.id(yi));
    }
    SimplicialMap evaluation(pairing.object, y_low, std::move(ev));
    return ExponentialResult{std::move(object), std::move(evaluation)};
}

}  // namespace mactt
