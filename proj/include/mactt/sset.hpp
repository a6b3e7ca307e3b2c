#pragma once

// Truncated simplicial sets in the Grothendieck encoding.
//
// A simplicial set is one total set of simplices (identified by HFSets), a
// projection to dimensions 0..d, and an action table. The table stores only
// the generators: every simplex of dimension n has faces d_0..d_n (n >= 1)
// and, below the truncation, degeneracies s_0..s_n. A general monotone map
// acts through its normal form. Degenerate simplices are stored explicitly.
//
// Simplices are kept sorted by (dimension, id), so the simplices of one
// dimension form a contiguous index range and equal sets have equal layouts.

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "mactt/config.hpp"
#include "mactt/delta.hpp"
#include "mactt/fin_function.hpp"
#include "mactt/hfset.hpp"

namespace mactt {

using SimplexIndex = std::size_t;

class SimplicialSet {
public:
    /// The empty simplicial set truncated at d.
    explicit SimplicialSet(int d = default_truncation());

    int truncation() const noexcept;
    std::size_t size() const noexcept;
    bool empty() const noexcept { return size() == 0; }

    const HFSet& id(SimplexIndex x) const;
    int dim(SimplexIndex x) const;
    std::optional<SimplexIndex> find(const HFSet& id) const;
    SimplexIndex index_of(const HFSet& id) const;

    /// Index range of the n-simplices.
    std::pair<SimplexIndex, SimplexIndex> range(int n) const;
    std::size_t count(int n) const;

    SimplexIndex face(SimplexIndex x, int i) const;
    SimplexIndex degeneracy(SimplexIndex x, int i) const;
    /// x . f for f : [n] -> [dim x].
    SimplexIndex act(const DeltaMap& f, SimplexIndex x) const;
    /// Same action, computed through a different generator factorization
    /// (peels the smallest missing value and the last repeated position
    /// first). Used to check independence of the factorization.
    SimplexIndex act_alternative(const DeltaMap& f, SimplexIndex x) const;

    bool is_degenerate(SimplexIndex x) const;
    /// Largest dimension of a nondegenerate simplex, or -1 when empty.
    int max_nondegenerate_dim() const;

    /// The total set X0 and the projection X0 -> {0..d}.
    HFSet total() const;
    FinFunction projection() const;

    friend bool operator==(const SimplicialSet& a, const SimplicialSet& b);

private:
    struct Data;
    explicit SimplicialSet(std::shared_ptr<const Data> data) : data_(std::move(data)) {}
    std::shared_ptr<const Data> data_;
    friend class SimplicialSetBuilder;
};

/// Assembles a simplicial set from simplices added in any order; action
/// entries refer to builder handles. build() sorts into canonical order.
class SimplicialSetBuilder {
public:
    explicit SimplicialSetBuilder(int d);

    std::size_t add_simplex(HFSet id, int dim);
    void set_face(std::size_t x, int i, std::size_t y);
    void set_degeneracy(std::size_t x, int i, std::size_t y);
    std::size_t size() const { return ids_.size(); }
    int truncation() const { return d_; }

    struct Result {
        SimplicialSet set;
        /// builder handle -> index in `set`
        std::vector<SimplexIndex> placement;
    };
    /// Throws DomainError on duplicate ids, out-of-range dimensions or a
    /// missing action entry. Does not check the simplicial identities.
    Result build() const;

private:
    int d_;
    std::vector<HFSet> ids_;
    std::vector<int> dims_;
    std::vector<std::vector<std::optional<std::size_t>>> faces_;
    std::vector<std::vector<std::optional<std::size_t>>> degeneracies_;
};

struct PresheafViolation {
    std::string law;        // e.g. "d_i d_j = d_{j-1} d_i"
    std::string generator;  // e.g. "d_0@2 s_1@1"
    HFSet simplex;
    std::string detail;
};

/// Checks dimension bookkeeping and all simplicial identities on every
/// simplex. Empty result means the table is a presheaf.
std::vector<PresheafViolation> validate_presheaf(const SimplicialSet& x);
std::string to_string(const PresheafViolation& v);

/// The fiber of the projection over n.
std::vector<SimplexIndex> simplices_at(const SimplicialSet& x, int n);

class SimplicialMap {
public:
    /// Throws DomainError unless the carrier preserves dimension and
    /// commutes with every face and degeneracy.
    SimplicialMap(SimplicialSet source, SimplicialSet target, std::vector<SimplexIndex> carrier);

    static SimplicialMap identity(const SimplicialSet& x);

    const SimplicialSet& source() const noexcept { return source_; }
    const SimplicialSet& target() const noexcept { return target_; }
    std::span<const SimplexIndex> carrier() const noexcept { return carrier_; }
    SimplexIndex operator()(SimplexIndex x) const { return carrier_.at(x); }

    bool is_monic() const;
    /// Carrier as a function between total sets.
    FinFunction to_fin_function() const;

    friend bool operator==(const SimplicialMap&, const SimplicialMap&) = default;

private:
    struct Unchecked {};
    SimplicialMap(SimplicialSet source, SimplicialSet target, std::vector<SimplexIndex> carrier, Unchecked);
    SimplicialSet source_;
    SimplicialSet target_;
    std::vector<SimplexIndex> carrier_;
    friend SimplicialMap compose(const SimplicialMap& g, const SimplicialMap& f);
};

/// g after f.
SimplicialMap compose(const SimplicialMap& g, const SimplicialMap& f);

/// First violated naturality condition of a candidate carrier, if any.
std::optional<std::string> map_violation(const SimplicialSet& source, const SimplicialSet& target,
                                         std::span<const SimplexIndex> carrier);

// ---------------------------------------------------------------------------
// Map enumeration

struct MapConstraints {
    /// Prescribed values (indexed by source simplex).
    std::vector<std::optional<SimplexIndex>> fixed;
    /// Extra admissibility of an assignment source -> target.
    std::function<bool(SimplexIndex, SimplexIndex)> allowed;
};

/// Visits every simplicial map source -> target satisfying the constraints,
/// in a deterministic order. The visitor returns false to stop early.
void for_each_map(const SimplicialSet& source, const SimplicialSet& target, const MapConstraints& constraints,
                  const std::function<bool(std::span<const SimplexIndex>)>& visit);

std::vector<SimplicialMap> all_maps(const SimplicialSet& source, const SimplicialSet& target);
std::size_t count_maps(const SimplicialSet& source, const SimplicialSet& target);

// ---------------------------------------------------------------------------
// Constructions

/// Hom(-, [n]); the m-simplices are the monotone maps [m] -> [n], each
/// identified by its graph.
SimplicialSet representable(int n, int d = default_truncation());
/// The monotone map [m] -> [n] that names a simplex of representable(n).
DeltaMap simplex_as_map(const SimplicialSet& representable_n, SimplexIndex x);

/// Yoneda: the map Delta[n] -> x sending id_[n] to the n-simplex s.
SimplicialMap yoneda_map(const SimplicialSet& x, SimplexIndex s);

/// Maps representable(n) -> x, enumerated by search (not via Yoneda).
std::vector<SimplicialMap> natural_maps(int n, const SimplicialSet& x);

struct CellKind {
    enum class Shape { Horn, Boundary };
    Shape shape;
    int n;
    int k = 0;  // missing face, horns only

    static CellKind horn(int n, int k) { return {Shape::Horn, n, k}; }
    static CellKind boundary(int n) { return {Shape::Boundary, n, 0}; }
    friend bool operator==(const CellKind&, const CellKind&) = default;
};
std::string to_string(const CellKind& c);

struct CellSubobject {
    SimplicialSet cell;
    SimplicialMap inclusion;  // into representable(n)
};

/// Horn: simplices of Delta[n] whose image misses some i != k. Boundary:
/// non-surjective simplices. boundary(0) is empty.
CellSubobject cell_subobject(const CellKind& kind, int d = default_truncation());

/// Sub-simplicial set on the simplices selected by `keep` (must be closed
/// under faces and degeneracies) together with its inclusion.
CellSubobject restrict_to(const SimplicialSet& x, const std::vector<char>& keep);

/// Drops every simplex above dimension d'.
SimplicialSet truncate(const SimplicialSet& x, int d);

struct ProductResult {
    SimplicialSet object;
    SimplicialMap first;
    SimplicialMap second;
};
/// Degreewise product; simplex ids are pairs <x,y>.
ProductResult product_sset(const SimplicialSet& x, const SimplicialSet& y);

struct CoproductResult {
    SimplicialSet object;
    SimplicialMap left;
    SimplicialMap right;
};
/// Disjoint union tagged <x,0> and <y,1>.
CoproductResult coproduct_sset(const SimplicialSet& x, const SimplicialSet& y);

SimplicialSet terminal_sset(int d = default_truncation());
SimplicialSet initial_sset(int d = default_truncation());
/// Unique map to the terminal object.
SimplicialMap to_terminal(const SimplicialSet& x);

struct ExponentialResult {
    SimplicialSet object;  // truncated at the requested exponent degree
    SimplicialMap evaluation;  // object x truncate(x) -> truncate(y)
};

/// y^x with (y^x)[n] = maps x * Delta[n] -> y for n <= degree. Requires
/// max_nondegenerate_dim(x) + degree <= truncation; otherwise throws
/// TruncationError carrying the required truncation.
ExponentialResult exponential_sset(const SimplicialSet& y, const SimplicialSet& x, int degree);

}  // namespace mactt
