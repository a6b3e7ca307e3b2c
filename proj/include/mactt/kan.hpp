#pragma once

// Lifting problems against horn and boundary inclusions, Kan and acyclic
// fibration checks, the staged factorization with named cells, and the
// identity type obtained by factoring a fiberwise diagonal.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "mactt/constructors.hpp"
#include "mactt/sset.hpp"
#include "mactt/wtype.hpp"

namespace mactt {

/// left : a -> b, top : a -> x, right : x -> y, bottom : b -> y.
struct LiftingSquare {
    SimplicialMap left;
    SimplicialMap top;
    SimplicialMap right;
    SimplicialMap bottom;
};

/// A diagonal b -> x, found by exhaustive search. Throws DomainError if the
/// square does not commute.
std::optional<SimplicialMap> find_lift(const LiftingSquare& sq);

/// A square whose left side is a cell inclusion into Delta[n] and whose
/// bottom is the Yoneda map of the n-simplex `y`.
struct CellSquare {
    CellKind cell;
    std::vector<SimplexIndex> top;  // carrier: cell -> source of f
    SimplexIndex y = 0;
};

/// Faces of Delta[n] that generate the cell: all i != k for horns, all i
/// for boundaries (none for boundary(0)).
std::vector<int> generating_faces(const CellKind& kind);

LiftingSquare to_lifting_square(const SimplicialMap& f, const CellSquare& sq);
bool has_lift(const SimplicialMap& f, const CellSquare& sq);
std::string describe(const SimplicialMap& f, const CellSquare& sq);

/// Horn cells (1 <= n <= nmax, 0 <= k <= n) or boundary cells (0 <= n <= nmax).
std::vector<CellKind> test_cells(CellKind::Shape shape, int nmax);

/// Squares without a lift, in (cell, top, y) order. Stops after `limit`.
std::vector<CellSquare> unfilled_squares(const SimplicialMap& f, CellKind::Shape shape, int nmax,
                                         std::size_t limit = static_cast<std::size_t>(-1));

struct KanCheck {
    bool ok = true;
    std::optional<CellSquare> witness;
};
KanCheck is_fibration(const SimplicialMap& f, int nmax);
KanCheck is_acyclic_fibration(const SimplicialMap& f, int nmax);

// ---------------------------------------------------------------------------
// Factorization

/// Operators naming the simplices of a factorization: c_i (simplex i of X),
/// y#i (simplex i of Y), the hole `_`, phi<n> and kappa<n> of arity n+2
/// (n+1 face slots and the Y simplex), and unary s<j> for degeneracies.
Signature factorization_signature(std::size_t x_size, std::size_t y_size, int d);

struct AdjoinedCell {
    std::size_t stage;       // the cell is new in Z^{stage+1}
    CellSquare square;       // in terms of Z^{stage}
    HFSet filler;            // id of the phi simplex
    std::optional<HFSet> missing_face;  // id of the kappa simplex (horns)
};

struct FactorizationStage {
    SimplicialSet z;
    SimplicialMap p;
    std::vector<CellSquare> unfilled;
};

struct FactorizeOptions {
    CellKind::Shape kind = CellKind::Shape::Horn;
    int stages = 1;
    int nmax = 2;
};

struct FactorizationResult {
    SimplicialSet z;
    SimplicialMap j;  // X -> Z, monic
    SimplicialMap p;  // Z -> Y, p j = f
    int stages = 0;   // rounds that adjoined cells
    Signature signature;
    /// Term naming each simplex of z; the id of simplex i is encode(provenance[i]).
    std::vector<WTerm> provenance;
    std::vector<AdjoinedCell> cells;
    /// Z^0, ..., Z^last with the squares still unfilled in each.
    std::vector<FactorizationStage> history;

    const std::vector<CellSquare>& remaining() const { return history.back().unfilled; }
};

FactorizationResult factorize(const SimplicialMap& f, const FactorizeOptions& options);

/// Same square with its top map carried along an inclusion of simplicial
/// sets that preserves ids.
CellSquare transport(const CellSquare& sq, const SimplicialSet& from, const SimplicialSet& to);

// ---------------------------------------------------------------------------

struct IdentityType {
    SsetPullback pullback;       // x *_y x
    SimplicialMap diagonal;      // x -> x *_y x
    FactorizationResult factorization;
    const SimplicialSet& path_object() const { return factorization.z; }
    const SimplicialMap& reflexivity() const { return factorization.j; }
    const SimplicialMap& endpoints() const { return factorization.p; }
};

/// Requires p to pass is_fibration up to nmax.
IdentityType id_type(const SimplicialMap& p, int stages, int nmax);

}  // namespace mactt
