#pragma once

// Property checks shared by the unit tests and the acceptance runner. Each
// returns an empty string on success and a short description otherwise.

#include <set>
#include <string>

#include "mactt/constructors.hpp"
#include "mactt/kan.hpp"
#include "oracles.hpp"

namespace props {

using namespace mactt;

/// leg of (f g)*(h) versus g*(f*(h)).
inline std::string strict_functoriality(const FinFunction& f, const FinFunction& g, const FinFunction& h) {
    const PullbackCone whole = selected_pullback(compose(f, g), h);
    const PullbackCone inner = selected_pullback(f, h);
    const PullbackCone outer = selected_pullback(g, inner.leg);
    if (!(whole.leg.encode() == outer.leg.encode())) {
        return "legs differ: " + to_string(whole.leg) + " vs " + to_string(outer.leg);
    }
    if (!(compose(compose(f, g), whole.leg) == compose(h, whole.top))) return "square does not commute";
    return "";
}

/// Hom over B of (m, Pi_f k) against Hom over A of (f* m, k), and the same
/// for Sigma_f k against f* m. Counts are taken twice: with the library and by
/// brute force when small.
inline std::string adjunction_counts(const FinFunction& k, const FinFunction& f, const FinFunction& m,
                                     bool brute_force) {
    const FinFunction pi = pi_dependent(k, f);
    const FinFunction sigma = sigma_dependent(k, f);
    const FinFunction pulled = selected_pullback(f, m).leg;
    const std::size_t lhs_pi = count_slice_maps(m, pi);
    const std::size_t rhs_pi = count_slice_maps(pulled, k);
    if (lhs_pi != rhs_pi) return "pi: " + std::to_string(lhs_pi) + " != " + std::to_string(rhs_pi);
    const std::size_t lhs_sigma = count_slice_maps(sigma, m);
    const std::size_t rhs_sigma = count_slice_maps(k, pulled);
    if (lhs_sigma != rhs_sigma) return "sigma: " + std::to_string(lhs_sigma) + " != " + std::to_string(rhs_sigma);
    if (brute_force) {
        if (oracle::brute_slice_maps(m, pi) != lhs_pi || oracle::brute_slice_maps(pulled, k) != rhs_pi ||
            oracle::brute_slice_maps(sigma, m) != lhs_sigma || oracle::brute_slice_maps(k, pulled) != rhs_sigma) {
            return "slice-map count disagrees with brute force";
        }
    }
    return "";
}

inline bool starts_with(const std::string& s, const std::string& prefix) { return s.rfind(prefix, 0) == 0; }

/// Everything promised about a factorization of f.
inline std::string factorization(const SimplicialMap& f, const FactorizationResult& r, const FactorizeOptions& o) {
    const bool horn = o.kind == CellKind::Shape::Horn;
    if (!(compose(r.p, r.j) == f)) return "p j != f";
    if (!r.j.is_monic()) return "j is not monic";
    if (!validate_presheaf(r.z).empty()) return "z is not a presheaf";
    if (r.provenance.size() != r.z.size()) return "provenance size";
    const Signature& sig = r.signature;
    std::size_t phis = 0;
    std::size_t kappas = 0;
    std::size_t constants = 0;
    for (SimplexIndex s = 0; s < r.z.size(); ++s) {
        const WTerm& t = r.provenance[s];
        if (!well_formed(sig, t)) return "ill-formed provenance at " + std::to_string(s);
        if (!(encode(sig, t) == r.z.id(s))) return "id is not the code of its term";
        if (!(decode(sig, r.z.id(s)) == t)) return "decode mismatch";
        const std::string& head = sig.name(t.op());
        if (starts_with(head, "phi")) ++phis;
        if (starts_with(head, "kappa")) ++kappas;
        if (starts_with(head, "c_")) ++constants;
        if (starts_with(head, "s")) {
            if (t.children().size() != 1) return "degeneracy term with wrong arity";
            if (!r.z.is_degenerate(s)) return "s-term names a nondegenerate simplex";
        }
    }
    if (constants != f.source().size()) return "constants do not biject with X";
    for (SimplexIndex x = 0; x < f.source().size(); ++x) {
        if (sig.name(r.provenance[r.j(x)].op()) != "c_" + std::to_string(x)) return "j(x) is not named c_x";
    }
    if (phis != r.cells.size()) return "phi terms do not biject with cells";
    if (kappas != (horn ? r.cells.size() : 0)) return "kappa terms do not match cells";
    std::set<HFSet> fillers;
    for (const auto& c : r.cells) {
        if (!fillers.insert(c.filler).second) return "two cells share a filler";
        if (c.missing_face.has_value() != horn) return "missing face presence";
        const SimplexIndex phi = r.z.index_of(c.filler);
        if (r.z.dim(phi) != c.square.cell.n) return "filler has the wrong dimension";
        if (r.p(phi) != c.square.y) return "p(filler) is not the bottom simplex";
        // the filler restricts to the top map on every generating face
        const CellSquare final_sq = transport(c.square, r.history[c.stage].z, r.z);
        if (!oracle::lift_by_faces(r.p, final_sq.cell, final_sq.top, final_sq.y)) return "filler does not fill";
        if (horn && r.z.face(phi, c.square.cell.k) != r.z.index_of(*c.missing_face)) return "kappa is not the k-th face";
    }
    for (std::size_t i = 0; i + 1 < r.history.size(); ++i) {
        const auto& now = r.history[i];
        const auto& next = r.history[i + 1];
        for (SimplexIndex s = 0; s < now.z.size(); ++s) {
            if (!next.z.find(now.z.id(s))) return "stage " + std::to_string(i) + " is not contained in the next";
        }
        for (const auto& sq : now.unfilled) {
            const CellSquare moved = transport(sq, now.z, next.z);
            if (!oracle::lift_by_faces(next.p, moved.cell, moved.top, moved.y)) {
                return "square of stage " + std::to_string(i) + " unfilled at stage " + std::to_string(i + 1);
            }
        }
    }
    return "";
}

}  // namespace props
