#include "mactt/kan.hpp"

#include <algorithm>
#include <map>

#include "mactt/error.hpp"

namespace mactt {

namespace {

struct Cell {
    CellKind kind;
    CellSubobject sub;
    std::vector<int> faces;                // generating face indices
    std::vector<SimplexIndex> face_index;  // their indices in sub.cell
};

Cell make_cell(const CellKind& kind, int d) {
    Cell c{kind, cell_subobject(kind, d), generating_faces(kind), {}};
    for (int i : c.faces) {
        c.face_index.push_back(c.sub.cell.index_of(DeltaMap::face(kind.n, i).to_fin_function().graph()));
    }
    return c;
}

bool commutes(const SimplicialMap& f, const Cell& cell, std::span<const SimplexIndex> top, SimplexIndex y) {
    const SimplicialSet& ys = f.target();
    for (std::size_t t = 0; t < cell.faces.size(); ++t) {
        if (ys.face(y, cell.faces[t]) != f(top[cell.face_index[t]])) return false;
    }
    return true;
}

bool lift_exists(const SimplicialMap& f, const Cell& cell, std::span<const SimplexIndex> top, SimplexIndex y) {
    const SimplicialSet& xs = f.source();
    auto [lo, hi] = xs.range(cell.kind.n);
    for (SimplexIndex z = lo; z < hi; ++z) {
        if (f(z) != y) continue;
        bool match = true;
        for (std::size_t t = 0; t < cell.faces.size() && match; ++t) {
            match = xs.face(z, cell.faces[t]) == top[cell.face_index[t]];
        }
        if (match) return true;
    }
    return false;
}

void check_nmax(const SimplicialMap& f, int nmax) {
    const int d = f.source().truncation();
    if (nmax > d) {
        throw TruncationError("nmax " + std::to_string(nmax) + " exceeds truncation " + std::to_string(d), nmax);
    }
}

}  // namespace

std::vector<int> generating_faces(const CellKind& kind) {
    std::vector<int> out;
    if (kind.n == 0) return out;
    for (int i = 0; i <= kind.n; ++i) {
        if (kind.shape == CellKind::Shape::Horn && i == kind.k) continue;
        out.push_back(i);
    }
    return out;
}

std::optional<SimplicialMap> find_lift(const LiftingSquare& sq) {
    if (!(sq.left.source() == sq.top.source()) || !(sq.top.target() == sq.right.source()) ||
        !(sq.left.target() == sq.bottom.source()) || !(sq.right.target() == sq.bottom.target())) {
        throw DomainError("lifting square: maps do not fit together");
    }
    for (SimplexIndex a = 0; a < sq.left.source().size(); ++a) {
        if (sq.right(sq.top(a)) != sq.bottom(sq.left(a))) {
            throw DomainError("lifting square does not commute at " + to_string(sq.left.source().id(a)));
        }
    }
    const SimplicialSet& b = sq.left.target();
    const SimplicialSet& x = sq.top.target();
    MapConstraints c;
    c.fixed.assign(b.size(), std::nullopt);
    for (SimplexIndex a = 0; a < sq.left.source().size(); ++a) c.fixed[sq.left(a)] = sq.top(a);
    c.allowed = [&](SimplexIndex s, SimplexIndex t) { return sq.right(t) == sq.bottom(s); };
    std::optional<std::vector<SimplexIndex>> found;
    for_each_map(b, x, c, [&](std::span<const SimplexIndex> carrier) {
        found.emplace(carrier.begin(), carrier.end());
        return false;
    });
    if (!found) return std::nullopt;
    return SimplicialMap(b, x, std::move(*found));
}

LiftingSquare to_lifting_square(const SimplicialMap& f, const CellSquare& sq) {
    CellSubobject sub = cell_subobject(sq.cell, f.source().truncation());
    SimplicialMap top(sub.cell, f.source(), sq.top);
    SimplicialMap bottom = yoneda_map(f.target(), sq.y);
    return LiftingSquare{sub.inclusion, std::move(top), f, std::move(bottom)};
}

bool has_lift(const SimplicialMap& f, const CellSquare& sq) {
    Cell cell = make_cell(sq.cell, f.source().truncation());
    if (sq.top.size() != cell.sub.cell.size()) throw DomainError("square top has the wrong size");
    return lift_exists(f, cell, sq.top, sq.y);
}

std::string describe(const SimplicialMap& f, const CellSquare& sq) {
    Cell cell = make_cell(sq.cell, f.source().truncation());
    std::string out = to_string(sq.cell) + " faces";
    for (std::size_t t = 0; t < cell.faces.size(); ++t) {
        out += " d_" + std::to_string(cell.faces[t]) + "=" + to_string(f.source().id(sq.top[cell.face_index[t]]));
    }
    if (cell.faces.empty()) out += " (none)";
    return out + " over " + to_string(f.target().id(sq.y));
}

std::vector<CellKind> test_cells(CellKind::Shape shape, int nmax) {
    std::vector<CellKind> out;
    if (shape == CellKind::Shape::Horn) {
        for (int n = 1; n <= nmax; ++n) {
            for (int k = 0; k <= n; ++k) out.push_back(CellKind::horn(n, k));
        }
    } else {
        for (int n = 0; n <= nmax; ++n) out.push_back(CellKind::boundary(n));
    }
    return out;
}

std::vector<CellSquare> unfilled_squares(const SimplicialMap& f, CellKind::Shape shape, int nmax, std::size_t limit) {
    check_nmax(f, nmax);
    std::vector<CellSquare> out;
    if (limit == 0) return out;
    const int d = f.source().truncation();
    const SimplicialSet& ys = f.target();
    for (const CellKind& kind : test_cells(shape, nmax)) {
        Cell cell = make_cell(kind, d);
        auto [ylo, yhi] = ys.range(kind.n);
        for_each_map(cell.sub.cell, f.source(), {}, [&](std::span<const SimplexIndex> top) {
            for (SimplexIndex y = ylo; y < yhi; ++y) {
                if (!commutes(f, cell, top, y) || lift_exists(f, cell, top, y)) continue;
                out.push_back(CellSquare{kind, std::vector<SimplexIndex>(top.begin(), top.end()), y});
                if (out.size() >= limit) return false;
            }
            return true;
        });
        if (out.size() >= limit) break;
    }
    return out;
}

KanCheck is_fibration(const SimplicialMap& f, int nmax) {
    auto w = unfilled_squares(f, CellKind::Shape::Horn, nmax, 1);
    if (w.empty()) return KanCheck{true, std::nullopt};
    return KanCheck{false, std::move(w.front())};
}

KanCheck is_acyclic_fibration(const SimplicialMap& f, int nmax) {
    auto w = unfilled_squares(f, CellKind::Shape::Boundary, nmax, 1);
    if (w.empty()) return KanCheck{true, std::nullopt};
    return KanCheck{false, std::move(w.front())};
}

// ---------------------------------------------------------------------------

namespace {

enum OpFamily : std::size_t { kConstant = 0, kBase = 1, kHole = 2, kPhi = 3, kKappa = 4, kDegeneracy = 5 };

HFSet op_code(OpFamily family, std::size_t i) {
    return HFSet::pair(HFSet::ordinal(family), HFSet::ordinal(i));
}

std::size_t op_index(const Signature& sig, OpFamily family, std::size_t i) {
    auto op = sig.find(op_code(family, i));
    if (!op) throw Error("operator missing from the factorization signature");
    return *op;
}

}  // namespace

Signature factorization_signature(std::size_t x_size, std::size_t y_size, int d) {
    std::vector<std::pair<HFSet, std::string>> ops;
    std::vector<std::pair<HFSet, HFSet>> positions;
    auto add = [&](OpFamily family, std::size_t i, std::string name, std::size_t arity) {
        HFSet op = op_code(family, i);
        for (std::size_t j = 0; j < arity; ++j) positions.emplace_back(HFSet::pair(op, HFSet::ordinal(j)), op);
        ops.emplace_back(std::move(op), std::move(name));
    };
    for (std::size_t i = 0; i < x_size; ++i) add(kConstant, i, "c_" + std::to_string(i), 0);
    for (std::size_t i = 0; i < y_size; ++i) add(kBase, i, "y#" + std::to_string(i), 0);
    add(kHole, 0, "_", 0);
    for (int n = 0; n <= d; ++n) {
        add(kPhi, static_cast<std::size_t>(n), "phi" + std::to_string(n), static_cast<std::size_t>(n) + 2);
        if (n >= 1) add(kKappa, static_cast<std::size_t>(n), "kappa" + std::to_string(n), static_cast<std::size_t>(n) + 2);
    }
    for (int j = 0; j < d; ++j) add(kDegeneracy, static_cast<std::size_t>(j), "s" + std::to_string(j), 1);
    std::sort(ops.begin(), ops.end(), [](const auto& a, const auto& b) { return hf_compare(a.first, b.first) < 0; });
    std::vector<HFSet> codes;
    std::vector<std::string> names;
    for (auto& [code, name] : ops) {
        codes.push_back(code);
        names.push_back(std::move(name));
    }
    return Signature(FinFunction::from_pairs(positions, HFSet::of(std::move(codes))), std::move(names));
}

CellSquare transport(const CellSquare& sq, const SimplicialSet& from, const SimplicialSet& to) {
    CellSquare out{sq.cell, {}, sq.y};
    out.top.reserve(sq.top.size());
    for (SimplexIndex t : sq.top) out.top.push_back(to.index_of(from.id(t)));
    return out;
}

FactorizationResult factorize(const SimplicialMap& f, const FactorizeOptions& options) {
    if (options.stages < 0) throw DomainError("stage count must be non-negative");
    if (options.nmax < 0) throw DomainError("nmax must be non-negative");
    check_nmax(f, options.nmax);
    const SimplicialSet& xs = f.source();
    const SimplicialSet& ys = f.target();
    const int d = xs.truncation();
    const bool horn = options.kind == CellKind::Shape::Horn;

    Signature sig = factorization_signature(xs.size(), ys.size(), d);
    const std::size_t hole_op = op_index(sig, kHole, 0);

    // Z^0: X with every simplex renamed to its constant.
    std::vector<WTerm> terms;
    std::vector<SimplexIndex> pz;
    SimplicialSet z;
    std::vector<SimplexIndex> j_carrier(xs.size());
    {
        SimplicialSetBuilder b(d);
        std::vector<WTerm> hterms;
        for (SimplexIndex a = 0; a < xs.size(); ++a) {
            hterms.emplace_back(op_index(sig, kConstant, a));
            b.add_simplex(encode(sig, hterms.back()), xs.dim(a));
        }
        for (SimplexIndex a = 0; a < xs.size(); ++a) {
            const int n = xs.dim(a);
            for (int i = 0; n >= 1 && i <= n; ++i) b.set_face(a, i, xs.face(a, i));
            for (int i = 0; n < d && i <= n; ++i) b.set_degeneracy(a, i, xs.degeneracy(a, i));
        }
        auto built = b.build();
        z = built.set;
        terms.assign(xs.size(), WTerm(0));
        pz.assign(xs.size(), 0);
        for (SimplexIndex a = 0; a < xs.size(); ++a) {
            const SimplexIndex at = built.placement[a];
            terms[at] = std::move(hterms[a]);
            pz[at] = f(a);
            j_carrier[a] = at;
        }
    }

    FactorizationResult result{z,
                               SimplicialMap(xs, z, j_carrier),
                               SimplicialMap(z, ys, pz),
                               0,
                               sig,
                               {},
                               {},
                               {}};

    std::map<std::pair<int, int>, Cell> cells;
    auto cell_for = [&](const CellKind& kind) -> const Cell& {
        auto key = std::pair{kind.n, kind.k};
        auto it = cells.find(key);
        if (it == cells.end()) it = cells.emplace(key, make_cell(kind, d)).first;
        return it->second;
    };

    for (int stage = 0;; ++stage) {
        SimplicialMap p(z, ys, pz);
        auto squares = unfilled_squares(p, options.kind, options.nmax);
        result.history.push_back(FactorizationStage{z, p, squares});
        if (squares.empty() || stage == options.stages) break;

        struct Pending {
            HFSet code;
            std::size_t index;
            std::vector<WTerm> args;
        };
        std::vector<Pending> pending;
        for (std::size_t q = 0; q < squares.size(); ++q) {
            const CellSquare& sq = squares[q];
            const Cell& cell = cell_for(sq.cell);
            std::vector<WTerm> args(static_cast<std::size_t>(sq.cell.n) + 1, WTerm(hole_op));
            for (std::size_t t = 0; t < cell.faces.size(); ++t) {
                args[static_cast<std::size_t>(cell.faces[t])] = terms[sq.top[cell.face_index[t]]];
            }
            args.emplace_back(op_index(sig, kBase, sq.y));
            WTerm phi(op_index(sig, kPhi, static_cast<std::size_t>(sq.cell.n)), args);
            pending.push_back(Pending{encode(sig, phi), q, std::move(args)});
        }
        std::stable_sort(pending.begin(), pending.end(),
                         [](const Pending& a, const Pending& b) { return hf_compare(a.code, b.code) < 0; });

        SimplicialSetBuilder b(d);
        std::vector<WTerm> hterms = terms;
        std::vector<SimplexIndex> hp = pz;
        for (SimplexIndex s = 0; s < z.size(); ++s) b.add_simplex(z.id(s), z.dim(s));
        for (SimplexIndex s = 0; s < z.size(); ++s) {
            const int n = z.dim(s);
            for (int i = 0; n >= 1 && i <= n; ++i) b.set_face(s, i, z.face(s, i));
            for (int i = 0; n < d && i <= n; ++i) b.set_degeneracy(s, i, z.degeneracy(s, i));
        }

        for (auto& item : pending) {
            const CellSquare& sq = squares[item.index];
            const Cell& cell = cell_for(sq.cell);
            const int n = sq.cell.n;
            const WTerm phi(op_index(sig, kPhi, static_cast<std::size_t>(n)), item.args);
            const std::optional<WTerm> kappa =
                horn ? std::optional<WTerm>(WTerm(op_index(sig, kKappa, static_cast<std::size_t>(n)), item.args))
                     : std::nullopt;
            AdjoinedCell record{static_cast<std::size_t>(stage), sq, item.code, std::nullopt};

            std::map<DeltaMap, std::size_t> handle;
            for (int m = 0; m <= d; ++m) {
                for (auto& g : delta_hom(m, n, d)) {
                    const bool in_cell = cell.sub.cell.find(g.to_fin_function().graph()).has_value();
                    if (in_cell) continue;
                    WTerm t(0);
                    std::vector<int> degens;
                    if (g.is_surjective()) {
                        t = phi;
                        degens = normal_form(g).degeneracy_indices;
                    } else {
                        // image is [n] minus k
                        t = *kappa;
                        degens = normal_form(epi_mono(g).first).degeneracy_indices;
                    }
                    for (int jj : degens) t = WTerm(op_index(sig, kDegeneracy, static_cast<std::size_t>(jj)), {t});
                    HFSet code = encode(sig, t);
                    if (m == n && g.is_identity()) record.filler = code;
                    if (!g.is_surjective() && m == n - 1) record.missing_face = code;
                    handle.emplace(g, b.add_simplex(code, m));
                    hterms.push_back(std::move(t));
                    hp.push_back(ys.act(g, sq.y));
                }
            }
            for (const auto& [g, h] : handle) {
                const int m = g.source();
                for (int i = 0; m >= 1 && i <= m; ++i) {
                    DeltaMap face = delta_compose(g, DeltaMap::face(m, i));
                    auto in_cell = cell.sub.cell.find(face.to_fin_function().graph());
                    b.set_face(h, i, in_cell ? sq.top[*in_cell] : handle.at(face));
                }
                for (int i = 0; m < d && i <= m; ++i) {
                    b.set_degeneracy(h, i, handle.at(delta_compose(g, DeltaMap::degeneracy(m, i))));
                }
            }
            result.cells.push_back(std::move(record));
        }

        auto built = b.build();
        z = built.set;
        terms.assign(hterms.size(), WTerm(0));
        pz.assign(hp.size(), 0);
        for (std::size_t h = 0; h < hterms.size(); ++h) {
            terms[built.placement[h]] = std::move(hterms[h]);
            pz[built.placement[h]] = hp[h];
        }
        ++result.stages;
    }

    result.z = z;
    for (SimplexIndex a = 0; a < xs.size(); ++a) j_carrier[a] = z.index_of(encode(sig, WTerm(op_index(sig, kConstant, a))));
    result.j = SimplicialMap(xs, z, std::move(j_carrier));
    result.p = SimplicialMap(z, ys, pz);
    result.provenance = std::move(terms);
    return result;
}

// ---------------------------------------------------------------------------

IdentityType id_type(const SimplicialMap& p, int stages, int nmax) {
    KanCheck check = is_fibration(p, nmax);
    if (!check.ok) throw DomainError("id_type: map is not a fibration: " + describe(p, *check.witness));
    SsetPullback pb = selected_pullback_sset(p, p);
    std::vector<SimplexIndex> diag(p.source().size());
    for (SimplexIndex q = 0; q < pb.object.size(); ++q) {
        if (pb.leg(q) == pb.top(q)) diag[pb.leg(q)] = q;
    }
    SimplicialMap diagonal(p.source(), pb.object, std::move(diag));
    FactorizationResult fact = factorize(diagonal, FactorizeOptions{CellKind::Shape::Horn, stages, nmax});
    return IdentityType{std::move(pb), std::move(diagonal), std::move(fact)};
}

}  // namespace mactt
