// Acceptance runner: one PASS/FAIL line per criterion.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <sys/wait.h>

#include "mactt/canonical.hpp"
#include "mactt/cli.hpp"
#include "mactt/formula.hpp"
#include "mactt/sset_io.hpp"
#include "mactt/wtype.hpp"
#include "oracles.hpp"
#include "properties.hpp"

using namespace mactt;

namespace {

const std::string kCorpus = MACTT_CORPUS_DIR;
constexpr int kD = 3;

struct Failure {
    std::string what;
};

void require(bool ok, const std::string& what) {
    if (!ok) throw Failure{what};
}

void require_empty(const std::string& problem, const std::string& context) {
    if (!problem.empty()) throw Failure{context + ": " + problem};
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
}

std::vector<SimplicialSet> corpus_sets() {
    std::vector<SimplicialSet> out;
    std::vector<std::filesystem::path> files;
    for (const auto& e : std::filesystem::directory_iterator(kCorpus)) {
        if (e.path().extension() == ".sset") files.push_back(e.path());
    }
    std::sort(files.begin(), files.end());
    for (const auto& f : files) {
        for (const auto& named : parse_sset_document(slurp(f)).sets) out.push_back(named.set);
    }
    return out;
}

// ---------------------------------------------------------------------------

std::string strict_functoriality() {
    // exhaustive: all f : B -> A, g : C -> B, h : D -> A with |A|,|B|,|C|,|D| <= 3
    std::size_t triples = 0;
    for (std::size_t a = 0; a <= 3; ++a) {
        for (std::size_t b = 0; b <= 3; ++b) {
            for (std::size_t c = 0; c <= 3; ++c) {
                for (std::size_t d = 0; d <= 3; ++d) {
                    const HFSet A = HFSet::ordinal(a), B = HFSet::ordinal(b), C = HFSet::ordinal(c),
                                D = HFSet::ordinal(d);
                    oracle::for_each_function(B, A, [&](const FinFunction& f) {
                        oracle::for_each_function(C, B, [&](const FinFunction& g) {
                            oracle::for_each_function(D, A, [&](const FinFunction& h) {
                                require_empty(props::strict_functoriality(f, g, h), "exhaustive");
                                ++triples;
                            });
                        });
                    });
                }
            }
        }
    }
    // random, larger, with non-ordinal labels
    std::mt19937_64 rng(2024);
    std::size_t random = 0;
    for (; random < 250; ++random) {
        const HFSet A = oracle::random_labels(rng, 1 + rng() % 5);
        const HFSet B = oracle::random_labels(rng, 1 + rng() % 6);
        const HFSet C = oracle::random_labels(rng, rng() % 7);
        const HFSet D = oracle::random_labels(rng, rng() % 7);
        require_empty(props::strict_functoriality(oracle::random_function(rng, B, A), oracle::random_function(rng, C, B),
                                                  oracle::random_function(rng, D, A)),
                      "random #" + std::to_string(random));
    }
    return std::to_string(triples) + " exhaustive triples, " + std::to_string(random) + " random";
}

std::string yoneda_and_presheaves() {
    std::size_t objects = 0;
    std::size_t validated = 0;
    auto validate = [&](const SimplicialSet& x, const std::string& what) {
        const auto v = validate_presheaf(x);
        require(v.empty(), what + " is not a presheaf: " + (v.empty() ? "" : to_string(v.front())));
        ++validated;
    };
    for (const auto& x : corpus_sets()) {
        ++objects;
        for (int n = 0; n <= x.truncation(); ++n) {
            require(natural_maps(n, x).size() == simplices_at(x, n).size(), "Yoneda count at n=" + std::to_string(n));
        }
        validate(x, "corpus object");
    }

    // every constructor output
    const SimplicialSet d1 = representable(1, kD);
    const SimplicialSet d2 = representable(2, kD);
    const SimplicialSet pt = terminal_sset(kD);
    for (int n = 0; n <= kD; ++n) validate(representable(n, kD), "representable");
    for (int n = 1; n <= kD; ++n) {
        for (int k = 0; k <= n; ++k) validate(cell_subobject(CellKind::horn(n, k), kD).cell, "horn");
    }
    for (int n = 0; n <= kD; ++n) validate(cell_subobject(CellKind::boundary(n), kD).cell, "boundary");
    validate(product_sset(d1, d2).object, "product");
    validate(coproduct_sset(d1, d2).object, "coproduct");
    validate(pt, "terminal");
    validate(initial_sset(kD), "initial");
    validate(truncate(d2, 1), "truncation");
    validate(exponential_sset(d1, d1, 1).object, "exponential");
    const SimplicialMap line = to_terminal(d1);
    validate(selected_pullback_sset(line, line).object, "simplicial pullback");
    const SimplicialMap horn_map = to_terminal(cell_subobject(CellKind::horn(2, 1), kD).cell);
    validate(factorize(horn_map, {CellKind::Shape::Horn, 1, 2}).z, "factorization");
    validate(id_type(to_terminal(coproduct_sset(pt, pt).object), 1, 2).pullback.object, "identity type");

    // Delta hom counts against C(n+m+1, n+1), computed by Pascal's rule
    std::vector<std::vector<std::size_t>> pascal(14, std::vector<std::size_t>(14, 0));
    for (std::size_t i = 0; i < 14; ++i) {
        pascal[i][0] = 1;
        for (std::size_t j = 1; j <= i; ++j) pascal[i][j] = pascal[i - 1][j - 1] + pascal[i - 1][j];
    }
    for (int n = 0; n <= 6; ++n) {
        for (int m = 0; m <= 6; ++m) {
            require(delta_hom(n, m, 6).size() == pascal[n + m + 1][n + 1],
                    "|Delta(" + std::to_string(n) + "," + std::to_string(m) + ")|");
        }
    }
    return std::to_string(objects) + " corpus objects, " + std::to_string(validated) + " presheaves, 49 hom counts";
}

std::string factorization() {
    std::mt19937_64 rng(99);
    std::size_t cells = 0;
    int done = 0;
    while (done < 25) {
        const SimplicialSet x = oracle::random_subcomplex(rng, 2, kD).cell;
        const SimplicialSet y = oracle::random_subcomplex(rng, 1 + static_cast<int>(rng() % 2), kD).cell;
        auto maps = all_maps(x, y);
        if (maps.empty()) continue;
        const SimplicialMap f = maps[rng() % maps.size()];
        const FactorizeOptions o{done % 3 == 2 ? CellKind::Shape::Boundary : CellKind::Shape::Horn,
                                 1 + static_cast<int>(rng() % 2), 2};
        const FactorizationResult r = factorize(f, o);
        require_empty(props::factorization(f, r, o), "input " + std::to_string(done));
        cells += r.cells.size();
        ++done;
    }
    for (auto shape : {CellKind::Shape::Horn, CellKind::Shape::Boundary}) {
        const SimplicialMap id = SimplicialMap::identity(representable(2, kD));
        const FactorizationResult r = factorize(id, {shape, 2, 2});
        require(r.cells.empty(), "identity adjoined cells");
    }
    return "25 random maps (" + std::to_string(cells) + " cells), identities adjoin nothing";
}

std::string kan_witnesses() {
    const SimplicialSet pt = terminal_sset(kD);
    const SimplicialMap line = to_terminal(representable(1, kD));
    const KanCheck c = is_fibration(line, 2);
    require(!c.ok && c.witness, "Delta[1] -> Delta[0] accepted as a fibration");
    require(c.witness->cell == CellKind::horn(2, 0), "witness is " + to_string(c.witness->cell));
    require(!oracle::lift_by_faces(line, c.witness->cell, c.witness->top, c.witness->y), "witness has a filler");

    const SimplicialMap two = to_terminal(coproduct_sset(pt, pt).object);
    const KanCheck a = is_acyclic_fibration(two, 2);
    require(!a.ok && a.witness, "Delta[0]+Delta[0] -> Delta[0] accepted as acyclic");
    require(a.witness->cell == CellKind::boundary(1), "witness is " + to_string(a.witness->cell));
    require(!oracle::lift_by_faces(two, a.witness->cell, a.witness->top, a.witness->y), "witness has a filler");

    std::size_t ids = 0;
    for (const auto& x : corpus_sets()) {
        const SimplicialMap id = SimplicialMap::identity(x);
        require(is_fibration(id, 2).ok && is_acyclic_fibration(id, 2).ok, "identity rejected");
        ++ids;
    }
    return "horn(2,0) and boundary(1) witnesses, " + std::to_string(ids) + " identities accepted";
}

/// Number of maps h : terms -> carrier commuting with the algebra, by trying
/// all of them. Terms are closed under subterms; `alg` is indexed by
/// (operation, argument tuple in base `carrier`).
std::size_t brute_morphisms(const Signature& sig, const std::vector<WTerm>& terms, std::size_t carrier,
                            const std::vector<std::vector<std::size_t>>& alg) {
    std::map<HFSet, std::size_t> index;
    for (std::size_t i = 0; i < terms.size(); ++i) index[encode(sig, terms[i])] = i;
    std::vector<std::size_t> h(terms.size(), 0);
    std::size_t count = 0;
    while (true) {
        bool ok = true;
        for (std::size_t i = 0; i < terms.size() && ok; ++i) {
            std::size_t tuple = 0;
            for (const auto& child : terms[i].children()) tuple = tuple * carrier + h[index.at(encode(sig, child))];
            ok = h[i] == alg[terms[i].op()][tuple];
        }
        if (ok) ++count;
        std::size_t t = 0;
        while (t < h.size() && ++h[t] == carrier) h[t++] = 0;
        if (t == h.size()) return count;
    }
}

std::size_t ipow(std::size_t b, std::size_t e) {
    std::size_t r = 1;
    while (e-- > 0) r *= b;
    return r;
}

std::string wtypes() {
    const Signature nat = Signature::from_list({{"z", 0}, {"s", 1}});
    const Signature bintree = Signature::from_list({{"leaf", 0}, {"node", 2}});
    const auto it = poly_iterate(nat, 8);
    for (std::size_t i = 0; i < it.stages.size(); ++i) require(it.stages[i].size() == i, "nat iterate size");

    std::size_t terms = 0;
    for (const Signature& sig : {nat, bintree}) {
        for (std::size_t depth = 0; depth <= 5; ++depth) {
            const auto ts = enumerate_wterms(sig, depth);
            std::vector<HFSet> codes;
            std::set<HFSet> distinct;
            for (const auto& t : ts) {
                codes.push_back(encode(sig, t));
                distinct.insert(codes.back());
                require(decode(sig, codes.back()) == t, "decode");
                require(seq_decode(sig, seq_encode(t)) == t, "sequence round trip");
            }
            require(distinct.size() == ts.size(), "enumeration repeats a term");
            require(HFSet::of(codes) == poly_iterate(sig, depth).stages.back(), "enumeration differs from iterate");
            terms += ts.size();
        }
    }

    // uniqueness of folds: every algebra on carriers 1..3, terms of height <= 3
    std::size_t algebras = 0;
    for (const Signature& sig : {nat, bintree}) {
        const auto ts = enumerate_wterms(sig, 3);
        for (std::size_t c = 1; c <= 3; ++c) {
            std::vector<std::size_t> table_sizes;
            std::size_t slots = 0;
            for (std::size_t op = 0; op < sig.size(); ++op) {
                table_sizes.push_back(ipow(c, sig.arity(op)));
                slots += table_sizes.back();
            }
            std::vector<std::size_t> flat(slots, 0);
            while (true) {
                std::vector<std::vector<std::size_t>> alg;
                std::size_t at = 0;
                for (std::size_t s : table_sizes) {
                    alg.emplace_back(flat.begin() + at, flat.begin() + at + s);
                    at += s;
                }
                require(brute_morphisms(sig, ts, c, alg) == 1, "fold is not unique");
                ++algebras;
                std::size_t t = 0;
                while (t < flat.size() && ++flat[t] == c) flat[t++] = 0;
                if (t == flat.size()) break;
            }
        }
        // the library's count and fold on all nat algebras over 2 elements
        if (&sig == &nat) {
            oracle::for_each_function(poly_apply(nat, HFSet::ordinal(2)), HFSet::ordinal(2), [&](const FinFunction& a) {
                require(count_algebra_morphisms(nat, a, 3) == 1, "library morphism count");
            });
        }
    }
    return "iterates, " + std::to_string(terms) + " terms, " + std::to_string(algebras) + " algebras";
}

std::string adjunction_counts() {
    // f : A -> B up to isomorphism (fiber sizes), |A|,|B| <= 4; k over A and m
    // over B with fibers of size <= 2.
    std::size_t cases = 0;
    std::function<void(std::vector<std::size_t>&, std::size_t, std::size_t, std::size_t,
                       const std::function<void(const std::vector<std::size_t>&)>&)>
        vectors = [&](std::vector<std::size_t>& v, std::size_t len, std::size_t cap, std::size_t total_cap,
                      const std::function<void(const std::vector<std::size_t>&)>& visit) {
            if (v.size() == len) {
                visit(v);
                return;
            }
            std::size_t used = 0;
            for (std::size_t x : v) used += x;
            for (std::size_t x = 0; x <= cap && used + x <= total_cap; ++x) {
                v.push_back(x);
                vectors(v, len, cap, total_cap, visit);
                v.pop_back();
            }
        };
    for (std::size_t b = 0; b <= 4; ++b) {
        const HFSet B = HFSet::ordinal(b);
        std::vector<std::size_t> fv;
        vectors(fv, b, 4, 4, [&](const std::vector<std::size_t>& fibers) {
            const FinFunction f = oracle::with_fibers(B, fibers);
            const HFSet A = f.domain();
            std::vector<std::size_t> kv;
            vectors(kv, A.size(), 2, 8, [&](const std::vector<std::size_t>& kfib) {
                const FinFunction k = oracle::with_fibers(A, kfib);
                std::vector<std::size_t> mv;
                vectors(mv, b, 2, 8, [&](const std::vector<std::size_t>& mfib) {
                    const FinFunction m = oracle::with_fibers(B, mfib);
                    const bool small = A.size() <= 2 && b <= 2;
                    require_empty(props::adjunction_counts(k, f, m, small), "case " + std::to_string(cases));
                    ++cases;
                });
            });
        });
    }
    return std::to_string(cases) + " slice triples";
}

std::string order_and_separation() {
    constexpr std::size_t kCodes = 1U << 16;
    std::vector<HFSet> sets;
    sets.reserve(kCodes);
    for (std::size_t n = 0; n < kCodes; ++n) {
        std::vector<HFSet> members;
        for (std::size_t i = 0; i < 16; ++i) {
            if ((n >> i) & 1U) members.push_back(sets[i]);
        }
        sets.push_back(HFSet::of(std::move(members)));
        require(oracle::ackermann(sets.back()) == n, "code of " + std::to_string(n));
    }
    for (std::size_t n = 0; n + 1 < kCodes; ++n) {
        require(hf_compare(sets[n], sets[n + 1]) < 0, "order at " + std::to_string(n));
        require(hf_compare(sets[n + 1], sets[n]) > 0, "antisymmetry at " + std::to_string(n));
        require(hf_compare(sets[n], sets[n]) == 0, "reflexivity at " + std::to_string(n));
    }
    std::mt19937_64 rng(7);
    for (int i = 0; i < 200000; ++i) {
        const std::size_t a = rng() % kCodes;
        const std::size_t b = rng() % kCodes;
        require((hf_compare(sets[a], sets[b]) < 0) == (a < b), "random pair");
    }

    // initial segments of P({0,1,2}), N replaced by the ordinal 4
    const Formula phi = parse_formula("exists n in #4 . forall y in #4 . (y in x <-> y in n)");
    const HFSet p3 = powerset(HFSet::ordinal(3));
    const HFSet r = separation(p3, "x", phi);
    require(r == HFSet::of({HFSet::ordinal(0), HFSet::ordinal(1), HFSet::ordinal(2), HFSet::ordinal(3)}),
            "separation gave " + to_string(r));
    for (const auto& x : p3.members()) {
        // direct test: x is {0..n-1} for some n
        bool segment = false;
        for (std::size_t n = 0; n <= 3; ++n) segment = segment || x == HFSet::ordinal(n);
        require(r.contains(x) == segment, "membership of " + to_string(x));
    }

    std::size_t classes = 0;
    for (int round = 0; round < 100; ++round) {
        const HFSet a = oracle::random_labels(rng, 1 + rng() % 14);
        const unsigned k = 1 + static_cast<unsigned>(rng() % 5);
        auto cls = [&](const HFSet& x) { return static_cast<unsigned>(oracle::ackermann(x) % k); };
        const HFSet q = quotient_min(a, [&](const HFSet& x, const HFSet& y) { return cls(x) == cls(y); });
        std::set<unsigned> seen;
        for (const auto& rep : q.members()) require(seen.insert(cls(rep)).second, "two representatives of a class");
        for (const auto& x : a.members()) {
            require(seen.count(cls(x)) == 1, "class without representative");
            for (const auto& rep : q.members()) {
                if (cls(rep) == cls(x)) require(hf_compare(rep, x) <= 0, "representative is not minimal");
            }
        }
        classes += q.size();
    }
    return "65536 codes, separation, " + std::to_string(classes) + " quotient classes";
}

struct Run {
    int code;
    std::string out;
};

Run run_binary(const std::string& args) {
    const std::string cmd = std::string(MACTT_CLI_PATH) + " " + args + " 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    require(pipe != nullptr, "cannot spawn the CLI");
    std::string out;
    char buf[4096];
    std::size_t n = 0;
    while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, n);
    const int status = pclose(pipe);
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string determinism() {
    auto c = [](const std::string& name) { return kCorpus + "/" + name; };
    const std::vector<std::string> invocations{
        "validate " + c("delta2.sset") + " " + c("horn2_1.sset"),
        "yoneda " + c("boundary2.sset"),
        "kan-check " + c("delta1_to_point.sset"),
        "kan check " + c("two_points_to_point.sset") + " --kind boundary",
        "factorize " + c("horn2_1_to_point.sset") + " --stages 2",
        "kan factorize " + c("two_points_to_point.sset") + " --kind boundary --stages 1",
        "pullback " + c("fibers21.fn") + " " + c("fibers21.fn") + " --oracle",
        "ct sigma " + c("const2.fn") + " " + c("id1.fn"),
        "pi " + c("fibers21.fn") + " " + c("collapse2.fn"),
        "id-type " + c("two_points_to_point.sset") + " --stages 1",
        "wtype " + c("bintree.sig") + " --depth 4",
        "hf-eval 'exists n in #4 . forall y in #4 . (y in x <-> y in n)' --select x --from "
        "'{#0,#1,{#1},#2,{#2},{#0,#2},{#1,#2},#3}'",
        "quotient '#5' --by 'x = y | (x in #2 & y in #2)'",
        "validate " + c("delta1.sset") + " --summary",
    };
    const auto dir = std::filesystem::temp_directory_path() / "mactt_acceptance";
    std::filesystem::create_directories(dir);
    for (std::size_t i = 0; i < invocations.size(); ++i) {
        const auto r1 = dir / ("a" + std::to_string(i));
        const auto r2 = dir / ("b" + std::to_string(i));
        const Run a = run_binary(invocations[i] + " --report " + r1.string());
        const Run b = run_binary(invocations[i] + " --report " + r2.string());
        require(a.code == 0 || a.code == 1, invocations[i] + " exited " + std::to_string(a.code) + ": " + a.out);
        require(a.code == b.code && a.out == b.out, invocations[i] + " differs between runs");
        require(slurp(r1) == slurp(r2) && slurp(r1) == a.out, invocations[i] + " report differs");
    }
    std::filesystem::remove_all(dir);
    return std::to_string(invocations.size()) + " invocations, 11 verbs";
}

}  // namespace

int main(int argc, char** argv) {
    // optional: run a single criterion by number
    const int only = argc > 1 ? std::atoi(argv[1]) : 0;
    const std::vector<std::pair<std::string, std::function<std::string()>>> criteria{
        {"strict functoriality of selected pullbacks", strict_functoriality},
        {"Yoneda, presheaf validity, Delta hom counts", yoneda_and_presheaves},
        {"factorization", factorization},
        {"Kan witnesses", kan_witnesses},
        {"W-types", wtypes},
        {"Sigma/Pi adjunction counts", adjunction_counts},
        {"order, separation, quotients", order_and_separation},
        {"CLI determinism", determinism},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        if (only != 0 && static_cast<std::size_t>(only) != i + 1) continue;
        const auto start = std::chrono::steady_clock::now();
        std::string status;
        std::string detail;
        try {
            detail = criteria[i].second();
            status = "PASS";
        } catch (const Failure& f) {
            status = "FAIL";
            detail = f.what;
        } catch (const std::exception& e) {
            status = "FAIL";
            detail = std::string("exception: ") + e.what();
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (status != "PASS") ++failed;
        char timing[32];
        std::snprintf(timing, sizeof timing, "%.2fs", secs);
        std::cout << status << " criterion " << i + 1 << ": " << criteria[i].first << " -- " << detail << " ("
                  << timing << ")" << std::endl;
    }
    return failed == 0 ? 0 : 1;
}
