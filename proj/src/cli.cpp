#include "mactt/cli.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>

#include "mactt/canonical.hpp"
#include "mactt/config.hpp"
#include "mactt/constructors.hpp"
#include "mactt/error.hpp"
#include "mactt/formula.hpp"
#include "mactt/kan.hpp"
#include "mactt/sset_io.hpp"
#include "mactt/wtype.hpp"

namespace mactt::cli {

std::uint64_t fnv1a(std::string_view bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

namespace {

/// Input problem without a position (missing file, unknown name, ...).
class InputError : public Error {
public:
    using Error::Error;
};

struct Options {
    std::vector<std::string> inputs;
    std::optional<int> truncation;
    int stages = 1;
    std::optional<int> nmax;
    std::size_t budget = 1000;
    std::string report_path;
    std::string kind = "horn";
    std::size_t depth = 3;
    bool summary = false;
    bool oracle = false;
    bool timing = false;
    std::string map_name;
    std::string set_name;
    std::vector<std::string> lets;
    std::string select;
    std::string from;
    std::string by;
};

std::string hex(std::uint64_t v) {
    std::ostringstream s;
    s << std::hex << std::setw(16) << std::setfill('0') << v;
    return s.str();
}

class Report {
public:
    explicit Report(std::string verb) : verb_(std::move(verb)) {}

    void input(const std::string& label, std::string_view bytes) {
        inputs_.emplace_back(label, hex(fnv1a(bytes)));
    }
    void line(std::string text) { lines_.push_back(std::move(text)); }
    void kv(std::string key, std::string value) { kvs_.emplace_back(std::move(key), std::move(value)); }
    void both(const std::string& key, const std::string& value) {
        line(key + ": " + value);
        kv(key, value);
    }
    void check(const std::string& name, bool pass, const std::string& witness = "") {
        checks_.push_back(Check{name, pass, witness});
    }
    bool all_pass() const {
        return std::all_of(checks_.begin(), checks_.end(), [](const Check& c) { return c.pass; });
    }

    std::string render(bool summary, std::optional<double> millis) const {
        std::ostringstream o;
        if (summary) {
            o << "verb=" << verb_ << "\n";
            for (std::size_t i = 0; i < inputs_.size(); ++i) {
                o << "input." << i << "=" << inputs_[i].first << "\n";
                o << "digest." << i << "=" << inputs_[i].second << "\n";
            }
            for (const auto& [k, v] : kvs_) o << k << "=" << v << "\n";
            for (const auto& c : checks_) o << "check." << c.name << "=" << (c.pass ? "pass" : "fail") << "\n";
            o << "status=" << (all_pass() ? "ok" : "invariant-failure") << "\n";
            if (millis) o << "duration_ms=" << std::fixed << std::setprecision(3) << *millis << "\n";
            return o.str();
        }
        o << "verb: " << verb_ << "\n";
        for (const auto& [label, digest] : inputs_) o << "input: " << label << " fnv1a64=" << digest << "\n";
        for (const auto& l : lines_) o << l << "\n";
        for (const auto& c : checks_) {
            o << "check " << c.name << ": " << (c.pass ? "pass" : "fail");
            if (!c.pass && !c.witness.empty()) o << " (" << c.witness << ")";
            o << "\n";
        }
        o << "status: " << (all_pass() ? "ok" : "invariant-failure") << "\n";
        if (millis) o << "duration: " << std::fixed << std::setprecision(3) << *millis << " ms\n";
        return o.str();
    }

private:
    struct Check {
        std::string name;
        bool pass;
        std::string witness;
    };
    std::string verb_;
    std::vector<std::pair<std::string, std::string>> inputs_;
    std::vector<std::string> lines_;
    std::vector<std::pair<std::string, std::string>> kvs_;
    std::vector<Check> checks_;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open '" + path + "'");
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

/// Parse errors inside a file are reported as path:line:column.
template <class F>
auto with_location(const std::string& label, F&& parse) {
    try {
        return parse();
    } catch (const ParseError& e) {
        throw InputError(label + ":" + std::to_string(e.line()) + ":" + std::to_string(e.column()) + ": " +
                         e.message());
    } catch (const SequenceError& e) {
        throw InputError(label + ": " + e.what());
    }
}

std::string count_list(const std::vector<std::size_t>& v) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ",";
        out += std::to_string(v[i]);
    }
    return out;
}

std::string dims_summary(const SimplicialSet& x) {
    std::vector<std::size_t> c;
    for (int n = 0; n <= x.truncation(); ++n) c.push_back(x.count(n));
    return count_list(c);
}

std::string set_label(const std::string& name) { return name.empty() ? "" : " " + name; }

SimplicialMap truncate_map(const SimplicialMap& f, int t) {
    SimplicialSet s = truncate(f.source(), t);
    SimplicialSet g = truncate(f.target(), t);
    std::vector<SimplexIndex> c(f.carrier().begin(), f.carrier().begin() + static_cast<std::ptrdiff_t>(s.size()));
    return SimplicialMap(s, g, std::move(c));
}

struct Loaded {
    SsetDocument doc;
    std::string text;
};

Loaded load_document(const std::string& path, const Options& opt, Report& report) {
    Loaded l;
    l.text = read_file(path);
    report.input(path, l.text);
    l.doc = with_location(path, [&] { return parse_sset_document(l.text); });
    // An explicit --truncation must be reachable; the configured default
    // only caps documents that go higher.
    int t = std::min(default_truncation(), l.doc.d);
    if (opt.truncation) {
        t = *opt.truncation;
        if (t < 0) throw InputError("truncation must be non-negative");
        if (t > l.doc.d) {
            throw TruncationError(path + " is truncated at " + std::to_string(l.doc.d) + "; cannot raise to " +
                                      std::to_string(t),
                                  t);
        }
    }
    if (t < l.doc.d) {
        for (auto& s : l.doc.sets) s.set = truncate(s.set, t);
        for (auto& m : l.doc.maps) {
            if (m.map) {
                m.map = truncate_map(*m.map, t);
                m.carrier.assign(m.map->carrier().begin(), m.map->carrier().end());
            }
        }
        l.doc.d = t;
    }
    return l;
}

const NamedMap& pick_map(const SsetDocument& doc, const Options& opt, const std::string& path) {
    const NamedMap* m = nullptr;
    if (!opt.map_name.empty()) {
        m = doc.find_map(opt.map_name);
        if (!m) throw InputError(path + ": no map named '" + opt.map_name + "'");
    } else {
        if (doc.maps.empty()) throw InputError(path + ": document contains no map");
        m = &doc.maps.front();
    }
    return *m;
}

int default_nmax(const Options& opt, int d) { return opt.nmax ? *opt.nmax : std::min(2, d); }

/// Validates both ends and the map itself; false means the report already
/// carries a failing check.
bool usable_map(const SsetDocument& doc, const NamedMap& m, Report& report) {
    bool ok = true;
    for (const std::string* name : {&m.source, &m.target}) {
        auto v = validate_presheaf(doc.find_set(*name)->set);
        report.check("presheaf:" + *name, v.empty(), v.empty() ? "" : to_string(v.front()));
        ok = ok && v.empty();
    }
    report.check("map:" + m.name, m.map.has_value(), m.violation.value_or(""));
    return ok && m.map.has_value();
}

// ---------------------------------------------------------------------------

void verb_validate(const Options& opt, Report& report) {
    for (const auto& path : opt.inputs) {
        Loaded l = load_document(path, opt, report);
        report.both("truncation", std::to_string(l.doc.d));
        for (const auto& s : l.doc.sets) {
            const std::string label = s.name.empty() ? "" : ":" + s.name;
            report.line("sset" + set_label(s.name) + ": " + std::to_string(s.set.size()) +
                        " simplices, per dimension " + dims_summary(s.set));
            report.kv("simplices" + label, std::to_string(s.set.size()));
            auto v = validate_presheaf(s.set);
            report.line("presheaf" + set_label(s.name) + ": " + (v.empty() ? "ok" : std::to_string(v.size()) + " violations"));
            for (const auto& viol : v) report.line("  violation: " + to_string(viol));
            report.check("presheaf" + label, v.empty(), v.empty() ? "" : to_string(v.front()));
        }
        for (const auto& m : l.doc.maps) {
            report.line("map " + m.name + " " + m.source + " -> " + m.target + ": " +
                        (m.map ? "ok" : "violation: " + *m.violation));
            report.check("map:" + m.name, m.map.has_value(), m.violation.value_or(""));
        }
        const std::string printed = write_sset_document(l.doc);
        SsetDocument again = parse_sset_document(printed);
        bool same = again.d == l.doc.d && again.sets.size() == l.doc.sets.size() &&
                    again.maps.size() == l.doc.maps.size() && write_sset_document(again) == printed;
        for (std::size_t i = 0; same && i < again.sets.size(); ++i) same = again.sets[i].set == l.doc.sets[i].set;
        report.check("round-trip", same);
    }
}

void verb_yoneda(const Options& opt, Report& report) {
    for (const auto& path : opt.inputs) {
        Loaded l = load_document(path, opt, report);
        for (const auto& s : l.doc.sets) {
            if (!opt.set_name.empty() && s.name != opt.set_name) continue;
            const std::string label = s.name.empty() ? "" : ":" + s.name;
            auto v = validate_presheaf(s.set);
            report.check("presheaf" + label, v.empty(), v.empty() ? "" : to_string(v.front()));
            if (!v.empty()) continue;
            bool agree = true;
            for (int n = 0; n <= s.set.truncation(); ++n) {
                const std::size_t simplices = s.set.count(n);
                const std::size_t maps = count_maps(representable(n, s.set.truncation()), s.set);
                report.line("sset" + set_label(s.name) + " n=" + std::to_string(n) + ": simplices " +
                            std::to_string(simplices) + ", maps from Delta[" + std::to_string(n) + "] " +
                            std::to_string(maps));
                report.kv("count" + label + "." + std::to_string(n), std::to_string(simplices) + "/" + std::to_string(maps));
                agree = agree && simplices == maps;
            }
            report.check("yoneda" + label, agree);
        }
    }
}

CellKind::Shape parse_kind(const std::string& k) {
    if (k == "horn") return CellKind::Shape::Horn;
    if (k == "boundary") return CellKind::Shape::Boundary;
    throw InputError("--kind must be 'horn' or 'boundary'");
}

void verb_kan_check(const Options& opt, Report& report) {
    const std::string& path = opt.inputs.front();
    Loaded l = load_document(path, opt, report);
    const NamedMap& m = pick_map(l.doc, opt, path);
    if (!usable_map(l.doc, m, report)) return;
    const int nmax = default_nmax(opt, l.doc.d);
    const auto shape = parse_kind(opt.kind);
    const bool horn = shape == CellKind::Shape::Horn;
    report.both("map", m.name);
    report.both("nmax", std::to_string(nmax));
    KanCheck c = horn ? is_fibration(*m.map, nmax) : is_acyclic_fibration(*m.map, nmax);
    const std::string what = horn ? "fibration" : "acyclic-fibration";
    report.both(what, c.ok ? "yes" : "no");
    std::string witness;
    if (!c.ok) {
        witness = describe(*m.map, *c.witness);
        report.line("witness: " + witness);
        report.kv("witness", to_string(c.witness->cell));
    }
    report.check(what, c.ok, witness);
}

void verb_factorize(const Options& opt, Report& report) {
    const std::string& path = opt.inputs.front();
    Loaded l = load_document(path, opt, report);
    const NamedMap& m = pick_map(l.doc, opt, path);
    if (!usable_map(l.doc, m, report)) return;
    FactorizeOptions fo{parse_kind(opt.kind), opt.stages, default_nmax(opt, l.doc.d)};
    FactorizationResult r = factorize(*m.map, fo);
    const SimplicialMap& f = *m.map;
    report.both("map", m.name);
    report.both("kind", opt.kind);
    report.both("nmax", std::to_string(fo.nmax));
    report.both("stages-requested", std::to_string(fo.stages));
    report.both("stages-run", std::to_string(r.stages));
    report.both("cells", std::to_string(r.cells.size()));
    report.both("z-simplices", std::to_string(r.z.size()));
    report.line("z per dimension: " + dims_summary(r.z));
    for (std::size_t i = 0; i + 1 < r.history.size(); ++i) {
        report.line("stage " + std::to_string(i) + ": " + std::to_string(r.history[i].unfilled.size()) +
                    " unfilled squares");
    }
    report.both("remaining-squares", std::to_string(r.remaining().size()));
    for (const auto& cell : r.cells) {
        const SimplexIndex phi = r.z.index_of(cell.filler);
        std::string text = "cell stage=" + std::to_string(cell.stage) + " " + to_string(cell.square.cell) + " " +
                           to_string(r.signature, r.provenance[phi]);
        if (cell.missing_face) text += " face " + to_string(r.signature, r.provenance[r.z.index_of(*cell.missing_face)]);
        report.line(text);
    }
    // invariants
    report.check("p-after-j-equals-f", compose(r.p, r.j) == f);
    report.check("j-monic", r.j.is_monic());
    report.check("presheaf:z", validate_presheaf(r.z).empty());
    bool named = true;
    for (SimplexIndex s = 0; s < r.z.size() && named; ++s) {
        named = well_formed(r.signature, r.provenance[s]) && encode(r.signature, r.provenance[s]) == r.z.id(s);
    }
    report.check("provenance", named);
    bool complete = true;
    for (std::size_t i = 0; i + 1 < r.history.size() && complete; ++i) {
        const auto& next = r.history[i + 1];
        for (const auto& sq : r.history[i].unfilled) {
            if (!has_lift(next.p, transport(sq, r.history[i].z, next.z))) {
                complete = false;
                break;
            }
        }
    }
    report.check("one-step-completeness", complete);
}

void verb_id_type(const Options& opt, Report& report) {
    const std::string& path = opt.inputs.front();
    Loaded l = load_document(path, opt, report);
    const NamedMap& m = pick_map(l.doc, opt, path);
    if (!usable_map(l.doc, m, report)) return;
    const int nmax = default_nmax(opt, l.doc.d);
    report.both("map", m.name);
    report.both("nmax", std::to_string(nmax));
    KanCheck c = is_fibration(*m.map, nmax);
    if (!c.ok) {
        report.both("fibration", "no");
        report.line("witness: " + describe(*m.map, *c.witness));
        report.check("fibration", false, describe(*m.map, *c.witness));
        return;
    }
    IdentityType id = id_type(*m.map, opt.stages, nmax);
    report.both("pullback-simplices", std::to_string(id.pullback.object.size()));
    report.line("pullback per dimension: " + dims_summary(id.pullback.object));
    report.both("path-object-simplices", std::to_string(id.path_object().size()));
    report.line("path object per dimension: " + dims_summary(id.path_object()));
    report.both("cells", std::to_string(id.factorization.cells.size()));
    report.both("stages-run", std::to_string(id.factorization.stages));
    for (const auto& cell : id.factorization.cells) {
        report.line("cell stage=" + std::to_string(cell.stage) + " " + to_string(cell.square.cell) + " " +
                    to_string(id.factorization.signature, id.factorization.provenance[id.path_object().index_of(cell.filler)]));
    }
    report.check("fibration", true);
    report.check("endpoints-after-r-equals-diagonal", compose(id.endpoints(), id.reflexivity()) == id.diagonal);
    report.check("r-monic", id.reflexivity().is_monic());
    report.check("presheaf:path-object", validate_presheaf(id.path_object()).empty());
}

FinFunction read_function(const std::string& arg, Report& report) {
    std::string text = arg;
    std::string label = "argument";
    std::error_code ec;
    if (std::filesystem::is_regular_file(arg, ec)) {
        text = read_file(arg);
        label = arg;
    }
    report.input(label == "argument" ? arg : label, text);
    return with_location(label, [&] { return parse_fin_function(text); });
}

void report_window(const FinFunction& leg, const Options& opt, Report& report) {
    const FinFunction copy = leg;
    ClassFunctionView view(
        [copy](const HFSet& x) -> std::optional<HFSet> {
            if (!copy.domain().contains(x)) return std::nullopt;
            return copy(x);
        },
        leg.domain(), opt.budget);
    WindowVerdict v = is_locally_small_window(view, leg.codomain());
    report.both("locally-small-window", to_string(v.answer) + " (evaluations " + std::to_string(v.evaluations) +
                                            ", budget " + std::to_string(opt.budget) + ")");
}

void report_oracle(const FinFunction& g, Report& report) {
    const HFSet& pool = g.domain();
    if (pool.size() > 5) {
        report.both("oracle", "skipped (domain larger than 5)");
        return;
    }
    FinFunction least = min_iso_oracle(g, pool);
    report.both("oracle-minimum", to_string(least));
    report.both("oracle-equals-result", least == g ? "yes" : "no");
    // The oracle's answer must not depend on which representative it starts from.
    report.check("oracle-invariant", min_iso_oracle(canonical_over_base(least), pool) == least);
}

void verb_pullback(const Options& opt, Report& report) {
    if (opt.inputs.size() != 2) throw InputError("pullback needs two functions f and h");
    FinFunction f = read_function(opt.inputs[0], report);
    FinFunction h = read_function(opt.inputs[1], report);
    PullbackCone cone = selected_pullback(f, h);
    report.both("apex", to_string(cone.apex));
    report.both("leg", to_string(cone.leg));
    report.both("top", to_string(cone.top));
    report_window(cone.leg, opt, report);
    report.check("commutes", compose(f, cone.leg) == compose(h, cone.top));
    report.check("leg-canonical", canonical_over_base(cone.leg) == cone.leg);
    if (opt.oracle) report_oracle(cone.leg, report);
}

std::string fiber_sizes(const FinFunction& g) {
    std::vector<std::size_t> v;
    for (const auto& b : g.codomain().members()) v.push_back(g.fiber(b).size());
    return count_list(v);
}

void verb_sigma_pi(const Options& opt, Report& report, bool sigma) {
    if (opt.inputs.size() != 2) throw InputError(std::string(sigma ? "sigma" : "pi") + " needs two functions k and f");
    FinFunction k = read_function(opt.inputs[0], report);
    FinFunction f = read_function(opt.inputs[1], report);
    FinFunction r = sigma ? sigma_dependent(k, f) : pi_dependent(k, f);
    report.both("result", to_string(r));
    report.both("fiber-sizes", fiber_sizes(r));
    report_window(r, opt, report);
    bool ok = true;
    for (const auto& b : f.codomain().members()) {
        std::size_t expect = sigma ? 0 : 1;
        const HFSet over = f.fiber(b);
        for (const auto& a : over.members()) {
            const std::size_t s = k.fiber(a).size();
            expect = sigma ? expect + s : expect * s;
        }
        ok = ok && r.fiber(b).size() == expect;
    }
    report.check(sigma ? "fiber-sums" : "fiber-products", ok);
    report.check("canonical", canonical_over_base(r) == r);
    if (opt.oracle) report_oracle(r, report);
}

void verb_wtype(const Options& opt, Report& report) {
    const std::string& path = opt.inputs.front();
    const std::string text = read_file(path);
    report.input(path, text);
    Signature sig = with_location(path, [&] { return parse_signature(text); });
    report.both("operators", std::to_string(sig.size()));
    report.both("depth", std::to_string(opt.depth));
    auto terms = enumerate_wterms(sig, opt.depth);
    report.both("terms", std::to_string(terms.size()));
    for (const auto& t : terms) report.line("term " + to_string(sig, t));
    PolyIteration it = poly_iterate(sig, opt.depth);
    std::vector<std::size_t> sizes;
    for (const auto& s : it.stages) sizes.push_back(s.size());
    report.both("iterate-sizes", count_list(sizes));
    if (it.stable_from) report.both("stable-from", std::to_string(*it.stable_from));
    KonigReport k = konig_report(sig, opt.depth);
    report.both("height-counts", count_list(k.counts));
    std::vector<HFSet> codes;
    bool round_trip = true;
    for (const auto& t : terms) {
        codes.push_back(encode(sig, t));
        auto seq = seq_encode(t);
        round_trip = round_trip && seq_decode(sig, seq) == t && decode(sig, codes.back()) == t &&
                     parse_wterm(sig, to_string(sig, t)) == t;
    }
    report.check("iterate-bijection", HFSet::of(codes) == it.stages.back() && codes.size() == terms.size());
    report.check("round-trip", round_trip);
    report.check("konig", k.finite && k.within_bound);
}

Env parse_lets(const std::vector<std::string>& lets) {
    Env env;
    for (const auto& l : lets) {
        auto eq = l.find('=');
        if (eq == std::string::npos || eq == 0) throw InputError("--let expects name=literal, got '" + l + "'");
        env[l.substr(0, eq)] = with_location("--let " + l.substr(0, eq), [&] { return parse_hfset(l.substr(eq + 1)); });
    }
    return env;
}

void verb_hf_eval(const Options& opt, Report& report) {
    if (opt.inputs.size() != 1) throw InputError("hf-eval needs exactly one formula");
    report.input("formula", opt.inputs[0]);
    Formula phi = with_location("formula", [&] { return parse_formula(opt.inputs[0]); });
    Env env = parse_lets(opt.lets);
    report.both("formula", to_string(phi));
    if (!opt.select.empty()) {
        if (opt.from.empty()) throw InputError("--select requires --from");
        HFSet s = with_location("--from", [&] { return parse_hfset(opt.from); });
        HFSet r = separation(s, opt.select, phi, env);
        report.both("result", to_string(r));
        report.both("size", std::to_string(r.size()));
        report.check("subset", r.is_subset_of(s));
        report.check("idempotent", separation(r, opt.select, phi, env) == r);
    } else {
        report.both("value", eval_bounded(phi, env) ? "true" : "false");
    }
}

void verb_quotient(const Options& opt, Report& report) {
    if (opt.inputs.size() != 1) throw InputError("quotient needs exactly one set");
    if (opt.by.empty()) throw InputError("quotient requires --by with a formula in x and y");
    report.input("set", opt.inputs[0]);
    report.input("relation", opt.by);
    HFSet a = with_location("set", [&] { return parse_hfset(opt.inputs[0]); });
    Formula rel = with_location("relation", [&] { return parse_formula(opt.by); });
    Env base = parse_lets(opt.lets);
    auto related = [&](const HFSet& x, const HFSet& y) {
        Env env = base;
        env["x"] = x;
        env["y"] = y;
        return eval_bounded(rel, env);
    };
    HFSet q = quotient_min(a, related);
    report.both("representatives", to_string(q));
    report.both("classes", std::to_string(q.size()));
    bool minimal = true;
    for (const auto& r : q.members()) {
        for (const auto& x : a.members()) {
            if (related(r, x) && hf_compare(x, r) < 0) minimal = false;
        }
    }
    report.check("classwise-minimal", minimal);
    report.check("idempotent", quotient_min(q, related) == q);
}

std::vector<std::string> normalize_verbs(std::vector<std::string> args) {
    if (args.size() >= 2 && args[0] == "kan" && (args[1] == "check" || args[1] == "factorize")) {
        args[1] = args[1] == "check" ? "kan-check" : "factorize";
        args.erase(args.begin());
    } else if (args.size() >= 2 && args[0] == "ct" &&
               (args[1] == "pullback" || args[1] == "sigma" || args[1] == "pi")) {
        args.erase(args.begin());
    }
    return args;
}

}  // namespace

int run(const std::vector<std::string>& raw_args, std::ostream& out, std::ostream& err) {
    const std::vector<std::string> args = normalize_verbs(raw_args);
    CLI::App app{"Finite-scale simplicial sets, fibrations and W-types", "mactt"};
    app.require_subcommand(1);
    Options opt;

    auto common = [&](CLI::App* sub) {
        sub->add_option("--truncation,-d", opt.truncation, "Truncate inputs to this dimension");
        sub->add_option("--report", opt.report_path, "Also write the report to this file");
        sub->add_flag("--summary", opt.summary, "Print key=value lines instead of the text report");
        sub->add_flag("--timing", opt.timing, "Append the wall-clock duration");
    };
    struct Verb {
        const char* name;
        const char* help;
    };
    const Verb verbs[] = {
        {"validate", "Check .sset files against the simplicial identities"},
        {"yoneda", "Compare simplex counts with maps out of representables"},
        {"kan-check", "Test a map for the lifting property against horns or boundaries"},
        {"factorize", "Factor a map by staged cell attachment"},
        {"pullback", "Selected pullback of two functions"},
        {"sigma", "Dependent sum of k along f"},
        {"pi", "Dependent product of k along f"},
        {"id-type", "Identity type of a fibration"},
        {"wtype", "Enumerate the W-type of a signature"},
        {"hf-eval", "Evaluate a bounded formula or separate a set"},
        {"quotient", "Minimal representatives of an equivalence relation"},
    };
    for (const auto& v : verbs) {
        CLI::App* sub = app.add_subcommand(v.name, v.help);
        common(sub);
        const std::string name = v.name;
        if (name == "hf-eval") {
            sub->add_option("formula", opt.inputs, "Formula text")->required();
            sub->add_option("--let", opt.lets, "Bind a variable: name=literal");
            sub->add_option("--select", opt.select, "Variable to separate on");
            sub->add_option("--from", opt.from, "Set to separate from");
        } else if (name == "quotient") {
            sub->add_option("set", opt.inputs, "HF literal")->required();
            sub->add_option("--by", opt.by, "Relation as a formula in x and y")->required();
            sub->add_option("--let", opt.lets, "Bind a variable: name=literal");
        } else {
            sub->add_option("inputs", opt.inputs, "Input files or literals")->required();
        }
        if (name == "kan-check" || name == "factorize" || name == "id-type") {
            sub->add_option("--map", opt.map_name, "Map to use (default: the first)");
            sub->add_option("--nmax", opt.nmax, "Largest cell dimension (default: min(2, d))");
        }
        if (name == "kan-check" || name == "factorize") {
            sub->add_option("--kind", opt.kind, "horn or boundary")->check(CLI::IsMember({"horn", "boundary"}));
        }
        if (name == "factorize" || name == "id-type") {
            sub->add_option("--stages", opt.stages, "Number of attachment rounds")->check(CLI::NonNegativeNumber);
        }
        if (name == "yoneda") sub->add_option("--set", opt.set_name, "Only this set");
        if (name == "wtype") sub->add_option("--depth", opt.depth, "Largest term height");
        if (name == "pullback" || name == "sigma" || name == "pi") {
            sub->add_flag("--oracle", opt.oracle, "Cross-check with the brute-force minimum");
            sub->add_option("--budget", opt.budget, "Evaluation budget for the window check");
        }
    }

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            out << app.help();
            return 0;
        }
        err << "error: " << e.what() << "\n";
        return 2;
    }
    CLI::App* sub = app.get_subcommands().front();
    for (CLI::App* s : app.get_subcommands()) {
        if (s->count_all() > 0 || s->parsed()) sub = s;
    }
    const std::string verb = sub->get_name();
    Report report(verb);
    const auto t0 = std::chrono::steady_clock::now();
    try {
        if (verb == "validate") verb_validate(opt, report);
        else if (verb == "yoneda") verb_yoneda(opt, report);
        else if (verb == "kan-check") verb_kan_check(opt, report);
        else if (verb == "factorize") verb_factorize(opt, report);
        else if (verb == "pullback") verb_pullback(opt, report);
        else if (verb == "sigma") verb_sigma_pi(opt, report, true);
        else if (verb == "pi") verb_sigma_pi(opt, report, false);
        else if (verb == "id-type") verb_id_type(opt, report);
        else if (verb == "wtype") verb_wtype(opt, report);
        else if (verb == "hf-eval") verb_hf_eval(opt, report);
        else if (verb == "quotient") verb_quotient(opt, report);
    } catch (const TruncationError& e) {
        err << "error: " << e.what() << " (required truncation " << e.required() << ")\n";
        return 2;
    } catch (const ParseError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
    std::optional<double> millis;
    if (opt.timing) {
        millis = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    }
    const std::string text = report.render(opt.summary, millis);
    out << text;
    if (!opt.report_path.empty()) {
        std::ofstream file(opt.report_path, std::ios::binary);
        if (!file) {
            err << "error: cannot write '" << opt.report_path << "'\n";
            return 2;
        }
        file << text;
    }
    return report.all_pass() ? 0 : 1;
}

}  // namespace mactt::cli
