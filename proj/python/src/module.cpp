#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "mactt/canonical.hpp"
#include "mactt/cli.hpp"
#include "mactt/constructors.hpp"
#include "mactt/error.hpp"
#include "mactt/formula.hpp"
#include "mactt/kan.hpp"
#include "mactt/sset_io.hpp"
#include "mactt/wtype.hpp"

namespace py = pybind11;
using namespace mactt;

namespace {

CellKind::Shape shape_of(const std::string& kind) {
    if (kind == "horn") return CellKind::Shape::Horn;
    if (kind == "boundary") return CellKind::Shape::Boundary;
    throw py::value_error("kind must be 'horn' or 'boundary'");
}

py::object witness(const SimplicialMap& f, const KanCheck& c) {
    if (c.ok || !c.witness) return py::none();
    return py::str(describe(f, *c.witness));
}

Env to_env(const std::map<std::string, HFSet>& vars) { return Env(vars.begin(), vars.end()); }

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Hereditarily finite sets, simplicial sets at finite truncation, fibrations and W-types.";

    py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
    py::register_exception<TruncationError>(m, "TruncationError", PyExc_ValueError);
    py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);

    py::class_<HFSet>(m, "HFSet")
        .def(py::init<>())
        .def(py::init([](const std::string& literal) { return parse_hfset(literal); }))
        .def_static("ordinal", &HFSet::ordinal)
        .def_static("pair", &HFSet::pair)
        .def_static("of", &HFSet::of)
        .def_property_readonly("members", [](const HFSet& x) {
            auto ms = x.members();
            return std::vector<HFSet>(ms.begin(), ms.end());
        })
        .def("as_ordinal", &HFSet::as_ordinal)
        .def("as_pair", &HFSet::as_pair)
        .def("__contains__", &HFSet::contains)
        .def("__len__", &HFSet::size)
        .def("__hash__", &HFSet::hash)
        .def("__eq__", [](const HFSet& a, const HFSet& b) { return a == b; })
        .def("__lt__", [](const HFSet& a, const HFSet& b) { return hf_compare(a, b) < 0; })
        .def("__le__", [](const HFSet& a, const HFSet& b) { return hf_compare(a, b) <= 0; })
        .def("__str__", [](const HFSet& x) { return to_string(x); })
        .def("__repr__", [](const HFSet& x) { return "HFSet('" + to_string(x) + "')"; });

    m.def("hf_compare", [](const HFSet& a, const HFSet& b) {
        const auto c = hf_compare(a, b);
        return c < 0 ? -1 : (c > 0 ? 1 : 0);
    }, "Ackermann order as -1, 0 or 1.");
    m.def("powerset", &powerset);

    py::class_<FinFunction>(m, "FinFunction")
        .def(py::init([](const std::string& literal) { return parse_fin_function(literal); }))
        .def(py::init<HFSet, HFSet, std::vector<HFSet>>(), py::arg("domain"), py::arg("codomain"), py::arg("values"))
        .def_property_readonly("domain", &FinFunction::domain)
        .def_property_readonly("codomain", &FinFunction::codomain)
        .def("__call__", &FinFunction::operator())
        .def("encode", &FinFunction::encode)
        .def("fiber", &FinFunction::fiber)
        .def("__eq__", [](const FinFunction& a, const FinFunction& b) { return a == b; })
        .def("__str__", [](const FinFunction& f) { return to_string(f); });

    m.def("compose", py::overload_cast<const FinFunction&, const FinFunction&>(&compose), py::arg("g"), py::arg("f"),
          "g after f.");
    m.def("selected_pullback", [](const FinFunction& f, const FinFunction& h) {
        PullbackCone c = selected_pullback(f, h);
        return py::make_tuple(c.apex, c.leg, c.top);
    }, py::arg("f"), py::arg("h"), "(apex, leg, top) of the pullback of h along f.");
    m.def("sigma", &sigma_dependent, py::arg("k"), py::arg("f"));
    m.def("pi", &pi_dependent, py::arg("k"), py::arg("f"));
    m.def("count_slice_maps", &count_slice_maps, py::arg("m"), py::arg("n"));
    m.def("canonical_over_base", &canonical_over_base);
    m.def("quotient_min", [](const HFSet& a, const std::function<bool(const HFSet&, const HFSet&)>& related) {
        return quotient_min(a, related);
    });

    m.def("eval_bounded", [](const std::string& formula, const std::map<std::string, HFSet>& env) {
        return eval_bounded(parse_formula(formula), to_env(env));
    }, py::arg("formula"), py::arg("env") = std::map<std::string, HFSet>{});
    m.def("separation", [](const HFSet& s, const std::string& var, const std::string& formula,
                           const std::map<std::string, HFSet>& env) {
        return separation(s, var, parse_formula(formula), to_env(env));
    }, py::arg("s"), py::arg("var"), py::arg("formula"), py::arg("env") = std::map<std::string, HFSet>{});

    py::class_<SimplicialSet>(m, "SimplicialSet")
        .def_property_readonly("truncation", &SimplicialSet::truncation)
        .def("__len__", &SimplicialSet::size)
        .def("count", &SimplicialSet::count)
        .def("ids", [](const SimplicialSet& x, int n) {
            std::vector<HFSet> out;
            for (SimplexIndex s : simplices_at(x, n)) out.push_back(x.id(s));
            return out;
        })
        .def("validate", [](const SimplicialSet& x) {
            std::vector<std::string> out;
            for (const auto& v : validate_presheaf(x)) out.push_back(to_string(v));
            return out;
        }, "Violations of the simplicial identities; empty when valid.")
        .def("__eq__", [](const SimplicialSet& a, const SimplicialSet& b) { return a == b; })
        .def("__str__", [](const SimplicialSet& x) { return write_sset(x); });

    m.def("parse_sset", [](const std::string& text) { return parse_sset(text); });
    m.def("representable", [](int n, int d) { return representable(n, d); }, py::arg("n"), py::arg("d"));
    m.def("horn", [](int n, int k, int d) { return cell_subobject(CellKind::horn(n, k), d).cell; }, py::arg("n"),
          py::arg("k"), py::arg("d"));
    m.def("boundary", [](int n, int d) { return cell_subobject(CellKind::boundary(n), d).cell; }, py::arg("n"),
          py::arg("d"));
    m.def("product", [](const SimplicialSet& x, const SimplicialSet& y) { return product_sset(x, y).object; });
    m.def("coproduct", [](const SimplicialSet& x, const SimplicialSet& y) { return coproduct_sset(x, y).object; });
    m.def("count_maps", &count_maps, py::arg("source"), py::arg("target"));
    m.def("yoneda_counts", [](const SimplicialSet& x, int n) {
        return py::make_tuple(natural_maps(n, x).size(), simplices_at(x, n).size());
    }, "(maps from Delta[n], n-simplices).");

    py::class_<SimplicialMap>(m, "SimplicialMap")
        .def_static("identity", &SimplicialMap::identity)
        .def_property_readonly("source", &SimplicialMap::source)
        .def_property_readonly("target", &SimplicialMap::target)
        .def_property_readonly("carrier", [](const SimplicialMap& f) {
            return std::vector<SimplexIndex>(f.carrier().begin(), f.carrier().end());
        })
        .def("is_monic", &SimplicialMap::is_monic)
        .def("__eq__", [](const SimplicialMap& a, const SimplicialMap& b) { return a == b; });

    m.def("to_terminal", &to_terminal);
    m.def("compose_maps", py::overload_cast<const SimplicialMap&, const SimplicialMap&>(&compose), py::arg("g"),
          py::arg("f"));
    m.def("load_maps", [](const std::string& text) {
        const SsetDocument doc = parse_sset_document(text);
        py::dict out;
        for (const auto& named : doc.maps) {
            if (named.map) out[py::str(named.name)] = *named.map;
        }
        return out;
    }, "Named simplicial maps of a .sset document.");

    m.def("is_fibration", [](const SimplicialMap& f, int nmax) {
        const KanCheck c = is_fibration(f, nmax);
        return py::make_tuple(c.ok, witness(f, c));
    }, py::arg("f"), py::arg("nmax"), "(ok, description of an unfillable square or None).");
    m.def("is_acyclic_fibration", [](const SimplicialMap& f, int nmax) {
        const KanCheck c = is_acyclic_fibration(f, nmax);
        return py::make_tuple(c.ok, witness(f, c));
    }, py::arg("f"), py::arg("nmax"));

    py::class_<FactorizationResult>(m, "Factorization")
        .def_readonly("z", &FactorizationResult::z)
        .def_readonly("j", &FactorizationResult::j)
        .def_readonly("p", &FactorizationResult::p)
        .def_readonly("stages", &FactorizationResult::stages)
        .def_property_readonly("cells", [](const FactorizationResult& r) { return r.cells.size(); })
        .def_property_readonly("remaining", [](const FactorizationResult& r) { return r.remaining().size(); })
        .def_property_readonly("provenance", [](const FactorizationResult& r) {
            std::vector<std::string> out;
            for (const auto& t : r.provenance) out.push_back(to_string(r.signature, t));
            return out;
        });
    m.def("factorize", [](const SimplicialMap& f, const std::string& kind, int stages, int nmax) {
        return factorize(f, {shape_of(kind), stages, nmax});
    }, py::arg("f"), py::arg("kind") = "horn", py::arg("stages") = 1, py::arg("nmax") = 2);

    py::class_<Signature>(m, "Signature")
        .def(py::init([](const std::string& text) { return parse_signature(text); }))
        .def_static("from_list", &Signature::from_list)
        .def("__len__", &Signature::size)
        .def("__str__", [](const Signature& s) { return to_string(s); });
    m.def("enumerate_wterms", [](const Signature& sig, std::size_t depth) {
        std::vector<std::string> out;
        for (const auto& t : enumerate_wterms(sig, depth)) out.push_back(to_string(sig, t));
        return out;
    }, py::arg("sig"), py::arg("depth"));
    m.def("iterate_sizes", [](const Signature& sig, std::size_t n) {
        std::vector<std::size_t> out;
        for (const auto& s : poly_iterate(sig, n).stages) out.push_back(s.size());
        return out;
    }, py::arg("sig"), py::arg("n"), "|P^i(0)| for i = 0..n.");
    m.def("encode_term", [](const Signature& sig, const std::string& term) { return encode(sig, parse_wterm(sig, term)); });
    m.def("decode_term", [](const Signature& sig, const HFSet& code) { return to_string(sig, decode(sig, code)); });
    m.def("term_sequence", [](const Signature& sig, const std::string& term) {
        return seq_names(sig, seq_encode(parse_wterm(sig, term)));
    });

    m.def("run", [](const std::vector<std::string>& args) {
        std::ostringstream out;
        std::ostringstream err;
        const int code = cli::run(args, out, err);
        return py::make_tuple(code, out.str(), err.str());
    }, "Run a command-line verb in process; returns (exit code, stdout, stderr).");
}
