// Writes the example corpus into the given directory.
//
//   make_corpus <dir>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include "mactt/sset_io.hpp"
#include "mactt/wtype.hpp"

namespace {

constexpr int kDim = 3;

void write(const std::filesystem::path& dir, const std::string& name, const std::string& text) {
    std::ofstream out(dir / name, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + (dir / name).string());
    out << text;
}

std::string with_header(const std::string& comment, const std::string& body) { return "# " + comment + "\n" + body; }

mactt::NamedMap named(const std::string& name, const std::string& src, const std::string& tgt,
                      const mactt::SimplicialMap& f) {
    return mactt::NamedMap{name, src, tgt, std::vector<mactt::SimplexIndex>(f.carrier().begin(), f.carrier().end()),
                           f, std::nullopt, 0};
}

std::string map_document(const std::string& xname, const mactt::SimplicialSet& x, const std::string& yname,
                         const mactt::SimplicialSet& y, const std::string& fname, const mactt::SimplicialMap& f) {
    mactt::SsetDocument doc;
    doc.d = x.truncation();
    doc.sets.push_back({xname, x, 0});
    doc.sets.push_back({yname, y, 0});
    doc.maps.push_back(named(fname, xname, yname, f));
    return mactt::write_sset_document(doc);
}

}  // namespace

int main(int argc, char** argv) {
    using namespace mactt;
    if (argc != 2) {
        std::cerr << "usage: make_corpus <dir>\n";
        return 2;
    }
    const std::filesystem::path dir = argv[1];
    std::filesystem::create_directories(dir);

    for (int n = 0; n <= kDim; ++n) {
        write(dir, "delta" + std::to_string(n) + ".sset",
              with_header("standard " + std::to_string(n) + "-simplex", write_sset(representable(n, kDim))));
    }
    for (auto [n, k] : {std::pair{1, 0}, {2, 0}, {2, 1}, {2, 2}}) {
        auto h = cell_subobject(CellKind::horn(n, k), kDim);
        write(dir, "horn" + std::to_string(n) + "_" + std::to_string(k) + ".sset",
              with_header("horn missing face " + std::to_string(k) + " of the " + std::to_string(n) + "-simplex",
                          write_sset(h.cell)));
    }
    for (int n : {1, 2}) {
        auto b = cell_subobject(CellKind::boundary(n), kDim);
        write(dir, "boundary" + std::to_string(n) + ".sset",
              with_header("boundary of the " + std::to_string(n) + "-simplex", write_sset(b.cell)));
    }

    const SimplicialSet point = terminal_sset(kDim);
    const SimplicialSet d1 = representable(1, kDim);
    write(dir, "delta1_to_point.sset",
          with_header("the 1-simplex over a point; not a Kan fibration",
                      map_document("X", d1, "Y", point, "f", to_terminal(d1))));

    auto two = coproduct_sset(point, point).object;
    write(dir, "two_points_to_point.sset",
          with_header("two points over a point; a fibration but not an acyclic one",
                      map_document("X", two, "Y", point, "f", to_terminal(two))));

    auto horn = cell_subobject(CellKind::horn(2, 1), kDim).cell;
    write(dir, "horn2_1_to_point.sset",
          with_header("inner horn over a point", map_document("X", horn, "Y", point, "f", to_terminal(horn))));

    write(dir, "identity_delta1.sset",
          with_header("identity on the 1-simplex", map_document("X", d1, "Y", d1, "id", SimplicialMap::identity(d1))));

    write(dir, "nat.sig", "# natural numbers: zero and successor\n" + to_string(Signature::from_list({{"z", 0}, {"s", 1}})));
    write(dir, "bintree.sig",
          "# binary trees: one leaf and one binary node\n" + to_string(Signature::from_list({{"leaf", 0}, {"node", 2}})));

    // Functions in the <domain,<graph,codomain>> literal form.
    auto fn = [](const FinFunction& f) { return to_string(f) + "\n"; };
    const HFSet one = HFSet::ordinal(1);
    write(dir, "const2.fn", fn(FinFunction(HFSet::ordinal(2), one, {HFSet(), HFSet()})));
    write(dir, "id1.fn", fn(FinFunction::identity(one)));
    // fibers of sizes 2 and 1 over {0,1}
    write(dir, "fibers21.fn",
          fn(FinFunction(HFSet::ordinal(3), HFSet::ordinal(2), {HFSet::ordinal(0), HFSet::ordinal(0), HFSet::ordinal(1)})));
    write(dir, "collapse2.fn", fn(FinFunction(HFSet::ordinal(2), one, {HFSet(), HFSet()})));
    return 0;
}
