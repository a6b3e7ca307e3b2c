#include "mactt/sset_io.hpp"

#include <charconv>
#include <map>
#include <unordered_map>

#include "mactt/error.hpp"

namespace mactt {

const NamedSset* SsetDocument::find_set(std::string_view name) const {
    for (const auto& s : sets) {
        if (s.name == name) return &s;
    }
    return nullptr;
}

const NamedMap* SsetDocument::find_map(std::string_view name) const {
    for (const auto& m : maps) {
        if (m.name == name) return &m;
    }
    return nullptr;
}

namespace {

struct Token {
    std::string_view text;
    std::size_t column;
};

std::vector<Token> split(std::string_view line) {
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
        if (i >= line.size()) break;
        // '#' opens a comment unless it is an ordinal literal such as #3
        if (line[i] == '#' && !(i + 1 < line.size() && std::isdigit(static_cast<unsigned char>(line[i + 1])))) break;
        std::size_t start = i;
        while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') ++i;
        out.push_back(Token{line.substr(start, i - start), start + 1});
    }
    return out;
}

int read_number(const Token& t, std::size_t line, const char* what) {
    int v = 0;
    auto [ptr, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), v);
    if (ec != std::errc() || ptr != t.text.data() + t.text.size() || v < 0) {
        throw ParseError(line, t.column, std::string("expected ") + what);
    }
    return v;
}

HFSet read_id(const Token& t, std::size_t line) {
    try {
        return parse_hfset(t.text);
    } catch (const ParseError& e) {
        throw ParseError(line, t.column + e.column() - 1, e.message());
    }
}

struct PendingSet {
    std::string name;
    std::size_t line = 0;
    std::vector<HFSet> ids;
    std::vector<int> dims;
    std::vector<std::size_t> id_lines;
    std::unordered_map<HFSet, std::size_t, HFSetHash> handle;
    struct Act {
        char kind;
        int i;
        int n;
        HFSet from;
        HFSet to;
        std::size_t line;
        std::size_t column;
    };
    std::vector<Act> acts;
};

struct PendingMap {
    std::string name, source, target;
    std::size_t line = 0;
    std::vector<std::pair<HFSet, HFSet>> sends;
    std::vector<std::size_t> send_lines;
};

SimplicialSet finish(const PendingSet& p, int d) {
    SimplicialSetBuilder b(d);
    for (std::size_t h = 0; h < p.ids.size(); ++h) b.add_simplex(p.ids[h], p.dims[h]);
    std::map<std::tuple<std::size_t, char, int>, std::size_t> seen;
    for (const auto& a : p.acts) {
        auto from = p.handle.find(a.from);
        if (from == p.handle.end()) throw ParseError(a.line, a.column, "unknown simplex " + to_string(a.from));
        auto to = p.handle.find(a.to);
        if (to == p.handle.end()) throw ParseError(a.line, a.column, "unknown simplex " + to_string(a.to));
        const int dim = p.dims[from->second];
        if (a.n != dim) {
            throw ParseError(a.line, a.column,
                             "simplex " + to_string(a.from) + " has dimension " + std::to_string(dim) + ", not " +
                                 std::to_string(a.n));
        }
        const bool face = a.kind == 'd';
        if (a.i > a.n || (face && a.n == 0) || (!face && a.n >= d)) {
            throw ParseError(a.line, a.column, std::string(1, a.kind) + "_" + std::to_string(a.i) + "@" +
                                                   std::to_string(a.n) + " is not a generator at truncation " +
                                                   std::to_string(d));
        }
        if (!seen.emplace(std::tuple{from->second, a.kind, a.i}, a.line).second) {
            throw ParseError(a.line, a.column, "duplicate action entry");
        }
        if (face) {
            b.set_face(from->second, a.i, to->second);
        } else {
            b.set_degeneracy(from->second, a.i, to->second);
        }
    }
    for (std::size_t h = 0; h < p.ids.size(); ++h) {
        const int n = p.dims[h];
        for (int i = 0; n >= 1 && i <= n; ++i) {
            if (!seen.count({h, 'd', i})) {
                throw ParseError(p.id_lines[h], 1, "missing action entry d_" + std::to_string(i) + "@" +
                                                       std::to_string(n) + " for " + to_string(p.ids[h]));
            }
        }
        for (int i = 0; n < d && i <= n; ++i) {
            if (!seen.count({h, 's', i})) {
                throw ParseError(p.id_lines[h], 1, "missing action entry s_" + std::to_string(i) + "@" +
                                                       std::to_string(n) + " for " + to_string(p.ids[h]));
            }
        }
    }
    return b.build().set;
}

}  // namespace

SsetDocument parse_sset_document(std::string_view text) {
    SsetDocument doc;
    std::optional<int> d;
    std::vector<PendingSet> sets;
    std::vector<PendingMap> maps;
    enum class Block { None, Set, Map } block = Block::None;

    std::size_t line_no = 0;
    std::size_t start = 0;
    while (start < text.size()) {
        std::size_t end = text.find('\n', start);
        if (end == std::string_view::npos) end = text.size();
        std::string_view line = text.substr(start, end - start);
        start = end + 1;
        ++line_no;
        auto tok = split(line);
        if (tok.empty()) continue;
        const std::string_view kw = tok[0].text;
        auto need = [&](std::size_t count, const char* shape) {
            if (tok.size() != count) throw ParseError(line_no, tok[0].column, std::string("expected '") + shape + "'");
        };
        if (!d) {
            if (kw != "dim") throw ParseError(line_no, tok[0].column, "expected 'dim <d>' header");
            need(2, "dim <d>");
            d = read_number(tok[1], line_no, "a truncation");
            if (*d > 64) throw ParseError(line_no, tok[1].column, "truncation too large");
            continue;
        }
        if (kw == "dim") throw ParseError(line_no, tok[0].column, "duplicate 'dim' header");
        if (kw == "sset") {
            need(2, "sset <name>");
            for (const auto& s : sets) {
                if (s.name == tok[1].text) throw ParseError(line_no, tok[1].column, "duplicate set name");
            }
            sets.push_back(PendingSet{std::string(tok[1].text), line_no, {}, {}, {}, {}, {}});
            block = Block::Set;
            continue;
        }
        if (kw == "map") {
            need(4, "map <name> <source> <target>");
            for (const auto& m : maps) {
                if (m.name == tok[1].text) throw ParseError(line_no, tok[1].column, "duplicate map name");
            }
            maps.push_back(PendingMap{std::string(tok[1].text), std::string(tok[2].text), std::string(tok[3].text),
                                      line_no, {}, {}});
            block = Block::Map;
            continue;
        }
        if (kw == "simplex" || kw == "act") {
            if (block == Block::Map) throw ParseError(line_no, tok[0].column, "simplex data inside a map block");
            if (block == Block::None) {
                sets.push_back(PendingSet{"", line_no, {}, {}, {}, {}, {}});
                block = Block::Set;
            }
            PendingSet& cur = sets.back();
            if (kw == "simplex") {
                need(3, "simplex <id> <n>");
                HFSet id = read_id(tok[1], line_no);
                int n = read_number(tok[2], line_no, "a dimension");
                if (n > *d) throw ParseError(line_no, tok[2].column, "dimension exceeds the truncation");
                if (!cur.handle.emplace(id, cur.ids.size()).second) {
                    throw ParseError(line_no, tok[1].column, "duplicate simplex " + to_string(id));
                }
                cur.ids.push_back(std::move(id));
                cur.dims.push_back(n);
                cur.id_lines.push_back(line_no);
            } else {
                need(5, "act <gen> <id> -> <id>");
                std::string_view g = tok[1].text;
                auto at = g.find('@');
                if (g.size() < 5 || (g[0] != 'd' && g[0] != 's') || g[1] != '_' || at == std::string_view::npos) {
                    throw ParseError(line_no, tok[1].column, "expected a generator d_i@n or s_i@n");
                }
                Token ti{g.substr(2, at - 2), tok[1].column + 2};
                Token tn{g.substr(at + 1), tok[1].column + at + 1};
                int i = read_number(ti, line_no, "a generator index");
                int n = read_number(tn, line_no, "a dimension");
                if (tok[3].text != "->") throw ParseError(line_no, tok[3].column, "expected '->'");
                cur.acts.push_back(PendingSet::Act{g[0], i, n, read_id(tok[2], line_no), read_id(tok[4], line_no),
                                                   line_no, tok[1].column});
            }
            continue;
        }
        if (kw == "send") {
            if (block != Block::Map) throw ParseError(line_no, tok[0].column, "'send' outside a map block");
            need(4, "send <id> -> <id>");
            if (tok[2].text != "->") throw ParseError(line_no, tok[2].column, "expected '->'");
            maps.back().sends.emplace_back(read_id(tok[1], line_no), read_id(tok[3], line_no));
            maps.back().send_lines.push_back(line_no);
            continue;
        }
        throw ParseError(line_no, tok[0].column, "unknown directive '" + std::string(kw) + "'");
    }
    if (!d) throw ParseError(line_no == 0 ? 1 : line_no, 1, "missing 'dim <d>' header");
    doc.d = *d;
    for (const auto& p : sets) doc.sets.push_back(NamedSset{p.name, finish(p, *d), p.line});
    for (const auto& pm : maps) {
        const NamedSset* src = doc.find_set(pm.source);
        const NamedSset* tgt = doc.find_set(pm.target);
        if (!src) throw ParseError(pm.line, 1, "unknown set '" + pm.source + "'");
        if (!tgt) throw ParseError(pm.line, 1, "unknown set '" + pm.target + "'");
        NamedMap m{pm.name, pm.source, pm.target, {}, std::nullopt, std::nullopt, pm.line};
        const SimplexIndex unset = static_cast<SimplexIndex>(-1);
        m.carrier.assign(src->set.size(), unset);
        for (std::size_t k = 0; k < pm.sends.size(); ++k) {
            auto a = src->set.find(pm.sends[k].first);
            auto b = tgt->set.find(pm.sends[k].second);
            if (!a) throw ParseError(pm.send_lines[k], 1, "unknown source simplex " + to_string(pm.sends[k].first));
            if (!b) throw ParseError(pm.send_lines[k], 1, "unknown target simplex " + to_string(pm.sends[k].second));
            if (m.carrier[*a] != unset) throw ParseError(pm.send_lines[k], 1, "duplicate 'send' entry");
            m.carrier[*a] = *b;
        }
        for (SimplexIndex a = 0; a < m.carrier.size(); ++a) {
            if (m.carrier[a] == unset) {
                throw ParseError(pm.line, 1, "map '" + pm.name + "' has no value for " + to_string(src->set.id(a)));
            }
        }
        // Naturality is only meaningful on well-formed tables.
        if (!validate_presheaf(src->set).empty() || !validate_presheaf(tgt->set).empty()) {
            m.violation = "source or target is not a presheaf";
        } else if (auto why = map_violation(src->set, tgt->set, m.carrier)) {
            m.violation = *why;
        } else {
            m.map.emplace(src->set, tgt->set, m.carrier);
        }
        doc.maps.push_back(std::move(m));
    }
    return doc;
}

std::string write_sset_block(const SimplicialSet& x, const std::string& name) {
    std::string out;
    if (!name.empty()) out += "sset " + name + "\n";
    for (SimplexIndex s = 0; s < x.size(); ++s) {
        out += "simplex " + to_string(x.id(s)) + " " + std::to_string(x.dim(s)) + "\n";
    }
    for (SimplexIndex s = 0; s < x.size(); ++s) {
        const int n = x.dim(s);
        const std::string at = "@" + std::to_string(n) + " " + to_string(x.id(s)) + " -> ";
        for (int i = 0; n >= 1 && i <= n; ++i) {
            out += "act d_" + std::to_string(i) + at + to_string(x.id(x.face(s, i))) + "\n";
        }
        for (int i = 0; n < x.truncation() && i <= n; ++i) {
            out += "act s_" + std::to_string(i) + at + to_string(x.id(x.degeneracy(s, i))) + "\n";
        }
    }
    return out;
}

std::string write_sset_document(const SsetDocument& doc) {
    std::string out = "dim " + std::to_string(doc.d) + "\n";
    for (const auto& s : doc.sets) out += write_sset_block(s.set, s.name);
    for (const auto& m : doc.maps) {
        const NamedSset* src = doc.find_set(m.source);
        const NamedSset* tgt = doc.find_set(m.target);
        out += "map " + m.name + " " + m.source + " " + m.target + "\n";
        for (SimplexIndex a = 0; a < m.carrier.size(); ++a) {
            out += "send " + to_string(src->set.id(a)) + " -> " + to_string(tgt->set.id(m.carrier[a])) + "\n";
        }
    }
    return out;
}

std::string write_sset(const SimplicialSet& x) {
    return "dim " + std::to_string(x.truncation()) + "\n" + write_sset_block(x, "");
}

SimplicialSet parse_sset(std::string_view text) {
    SsetDocument doc = parse_sset_document(text);
    if (doc.sets.empty()) return SimplicialSet(doc.d);
    return doc.sets.front().set;
}

}  // namespace mactt
