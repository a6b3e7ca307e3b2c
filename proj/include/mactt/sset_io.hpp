#pragma once

// Line-oriented `.sset` documents.
//
//   dim 3                      # `#` starts a comment unless it begins an ordinal id
//   sset X                     # optional; lines before any block form one set
//   simplex <id> <n>
//   act d_i@n <id> -> <id>     # also s_i@n; @n is the dimension acted on
//   map f X Y
//   send <id> -> <id>
//
// Ids are HF literals without whitespace. Action tables must be complete;
// whether they satisfy the simplicial identities is checked separately.

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mactt/sset.hpp"

namespace mactt {

struct NamedSset {
    std::string name;
    SimplicialSet set;
    std::size_t line = 0;
};

struct NamedMap {
    std::string name;
    std::string source;
    std::string target;
    std::vector<SimplexIndex> carrier;
    /// Present when the carrier is a simplicial map.
    std::optional<SimplicialMap> map;
    std::optional<std::string> violation;
    std::size_t line = 0;
};

struct SsetDocument {
    int d = 0;
    std::vector<NamedSset> sets;
    std::vector<NamedMap> maps;

    const NamedSset* find_set(std::string_view name) const;
    const NamedMap* find_map(std::string_view name) const;
};

SsetDocument parse_sset_document(std::string_view text);
std::string write_sset_document(const SsetDocument& doc);

/// Block for one set (no `dim` header); `name` may be empty.
std::string write_sset_block(const SimplicialSet& x, const std::string& name);
/// Full document holding a single set.
std::string write_sset(const SimplicialSet& x);
/// The first set of a document.
SimplicialSet parse_sset(std::string_view text);

}  // namespace mactt
