#pragma once

// The simplex category, truncated: objects [n] = {0,...,n} for n <= d and
// monotone maps between them.

#include <compare>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "mactt/config.hpp"
#include "mactt/fin_function.hpp"

namespace mactt {

/// Monotone map [source] -> [target] stored as its value sequence.
class DeltaMap {
public:
    DeltaMap(int source, int target, std::vector<int> values);

    static DeltaMap identity(int n);
    /// Coface delta_i : [n-1] -> [n], skips i.
    static DeltaMap face(int n, int i);
    /// Codegeneracy sigma_i : [n+1] -> [n], hits i twice.
    static DeltaMap degeneracy(int n, int i);
    static DeltaMap constant(int source, int target, int value);

    int source() const noexcept { return source_; }
    int target() const noexcept { return target_; }
    std::span<const int> values() const noexcept { return values_; }
    int operator()(int i) const { return values_.at(static_cast<std::size_t>(i)); }

    bool is_identity() const;
    bool is_injective() const;
    bool is_surjective() const;

    /// Graph as a FinFunction between the ordinals source+1 and target+1.
    FinFunction to_fin_function() const;

    friend bool operator==(const DeltaMap&, const DeltaMap&) = default;
    friend std::strong_ordering operator<=>(const DeltaMap&, const DeltaMap&) = default;

private:
    int source_;
    int target_;
    std::vector<int> values_;
};

/// All monotone maps [n] -> [m], lexicographic in their value sequences.
std::vector<DeltaMap> delta_hom(int n, int m, int d = default_truncation());

/// g after f.
DeltaMap delta_compose(const DeltaMap& g, const DeltaMap& f);

struct DeltaGenerators {
    std::vector<DeltaMap> faces;         // [n-1] -> [n], delta_0..delta_n
    std::vector<DeltaMap> degeneracies;  // [n+1] -> [n], sigma_0..sigma_n
};

/// Faces into [n] (empty when n = 0) and degeneracies out of [n+1] (empty
/// when n = d).
DeltaGenerators delta_generators(int n, int d = default_truncation());

/// Unique factorization f = delta_{i_1} ... delta_{i_s} sigma_{j_1} ... sigma_{j_t}
/// with i_1 > ... > i_s and j_1 < ... < j_t.
struct GeneratorWord {
    std::vector<int> face_indices;        // i_1, ..., i_s
    std::vector<int> degeneracy_indices;  // j_1, ..., j_t
};
GeneratorWord normal_form(const DeltaMap& f);
/// Recomposes a normal form into a map with the given source.
DeltaMap from_normal_form(const GeneratorWord& word, int source);

/// Split f = mono after epi through its image.
std::pair<DeltaMap, DeltaMap> epi_mono(const DeltaMap& f);

/// `n->m:[v0,...,vn]`.
std::string to_string(const DeltaMap& f);
DeltaMap parse_delta_map(std::string_view text);

std::size_t binomial(std::size_t n, std::size_t k);

}  // namespace mactt
