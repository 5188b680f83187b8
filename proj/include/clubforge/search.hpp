#ifndef CLUBFORGE_SEARCH_HPP
#define CLUBFORGE_SEARCH_HPP

#include <gmpxx.h>

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "clubforge/linset.hpp"

namespace clubforge {

struct SearchTarget {
    enum class Kind { AnyClub, Club, Scattered, Census };
    Kind kind = Kind::Census;
    int club_index = 0;  // Kind::Club
};

struct SearchSpec {
    std::shared_ptr<const FieldTower> tower;
    int k = 2;
    int n = 1;  // target rank
    SearchTarget target;
    /// When set, enumeration is restricted to subspaces containing
    /// S·e_0 (the anchor at the point <e_0>); S is a subspace of F_{q^m}.
    std::optional<SubspaceU> anchor_S;
    std::uint64_t budget = 10'000'000;
    int jobs = 0;
    std::size_t hit_cap = 1000;
    AnalyzeStrategy analyze_strategy = AnalyzeStrategy::Auto;
};

struct SearchHit {
    std::vector<std::vector<felem>> basis;
    LinearSetReport report;
};

struct SearchResult {
    mpz_class expected_count;  // q-binomial of the enumerated space
    std::uint64_t scanned = 0;
    std::map<std::string, std::uint64_t> census;  // classification string -> count
    std::vector<SearchHit> hits;
    bool hits_truncated = false;
    double wall_seconds = 0.0;
};

/// Visits every n-dimensional subspace of F_q^{ambient} exactly once, as a
/// canonical RREF matrix plus pivot columns, in deterministic order (pivot
/// profiles lexicographically, then free entries by ascending odometer).
/// Returns the visit count.
std::uint64_t enumerate_subspaces(
    const Field& fq, int ambient, int n,
    const std::function<void(const Matrix&, const std::vector<std::size_t>&)>& visit);

/// Classification census over the enumerated subspaces, optionally anchored.
/// Parallel over pivot profiles; censuses and hit lists are merged in
/// profile order, so results are independent of the job count.
SearchResult run_search(const SearchSpec& spec);

struct SpectrumComparison {
    bool distinguished = false;
    std::string witness;
};

/// Compares the two ΓL-invariants (point census, hyperplane spectrum);
/// a difference proves inequivalence, agreement proves nothing.
SpectrumComparison spectrum_compare(const SubspaceU& U1, const SubspaceU& U2,
                                    std::uint64_t budget = 10'000'000, int jobs = 0);

}  // namespace clubforge

#endif
