#ifndef CLUBFORGE_LINSET_HPP
#define CLUBFORGE_LINSET_HPP

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "clubforge/fqlinalg.hpp"

namespace clubforge {

/// Point of PG(k-1, q^m), stored as the unique representative whose first
/// nonzero coordinate is 1.
struct ProjectivePoint {
    std::vector<felem> rep;
    bool operator==(const ProjectivePoint& o) const { return rep == o.rep; }
    bool operator<(const ProjectivePoint& o) const { return rep < o.rep; }
};

ProjectivePoint make_point(const FieldTower& tw, std::vector<felem> v);

/// An F_q-subspace of F_{q^m}^k, held in canonical form: basis vectors are
/// the unflattened rows of the canonical RREF of the flattened span.
class SubspaceU {
  public:
    /// Checks F_q-independence of the given vectors (DependentBasis).
    SubspaceU(std::shared_ptr<const FieldTower> tower, int k,
              const std::vector<std::vector<felem>>& basis);

    /// Span of possibly dependent vectors; silently reduces.
    static SubspaceU span(std::shared_ptr<const FieldTower> tower, int k,
                          const std::vector<std::vector<felem>>& vectors);

    /// Adopts rows already in canonical RREF over the companion field.
    static SubspaceU from_canonical_flat(std::shared_ptr<const FieldTower> tower, int k,
                                         Matrix flat);

    const FieldTower& tower() const { return *tower_; }
    const std::shared_ptr<const FieldTower>& tower_ptr() const { return tower_; }
    int k() const { return k_; }
    int rank() const { return static_cast<int>(flat_.rows); }
    const Matrix& flat() const { return flat_; }
    const std::vector<std::vector<felem>>& basis() const { return basis_; }

    bool operator==(const SubspaceU& o) const { return k_ == o.k_ && flat_ == o.flat_; }

  private:
    SubspaceU() = default;
    std::shared_ptr<const FieldTower> tower_;
    int k_ = 0;
    Matrix flat_;  // canonical RREF over fq, rank x (m*k)
    std::vector<std::vector<felem>> basis_;
};

struct LinearSetReport {
    enum class Kind { Scattered, Club, Other };

    int rank = 0;
    std::uint64_t size = 0;
    std::map<int, std::uint64_t> census;  // weight >= 1 -> number of points
    Kind kind = Kind::Scattered;
    int club_index = 0;  // i when kind == Club
    std::optional<ProjectivePoint> special_point;
    std::optional<std::map<int, std::uint64_t>> hyperplane_spectrum;
    std::string strategy;

    std::string classification_string() const;
};

enum class AnalyzeStrategy { Auto, Vectors, Points };

struct AnalyzeOptions {
    bool with_hyperplanes = false;
    AnalyzeStrategy strategy = AnalyzeStrategy::Auto;
    std::uint64_t budget = 10'000'000;
    int jobs = 0;
};

/// Weight of a point: dim_{F_q} {λ in F_{q^m} : λ·rep in U}.
int point_weight(const SubspaceU& U, const ProjectivePoint& P);

/// Weight of the projective subspace spanned by the F_{q^m}-independent
/// rows of W: dim_{F_q}(U ∩ W).
int subspace_weight(const SubspaceU& U, const std::vector<std::vector<felem>>& W);

/// Full point-weight census with classification; strategy Auto picks the
/// cheaper of vector enumeration (q^n vectors) and point enumeration.
LinearSetReport analyze(const SubspaceU& U, const AnalyzeOptions& opts = {});

/// Hyperplane weight multiset {w_{L_U}(H)} over all hyperplanes.
std::map<int, std::uint64_t> hyperplane_weights(const SubspaceU& U,
                                                std::uint64_t budget = 10'000'000, int jobs = 0);

/// Trace duality: U^{⊥'} = {v : Tr_{q^m/q}(u·v) = 0 for all u in U}.
SubspaceU dual_perp(const SubspaceU& U);

/// Orthogonal complement of U inside the F_{q^m}-subspace W (rows of W an
/// F_{q^m}-basis), with respect to the restricted trace form. Requires
/// U ⊆ W and a nondegenerate restriction.
SubspaceU restricted_dual(const SubspaceU& U, const std::vector<std::vector<felem>>& W);

/// True iff the F_{q^m}-span of U is all of F_{q^m}^k.
bool spans_full_space(const SubspaceU& U);

/// Checks Σ N_i = |L_U| and Σ N_i (q^{i-1}+...+1) = q^{n-1}+...+1.
bool verify_weight_identities(const LinearSetReport& report, std::uint64_t q, int n,
                              std::string* diagnostic = nullptr);

/// Structural consequences of being an (m-1)-club of the maximum rank
/// m(k+1)/2 - 1: the dual carries a unique hyperplane of weight
/// m + m(k-3)/2 and splits off any of its points outside that hyperplane;
/// the dual is scattered; and the club itself is a cone, i.e. splits as
/// (U ∩ W) ⊕ (U ∩ <P>) for a weight-m(k-1)/2 hyperplane W avoiding the
/// heavy point P.
struct M1ClubDecomposition {
    bool ok = false;
    std::map<int, std::uint64_t> dual_hyperplane_spectrum;
    std::vector<std::string> problems;
};
M1ClubDecomposition m1club_maximum_decomposition_check(const SubspaceU& U,
                                                       std::uint64_t budget = 10'000'000,
                                                       int jobs = 0);

/// Number of points of PG(k-1, q^m); BudgetExceeded if above the cap.
std::uint64_t projective_point_count(const Field& big, int k, std::uint64_t budget);

/// Decode the index-th point of the deterministic point order.
std::vector<felem> projective_point_at(const Field& big, int k, std::uint64_t index);

}  // namespace clubforge

#endif
