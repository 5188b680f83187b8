#ifndef CLUBFORGE_RMCODE_HPP
#define CLUBFORGE_RMCODE_HPP

#include <gmpxx.h>

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "clubforge/linset.hpp"

namespace clubforge {

/// F_{q^m}-linear rank-metric code in the vector framework, given by a
/// generator matrix G (k rows of length n over F_{q^m}). k == 0 is the
/// zero code.
class RankMetricCode {
  public:
    RankMetricCode(std::shared_ptr<const FieldTower> tower, std::vector<std::vector<felem>> G);

    const FieldTower& tower() const { return *tower_; }
    const std::shared_ptr<const FieldTower>& tower_ptr() const { return tower_; }
    int n() const { return n_; }
    int k() const { return k_; }
    const std::vector<std::vector<felem>>& G() const { return G_; }

  private:
    std::shared_ptr<const FieldTower> tower_;
    int n_ = 0, k_ = 0;
    std::vector<std::vector<felem>> G_;
};

/// Rank weight distribution (A_0 .. A_m), exact integers.
struct WeightDistribution {
    std::vector<mpz_class> counts;

    explicit WeightDistribution(int m = 0) : counts(static_cast<std::size_t>(m) + 1, 0) {}
    int m() const { return static_cast<int>(counts.size()) - 1; }
    mpz_class total() const;
    std::vector<int> nonzero_weights() const;  // excludes index 0
    bool operator==(const WeightDistribution& o) const { return counts == o.counts; }
};

/// Code associated with a system: columns of G are the canonical F_q-basis
/// of U. Requires ⟨U⟩_{F_{q^m}} = F_{q^m}^k (DegenerateSystem).
RankMetricCode from_system(const SubspaceU& U);

/// F_q-span of the columns of G, as a subspace of F_{q^m}^k.
SubspaceU system_of(const RankMetricCode& C);

/// dim_{F_q} of the span of the coordinates.
int codeword_weight(const FieldTower& tw, std::span<const felem> c);

enum class WeightMethod { Enumerate, Geometric };

/// Enumerate walks all q^{mk} codewords; Geometric converts the hyperplane
/// weights of the associated system through w(xG) = n - dim(U ∩ x^⊥).
WeightDistribution weight_distribution(const RankMetricCode& C, WeightMethod method,
                                       std::uint64_t budget = 10'000'000, int jobs = 0);

int min_distance(const WeightDistribution& dist);
bool singleton_bound_holds(int m, int n, int k, int d);
bool is_mrd(const RankMetricCode& C, const WeightDistribution& dist);

/// Right kernel of G: the [n, n-k] dual code.
RankMetricCode dual_code(const RankMetricCode& C);

/// q-binomial coefficient, exact.
mpz_class qbinomial(long s, long t, const mpz_class& q);

/// Solves the MacWilliams identities for the dual distribution B_0..B_m of
/// an [N, k] code with distribution A. Exact rationals internally;
/// NonIntegerSolution / NegativeCoefficient if A is not a genuine rank
/// distribution for these parameters.
WeightDistribution macwilliams_transform(const WeightDistribution& A, int N, int k, int m,
                                         const mpz_class& q);

/// Predicted parameters and distribution of a code associated with the dual
/// of an i-club of rank n (club-dual code). A_{m-1} follows the identity
/// A_{m-j} = (q^m - 1) N_j(U) with N_1 = q^{n-1} + ... + q^i. shifted_a_m1
/// is the off-by-one exponent variant (q^n + ... + q^i) that circulates for
/// this count; it fails the total-count check Σ A_j = q^{mk} whenever the
/// two differ, so the derived value is the one used.
struct ClubCodePrediction {
    int length = 0, dim = 0, min_dist = 0;
    WeightDistribution dist;
    mpz_class derived_a_m1, shifted_a_m1;
    bool shifted_formula_differs = false;
};
ClubCodePrediction club_code_prediction(const mpz_class& q, int m, int k, int i, int n);

/// Piecewise upper bound on the rank of an i-club in PG(k-1, q^m).
long club_rank_bound(std::uint64_t q, int m, int k, int i, std::string* case_label = nullptr);

/// Exact value of B_2 for a putative club-dual code (eq of the bound proof).
mpq_class b2_value(std::uint64_t q, int m, int k, int i, int n);

/// Sign condition on B_2 that any existing i-club of rank n must satisfy.
bool b2_admissibility(std::uint64_t q, int m, int k, int i, int n);

struct ThreeWeightClassification {
    enum class Tag { DualOfClub, TwoWeight, ThreeWeightOther, General };
    Tag tag = Tag::General;
    int club_index = 0;           // when DualOfClub
    std::vector<int> weights;     // nonzero weights present
    bool verified = false;        // DualOfClub confirmed by analyze round-trip
    std::string detail;
};

/// Tags a code by its weight profile; a three-weight code with A_m != 0,
/// A_{m-1} != 0 and A_d = q^m - 1 is the dual of an (m-d)-club, verified by
/// analyzing dual_perp of the associated system.
ThreeWeightClassification three_weight_classify(const RankMetricCode& C,
                                                std::uint64_t budget = 10'000'000, int jobs = 0);

}  // namespace clubforge

#endif
