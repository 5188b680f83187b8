#ifndef CLUBFORGE_CONSTRUCTIONS_HPP
#define CLUBFORGE_CONSTRUCTIONS_HPP

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "clubforge/rmcode.hpp"

namespace clubforge {

enum class SChoiceMode { TraceKernelExtension, ExplicitBasis, SeededRandom };

/// Recipe for an F_q-subspace S of F_{q^m} of dimension i.
struct SubspaceChoiceS {
    SChoiceMode mode = SChoiceMode::TraceKernelExtension;
    int dim = 1;
    std::vector<felem> basis;   // ExplicitBasis
    std::uint64_t seed = 0;     // SeededRandom
};

/// Deterministic S builder; returns a k=1 subspace of F_{q^m}.
/// TraceKernelExtension greedily extends the anchor 1 by trace-kernel
/// elements in ascending encoding order (then arbitrary elements, for
/// i = m when 1 spans the trace image already).
SubspaceU make_S(const std::shared_ptr<const FieldTower>& tower, const SubspaceChoiceS& choice);

/// Machine-readable self-check emitted by every generator: the claimed
/// profile of the construction next to the measured one.
struct SelfCheckReport {
    std::string name;
    std::map<std::string, std::string> params;

    int claimed_rank = 0;
    std::string claimed_classification;
    std::optional<std::vector<felem>> claimed_special_point;

    LinearSetReport measured;
    bool spans_ambient = false;

    std::optional<std::set<int>> spectrum_allowed;     // claimed superset
    std::optional<int> spectrum_must_contain;

    std::optional<std::vector<int>> expected_code_weights;  // exact set
    std::optional<std::vector<int>> measured_code_weights;
    bool code_on_dual = false;

    std::vector<std::string> notes;
    bool ok = false;
};

struct Construction {
    SubspaceU U;
    SelfCheckReport report;
};

struct ConstructOptions {
    bool with_spectrum = false;
    std::uint64_t budget = 10'000'000;
    int jobs = 0;
};

/// U = {(x, Tr_{q^m/q}(x))}: an (m-1)-club of rank m on the projective line.
Construction trace_club(const std::shared_ptr<const FieldTower>& tower,
                        const ConstructOptions& opts = {});

/// U = {(x, Tr_{q^m/q^{n0}}(x^{q^s}))} with m = l*n0, gcd(s, n0) = 1:
/// an n0(l-1)-club of rank m.
Construction subfield_trace_club(const std::shared_ptr<const FieldTower>& tower, int n0, int s,
                                 const ConstructOptions& opts = {});

/// Direct sum of {(x, x^q)} blocks: a maximum scattered subspace of
/// F_{q^m}^kprime of rank kprime*m/2. kprime must be even.
SubspaceU builtin_max_scattered(const std::shared_ptr<const FieldTower>& tower, int kprime);

/// Cone over a maximum scattered part in the hyperplane X_{k-1} = 0 with an
/// i-dimensional vertex space on e_{k-1}: an i-club of rank m(k-1)/2 + i.
/// scattered_part lives in ambient k-1 and is re-verified.
Construction cone(const std::shared_ptr<const FieldTower>& tower, int k,
                  const SubspaceU& scattered_part, const SubspaceU& S,
                  const ConstructOptions& opts = {});

/// Cone with the built-in scattered part and the default S of dimension i.
Construction cone_default(const std::shared_ptr<const FieldTower>& tower, int k, int i,
                          const ConstructOptions& opts = {});

/// U = {(x1+z, x1^q, x1^{q^2}, x2, x2^q, ..., xs, xs^q) : z in S} for odd
/// k = 2s+1: an i-club of rank m(k-1)/2 + i spanning the ambient space.
Construction lift_odd(const std::shared_ptr<const FieldTower>& tower, int k, const SubspaceU& S,
                      const ConstructOptions& opts = {});

/// k even >= 6, m even: {(x+z, x^q, x^{q^2})} plus a user-supplied maximum
/// scattered part in coordinates 3..k-1 (ambient k-3).
Construction lift_even(const std::shared_ptr<const FieldTower>& tower, int k, const SubspaceU& S,
                       const SubspaceU& scattered_part, const ConstructOptions& opts = {});

/// U = {(x, Tr_{q^m/q^{m/2}}(x^{q^s}), y, y^q)} for even m >= 4: an
/// (m/2)-club of rank 2m in PG(3, q^m) containing a line of weight m.
/// The q^s twist (gcd(s, m/2) = 1) matters: the untwisted map
/// x -> Tr_{q^m/q^{m/2}}(x) is F_{q^{m/2}}-linear, so its graph has q^{m/2}+1
/// points of weight m/2 and the club profile fails.
Construction half_club_k4(const std::shared_ptr<const FieldTower>& tower, int s = 1,
                          const ConstructOptions& opts = {});

enum class ZooName { TwistedGabidulin, RedeiScattered, PseudoregulusLines, ComplementaryWeights };

struct ZooParams {
    int k = 3;   // PseudoregulusLines: multiple of 3; ComplementaryWeights: >= 2
    int s = 1;
    std::optional<felem> delta;  // TwistedGabidulin / RedeiScattered
    std::optional<felem> xi;     // ComplementaryWeights
    std::vector<felem> mus;      // ComplementaryWeights; empty -> deterministic scan
};

/// Three-weight code systems. Norm side conditions are validated by direct
/// computation (ConditionViolated names the failing one); unset parameters
/// are found by a deterministic ascending-encoding scan. The self-check
/// builds the associated code (of the dual for ComplementaryWeights) and
/// compares its nonzero weights with the expected three-weight profile.
Construction three_weight_system(const std::shared_ptr<const FieldTower>& tower, ZooName name,
                                 const ZooParams& params = {}, const ConstructOptions& opts = {});

const char* zoo_name_string(ZooName name);

}  // namespace clubforge

#endif
