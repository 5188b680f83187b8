#include "clubforge/constructions.hpp"

#include <algorithm>
#include <numeric>
#include <random>

namespace clubforge {

namespace {

std::string classification_claim(int i) {
    return i >= 2 ? "club(" + std::to_string(i) + ")" : "scattered";
}

// Shared tail of every generator: measure, compare with the claim, and
// optionally check the hyperplane spectrum and associated code weights.
void run_self_check(Construction& c, const ConstructOptions& opts) {
    SelfCheckReport& rep = c.report;
    AnalyzeOptions aopts;
    aopts.budget = opts.budget;
    aopts.jobs = opts.jobs;
    aopts.with_hyperplanes = opts.with_spectrum;
    rep.measured = analyze(c.U, aopts);
    rep.spans_ambient = spans_full_space(c.U);

    bool ok = rep.measured.rank == rep.claimed_rank &&
              rep.measured.classification_string() == rep.claimed_classification;
    if (rep.claimed_special_point) {
        ok = ok && rep.measured.special_point &&
             rep.measured.special_point->rep == *rep.claimed_special_point;
    }
    if (opts.with_spectrum && rep.spectrum_allowed) {
        for (auto& [w, cnt] : *rep.measured.hyperplane_spectrum)
            if (!rep.spectrum_allowed->count(w)) {
                ok = false;
                rep.notes.push_back("hyperplane weight " + std::to_string(w) +
                                    " outside the claimed set");
            }
        if (rep.spectrum_must_contain &&
            !rep.measured.hyperplane_spectrum->count(*rep.spectrum_must_contain)) {
            ok = false;
            rep.notes.push_back("claimed hyperplane weight " +
                                std::to_string(*rep.spectrum_must_contain) + " not attained");
        }
    }
    if (rep.expected_code_weights) {
        SubspaceU sys = rep.code_on_dual ? dual_perp(c.U) : c.U;
        RankMetricCode code = from_system(sys);
        mpz_class total;
        mpz_ui_pow_ui(total.get_mpz_t(), static_cast<unsigned long>(c.U.tower().big().size()),
                      static_cast<unsigned long>(code.k()));
        WeightMethod method = total <= mpz_class(static_cast<unsigned long>(opts.budget))
                                  ? WeightMethod::Enumerate
                                  : WeightMethod::Geometric;
        WeightDistribution dist = weight_distribution(code, method, opts.budget, opts.jobs);
        rep.measured_code_weights = dist.nonzero_weights();
        if (*rep.measured_code_weights != *rep.expected_code_weights) {
            ok = false;
            rep.notes.push_back("code weight set differs from the expected profile");
        }
    }
    rep.ok = ok;
}

std::vector<felem> unit_vector(int k, int pos) {
    std::vector<felem> v(static_cast<std::size_t>(k), 0);
    v[static_cast<std::size_t>(pos)] = 1;
    return v;
}

// Greedy independent extension over the flattened m-dimensional coordinates.
class SpanBuilder {
  public:
    SpanBuilder(const FieldTower& tw, int target) : tw_(tw), target_(target), rows_(tw.fq(), 0, 0) {
        rows_ = Matrix(tw.fq(), 0, static_cast<std::size_t>(tw.m()));
    }

    bool try_add(felem a) {
        if (static_cast<int>(picked_.size()) == target_) return false;
        std::vector<felem> co(static_cast<std::size_t>(tw_.m()));
        tw_.fq_coords(a, co.data());
        Matrix st(tw_.fq(), rows_.rows + 1, rows_.cols);
        std::copy(rows_.a.begin(), rows_.a.end(), st.a.begin());
        std::copy(co.begin(), co.end(), st.a.begin() + static_cast<std::ptrdiff_t>(rows_.a.size()));
        Matrix red = rref(std::move(st));
        if (red.rows != rows_.rows + 1) return false;
        rows_ = std::move(red);
        picked_.push_back(a);
        return true;
    }

    bool full() const { return static_cast<int>(picked_.size()) == target_; }
    const std::vector<felem>& picked() const { return picked_; }

  private:
    const FieldTower& tw_;
    int target_;
    Matrix rows_;
    std::vector<felem> picked_;
};

// All elements of the trace kernel, ascending; switches to kernel basis rows
// when the kernel is too large to enumerate.
std::vector<felem> trace_kernel_candidates(const FieldTower& tw) {
    const int m = tw.m();
    Matrix T(tw.fq(), 1, static_cast<std::size_t>(m));
    for (int j = 0; j < m; ++j)
        T.at(0, static_cast<std::size_t>(j)) = tw.project_fq(tw.rel_trace(tw.x_power(j)));
    Matrix K = kernel(T);
    mpz_class count;
    mpz_ui_pow_ui(count.get_mpz_t(), static_cast<unsigned long>(tw.q()),
                  static_cast<unsigned long>(K.rows));
    std::vector<felem> basis;
    basis.reserve(K.rows);
    for (std::size_t r = 0; r < K.rows; ++r) basis.push_back(tw.from_fq_coords(K.row(r).data()));
    if (count > 1 << 16) return basis;
    std::vector<felem> out;
    out.reserve(static_cast<std::size_t>(count.get_ui()));
    const std::uint64_t q = tw.q();
    std::uint64_t total = count.get_ui();
    for (std::uint64_t idx = 0; idx < total; ++idx) {
        felem acc = 0;
        std::uint64_t v = idx;
        for (felem b : basis) {
            std::uint64_t ci = v % q;
            v /= q;
            if (ci) acc = tw.big().add(acc, tw.big().mul(tw.embed_fq(ci), b));
        }
        out.push_back(acc);
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

SubspaceU make_S(const std::shared_ptr<const FieldTower>& tower, const SubspaceChoiceS& choice) {
    const FieldTower& tw = *tower;
    const int i = choice.dim;
    if (i < 1 || i > tw.m()) fail("ParameterViolation", "S dimension must lie in [1, m]");
    switch (choice.mode) {
        case SChoiceMode::ExplicitBasis: {
            if (static_cast<int>(choice.basis.size()) != i)
                fail("DependentBasis", "explicit S basis has the wrong size");
            std::vector<std::vector<felem>> vecs;
            for (felem b : choice.basis) vecs.push_back({b});
            return SubspaceU(tower, 1, vecs);  // DependentBasis on failure
        }
        case SChoiceMode::SeededRandom: {
            std::mt19937_64 rng(choice.seed);
            SpanBuilder sb(tw, i);
            std::uint64_t guard = 0;
            while (!sb.full()) {
                if (++guard > 200000) fail("InternalError", "seeded S search did not converge");
                felem cand = rng() % tw.big().size();
                if (cand) sb.try_add(cand);
            }
            std::vector<std::vector<felem>> vecs;
            for (felem b : sb.picked()) vecs.push_back({b});
            return SubspaceU(tower, 1, vecs);
        }
        case SChoiceMode::TraceKernelExtension:
            break;
    }
    SpanBuilder sb(tw, i);
    sb.try_add(1);
    if (!sb.full())
        for (felem c : trace_kernel_candidates(tw)) {
            if (c) sb.try_add(c);
            if (sb.full()) break;
        }
    for (felem c = 1; !sb.full() && c < tw.big().size(); ++c) sb.try_add(c);
    std::vector<std::vector<felem>> vecs;
    for (felem b : sb.picked()) vecs.push_back({b});
    return SubspaceU(tower, 1, vecs);
}

Construction trace_club(const std::shared_ptr<const FieldTower>& tower,
                        const ConstructOptions& opts) {
    const FieldTower& tw = *tower;
    const int m = tw.m();
    if (m < 2) fail("ParameterViolation", "trace club needs m >= 2");
    std::vector<std::vector<felem>> basis;
    for (int j = 0; j < m; ++j) {
        felem b = tw.x_power(j);
        basis.push_back({b, tw.rel_trace(b)});
    }
    Construction c{SubspaceU(tower, 2, basis), {}};
    c.report.name = "trace-club";
    c.report.claimed_rank = m;
    c.report.claimed_classification = classification_claim(m - 1);
    c.report.claimed_special_point = std::vector<felem>{1, 0};
    run_self_check(c, opts);
    return c;
}

Construction subfield_trace_club(const std::shared_ptr<const FieldTower>& tower, int n0, int s,
                                 const ConstructOptions& opts) {
    const FieldTower& tw = *tower;
    const int m = tw.m();
    if (n0 < 1 || m % n0 != 0)
        fail("ParameterViolation", "n0 must divide m");
    if (std::gcd(s, n0) != 1)
        fail("ParameterViolation", "gcd(s, n0) must be 1");
    const int ell = m / n0;
    const int i = n0 * (ell - 1);
    std::vector<std::vector<felem>> basis;
    for (int j = 0; j < m; ++j) {
        felem b = tw.x_power(j);
        basis.push_back({b, tw.rel_trace(tw.pow_q(b, s), n0)});
    }
    Construction c{SubspaceU(tower, 2, basis), {}};
    c.report.name = "subfield-trace-club";
    c.report.params["n0"] = std::to_string(n0);
    c.report.params["s"] = std::to_string(s);
    c.report.claimed_rank = m;
    c.report.claimed_classification = i >= 1 ? classification_claim(i) : "scattered";
    if (i >= 2) c.report.claimed_special_point = std::vector<felem>{1, 0};
    run_self_check(c, opts);
    return c;
}

SubspaceU builtin_max_scattered(const std::shared_ptr<const FieldTower>& tower, int kprime) {
    const FieldTower& tw = *tower;
    if (kprime < 2 || kprime % 2 != 0)
        fail("UnsupportedShape",
             "built-in maximum scattered parts exist for even ambient dimension only; "
             "supply one explicitly for k' = " + std::to_string(kprime));
    std::vector<std::vector<felem>> basis;
    for (int blk = 0; blk < kprime / 2; ++blk)
        for (int j = 0; j < tw.m(); ++j) {
            std::vector<felem> v(static_cast<std::size_t>(kprime), 0);
            felem b = tw.x_power(j);
            v[static_cast<std::size_t>(2 * blk)] = b;
            v[static_cast<std::size_t>(2 * blk + 1)] = tw.pow_q(b, 1);
            basis.push_back(std::move(v));
        }
    return SubspaceU(tower, kprime, basis);
}

Construction cone(const std::shared_ptr<const FieldTower>& tower, int k,
                  const SubspaceU& scattered_part, const SubspaceU& S,
                  const ConstructOptions& opts) {
    const FieldTower& tw = *tower;
    const int m = tw.m();
    if (k < 2) fail("ParameterViolation", "cone needs k >= 2");
    if (scattered_part.k() != k - 1)
        fail("DimensionMismatch", "scattered part must live in ambient dimension k-1");
    if (!scattered_part.tower().same(tw) || !S.tower().same(tw))
        fail("AmbientMismatch", "tower mismatch");
    if (S.k() != 1) fail("DimensionMismatch", "S must be a subspace of F_{q^m}");
    if (m * (k - 1) % 2 != 0)
        fail("ParameterViolation", "m(k-1) must be even for a maximum scattered part");
    AnalyzeOptions aopts;
    aopts.budget = opts.budget;
    aopts.jobs = opts.jobs;
    LinearSetReport part = analyze(scattered_part, aopts);
    if (part.kind != LinearSetReport::Kind::Scattered || part.rank != m * (k - 1) / 2)
        fail("NotMaximumScattered",
             "scattered part analyzes as " + part.classification_string() + " of rank " +
                 std::to_string(part.rank) + ", need scattered of rank " +
                 std::to_string(m * (k - 1) / 2));
    const int i = S.rank();
    std::vector<std::vector<felem>> basis;
    for (const auto& v : scattered_part.basis()) {
        std::vector<felem> w(v);
        w.push_back(0);
        basis.push_back(std::move(w));
    }
    for (const auto& sv : S.basis()) {
        std::vector<felem> w(static_cast<std::size_t>(k), 0);
        w[static_cast<std::size_t>(k - 1)] = sv[0];
        basis.push_back(std::move(w));
    }
    Construction c{SubspaceU(tower, k, basis), {}};
    c.report.name = "cone";
    c.report.params["i"] = std::to_string(i);
    c.report.claimed_rank = m * (k - 1) / 2 + i;
    c.report.claimed_classification = classification_claim(i);
    if (i >= 2) c.report.claimed_special_point = unit_vector(k, k - 1);
    std::set<int> allowed{m * (k - 1) / 2};
    for (int w = m * (k - 2) / 2; w <= m * (k - 2) / 2 + i + 1; ++w) allowed.insert(w);
    c.report.spectrum_allowed = allowed;
    c.report.spectrum_must_contain = m * (k - 1) / 2;
    run_self_check(c, opts);
    return c;
}

Construction cone_default(const std::shared_ptr<const FieldTower>& tower, int k, int i,
                          const ConstructOptions& opts) {
    SubspaceU part = builtin_max_scattered(tower, k - 1);
    SubspaceChoiceS sc;
    sc.dim = i;
    return cone(tower, k, part, make_S(tower, sc), opts);
}

Construction lift_odd(const std::shared_ptr<const FieldTower>& tower, int k, const SubspaceU& S,
                      const ConstructOptions& opts) {
    const FieldTower& tw = *tower;
    const int m = tw.m();
    if (k < 3 || k % 2 == 0) fail("ParameterViolation", "lifting needs odd k >= 3");
    if (S.k() != 1 || !S.tower().same(tw)) fail("AmbientMismatch", "S must be a subspace of F_{q^m}");
    const int i = S.rank();
    std::vector<std::vector<felem>> basis;
    for (int j = 0; j < m; ++j) {
        std::vector<felem> v(static_cast<std::size_t>(k), 0);
        felem b = tw.x_power(j);
        v[0] = b;
        v[1] = tw.pow_q(b, 1);
        v[2] = tw.pow_q(b, 2);
        basis.push_back(std::move(v));
    }
    for (const auto& sv : S.basis()) {
        std::vector<felem> v(static_cast<std::size_t>(k), 0);
        v[0] = sv[0];
        basis.push_back(std::move(v));
    }
    for (int blk = 0; blk < (k - 3) / 2; ++blk)
        for (int j = 0; j < m; ++j) {
            std::vector<felem> v(static_cast<std::size_t>(k), 0);
            felem b = tw.x_power(j);
            v[static_cast<std::size_t>(3 + 2 * blk)] = b;
            v[static_cast<std::size_t>(4 + 2 * blk)] = tw.pow_q(b, 1);
            basis.push_back(std::move(v));
        }
    Construction c{SubspaceU(tower, k, basis), {}};
    c.report.name = "lift-odd";
    c.report.params["i"] = std::to_string(i);
    c.report.claimed_rank = m * (k - 1) / 2 + i;
    c.report.claimed_classification = classification_claim(i);
    if (i >= 2) c.report.claimed_special_point = unit_vector(k, 0);
    std::set<int> allowed;
    for (int w = 0; w <= 2; ++w) allowed.insert(m * (k - 3) / 2 + i + w);
    c.report.spectrum_allowed = allowed;
    run_self_check(c, opts);
    if (!c.report.spans_ambient) {
        c.report.ok = false;
        c.report.notes.push_back("lifted subspace does not span the ambient space");
    }
    return c;
}

Construction lift_even(const std::shared_ptr<const FieldTower>& tower, int k, const SubspaceU& S,
                       const SubspaceU& scattered_part, const ConstructOptions& opts) {
    const FieldTower& tw = *tower;
    const int m = tw.m();
    if (k < 6 || k % 2 != 0) fail("ParameterViolation", "even lifting needs even k >= 6");
    if (m % 2 != 0) fail("ParameterViolation", "even lifting needs even m");
    if (S.k() != 1 || !S.tower().same(tw)) fail("AmbientMismatch", "S must be a subspace of F_{q^m}");
    if (scattered_part.k() != k - 3)
        fail("DimensionMismatch", "scattered part must live in ambient dimension k-3");
    AnalyzeOptions aopts;
    aopts.budget = opts.budget;
    aopts.jobs = opts.jobs;
    LinearSetReport part = analyze(scattered_part, aopts);
    if (part.kind != LinearSetReport::Kind::Scattered || part.rank != m * (k - 3) / 2)
        fail("NotMaximumScattered",
             "scattered part analyzes as " + part.classification_string() + " of rank " +
                 std::to_string(part.rank) + ", need scattered of rank " +
                 std::to_string(m * (k - 3) / 2));
    const int i = S.rank();
    std::vector<std::vector<felem>> basis;
    for (int j = 0; j < m; ++j) {
        std::vector<felem> v(static_cast<std::size_t>(k), 0);
        felem b = tw.x_power(j);
        v[0] = b;
        v[1] = tw.pow_q(b, 1);
        v[2] = tw.pow_q(b, 2);
        basis.push_back(std::move(v));
    }
    for (const auto& sv : S.basis()) {
        std::vector<felem> v(static_cast<std::size_t>(k), 0);
        v[0] = sv[0];
        basis.push_back(std::move(v));
    }
    for (const auto& pv : scattered_part.basis()) {
        std::vector<felem> v(static_cast<std::size_t>(k), 0);
        for (int t = 0; t < k - 3; ++t) v[static_cast<std::size_t>(3 + t)] = pv[static_cast<std::size_t>(t)];
        basis.push_back(std::move(v));
    }
    Construction c{SubspaceU(tower, k, basis), {}};
    c.report.name = "lift-even";
    c.report.params["i"] = std::to_string(i);
    c.report.claimed_rank = m * (k - 1) / 2 + i;
    c.report.claimed_classification = classification_claim(i);
    if (i >= 2) c.report.claimed_special_point = unit_vector(k, 0);
    std::set<int> allowed;
    for (int w = 0; w <= 2; ++w) allowed.insert(m * (k - 3) / 2 + i + w);
    c.report.spectrum_allowed = allowed;
    run_self_check(c, opts);
    return c;
}

Construction half_club_k4(const std::shared_ptr<const FieldTower>& tower, int s,
                          const ConstructOptions& opts) {
    const FieldTower& tw = *tower;
    const int m = tw.m();
    if (m < 4 || m % 2 != 0) fail("ParameterViolation", "half club needs even m >= 4");
    if (std::gcd(s, m / 2) != 1) fail("ParameterViolation", "gcd(s, m/2) must be 1");
    std::vector<std::vector<felem>> basis;
    for (int j = 0; j < m; ++j) {
        felem b = tw.x_power(j);
        basis.push_back({b, tw.rel_trace(tw.pow_q(b, s), m / 2), 0, 0});
    }
    for (int j = 0; j < m; ++j) {
        felem b = tw.x_power(j);
        basis.push_back({0, 0, b, tw.pow_q(b, 1)});
    }
    Construction c{SubspaceU(tower, 4, basis), {}};
    c.report.name = "half-club-k4";
    c.report.params["s"] = std::to_string(s);
    c.report.claimed_rank = 2 * m;
    c.report.claimed_classification = classification_claim(m / 2);
    c.report.claimed_special_point = std::vector<felem>{1, 0, 0, 0};
    c.report.notes.push_back(
        "first block is the twisted trace graph (x, Tr_{q^m/q^{m/2}}(x^{q^s})); the untwisted "
        "graph is F_{q^{m/2}}-linear and is not a club");
    run_self_check(c, opts);
    int line_weight = subspace_weight(c.U, {{1, 0, 0, 0}, {0, 1, 0, 0}});
    if (line_weight != m) {
        c.report.ok = false;
        c.report.notes.push_back("line X2=X3=0 has weight " + std::to_string(line_weight) +
                                 ", expected " + std::to_string(m));
    } else {
        c.report.notes.push_back("line X2=X3=0 has weight m = " + std::to_string(m));
    }
    return c;
}

const char* zoo_name_string(ZooName name) {
    switch (name) {
        case ZooName::TwistedGabidulin:
            return "twisted-gabidulin";
        case ZooName::RedeiScattered:
            return "redei-scattered";
        case ZooName::PseudoregulusLines:
            return "pseudoregulus-lines";
        case ZooName::ComplementaryWeights:
            return "complementary-weights";
    }
    return "?";
}

namespace {

felem minus_one_power(const Field& big, int exponent) {
    return exponent % 2 == 0 ? 1 : big.neg(1);
}

// Norm from F_{q^t} down to F_q for an element of the intermediate field.
felem norm_from(const FieldTower& tw, felem a, int t) {
    felem acc = 1, cur = a;
    for (int j = 0; j < t; ++j) {
        acc = tw.big().mul(acc, cur);
        cur = tw.pow_q(cur, 1);
    }
    return acc;
}

felem pick_delta(const FieldTower& tw, const std::optional<felem>& given, felem forbidden,
                 const char* condition) {
    if (given) {
        if (tw.rel_norm(*given, 1) == forbidden)
            fail("ConditionViolated", std::string("delta violates ") + condition);
        return *given;
    }
    for (felem d = 0; d < tw.big().size(); ++d)
        if (tw.rel_norm(d, 1) != forbidden) return d;
    fail("ConditionViolated", std::string("no delta satisfies ") + condition);
}

}  // namespace

Construction three_weight_system(const std::shared_ptr<const FieldTower>& tower, ZooName name,
                                 const ZooParams& params, const ConstructOptions& opts) {
    const FieldTower& tw = *tower;
    const Field& big = tw.big();
    const int m = tw.m();
    const int s = params.s;
    Construction c{SubspaceU::span(tower, 1, {{1}}), {}};  // placeholder, replaced below
    SelfCheckReport& rep = c.report;
    rep.name = zoo_name_string(name);
    rep.params["s"] = std::to_string(s);

    switch (name) {
        case ZooName::TwistedGabidulin: {
            if (std::gcd(s, m) != 1) fail("ParameterViolation", "gcd(s, m) must be 1");
            felem forbidden = minus_one_power(big, m);
            felem delta = pick_delta(tw, params.delta, forbidden,
                                     "N_{q^m/q}(delta) != (-1)^m");
            rep.params["delta"] = std::to_string(delta);
            std::vector<std::vector<felem>> basis;
            for (int j = 0; j < m; ++j) {
                felem b = tw.x_power(j);
                basis.push_back({big.sub(b, big.mul(delta, tw.pow_q(b, 3 * s))),
                                 tw.pow_q(b, s), tw.pow_q(b, 2 * s)});
            }
            c.U = SubspaceU(tower, 3, basis);
            rep.claimed_rank = m;
            rep.claimed_classification = "scattered";
            rep.expected_code_weights = std::vector<int>{m - 2, m - 1, m};
            break;
        }
        case ZooName::RedeiScattered: {
            if (std::gcd(s, m) != 1) fail("ParameterViolation", "gcd(s, m) must be 1");
            felem delta = pick_delta(tw, params.delta, 1, "N_{q^m/q}(delta) != 1");
            rep.params["delta"] = std::to_string(delta);
            std::vector<std::vector<felem>> basis;
            for (int j = 0; j < m; ++j) {
                felem b = tw.x_power(j);
                basis.push_back({big.sub(b, big.mul(delta, tw.pow_q(b, 2 * s))),
                                 tw.pow_q(b, s), 0});
            }
            basis.push_back({0, 0, 1});
            c.U = SubspaceU(tower, 3, basis);
            rep.claimed_rank = m + 1;
            rep.claimed_classification = "scattered";
            rep.expected_code_weights = std::vector<int>{1, m - 1, m};
            break;
        }
        case ZooName::PseudoregulusLines: {
            const int k = params.k;
            if (k < 3 || k % 3 != 0) fail("ParameterViolation", "k must be a positive multiple of 3");
            std::vector<std::vector<felem>> basis;
            for (int blk = 0; blk < k / 3; ++blk)
                for (int j = 0; j < m; ++j) {
                    std::vector<felem> v(static_cast<std::size_t>(k), 0);
                    felem b = tw.x_power(j);
                    v[static_cast<std::size_t>(3 * blk)] = b;
                    v[static_cast<std::size_t>(3 * blk + 1)] = tw.pow_q(b, 1);
                    v[static_cast<std::size_t>(3 * blk + 2)] = tw.pow_q(b, 2);
                    basis.push_back(std::move(v));
                }
            c.U = SubspaceU(tower, k, basis);
            rep.params["k"] = std::to_string(k);
            rep.claimed_rank = k * m / 3;
            rep.claimed_classification = "scattered";
            rep.expected_code_weights = std::vector<int>{m - 2, m - 1, m};
            break;
        }
        case ZooName::ComplementaryWeights: {
            const int k = params.k;
            if (k < 2) fail("ParameterViolation", "k must be at least 2");
            if (m % 2 != 0) fail("ParameterViolation", "m must be even");
            const int t = m / 2;
            if (tw.q() < static_cast<std::uint64_t>(k) + 1)
                fail("ParameterViolation", "needs q >= k + 1");
            std::vector<felem> sub = tw.subfield_elements(t);
            std::vector<felem> sub_nz;
            for (felem a : sub)
                if (a) sub_nz.push_back(a);
            felem sign = minus_one_power(big, t);
            auto valid = [&](felem xi, const std::vector<felem>& mus) {
                std::vector<felem> norms;
                for (felem mu : mus) norms.push_back(norm_from(tw, mu, t));
                for (std::size_t a = 0; a < norms.size(); ++a)
                    for (std::size_t b = a + 1; b < norms.size(); ++b)
                        if (norms[a] == norms[b]) return false;
                felem xin = big.mul(xi, tw.pow_q(xi, t));  // xi^{q^t + 1}
                for (std::size_t a = 0; a < mus.size(); ++a)
                    for (std::size_t b = 0; b < mus.size(); ++b) {
                        if (a == b) continue;
                        felem arg = big.neg(big.mul(xin, big.mul(mus[a], mus[b])));
                        if (norm_from(tw, arg, t) == sign) return false;
                    }
                return true;
            };
            felem xi = 0;
            std::vector<felem> mus;
            if (params.xi && !params.mus.empty()) {
                xi = *params.xi;
                mus = params.mus;
                if (tw.pow_q(xi, t) == xi)
                    fail("ConditionViolated", "xi must lie outside F_{q^t}");
                if (static_cast<int>(mus.size()) != k)
                    fail("ParameterViolation", "need one mu per coordinate");
                if (!valid(xi, mus))
                    fail("ConditionViolated",
                         "norm conditions on (xi, mu_1..mu_k) fail: need pairwise distinct "
                         "N_{q^t/q}(mu_i) and N_{q^t/q}(-xi^{q^t+1} mu_i mu_j) != (-1)^t");
            } else {
                bool found = false;
                for (felem cand_xi = 0; cand_xi < big.size() && !found; ++cand_xi) {
                    if (tw.pow_q(cand_xi, t) == cand_xi) continue;
                    // odometer over k-tuples of nonzero subfield elements, rightmost fastest
                    std::vector<std::size_t> idx(static_cast<std::size_t>(k), 0);
                    while (true) {
                        std::vector<felem> cand_mus;
                        for (std::size_t r = 0; r < idx.size(); ++r) cand_mus.push_back(sub_nz[idx[r]]);
                        if (valid(cand_xi, cand_mus)) {
                            xi = cand_xi;
                            mus = cand_mus;
                            found = true;
                            break;
                        }
                        int pos = k - 1;
                        while (pos >= 0 && ++idx[static_cast<std::size_t>(pos)] == sub_nz.size()) {
                            idx[static_cast<std::size_t>(pos)] = 0;
                            --pos;
                        }
                        if (pos < 0) break;
                    }
                }
                if (!found)
                    fail("ConditionViolated", "no (xi, mu) tuple satisfies the norm conditions");
            }
            rep.params["xi"] = std::to_string(xi);
            for (int j = 0; j < k; ++j)
                rep.params["mu" + std::to_string(j + 1)] = std::to_string(mus[static_cast<std::size_t>(j)]);
            rep.params["k"] = std::to_string(k);
            // F_q-basis of F_{q^t}: ascending independent subfield elements
            SpanBuilder sb(tw, t);
            for (felem a : sub_nz) {
                sb.try_add(a);
                if (sb.full()) break;
            }
            std::vector<std::vector<felem>> basis;
            for (int j = 0; j < k; ++j)
                for (felem b : sb.picked()) {
                    std::vector<felem> v(static_cast<std::size_t>(k), 0);
                    v[static_cast<std::size_t>(j)] =
                        big.add(b, big.mul(xi, big.mul(mus[static_cast<std::size_t>(j)], tw.pow_q(b, 1))));
                    basis.push_back(std::move(v));
                }
            c.U = SubspaceU(tower, k, basis);
            rep.claimed_rank = k * t;
            rep.claimed_classification = "other";
            rep.code_on_dual = true;
            rep.expected_code_weights = std::vector<int>{m - t, m - 1, m};
            break;
        }
    }
    run_self_check(c, opts);
    if (name == ZooName::ComplementaryWeights) {
        // exactly k points of weight t, everything else weight 1
        const int t = m / 2;
        auto it = rep.measured.census.find(t);
        bool profile = it != rep.measured.census.end() &&
                       it->second == static_cast<std::uint64_t>(params.k) &&
                       rep.measured.census.size() == 2 && rep.measured.census.count(1);
        if (!profile) {
            rep.ok = false;
            rep.notes.push_back("census does not show exactly k points of weight m/2");
        }
    }
    return c;
}

}  // namespace clubforge
