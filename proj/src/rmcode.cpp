#include "clubforge/rmcode.hpp"

#include <algorithm>

#include "clubforge/parallel.hpp"

namespace clubforge {

namespace {

mpz_class pow_mpz(const mpz_class& base, int exp) {
    mpz_class out;
    mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), static_cast<unsigned long>(exp));
    return out;
}

mpz_class pow_u64(std::uint64_t base, int exp) { return pow_mpz(mpz_class(static_cast<unsigned long>(base)), exp); }

// q^{n-1} + ... + q^i  (zero when i > n-1)
mpz_class geom_sum(const mpz_class& q, int i, int top) {
    mpz_class acc = 0;
    for (int e = i; e <= top; ++e) acc += pow_mpz(q, e);
    return acc;
}

}  // namespace

RankMetricCode::RankMetricCode(std::shared_ptr<const FieldTower> tower,
                               std::vector<std::vector<felem>> G)
    : tower_(std::move(tower)), G_(std::move(G)) {
    k_ = static_cast<int>(G_.size());
    n_ = k_ ? static_cast<int>(G_[0].size()) : 0;
    for (const auto& row : G_)
        if (static_cast<int>(row.size()) != n_)
            fail("ValidationError", "generator matrix rows have unequal length");
    if (k_ > 0) {
        Matrix M(tower_->big(), G_.size(), static_cast<std::size_t>(n_));
        for (std::size_t r = 0; r < G_.size(); ++r)
            std::copy(G_[r].begin(), G_[r].end(),
                      M.a.begin() + static_cast<std::ptrdiff_t>(r * M.cols));
        if (rank_of(std::move(M)) != static_cast<std::size_t>(k_))
            fail("ValidationError", "generator matrix does not have full F_{q^m}-rank");
    }
}

mpz_class WeightDistribution::total() const {
    mpz_class t = 0;
    for (const auto& c : counts) t += c;
    return t;
}

std::vector<int> WeightDistribution::nonzero_weights() const {
    std::vector<int> out;
    for (int i = 1; i < static_cast<int>(counts.size()); ++i)
        if (counts[static_cast<std::size_t>(i)] != 0) out.push_back(i);
    return out;
}

RankMetricCode from_system(const SubspaceU& U) {
    if (!spans_full_space(U))
        fail("DegenerateSystem", "the F_{q^m}-span of U is a proper subspace");
    const int n = U.rank();
    const int k = U.k();
    std::vector<std::vector<felem>> G(static_cast<std::size_t>(k),
                                      std::vector<felem>(static_cast<std::size_t>(n), 0));
    for (int c = 0; c < n; ++c)
        for (int r = 0; r < k; ++r)
            G[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] =
                U.basis()[static_cast<std::size_t>(c)][static_cast<std::size_t>(r)];
    return RankMetricCode(U.tower_ptr(), std::move(G));
}

SubspaceU system_of(const RankMetricCode& C) {
    std::vector<std::vector<felem>> cols;
    cols.reserve(static_cast<std::size_t>(C.n()));
    for (int c = 0; c < C.n(); ++c) {
        std::vector<felem> v(static_cast<std::size_t>(C.k()));
        for (int r = 0; r < C.k(); ++r)
            v[static_cast<std::size_t>(r)] = C.G()[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)];
        cols.push_back(std::move(v));
    }
    return SubspaceU::span(C.tower_ptr(), C.k(), cols);
}

int codeword_weight(const FieldTower& tw, std::span<const felem> c) {
    const int m = tw.m();
    Matrix M(tw.fq(), c.size(), static_cast<std::size_t>(m));
    for (std::size_t r = 0; r < c.size(); ++r)
        tw.fq_coords(c[r], M.a.data() + r * static_cast<std::size_t>(m));
    return static_cast<int>(rank_of(std::move(M)));
}

WeightDistribution weight_distribution(const RankMetricCode& C, WeightMethod method,
                                       std::uint64_t budget, int jobs) {
    const FieldTower& tw = C.tower();
    const int m = tw.m();
    const int n = C.n();
    const int k = C.k();
    WeightDistribution dist(m);
    if (k == 0) {
        dist.counts[0] = 1;
        return dist;
    }
    if (method == WeightMethod::Enumerate) {
        mpz_class total = pow_u64(tw.big().size(), k);
        if (total > mpz_class(static_cast<unsigned long>(budget)))
            fail("SizeBudgetExceeded",
                 "codeword count " + total.get_str() + " exceeds budget " + std::to_string(budget));
        std::uint64_t tot = static_cast<std::uint64_t>(total.get_ui());
        const Field& big = tw.big();
        const std::uint64_t Q = big.size();
        int workers = resolve_jobs(jobs);
        std::vector<std::vector<std::uint64_t>> partial(
            static_cast<std::size_t>(std::max(workers, 1)),
            std::vector<std::uint64_t>(static_cast<std::size_t>(m) + 1, 0));
        parallel_chunks(tot, jobs, [&](int w, std::uint64_t b, std::uint64_t e) {
            auto& cnt = partial[static_cast<std::size_t>(w)];
            std::vector<felem> x(static_cast<std::size_t>(k));
            std::vector<felem> cw(static_cast<std::size_t>(n));
            Matrix M(tw.fq(), static_cast<std::size_t>(n), static_cast<std::size_t>(m));
            for (std::uint64_t idx = b; idx < e; ++idx) {
                std::uint64_t v = idx;
                for (int r = 0; r < k; ++r) {
                    x[static_cast<std::size_t>(r)] = v % Q;
                    v /= Q;
                }
                std::fill(cw.begin(), cw.end(), 0);
                for (int r = 0; r < k; ++r) {
                    felem xr = x[static_cast<std::size_t>(r)];
                    if (!xr) continue;
                    const auto& g = C.G()[static_cast<std::size_t>(r)];
                    for (int c = 0; c < n; ++c)
                        cw[static_cast<std::size_t>(c)] =
                            big.add(cw[static_cast<std::size_t>(c)],
                                    big.mul(xr, g[static_cast<std::size_t>(c)]));
                }
                for (int r = 0; r < n; ++r)
                    tw.fq_coords(cw[static_cast<std::size_t>(r)],
                                 M.a.data() + static_cast<std::size_t>(r) * static_cast<std::size_t>(m));
                Matrix copy = M;
                ++cnt[rank_of(std::move(copy))];
            }
        });
        for (auto& part : partial)
            for (int i = 0; i <= m; ++i) dist.counts[static_cast<std::size_t>(i)] += part[static_cast<std::size_t>(i)];
        return dist;
    }
    // Geometric: A_{n-w} += (q^m - 1) per hyperplane of weight w; A_0 = 1.
    SubspaceU U = system_of(C);
    if (U.rank() != n)
        fail("DegenerateSystem", "column span dimension differs from code length");
    auto spec = hyperplane_weights(U, budget, jobs);
    dist.counts[0] = 1;
    mpz_class qm1 = pow_u64(tw.big().size(), 1) - 1;
    for (auto& [w, cnt] : spec) {
        int wt = n - w;
        if (wt < 0 || wt > m)
            fail("InternalError", "geometric weight out of range");
        dist.counts[static_cast<std::size_t>(wt)] += qm1 * mpz_class(static_cast<unsigned long>(cnt));
    }
    return dist;
}

int min_distance(const WeightDistribution& dist) {
    for (int i = 1; i <= dist.m(); ++i)
        if (dist.counts[static_cast<std::size_t>(i)] != 0) return i;
    return 0;
}

bool singleton_bound_holds(int m, int n, int k, int d) {
    long lhs = static_cast<long>(m) * k;
    long rhs = static_cast<long>(std::max(m, n)) * (std::min(m, n) - d + 1);
    return lhs <= rhs;
}

bool is_mrd(const RankMetricCode& C, const WeightDistribution& dist) {
    int d = min_distance(dist);
    if (d == 0) return false;
    long lhs = static_cast<long>(C.tower().m()) * C.k();
    long rhs = static_cast<long>(std::max(C.tower().m(), C.n())) *
               (std::min(C.tower().m(), C.n()) - d + 1);
    return lhs == rhs;
}

RankMetricCode dual_code(const RankMetricCode& C) {
    const Field& big = C.tower().big();
    Matrix G(big, static_cast<std::size_t>(C.k()), static_cast<std::size_t>(C.n()));
    for (int r = 0; r < C.k(); ++r)
        std::copy(C.G()[static_cast<std::size_t>(r)].begin(), C.G()[static_cast<std::size_t>(r)].end(),
                  G.a.begin() + static_cast<std::ptrdiff_t>(r * G.cols));
    Matrix K = C.k() ? kernel(G) : [&] {
        Matrix I(big, static_cast<std::size_t>(C.n()), static_cast<std::size_t>(C.n()));
        for (int i = 0; i < C.n(); ++i)
            I.at(static_cast<std::size_t>(i), static_cast<std::size_t>(i)) = 1;
        return I;
    }();
    std::vector<std::vector<felem>> rows;
    rows.reserve(K.rows);
    for (std::size_t r = 0; r < K.rows; ++r)
        rows.emplace_back(K.row(r).begin(), K.row(r).end());
    return RankMetricCode(C.tower_ptr(), std::move(rows));
}

mpz_class qbinomial(long s, long t, const mpz_class& q) {
    if (s < 0 || t < 0 || t > s) return 0;
    if (t == 0) return 1;
    mpz_class num = 1, den = 1;
    for (long i = 0; i < t; ++i) {
        num *= pow_mpz(q, static_cast<int>(s - i)) - 1;
        den *= pow_mpz(q, static_cast<int>(i + 1)) - 1;
    }
    mpz_class out, rem;
    mpz_fdiv_qr(out.get_mpz_t(), rem.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    if (rem != 0) fail("InternalError", "q-binomial is not integral");
    return out;
}

WeightDistribution macwilliams_transform(const WeightDistribution& A, int N, int k, int m,
                                         const mpz_class& q) {
    if (A.m() != m) fail("ValidationError", "distribution length does not match m");
    mpz_class card = pow_mpz(q, m * k);
    if (A.total() != card)
        fail("ValidationError", "distribution does not sum to q^{mk}");
    WeightDistribution B(m);
    mpq_class cardq(card);
    for (int nu = 0; nu <= m; ++nu) {
        mpz_class lhs = 0;
        for (int i = 0; i <= m - nu; ++i)
            lhs += A.counts[static_cast<std::size_t>(i)] * qbinomial(m - i, nu, q);
        // lhs = |C| / q^{N nu} * sum_{j<=nu} B_j qbin(m-j, nu-j)
        mpq_class rhs_scale = mpq_class(pow_mpz(q, N * nu)) / cardq;
        mpq_class acc = mpq_class(lhs) * rhs_scale;
        for (int j = 0; j < nu; ++j)
            acc -= mpq_class(B.counts[static_cast<std::size_t>(j)] * qbinomial(m - j, nu - j, q));
        acc.canonicalize();
        if (acc.get_den() != 1)
            fail("NonIntegerSolution",
                 "B_" + std::to_string(nu) + " = " + acc.get_str() + " is not an integer");
        mpz_class val = acc.get_num();
        if (val < 0)
            fail("NegativeCoefficient", "B_" + std::to_string(nu) + " = " + val.get_str() + " is negative");
        B.counts[static_cast<std::size_t>(nu)] = val;
    }
    return B;
}

ClubCodePrediction club_code_prediction(const mpz_class& q, int m, int k, int i, int n) {
    if (i < 1 || i >= m)
        fail("ParameterViolation", "club index must satisfy 1 <= i < m");
    if (n > (k - 1) * m || n < i)
        fail("ParameterViolation", "club rank out of range for these parameters");
    ClubCodePrediction out;
    out.length = k * m - n;
    out.dim = k;
    out.min_dist = m - i;
    out.dist = WeightDistribution(m);
    mpz_class qm1 = pow_mpz(q, m) - 1;
    out.dist.counts[0] = 1;
    mpz_class n1;
    if (i >= 2) {
        n1 = geom_sum(q, i, n - 1);
        out.dist.counts[static_cast<std::size_t>(m - i)] += qm1;
    } else {
        n1 = geom_sum(q, 0, n - 1);
    }
    out.derived_a_m1 = qm1 * n1;
    out.shifted_a_m1 = qm1 * (i >= 2 ? geom_sum(q, i, n) : geom_sum(q, 0, n));
    out.shifted_formula_differs = out.shifted_a_m1 != out.derived_a_m1;
    out.dist.counts[static_cast<std::size_t>(m - 1)] += out.derived_a_m1;
    mpz_class rest = pow_mpz(q, m * k) - out.dist.total();
    if (rest < 0) fail("InternalError", "predicted distribution exceeds code size");
    out.dist.counts[static_cast<std::size_t>(m)] += rest;
    return out;
}

long club_rank_bound(std::uint64_t q, int m, int k, int i, std::string* case_label) {
    (void)q;
    if (k < 2 || i < 2 || i > m)
        fail("ParameterViolation", "bound requires k >= 2 and 2 <= i <= m");
    if (k == 2) {
        if (i == m) {
            if (case_label) *case_label = "i=m, k=2";
            return static_cast<long>(m) + 1;
        }
        if (case_label) *case_label = "k=2, i<=m-1";
        return static_cast<long>(m);
    }
    if (2 * i <= m) {
        if (case_label) *case_label = "i<=m/2";
        return static_cast<long>(m) * k / 2;
    }
    if (case_label) *case_label = "m/2<=i<=m, k>2";
    return static_cast<long>(m) * (k - 1) / 2 + i;
}

mpq_class b2_value(std::uint64_t q, int m, int k, int i, int n) {
    mpz_class Q(static_cast<unsigned long>(q));
    int e = k * m - 2 * n;
    mpq_class qe = e >= 0 ? mpq_class(pow_mpz(Q, e)) : mpq_class(1) / mpq_class(pow_mpz(Q, -e));
    mpq_class inner = mpq_class((pow_mpz(Q, m) - 1) * qbinomial(i, 2, Q) + qbinomial(m, 2, Q));
    return qe * inner - mpq_class(qbinomial(m, 2, Q));
}

bool b2_admissibility(std::uint64_t q, int m, int k, int i, int n) {
    if (i < 2 || i > m || k < 2)
        fail("ParameterViolation", "admissibility requires k >= 2 and 2 <= i <= m");
    mpz_class Q(static_cast<unsigned long>(q));
    int e = k * m - 2 * n;
    mpq_class qe = e >= 0 ? mpq_class(pow_mpz(Q, e)) : mpq_class(1) / mpq_class(pow_mpz(Q, -e));
    mpq_class val = qe * mpq_class((pow_mpz(Q, i) - 1) * (pow_mpz(Q, i - 1) - 1)) +
                    (qe - 1) * mpq_class(pow_mpz(Q, m - 1) - 1);
    return val >= 0;
}

ThreeWeightClassification three_weight_classify(const RankMetricCode& C, std::uint64_t budget,
                                                int jobs) {
    const FieldTower& tw = C.tower();
    const int m = tw.m();
    mpz_class total = pow_u64(tw.big().size(), C.k());
    WeightMethod method = total <= mpz_class(static_cast<unsigned long>(budget))
                              ? WeightMethod::Enumerate
                              : WeightMethod::Geometric;
    WeightDistribution dist = weight_distribution(C, method, budget, jobs);
    ThreeWeightClassification out;
    out.weights = dist.nonzero_weights();
    if (out.weights.size() == 2) {
        out.tag = ThreeWeightClassification::Tag::TwoWeight;
        return out;
    }
    if (out.weights.size() != 3) {
        out.tag = ThreeWeightClassification::Tag::General;
        return out;
    }
    int d = out.weights.front();
    mpz_class qm1 = pow_u64(tw.big().size(), 1) - 1;
    bool profile = dist.counts[static_cast<std::size_t>(m)] != 0 &&
                   dist.counts[static_cast<std::size_t>(m - 1)] != 0 &&
                   dist.counts[static_cast<std::size_t>(d)] == qm1 && d < m - 1;
    if (!profile) {
        out.tag = ThreeWeightClassification::Tag::ThreeWeightOther;
        return out;
    }
    out.tag = ThreeWeightClassification::Tag::DualOfClub;
    out.club_index = m - d;
    // verify by the analyze round-trip on the dual of the associated system
    SubspaceU U = system_of(C);
    SubspaceU D = dual_perp(U);
    AnalyzeOptions opts;
    opts.budget = budget;
    opts.jobs = jobs;
    LinearSetReport rep = analyze(D, opts);
    out.verified = rep.kind == LinearSetReport::Kind::Club && rep.club_index == m - d &&
                   rep.rank == C.k() * m - C.n();
    out.detail = "dual system analyzes as " + rep.classification_string() + " of rank " +
                 std::to_string(rep.rank);
    return out;
}

}  // namespace clubforge
