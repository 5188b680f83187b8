#include <doctest.h>

#include <algorithm>
#include <random>

#include "clubforge/rmcode.hpp"

using namespace clubforge;

namespace {

SubspaceU trace_club_u(const std::shared_ptr<const FieldTower>& t) {
    std::vector<std::vector<felem>> basis;
    for (int j = 0; j < t->m(); ++j) {
        felem b = t->x_power(j);
        basis.push_back({b, t->rel_trace(b)});
    }
    return SubspaceU(t, 2, basis);
}

SubspaceU cone_club_743(const std::shared_ptr<const FieldTower>& t) {
    // q=2, m=4, k=3, i=3: {(x, x^q, 0)} + <1, s1, s2> e_2 with the S used
    // throughout: 1 extended by trace-kernel elements in encoding order
    std::vector<std::vector<felem>> basis;
    for (int j = 0; j < 4; ++j) {
        felem b = t->x_power(j);
        basis.push_back({b, t->pow_q(b, 1), 0});
    }
    std::vector<felem> S{1};
    std::vector<felem> span{0, 1};
    for (felem a = 2; a < 16 && S.size() < 3; ++a) {
        if (t->rel_trace(a) != 0) continue;
        if (std::find(span.begin(), span.end(), a) != span.end()) continue;
        S.push_back(a);
        std::vector<felem> grown = span;
        for (felem s : span) grown.push_back(t->big().add(s, a));
        span = std::move(grown);
    }
    for (felem s : S) basis.push_back({0, 0, s});
    return SubspaceU(t, 3, basis);
}

WeightDistribution dist_of(std::initializer_list<unsigned long> counts) {
    WeightDistribution d(static_cast<int>(counts.size()) - 1);
    std::size_t i = 0;
    for (unsigned long c : counts) d.counts[i++] = mpz_class(c);
    return d;
}

SubspaceU random_system(const std::shared_ptr<const FieldTower>& t, int k, std::mt19937_64& rng) {
    while (true) {
        int n = k + static_cast<int>(rng() % (t->m() * k - k + 1));
        std::vector<std::vector<felem>> vecs;
        for (int r = 0; r < n; ++r) {
            std::vector<felem> v(static_cast<std::size_t>(k));
            for (auto& x : v) x = rng() % t->big().size();
            vecs.push_back(std::move(v));
        }
        SubspaceU U = SubspaceU::span(t, k, vecs);
        if (U.rank() == n && spans_full_space(U)) return U;
    }
}

}  // namespace

TEST_CASE("from_system and codeword weights") {
    auto t = FieldTower::make(2, 1, 3);
    SubspaceU units(t, 2, {{1, 0}, {0, 1}});
    RankMetricCode I = from_system(units);
    CHECK(I.n() == 2);
    CHECK(I.k() == 2);

    SubspaceU degenerate(t, 2, {{1, 0}, {2, 0}});
    CHECK_THROWS_AS(from_system(degenerate), Error);

    CHECK(codeword_weight(*t, std::vector<felem>{0, 0, 0}) == 0);
    CHECK(codeword_weight(*t, std::vector<felem>{1, 1, 1}) == 1);
    CHECK(codeword_weight(*t, std::vector<felem>{1, 2, 4}) == 3);
}

TEST_CASE("system_of inverts from_system") {
    auto t = FieldTower::make(2, 1, 3);
    SubspaceU U = dual_perp(trace_club_u(t));
    RankMetricCode C = from_system(U);
    CHECK(system_of(C) == U);
}

TEST_CASE("weight distributions: frozen examples, both methods") {
    auto t3 = FieldTower::make(2, 1, 3);
    // identity [1,1] code over F_8: A = (1, 7, 0, 0)
    RankMetricCode one(t3, {{1}});
    CHECK(weight_distribution(one, WeightMethod::Enumerate) == dist_of({1, 7, 0, 0}));

    // trace-club dual [3,2] over F_8: A = (1, 7, 28, 28)
    RankMetricCode tc = from_system(dual_perp(trace_club_u(t3)));
    CHECK(tc.n() == 3);
    CHECK(tc.k() == 2);
    WeightDistribution A = weight_distribution(tc, WeightMethod::Enumerate);
    CHECK(A == dist_of({1, 7, 28, 28}));
    CHECK(weight_distribution(tc, WeightMethod::Geometric) == A);
    CHECK(min_distance(A) == 1);

    // {(x, x^q)} over F_16: [4,2] MRD with d = 3
    auto t4 = FieldTower::make(2, 1, 4);
    std::vector<std::vector<felem>> fb;
    for (int j = 0; j < 4; ++j) {
        felem b = t4->x_power(j);
        fb.push_back({b, t4->pow_q(b, 1)});
    }
    RankMetricCode mrd = from_system(SubspaceU(t4, 2, fb));
    WeightDistribution Am = weight_distribution(mrd, WeightMethod::Enumerate);
    CHECK(Am == dist_of({1, 0, 0, 225, 30}));
    CHECK(min_distance(Am) == 3);
    CHECK(is_mrd(mrd, Am));
    CHECK(singleton_bound_holds(4, 4, 2, 3));
    CHECK_FALSE(singleton_bound_holds(4, 4, 2, 4));
}

TEST_CASE("enumerate and geometric methods agree on random systems") {
    auto t = FieldTower::make(2, 1, 3);
    std::mt19937_64 rng(41);
    for (int trial = 0; trial < 10; ++trial) {
        RankMetricCode C = from_system(random_system(t, 2, rng));
        WeightDistribution A = weight_distribution(C, WeightMethod::Enumerate);
        CHECK(A == weight_distribution(C, WeightMethod::Geometric));
        CHECK(singleton_bound_holds(t->m(), C.n(), C.k(), min_distance(A)));
    }
}

TEST_CASE("dual code and biduality") {
    auto t = FieldTower::make(2, 1, 3);
    RankMetricCode full(t, {{1, 0}, {0, 1}});
    RankMetricCode zero = dual_code(full);
    CHECK(zero.k() == 0);
    CHECK(weight_distribution(zero, WeightMethod::Enumerate).total() == 1);

    RankMetricCode C = from_system(dual_perp(trace_club_u(t)));
    RankMetricCode DD = dual_code(dual_code(C));
    CHECK(DD.k() == C.k());
    // same F_{q^m}-row space: canonical generator matrices agree
    auto rowspace = [](const RankMetricCode& code) {
        Matrix M(code.tower().big(), static_cast<std::size_t>(code.k()),
                 static_cast<std::size_t>(code.n()));
        for (int r = 0; r < code.k(); ++r)
            std::copy(code.G()[static_cast<std::size_t>(r)].begin(),
                      code.G()[static_cast<std::size_t>(r)].end(),
                      M.a.begin() + static_cast<std::ptrdiff_t>(r) * code.n());
        return rref(std::move(M));
    };
    CHECK(rowspace(DD) == rowspace(C));
}

TEST_CASE("q-binomials") {
    mpz_class two(2);
    CHECK(qbinomial(5, 0, two) == 1);
    CHECK(qbinomial(2, 3, two) == 0);
    CHECK(qbinomial(-1, 0, two) == 0);
    CHECK(qbinomial(4, 2, two) == 35);
    CHECK(qbinomial(8, 4, two) == 200787);
    CHECK(qbinomial(6, 3, two) == 1395);
    CHECK(qbinomial(3, 2, two) == 7);
    CHECK(qbinomial(4, 2, mpz_class(3)) == 130);
}

TEST_CASE("MacWilliams transform against brute force") {
    auto t = FieldTower::make(2, 1, 4);
    SubspaceU cone = cone_club_743(t);
    REQUIRE(analyze(cone).kind == LinearSetReport::Kind::Club);
    RankMetricCode C = from_system(dual_perp(cone));
    REQUIRE(C.n() == 5);
    REQUIRE(C.k() == 3);
    WeightDistribution A = weight_distribution(C, WeightMethod::Enumerate);
    CHECK(A == dist_of({1, 15, 0, 1800, 2280}));

    WeightDistribution B = macwilliams_transform(A, 5, 3, 4, mpz_class(2));
    CHECK(B.counts[1] == 0);
    CHECK(B.counts[2] == 0);
    RankMetricCode Cd = dual_code(C);
    CHECK(B == weight_distribution(Cd, WeightMethod::Enumerate));

    // biduality: transforming back with k <-> n-k returns A
    WeightDistribution A2 = macwilliams_transform(B, 5, 2, 4, mpz_class(2));
    CHECK(A2 == A);

    // an invalid distribution is rejected
    WeightDistribution bad = A;
    bad.counts[1] -= 1;
    bad.counts[2] += 1;
    CHECK_THROWS_AS(macwilliams_transform(bad, 5, 3, 4, mpz_class(2)), Error);

    // full [1,1] code: the transform returns the zero code's distribution
    auto t3 = FieldTower::make(2, 1, 3);
    RankMetricCode full(t3, {{1}});
    WeightDistribution Af = weight_distribution(full, WeightMethod::Enumerate);
    WeightDistribution Bf = macwilliams_transform(Af, 1, 1, 3, mpz_class(2));
    CHECK(Bf == weight_distribution(dual_code(full), WeightMethod::Enumerate));
    CHECK(Bf.counts[0] == 1);
    CHECK(Bf.total() == 1);
}

TEST_CASE("B_1 vanishes for non-degenerate systems") {
    auto t = FieldTower::make(2, 1, 3);
    std::mt19937_64 rng(43);
    for (int trial = 0; trial < 8; ++trial) {
        RankMetricCode C = from_system(random_system(t, 2, rng));
        WeightDistribution A = weight_distribution(C, WeightMethod::Enumerate);
        WeightDistribution B = macwilliams_transform(A, C.n(), C.k(), 3, mpz_class(2));
        CHECK(B.counts[1] == 0);
    }
}

TEST_CASE("club-dual code prediction") {
    ClubCodePrediction p = club_code_prediction(mpz_class(2), 4, 3, 3, 7);
    CHECK(p.length == 5);
    CHECK(p.dim == 3);
    CHECK(p.min_dist == 1);
    CHECK(p.dist == dist_of({1, 15, 0, 1800, 2280}));
    CHECK(p.shifted_formula_differs);
    CHECK(p.derived_a_m1 == 1800);
    CHECK(p.shifted_a_m1 == 15 * (128 + 64 + 32 + 16 + 8));

    ClubCodePrediction p2 = club_code_prediction(mpz_class(2), 3, 2, 2, 3);
    CHECK(p2.length == 3);
    CHECK(p2.dim == 2);
    CHECK(p2.min_dist == 1);
    CHECK(p2.dist == dist_of({1, 7, 28, 28}));

    CHECK_THROWS_AS(club_code_prediction(mpz_class(2), 4, 3, 4, 7), Error);  // i = m

    // i = 1 branch (scattered): check against enumeration of the dual-system code
    auto t = FieldTower::make(2, 1, 3);
    std::vector<std::vector<felem>> fb;
    for (int j = 0; j < 3; ++j) {
        felem b = t->x_power(j);
        fb.push_back({b, t->pow_q(b, 1)});
    }
    SubspaceU scat(t, 2, fb);
    REQUIRE(analyze(scat).kind == LinearSetReport::Kind::Scattered);
    RankMetricCode C = from_system(dual_perp(scat));
    ClubCodePrediction p1 = club_code_prediction(mpz_class(2), 3, 2, 1, 3);
    CHECK(weight_distribution(C, WeightMethod::Enumerate) == p1.dist);
    CHECK(p1.min_dist == 2);
}

TEST_CASE("club rank bound and B_2 admissibility") {
    std::string label;
    CHECK(club_rank_bound(2, 4, 3, 3, &label) == 7);
    CHECK(label == "m/2<=i<=m, k>2");
    CHECK(club_rank_bound(2, 4, 3, 2, &label) == 6);
    CHECK(label == "i<=m/2");
    CHECK(club_rank_bound(2, 5, 2, 4, &label) == 5);
    CHECK(label == "k=2, i<=m-1");
    CHECK(club_rank_bound(2, 5, 2, 5, &label) == 6);
    CHECK(label == "i=m, k=2");
    CHECK(club_rank_bound(2, 3, 3, 2) == 5);  // m/2 <= i branch, m(k-1)/2 + i
    CHECK_THROWS_AS(club_rank_bound(2, 4, 1, 2), Error);

    CHECK(b2_value(2, 4, 3, 3, 7) == 0);
    CHECK(b2_admissibility(2, 4, 3, 3, 7));
    CHECK_FALSE(b2_admissibility(2, 4, 3, 3, 8));

    // inadmissibility persists for every rank above the bound
    for (int m = 3; m <= 6; ++m)
        for (int k : {3, 4})
            for (int i = 2; i <= m; ++i) {
                long bound = club_rank_bound(2, m, k, i);
                for (int n = static_cast<int>(bound) + 1; n <= k * m && n <= static_cast<int>(bound) + 3; ++n)
                    CHECK_FALSE(b2_admissibility(2, m, k, i, n));
            }
}

TEST_CASE("three-weight classification") {
    auto t = FieldTower::make(2, 1, 4);
    RankMetricCode C = from_system(dual_perp(cone_club_743(t)));
    ThreeWeightClassification cls = three_weight_classify(C);
    CHECK(cls.tag == ThreeWeightClassification::Tag::DualOfClub);
    CHECK(cls.club_index == 3);
    CHECK(cls.verified);
    CHECK(cls.weights == std::vector<int>{1, 3, 4});

    std::vector<std::vector<felem>> fb;
    for (int j = 0; j < 4; ++j) {
        felem b = t->x_power(j);
        fb.push_back({b, t->pow_q(b, 1)});
    }
    RankMetricCode mrd = from_system(SubspaceU(t, 2, fb));
    CHECK(three_weight_classify(mrd).tag == ThreeWeightClassification::Tag::TwoWeight);

    // pseudoregulus k=3: three weights but not the club-dual profile
    std::vector<std::vector<felem>> pb;
    for (int j = 0; j < 4; ++j) {
        felem b = t->x_power(j);
        pb.push_back({b, t->pow_q(b, 1), t->pow_q(b, 2)});
    }
    RankMetricCode pse = from_system(SubspaceU(t, 3, pb));
    ThreeWeightClassification pcls = three_weight_classify(pse);
    CHECK(pcls.tag == ThreeWeightClassification::Tag::ThreeWeightOther);
    CHECK(pcls.weights == std::vector<int>{2, 3, 4});
}
