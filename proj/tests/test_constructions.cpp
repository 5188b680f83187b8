#include <doctest.h>

#include <algorithm>
#include <random>

#include "clubforge/constructions.hpp"

using namespace clubforge;

namespace {

// Seeded greedy search for a maximum scattered subspace; used where no
// built-in shape exists (odd ambient dimension).
SubspaceU greedy_scattered(const std::shared_ptr<const FieldTower>& t, int k, int target,
                           std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    for (int restart = 0; restart < 64; ++restart) {
        std::vector<std::vector<felem>> basis;
        for (int tries = 0; tries < 4000 && static_cast<int>(basis.size()) < target; ++tries) {
            std::vector<felem> v(static_cast<std::size_t>(k));
            for (auto& x : v) x = rng() % t->big().size();
            if (std::all_of(v.begin(), v.end(), [](felem x) { return x == 0; })) continue;
            std::vector<std::vector<felem>> cand = basis;
            cand.push_back(v);
            SubspaceU U = SubspaceU::span(t, k, cand);
            if (U.rank() != static_cast<int>(cand.size())) continue;
            if (analyze(U).kind != LinearSetReport::Kind::Scattered) continue;
            basis = std::move(cand);
        }
        if (static_cast<int>(basis.size()) == target) return SubspaceU(t, k, basis);
    }
    fail("InternalError", "greedy scattered search failed");
}

}  // namespace

TEST_CASE("trace clubs") {
    for (auto [p, m] : {std::pair<int, int>{2, 3}, {2, 4}, {2, 5}, {3, 3}}) {
        auto t = FieldTower::make(static_cast<std::uint64_t>(p), 1, m);
        Construction c = trace_club(t);
        CHECK(c.report.ok);
        CHECK(c.report.measured.rank == m);
        CHECK(c.report.measured.club_index == m - 1);
        std::uint64_t expect_size = 1;
        for (int e = 0; e < m - 1; ++e) expect_size *= static_cast<std::uint64_t>(p);
        CHECK(c.report.measured.size == expect_size + 1);
        std::string diag;
        CHECK(verify_weight_identities(c.report.measured, static_cast<std::uint64_t>(p), m, &diag));
    }
}

TEST_CASE("subfield trace clubs") {
    auto t4 = FieldTower::make(2, 1, 4);
    Construction c = subfield_trace_club(t4, 2, 1);
    CHECK(c.report.ok);
    CHECK(c.report.measured.club_index == 2);
    CHECK(c.report.measured.rank == 4);

    auto t6 = FieldTower::make(2, 1, 6);
    Construction c6 = subfield_trace_club(t6, 3, 1);
    CHECK(c6.report.ok);
    CHECK(c6.report.measured.club_index == 3);

    // l = m, n0 = 1 reduces to the plain trace club
    auto t3 = FieldTower::make(2, 1, 3);
    CHECK(subfield_trace_club(t3, 1, 1).U == trace_club(t3).U);

    CHECK_THROWS_AS(subfield_trace_club(t4, 3, 1), Error);  // 3 does not divide 4
    CHECK_THROWS_AS(subfield_trace_club(t6, 2, 2), Error);  // gcd(s, n0) != 1
}

TEST_CASE("built-in maximum scattered parts") {
    auto t4 = FieldTower::make(2, 1, 4);
    SubspaceU s2 = builtin_max_scattered(t4, 2);
    LinearSetReport r2 = analyze(s2);
    CHECK(r2.kind == LinearSetReport::Kind::Scattered);
    CHECK(r2.rank == 4);
    CHECK(r2.size == 15);

    auto t3 = FieldTower::make(2, 1, 3);
    SubspaceU s4 = builtin_max_scattered(t3, 4);
    LinearSetReport r4 = analyze(s4);
    CHECK(r4.kind == LinearSetReport::Kind::Scattered);
    CHECK(r4.rank == 6);

    auto t9 = FieldTower::make(3, 1, 2);
    CHECK(analyze(builtin_max_scattered(t9, 2)).kind == LinearSetReport::Kind::Scattered);

    try {
        builtin_max_scattered(t4, 3);
        FAIL("odd ambient accepted");
    } catch (const Error& e) {
        CHECK(e.code() == "UnsupportedShape");
    }
}

TEST_CASE("make_S modes") {
    auto t = FieldTower::make(2, 1, 4);
    SubspaceU s1 = make_S(t, {SChoiceMode::TraceKernelExtension, 1, {}, 0});
    CHECK(s1.rank() == 1);
    CHECK(s1.basis()[0] == std::vector<felem>{1});  // anchor F_q * 1

    SubspaceU sm = make_S(t, {SChoiceMode::TraceKernelExtension, 4, {}, 0});
    CHECK(sm.rank() == 4);  // all of F_{q^m}

    SubspaceU r1 = make_S(t, {SChoiceMode::SeededRandom, 2, {}, 42});
    SubspaceU r2 = make_S(t, {SChoiceMode::SeededRandom, 2, {}, 42});
    CHECK(r1 == r2);

    SubspaceU ex = make_S(t, {SChoiceMode::ExplicitBasis, 2, {1, 2}, 0});
    CHECK(ex.rank() == 2);
    CHECK_THROWS_AS(make_S(t, {SChoiceMode::ExplicitBasis, 2, {1, 1}, 0}), Error);
    CHECK_THROWS_AS(make_S(t, {SChoiceMode::TraceKernelExtension, 5, {}, 0}), Error);
}

TEST_CASE("cone construction") {
    auto t = FieldTower::make(2, 1, 4);
    ConstructOptions opts;
    opts.with_spectrum = true;
    Construction c3 = cone_default(t, 3, 3, opts);
    CHECK(c3.report.ok);
    CHECK(c3.report.measured.rank == 7);
    CHECK(c3.report.measured.club_index == 3);
    CHECK(c3.report.measured.size == 121);
    REQUIRE(c3.report.measured.special_point.has_value());
    CHECK(c3.report.measured.special_point->rep == std::vector<felem>{0, 0, 1});
    // frozen spectrum: 242 hyperplanes of weight 3, 31 of weight 4
    CHECK(*c3.report.measured.hyperplane_spectrum ==
          std::map<int, std::uint64_t>{{3, 242}, {4, 31}});
    // the hyperplane X_2 = 0 has weight m(k-1)/2 = 4
    CHECK(subspace_weight(c3.U, {{1, 0, 0}, {0, 1, 0}}) == 4);

    Construction c2 = cone_default(t, 3, 2, opts);
    CHECK(c2.report.ok);
    CHECK(c2.report.measured.rank == 6);
    CHECK(c2.report.measured.club_index == 2);

    // i = m: the vertex space is all of F_{q^m}; still a club, one of
    // maximal rank m(k-1)/2 + m, but with no associated dual code
    Construction cm = cone_default(t, 3, 4);
    CHECK(cm.report.ok);
    CHECK(cm.report.measured.club_index == 4);
    CHECK(cm.report.measured.rank == 8);
    CHECK_FALSE(spans_full_space(dual_perp(cm.U)));

    // a non-maximum part is rejected
    SubspaceU thin(t, 2, {{1, 0}, {0, 1}});
    SubspaceChoiceS sc;
    sc.dim = 2;
    try {
        cone(t, 3, thin, make_S(t, sc));
        FAIL("non-maximum part accepted");
    } catch (const Error& e) {
        CHECK(e.code() == "NotMaximumScattered");
    }
}

TEST_CASE("cone hyperplane weights vs the scattered section") {
    // every hyperplane weight lies within i of the scattered part's
    // weight on the section with the base hyperplane
    auto t = FieldTower::make(2, 1, 4);
    const int i = 3;
    Construction c = cone_default(t, 3, i);
    SubspaceU part = builtin_max_scattered(t, 2);
    std::mt19937_64 rng(47);
    const Field& big = t->big();
    for (int trial = 0; trial < 60; ++trial) {
        std::vector<felem> a(3);
        do {
            for (auto& x : a) x = rng() % 16;
        } while (std::all_of(a.begin(), a.end(), [](felem x) { return x == 0; }));
        if (a[0] == 0 && a[1] == 0) continue;  // the base hyperplane itself
        // basis of H ∩ {X_2 = 0}: kernel of [a0 a1] inside F^2
        Matrix am(big, 1, 2);
        am.at(0, 0) = a[0];
        am.at(0, 1) = a[1];
        Matrix hk = kernel(am);
        std::vector<std::vector<felem>> sect;
        for (std::size_t r = 0; r < hk.rows; ++r)
            sect.emplace_back(hk.row(r).begin(), hk.row(r).end());
        int w_section = subspace_weight(part, sect);
        // weight of H against the cone
        Matrix am3(big, 1, 3);
        for (int j = 0; j < 3; ++j) am3.at(0, static_cast<std::size_t>(j)) = a[static_cast<std::size_t>(j)];
        Matrix hk3 = kernel(am3);
        std::vector<std::vector<felem>> hb;
        for (std::size_t r = 0; r < hk3.rows; ++r)
            hb.emplace_back(hk3.row(r).begin(), hk3.row(r).end());
        int w = subspace_weight(c.U, hb);
        CHECK(w >= w_section);
        CHECK(w <= w_section + i);
    }
}

TEST_CASE("lifting construction, odd k") {
    auto t = FieldTower::make(2, 1, 4);
    SubspaceChoiceS sc;
    sc.dim = 2;
    ConstructOptions opts;
    opts.with_spectrum = true;
    Construction c = lift_odd(t, 3, make_S(t, sc), opts);
    CHECK(c.report.ok);
    CHECK(c.report.measured.rank == 6);
    CHECK(c.report.measured.club_index == 2);
    CHECK(c.report.spans_ambient);
    for (auto& [w, cnt] : *c.report.measured.hyperplane_spectrum) {
        CHECK(w >= 2);
        CHECK(w <= 4);
    }

    // k = 5: vector-enumeration path, rank 10
    sc.dim = 2;
    Construction c5 = lift_odd(t, 5, make_S(t, sc));
    CHECK(c5.report.ok);
    CHECK(c5.report.measured.rank == 10);
    CHECK(c5.report.measured.club_index == 2);

    CHECK_THROWS_AS(lift_odd(t, 4, make_S(t, sc)), Error);
}

TEST_CASE("dual of the lifted subspace matches the closed form") {
    // U^{perp'} = {(z, -y^q, -z^{q^2} + y^{q^2}, ...)}: containment and dimension
    auto t = FieldTower::make(2, 1, 4);
    SubspaceChoiceS sc;
    sc.dim = 2;
    SubspaceU S = make_S(t, sc);
    Construction c = lift_odd(t, 3, S);
    SubspaceU D = dual_perp(c.U);
    const int m = 4;
    CHECK(D.rank() == 3 * m - c.report.measured.rank);

    // S^perp inside F_{q^m}
    SubspaceU Sp = dual_perp(S);
    CHECK(Sp.rank() == m - 2);
    const Field& big = t->big();
    // spanning vectors (z, -y^q, -z^{q^2}+y^{q^2}) for z in a basis of
    // S^perp and y in the power basis must lie in D
    auto member = [&](const std::vector<felem>& v) {
        Matrix st = stack(D.flat(), flatten_rows(*t, {v}, 3));
        return rank_of(std::move(st)) == D.flat().rows;
    };
    int count = 0;
    for (const auto& zrow : Sp.basis()) {
        felem z = zrow[0];
        std::vector<felem> v = {z, 0, big.neg(t->pow_q(z, 2))};
        CHECK(member(v));
        ++count;
    }
    for (int j = 0; j < m; ++j) {
        felem y = t->x_power(j);
        std::vector<felem> v = {0, big.neg(t->pow_q(y, 1)), t->pow_q(y, 2)};
        CHECK(member(v));
        ++count;
    }
    CHECK(count == (m - 2) + m);  // dimension count: 2m - i matches D in ambient 3
}

TEST_CASE("line weights against a scattered set stay at most m") {
    auto t = FieldTower::make(2, 1, 4);
    SubspaceU U = greedy_scattered(t, 3, 6, 1);
    const Field& big = t->big();
    std::uint64_t lines = projective_point_count(big, 3, 1u << 20);  // lines = dual points
    for (std::uint64_t idx = 0; idx < lines; ++idx) {
        std::vector<felem> a = projective_point_at(big, 3, idx);
        Matrix am(big, 1, 3);
        for (int j = 0; j < 3; ++j) am.at(0, static_cast<std::size_t>(j)) = a[static_cast<std::size_t>(j)];
        Matrix hk = kernel(am);
        std::vector<std::vector<felem>> line;
        for (std::size_t r = 0; r < hk.rows; ++r)
            line.emplace_back(hk.row(r).begin(), hk.row(r).end());
        CHECK(subspace_weight(U, line) <= 4);
    }
}

TEST_CASE("lifting construction, even k") {
    auto t = FieldTower::make(2, 1, 4);
    SubspaceU part = greedy_scattered(t, 3, 6, 1);
    LinearSetReport pr = analyze(part);
    REQUIRE(pr.kind == LinearSetReport::Kind::Scattered);
    REQUIRE(pr.rank == 6);

    SubspaceChoiceS sc;
    sc.dim = 2;
    Construction c = lift_even(t, 6, make_S(t, sc), part);
    CHECK(c.report.ok);
    CHECK(c.report.measured.rank == 12);
    CHECK(c.report.measured.club_index == 2);

    CHECK_THROWS_AS(lift_even(t, 4, make_S(t, sc), part), Error);
}

TEST_CASE("half club in PG(3, q^m)") {
    auto t = FieldTower::make(2, 1, 4);
    Construction c = half_club_k4(t);
    CHECK(c.report.ok);
    CHECK(c.report.measured.rank == 8);
    CHECK(c.report.measured.club_index == 2);
    CHECK(subspace_weight(c.U, {{1, 0, 0, 0}, {0, 1, 0, 0}}) == 4);

    // the untwisted graph is not a club: q^{m/2} + 1 points of weight m/2
    std::vector<std::vector<felem>> basis;
    for (int j = 0; j < 4; ++j) {
        felem b = t->x_power(j);
        basis.push_back({b, t->rel_trace(b, 2), 0, 0});
        basis.push_back({0, 0, b, t->pow_q(b, 1)});
    }
    LinearSetReport untwisted = analyze(SubspaceU(t, 4, basis));
    CHECK(untwisted.kind == LinearSetReport::Kind::Other);
    CHECK(untwisted.census[2] == 5);

    auto t3 = FieldTower::make(2, 1, 3);
    CHECK_THROWS_AS(half_club_k4(t3), Error);  // odd m
}

TEST_CASE("the whole stack works over a proper subfield chain (e = 2)") {
    // F_4-linear sets in PG(1, 4^3) over the tower F_2 c F_4 c F_64
    auto t = FieldTower::make(2, 2, 3);
    REQUIRE(t->q() == 4);
    Construction tc = trace_club(t);
    CHECK(tc.report.ok);
    CHECK(tc.report.measured.rank == 3);
    CHECK(tc.report.measured.club_index == 2);
    CHECK(tc.report.measured.size == 17);  // q^2 + 1
    std::string diag;
    CHECK(verify_weight_identities(tc.report.measured, 4, 3, &diag));

    SubspaceU D = dual_perp(tc.U);
    CHECK(D.rank() == 3);
    CHECK(dual_perp(D) == tc.U);
    CHECK(spans_full_space(D));

    // scattered {(x, x^q)} over the same tower
    std::vector<std::vector<felem>> fb;
    for (int j = 0; j < 3; ++j) {
        felem b = t->x_power(j);
        fb.push_back({b, t->pow_q(b, 1)});
    }
    LinearSetReport sc = analyze(SubspaceU(t, 2, fb));
    CHECK(sc.kind == LinearSetReport::Kind::Scattered);
    CHECK(sc.size == 21);  // (q^3 - 1)/(q - 1)

    // club-dual code round-trip with q = 4 counts
    RankMetricCode C = from_system(D);
    WeightDistribution A = weight_distribution(C, WeightMethod::Enumerate);
    CHECK(A == club_code_prediction(mpz_class(4), 3, 2, 2, 3).dist);
    WeightDistribution B = macwilliams_transform(A, C.n(), C.k(), 3, mpz_class(4));
    CHECK(B == weight_distribution(dual_code(C), WeightMethod::Enumerate));
}

TEST_CASE("three-weight zoo") {
    // twisted Gabidulin at q = 2: the scan lands on delta = 0 (norm 0),
    // the only encoding whose norm differs from (-1)^m there
    auto t5 = FieldTower::make(2, 1, 5);
    Construction tg = three_weight_system(t5, ZooName::TwistedGabidulin);
    CHECK(tg.report.ok);
    CHECK(tg.report.params.at("delta") == "0");
    CHECK(*tg.report.measured_code_weights == std::vector<int>{3, 4, 5});
    // any nonzero delta has norm 1 = (-1)^m over F_2 and is rejected
    ZooParams zp;
    zp.delta = 1;
    try {
        three_weight_system(t5, ZooName::TwistedGabidulin, zp);
        FAIL("invalid delta accepted");
    } catch (const Error& e) {
        CHECK(e.code() == "ConditionViolated");
    }

    auto t4 = FieldTower::make(2, 1, 4);
    Construction rd = three_weight_system(t4, ZooName::RedeiScattered);
    CHECK(rd.report.ok);
    CHECK(*rd.report.measured_code_weights == std::vector<int>{1, 3, 4});
    CHECK(rd.report.measured.kind == LinearSetReport::Kind::Scattered);
    // the Redei hyperplane X_2 = 0 meets U in dimension m
    CHECK(subspace_weight(rd.U, {{1, 0, 0}, {0, 1, 0}}) == 4);

    Construction ps = three_weight_system(t4, ZooName::PseudoregulusLines);
    CHECK(ps.report.ok);
    CHECK(*ps.report.measured_code_weights == std::vector<int>{2, 3, 4});

    // complementary weights at the smallest admissible parameters
    auto t81 = FieldTower::make(3, 1, 4);
    ZooParams cw;
    cw.k = 2;
    Construction co = three_weight_system(t81, ZooName::ComplementaryWeights, cw);
    CHECK(co.report.ok);
    CHECK(co.report.params.at("xi") == "5");
    CHECK(co.report.params.at("mu1") == "1");
    CHECK(co.report.params.at("mu2") == "43");
    CHECK(*co.report.measured_code_weights == std::vector<int>{2, 3, 4});
    CHECK(co.report.measured.census == std::map<int, std::uint64_t>{{1, 32}, {2, 2}});

    // q >= k + 1 is required
    auto t16 = FieldTower::make(2, 1, 4);
    ZooParams bad;
    bad.k = 2;
    CHECK_THROWS_AS(three_weight_system(t16, ZooName::ComplementaryWeights, bad), Error);
}
