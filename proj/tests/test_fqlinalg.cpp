#include <doctest.h>

#include <random>

#include "clubforge/fqlinalg.hpp"

using namespace clubforge;

namespace {

Matrix random_matrix(const Field& F, std::size_t r, std::size_t c, std::mt19937_64& rng) {
    Matrix M(F, r, c);
    for (auto& x : M.a) x = rng() % F.size();
    return M;
}

}  // namespace

TEST_CASE("rref basics") {
    Field F2(2, 1);
    Matrix I(F2, 3, 3);
    for (int i = 0; i < 3; ++i) I.at(i, i) = 1;
    std::vector<std::size_t> piv;
    Matrix R = rref(I, &piv);
    CHECK(R == I);
    CHECK(piv == std::vector<std::size_t>{0, 1, 2});

    Matrix Z(F2, 2, 3);
    CHECK(rref(Z).rows == 0);

    Matrix M(F2, 3, 3);
    // rows (1,1,0), (0,1,1), (1,0,1) have rank 2 over F_2
    M.at(0, 0) = 1; M.at(0, 1) = 1;
    M.at(1, 1) = 1; M.at(1, 2) = 1;
    M.at(2, 0) = 1; M.at(2, 2) = 1;
    CHECK(rank_of(M) == 2);
}

TEST_CASE("rref is canonical across bases of the same space") {
    Field F3(3, 1);
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 50; ++trial) {
        Matrix A = random_matrix(F3, 3, 6, rng);
        Matrix R1 = rref(A);
        // random row operations: multiply by a random invertible 3x3
        Matrix T(F3, 3, 3);
        do {
            for (auto& x : T.a) x = rng() % 3;
        } while (rank_of(T) != 3);
        Matrix R2 = rref(matmul(T, A));
        CHECK(R1 == R2);
        CHECK(rref(R1) == R1);  // idempotent
    }
}

TEST_CASE("kernel solves M x = 0 with the right dimension") {
    Field F2(2, 1);
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 50; ++trial) {
        Matrix M = random_matrix(F2, 3, 7, rng);
        Matrix K = kernel(M);
        CHECK(K.rows == 7 - rank_of(M));
        for (std::size_t r = 0; r < M.rows; ++r)
            for (std::size_t kr = 0; kr < K.rows; ++kr) {
                felem s = 0;
                for (std::size_t c = 0; c < 7; ++c)
                    s = F2.add(s, F2.mul(M.at(r, c), K.at(kr, c)));
                CHECK(s == 0);
            }
    }
}

TEST_CASE("Zassenhaus sum and intersection") {
    Field F2(2, 1);
    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 100; ++trial) {
        Matrix A = rref(random_matrix(F2, 5, 8, rng));
        Matrix B = rref(random_matrix(F2, 5, 8, rng));
        SumIntersect si = sum_and_intersection(A, B);
        // Grassmann identity
        CHECK(si.inter.rows + si.sum.rows == A.rows + B.rows);
        // intersection is contained in both
        CHECK(rank_of(stack(A, si.inter)) == A.rows);
        CHECK(rank_of(stack(B, si.inter)) == B.rows);
        // sum contains both
        CHECK(rank_of(stack(si.sum, A)) == si.sum.rows);
        CHECK(rank_of(stack(si.sum, B)) == si.sum.rows);
    }
    Matrix A = rref(random_matrix(F2, 4, 8, rng));
    CHECK(sum_and_intersection(A, A).inter == A);
    Matrix Z(F2, 0, 8);
    CHECK(sum_and_intersection(A, Z).inter.rows == 0);
}

TEST_CASE("flatten and unflatten") {
    auto t = FieldTower::make(2, 1, 2);
    // k = 1: flatten(x) = (0, 1)
    CHECK(flatten(*t, std::vector<felem>{2}) == std::vector<felem>{0, 1});
    CHECK(flatten(*t, std::vector<felem>{0, 0}) == std::vector<felem>{0, 0, 0, 0});
    CHECK(flatten(*t, std::vector<felem>{1, 0}) == std::vector<felem>{1, 0, 0, 0});

    auto t16 = FieldTower::make(2, 1, 4);
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<felem> v = {rng() % 16, rng() % 16, rng() % 16};
        auto fl = flatten(*t16, v);
        CHECK(unflatten(*t16, fl, 3) == v);
    }
    // F_q-linearity over an e = 2 tower: lambda in F_4
    auto t4 = FieldTower::make(2, 2, 2);
    const Field& big = t4->big();
    for (felem lam = 0; lam < 4; ++lam)
        for (int trial = 0; trial < 40; ++trial) {
            std::vector<felem> u = {rng() % 16, rng() % 16};
            std::vector<felem> v = {rng() % 16, rng() % 16};
            felem le = t4->embed_fq(lam);
            std::vector<felem> lin = {big.add(big.mul(le, u[0]), v[0]),
                                      big.add(big.mul(le, u[1]), v[1])};
            auto fu = flatten(*t4, u);
            auto fv = flatten(*t4, v);
            std::vector<felem> expect(fu.size());
            for (std::size_t i = 0; i < fu.size(); ++i)
                expect[i] = t4->fq().add(t4->fq().mul(lam, fu[i]), fv[i]);
            CHECK(flatten(*t4, lin) == expect);
        }
}
