#include "clubforge/fqlinalg.hpp"

#include <algorithm>

namespace clubforge {

std::vector<std::size_t> rref_in_place(Matrix& M) {
    const Field& F = *M.field;
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t col = 0; col < M.cols && row < M.rows; ++col) {
        std::size_t piv = row;
        while (piv < M.rows && M.at(piv, col) == 0) ++piv;
        if (piv == M.rows) continue;
        if (piv != row)
            for (std::size_t c = 0; c < M.cols; ++c) std::swap(M.at(piv, c), M.at(row, c));
        felem iv = F.inv(M.at(row, col));
        if (iv != 1)
            for (std::size_t c = col; c < M.cols; ++c) M.at(row, c) = F.mul(iv, M.at(row, c));
        for (std::size_t r = 0; r < M.rows; ++r) {
            if (r == row) continue;
            felem f = M.at(r, col);
            if (f == 0) continue;
            for (std::size_t c = col; c < M.cols; ++c)
                M.at(r, c) = F.sub(M.at(r, c), F.mul(f, M.at(row, c)));
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

Matrix rref(Matrix M, std::vector<std::size_t>* pivots) {
    std::vector<std::size_t> piv = rref_in_place(M);
    Matrix out(*M.field, piv.size(), M.cols);
    std::copy(M.a.begin(), M.a.begin() + static_cast<std::ptrdiff_t>(piv.size() * M.cols),
              out.a.begin());
    if (pivots) *pivots = std::move(piv);
    return out;
}

std::size_t rank_of(Matrix M) { return rref_in_place(M).size(); }

Matrix kernel(const Matrix& M) {
    Matrix R = M;
    std::vector<std::size_t> piv = rref_in_place(R);
    std::vector<bool> is_piv(M.cols, false);
    for (std::size_t c : piv) is_piv[c] = true;
    const Field& F = *M.field;
    std::size_t nfree = M.cols - piv.size();
    Matrix K(F, nfree, M.cols);
    std::size_t out = 0;
    for (std::size_t fc = 0; fc < M.cols; ++fc) {
        if (is_piv[fc]) continue;
        K.at(out, fc) = 1;
        for (std::size_t r = 0; r < piv.size(); ++r) K.at(out, piv[r]) = F.neg(R.at(r, fc));
        ++out;
    }
    return rref(std::move(K));
}

Matrix stack(const Matrix& A, const Matrix& B) {
    Matrix out(*A.field, A.rows + B.rows, A.cols);
    std::copy(A.a.begin(), A.a.end(), out.a.begin());
    std::copy(B.a.begin(), B.a.end(), out.a.begin() + static_cast<std::ptrdiff_t>(A.a.size()));
    return out;
}

Matrix matmul(const Matrix& A, const Matrix& B) {
    const Field& F = *A.field;
    Matrix out(F, A.rows, B.cols);
    for (std::size_t i = 0; i < A.rows; ++i)
        for (std::size_t t = 0; t < A.cols; ++t) {
            felem v = A.at(i, t);
            if (v == 0) continue;
            for (std::size_t j = 0; j < B.cols; ++j)
                out.at(i, j) = F.add(out.at(i, j), F.mul(v, B.at(t, j)));
        }
    return out;
}

SumIntersect sum_and_intersection(const Matrix& A, const Matrix& B) {
    if (A.cols != B.cols || !A.field->same(*B.field))
        fail("AmbientMismatch", "sum/intersection of spaces in different ambients");
    const Field& F = *A.field;
    const std::size_t n = A.cols;
    Matrix blk(F, A.rows + B.rows, 2 * n);
    for (std::size_t r = 0; r < A.rows; ++r)
        for (std::size_t c = 0; c < n; ++c) {
            blk.at(r, c) = A.at(r, c);
            blk.at(r, n + c) = A.at(r, c);
        }
    for (std::size_t r = 0; r < B.rows; ++r)
        for (std::size_t c = 0; c < n; ++c) blk.at(A.rows + r, c) = B.at(r, c);
    rref_in_place(blk);
    std::vector<std::size_t> sum_rows, int_rows;
    for (std::size_t r = 0; r < blk.rows; ++r) {
        bool left_zero = true, right_zero = true;
        for (std::size_t c = 0; c < n && left_zero; ++c)
            if (blk.at(r, c) != 0) left_zero = false;
        for (std::size_t c = 0; c < n && right_zero; ++c)
            if (blk.at(r, n + c) != 0) right_zero = false;
        if (!left_zero)
            sum_rows.push_back(r);
        else if (!right_zero)
            int_rows.push_back(r);
    }
    SumIntersect out{Matrix(F, sum_rows.size(), n), Matrix(F, int_rows.size(), n)};
    for (std::size_t i = 0; i < sum_rows.size(); ++i)
        for (std::size_t c = 0; c < n; ++c) out.sum.at(i, c) = blk.at(sum_rows[i], c);
    for (std::size_t i = 0; i < int_rows.size(); ++i)
        for (std::size_t c = 0; c < n; ++c) out.inter.at(i, c) = blk.at(int_rows[i], n + c);
    return out;
}

std::vector<felem> flatten(const FieldTower& tw, std::span<const felem> v) {
    const int m = tw.m();
    std::vector<felem> out(v.size() * static_cast<std::size_t>(m), 0);
    for (std::size_t t = 0; t < v.size(); ++t)
        tw.fq_coords(v[t], out.data() + t * static_cast<std::size_t>(m));
    return out;
}

std::vector<felem> unflatten(const FieldTower& tw, std::span<const felem> row, int k) {
    const int m = tw.m();
    if (row.size() != static_cast<std::size_t>(k) * static_cast<std::size_t>(m))
        fail("AmbientMismatch", "flat row length does not equal m*k");
    std::vector<felem> v(static_cast<std::size_t>(k), 0);
    for (int t = 0; t < k; ++t)
        v[static_cast<std::size_t>(t)] =
            tw.from_fq_coords(row.data() + static_cast<std::size_t>(t) * static_cast<std::size_t>(m));
    return v;
}

Matrix flatten_rows(const FieldTower& tw, const std::vector<std::vector<felem>>& vectors, int k) {
    const int m = tw.m();
    Matrix out(tw.fq(), vectors.size(), static_cast<std::size_t>(m) * static_cast<std::size_t>(k));
    for (std::size_t r = 0; r < vectors.size(); ++r) {
        if (static_cast<int>(vectors[r].size()) != k)
            fail("AmbientMismatch", "vector length does not equal k");
        std::vector<felem> flat = flatten(tw, vectors[r]);
        std::copy(flat.begin(), flat.end(), out.a.begin() + static_cast<std::ptrdiff_t>(r * out.cols));
    }
    return out;
}

}  // namespace clubforge
