#ifndef CLUBFORGE_FQLINALG_HPP
#define CLUBFORGE_FQLINALG_HPP

#include <cstddef>
#include <span>
#include <vector>

#include "clubforge/field.hpp"

namespace clubforge {

/// Dense row-major matrix over a single GF(p^d). The field is held by
/// non-owning pointer; callers keep it alive (towers own theirs).
struct Matrix {
    const Field* field = nullptr;
    std::size_t rows = 0, cols = 0;
    std::vector<felem> a;

    Matrix() = default;
    Matrix(const Field& f, std::size_t r, std::size_t c)
        : field(&f), rows(r), cols(c), a(r * c, 0) {}

    felem& at(std::size_t r, std::size_t c) { return a[r * cols + c]; }
    felem at(std::size_t r, std::size_t c) const { return a[r * cols + c]; }
    std::span<const felem> row(std::size_t r) const { return {a.data() + r * cols, cols}; }
    std::span<felem> row(std::size_t r) { return {a.data() + r * cols, cols}; }

    bool operator==(const Matrix& o) const {
        return rows == o.rows && cols == o.cols && a == o.a;
    }
};

/// In-place reduced row echelon form; deterministic pivoting (first nonzero
/// entry, leftmost column). Returns pivot column indices. Zero rows sink to
/// the bottom and are kept.
std::vector<std::size_t> rref_in_place(Matrix& M);

/// Canonical RREF: zero rows removed. Two bases of the same row space give
/// the identical matrix.
Matrix rref(Matrix M, std::vector<std::size_t>* pivots = nullptr);

std::size_t rank_of(Matrix M);

/// Canonical basis (RREF rows) of the right null space {x : M x = 0}.
Matrix kernel(const Matrix& M);

Matrix stack(const Matrix& A, const Matrix& B);

Matrix matmul(const Matrix& A, const Matrix& B);

struct SumIntersect {
    Matrix sum;    // canonical basis of rowspace(A) + rowspace(B)
    Matrix inter;  // canonical basis of rowspace(A) ∩ rowspace(B)
};

/// Zassenhaus sum/intersection of two row spaces in the same ambient.
SumIntersect sum_and_intersection(const Matrix& A, const Matrix& B);

// ---- flattening F_{q^m}^k ≅ F_q^{mk} ----
//
// Layout: coordinate t of a vector occupies columns [t*m, (t+1)*m); the
// entry at offset j is the F_q-coefficient of x^j, as a companion-field
// encoding.

std::vector<felem> flatten(const FieldTower& tw, std::span<const felem> v);
std::vector<felem> unflatten(const FieldTower& tw, std::span<const felem> row, int k);

/// Flatten a list of vectors into a matrix over the companion field.
Matrix flatten_rows(const FieldTower& tw, const std::vector<std::vector<felem>>& vectors, int k);

}  // namespace clubforge

#endif
