#ifndef CLUBFORGE_FIELD_HPP
#define CLUBFORGE_FIELD_HPP

#include <cstdint>
#include <memory>
#include <unordered_map>
#include <vector>

#include "clubforge/error.hpp"

namespace clubforge {

using felem = std::uint64_t;

/// Exact arithmetic in GF(p^d). Elements are encoded as integers in
/// [0, p^d): the base-p digits of the encoding, least significant first,
/// are the coefficients of the residue polynomial.
///
/// Fields up to kTableCap elements use exp/log tables over a primitive
/// element; larger fields fall back to on-the-fly polynomial arithmetic.
class Field {
  public:
    static constexpr std::uint64_t kTableCap = 1ull << 20;

    /// Canonical field: modulus is the monic irreducible of degree d over
    /// F_p with the smallest integer encoding (equivalently, smallest when
    /// coefficient sequences are compared from the leading end down).
    Field(std::uint64_t p, int degree);

    /// Explicit modulus, low degree first, length degree+1, monic.
    /// Verified irreducible over F_p (Rabin test).
    Field(std::uint64_t p, std::vector<int> modulus);

    std::uint64_t p() const noexcept { return p_; }
    int degree() const noexcept { return d_; }
    std::uint64_t size() const noexcept { return n_; }
    const std::vector<int>& modulus() const noexcept { return modulus_; }
    bool tabled() const noexcept { return tabled_; }

    bool is_valid(felem a) const noexcept { return a < n_; }

    felem add(felem a, felem b) const;
    felem sub(felem a, felem b) const;
    felem neg(felem a) const;
    felem mul(felem a, felem b) const;
    felem inv(felem a) const;           // DivisionByZero on 0
    felem div(felem a, felem b) const;  // DivisionByZero on b == 0
    felem pow(felem a, std::uint64_t e) const;
    felem frob(felem a) const { return pow(a, p_); }  // a^p

    /// Scalar multiple by a prime-field scalar c in [0, p).
    felem smul(std::uint64_t c, felem a) const;

    std::vector<int> digits(felem a) const;
    felem from_digits(const std::vector<int>& digs) const;

    bool same(const Field& o) const noexcept {
        return p_ == o.p_ && modulus_ == o.modulus_;
    }

  private:
    void init();
    felem mul_poly(felem a, felem b) const;
    felem inv_poly(felem a) const;

    std::uint64_t p_ = 0;
    int d_ = 0;
    std::uint64_t n_ = 0;  // p^d
    std::vector<int> modulus_;
    bool tabled_ = false;
    felem generator_ = 0;
    std::vector<std::uint32_t> exp_;  // exp_[i] = g^i, i in [0, n-1)
    std::vector<std::uint32_t> log_;  // log_[a] for a != 0
};

/// The subfield chain F_p c F_q = GF(p^e) c F_{q^m} = GF(p^{e*m}).
///
/// The big field is GF(p^{em}) with the canonical modulus; x denotes the
/// residue class of that modulus, and {1, x, ..., x^{m-1}} is the fixed
/// F_q-basis of F_{q^m}. F_q lives twice: as the subset of the big field
/// fixed by a -> a^q, and as a standalone companion GF(p^e) used as the
/// scalar field for flattened linear algebra. embed_fq/project_fq move
/// between the two along a fixed field embedding.
class FieldTower {
  public:
    static std::shared_ptr<const FieldTower> make(std::uint64_t p, int e, int m,
                                                  std::uint64_t size_cap = kDefaultSizeCap);
    /// Rebuild from a serialized descriptor; the modulus is verified
    /// irreducible of degree e*m but need not be the canonical one.
    static std::shared_ptr<const FieldTower> from_modulus(std::uint64_t p, int e, int m,
                                                          std::vector<int> modulus);

    static constexpr std::uint64_t kDefaultSizeCap = 1ull << 26;

    const Field& big() const noexcept { return big_; }
    const Field& fq() const noexcept { return fq_; }

    std::uint64_t p() const noexcept { return p_; }
    int e() const noexcept { return e_; }
    int m() const noexcept { return m_; }
    std::uint64_t q() const noexcept { return q_; }

    /// a^{q^j}; j is reduced mod m.
    felem pow_q(felem a, long j) const;

    /// Relative trace from F_{q^m} down to F_{q^l}; l must divide m.
    felem rel_trace(felem a, int l = 1) const;
    /// Relative norm from F_{q^m} down to F_{q^l}; l must divide m.
    felem rel_norm(felem a, int l = 1) const;

    /// The q^l elements of the intermediate field F_{q^l}, ascending
    /// encodings; l must divide m.
    std::vector<felem> subfield_elements(int l) const;

    felem x_power(int j) const;         // x^j, 0 <= j < m
    felem embed_fq(felem sub) const;    // companion GF(p^e) -> big
    felem project_fq(felem big) const;  // big -> companion; element must lie in F_q

    /// Expansion of a over the basis {1, x, ..., x^{m-1}} with F_q
    /// coefficients, written as companion-field encodings.
    void fq_coords(felem a, felem* out) const;
    felem from_fq_coords(const felem* coords) const;

    bool same(const FieldTower& o) const noexcept {
        return p_ == o.p_ && e_ == o.e_ && m_ == o.m_ && big_.modulus() == o.big_.modulus();
    }

  private:
    FieldTower(std::uint64_t p, int e, int m, Field big);
    std::vector<felem> subfield_elements_of_big(int l) const;

    std::uint64_t p_ = 0, q_ = 0;
    int e_ = 0, m_ = 0;
    Field big_;
    Field fq_;
    std::vector<felem> embed_;                       // companion encoding -> big encoding
    std::unordered_map<felem, felem> project_;       // inverse of embed_
    std::vector<felem> xpow_;                        // x^j
    // Change of basis between the F_p power basis of the big field and the
    // product basis {beta_i x^j}; identity when e == 1.
    bool trivial_coords_ = true;
    std::vector<int> coord_matrix_;  // (em)x(em) over F_p, row-major, maps digits -> product-basis coords
};

/// Primality by trial division; used to validate tower parameters.
bool is_prime_u64(std::uint64_t n);

}  // namespace clubforge

#endif
