#include "clubforge/field.hpp"

#include <algorithm>
#include <cstring>

namespace clubforge {

namespace {

// ---- F_p polynomial helpers (coefficients low degree first) ----

int pdeg(const std::vector<int>& a) {
    for (int i = static_cast<int>(a.size()) - 1; i >= 0; --i)
        if (a[i] != 0) return i;
    return -1;
}

std::vector<int> pmulmod(const std::vector<int>& a, const std::vector<int>& b,
                         const std::vector<int>& mod, std::uint64_t p) {
    const int d = static_cast<int>(mod.size()) - 1;
    std::vector<long long> acc(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (!a[i]) continue;
        for (std::size_t j = 0; j < b.size(); ++j)
            acc[i + j] = (acc[i + j] + static_cast<long long>(a[i]) * b[j]) % static_cast<long long>(p);
    }
    for (int i = static_cast<int>(acc.size()) - 1; i >= d; --i) {
        long long c = acc[i] % static_cast<long long>(p);
        if (!c) continue;
        for (int j = 0; j <= d; ++j)
            acc[i - d + j] = ((acc[i - d + j] - c * mod[j]) % static_cast<long long>(p) +
                              static_cast<long long>(p) * p) % static_cast<long long>(p);
    }
    std::vector<int> out(d, 0);
    for (int i = 0; i < d && i < static_cast<int>(acc.size()); ++i)
        out[i] = static_cast<int>(acc[i] % static_cast<long long>(p));
    return out;
}

std::uint64_t modpow_u64(std::uint64_t b, std::uint64_t e, std::uint64_t mod) {
    unsigned __int128 r = 1, bb = b % mod;
    while (e) {
        if (e & 1) r = r * bb % mod;
        bb = bb * bb % mod;
        e >>= 1;
    }
    return static_cast<std::uint64_t>(r);
}

int inv_mod_p(int a, std::uint64_t p) {
    return static_cast<int>(modpow_u64(static_cast<std::uint64_t>(a), p - 2, p));
}

std::vector<int> pgcd(std::vector<int> a, std::vector<int> b, std::uint64_t p) {
    while (true) {
        int db = pdeg(b);
        if (db < 0) return a;
        int da = pdeg(a);
        if (da < db) {
            std::swap(a, b);
            continue;
        }
        int inv = inv_mod_p(b[db], p);
        while (da >= db) {
            long long c = static_cast<long long>(a[da]) * inv % static_cast<long long>(p);
            if (c) {
                for (int j = 0; j <= db; ++j)
                    a[da - db + j] = static_cast<int>(((a[da - db + j] - c * b[j]) %
                                                       static_cast<long long>(p) +
                                                       static_cast<long long>(p) * p) %
                                                      static_cast<long long>(p));
            }
            da = pdeg(a);
        }
        std::swap(a, b);
    }
}

// x^(p^reps) mod f by repeated p-th powering.
std::vector<int> frobenius_power_of_x(const std::vector<int>& mod, std::uint64_t p, int reps) {
    const int d = static_cast<int>(mod.size()) - 1;
    std::vector<int> cur(d, 0);
    if (d == 1) {
        // x == -mod[0]
        cur[0] = static_cast<int>((p - static_cast<std::uint64_t>(mod[0]) % p) % p);
    } else {
        cur[1] = 1;
    }
    for (int r = 0; r < reps; ++r) {
        std::vector<int> acc(d, 0);
        acc[0] = 1;
        std::vector<int> base = cur;
        std::uint64_t e = p;
        while (e) {
            if (e & 1) acc = pmulmod(acc, base, mod, p);
            base = pmulmod(base, base, mod, p);
            e >>= 1;
        }
        cur = acc;
    }
    return cur;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            out.push_back(d);
            while (n % d == 0) n /= d;
        }
    }
    if (n > 1) out.push_back(n);
    return out;
}

// Rabin: f of degree d is irreducible over F_p iff x^{p^d} == x (mod f) and
// gcd(x^{p^{d/r}} - x, f) == 1 for every prime r | d.
bool is_irreducible(const std::vector<int>& mod, std::uint64_t p) {
    const int d = static_cast<int>(mod.size()) - 1;
    if (d < 1) return false;
    std::vector<int> x(d, 0);
    if (d == 1) {
        return true;  // monic degree 1 is always irreducible
    }
    x[1] = 1;
    std::vector<int> xpd = frobenius_power_of_x(mod, p, d);
    if (xpd != x) return false;
    for (std::uint64_t r : prime_factors(static_cast<std::uint64_t>(d))) {
        std::vector<int> xr = frobenius_power_of_x(mod, p, d / static_cast<int>(r));
        std::vector<int> diff(d, 0);
        for (int i = 0; i < d; ++i)
            diff[i] = static_cast<int>(((xr[i] - x[i]) % static_cast<long long>(p) +
                                        static_cast<long long>(p)) % static_cast<long long>(p));
        std::vector<int> g = pgcd(diff, mod, p);
        if (pdeg(g) != 0) return false;
    }
    return true;
}

std::vector<int> canonical_modulus(std::uint64_t p, int d) {
    // Scan the non-leading coefficient block by ascending integer encoding;
    // the full-polynomial encoding order agrees since the leading term is fixed.
    std::uint64_t count = 1;
    for (int i = 0; i < d; ++i) count *= p;
    for (std::uint64_t low = 0; low < count; ++low) {
        std::vector<int> mod(d + 1, 0);
        std::uint64_t v = low;
        for (int i = 0; i < d; ++i) {
            mod[i] = static_cast<int>(v % p);
            v /= p;
        }
        mod[d] = 1;
        if (is_irreducible(mod, p)) return mod;
    }
    fail("InternalError", "no irreducible polynomial found");
}

std::uint64_t checked_pow_size(std::uint64_t p, int d) {
    std::uint64_t n = 1;
    for (int i = 0; i < d; ++i) {
        if (n > (1ull << 62) / p) fail("SizeBudgetExceeded", "field size exceeds 2^62");
        n *= p;
    }
    return n;
}

}  // namespace

bool is_prime_u64(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

Field::Field(std::uint64_t p, int degree) : p_(p), d_(degree) {
    if (!is_prime_u64(p)) fail("NotPrime", "p = " + std::to_string(p) + " is not prime");
    if (degree < 1) fail("ParameterViolation", "field degree must be positive");
    n_ = checked_pow_size(p, degree);
    modulus_ = canonical_modulus(p, degree);
    init();
}

Field::Field(std::uint64_t p, std::vector<int> modulus) : p_(p), modulus_(std::move(modulus)) {
    if (!is_prime_u64(p)) fail("NotPrime", "p = " + std::to_string(p) + " is not prime");
    d_ = static_cast<int>(modulus_.size()) - 1;
    if (d_ < 1 || modulus_[d_] != 1)
        fail("ValidationError", "modulus must be monic of positive degree");
    for (int c : modulus_)
        if (c < 0 || static_cast<std::uint64_t>(c) >= p_)
            fail("ValidationError", "modulus coefficient out of range");
    if (!is_irreducible(modulus_, p_))
        fail("ValidationError", "modulus is not irreducible over F_p");
    n_ = checked_pow_size(p, d_);
    init();
}

void Field::init() {
    if (n_ > kTableCap) return;
    // Find a multiplicative generator by ascending encoding.
    const std::uint64_t order = n_ - 1;
    std::vector<std::uint64_t> pf = prime_factors(order);
    for (felem g = (n_ == 2 ? 1 : 2); g < n_; ++g) {
        bool ok = true;
        for (std::uint64_t r : pf) {
            felem t = 1, b = g;
            std::uint64_t e = order / r;
            while (e) {
                if (e & 1) t = mul_poly(t, b);
                b = mul_poly(b, b);
                e >>= 1;
            }
            if (t == 1) {
                ok = false;
                break;
            }
        }
        if (ok) {
            generator_ = g;
            break;
        }
    }
    exp_.resize(order);
    log_.assign(n_, 0);
    felem cur = 1;
    for (std::uint64_t i = 0; i < order; ++i) {
        exp_[i] = static_cast<std::uint32_t>(cur);
        log_[cur] = static_cast<std::uint32_t>(i);
        cur = mul_poly(cur, generator_);
    }
    tabled_ = true;
}

felem Field::add(felem a, felem b) const {
    if (p_ == 2) return a ^ b;
    felem out = 0, mult = 1;
    for (int i = 0; i < d_; ++i) {
        std::uint64_t da = a % p_, db = b % p_;
        a /= p_;
        b /= p_;
        out += ((da + db) % p_) * mult;
        mult *= p_;
    }
    return out;
}

felem Field::neg(felem a) const {
    if (p_ == 2) return a;
    felem out = 0, mult = 1;
    for (int i = 0; i < d_; ++i) {
        std::uint64_t da = a % p_;
        a /= p_;
        out += ((p_ - da) % p_) * mult;
        mult *= p_;
    }
    return out;
}

felem Field::sub(felem a, felem b) const {
    if (p_ == 2) return a ^ b;
    return add(a, neg(b));
}

felem Field::smul(std::uint64_t c, felem a) const {
    c %= p_;
    if (p_ == 2) return c ? a : 0;
    felem out = 0, mult = 1;
    for (int i = 0; i < d_; ++i) {
        std::uint64_t da = a % p_;
        a /= p_;
        out += (da * c % p_) * mult;
        mult *= p_;
    }
    return out;
}

felem Field::mul_poly(felem a, felem b) const {
    if (a == 0 || b == 0) return 0;
    int da[64], db[64];
    long long acc[128];
    std::memset(acc, 0, sizeof(long long) * (2 * d_));
    felem t = a;
    for (int i = 0; i < d_; ++i) {
        da[i] = static_cast<int>(t % p_);
        t /= p_;
    }
    t = b;
    for (int i = 0; i < d_; ++i) {
        db[i] = static_cast<int>(t % p_);
        t /= p_;
    }
    for (int i = 0; i < d_; ++i) {
        if (!da[i]) continue;
        for (int j = 0; j < d_; ++j)
            acc[i + j] += static_cast<long long>(da[i]) * db[j];
    }
    const long long pp = static_cast<long long>(p_);
    for (int i = 2 * d_ - 2; i >= d_; --i) {
        long long c = acc[i] % pp;
        if (c < 0) c += pp;
        if (!c) continue;
        for (int j = 0; j < d_; ++j) acc[i - d_ + j] -= c * modulus_[j];
        acc[i] = 0;
    }
    felem out = 0, mult = 1;
    for (int i = 0; i < d_; ++i) {
        long long c = acc[i] % pp;
        if (c < 0) c += pp;
        out += static_cast<felem>(c) * mult;
        mult *= p_;
    }
    return out;
}

felem Field::mul(felem a, felem b) const {
    if (!tabled_) return mul_poly(a, b);
    if (a == 0 || b == 0) return 0;
    std::uint64_t s = log_[a] + log_[b];
    const std::uint64_t order = n_ - 1;
    if (s >= order) s -= order;
    return exp_[s];
}

felem Field::inv_poly(felem a) const {
    // extended Euclid on (a, modulus)
    std::vector<int> r0 = digits(a);
    std::vector<int> r1 = modulus_;
    r0.resize(d_ + 1, 0);
    std::vector<int> s0(d_ + 1, 0), s1(d_ + 1, 0);
    s0[0] = 1;
    while (true) {
        int d1 = pdeg(r1);
        if (d1 < 0) break;
        int d0 = pdeg(r0);
        if (d0 < d1) {
            std::swap(r0, r1);
            std::swap(s0, s1);
            continue;
        }
        int inv = inv_mod_p(r1[d1], p_);
        while (d0 >= d1) {
            long long c = static_cast<long long>(r0[d0]) * inv % static_cast<long long>(p_);
            if (c) {
                for (int j = 0; j <= d1; ++j)
                    r0[d0 - d1 + j] = static_cast<int>(((r0[d0 - d1 + j] - c * r1[j]) %
                                                        static_cast<long long>(p_) +
                                                        static_cast<long long>(p_) * p_) %
                                                       static_cast<long long>(p_));
                for (int j = 0; j <= d_ - (d0 - d1); ++j)
                    s0[d0 - d1 + j] = static_cast<int>(((s0[d0 - d1 + j] - c * s1[j]) %
                                                        static_cast<long long>(p_) +
                                                        static_cast<long long>(p_) * p_) %
                                                       static_cast<long long>(p_));
            }
            d0 = pdeg(r0);
        }
        std::swap(r0, r1);
        std::swap(s0, s1);
    }
    // r0 is now the gcd (a nonzero constant), s0 the cofactor
    int c = inv_mod_p(r0[0], p_);
    std::vector<int> out(d_, 0);
    for (int i = 0; i < d_; ++i)
        out[i] = static_cast<int>(static_cast<long long>(s0[i]) * c % static_cast<long long>(p_));
    return from_digits(out);
}

felem Field::inv(felem a) const {
    if (a == 0) fail("DivisionByZero", "inverse of zero");
    if (!tabled_) return inv_poly(a);
    const std::uint64_t order = n_ - 1;
    std::uint64_t l = log_[a];
    return exp_[(order - l) % order];
}

felem Field::div(felem a, felem b) const {
    if (b == 0) fail("DivisionByZero", "division by zero");
    return mul(a, inv(b));
}

felem Field::pow(felem a, std::uint64_t e) const {
    if (tabled_) {
        if (a == 0) return e == 0 ? 1 : 0;
        const std::uint64_t order = n_ - 1;
        unsigned __int128 s = static_cast<unsigned __int128>(log_[a]) * (e % order);
        return exp_[static_cast<std::uint64_t>(s % order)];
    }
    felem r = 1, b = a;
    while (e) {
        if (e & 1) r = mul(r, b);
        b = mul(b, b);
        e >>= 1;
    }
    return r;
}

std::vector<int> Field::digits(felem a) const {
    std::vector<int> out(d_, 0);
    for (int i = 0; i < d_; ++i) {
        out[i] = static_cast<int>(a % p_);
        a /= p_;
    }
    return out;
}

felem Field::from_digits(const std::vector<int>& digs) const {
    felem out = 0;
    for (int i = static_cast<int>(digs.size()) - 1; i >= 0; --i) out = out * p_ + digs[i];
    return out;
}

// ---------------------------------------------------------------------------
// FieldTower
// ---------------------------------------------------------------------------

FieldTower::FieldTower(std::uint64_t p, int e, int m, Field big)
    : p_(p), e_(e), m_(m), big_(std::move(big)), fq_(p, e) {
    q_ = 1;
    for (int i = 0; i < e; ++i) q_ *= p;

    // Embed the companion GF(p^e) into the big field: send the companion's
    // residue class y to the smallest root of the companion modulus among
    // the F_q elements of the big field.
    felem eps = 0;
    if (e_ == 1) {
        eps = 0;  // unused; embedding is c -> c
        embed_.resize(q_);
        for (felem c = 0; c < q_; ++c) embed_[c] = c;
    } else {
        felem root = 0;
        bool found = false;
        for (felem a : subfield_elements_of_big(1)) {
            // evaluate companion modulus at a
            felem acc = 0, pw = 1;
            for (int j = 0; j <= e_; ++j) {
                acc = big_.add(acc, big_.smul(static_cast<std::uint64_t>(fq_.modulus()[j]), pw));
                pw = big_.mul(pw, a);
            }
            if (acc == 0) {
                root = a;
                found = true;
                break;
            }
        }
        if (!found) fail("InternalError", "companion modulus has no root in the subfield");
        eps = root;
        embed_.resize(q_);
        for (felem c = 0; c < q_; ++c) {
            // c encodes sum t_i y^i; image is sum t_i eps^i
            felem img = 0, pw = 1, v = c;
            for (int i = 0; i < e_; ++i) {
                img = big_.add(img, big_.smul(v % p_, pw));
                v /= p_;
                pw = big_.mul(pw, eps);
            }
            embed_[c] = img;
        }
    }
    project_.reserve(q_ * 2);
    for (felem c = 0; c < q_; ++c) project_[embed_[c]] = c;

    xpow_.resize(m_);
    const int d = e_ * m_;
    felem x = (d == 1) ? big_.from_digits({static_cast<int>((p_ - big_.modulus()[0] % p_) % p_)})
                       : big_.from_digits([&] {
                             std::vector<int> v(d, 0);
                             v[1] = 1;
                             return v;
                         }());
    xpow_[0] = 1;
    for (int j = 1; j < m_; ++j) xpow_[j] = big_.mul(xpow_[j - 1], x);

    if (e_ == 1) {
        trivial_coords_ = true;
    } else {
        trivial_coords_ = false;
        // Product basis beta_i x^j over F_p; solve digits = B * coords, store B^{-1}.
        std::vector<int> B(static_cast<std::size_t>(d) * d, 0);  // column (j*e+i) = digits(beta_i x^j)
        for (int j = 0; j < m_; ++j) {
            for (int i = 0; i < e_; ++i) {
                felem beta = (i == 0) ? 1 : big_.pow(eps, static_cast<std::uint64_t>(i));
                felem el = big_.mul(beta, xpow_[j]);
                std::vector<int> dg = big_.digits(el);
                for (int r = 0; r < d; ++r) B[static_cast<std::size_t>(r) * d + (j * e_ + i)] = dg[r];
            }
        }
        // invert B over F_p with Gauss-Jordan
        std::vector<int> A(B);
        std::vector<int> I(static_cast<std::size_t>(d) * d, 0);
        for (int r = 0; r < d; ++r) I[static_cast<std::size_t>(r) * d + r] = 1;
        for (int col = 0, row = 0; col < d && row < d; ++col) {
            int piv = -1;
            for (int r = row; r < d; ++r)
                if (A[static_cast<std::size_t>(r) * d + col]) {
                    piv = r;
                    break;
                }
            if (piv < 0) fail("InternalError", "product basis is singular");
            for (int c = 0; c < d; ++c) {
                std::swap(A[static_cast<std::size_t>(piv) * d + c], A[static_cast<std::size_t>(row) * d + c]);
                std::swap(I[static_cast<std::size_t>(piv) * d + c], I[static_cast<std::size_t>(row) * d + c]);
            }
            long long ip = inv_mod_p(A[static_cast<std::size_t>(row) * d + col], p_);
            for (int c = 0; c < d; ++c) {
                A[static_cast<std::size_t>(row) * d + c] =
                    static_cast<int>(A[static_cast<std::size_t>(row) * d + c] * ip % static_cast<long long>(p_));
                I[static_cast<std::size_t>(row) * d + c] =
                    static_cast<int>(I[static_cast<std::size_t>(row) * d + c] * ip % static_cast<long long>(p_));
            }
            for (int r = 0; r < d; ++r) {
                if (r == row) continue;
                long long f = A[static_cast<std::size_t>(r) * d + col];
                if (!f) continue;
                for (int c = 0; c < d; ++c) {
                    A[static_cast<std::size_t>(r) * d + c] = static_cast<int>(
                        ((A[static_cast<std::size_t>(r) * d + c] -
                          f * A[static_cast<std::size_t>(row) * d + c]) % static_cast<long long>(p_) +
                         static_cast<long long>(p_)) % static_cast<long long>(p_));
                    I[static_cast<std::size_t>(r) * d + c] = static_cast<int>(
                        ((I[static_cast<std::size_t>(r) * d + c] -
                          f * I[static_cast<std::size_t>(row) * d + c]) % static_cast<long long>(p_) +
                         static_cast<long long>(p_)) % static_cast<long long>(p_));
                }
            }
            ++row;
        }
        coord_matrix_ = std::move(I);
    }
}

std::vector<felem> FieldTower::subfield_elements_of_big(int l) const {
    // Kernel of a -> a^{q^l} - a as an F_p-linear map on the big field.
    const int d = e_ * m_;
    std::vector<std::vector<int>> rows;  // equations, one per output digit
    std::vector<std::vector<int>> img(d);
    for (int t = 0; t < d; ++t) {
        std::vector<int> basis_digits(d, 0);
        basis_digits[t] = 1;
        felem bt = big_.from_digits(basis_digits);
        felem ft = big_.sub(pow_q(bt, l), bt);
        img[t] = big_.digits(ft);
    }
    // matrix M with M[r][t] = img[t][r]; kernel over F_p
    std::vector<std::vector<int>> M(d, std::vector<int>(d, 0));
    for (int r = 0; r < d; ++r)
        for (int t = 0; t < d; ++t) M[r][t] = img[t][r];
    // gaussian elimination
    std::vector<int> pivots;
    int row = 0;
    for (int col = 0; col < d && row < d; ++col) {
        int piv = -1;
        for (int r = row; r < d; ++r)
            if (M[r][col]) {
                piv = r;
                break;
            }
        if (piv < 0) continue;
        std::swap(M[piv], M[row]);
        long long ip = inv_mod_p(M[row][col], p_);
        for (int c = 0; c < d; ++c)
            M[row][c] = static_cast<int>(M[row][c] * ip % static_cast<long long>(p_));
        for (int r = 0; r < d; ++r) {
            if (r == row || !M[r][col]) continue;
            long long f = M[r][col];
            for (int c = 0; c < d; ++c)
                M[r][c] = static_cast<int>(((M[r][c] - f * M[row][c]) % static_cast<long long>(p_) +
                                            static_cast<long long>(p_)) % static_cast<long long>(p_));
        }
        pivots.push_back(col);
        ++row;
    }
    std::vector<int> free_cols;
    for (int c = 0; c < d; ++c)
        if (std::find(pivots.begin(), pivots.end(), c) == pivots.end()) free_cols.push_back(c);
    // kernel basis -> enumerate all F_p combinations
    std::vector<felem> kernel_basis;
    for (int fc : free_cols) {
        std::vector<int> v(d, 0);
        v[fc] = 1;
        for (std::size_t r = 0; r < pivots.size(); ++r)
            v[pivots[r]] = static_cast<int>((p_ - static_cast<std::uint64_t>(M[r][fc]) % p_) % p_);
        kernel_basis.push_back(big_.from_digits(v));
    }
    std::vector<felem> out;
    std::uint64_t total = 1;
    for (std::size_t i = 0; i < kernel_basis.size(); ++i) total *= p_;
    out.reserve(total);
    for (std::uint64_t idx = 0; idx < total; ++idx) {
        felem acc = 0;
        std::uint64_t v = idx;
        for (felem kb : kernel_basis) {
            std::uint64_t c = v % p_;
            v /= p_;
            if (c) acc = big_.add(acc, big_.smul(c, kb));
        }
        out.push_back(acc);
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::shared_ptr<const FieldTower> FieldTower::make(std::uint64_t p, int e, int m,
                                                   std::uint64_t size_cap) {
    if (!is_prime_u64(p)) fail("NotPrime", "p = " + std::to_string(p) + " is not prime");
    if (e < 1 || m < 1) fail("ParameterViolation", "e and m must be positive");
    std::uint64_t n = 1;
    for (int i = 0; i < e * m; ++i) {
        if (n > size_cap / p)
            fail("SizeBudgetExceeded",
                 "p^(e*m) exceeds the configured size cap " + std::to_string(size_cap));
        n *= p;
    }
    Field big(p, e * m);
    return std::shared_ptr<const FieldTower>(new FieldTower(p, e, m, std::move(big)));
}

std::shared_ptr<const FieldTower> FieldTower::from_modulus(std::uint64_t p, int e, int m,
                                                           std::vector<int> modulus) {
    if (!is_prime_u64(p)) fail("NotPrime", "p = " + std::to_string(p) + " is not prime");
    if (e < 1 || m < 1) fail("ParameterViolation", "e and m must be positive");
    if (static_cast<int>(modulus.size()) != e * m + 1)
        fail("ValidationError", "modulus degree does not match e*m");
    Field big(p, std::move(modulus));
    return std::shared_ptr<const FieldTower>(new FieldTower(p, e, m, std::move(big)));
}

felem FieldTower::pow_q(felem a, long j) const {
    if (a == 0 || a == 1) return a;
    long jm = j % m_;
    if (jm < 0) jm += m_;
    int reps = static_cast<int>(jm) * e_;
    felem out = a;
    for (int r = 0; r < reps; ++r) out = big_.frob(out);
    return out;
}

felem FieldTower::rel_trace(felem a, int l) const {
    if (l < 1 || m_ % l != 0) fail("NotADivisor", "l must divide m");
    felem acc = 0;
    felem cur = a;
    for (int j = 0; j < m_ / l; ++j) {
        acc = big_.add(acc, cur);
        cur = pow_q(cur, l);
    }
    return acc;
}

felem FieldTower::rel_norm(felem a, int l) const {
    if (l < 1 || m_ % l != 0) fail("NotADivisor", "l must divide m");
    felem acc = 1;
    felem cur = a;
    for (int j = 0; j < m_ / l; ++j) {
        acc = big_.mul(acc, cur);
        cur = pow_q(cur, l);
    }
    return acc;
}

std::vector<felem> FieldTower::subfield_elements(int l) const {
    if (l < 1 || m_ % l != 0) fail("NotADivisor", "l must divide m");
    return subfield_elements_of_big(l);
}

felem FieldTower::x_power(int j) const { return xpow_[static_cast<std::size_t>(j)]; }

felem FieldTower::embed_fq(felem sub) const {
    if (sub >= q_) fail("ValidationError", "companion encoding out of range");
    return embed_[sub];
}

felem FieldTower::project_fq(felem big) const {
    auto it = project_.find(big);
    if (it == project_.end())
        fail("BasisExpansionFailure", "element does not lie in the F_q subfield");
    return it->second;
}

void FieldTower::fq_coords(felem a, felem* out) const {
    if (trivial_coords_) {
        for (int j = 0; j < m_; ++j) {
            out[j] = a % p_;
            a /= p_;
        }
        return;
    }
    const int d = e_ * m_;
    std::vector<int> dg = big_.digits(a);
    for (int j = 0; j < m_; ++j) {
        felem enc = 0;
        for (int i = e_ - 1; i >= 0; --i) {
            long long acc = 0;
            const int r = j * e_ + i;
            for (int c = 0; c < d; ++c)
                acc += static_cast<long long>(coord_matrix_[static_cast<std::size_t>(r) * d + c]) * dg[c];
            enc = enc * p_ + static_cast<felem>(acc % static_cast<long long>(p_));
        }
        out[j] = enc;
    }
}

felem FieldTower::from_fq_coords(const felem* coords) const {
    felem acc = 0;
    for (int j = 0; j < m_; ++j) {
        if (coords[j] == 0) continue;
        acc = big_.add(acc, big_.mul(embed_fq(coords[j]), xpow_[j]));
    }
    return acc;
}

}  // namespace clubforge
