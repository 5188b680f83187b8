#include "clubforge/linset.hpp"

#include <gmpxx.h>

#include <algorithm>
#include <unordered_map>

#include "clubforge/parallel.hpp"

namespace clubforge {

namespace {

struct VecHash {
    std::size_t operator()(const std::vector<felem>& v) const noexcept {
        std::size_t h = 1469598103934665603ull;
        for (felem x : v) {
            h ^= static_cast<std::size_t>(x) + 0x9e3779b97f4a7c15ull;
            h *= 1099511628211ull;
        }
        return h;
    }
};

felem dot_big(const Field& F, std::span<const felem> a, std::span<const felem> b) {
    felem s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s = F.add(s, F.mul(a[i], b[i]));
    return s;
}

mpz_class pow_mpz(std::uint64_t base, int exp) {
    mpz_class out;
    mpz_ui_pow_ui(out.get_mpz_t(), base, static_cast<unsigned long>(exp));
    return out;
}

// dim of a count of the form q^w - 1
int weight_from_count(std::uint64_t count, std::uint64_t q) {
    std::uint64_t x = count + 1;
    int w = 0;
    while (x > 1) {
        if (x % q != 0) fail("InternalError", "point multiplicity is not q^w - 1");
        x /= q;
        ++w;
    }
    return w;
}

void classify(LinearSetReport& rep) {
    rep.size = 0;
    for (auto& [w, c] : rep.census) rep.size += c;
    const auto& census = rep.census;
    if (census.empty() || (census.size() == 1 && census.begin()->first == 1)) {
        rep.kind = LinearSetReport::Kind::Scattered;
        return;
    }
    auto top = census.rbegin();
    bool single_heavy = top->first >= 2 && top->second == 1;
    bool rest_ok = census.size() == 1 || (census.size() == 2 && census.begin()->first == 1);
    if (single_heavy && rest_ok) {
        rep.kind = LinearSetReport::Kind::Club;
        rep.club_index = top->first;
        return;
    }
    rep.kind = LinearSetReport::Kind::Other;
}

}  // namespace

std::string LinearSetReport::classification_string() const {
    switch (kind) {
        case Kind::Scattered:
            return "scattered";
        case Kind::Club:
            return "club(" + std::to_string(club_index) + ")";
        case Kind::Other:
            return "other";
    }
    return "other";
}

ProjectivePoint make_point(const FieldTower& tw, std::vector<felem> v) {
    const Field& F = tw.big();
    for (felem x : v)
        if (!F.is_valid(x)) fail("ValidationError", "coordinate out of field range");
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (v[i] != 0) {
            if (v[i] != 1) {
                felem iv = F.inv(v[i]);
                for (std::size_t j = i; j < v.size(); ++j) v[j] = F.mul(iv, v[j]);
            }
            return ProjectivePoint{std::move(v)};
        }
    }
    fail("ValidationError", "zero vector does not define a projective point");
}

SubspaceU::SubspaceU(std::shared_ptr<const FieldTower> tower, int k,
                     const std::vector<std::vector<felem>>& basis) {
    SubspaceU s = span(std::move(tower), k, basis);
    if (s.rank() != static_cast<int>(basis.size()))
        fail("DependentBasis", "basis vectors are not F_q-independent");
    *this = std::move(s);
}

SubspaceU SubspaceU::span(std::shared_ptr<const FieldTower> tower, int k,
                          const std::vector<std::vector<felem>>& vectors) {
    if (k < 1) fail("ParameterViolation", "ambient dimension k must be positive");
    Matrix flat = flatten_rows(*tower, vectors, k);
    return from_canonical_flat(std::move(tower), k, rref(std::move(flat)));
}

SubspaceU SubspaceU::from_canonical_flat(std::shared_ptr<const FieldTower> tower, int k,
                                         Matrix flat) {
    SubspaceU out;
    out.tower_ = std::move(tower);
    out.k_ = k;
    out.flat_ = std::move(flat);
    out.basis_.reserve(out.flat_.rows);
    for (std::size_t r = 0; r < out.flat_.rows; ++r)
        out.basis_.push_back(unflatten(*out.tower_, out.flat_.row(r), k));
    return out;
}

int point_weight(const SubspaceU& U, const ProjectivePoint& P) {
    const FieldTower& tw = U.tower();
    if (static_cast<int>(P.rep.size()) != U.k()) fail("AmbientMismatch", "point/subspace ambient differ");
    const int m = tw.m();
    const int n = U.rank();
    Matrix st(tw.fq(), static_cast<std::size_t>(n + m), U.flat().cols);
    std::copy(U.flat().a.begin(), U.flat().a.end(), st.a.begin());
    std::vector<felem> scaled(P.rep.size());
    for (int j = 0; j < m; ++j) {
        felem xj = tw.x_power(j);
        for (std::size_t t = 0; t < P.rep.size(); ++t) scaled[t] = tw.big().mul(xj, P.rep[t]);
        std::vector<felem> flat = flatten(tw, scaled);
        std::copy(flat.begin(), flat.end(),
                  st.a.begin() + static_cast<std::ptrdiff_t>((n + j) * static_cast<int>(st.cols)));
    }
    std::size_t r = rank_of(std::move(st));
    return n + m - static_cast<int>(r);
}

int subspace_weight(const SubspaceU& U, const std::vector<std::vector<felem>>& W) {
    const FieldTower& tw = U.tower();
    const int m = tw.m();
    const int n = U.rank();
    const int s = static_cast<int>(W.size());
    Matrix big(tw.big(), W.size(), static_cast<std::size_t>(U.k()));
    for (std::size_t r = 0; r < W.size(); ++r) {
        if (static_cast<int>(W[r].size()) != U.k()) fail("AmbientMismatch", "subspace ambient differ");
        std::copy(W[r].begin(), W[r].end(), big.a.begin() + static_cast<std::ptrdiff_t>(r * big.cols));
    }
    if (rank_of(big) != W.size())
        fail("DependentBasis", "W basis is not F_{q^m}-independent");
    Matrix st(tw.fq(), static_cast<std::size_t>(n + m * s), U.flat().cols);
    std::copy(U.flat().a.begin(), U.flat().a.end(), st.a.begin());
    std::vector<felem> scaled(static_cast<std::size_t>(U.k()));
    std::size_t row = static_cast<std::size_t>(n);
    for (int t = 0; t < s; ++t) {
        for (int j = 0; j < m; ++j) {
            felem xj = tw.x_power(j);
            for (std::size_t c = 0; c < scaled.size(); ++c)
                scaled[c] = tw.big().mul(xj, W[static_cast<std::size_t>(t)][c]);
            std::vector<felem> flat = flatten(tw, scaled);
            std::copy(flat.begin(), flat.end(),
                      st.a.begin() + static_cast<std::ptrdiff_t>(row * st.cols));
            ++row;
        }
    }
    std::size_t r = rank_of(std::move(st));
    return n + m * s - static_cast<int>(r);
}

std::uint64_t projective_point_count(const Field& big, int k, std::uint64_t budget) {
    mpz_class Q(static_cast<unsigned long>(big.size()));
    mpz_class cnt = 0, pw = 1;
    for (int j = 0; j < k; ++j) {
        cnt += pw;
        pw *= Q;
    }
    if (cnt > mpz_class(static_cast<unsigned long>(budget)))
        fail("BudgetExceeded", "projective point count " + cnt.get_str() +
                                   " exceeds budget " + std::to_string(budget));
    return static_cast<std::uint64_t>(cnt.get_ui());
}

std::vector<felem> projective_point_at(const Field& big, int k, std::uint64_t index) {
    const std::uint64_t Q = big.size();
    // blocks by leading position j: sizes Q^{k-1-j}
    std::vector<std::uint64_t> bs(static_cast<std::size_t>(k));
    std::uint64_t pw = 1;
    for (int j = k - 1; j >= 0; --j) {
        bs[static_cast<std::size_t>(j)] = pw;
        if (j > 0) pw *= Q;
    }
    int lead = 0;
    while (index >= bs[static_cast<std::size_t>(lead)]) {
        index -= bs[static_cast<std::size_t>(lead)];
        ++lead;
    }
    std::vector<felem> v(static_cast<std::size_t>(k), 0);
    v[static_cast<std::size_t>(lead)] = 1;
    for (int t = k - 1; t > lead; --t) {
        v[static_cast<std::size_t>(t)] = index % Q;
        index /= Q;
    }
    return v;
}

namespace {

// Enumerate nonzero vectors of U by F_q-coefficient odometer and bucket them
// by normalized point. Used by the Vectors strategy and as a subroutine for
// small hyperplane scans.
using PointCounts = std::unordered_map<std::vector<felem>, std::uint64_t, VecHash>;

PointCounts bucket_points(const SubspaceU& U, std::uint64_t begin, std::uint64_t end) {
    const FieldTower& tw = U.tower();
    const Field& big = tw.big();
    const std::uint64_t q = tw.q();
    const int n = U.rank();
    const int k = U.k();
    PointCounts counts;
    std::vector<std::uint64_t> digitsv(static_cast<std::size_t>(n), 0);
    std::uint64_t idx = begin;
    {
        std::uint64_t v = begin;
        for (int r = 0; r < n; ++r) {
            digitsv[static_cast<std::size_t>(r)] = v % q;
            v /= q;
        }
    }
    std::vector<felem> u(static_cast<std::size_t>(k));
    std::vector<felem> nrm(static_cast<std::size_t>(k));
    for (; idx < end; ++idx) {
        if (idx != begin) {
            // odometer increment
            for (int r = 0; r < n; ++r) {
                if (++digitsv[static_cast<std::size_t>(r)] < q) break;
                digitsv[static_cast<std::size_t>(r)] = 0;
            }
        }
        if (idx == 0) continue;
        std::fill(u.begin(), u.end(), 0);
        for (int r = 0; r < n; ++r) {
            std::uint64_t c = digitsv[static_cast<std::size_t>(r)];
            if (!c) continue;
            felem ce = tw.embed_fq(c);
            const auto& b = U.basis()[static_cast<std::size_t>(r)];
            for (int t = 0; t < k; ++t)
                u[static_cast<std::size_t>(t)] =
                    big.add(u[static_cast<std::size_t>(t)],
                            big.mul(ce, b[static_cast<std::size_t>(t)]));
        }
        // normalize
        nrm = u;
        for (int t = 0; t < k; ++t) {
            felem x = nrm[static_cast<std::size_t>(t)];
            if (x != 0) {
                if (x != 1) {
                    felem iv = big.inv(x);
                    for (int s = t; s < k; ++s)
                        nrm[static_cast<std::size_t>(s)] = big.mul(iv, nrm[static_cast<std::size_t>(s)]);
                }
                break;
            }
        }
        ++counts[nrm];
    }
    return counts;
}

LinearSetReport analyze_vectors(const SubspaceU& U, const AnalyzeOptions& opts,
                                std::uint64_t total) {
    const std::uint64_t q = U.tower().q();
    int workers = resolve_jobs(opts.jobs);
    std::vector<PointCounts> partial(static_cast<std::size_t>(std::max(workers, 1)));
    parallel_chunks(total, opts.jobs, [&](int w, std::uint64_t b, std::uint64_t e) {
        partial[static_cast<std::size_t>(w)] = bucket_points(U, b, e);
    });
    PointCounts counts = std::move(partial[0]);
    for (std::size_t w = 1; w < partial.size(); ++w)
        for (auto& [pt, c] : partial[w]) counts[pt] += c;

    LinearSetReport rep;
    rep.rank = U.rank();
    rep.strategy = "vectors";
    std::vector<felem> best;
    for (auto& [pt, c] : counts) {
        int w = weight_from_count(c, q);
        ++rep.census[w];
        if (w >= 2 && (best.empty() || pt < best)) best = pt;
    }
    classify(rep);
    if (rep.kind == LinearSetReport::Kind::Club) {
        // unique heavy point
        for (auto& [pt, c] : counts)
            if (weight_from_count(c, q) == rep.club_index) rep.special_point = ProjectivePoint{pt};
    } else if (!best.empty()) {
        rep.special_point = ProjectivePoint{best};
    }
    return rep;
}

LinearSetReport analyze_points(const SubspaceU& U, const AnalyzeOptions& opts,
                               std::uint64_t total) {
    int workers = resolve_jobs(opts.jobs);
    struct Part {
        std::map<int, std::uint64_t> census;
        std::vector<felem> club_rep;       // the unique heavy point, when one exists
        int club_w = 0;
        std::vector<felem> smallest_heavy;  // lexicographic minimum among weight >= 2
    };
    std::vector<Part> partial(static_cast<std::size_t>(std::max(workers, 1)));
    const Field& big = U.tower().big();
    parallel_chunks(total, opts.jobs, [&](int w, std::uint64_t b, std::uint64_t e) {
        Part& part = partial[static_cast<std::size_t>(w)];
        for (std::uint64_t i = b; i < e; ++i) {
            ProjectivePoint P{projective_point_at(big, U.k(), i)};
            int pw = point_weight(U, P);
            if (pw > 0) {
                ++part.census[pw];
                if (pw >= 2) {
                    if (part.smallest_heavy.empty() || P.rep < part.smallest_heavy)
                        part.smallest_heavy = P.rep;
                    part.club_rep = P.rep;
                    part.club_w = pw;
                }
            }
        }
    });
    LinearSetReport rep;
    rep.rank = U.rank();
    rep.strategy = "points";
    std::vector<felem> smallest;
    for (auto& part : partial) {
        for (auto& [w, c] : part.census) rep.census[w] += c;
        if (!part.smallest_heavy.empty() && (smallest.empty() || part.smallest_heavy < smallest))
            smallest = part.smallest_heavy;
    }
    classify(rep);
    if (rep.kind == LinearSetReport::Kind::Club) {
        for (auto& part : partial)
            if (!part.club_rep.empty() && part.club_w == rep.club_index)
                rep.special_point = ProjectivePoint{part.club_rep};
    } else if (!smallest.empty()) {
        rep.special_point = ProjectivePoint{smallest};
    }
    return rep;
}

}  // namespace

LinearSetReport analyze(const SubspaceU& U, const AnalyzeOptions& opts) {
    const FieldTower& tw = U.tower();
    const int n = U.rank();
    if (n == 0) {
        LinearSetReport rep;
        rep.strategy = "vectors";
        classify(rep);
        if (opts.with_hyperplanes)
            rep.hyperplane_spectrum = hyperplane_weights(U, opts.budget, opts.jobs);
        return rep;
    }
    mpz_class vec_count = pow_mpz(tw.q(), n);
    mpz_class budget(static_cast<unsigned long>(opts.budget));
    mpz_class Q(static_cast<unsigned long>(tw.big().size()));
    mpz_class pts = 0, pw = 1;
    for (int j = 0; j < U.k(); ++j) {
        pts += pw;
        pw *= Q;
    }
    AnalyzeStrategy strat = opts.strategy;
    if (strat == AnalyzeStrategy::Auto) strat = vec_count < pts ? AnalyzeStrategy::Vectors : AnalyzeStrategy::Points;
    LinearSetReport rep;
    if (strat == AnalyzeStrategy::Vectors) {
        if (vec_count > budget)
            fail("SizeBudgetExceeded", "q^n = " + vec_count.get_str() + " exceeds budget");
        rep = analyze_vectors(U, opts, static_cast<std::uint64_t>(vec_count.get_ui()));
    } else {
        if (pts > budget)
            fail("SizeBudgetExceeded", "point count " + pts.get_str() + " exceeds budget");
        rep = analyze_points(U, opts, static_cast<std::uint64_t>(pts.get_ui()));
    }
    if (opts.with_hyperplanes)
        rep.hyperplane_spectrum = hyperplane_weights(U, opts.budget, opts.jobs);
    return rep;
}

std::map<int, std::uint64_t> hyperplane_weights(const SubspaceU& U, std::uint64_t budget,
                                                int jobs) {
    const FieldTower& tw = U.tower();
    const Field& big = tw.big();
    const int k = U.k();
    const int m = tw.m();
    const int n = U.rank();
    std::uint64_t total = projective_point_count(big, k, budget);

    // Small spans: count the vectors of U lying on each hyperplane.
    mpz_class vc = pow_mpz(tw.q(), n);
    bool small = vc <= mpz_class(1 << 14) && vc <= mpz_class(static_cast<unsigned long>(budget));
    std::vector<std::vector<felem>> span_vecs;
    if (small && n > 0) {
        span_vecs.reserve(static_cast<std::size_t>(vc.get_ui()) - 1);
        std::uint64_t q = tw.q();
        std::vector<std::uint64_t> digitsv(static_cast<std::size_t>(n), 0);
        std::vector<felem> u(static_cast<std::size_t>(k));
        for (std::uint64_t idx = 1; idx < vc.get_ui(); ++idx) {
            for (int r = 0; r < n; ++r) {
                if (++digitsv[static_cast<std::size_t>(r)] < q) break;
                digitsv[static_cast<std::size_t>(r)] = 0;
            }
            std::fill(u.begin(), u.end(), 0);
            for (int r = 0; r < n; ++r) {
                std::uint64_t c = digitsv[static_cast<std::size_t>(r)];
                if (!c) continue;
                felem ce = tw.embed_fq(c);
                const auto& brow = U.basis()[static_cast<std::size_t>(r)];
                for (int t = 0; t < k; ++t)
                    u[static_cast<std::size_t>(t)] = big.add(
                        u[static_cast<std::size_t>(t)], big.mul(ce, brow[static_cast<std::size_t>(t)]));
            }
            span_vecs.push_back(u);
        }
    }

    int workers = resolve_jobs(jobs);
    std::vector<std::map<int, std::uint64_t>> partial(static_cast<std::size_t>(std::max(workers, 1)));
    parallel_chunks(total, jobs, [&](int w, std::uint64_t bgn, std::uint64_t end) {
        auto& spec = partial[static_cast<std::size_t>(w)];
        for (std::uint64_t i = bgn; i < end; ++i) {
            std::vector<felem> a = projective_point_at(big, k, i);
            int wt;
            if (small) {
                std::uint64_t cnt = 0;
                for (const auto& v : span_vecs)
                    if (dot_big(big, a, v) == 0) ++cnt;
                wt = weight_from_count(cnt, tw.q());
            } else {
                // basis of the hyperplane a^, then stacked-rank intersection
                Matrix am(big, 1, static_cast<std::size_t>(k));
                for (int t = 0; t < k; ++t) am.at(0, static_cast<std::size_t>(t)) = a[static_cast<std::size_t>(t)];
                Matrix hb = kernel(am);
                std::vector<std::vector<felem>> rows;
                rows.reserve(hb.rows);
                for (std::size_t r = 0; r < hb.rows; ++r)
                    rows.emplace_back(hb.row(r).begin(), hb.row(r).end());
                wt = n + m * static_cast<int>(hb.rows);
                Matrix st(tw.fq(), static_cast<std::size_t>(n) + static_cast<std::size_t>(m) * hb.rows,
                          U.flat().cols);
                std::copy(U.flat().a.begin(), U.flat().a.end(), st.a.begin());
                std::size_t row = static_cast<std::size_t>(n);
                std::vector<felem> scaled(static_cast<std::size_t>(k));
                for (std::size_t t = 0; t < rows.size(); ++t)
                    for (int j = 0; j < m; ++j) {
                        felem xj = tw.x_power(j);
                        for (int c = 0; c < k; ++c)
                            scaled[static_cast<std::size_t>(c)] =
                                big.mul(xj, rows[t][static_cast<std::size_t>(c)]);
                        std::vector<felem> fl = flatten(tw, scaled);
                        std::copy(fl.begin(), fl.end(),
                                  st.a.begin() + static_cast<std::ptrdiff_t>(row * st.cols));
                        ++row;
                    }
                wt -= static_cast<int>(rank_of(std::move(st)));
            }
            ++spec[wt];
        }
    });
    std::map<int, std::uint64_t> out;
    for (auto& part : partial)
        for (auto& [w, c] : part) out[w] += c;
    return out;
}

SubspaceU dual_perp(const SubspaceU& U) {
    const FieldTower& tw = U.tower();
    const Field& big = tw.big();
    const int k = U.k();
    const int m = tw.m();
    const int n = U.rank();
    Matrix D(tw.fq(), static_cast<std::size_t>(n),
             static_cast<std::size_t>(m) * static_cast<std::size_t>(k));
    for (int r = 0; r < n; ++r) {
        const auto& u = U.basis()[static_cast<std::size_t>(r)];
        for (int t = 0; t < k; ++t)
            for (int j = 0; j < m; ++j) {
                felem tr = tw.rel_trace(big.mul(u[static_cast<std::size_t>(t)], tw.x_power(j)));
                D.at(static_cast<std::size_t>(r),
                     static_cast<std::size_t>(t) * static_cast<std::size_t>(m) +
                         static_cast<std::size_t>(j)) = tw.project_fq(tr);
            }
    }
    Matrix K = kernel(D);
    return SubspaceU::from_canonical_flat(U.tower_ptr(), k, std::move(K));
}

SubspaceU restricted_dual(const SubspaceU& U, const std::vector<std::vector<felem>>& W) {
    const FieldTower& tw = U.tower();
    const Field& big = tw.big();
    const int k = U.k();
    const int m = tw.m();
    const int s = static_cast<int>(W.size());
    // W must be F_{q^m}-independent
    Matrix bw(big, W.size(), static_cast<std::size_t>(k));
    for (std::size_t r = 0; r < W.size(); ++r)
        std::copy(W[r].begin(), W[r].end(), bw.a.begin() + static_cast<std::ptrdiff_t>(r * bw.cols));
    if (rank_of(bw) != W.size()) fail("DependentBasis", "W basis is not F_{q^m}-independent");
    // flat space of W
    std::vector<std::vector<felem>> wrows;
    wrows.reserve(static_cast<std::size_t>(m) * W.size());
    for (const auto& wv : W)
        for (int j = 0; j < m; ++j) {
            std::vector<felem> scaled(static_cast<std::size_t>(k));
            for (int c = 0; c < k; ++c)
                scaled[static_cast<std::size_t>(c)] = big.mul(tw.x_power(j), wv[static_cast<std::size_t>(c)]);
            wrows.push_back(std::move(scaled));
        }
    Matrix wspace = rref(flatten_rows(tw, wrows, k));
    if (static_cast<int>(wspace.rows) != m * s)
        fail("InternalError", "flattened W has unexpected dimension");
    // containment U ⊆ W
    if (rank_of(stack(wspace, U.flat())) != wspace.rows)
        fail("AmbientMismatch", "U is not contained in W");
    // nondegeneracy of the restricted trace form
    std::vector<std::vector<felem>> wbasis;
    wbasis.reserve(wspace.rows);
    for (std::size_t r = 0; r < wspace.rows; ++r)
        wbasis.push_back(unflatten(tw, wspace.row(r), k));
    Matrix gram(tw.fq(), wspace.rows, wspace.rows);
    for (std::size_t a = 0; a < wbasis.size(); ++a)
        for (std::size_t b = 0; b < wbasis.size(); ++b)
            gram.at(a, b) = tw.project_fq(tw.rel_trace(dot_big(big, wbasis[a], wbasis[b])));
    if (rank_of(gram) != wspace.rows)
        fail("DegenerateRestriction", "trace form restricted to W is degenerate");
    SubspaceU dual = dual_perp(U);
    Matrix inter = sum_and_intersection(dual.flat(), wspace).inter;
    return SubspaceU::from_canonical_flat(U.tower_ptr(), k, std::move(inter));
}

bool spans_full_space(const SubspaceU& U) {
    const Field& big = U.tower().big();
    Matrix M(big, U.basis().size(), static_cast<std::size_t>(U.k()));
    for (std::size_t r = 0; r < U.basis().size(); ++r)
        std::copy(U.basis()[r].begin(), U.basis()[r].end(),
                  M.a.begin() + static_cast<std::ptrdiff_t>(r * M.cols));
    return rank_of(std::move(M)) == static_cast<std::size_t>(U.k());
}

M1ClubDecomposition m1club_maximum_decomposition_check(const SubspaceU& U, std::uint64_t budget,
                                                       int jobs) {
    M1ClubDecomposition out;
    const FieldTower& tw = U.tower();
    const Field& big = tw.big();
    const int m = tw.m();
    const int k = U.k();
    const int n = U.rank();
    auto problem = [&](const std::string& what) { out.problems.push_back(what); };

    AnalyzeOptions opts;
    opts.budget = budget;
    opts.jobs = jobs;
    LinearSetReport rep = analyze(U, opts);
    if (rep.kind != LinearSetReport::Kind::Club || rep.club_index != m - 1 ||
        n != m * (k + 1) / 2 - 1) {
        problem("input is not an (m-1)-club of rank m(k+1)/2 - 1");
        return out;
    }
    SubspaceU D = dual_perp(U);

    // dual hyperplane weights sit in {1, 2, m} + m(k-3)/2, the top one once
    out.dual_hyperplane_spectrum = hyperplane_weights(D, budget, jobs);
    const int base = m * (k - 3) / 2;
    for (auto& [w, cnt] : out.dual_hyperplane_spectrum) {
        if (cnt == 0) continue;
        if (w != base + 1 && w != base + 2 && w != base + m)
            problem("dual hyperplane weight " + std::to_string(w) + " outside {1,2,m}+m(k-3)/2");
    }
    if (!out.dual_hyperplane_spectrum.count(base + m) ||
        out.dual_hyperplane_spectrum.at(base + m) != 1)
        problem("weight m + m(k-3)/2 hyperplane is not unique");
    if (!spans_full_space(D)) problem("dual does not span the ambient space");

    LinearSetReport drep = analyze(D, opts);
    if (drep.kind != LinearSetReport::Kind::Scattered) problem("dual is not scattered");

    // locate the unique heavy hyperplane of the dual
    std::uint64_t npts = projective_point_count(big, k, budget);
    std::vector<felem> heavy_normal;
    std::vector<std::vector<felem>> heavy_basis;
    for (std::uint64_t i = 0; i < npts && heavy_normal.empty(); ++i) {
        std::vector<felem> a = projective_point_at(big, k, i);
        Matrix am(big, 1, static_cast<std::size_t>(k));
        for (int t = 0; t < k; ++t) am.at(0, static_cast<std::size_t>(t)) = a[static_cast<std::size_t>(t)];
        Matrix hk = kernel(am);
        std::vector<std::vector<felem>> hb;
        for (std::size_t r = 0; r < hk.rows; ++r) hb.emplace_back(hk.row(r).begin(), hk.row(r).end());
        if (subspace_weight(D, hb) == base + m) {
            heavy_normal = a;
            heavy_basis = hb;
        }
    }
    if (heavy_normal.empty()) {
        problem("no heavy hyperplane found for the dual");
        return out;
    }
    // V = D ∩ heavy hyperplane has dimension m(k-1)/2; every vector of D off
    // the hyperplane completes it, with the big-field spans still disjoint
    Matrix wflat = rref(flatten_rows(tw, [&] {
        std::vector<std::vector<felem>> rows;
        for (const auto& h : heavy_basis)
            for (int j = 0; j < m; ++j) {
                std::vector<felem> scaled(static_cast<std::size_t>(k));
                for (int c = 0; c < k; ++c)
                    scaled[static_cast<std::size_t>(c)] = big.mul(tw.x_power(j), h[static_cast<std::size_t>(c)]);
                rows.push_back(std::move(scaled));
            }
        return rows;
    }(), k));
    Matrix V = sum_and_intersection(D.flat(), wflat).inter;
    if (static_cast<int>(V.rows) != m * (k - 1) / 2)
        problem("D ∩ heavy hyperplane has dimension " + std::to_string(V.rows));
    std::vector<std::vector<felem>> vbasis;
    for (std::size_t r = 0; r < V.rows; ++r) vbasis.push_back(unflatten(tw, V.row(r), k));
    Matrix vbig(big, vbasis.size(), static_cast<std::size_t>(k));
    for (std::size_t r = 0; r < vbasis.size(); ++r)
        std::copy(vbasis[r].begin(), vbasis[r].end(),
                  vbig.a.begin() + static_cast<std::ptrdiff_t>(r * vbig.cols));
    std::size_t vbig_rank = rank_of(vbig);
    bool found_off = false;
    for (const auto& w : D.basis()) {
        if (dot_big(big, heavy_normal, w) == 0) continue;
        found_off = true;
        Matrix st = stack(V, flatten_rows(tw, {w}, k));
        if (rank_of(std::move(st)) != V.rows + 1) problem("D does not split over the heavy hyperplane");
        Matrix bb = vbig;
        bb.rows += 1;
        bb.a.insert(bb.a.end(), w.begin(), w.end());
        if (rank_of(std::move(bb)) != vbig_rank + 1)
            problem("big-field spans of the split parts are not disjoint");
    }
    if (!found_off) problem("every canonical dual basis vector lies in the heavy hyperplane");

    // the club itself is a cone: some weight-m(k-1)/2 hyperplane W avoids
    // the heavy point P and U = (U ∩ W) ⊕ (U ∩ <P>)
    const ProjectivePoint& P = *rep.special_point;
    bool cone_split = false;
    for (std::uint64_t i = 0; i < npts && !cone_split; ++i) {
        std::vector<felem> a = projective_point_at(big, k, i);
        if (dot_big(big, a, P.rep) == 0) continue;  // P in the hyperplane
        Matrix am(big, 1, static_cast<std::size_t>(k));
        for (int t = 0; t < k; ++t) am.at(0, static_cast<std::size_t>(t)) = a[static_cast<std::size_t>(t)];
        Matrix hk = kernel(am);
        std::vector<std::vector<felem>> hb;
        for (std::size_t r = 0; r < hk.rows; ++r) hb.emplace_back(hk.row(r).begin(), hk.row(r).end());
        if (subspace_weight(U, hb) != m * (k - 1) / 2) continue;
        if (point_weight(U, P) + m * (k - 1) / 2 == n) cone_split = true;
    }
    if (!cone_split) problem("no cone decomposition hyperplane found");

    out.ok = out.problems.empty();
    return out;
}

bool verify_weight_identities(const LinearSetReport& report, std::uint64_t q, int n,
                              std::string* diagnostic) {
    mpz_class size = 0;
    for (auto& [w, c] : report.census) size += mpz_class(static_cast<unsigned long>(c));
    if (size != mpz_class(static_cast<unsigned long>(report.size))) {
        if (diagnostic) *diagnostic = "census does not sum to size";
        return false;
    }
    mpz_class lhs = 0;
    for (auto& [w, c] : report.census) {
        mpz_class theta = (pow_mpz(q, w) - 1) / mpz_class(static_cast<unsigned long>(q - 1));
        lhs += mpz_class(static_cast<unsigned long>(c)) * theta;
    }
    mpz_class rhs = n == 0 ? mpz_class(0)
                           : mpz_class((pow_mpz(q, n) - 1) / mpz_class(static_cast<unsigned long>(q - 1)));
    if (lhs != rhs) {
        if (diagnostic)
            *diagnostic = "weighted census " + lhs.get_str() + " != " + rhs.get_str();
        return false;
    }
    return true;
}

}  // namespace clubforge
