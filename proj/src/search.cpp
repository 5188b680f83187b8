#include "clubforge/search.hpp"

#include <algorithm>
#include <chrono>
#include <set>

#include "clubforge/parallel.hpp"
#include "clubforge/rmcode.hpp"

namespace clubforge {

namespace {

std::vector<std::vector<std::size_t>> pivot_profiles(int ambient, int n) {
    std::vector<std::vector<std::size_t>> out;
    if (n == 0) {
        out.emplace_back();
        return out;
    }
    if (n > ambient) return out;
    std::vector<std::size_t> idx(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) idx[static_cast<std::size_t>(i)] = static_cast<std::size_t>(i);
    while (true) {
        out.push_back(idx);
        int pos = n - 1;
        while (pos >= 0 &&
               idx[static_cast<std::size_t>(pos)] == static_cast<std::size_t>(ambient - n + pos))
            --pos;
        if (pos < 0) break;
        ++idx[static_cast<std::size_t>(pos)];
        for (int j = pos + 1; j < n; ++j)
            idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
    }
    return out;
}

struct FreePos {
    std::size_t row, col;
};

std::vector<FreePos> free_positions(const std::vector<std::size_t>& pivots, int ambient) {
    std::vector<bool> is_piv(static_cast<std::size_t>(ambient), false);
    for (std::size_t c : pivots) is_piv[c] = true;
    std::vector<FreePos> out;
    for (std::size_t r = 0; r < pivots.size(); ++r)
        for (std::size_t c = pivots[r] + 1; c < static_cast<std::size_t>(ambient); ++c)
            if (!is_piv[c]) out.push_back({r, c});
    return out;
}

std::uint64_t visit_profile(
    const Field& fq, int ambient, const std::vector<std::size_t>& pivots,
    const std::function<void(const Matrix&, const std::vector<std::size_t>&)>& visit) {
    const std::size_t n = pivots.size();
    Matrix M(fq, n, static_cast<std::size_t>(ambient));
    for (std::size_t r = 0; r < n; ++r) M.at(r, pivots[r]) = 1;
    std::vector<FreePos> free = free_positions(pivots, ambient);
    std::vector<felem> digits(free.size(), 0);
    const std::uint64_t q = fq.size();
    std::uint64_t visits = 0;
    while (true) {
        visit(M, pivots);
        ++visits;
        std::size_t pos = 0;
        while (pos < free.size()) {
            if (++digits[pos] < q) {
                M.at(free[pos].row, free[pos].col) = digits[pos];
                break;
            }
            digits[pos] = 0;
            M.at(free[pos].row, free[pos].col) = 0;
            ++pos;
        }
        if (pos == free.size()) break;
    }
    return visits;
}

}  // namespace

std::uint64_t enumerate_subspaces(
    const Field& fq, int ambient, int n,
    const std::function<void(const Matrix&, const std::vector<std::size_t>&)>& visit) {
    if (n < 0 || ambient < 0) fail("ParameterViolation", "negative dimension");
    std::uint64_t total = 0;
    for (const auto& prof : pivot_profiles(ambient, n)) total += visit_profile(fq, ambient, prof, visit);
    return total;
}

SearchResult run_search(const SearchSpec& spec) {
    const auto t0 = std::chrono::steady_clock::now();
    const FieldTower& tw = *spec.tower;
    const int mk = tw.m() * spec.k;
    const int n = spec.n;
    if (n < 0 || n > mk) fail("ParameterViolation", "target rank must lie in [0, mk]");

    // Anchored mode: enumerate complements of A = S·e_0 in a fixed
    // complement of A, i.e. subspaces of dimension n - i of F_q^{mk - i}.
    Matrix anchor(tw.fq(), 0, static_cast<std::size_t>(mk));
    std::vector<std::size_t> free_cols;
    int amb = mk, dim = n;
    if (spec.anchor_S) {
        const SubspaceU& S = *spec.anchor_S;
        if (S.k() != 1 || !S.tower().same(tw))
            fail("AmbientMismatch", "anchor S must be a subspace of F_{q^m} over the same tower");
        if (S.rank() > n) fail("ParameterViolation", "anchor dimension exceeds target rank");
        anchor = Matrix(tw.fq(), S.flat().rows, static_cast<std::size_t>(mk));
        for (std::size_t r = 0; r < S.flat().rows; ++r)
            for (std::size_t c = 0; c < S.flat().cols; ++c) anchor.at(r, c) = S.flat().at(r, c);
        std::vector<std::size_t> apiv;
        Matrix acopy = anchor;
        apiv = rref_in_place(acopy);
        std::vector<bool> is_piv(static_cast<std::size_t>(mk), false);
        for (std::size_t c : apiv) is_piv[c] = true;
        for (std::size_t c = 0; c < static_cast<std::size_t>(mk); ++c)
            if (!is_piv[c]) free_cols.push_back(c);
        amb = mk - S.rank();
        dim = n - S.rank();
    }

    SearchResult result;
    result.expected_count = qbinomial(amb, dim, mpz_class(static_cast<unsigned long>(tw.q())));
    if (result.expected_count > mpz_class(static_cast<unsigned long>(spec.budget)))
        fail("BudgetExceeded", "enumeration would visit " + result.expected_count.get_str() +
                                   " subspaces (budget " + std::to_string(spec.budget) + ")");

    auto profiles = pivot_profiles(amb, dim);
    struct ProfileResult {
        std::uint64_t scanned = 0;
        std::map<std::string, std::uint64_t> census;
        std::vector<SearchHit> hits;
        bool truncated = false;
    };
    std::vector<ProfileResult> per_profile(profiles.size());

    auto process = [&](const Matrix& M, ProfileResult& pr) {
        SubspaceU U = [&] {
            if (!spec.anchor_S)
                return SubspaceU::from_canonical_flat(spec.tower, spec.k, M);
            Matrix lifted(tw.fq(), anchor.rows + M.rows, static_cast<std::size_t>(mk));
            std::copy(anchor.a.begin(), anchor.a.end(), lifted.a.begin());
            for (std::size_t r = 0; r < M.rows; ++r)
                for (std::size_t c = 0; c < M.cols; ++c)
                    lifted.at(anchor.rows + r, free_cols[c]) = M.at(r, c);
            return SubspaceU::from_canonical_flat(spec.tower, spec.k, rref(std::move(lifted)));
        }();
        AnalyzeOptions aopts;
        aopts.budget = spec.budget;
        aopts.strategy = spec.analyze_strategy;
        aopts.jobs = 1;  // parallelism lives at the profile level
        LinearSetReport rep = analyze(U, aopts);
        ++pr.census[rep.classification_string()];
        ++pr.scanned;
        bool match = false;
        switch (spec.target.kind) {
            case SearchTarget::Kind::Census:
                break;
            case SearchTarget::Kind::AnyClub:
                match = rep.kind == LinearSetReport::Kind::Club;
                break;
            case SearchTarget::Kind::Club:
                match = rep.kind == LinearSetReport::Kind::Club &&
                        rep.club_index == spec.target.club_index;
                break;
            case SearchTarget::Kind::Scattered:
                match = rep.kind == LinearSetReport::Kind::Scattered;
                break;
        }
        if (match) {
            if (pr.hits.size() < spec.hit_cap) {
                // re-verify with the alternate strategy before recording
                AnalyzeOptions alt = aopts;
                alt.strategy = rep.strategy == "vectors" ? AnalyzeStrategy::Points
                                                         : AnalyzeStrategy::Vectors;
                LinearSetReport rep2 = analyze(U, alt);
                if (rep2.census != rep.census)
                    fail("InternalError", "analyze strategies disagree on a search hit");
                pr.hits.push_back(SearchHit{U.basis(), std::move(rep)});
            } else {
                pr.truncated = true;
            }
        }
    };

    int workers = resolve_jobs(spec.jobs);
    parallel_chunks(profiles.size(), workers, [&](int, std::uint64_t b, std::uint64_t e) {
        for (std::uint64_t pi = b; pi < e; ++pi)
            visit_profile(tw.fq(), amb, profiles[static_cast<std::size_t>(pi)],
                          [&](const Matrix& M, const std::vector<std::size_t>&) {
                              process(M, per_profile[static_cast<std::size_t>(pi)]);
                          });
    });

    for (auto& pr : per_profile) {
        result.scanned += pr.scanned;
        for (auto& [k2, v] : pr.census) result.census[k2] += v;
        for (auto& h : pr.hits) {
            if (result.hits.size() < spec.hit_cap)
                result.hits.push_back(std::move(h));
            else
                result.hits_truncated = true;
        }
        result.hits_truncated = result.hits_truncated || pr.truncated;
    }
    result.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return result;
}

SpectrumComparison spectrum_compare(const SubspaceU& U1, const SubspaceU& U2,
                                    std::uint64_t budget, int jobs) {
    if (!U1.tower().same(U2.tower()) || U1.k() != U2.k() || U1.rank() != U2.rank())
        fail("ParameterMismatch", "spectrum comparison needs equal (q, m, k, n)");
    AnalyzeOptions opts;
    opts.budget = budget;
    opts.jobs = jobs;
    opts.with_hyperplanes = true;
    LinearSetReport r1 = analyze(U1, opts);
    LinearSetReport r2 = analyze(U2, opts);
    SpectrumComparison out;
    if (r1.census != r2.census) {
        std::set<int> ws;
        for (auto& [w, c] : r1.census) ws.insert(w);
        for (auto& [w, c] : r2.census) ws.insert(w);
        for (int w : ws) {
            std::uint64_t a = r1.census.count(w) ? r1.census.at(w) : 0;
            std::uint64_t b = r2.census.count(w) ? r2.census.at(w) : 0;
            if (a != b) {
                out.distinguished = true;
                out.witness = "point census differs at weight " + std::to_string(w) + " (" +
                              std::to_string(a) + " vs " + std::to_string(b) + ")";
                return out;
            }
        }
    }
    if (*r1.hyperplane_spectrum != *r2.hyperplane_spectrum) {
        std::set<int> ws;
        for (auto& [w, c] : *r1.hyperplane_spectrum) ws.insert(w);
        for (auto& [w, c] : *r2.hyperplane_spectrum) ws.insert(w);
        for (int w : ws) {
            std::uint64_t a = r1.hyperplane_spectrum->count(w) ? r1.hyperplane_spectrum->at(w) : 0;
            std::uint64_t b = r2.hyperplane_spectrum->count(w) ? r2.hyperplane_spectrum->at(w) : 0;
            if (a != b) {
                out.distinguished = true;
                out.witness = "hyperplane spectrum differs at weight " + std::to_string(w) + " (" +
                              std::to_string(a) + " vs " + std::to_string(b) + ")";
                return out;
            }
        }
    }
    out.distinguished = false;
    out.witness = "point census and hyperplane spectrum agree (proves nothing)";
    return out;
}

}  // namespace clubforge
