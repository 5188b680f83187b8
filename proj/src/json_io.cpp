#include "clubforge/json_io.hpp"

namespace clubforge {

namespace {

json mpz_to_json(const mpz_class& v) {
    if (v >= 0 && v.fits_ulong_p() && v < mpz_class(1) << 53)
        return static_cast<std::uint64_t>(v.get_ui());
    return v.get_str();
}

mpz_class mpz_from_json(const json& j) {
    if (j.is_string()) return mpz_class(j.get<std::string>());
    if (j.is_number_unsigned()) return mpz_class(static_cast<unsigned long>(j.get<std::uint64_t>()));
    if (j.is_number_integer()) return mpz_class(static_cast<long>(j.get<std::int64_t>()));
    fail("ParseError", "expected an integer or decimal string");
}

template <typename T>
T get_field(const json& j, const char* key) {
    if (!j.contains(key)) fail("ParseError", std::string("missing key: ") + key);
    try {
        return j.at(key).get<T>();
    } catch (const json::exception& e) {
        fail("ParseError", std::string("bad value for key ") + key + ": " + e.what());
    }
}

}  // namespace

json tower_to_json(const FieldTower& tw) {
    return json{{"p", tw.p()}, {"e", tw.e()}, {"m", tw.m()}, {"modulus", tw.big().modulus()}};
}

std::shared_ptr<const FieldTower> tower_from_json(const json& j) {
    auto p = get_field<std::uint64_t>(j, "p");
    auto e = get_field<int>(j, "e");
    auto m = get_field<int>(j, "m");
    if (j.contains("modulus"))
        return FieldTower::from_modulus(p, e, m, get_field<std::vector<int>>(j, "modulus"));
    return FieldTower::make(p, e, m);
}

json subspace_to_json(const SubspaceU& U) {
    json basis = json::array();
    for (const auto& v : U.basis()) basis.push_back(v);
    return json{{"field", tower_to_json(U.tower())}, {"k", U.k()}, {"basis", basis}};
}

SubspaceU subspace_from_json(const json& j) {
    auto tower = tower_from_json(j.contains("field") ? j.at("field") : json::object());
    auto k = get_field<int>(j, "k");
    auto basis = get_field<std::vector<std::vector<felem>>>(j, "basis");
    for (const auto& v : basis) {
        if (static_cast<int>(v.size()) != k) fail("ValidationError", "basis vector length != k");
        for (felem x : v)
            if (!tower->big().is_valid(x)) fail("ValidationError", "element encoding out of range");
    }
    return SubspaceU(tower, k, basis);
}

json report_to_json(const LinearSetReport& rep) {
    json census = json::array();
    for (auto& [w, c] : rep.census) census.push_back(json::array({w, c}));
    json cls;
    cls["type"] = rep.kind == LinearSetReport::Kind::Scattered
                      ? "scattered"
                      : rep.kind == LinearSetReport::Kind::Club ? "club" : "other";
    if (rep.kind == LinearSetReport::Kind::Club) cls["i"] = rep.club_index;
    if (rep.special_point) cls["special_point"] = rep.special_point->rep;
    json out{{"rank", rep.rank},
             {"size", rep.size},
             {"census", census},
             {"classification", cls},
             {"strategy", rep.strategy}};
    if (rep.hyperplane_spectrum) {
        json spec = json::array();
        for (auto& [w, c] : *rep.hyperplane_spectrum) spec.push_back(json::array({w, c}));
        out["hyperplane_spectrum"] = spec;
    }
    return out;
}

LinearSetReport report_from_json(const json& j) {
    LinearSetReport rep;
    rep.rank = get_field<int>(j, "rank");
    rep.size = get_field<std::uint64_t>(j, "size");
    for (const auto& pair : j.at("census"))
        rep.census[pair.at(0).get<int>()] = pair.at(1).get<std::uint64_t>();
    const json& cls = j.at("classification");
    std::string type = cls.at("type").get<std::string>();
    rep.kind = type == "scattered" ? LinearSetReport::Kind::Scattered
               : type == "club"    ? LinearSetReport::Kind::Club
                                   : LinearSetReport::Kind::Other;
    if (cls.contains("i")) rep.club_index = cls.at("i").get<int>();
    if (cls.contains("special_point"))
        rep.special_point = ProjectivePoint{cls.at("special_point").get<std::vector<felem>>()};
    if (j.contains("hyperplane_spectrum")) {
        std::map<int, std::uint64_t> spec;
        for (const auto& pair : j.at("hyperplane_spectrum"))
            spec[pair.at(0).get<int>()] = pair.at(1).get<std::uint64_t>();
        rep.hyperplane_spectrum = std::move(spec);
    }
    if (j.contains("strategy")) rep.strategy = j.at("strategy").get<std::string>();
    return rep;
}

json code_to_json(const RankMetricCode& C) {
    json g = json::array();
    for (const auto& row : C.G()) g.push_back(row);
    return json{{"field", tower_to_json(C.tower())}, {"n", C.n()}, {"k", C.k()}, {"G", g}};
}

RankMetricCode code_from_json(const json& j) {
    auto tower = tower_from_json(j.at("field"));
    auto G = get_field<std::vector<std::vector<felem>>>(j, "G");
    for (const auto& row : G)
        for (felem x : row)
            if (!tower->big().is_valid(x)) fail("ValidationError", "element encoding out of range");
    RankMetricCode C(tower, std::move(G));
    if (j.contains("n") && j.at("n").get<int>() != C.n())
        fail("ValidationError", "declared n does not match G");
    if (j.contains("k") && j.at("k").get<int>() != C.k())
        fail("ValidationError", "declared k does not match G");
    return C;
}

json distribution_to_json(const WeightDistribution& dist, const char* key) {
    json arr = json::array();
    for (const auto& c : dist.counts) arr.push_back(mpz_to_json(c));
    return json{{key, arr}};
}

WeightDistribution distribution_from_json(const json& j, const char* key) {
    const json& arr = j.contains(key) ? j.at(key) : j;
    if (!arr.is_array() || arr.empty()) fail("ParseError", "expected a distribution array");
    WeightDistribution dist(static_cast<int>(arr.size()) - 1);
    for (std::size_t i = 0; i < arr.size(); ++i) dist.counts[i] = mpz_from_json(arr[i]);
    return dist;
}

json selfcheck_to_json(const SelfCheckReport& rep) {
    json out;
    out["name"] = rep.name;
    out["params"] = rep.params;
    out["claimed"] = {{"rank", rep.claimed_rank}, {"classification", rep.claimed_classification}};
    if (rep.claimed_special_point) out["claimed"]["special_point"] = *rep.claimed_special_point;
    out["measured"] = report_to_json(rep.measured);
    out["spans_ambient"] = rep.spans_ambient;
    if (rep.spectrum_allowed)
        out["spectrum_allowed"] = std::vector<int>(rep.spectrum_allowed->begin(),
                                                   rep.spectrum_allowed->end());
    if (rep.spectrum_must_contain) out["spectrum_must_contain"] = *rep.spectrum_must_contain;
    if (rep.expected_code_weights) out["expected_code_weights"] = *rep.expected_code_weights;
    if (rep.measured_code_weights) out["measured_code_weights"] = *rep.measured_code_weights;
    if (rep.code_on_dual) out["code_on_dual"] = true;
    if (!rep.notes.empty()) out["notes"] = rep.notes;
    out["ok"] = rep.ok;
    return out;
}

json search_spec_params_to_json(const SearchSpec& spec) {
    json tgt;
    switch (spec.target.kind) {
        case SearchTarget::Kind::AnyClub:
            tgt = {{"kind", "any_club"}};
            break;
        case SearchTarget::Kind::Club:
            tgt = {{"kind", "club"}, {"i", spec.target.club_index}};
            break;
        case SearchTarget::Kind::Scattered:
            tgt = {{"kind", "scattered"}};
            break;
        case SearchTarget::Kind::Census:
            tgt = {{"kind", "census"}};
            break;
    }
    json out{{"field", tower_to_json(*spec.tower)},
             {"k", spec.k},
             {"n", spec.n},
             {"target", tgt},
             {"budget", spec.budget},
             {"hit_cap", spec.hit_cap}};
    if (spec.anchor_S) {
        json anchor = json::array();
        for (const auto& v : spec.anchor_S->basis()) anchor.push_back(v[0]);
        out["anchor_S"] = anchor;
    }
    return out;
}

SearchSpec search_spec_from_json(const json& j) {
    SearchSpec spec;
    spec.tower = tower_from_json(j.at("field"));
    spec.k = get_field<int>(j, "k");
    spec.n = get_field<int>(j, "n");
    const json& tgt = j.at("target");
    std::string kind = tgt.is_string() ? tgt.get<std::string>() : tgt.at("kind").get<std::string>();
    if (kind == "any_club")
        spec.target.kind = SearchTarget::Kind::AnyClub;
    else if (kind == "club") {
        spec.target.kind = SearchTarget::Kind::Club;
        spec.target.club_index = tgt.at("i").get<int>();
    } else if (kind == "scattered")
        spec.target.kind = SearchTarget::Kind::Scattered;
    else if (kind == "census")
        spec.target.kind = SearchTarget::Kind::Census;
    else
        fail("ParseError", "unknown search target: " + kind);
    if (j.contains("budget")) spec.budget = j.at("budget").get<std::uint64_t>();
    if (j.contains("hit_cap")) spec.hit_cap = j.at("hit_cap").get<std::size_t>();
    if (j.contains("jobs")) spec.jobs = j.at("jobs").get<int>();
    if (j.contains("anchor_S")) {
        std::vector<std::vector<felem>> basis;
        for (felem x : j.at("anchor_S").get<std::vector<felem>>()) basis.push_back({x});
        spec.anchor_S = SubspaceU(spec.tower, 1, basis);
    }
    return spec;
}

json search_result_to_json(const SearchResult& res, bool with_timing) {
    json out;
    out["expected_count"] = mpz_to_json(res.expected_count);
    out["scanned"] = res.scanned;
    out["census"] = res.census;
    out["hits_truncated"] = res.hits_truncated;
    out["hit_count"] = res.hits.size();
    if (with_timing) out["wall_seconds"] = res.wall_seconds;
    return out;
}

}  // namespace clubforge
