#include "anosov/report.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "anosov/errors.hpp"

namespace anosov {

Json to_json(const ModelParams& params) {
    return {{"lambda", params.lambda}, {"n", params.n}, {"m", params.m},
            {"p", params.p},           {"r1", params.r1}, {"r2", params.r2}};
}

Json to_json(const CocycleWord& word) {
    Json factors = Json::array();
    for (const auto& f : word.factors) {
        if (const auto* seg = std::get_if<FlowSeg>(&f)) {
            factors.push_back({{"flow", seg->duration}});
        } else {
            factors.push_back({{"glue_r", std::get<GlueAt>(f).r}});
        }
    }
    return {{"factors", factors},
            {"source", word.source == WordSource::Synthetic ? "synthetic" : "geometric"}};
}

CocycleWord word_from_json(const Json& j) {
    CocycleWord word;
    try {
        for (const auto& f : j.at("factors")) {
            if (f.contains("flow")) {
                word.factors.emplace_back(FlowSeg{f.at("flow").get<double>()});
            } else if (f.contains("glue_r")) {
                word.factors.emplace_back(GlueAt{f.at("glue_r").get<double>()});
            } else {
                throw ConfigError("word factor must be a flow or a glue entry");
            }
        }
        if (j.contains("source")) {
            const auto source = j.at("source").get<std::string>();
            if (source == "geometric") {
                word.source = WordSource::Geometric;
            } else if (source != "synthetic") {
                throw ConfigError("unknown word source '" + source + "'");
            }
        }
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("malformed word: ") + e.what());
    }
    return word;
}

Json to_json(const Interval& iv) { return {{"lo", iv.lo}, {"hi", iv.hi}}; }

Json to_json(const WeakConeConstants& c) {
    return {{"flavor", to_string(c.flavor)},
            {"literal_cone", to_json(c.literal_cone)},
            {"cone", to_json(c.cone)},
            {"literal_cone_admissible", c.literal_cone_admissible},
            {"pole_bound", c.pole_bound},
            {"axis_image", c.axis_image},
            {"epsilon", c.epsilon},
            {"C_slope", c.C_slope},
            {"D_slope", c.D_slope},
            {"K0", c.K0},
            {"K0_lip", c.K0_lip},
            {"L0", c.L0},
            {"T0_cone", c.T0_cone},
            {"Q0", c.Q0},
            {"T0_expand", c.T0_expand},
            {"R0", c.R0}};
}

Json to_json(const StrongConeConstants& c) {
    return {{"flavor", to_string(c.flavor)}, {"D0", c.D0},       {"D1", c.D1},
            {"B_min", c.B_min},              {"delta", c.delta}, {"kappa", c.kappa},
            {"epsilon", c.epsilon},          {"T0", c.T0}};
}

Json to_json(const ConstantsReport& r) {
    return {{"params", to_json(r.params)},
            {"grid", r.grid},
            {"policy", to_string(r.policy)},
            {"cu", to_json(r.cu)},
            {"cs", to_json(r.cs)},
            {"strong_u", to_json(r.strong_u)},
            {"strong_s", to_json(r.strong_s)},
            {"epsilon", r.epsilon},
            {"C", r.C},
            {"D", r.D},
            {"K0", r.K0},
            {"Q0", r.Q0},
            {"T0", r.T0},
            {"T", r.T},
            {"T_strong", r.T_strong},
            {"T1_bound", r.T1_bound},
            {"mu", r.mu},
            {"delta_u_strong", r.delta_u_strong},
            {"D0", r.D0},
            {"D1", r.D1},
            {"provenance", r.provenance}};
}

Json to_json(const CheckReport& r) {
    Json list = Json::array();
    for (const auto& v : r.violation_list) list.push_back({{"word", v.word_index}, {"detail", v.detail}});
    return {{"check", r.check},
            {"samples", r.samples},
            {"violations", r.violations},
            {"skipped", r.skipped},
            {"worst_margin", r.worst_margin},
            {"violation_list", list},
            {"metrics", r.metrics},
            {"passed", r.passed()}};
}

Json to_json(const SearchResult& r) {
    Json attempts = Json::array();
    for (const auto& a : r.attempts) {
        attempts.push_back({{"halvings", a.halvings},
                            {"r1", a.r1},
                            {"r2", a.r2},
                            {"T1", a.T1},
                            {"weak_passed", a.weak_passed},
                            {"strong_passed", a.strong_passed},
                            {"failing_check", a.failing_check},
                            {"margin", a.margin}});
    }
    Json suite = Json::array();
    for (const auto& c : r.suite) suite.push_back(to_json(c));
    Json out = {{"feasible", r.feasible},
                {"weak_halvings", r.weak_halvings},
                {"halvings", r.halvings},
                {"attempts", attempts},
                {"suite", suite},
                {"failing_check", r.failing_check},
                {"tightest_margin", r.tightest_margin}};
    if (r.feasible) out["params"] = to_json(r.params);
    if (r.constants) out["constants"] = to_json(*r.constants);
    return out;
}

Json to_json(const TransversalityReport& r) {
    return {{"grid", r.grid},
            {"points", r.points},
            {"max_det", r.max_det},
            {"max_normalized_det", r.max_normalized_det},
            {"min_det", r.min_det},
            {"positive_points", r.positive_points},
            {"horizontal_ok", r.horizontal_ok},
            {"passed", r.passed}};
}

Json to_json(const SplittingResult& r) {
    return {{"cu_slope", r.cu_slope},
            {"cs_slope", r.cs_slope},
            {"u_slope", r.u_slope},
            {"s_slope", r.s_slope},
            {"cu_ratios", r.cu_ratios},
            {"cs_ratios", r.cs_ratios},
            {"u_ratios", r.u_ratios},
            {"s_ratios", r.s_ratios},
            {"max_weak_ratio", r.max_weak_ratio},
            {"max_strong_ratio", r.max_strong_ratio},
            {"axis_margin", r.axis_margin}};
}

Json to_json(const BirkhoffBoundaryData& d) { return {{"p", d.p}, {"n", d.n}, {"m", d.m}}; }

Json to_json(const CombinatoricsRow& row) {
    return {{"n", row.n},
            {"m", row.m},
            {"p", row.p},
            {"l", row.l},
            {"shift", row.shift},
            {"k", row.k ? Json(*row.k) : Json(nullptr)},
            {"order", row.order},
            {"defect", row.defect},
            {"meridian_intersection", row.meridian_intersection},
            {"longitude_intersection", row.longitude_intersection},
            {"prongs", row.prongs},
            {"embedded", row.embedded}};
}

Json to_json(const FixtureReport& r) {
    Json boundary = Json::array();
    for (std::size_t i = 0; i < r.boundary.size(); ++i) {
        Json b = to_json(r.boundary[i]);
        b["valid"] = r.validations[i].ok;
        b["embedded"] = r.validations[i].embedded;
        b["violations"] = r.validations[i].violations;
        b["prongs"] = r.blowdown[i].prongs;
        b["singular"] = r.blowdown[i].singular;
        boundary.push_back(b);
    }
    Json out = {{"lambda", r.lambda},
                {"spectral_radius", r.spectral_radius},
                {"boundary", boundary},
                {"search", to_json(r.search)},
                {"first_return", {{"samples", r.first_return.samples},
                                  {"max_residual", r.first_return.max_residual}}}};
    if (r.transversality) out["transversality"] = to_json(*r.transversality);
    if (r.wrong_signature) out["wrong_signature"] = to_json(*r.wrong_signature);
    return out;
}

void write_file_atomic(const std::string& path, const std::string& content) {
    namespace fs = std::filesystem;
    const fs::path target(path);
    fs::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw ConfigError("cannot open '" + tmp.string() + "' for writing");
        out << content;
        out.flush();
        if (!out) throw ConfigError("failed writing '" + tmp.string() + "'");
    }
    std::error_code ec;
    fs::rename(tmp, target, ec);
    if (ec) {
        fs::remove(tmp);
        throw ConfigError("cannot move report into place at '" + path + "': " + ec.message());
    }
}

}  // namespace anosov
