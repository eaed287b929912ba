#include "anosov_cli/commands.hpp"

#include <cmath>
#include <fstream>
#include <random>
#include <sstream>

#include "anosov/affine_flow.hpp"
#include "anosov/birkhoff.hpp"
#include "anosov/errors.hpp"
#include "anosov/report.hpp"
#include "anosov/sections.hpp"

namespace anosov::cli {

namespace {

constexpr double kVolumeFactorTol = 1e-12;
constexpr double kVolumeWordTol = 1e-9;
constexpr double kFirstReturnTol = 1e-9;

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

SuiteOptions suite_options(const RunConfig& c) {
    SuiteOptions s;
    s.words = c.words;
    s.max_factors = c.max_factors;
    s.seed = c.seed;
    s.interior_spread = c.interior_spread;
    s.slope_samples = c.slope_samples;
    return s;
}

SearchOptions search_options(const RunConfig& c) {
    SearchOptions s;
    s.r1_ref = c.r1_ref;
    s.grid = c.grid;
    s.policy = c.policy;
    s.suite = suite_options(c);
    return s;
}

std::string csv_number(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

}  // namespace

Format format_from_string(const std::string& name) {
    if (name == "json") return Format::Json;
    if (name == "csv") return Format::Csv;
    throw ConfigError("unknown format '" + name + "' (expected json or csv)");
}

CommandResult cmd_verify(const RunConfig& config, Format format) {
    validate_config(config);
    const ModelParams& params = config.params;
    double t1 = config.t1;
    if (t1 < 0.0) {
        t1 = params.r1 < config.r1_ref ? reentry_time_lower_bound(params.r1, config.r1_ref, params.lambda) : 0.0;
    }
    Json report = {{"command", "verify"}, {"config", describe(config)}, {"t1", t1}};

    std::vector<CheckReport> suite;
    bool passed = true;
    try {
        const ConstantsReport constants = estimate_constants(params, config.grid, t1, config.policy);
        report["constants"] = to_json(constants);
        Json gates = Json::array();
        for (const auto& g : weak_gates(constants)) gates.push_back({{"name", g.name}, {"margin", g.margin}});
        for (const auto& g : strong_gates(constants)) gates.push_back({{"name", g.name}, {"margin", g.margin}});
        report["gates"] = gates;
        const auto words = suite_words(params, constants, suite_options(config));
        suite = run_weak_suite(params, constants, words);
        const auto strong = run_strong_suite(params, constants, words);
        suite.insert(suite.end(), strong.begin(), strong.end());

        double word_volume = 0.0;
        for (const auto& w : words) word_volume = std::max(word_volume, volume_check(params, w));
        std::mt19937_64 rng(config.seed);
        std::uniform_real_distribution<double> unit(0.0, params.r2);
        double factor_volume = 0.0;
        for (std::size_t i = 0; i < config.volume_samples; ++i) {
            factor_volume = std::max(factor_volume, std::abs(phi_matrix_full(params, unit(rng)).determinant() - 1.0));
        }
        const bool volume_ok = factor_volume <= kVolumeFactorTol && word_volume <= kVolumeWordTol;
        report["volume"] = {{"max_factor_deviation", factor_volume},
                            {"max_word_deviation", word_volume},
                            {"passed", volume_ok}};
        passed = passed && volume_ok;
    } catch (const InfeasibleError& e) {
        report["error"] = std::string("no admissible cones: ") + e.what();
        passed = false;
        if (config.policy == ConePolicy::Literal) {
            // show where the literal cones fail on sampled words
            const ConstantsReport literal = literal_cone_report(params, t1);
            SamplerOptions so;
            so.interior_spread = config.interior_spread;
            const auto words = sample_itineraries(params, config.words, config.max_factors, t1, config.seed, so);
            for (ConeFlavor f : {ConeFlavor::cu, ConeFlavor::cs}) {
                suite.push_back(check_cone_invariance(params, literal, f, words, 0.0, config.slope_samples));
            }
        }
    } catch (const ResolutionError& e) {
        report["error"] = std::string(e.what()) + " (suggested grid " + std::to_string(e.suggested_grid()) + ")";
        passed = false;
    }
    Json checks = Json::array();
    for (const auto& c : suite) {
        checks.push_back(to_json(c));
        passed = passed && c.passed();
    }
    report["checks"] = checks;

    const auto section = build_helicoid(params, TwistPlacement::Matched, 0.0, config.helicoid_density);
    TransversalityReport transversality;
    if (config.mesh_out.empty()) {
        transversality = transversality_check(section, config.transversality_grid);
    } else {
        std::ostringstream mesh;
        mesh.precision(17);
        transversality = transversality_check(section, config.transversality_grid, &mesh);
        write_file_atomic(config.mesh_out, mesh.str());
    }
    report["transversality"] = to_json(transversality);
    passed = passed && transversality.passed;
    report["passed"] = passed;

    CommandResult out;
    out.exit_code = passed ? kExitPass : kExitFail;
    if (format == Format::Json) {
        out.report = dump(report);
    } else {
        std::ostringstream os;
        os << "check,passed,violations,samples,worst_margin\n";
        for (const auto& c : suite) {
            os << c.check << ',' << (c.passed() ? 1 : 0) << ',' << c.violations << ',' << c.samples
               << ',' << csv_number(c.worst_margin) << '\n';
        }
        if (report.contains("volume")) {
            os << "volume," << (report["volume"]["passed"].get<bool>() ? 1 : 0) << ",,,\n";
        }
        os << "transversality," << (transversality.passed ? 1 : 0) << ',' << transversality.positive_points
           << ',' << transversality.points << ',' << csv_number(-transversality.max_normalized_det) << '\n';
        out.report = os.str();
    }
    return out;
}

CommandResult cmd_search(const RunConfig& config, Format format) {
    validate_config(config);
    const ModelParams& p = config.params;
    const SearchResult result =
        parameter_search(p.lambda, p.n, p.m, p.p, config.ratio, config.budget, search_options(config));
    CommandResult out;
    out.exit_code = result.feasible ? kExitPass : kExitFail;
    if (format == Format::Json) {
        Json report = {{"command", "search"}, {"config", describe(config)}, {"result", to_json(result)}};
        out.report = dump(report);
    } else {
        std::ostringstream os;
        os << "halvings,r1,r2,T1,weak_passed,strong_passed,failing_check,margin\n";
        for (const auto& a : result.attempts) {
            os << a.halvings << ',' << csv_number(a.r1) << ',' << csv_number(a.r2) << ',' << csv_number(a.T1)
               << ',' << a.weak_passed << ',' << a.strong_passed << ",\"" << a.failing_check << "\","
               << csv_number(a.margin) << '\n';
        }
        out.report = os.str();
    }
    return out;
}

CommandResult cmd_combinatorics(const RunConfig& config, Format format) {
    validate_config(config);
    const auto rows = combinatorics_table(config.n_max, config.m_max, config.params.p);
    CommandResult out;
    if (format == Format::Json) {
        Json list = Json::array();
        for (const auto& r : rows) list.push_back(to_json(r));
        out.report = dump({{"command", "combinatorics"}, {"config", describe(config)}, {"rows", list}});
    } else {
        std::ostringstream os;
        os << "n,m,p,l,shift,k,order,defect,meridian_intersection,longitude_intersection,prongs,embedded\n";
        for (const auto& r : rows) {
            os << r.n << ',' << r.m << ',' << r.p << ',' << r.l << ',' << r.shift << ','
               << (r.k ? std::to_string(*r.k) : std::string()) << ',' << r.order << ',' << r.defect << ','
               << r.meridian_intersection << ',' << r.longitude_intersection << ',' << r.prongs << ','
               << (r.embedded ? 1 : 0) << '\n';
        }
        out.report = os.str();
    }
    return out;
}

CommandResult cmd_trace(const RunConfig& config, Format format) {
    validate_config(config);
    if (config.trace_r > config.params.r2) throw ConfigError("trace_r must lie in (0, r2]");
    const auto signs = quadrant_signs(config.trace_quadrant);
    const Point3 entry(signs[0] * config.params.r1, signs[1] * config.trace_r, 0.0);
    const auto rows = trace_orbit(config.params, entry, config.trace_samples);
    CommandResult out;
    if (format == Format::Json) {
        Json list = Json::array();
        for (const auto& r : rows) {
            list.push_back({{"t", r.t}, {"x", r.point.x}, {"y", r.point.y}, {"z", r.point.z}, {"region", r.region}});
        }
        out.report = dump({{"command", "trace"}, {"config", describe(config)}, {"rows", list}});
    } else {
        std::ostringstream os;
        os << "t,x,y,z,region\n";
        for (const auto& r : rows) {
            os << csv_number(r.t) << ',' << csv_number(r.point.x) << ',' << csv_number(r.point.y) << ','
               << csv_number(r.point.z) << ',' << r.region << '\n';
        }
        out.report = os.str();
    }
    return out;
}

CommandResult cmd_fixture(const RunConfig& config, Format format) {
    validate_config(config);
    FixtureOptions options;
    options.budget = config.budget;
    options.ratio = config.ratio;
    options.transversality_grid = config.transversality_grid;
    options.search = search_options(config);
    const int m = config.params.m < 0 ? -1 : 1;
    const FixtureReport rep = catmap_fixture(options, m);
    const bool passed = rep.search.feasible && rep.transversality && rep.transversality->passed &&
                        rep.wrong_signature && rep.wrong_signature->positive_points > 0 &&
                        rep.first_return.max_residual <= kFirstReturnTol;
    CommandResult out;
    out.exit_code = passed ? kExitPass : kExitFail;
    if (format == Format::Json) {
        out.report = dump({{"command", "fixture"}, {"config", describe(config)}, {"fixture", to_json(rep)},
                           {"passed", passed}});
    } else {
        std::ostringstream os;
        os << "item,value\n";
        os << "lambda," << csv_number(rep.lambda) << '\n';
        os << "spectral_radius," << csv_number(rep.spectral_radius) << '\n';
        os << "feasible," << rep.search.feasible << '\n';
        os << "halvings," << rep.search.halvings << '\n';
        if (rep.search.feasible) {
            os << "r1," << csv_number(rep.search.params.r1) << '\n';
            os << "r2," << csv_number(rep.search.params.r2) << '\n';
        }
        if (rep.transversality) os << "transversality," << rep.transversality->passed << '\n';
        if (rep.wrong_signature) os << "wrong_signature_positive_points," << rep.wrong_signature->positive_points << '\n';
        os << "first_return_residual," << csv_number(rep.first_return.max_residual) << '\n';
        os << "passed," << passed << '\n';
        out.report = os.str();
    }
    return out;
}

}  // namespace anosov::cli
