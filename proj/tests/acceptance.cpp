#include <chrono>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "anosov/affine_flow.hpp"
#include "anosov/birkhoff.hpp"
#include "anosov/hyperbolicity.hpp"
#include "anosov/report.hpp"
#include "anosov/sections.hpp"
#include "anosov_cli/commands.hpp"
#include "anosov_cli/config.hpp"
#include "oracles.hpp"

using namespace anosov;

namespace {

// Pinned tolerances and budgets of the acceptance run.
constexpr double kFactorDetTol = 1e-12;
constexpr double kWordDetTol = 1e-9;
constexpr std::size_t kVolumeSamples = 10000;
constexpr std::size_t kMaxWordLength = 40;
constexpr double kTraceTol = 1e-12;
constexpr double kNilpotentTol = 1e-10;
constexpr std::size_t kTransitEntries = 1000;
constexpr double kTransitTol = 1e-6;
constexpr int kBudget = 12;
constexpr double kRatio = 0.25;
constexpr std::size_t kSuiteWords = 10000;
constexpr double kMuFraction = 0.9;
constexpr double kSplittingSlack = 0.05;
constexpr std::size_t kSplittingWords = 60;
constexpr int kCombinatoricsRange = 50;
constexpr std::size_t kCurveClasses = 20;
constexpr int kTransversalityGrid = 200;
constexpr double kCatLambda = 0.381966011250105;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

int failures = 0;

void report(int id, bool ok, const std::string& what, const std::string& detail) {
    std::printf("criterion %d: %s  %s  [%s]\n", id, ok ? "PASS" : "FAIL", what.c_str(), detail.c_str());
    std::fflush(stdout);
    if (!ok) ++failures;
}

std::string fmt(const char* f, double a) {
    char buf[128];
    std::snprintf(buf, sizeof buf, f, a);
    return buf;
}

ModelParams params_with(double lambda, double r1, double r2) {
    ModelParams p;
    p.lambda = lambda;
    p.n = 1;
    p.m = -1;
    p.p = 1;
    p.r1 = r1;
    p.r2 = r2;
    return p;
}

void criterion_volume() {
    const auto start = Clock::now();
    std::mt19937_64 rng(101);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    double factor_dev = 0.0;
    double word_dev = 0.0;
    double naive_dev = 0.0;
    const std::vector<ModelParams> family = {params_with(0.5, 0.4, 0.1), params_with(kCatLambda, 0.025, 0.00625)};
    for (std::size_t i = 0; i < kVolumeSamples; ++i) {
        const auto& p = family[i % family.size()];
        factor_dev = std::max(factor_dev, std::abs(phi_matrix_full(p, p.r2 * u(rng)).determinant() - 1.0));
        const auto length = 1 + static_cast<std::size_t>(u(rng) * kMaxWordLength) % kMaxWordLength;
        CocycleWord w;
        for (std::size_t k = 0; k < length; ++k) {
            if (k % 2 == 0) w.factors.emplace_back(FlowSeg{3.0 * u(rng)});
            else w.factors.emplace_back(GlueAt{p.r2 * u(rng)});
        }
        word_dev = std::max(word_dev, volume_check(p, w));
        naive_dev = std::max(naive_dev, std::abs(oracle::naive_product(p, w).determinant() - 1.0));
    }
    const double elapsed = seconds_since(start);
    report(1, factor_dev <= kFactorDetTol && word_dev <= kWordDetTol && elapsed < 5.0, "volume preservation",
           fmt("max |det Phi - 1| = %.3g", factor_dev) + fmt(", max |det Dpsi - 1| = %.3g", word_dev) +
               fmt(", assembled-product det deviation %.3g (diagnostic)", naive_dev) + fmt(", %.2f s", elapsed));
}

void criterion_unipotent() {
    const auto start = Clock::now();
    double trace_dev = 0.0;
    double nil = 0.0;
    for (const auto& p : {params_with(0.5, 0.4, 0.1), params_with(kCatLambda, 0.025, 0.00625)}) {
        for (std::size_t i = 0; i <= kVolumeSamples; ++i) {
            const Mat2 m = phi_matrix_su(p, p.r2 * static_cast<double>(i) / kVolumeSamples);
            trace_dev = std::max(trace_dev, std::abs(m.trace() - 2.0));
            const Mat2 n = m - Mat2::Identity();
            nil = std::max(nil, (n * n).norm());
        }
    }
    const double elapsed = seconds_since(start);
    report(2, trace_dev <= kTraceTol && nil <= kNilpotentTol && elapsed < 1.0, "unipotent su-structure",
           fmt("max |tr - 2| = %.3g", trace_dev) + fmt(", max ||(M - I)^2|| = %.3g", nil) + fmt(", %.2f s", elapsed));
}

void criterion_transit() {
    const auto start = Clock::now();
    std::mt19937_64 rng(103);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    double time_dev = 0.0;
    double exit_dev = 0.0;
    for (std::size_t i = 0; i < kTransitEntries; ++i) {
        const auto p = i % 2 == 0 ? params_with(0.5, 0.4, 0.1) : params_with(kCatLambda, 0.4, 0.1);
        const int q = 1 + static_cast<int>(i / 2) % 4;
        const auto s = quadrant_signs(q);
        double r = 0.0;
        while (!(r > 1e-6)) r = p.r2 * u(rng);
        const Point3 entry(s[0] * p.r1, s[1] * r, u(rng));
        const auto tr = transit_map(p, entry);
        const auto hit = oracle::integrate_until_y(p, {entry.x, entry.y, entry.z}, p.r1);
        time_dev = std::max(time_dev, std::abs(tr->transit_time - hit.time));
        exit_dev = std::max({exit_dev, std::abs(tr->exit_point.x - hit.state[0]),
                             std::abs(tr->exit_point.y - hit.state[1]),
                             circle_distance(tr->exit_point.z, wrap_unit(hit.state[2]))});
    }
    const double elapsed = seconds_since(start);
    report(3, time_dev <= kTransitTol && exit_dev <= kTransitTol && elapsed < 5.0, "transit oracle",
           fmt("max |tau - tau_ode| = %.3g", time_dev) + fmt(", max exit deviation %.3g", exit_dev) +
               fmt(", %.2f s", elapsed));
}

const CheckReport* find_check(const std::vector<CheckReport>& suite, const std::string& name) {
    for (const auto& c : suite) {
        if (c.check == name) return &c;
    }
    return nullptr;
}

SearchResult criterion_search() {
    const auto start = Clock::now();
    SearchOptions opt;
    opt.suite.words = kSuiteWords;
    const auto res = parameter_search(kCatLambda, 1, -1, 1, kRatio, kBudget, opt);
    const double elapsed = seconds_since(start);
    bool ok = res.feasible && res.halvings <= kBudget && elapsed < 60.0;
    std::string detail = res.feasible ? fmt("r1 = %.6g", res.params.r1) + fmt(", halvings %.0f", res.halvings)
                                      : "infeasible: " + res.failing_check;
    if (res.feasible) {
        std::size_t invariance = 0;
        for (const char* name : {"cone_invariance_cu", "cone_invariance_cs", "slope_contraction_cu",
                                 "slope_contraction_cs", "expansion_cu", "expansion_cs"}) {
            const auto* c = find_check(res.suite, name);
            ok = ok && c && c->passed();
            if (c && std::string(name).rfind("cone_invariance", 0) == 0) invariance += c->violations;
        }
        const auto* e = find_check(res.suite, "expansion_cu");
        const double mu = res.constants->mu;
        const double measured = e ? e->metrics.at("mu_measured") : 0.0;
        ok = ok && measured > 1.0 && measured >= kMuFraction * mu;
        detail += fmt(", invariance violations %.0f", static_cast<double>(invariance)) +
                  fmt(", mu_measured %.4g", measured) + fmt(" vs mu %.4g", mu) + fmt(", %.1f s", elapsed);
    }
    report(4, ok, "cone criterion feasibility", detail);
    return res;
}

void criterion_strong(const SearchResult& res) {
    if (!res.feasible) {
        report(5, false, "strong cones and splitting", "no feasible parameters");
        return;
    }
    bool ok = true;
    for (const char* name : {"cone_invariance_strong_u", "cone_invariance_strong_s", "slope_contraction_strong_u",
                             "slope_contraction_strong_s", "expansion_strong_u", "expansion_strong_s"}) {
        const auto* c = find_check(res.suite, name);
        ok = ok && c && c->passed();
    }
    const auto& constants = *res.constants;
    SuiteOptions so;
    so.words = 2 * kSplittingWords;
    so.seed = 77;
    const auto words = suite_words(res.params, constants, so);
    const std::vector<CocycleWord> past(words.begin(), words.begin() + kSplittingWords);
    const std::vector<CocycleWord> future(words.begin() + kSplittingWords, words.end());
    std::string detail;
    try {
        const auto s = extract_splitting(res.params, constants, past, future, kSplittingWords);
        const double bound = std::pow(res.params.lambda, 2 * constants.T) + kSplittingSlack;
        ok = ok && s.max_weak_ratio <= bound && s.max_strong_ratio <= bound && s.axis_margin > 0.0;
        detail = fmt("max weak ratio %.3g", s.max_weak_ratio) + fmt(", max strong ratio %.3g", s.max_strong_ratio) +
                 fmt(" (bound %.3g)", bound) + fmt(", |1 - slope_u slope_s| = %.3g", s.axis_margin);
    } catch (const std::exception& e) {
        ok = false;
        detail = e.what();
    }
    report(5, ok, "strong cones and splitting", detail);
}

void criterion_combinatorics() {
    const auto start = Clock::now();
    bool ok = true;
    std::size_t pairs = 0;
    for (int n = 1; n <= kCombinatoricsRange; ++n) {
        for (int m = -kCombinatoricsRange; m <= kCombinatoricsRange; ++m) {
            if (m == 0 || std::gcd(n, std::abs(m)) != 1) continue;
            ++pairs;
            const auto q = quadrant_permutation(n, m);
            ok = ok && q.order() == n;
            for (int j = 1; j <= 4 * n; ++j) ok = ok && (q.apply(j) - j) % 4 == 0;
            if (n > 1) {
                const auto k = kth_power_shift(n, m);
                ok = ok && k && (static_cast<long>(k->k) * k->l) % n == 1 && k->l == oracle::inverse_mod(m, n);
            }
        }
    }
    std::size_t classes = 0;
    std::size_t mismatches = 0;
    for (auto [n, m] : {std::pair{1, -1}, {2, 1}, {3, -2}, {5, 3}}) {
        ModelParams p = params_with(0.5, 0.4, 0.1);
        p.n = n;
        p.m = m;
        const auto section = build_helicoid(p);
        for (std::size_t c = 0; c < kCurveClasses; ++c) {
            const int a = static_cast<int>(c % 5) - 2;
            const int b = static_cast<int>(c / 5) - 2 + (c >= 10 ? 1 : 0);
            ++classes;
            if (signed_crossings(section, a, b) != homological_intersection(a, b, n, m)) ++mismatches;
        }
    }
    ok = ok && mismatches == 0;
    const double elapsed = seconds_since(start);
    report(6, ok && elapsed < 5.0, "combinatorics",
           fmt("%.0f coprime pairs", static_cast<double>(pairs)) +
               fmt(", %.0f curve classes", static_cast<double>(classes)) +
               fmt(", %.0f intersection mismatches", static_cast<double>(mismatches)) + fmt(", %.2f s", elapsed));
}

void criterion_transversality(const SearchResult& res) {
    if (!res.feasible) {
        report(7, false, "helicoid transversality", "no feasible parameters");
        return;
    }
    const auto good = transversality_check(build_helicoid(res.params), kTransversalityGrid);
    const auto bad = transversality_check(build_helicoid(res.params, TwistPlacement::Swapped), kTransversalityGrid);
    const double bound = -res.params.r1 / (2.0 * res.params.n * res.params.p);
    const bool ok = good.passed && good.max_normalized_det < bound && bad.positive_points > 0;
    report(7, ok, "helicoid transversality",
           fmt("max det %.3g", good.max_det) + fmt(", max det/theta %.3g", good.max_normalized_det) +
               fmt(" (< %.3g)", bound) + fmt(", wrong signature: %.0f positive points",
                                             static_cast<double>(bad.positive_points)));
}

void criterion_determinism() {
    cli::RunConfig c = cli::parse_config(
        "lambda = 0.381966011250105\nr1 = 0.025\nr2 = 0.00625\nwords = 500\nseed = 17\n");
    const auto a = cli::cmd_verify(c, cli::Format::Json).report;
    const auto b = cli::cmd_verify(c, cli::Format::Json).report;
    c.n_max = 6;
    c.m_max = 4;
    const auto x = cli::cmd_combinatorics(c, cli::Format::Json).report;
    const auto y = cli::cmd_combinatorics(c, cli::Format::Json).report;
    report(8, a == b && x == y && !a.empty(), "determinism",
           fmt("verify report %.0f bytes", static_cast<double>(a.size())) +
               (a == b ? " identical" : " differs") + (x == y ? ", combinatorics identical" : ", combinatorics differs"));
}

}  // namespace

int main() {
    criterion_volume();
    criterion_unipotent();
    criterion_transit();
    const auto search = criterion_search();
    criterion_strong(search);
    criterion_combinatorics();
    criterion_transversality(search);
    criterion_determinism();
    std::printf("%d of 8 criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
