#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "anosov/cocycle.hpp"

namespace anosov {

/// Safety factor applied to every grid-extremized constant.
inline constexpr double kSafetyFactor = 1.05;

enum class ConeFlavor { cu, cs, strong_u, strong_s };

std::string to_string(ConeFlavor flavor);

/// A cone is the set of vectors whose flavor-appropriate slope lies in [delta_lo, delta_hi]:
/// Δ_u = b/c for cu, Δ_s = c/b for cs, Δ_ũ = a/c inside F^cu for strong_u and
/// a/b inside F^cs for strong_s.
struct Cone {
    double delta_lo = 0.0;
    double delta_hi = 0.0;
    ConeFlavor flavor = ConeFlavor::cu;

    bool contains(double slope) const { return slope >= delta_lo && slope <= delta_hi; }
    Interval interval() const { return {delta_lo, delta_hi}; }
};

/// How the lower edge of the weak cones is chosen.
///  Literal:  the slopes −3r1/r2, r2/(3r1) (cu) and −3r1/(2r2), 2r2/(3r1) (cs).
///  Adaptive: keep those slopes when every single-factor slope map is regular on the cone
///            and maps the axis inside it; otherwise move the offending edge to the
///            midpoint between the nearest pole and the image of the axis.
enum class ConePolicy { Adaptive, Literal };

std::string to_string(ConePolicy policy);
ConePolicy cone_policy_from_string(const std::string& name);

/// The literal weak cones: [−3r1/r2, r2/(3r1)] for cu and [−3r1/(2r2), 2r2/(3r1)] for cs.
Interval literal_cone(const ModelParams& params, ConeFlavor flavor);

/// Slopes of a tangent vector; std::nullopt signals a zero denominator.
std::optional<double> slope_u(const TangentVector& v);
std::optional<double> slope_s(const TangentVector& v);
/// Slope a/c of a vector a Y + c ẽ_u of the cu-plane.
std::optional<double> slope_tilde_u(double a, double c);

/// Q(δ) = 1 / (δ² + 1).
double q_factor(double delta);

/// Linear fractional map σ ↦ (m00 σ + m01) / (m10 σ + m11) acting on slopes.
struct Mobius {
    Mat2 m = Mat2::Identity();

    double operator()(double s) const;
    double denominator(double s) const { return m(1, 0) * s + m(1, 1); }
    /// Image of a slope interval, or std::nullopt when the map has a pole on it.
    std::optional<Interval> image(const Interval& iv) const;
};

/// Product of 2×2 factors kept at unit scale. The true product equals
/// exp(log_scale) · matrix and has determinant exp(log_det).
struct ScaledProduct {
    Mat2 matrix = Mat2::Identity();
    double log_scale = 0.0;
    double log_det = 0.0;

    void left_multiply(const Mat2& factor);
    /// Determinant of `matrix`, taken from the tracked log-determinant.
    double unit_determinant() const;
    /// Width of the image of an interval, computed without subtractive cancellation.
    std::optional<double> image_width(const Interval& iv) const;
};

/// Single-factor slope map of Φ at r for a weak flavor (cs uses the backward factor).
Mat2 weak_factor_matrix(const ModelParams& params, ConeFlavor flavor, double r);

/// Slope map of a whole word for a weak flavor. cu acts forward on Δ_u; cs acts
/// backward, from the end of the word to its start, on Δ_s.
ScaledProduct weak_word_map(const ModelParams& params, ConeFlavor flavor, const CocycleWord& word);

/// Slope map of a word inside the invariant plane for a strong flavor. strong_u runs
/// forward with the cu inclination starting at `inclination`; strong_s runs backward
/// with the cs inclination at the end of the word equal to `inclination`.
struct StrongWordMap {
    ScaledProduct map;
    double inclination_out = 0.0;
    bool degenerate = false;  ///< some restricted factor had B ≤ 0
};

StrongWordMap strong_word_map(const ModelParams& params, ConeFlavor flavor, const CocycleWord& word,
                              double inclination);

/// Constants of a weak cone family (slopes in absolute units).
struct WeakConeConstants {
    ConeFlavor flavor = ConeFlavor::cu;
    Interval literal_cone;
    Interval cone;
    bool literal_cone_admissible = false;
    double pole_bound = 0.0;   ///< nearest pole of a single-factor slope map below 0
    double axis_image = 0.0;   ///< most negative image of slope 0 under a single factor
    double epsilon = 0.0;      ///< Φ maps [−ε, ε] into the cone
    double C_slope = 0.0;      ///< images of the cone stay above −C_slope
    double D_slope = 0.0;      ///< and below D_slope
    double K0 = 0.0;           ///< bound on |K| / (1 − K) over the support
    double K0_lip = 0.0;       ///< Lipschitz bound of the single-factor slope maps on the cone
    double L0 = 0.0;           ///< K0_lip · (cone width)
    double T0_cone = 0.0;      ///< λ^{2 T0} max(C_slope, D_slope) ≤ ε
    double Q0 = 0.0;           ///< min(Q(−C_slope), Q(D_slope))
    double T0_expand = 0.0;    ///< safety-scaled log Q0 / log λ, so that Q0 λ^{−T0} > 1
    double R0 = 0.0;           ///< smallest singular value of a single factor
};

/// Constants of a strong cone family.
struct StrongConeConstants {
    ConeFlavor flavor = ConeFlavor::strong_u;
    double D0 = 0.0;       ///< r2 · max |A / B|
    double D1 = 0.0;       ///< max 1 / B
    double B_min = 0.0;
    double delta = 0.0;    ///< D0 / r2 + 1
    double kappa = 0.0;    ///< D0 / r2 + D1 δ + 1
    double epsilon = 0.0;  ///< Φ maps C(ε) into C(δ)
    double T0 = 0.0;       ///< λ^{T0} δ ≤ ε and λ^{T0} κ ≤ δ
};

struct ConstantsReport {
    ModelParams params;
    int grid = 0;
    ConePolicy policy = ConePolicy::Adaptive;
    WeakConeConstants cu;
    WeakConeConstants cs;
    StrongConeConstants strong_u;
    StrongConeConstants strong_s;
    // headline values
    double epsilon = 0.0;
    double C = 0.0;  ///< C with −C r1/r2 the lower image slope
    double D = 0.0;  ///< D with D r2/r1 the upper image slope
    double K0 = 0.0;
    double Q0 = 0.0;
    double T0 = 0.0;
    double T = 0.0;         ///< 2 T0, the word length beyond which the weak cones are invariant
    double T_strong = 0.0;  ///< the same threshold for the strong cones
    double T1_bound = 0.0;
    double mu = 0.0;
    double delta_u_strong = 0.0;
    double D0 = 0.0;
    double D1 = 0.0;
    std::map<std::string, std::string> provenance;
};

/// Certifies the cone constants by extremizing the exact slope maps over a grid of
/// `grid_size` points of the support [r2/3, 2r2/3]. Throws ResolutionError when the
/// grid cannot certify K0 < 1 and InfeasibleError when no admissible cone exists.
ConstantsReport estimate_constants(const ModelParams& params, int grid_size, double t1_bound,
                                   ConePolicy policy = ConePolicy::Adaptive);

/// Constants report carrying only the literal weak cones, for probing invariance when
/// estimate_constants cannot certify them.
ConstantsReport literal_cone_report(const ModelParams& params, double t1_bound);

/// T0 solving λ^{2 T0} · max(C_slope, D_slope) = ε (zero when already inside).
double cone_entry_time(double C_slope, double D_slope, double epsilon, double lambda);

struct Violation {
    std::size_t word_index = 0;
    std::string detail;
};

struct CheckReport {
    std::string check;
    std::size_t samples = 0;
    std::size_t violations = 0;
    std::size_t skipped = 0;
    double worst_margin = 0.0;
    std::vector<Violation> violation_list;  ///< sorted by word index, capped
    std::map<std::string, double> metrics;

    bool passed() const { return violations == 0; }
};

/// Most violations kept per report.
inline constexpr std::size_t kMaxListedViolations = 20;

/// Cone invariance: for each word of total time ≥ T, the image of the cone at its start
/// (end, for backward flavors) lies inside the cone. Images are computed exactly as
/// slope intervals and additionally checked on `slope_samples` slopes per word.
CheckReport check_cone_invariance(const ModelParams& params, const ConstantsReport& constants,
                                  ConeFlavor flavor, const std::vector<CocycleWord>& words,
                                  double T, int slope_samples = 5);

/// Slope contraction: image slope differences shrink like λ^{2t} L0 (weak) or
/// λ^{t} · 2δ · D1^{l} (strong, l gluing factors).
CheckReport check_slope_contraction(const ModelParams& params, const ConstantsReport& constants,
                                    ConeFlavor flavor, const std::vector<CocycleWord>& words);

struct GrowthRow {
    std::size_t word_index = 0;
    double t = 0.0;
    double log_growth = 0.0;
};

/// Expansion: least-squares fit of log-growth against time for cone vectors.
/// Passes when the fitted rate exceeds 1 and, for weak flavors, reaches 0.9 μ.
CheckReport check_expansion(const ModelParams& params, const ConstantsReport& constants,
                            ConeFlavor flavor, const std::vector<CocycleWord>& words,
                            std::vector<GrowthRow>* rows = nullptr);

struct SplittingResult {
    double cu_slope = 0.0;  ///< Δ_u inclination of F^cu
    double cs_slope = 0.0;  ///< Δ_s inclination of F^cs
    double u_slope = 0.0;   ///< Δ_ũ slope of F^u inside F^cu
    double s_slope = 0.0;   ///< slope of F^s inside F^cs
    std::vector<double> cu_ratios;
    std::vector<double> cs_ratios;
    std::vector<double> u_ratios;
    std::vector<double> s_ratios;
    double max_weak_ratio = 0.0;
    double max_strong_ratio = 0.0;
    double axis_margin = 0.0;  ///< |1 − Δ_u Δ_s|; zero would mean F^cu = F^cs
};

/// Nested-cone extraction of the invariant planes and lines at one point. `past` lists
/// the words leading to the point, most recent first; `future` lists the words after
/// it, nearest first. Throws InfeasibleError when an iteration fails to contract.
SplittingResult extract_splitting(const ModelParams& params, const ConstantsReport& constants,
                                  const std::vector<CocycleWord>& past,
                                  const std::vector<CocycleWord>& future, std::size_t iterations);

/// Analytic feasibility conditions at a given T1 bound; margin > 0 means satisfied.
struct Gate {
    std::string name;
    double margin = 0.0;
};

std::vector<Gate> weak_gates(const ConstantsReport& constants);
std::vector<Gate> strong_gates(const ConstantsReport& constants);

struct SuiteOptions {
    std::size_t words = 2000;
    std::size_t max_factors = 9;
    std::uint64_t seed = 1;
    double interior_spread = 2.0;
    int slope_samples = 5;
};

/// Samples the words used by a suite: interior times ≥ T1 bound and total time at least
/// max(T, T_strong).
std::vector<CocycleWord> suite_words(const ModelParams& params, const ConstantsReport& constants,
                                     const SuiteOptions& options);

/// The weak (invariance, contraction, expansion) checks for cu and cs.
std::vector<CheckReport> run_weak_suite(const ModelParams& params, const ConstantsReport& constants,
                                        const std::vector<CocycleWord>& words);

/// The strong (invariance, contraction, expansion) checks for strong_u and strong_s.
std::vector<CheckReport> run_strong_suite(const ModelParams& params,
                                          const ConstantsReport& constants,
                                          const std::vector<CocycleWord>& words);

struct SearchOptions {
    double r1_ref = 0.4;  ///< radius the halvings start from
    int grid = 400;
    ConePolicy policy = ConePolicy::Adaptive;
    SuiteOptions suite;
};

struct SearchAttempt {
    int halvings = 0;
    double r1 = 0.0;
    double r2 = 0.0;
    double T1 = 0.0;
    bool weak_passed = false;
    bool strong_passed = false;
    std::string failing_check;
    double margin = 0.0;
};

struct SearchResult {
    bool feasible = false;
    int weak_halvings = -1;  ///< first halving count whose weak suite passed
    int halvings = -1;       ///< halving count of the returned parameters
    ModelParams params;
    std::optional<ConstantsReport> constants;
    std::vector<CheckReport> suite;
    std::vector<SearchAttempt> attempts;
    std::string failing_check;
    double tightest_margin = 0.0;
};

/// Halves r1 (keeping r2 / r1 = ratio) until the weak and then the strong suites pass
/// on sampled words, for at most `budget` halvings.
SearchResult parameter_search(double lambda, int n, int m, int p, double ratio, int budget,
                              const SearchOptions& options = {});

}  // namespace anosov
