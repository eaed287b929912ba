#include "anosov/hyperbolicity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "anosov/affine_flow.hpp"
#include "anosov/errors.hpp"

namespace anosov {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

bool is_weak(ConeFlavor flavor) { return flavor == ConeFlavor::cu || flavor == ConeFlavor::cs; }

bool is_backward(ConeFlavor flavor) {
    return flavor == ConeFlavor::cs || flavor == ConeFlavor::strong_s;
}

std::vector<double> support_grid(const ModelParams& params, int grid) {
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(grid));
    for (int i = 0; i < grid; ++i) {
        const double s = static_cast<double>(i) / static_cast<double>(grid - 1);
        out.push_back(params.r2 * (1.0 / 3.0 + s / 3.0));
    }
    return out;
}

std::vector<double> interval_grid(const Interval& iv, int count) {
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) {
        out.push_back(iv.lo + iv.width() * static_cast<double>(i) / static_cast<double>(count - 1));
    }
    return out;
}

Mat2 flow_plane_factor(const ModelParams& params, ConeFlavor flavor, double t) {
    Mat2 f = Mat2::Zero();
    if (is_weak(flavor)) {
        // forward on (b, c) for cu and backward on (c, b) for cs share diag(λ^t, λ^{-t})
        f(0, 0) = std::pow(params.lambda, t);
        f(1, 1) = std::pow(params.lambda, -t);
    } else {
        f(0, 0) = 1.0;
        f(1, 1) = std::pow(params.lambda, -t);
    }
    return f;
}

// Factors of a word in the order they act, for one flavor. Strong flavors thread the
// plane inclination through the word.
std::vector<Mat2> factor_sequence(const ModelParams& params, ConeFlavor flavor,
                                  const CocycleWord& word, double inclination,
                                  double* inclination_out, bool* degenerate) {
    std::vector<Mat2> out;
    out.reserve(word.factors.size());
    const std::size_t count = word.factors.size();
    double incl = inclination;
    for (std::size_t step = 0; step < count; ++step) {
        const std::size_t idx = is_backward(flavor) ? count - 1 - step : step;
        const Factor& factor = word.factors[idx];
        if (const auto* seg = std::get_if<FlowSeg>(&factor)) {
            out.push_back(flow_plane_factor(params, flavor, seg->duration));
            incl *= std::pow(params.lambda, 2.0 * seg->duration);
            continue;
        }
        const double r = std::get<GlueAt>(factor).r;
        if (is_weak(flavor)) {
            out.push_back(weak_factor_matrix(params, flavor, r));
            continue;
        }
        CuFactor f;
        if (flavor == ConeFlavor::strong_u) {
            f = phi_matrix_cu(params, r, incl);
        } else {
            f = restrict_to_cs_plane(phi_matrix_full(params, r).inverse(), incl);
        }
        if (f.ill_conditioned && degenerate) *degenerate = true;
        incl = f.alpha_out;
        out.push_back(f.matrix);
    }
    if (inclination_out) *inclination_out = incl;
    return out;
}

ScaledProduct product_of(const std::vector<Mat2>& factors) {
    ScaledProduct p;
    for (const auto& f : factors) p.left_multiply(f);
    return p;
}

ScaledProduct compose_products(const ScaledProduct& left, const ScaledProduct& right) {
    ScaledProduct out;
    out.matrix = left.matrix * right.matrix;
    out.log_scale = left.log_scale + right.log_scale;
    out.log_det = left.log_det + right.log_det;
    const double s = out.matrix.cwiseAbs().maxCoeff();
    if (s > 0.0) {
        out.matrix /= s;
        out.log_scale += std::log(s);
    }
    return out;
}

std::string format_word_detail(const std::string& what, double value) {
    std::ostringstream os;
    os.precision(17);
    os << what << ' ' << value;
    return os.str();
}

void record_violation(CheckReport& report, std::size_t index, const std::string& detail) {
    ++report.violations;
    if (report.violation_list.size() < kMaxListedViolations) {
        report.violation_list.push_back({index, detail});
    }
}

WeakConeConstants weak_constants(const ModelParams& params, ConeFlavor flavor, int grid,
                                 ConePolicy policy) {
    WeakConeConstants out;
    out.flavor = flavor;
    out.literal_cone = literal_cone(params, flavor);
    const auto rs = support_grid(params, grid);

    double pole_lo = -kInf;
    double pole_hi = kInf;
    double axis_lo = 0.0;
    double axis_hi = 0.0;
    double k0_raw = 0.0;
    for (double r : rs) {
        const Mobius g{weak_factor_matrix(params, flavor, r)};
        if (g.m(1, 0) != 0.0) {
            const double pole = -g.m(1, 1) / g.m(1, 0);
            if (pole < 0.0) pole_lo = std::max(pole_lo, pole);
            if (pole > 0.0) pole_hi = std::min(pole_hi, pole);
        }
        const double axis = g(0.0);
        axis_lo = std::min(axis_lo, axis);
        axis_hi = std::max(axis_hi, axis);
        const double K = su_constant(params, r);
        k0_raw = std::max(k0_raw, std::abs(K) / (1.0 - K));
    }
    // move the certified pole toward 0 and the certified axis image away from it
    const double pole_lo_c = pole_lo / kSafetyFactor;
    const double pole_hi_c = pole_hi / kSafetyFactor;
    const double axis_lo_c = axis_lo * kSafetyFactor;
    const double axis_hi_c = axis_hi * kSafetyFactor;
    out.pole_bound = pole_lo;
    out.axis_image = axis_lo;

    const bool lo_ok = out.literal_cone.lo > pole_lo_c && out.literal_cone.lo < axis_lo_c;
    const bool hi_ok = out.literal_cone.hi < pole_hi_c && out.literal_cone.hi > axis_hi_c;
    out.literal_cone_admissible = lo_ok && hi_ok;
    out.cone = out.literal_cone;
    if (policy == ConePolicy::Adaptive) {
        if (!lo_ok) {
            if (!(axis_lo_c > pole_lo_c)) {
                throw InfeasibleError("no admissible lower slope for the " + to_string(flavor) +
                                      " cone: the axis image is beyond the nearest pole");
            }
            out.cone.lo = 0.5 * (pole_lo_c + axis_lo_c);
        }
        if (!hi_ok) {
            if (!(axis_hi_c < pole_hi_c)) {
                throw InfeasibleError("no admissible upper slope for the " + to_string(flavor) +
                                      " cone: the axis image is beyond the nearest pole");
            }
            out.cone.hi = pole_hi_c < kInf ? 0.5 * (pole_hi_c + axis_hi_c) : out.literal_cone.hi;
        }
    }
    const Interval cone = out.cone;

    // images of the whole cone
    double c_slope = -cone.lo;
    double d_slope = cone.hi;
    double lip = 1.0;
    double r0 = 1.0;
    const auto sigmas = interval_grid(cone, 65);
    for (double r : rs) {
        const Mobius g{weak_factor_matrix(params, flavor, r)};
        const auto img = g.image(cone);
        if (!img) {
            std::ostringstream msg;
            msg << "single-factor slope map has a pole inside the " << to_string(flavor)
                << " cone at r = " << r;
            throw InfeasibleError(msg.str());
        }
        c_slope = std::max(c_slope, -img->lo);
        d_slope = std::max(d_slope, img->hi);
        const double det = g.m.determinant();
        for (double s : sigmas) {
            const double d = g.denominator(s);
            lip = std::max(lip, det / (d * d));
        }
        Eigen::JacobiSVD<Mat2> svd(g.m);
        r0 = std::min(r0, svd.singularValues()(1));
    }
    out.C_slope = kSafetyFactor * c_slope;
    out.D_slope = kSafetyFactor * d_slope;
    out.K0_lip = kSafetyFactor * lip;
    out.L0 = out.K0_lip * cone.width();
    out.R0 = r0 / kSafetyFactor;

    out.K0 = kSafetyFactor * k0_raw;
    if (!(out.K0 < 1.0)) {
        throw ResolutionError("grid cannot certify K0 < 1 for the " + to_string(flavor) + " cone",
                              4 * grid);
    }

    // largest e with Φ([−e, e]) inside the open cone for every r, by bisection
    const auto fits = [&](double e) {
        if (!(e < cone.hi && -e > cone.lo)) return false;
        for (double r : rs) {
            const auto img = Mobius{weak_factor_matrix(params, flavor, r)}.image({-e, e});
            if (!img || !(img->lo > cone.lo && img->hi < cone.hi)) return false;
        }
        return true;
    };
    double lo = 0.0;
    double hi = std::min(-cone.lo, cone.hi);
    for (int it = 0; it < 200 && hi - lo > 1e-15 * hi; ++it) {
        const double mid = 0.5 * (lo + hi);
        (fits(mid) ? lo : hi) = mid;
    }
    if (!(lo > 0.0)) {
        throw InfeasibleError("no epsilon-cone is mapped inside the " + to_string(flavor) + " cone");
    }
    out.epsilon = lo / kSafetyFactor;

    out.T0_cone = cone_entry_time(out.C_slope, out.D_slope, out.epsilon, params.lambda);
    out.Q0 = std::min(q_factor(-out.C_slope), q_factor(out.D_slope));
    out.T0_expand = kSafetyFactor * std::log(out.Q0) / params.log_lambda();
    return out;
}

StrongConeConstants strong_constants(const ModelParams& params, ConeFlavor flavor,
                                     const Interval& incl_range, int grid) {
    StrongConeConstants out;
    out.flavor = flavor;
    const auto rs = support_grid(params, grid);
    const auto incls = interval_grid(incl_range, 33);
    double max_ab = 0.0;
    double max_inv_b = 1.0;
    double b_min = 1.0;
    std::vector<std::pair<double, double>> samples;  // (A, B)
    samples.reserve(rs.size() * incls.size());
    for (double r : rs) {
        const Mat3 inverse = phi_matrix_full(params, r).inverse();
        for (double incl : incls) {
            const CuFactor f = flavor == ConeFlavor::strong_u ? phi_matrix_cu(params, r, incl)
                                                              : restrict_to_cs_plane(inverse, incl);
            const double A = f.matrix(0, 1);
            const double B = f.matrix(1, 1);
            if (!(B > 0.0)) {
                std::ostringstream msg;
                msg << "restricted factor loses orientation (B <= 0) for " << to_string(flavor)
                    << " at r = " << r;
                throw InfeasibleError(msg.str());
            }
            b_min = std::min(b_min, B);
            max_ab = std::max(max_ab, std::abs(A) / B);
            max_inv_b = std::max(max_inv_b, 1.0 / B);
            samples.emplace_back(A, B);
        }
    }
    out.B_min = b_min;
    out.D0 = kSafetyFactor * params.r2 * max_ab;
    out.D1 = kSafetyFactor * max_inv_b;
    out.delta = out.D0 / params.r2 + 1.0;
    out.kappa = out.D0 / params.r2 + out.D1 * out.delta + 1.0;
    double eps = out.delta;  // identity factors
    for (const auto& [A, B] : samples) eps = std::min(eps, out.delta * B - std::abs(A));
    out.epsilon = eps / kSafetyFactor;
    const double L = params.log_lambda();
    out.T0 = std::max({0.0, std::log(out.epsilon / out.delta) / L, std::log(out.delta / out.kappa) / L});
    return out;
}

double fit_slope(const std::vector<GrowthRow>& rows, double* intercept) {
    double st = 0.0;
    double sg = 0.0;
    for (const auto& row : rows) {
        st += row.t;
        sg += row.log_growth;
    }
    const double n = static_cast<double>(rows.size());
    const double mt = st / n;
    const double mg = sg / n;
    double stt = 0.0;
    double stg = 0.0;
    for (const auto& row : rows) {
        stt += (row.t - mt) * (row.t - mt);
        stg += (row.t - mt) * (row.log_growth - mg);
    }
    const double slope = stt > 0.0 ? stg / stt : 0.0;
    if (intercept) *intercept = mg - slope * mt;
    return slope;
}

}  // namespace

Interval literal_cone(const ModelParams& params, ConeFlavor flavor) {
    const double r1 = params.r1;
    const double r2 = params.r2;
    if (flavor == ConeFlavor::cu) return {-3.0 * r1 / r2, r2 / (3.0 * r1)};
    if (flavor == ConeFlavor::cs) return {-3.0 * r1 / (2.0 * r2), 2.0 * r2 / (3.0 * r1)};
    throw DomainError("literal cones exist for the weak flavors only");
}

ConstantsReport literal_cone_report(const ModelParams& params, double t1_bound) {
    ConstantsReport rep;
    rep.params = params;
    rep.policy = ConePolicy::Literal;
    rep.T1_bound = t1_bound;
    rep.cu.flavor = ConeFlavor::cu;
    rep.cs.flavor = ConeFlavor::cs;
    rep.cu.literal_cone = rep.cu.cone = literal_cone(params, ConeFlavor::cu);
    rep.cs.literal_cone = rep.cs.cone = literal_cone(params, ConeFlavor::cs);
    rep.provenance = {{"cone", "literal_slopes"}};
    return rep;
}

std::string to_string(ConeFlavor flavor) {
    switch (flavor) {
        case ConeFlavor::cu: return "cu";
        case ConeFlavor::cs: return "cs";
        case ConeFlavor::strong_u: return "strong_u";
        case ConeFlavor::strong_s: return "strong_s";
    }
    return "unknown";
}

std::string to_string(ConePolicy policy) {
    return policy == ConePolicy::Literal ? "literal" : "adaptive";
}

ConePolicy cone_policy_from_string(const std::string& name) {
    if (name == "literal") return ConePolicy::Literal;
    if (name == "adaptive") return ConePolicy::Adaptive;
    throw ConfigError("unknown cone policy '" + name + "' (expected adaptive or literal)");
}

std::optional<double> slope_u(const TangentVector& v) {
    if (v.c == 0.0) return std::nullopt;
    return v.b / v.c;
}

std::optional<double> slope_s(const TangentVector& v) {
    if (v.b == 0.0) return std::nullopt;
    return v.c / v.b;
}

std::optional<double> slope_tilde_u(double a, double c) {
    if (c == 0.0) return std::nullopt;
    return a / c;
}

double q_factor(double delta) { return 1.0 / (delta * delta + 1.0); }

double Mobius::operator()(double s) const { return (m(0, 0) * s + m(0, 1)) / denominator(s); }

std::optional<Interval> Mobius::image(const Interval& iv) const {
    const double d_lo = denominator(iv.lo);
    const double d_hi = denominator(iv.hi);
    if (!(d_lo * d_hi > 0.0)) return std::nullopt;
    const double a = (*this)(iv.lo);
    const double b = (*this)(iv.hi);
    return Interval{std::min(a, b), std::max(a, b)};
}

void ScaledProduct::left_multiply(const Mat2& factor) {
    matrix = factor * matrix;
    log_det += std::log(std::abs(factor.determinant()));
    const double s = matrix.cwiseAbs().maxCoeff();
    if (s > 0.0) {
        matrix /= s;
        log_scale += std::log(s);
    }
}

double ScaledProduct::unit_determinant() const { return std::exp(log_det - 2.0 * log_scale); }

std::optional<double> ScaledProduct::image_width(const Interval& iv) const {
    const double d_lo = matrix(1, 0) * iv.lo + matrix(1, 1);
    const double d_hi = matrix(1, 0) * iv.hi + matrix(1, 1);
    if (!(d_lo * d_hi > 0.0)) return std::nullopt;
    return unit_determinant() * iv.width() / (d_lo * d_hi);
}

Mat2 weak_factor_matrix(const ModelParams& params, ConeFlavor flavor, double r) {
    if (flavor == ConeFlavor::cu) return phi_matrix_su(params, r);
    if (flavor != ConeFlavor::cs) throw DomainError("weak factor requested for a strong flavor");
    const double K = su_constant(params, r);
    if (K == 0.0) return Mat2::Identity();
    // backward factor Φ_su^{-1} written on (c, b)
    const double a = r / params.r1;
    Mat2 m;
    m << 1.0 + K, K * a,
         -K / a, 1.0 - K;
    return m;
}

ScaledProduct weak_word_map(const ModelParams& params, ConeFlavor flavor, const CocycleWord& word) {
    if (!is_weak(flavor)) throw DomainError("weak word map requested for a strong flavor");
    return product_of(factor_sequence(params, flavor, word, 0.0, nullptr, nullptr));
}

StrongWordMap strong_word_map(const ModelParams& params, ConeFlavor flavor, const CocycleWord& word,
                              double inclination) {
    if (is_weak(flavor)) throw DomainError("strong word map requested for a weak flavor");
    StrongWordMap out;
    out.map = product_of(
        factor_sequence(params, flavor, word, inclination, &out.inclination_out, &out.degenerate));
    return out;
}

double cone_entry_time(double C_slope, double D_slope, double epsilon, double lambda) {
    const double worst = std::max(C_slope, D_slope);
    if (worst <= epsilon) return 0.0;
    return std::log(epsilon / worst) / (2.0 * std::log(lambda));
}

ConstantsReport estimate_constants(const ModelParams& params, int grid_size, double t1_bound,
                                   ConePolicy policy) {
    validate_params(params);
    if (grid_size < 3) throw ResolutionError("constant grid needs at least 3 points", 3);
    ConstantsReport rep;
    rep.params = params;
    rep.grid = grid_size;
    rep.policy = policy;
    rep.T1_bound = t1_bound;
    rep.cu = weak_constants(params, ConeFlavor::cu, grid_size, policy);
    rep.cs = weak_constants(params, ConeFlavor::cs, grid_size, policy);
    rep.strong_u = strong_constants(params, ConeFlavor::strong_u, rep.cu.cone, grid_size);
    rep.strong_s = strong_constants(params, ConeFlavor::strong_s, rep.cs.cone, grid_size);

    rep.epsilon = rep.cu.epsilon;
    rep.C = rep.cu.C_slope * params.r2 / params.r1;
    rep.D = rep.cu.D_slope * params.r1 / params.r2;
    rep.K0 = rep.cu.K0;
    rep.Q0 = rep.cu.Q0;
    rep.T0 = std::max({rep.cu.T0_cone, rep.cu.T0_expand, rep.cs.T0_cone, rep.cs.T0_expand});
    rep.T = 2.0 * rep.T0;
    rep.T_strong = 2.0 * std::max(rep.strong_u.T0, rep.strong_s.T0);
    rep.mu = std::pow(rep.Q0, 1.0 / rep.T0) / params.lambda;
    rep.delta_u_strong = rep.strong_u.delta;
    rep.D0 = rep.strong_u.D0;
    rep.D1 = rep.strong_u.D1;

    const std::string grid_tag = "grid_extremized_x1.05";
    rep.provenance = {
        {"epsilon", grid_tag}, {"C", grid_tag},           {"D", grid_tag},
        {"K0", grid_tag},      {"D0", grid_tag},          {"D1", grid_tag},
        {"Q0", "closed_form"}, {"T0", "closed_form"},     {"T", "closed_form"},
        {"mu", "closed_form"}, {"T1_bound", "closed_form"}, {"delta_u_strong", "closed_form"},
        {"cone", policy == ConePolicy::Literal ? "literal_slopes"
                 : (rep.cu.literal_cone_admissible && rep.cs.literal_cone_admissible)
                     ? "literal_slopes"
                     : "adapted_slopes"},
    };
    return rep;
}

CheckReport check_cone_invariance(const ModelParams& params, const ConstantsReport& constants,
                                  ConeFlavor flavor, const std::vector<CocycleWord>& words,
                                  double T, int slope_samples) {
    CheckReport report;
    report.check = "cone_invariance_" + to_string(flavor);
    report.worst_margin = kInf;
    const int samples = std::max(slope_samples, 2);
    for (std::size_t i = 0; i < words.size(); ++i) {
        const CocycleWord& word = words[i];
        if (word.total_time() < T) {
            ++report.skipped;
            continue;
        }
        std::vector<std::pair<Mobius, Interval>> maps;  // (slope map, target cone)
        if (is_weak(flavor)) {
            const Interval cone = flavor == ConeFlavor::cu ? constants.cu.cone : constants.cs.cone;
            maps.emplace_back(Mobius{weak_word_map(params, flavor, word).matrix}, cone);
        } else {
            const auto& sc = flavor == ConeFlavor::strong_u ? constants.strong_u : constants.strong_s;
            const Interval incl = flavor == ConeFlavor::strong_u ? constants.cu.cone : constants.cs.cone;
            for (double a0 : {incl.lo, 0.0, incl.hi}) {
                const auto sw = strong_word_map(params, flavor, word, a0);
                if (sw.degenerate) {
                    record_violation(report, i, "restricted factor lost orientation");
                    continue;
                }
                maps.emplace_back(Mobius{sw.map.matrix}, Interval{-sc.delta, sc.delta});
            }
        }
        bool violated = false;
        for (const auto& [g, cone] : maps) {
            const auto img = g.image(cone);
            report.samples += static_cast<std::size_t>(samples);
            if (!img) {
                violated = true;
                report.worst_margin = -kInf;
                continue;
            }
            const double margin = std::min(img->lo - cone.lo, cone.hi - img->hi) / cone.width();
            report.worst_margin = std::min(report.worst_margin, margin);
            if (margin < 0.0) violated = true;
            for (double s : interval_grid(cone, samples)) {
                if (!cone.contains(g(s))) violated = true;
            }
        }
        if (violated) record_violation(report, i, format_word_detail("image leaves cone; total time", word.total_time()));
    }
    if (report.worst_margin == kInf) report.worst_margin = 0.0;
    report.metrics["T"] = T;
    return report;
}

CheckReport check_slope_contraction(const ModelParams& params, const ConstantsReport& constants,
                                    ConeFlavor flavor, const std::vector<CocycleWord>& words) {
    CheckReport report;
    report.check = "slope_contraction_" + to_string(flavor);
    report.worst_margin = kInf;
    const double L = params.log_lambda();
    double measured = 0.0;
    for (std::size_t i = 0; i < words.size(); ++i) {
        const CocycleWord& word = words[i];
        const double t = word.total_time();
        std::vector<std::pair<std::optional<double>, double>> cases;  // (width, log bound)
        if (is_weak(flavor)) {
            const WeakConeConstants& wc = flavor == ConeFlavor::cu ? constants.cu : constants.cs;
            const auto width = weak_word_map(params, flavor, word).image_width(wc.cone);
            cases.emplace_back(width, 2.0 * t * L + std::log(wc.L0));
            if (width && *width > 0.0) measured = std::max(measured, std::log(*width) - 2.0 * t * L);
        } else {
            const auto& sc = flavor == ConeFlavor::strong_u ? constants.strong_u : constants.strong_s;
            const Interval incl = flavor == ConeFlavor::strong_u ? constants.cu.cone : constants.cs.cone;
            const double glue_count = static_cast<double>(word.glue_count());
            for (double a0 : {incl.lo, 0.0, incl.hi}) {
                const auto sw = strong_word_map(params, flavor, word, a0);
                const auto width = sw.map.image_width({-sc.delta, sc.delta});
                cases.emplace_back(width, t * L + std::log(2.0 * sc.delta) + glue_count * std::log(sc.D1));
                if (width && *width > 0.0) measured = std::max(measured, std::log(*width) - t * L);
            }
        }
        bool violated = false;
        for (const auto& [width, log_bound] : cases) {
            ++report.samples;
            if (!width) {
                violated = true;
                report.worst_margin = -kInf;
                continue;
            }
            const double log_ratio = *width > 0.0 ? std::log(*width) - log_bound : -kInf;
            const double margin = 1.0 - std::exp(log_ratio);
            report.worst_margin = std::min(report.worst_margin, margin);
            if (log_ratio > 1e-9) violated = true;
        }
        if (violated) record_violation(report, i, format_word_detail("difference above bound; total time", t));
    }
    if (report.worst_margin == kInf) report.worst_margin = 0.0;
    report.metrics["measured_L0"] = std::exp(measured);
    if (is_weak(flavor)) {
        report.metrics["L0"] = flavor == ConeFlavor::cu ? constants.cu.L0 : constants.cs.L0;
    }
    return report;
}

CheckReport check_expansion(const ModelParams& params, const ConstantsReport& constants,
                            ConeFlavor flavor, const std::vector<CocycleWord>& words,
                            std::vector<GrowthRow>* rows_out) {
    CheckReport report;
    report.check = "expansion_" + to_string(flavor);
    std::vector<GrowthRow> rows;
    Interval slopes;
    switch (flavor) {
        case ConeFlavor::cu: slopes = constants.cu.cone; break;
        case ConeFlavor::cs: slopes = constants.cs.cone; break;
        case ConeFlavor::strong_u: slopes = {-constants.strong_u.delta, constants.strong_u.delta}; break;
        case ConeFlavor::strong_s: slopes = {-constants.strong_s.delta, constants.strong_s.delta}; break;
    }
    for (std::size_t i = 0; i < words.size(); ++i) {
        const auto factors = factor_sequence(params, flavor, words[i], 0.0, nullptr, nullptr);
        for (double s : {slopes.lo, 0.0, slopes.hi}) {
            Eigen::Vector2d v(s, 1.0);
            v.normalize();
            double growth = 0.0;
            for (const auto& f : factors) {
                v = f * v;
                const double nv = v.norm();
                growth += std::log(nv);
                v /= nv;
            }
            rows.push_back({i, words[i].total_time(), growth});
        }
    }
    report.samples = rows.size();
    if (rows.size() < 2) {
        report.violations = 1;
        report.worst_margin = -1.0;
        return report;
    }
    double intercept = 0.0;
    const double slope = fit_slope(rows, &intercept);
    const double mu_measured = std::exp(slope);
    report.metrics["mu_measured"] = mu_measured;
    report.metrics["L_fit"] = std::exp(intercept);
    double margin = mu_measured - 1.0;
    if (is_weak(flavor)) {
        report.metrics["mu_bound"] = constants.mu;
        margin = std::min(margin, mu_measured / (0.9 * constants.mu) - 1.0);
    }
    report.worst_margin = margin;
    if (!(margin > 0.0)) {
        report.violations = 1;
        report.violation_list.push_back({0, format_word_detail("fitted growth rate", mu_measured)});
    }
    if (rows_out) *rows_out = std::move(rows);
    return report;
}

SplittingResult extract_splitting(const ModelParams& params, const ConstantsReport& constants,
                                  const std::vector<CocycleWord>& past,
                                  const std::vector<CocycleWord>& future, std::size_t iterations) {
    SplittingResult out;

    const auto nested = [&](const std::vector<ScaledProduct>& maps, const Interval& cone,
                            std::vector<double>& ratios, bool weak) {
        ScaledProduct acc;
        double previous = cone.width();
        double slope = 0.5 * (cone.lo + cone.hi);
        for (std::size_t k = 0; k < maps.size() && k < iterations; ++k) {
            acc = compose_products(acc, maps[k]);
            const auto width = acc.image_width(cone);
            const auto img = Mobius{acc.matrix}.image(cone);
            if (!width || !img) throw InfeasibleError("nested cone image is unbounded");
            slope = 0.5 * (img->lo + img->hi);
            if (!(*width > 0.0)) break;  // converged below the smallest double
            const double ratio = *width / previous;
            ratios.push_back(ratio);
            if (!(ratio < 1.0)) {
                throw InfeasibleError(std::string(weak ? "weak" : "strong") +
                                      " nested cones fail to contract");
            }
            previous = *width;
        }
        return slope;
    };

    std::vector<ScaledProduct> cu_maps;
    std::vector<ScaledProduct> cs_maps;
    for (const auto& w : past) cu_maps.push_back(weak_word_map(params, ConeFlavor::cu, w));
    for (const auto& w : future) cs_maps.push_back(weak_word_map(params, ConeFlavor::cs, w));
    out.cu_slope = nested(cu_maps, constants.cu.cone, out.cu_ratios, true);
    out.cs_slope = nested(cs_maps, constants.cs.cone, out.cs_ratios, true);

    // thread the inclinations chronologically (forward for u, backward for s)
    std::vector<ScaledProduct> u_maps(past.size());
    double alpha = 0.0;
    for (std::size_t j = past.size(); j-- > 0;) {
        const auto sw = strong_word_map(params, ConeFlavor::strong_u, past[j], alpha);
        if (sw.degenerate) throw InfeasibleError("strong-u factor lost orientation");
        u_maps[j] = sw.map;
        alpha = sw.inclination_out;
    }
    std::vector<ScaledProduct> s_maps(future.size());
    double beta = 0.0;
    for (std::size_t j = future.size(); j-- > 0;) {
        const auto sw = strong_word_map(params, ConeFlavor::strong_s, future[j], beta);
        if (sw.degenerate) throw InfeasibleError("strong-s factor lost orientation");
        s_maps[j] = sw.map;
        beta = sw.inclination_out;
    }
    out.u_slope = nested(u_maps, {-constants.strong_u.delta, constants.strong_u.delta}, out.u_ratios, false);
    out.s_slope = nested(s_maps, {-constants.strong_s.delta, constants.strong_s.delta}, out.s_ratios, false);

    for (const auto* v : {&out.cu_ratios, &out.cs_ratios}) {
        for (double r : *v) out.max_weak_ratio = std::max(out.max_weak_ratio, r);
    }
    for (const auto* v : {&out.u_ratios, &out.s_ratios}) {
        for (double r : *v) out.max_strong_ratio = std::max(out.max_strong_ratio, r);
    }
    out.axis_margin = std::abs(1.0 - out.cu_slope * out.cs_slope);
    return out;
}

std::vector<Gate> weak_gates(const ConstantsReport& c) {
    return {{"weak_reentry", c.T1_bound - c.T0}};
}

std::vector<Gate> strong_gates(const ConstantsReport& c) {
    const double lt = std::pow(c.params.lambda, c.T1_bound);
    return {
        {"strong_claim_u", 1.0 - lt * c.strong_u.kappa / c.strong_u.epsilon},
        {"strong_claim_s", 1.0 - lt * c.strong_s.kappa / c.strong_s.epsilon},
        {"strong_contraction_u", 1.0 - lt * c.strong_u.D1},
        {"strong_contraction_s", 1.0 - lt * c.strong_s.D1},
    };
}

std::vector<CocycleWord> suite_words(const ModelParams& params, const ConstantsReport& constants,
                                     const SuiteOptions& options) {
    SamplerOptions so;
    so.interior_spread = options.interior_spread;
    so.min_total_time = std::max(constants.T, constants.T_strong);
    return sample_itineraries(params, options.words, options.max_factors, constants.T1_bound,
                              options.seed, so);
}

std::vector<CheckReport> run_weak_suite(const ModelParams& params, const ConstantsReport& c,
                                        const std::vector<CocycleWord>& words) {
    std::vector<CheckReport> out;
    for (ConeFlavor f : {ConeFlavor::cu, ConeFlavor::cs}) {
        out.push_back(check_cone_invariance(params, c, f, words, c.T));
    }
    for (ConeFlavor f : {ConeFlavor::cu, ConeFlavor::cs}) {
        out.push_back(check_slope_contraction(params, c, f, words));
    }
    for (ConeFlavor f : {ConeFlavor::cu, ConeFlavor::cs}) {
        out.push_back(check_expansion(params, c, f, words));
    }
    return out;
}

std::vector<CheckReport> run_strong_suite(const ModelParams& params, const ConstantsReport& c,
                                          const std::vector<CocycleWord>& words) {
    std::vector<CheckReport> out;
    for (ConeFlavor f : {ConeFlavor::strong_u, ConeFlavor::strong_s}) {
        out.push_back(check_cone_invariance(params, c, f, words, c.T_strong));
    }
    for (ConeFlavor f : {ConeFlavor::strong_u, ConeFlavor::strong_s}) {
        out.push_back(check_slope_contraction(params, c, f, words));
    }
    for (ConeFlavor f : {ConeFlavor::strong_u, ConeFlavor::strong_s}) {
        out.push_back(check_expansion(params, c, f, words));
    }
    return out;
}

namespace {

// First failing report, if any.
const CheckReport* first_failure(const std::vector<CheckReport>& suite) {
    for (const auto& r : suite) {
        if (!r.passed()) return &r;
    }
    return nullptr;
}

const Gate* first_closed_gate(const std::vector<Gate>& gates) {
    for (const auto& g : gates) {
        if (!(g.margin > 0.0)) return &g;
    }
    return nullptr;
}

}  // namespace

SearchResult parameter_search(double lambda, int n, int m, int p, double ratio, int budget,
                              const SearchOptions& options) {
    if (!(ratio > 0.0 && ratio < 1.0)) throw ParameterError("ratio r2/r1 must lie in (0, 1)");
    if (!(options.r1_ref > 0.0 && options.r1_ref < 1.0)) throw ParameterError("r1_ref must lie in (0, 1)");
    SearchResult result;
    result.failing_check = "budget";
    for (int k = 1; k <= budget; ++k) {
        SearchAttempt attempt;
        attempt.halvings = k;
        attempt.r1 = options.r1_ref * std::pow(0.5, k);
        attempt.r2 = ratio * attempt.r1;
        ModelParams params{lambda, n, m, p, attempt.r1, attempt.r2};
        validate_params(params);
        attempt.T1 = reentry_time_lower_bound(attempt.r1, options.r1_ref, lambda);

        std::optional<ConstantsReport> constants;
        try {
            constants = estimate_constants(params, options.grid, attempt.T1, options.policy);
        } catch (const std::exception& e) {
            attempt.failing_check = std::string("constants: ") + e.what();
            attempt.margin = -1.0;
            result.attempts.push_back(attempt);
            continue;
        }
        const auto wgates = weak_gates(*constants);
        if (const Gate* g = first_closed_gate(wgates)) {
            attempt.failing_check = g->name;
            attempt.margin = g->margin;
            result.attempts.push_back(attempt);
            continue;
        }
        const auto words = suite_words(params, *constants, options.suite);
        auto weak = run_weak_suite(params, *constants, words);
        if (const CheckReport* f = first_failure(weak)) {
            attempt.failing_check = f->check;
            attempt.margin = f->worst_margin;
            result.attempts.push_back(attempt);
            continue;
        }
        attempt.weak_passed = true;
        if (result.weak_halvings < 0) result.weak_halvings = k;
        const auto sgates = strong_gates(*constants);
        if (const Gate* g = first_closed_gate(sgates)) {
            attempt.failing_check = g->name;
            attempt.margin = g->margin;
            result.attempts.push_back(attempt);
            continue;
        }
        auto strong = run_strong_suite(params, *constants, words);
        if (const CheckReport* f = first_failure(strong)) {
            attempt.failing_check = f->check;
            attempt.margin = f->worst_margin;
            result.attempts.push_back(attempt);
            continue;
        }
        attempt.strong_passed = true;
        result.attempts.push_back(attempt);
        result.feasible = true;
        result.halvings = k;
        result.params = params;
        result.constants = constants;
        result.suite = std::move(weak);
        result.suite.insert(result.suite.end(), strong.begin(), strong.end());
        result.failing_check.clear();
        result.tightest_margin = kInf;
        for (const auto& r : result.suite) result.tightest_margin = std::min(result.tightest_margin, r.worst_margin);
        return result;
    }
    if (!result.attempts.empty()) {
        result.failing_check = result.attempts.back().failing_check;
        result.tightest_margin = result.attempts.back().margin;
    }
    return result;
}

}  // namespace anosov
