#include "anosov/cocycle.hpp"

#include <cmath>
#include <random>

#include "anosov/affine_flow.hpp"
#include "anosov/errors.hpp"

namespace anosov {

double TangentVector::norm() const { return std::sqrt(a * a + b * b + c * c); }

double TangentVector::su_norm() const { return std::hypot(b, c); }

Mat3 dpsi_full(const ModelParams& params, const CocycleWord& word) {
    Mat3 out = Mat3::Identity();
    for (const auto& factor : word.factors) {
        if (const auto* seg = std::get_if<FlowSeg>(&factor)) {
            out = flow_matrix_full(params, seg->duration) * out;
        } else {
            out = phi_matrix_full(params, std::get<GlueAt>(factor).r) * out;
        }
    }
    return out;
}

Mat2 dpsi_su(const ModelParams& params, const CocycleWord& word) {
    Mat2 out = Mat2::Identity();
    for (const auto& factor : word.factors) {
        if (const auto* seg = std::get_if<FlowSeg>(&factor)) {
            out = flow_matrix_su(params, seg->duration) * out;
        } else {
            out = phi_matrix_su(params, std::get<GlueAt>(factor).r) * out;
        }
    }
    return out;
}

CuProduct dpsi_cu(const ModelParams& params, const CocycleWord& word, double alpha0,
                  std::optional<Interval> admissible) {
    CuProduct out;
    out.alpha = alpha0;
    for (const auto& factor : word.factors) {
        if (const auto* seg = std::get_if<FlowSeg>(&factor)) {
            Mat2 f = Mat2::Identity();
            f(1, 1) = std::pow(params.lambda, -seg->duration);
            out.matrix = f * out.matrix;
            out.alpha *= std::pow(params.lambda, 2.0 * seg->duration);
        } else {
            const CuFactor f = phi_matrix_cu(params, std::get<GlueAt>(factor).r, out.alpha);
            out.matrix = f.matrix * out.matrix;
            out.alpha = f.alpha_out;
            if (f.ill_conditioned) out.escaped = true;
        }
        if (admissible && !admissible->contains(out.alpha)) out.escaped = true;
    }
    return out;
}

CuFactor restrict_to_cu_plane(const Mat3& factor, double alpha) {
    const Vec3 w = factor * Vec3(0.0, alpha, 1.0);
    CuFactor out;
    out.matrix << 1.0, w(0),
                  0.0, w(2);
    out.alpha_out = w(1) / w(2);
    out.ill_conditioned = !(w(2) > kCuFloor);
    return out;
}

CuFactor restrict_to_cs_plane(const Mat3& factor, double beta) {
    const Vec3 w = factor * Vec3(0.0, 1.0, beta);
    CuFactor out;
    out.matrix << 1.0, w(0),
                  0.0, w(1);
    out.alpha_out = w(2) / w(1);
    out.ill_conditioned = !(w(1) > kCuFloor);
    return out;
}

std::vector<CocycleWord> sample_itineraries(const ModelParams& params, std::size_t count,
                                            std::size_t max_factors, double min_interior_time,
                                            std::uint64_t seed, const SamplerOptions& options) {
    validate_params(params);
    if (max_factors < 1 || max_factors % 2 == 0) {
        throw ConfigError("max_factors must be odd so words start and end with a flow segment");
    }
    if (!(min_interior_time >= 0.0) || !(options.interior_spread >= 0.0) ||
        !(options.min_total_time >= 0.0)) {
        throw ConfigError("sampler durations must be non-negative");
    }
    const double end_max =
        options.end_time_max < 0.0 ? min_interior_time + options.interior_spread : options.end_time_max;
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const std::size_t max_glues = (max_factors - 1) / 2;
    std::vector<CocycleWord> words;
    words.reserve(count);
    for (std::size_t w = 0; w < count; ++w) {
        CocycleWord word;
        const auto glues = static_cast<std::size_t>(unit(rng) * static_cast<double>(max_glues + 1));
        const std::size_t l = glues > max_glues ? max_glues : glues;
        word.factors.emplace_back(FlowSeg{end_max * unit(rng)});
        for (std::size_t k = 0; k < l; ++k) {
            word.factors.emplace_back(GlueAt{params.r2 * unit(rng)});
            const bool last = k + 1 == l;
            const double t = last ? end_max * unit(rng)
                                  : min_interior_time + options.interior_spread * unit(rng);
            word.factors.emplace_back(FlowSeg{t});
        }
        const double total = word.total_time();
        if (total < options.min_total_time) {
            // padding the first segment keeps the final segment, after the last gluing, short
            double& first = std::get<FlowSeg>(word.factors.front()).duration;
            first += options.min_total_time - total;
            // the summed total can land a few ulps short of the target
            while (word.total_time() < options.min_total_time) first = std::nextafter(first, INFINITY);
        }
        words.push_back(std::move(word));
    }
    return words;
}

std::vector<CocycleWord> geometric_itineraries(const ModelParams& params, std::size_t count,
                                               std::size_t max_glues, double min_outside_time,
                                               std::uint64_t seed, double outside_spread) {
    validate_params(params);
    if (!(min_outside_time >= 0.0) || !(outside_spread >= 0.0)) {
        throw ConfigError("outside excursion times must be non-negative");
    }
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<CocycleWord> words;
    words.reserve(count);
    for (std::size_t w = 0; w < count; ++w) {
        CocycleWord word;
        word.source = WordSource::Geometric;
        const auto glues = static_cast<std::size_t>(unit(rng) * static_cast<double>(max_glues + 1));
        const std::size_t l = glues > max_glues ? max_glues : glues;
        word.factors.emplace_back(FlowSeg{(min_outside_time + outside_spread) * unit(rng)});
        for (std::size_t k = 0; k < l; ++k) {
            // draw an entry off the stable wall and follow it through V
            double r = 0.0;
            while (!(r > kNeverExitsThreshold)) r = params.r2 * unit(rng);
            const auto transit = transit_map(params, Point3(params.r1, r, unit(rng)));
            word.factors.emplace_back(GlueAt{r});
            const double outside = min_outside_time + outside_spread * unit(rng);
            word.factors.emplace_back(FlowSeg{transit->transit_time + outside});
        }
        words.push_back(std::move(word));
    }
    return words;
}

}  // namespace anosov
