#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "anosov/surgery.hpp"
#include "anosov/word.hpp"

namespace anosov {

/// Tangent vector a Y + b e_s + c e_u.
struct TangentVector {
    double a = 0.0;
    double b = 0.0;
    double c = 0.0;

    double norm() const;
    double su_norm() const;
};

struct Interval {
    double lo = 0.0;
    double hi = 0.0;

    double width() const { return hi - lo; }
    bool contains(double v) const { return v >= lo && v <= hi; }
};

/// Dψ in frame B as the ordered product of flow and gluing factors.
Mat3 dpsi_full(const ModelParams& params, const CocycleWord& word);

/// Dψ on the su-quotient.
Mat2 dpsi_su(const ModelParams& params, const CocycleWord& word);

struct CuProduct {
    Mat2 matrix = Mat2::Identity();
    double alpha = 0.0;
    bool escaped = false;  ///< inclination left the admissible range at some factor
};

/// Dψ restricted to the cu-plane, threading the inclination α through every factor.
/// Flow segments send α to λ^{2s} α. When `admissible` is given, leaving it is
/// reported through CuProduct::escaped.
CuProduct dpsi_cu(const ModelParams& params, const CocycleWord& word, double alpha0,
                  std::optional<Interval> admissible = std::nullopt);

/// Restriction of a 3×3 factor of the form [[1, *], [0, S]] to the plane spanned by
/// Y and (0, α, 1). Returns [[1, A], [0, B]] in the bases {Y, (0, α, 1)} and
/// {Y, (0, α', 1)} together with α'.
CuFactor restrict_to_cu_plane(const Mat3& factor, double alpha);

/// Restriction to the plane spanned by Y and (0, 1, β). Returns [[1, A], [0, B]] in
/// the bases {Y, (0, 1, β)} and {Y, (0, 1, β')}, with β' stored in alpha_out.
CuFactor restrict_to_cs_plane(const Mat3& factor, double beta);

/// Options of the synthetic itinerary sampler.
struct SamplerOptions {
    double interior_spread = 2.0;  ///< interior durations are uniform on [T1, T1 + spread]
    double end_time_max = -1.0;    ///< end durations uniform on [0, end_time_max]; < 0 means T1 + spread
    double min_total_time = 0.0;   ///< the first segment is lengthened to reach this total
};

/// Deterministic constraint-respecting words: alternate flow and gluing factors, start
/// and end with a flow segment, keep interior durations ≥ min_interior_time and draw
/// gluing coordinates uniformly on [0, r2]. Throws ConfigError on inconsistent input.
std::vector<CocycleWord> sample_itineraries(const ModelParams& params, std::size_t count,
                                            std::size_t max_factors, double min_interior_time,
                                            std::uint64_t seed, const SamplerOptions& options = {});

/// Words from orbits traced through V: each entry at height r passes through V in the
/// closed-form transit time τ(r) and then spends a synthetic outside excursion of at
/// least min_outside_time before the next entry.
std::vector<CocycleWord> geometric_itineraries(const ModelParams& params, std::size_t count,
                                               std::size_t max_glues, double min_outside_time,
                                               std::uint64_t seed, double outside_spread = 2.0);

}  // namespace anosov
