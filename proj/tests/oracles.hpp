#pragma once

#include <array>
#include <cmath>
#include <functional>

#include <Eigen/Dense>

#include "anosov/geometry.hpp"
#include "anosov/surgery.hpp"

namespace anosov::oracle {

using State = std::array<double, 3>;

/// The affine field written out independently of the library: (log λ x, −log λ y, 1/(n p)).
inline State model_field(const ModelParams& params, const State& s) {
    const double L = std::log(params.lambda);
    return {L * s[0], -L * s[1], 1.0 / (params.n * params.p)};
}

/// One classical Runge-Kutta step of the model field.
inline State rk4_step(const ModelParams& params, const State& s, double h) {
    const auto axpy = [](const State& a, const State& k, double c) {
        return State{a[0] + c * k[0], a[1] + c * k[1], a[2] + c * k[2]};
    };
    const State k1 = model_field(params, s);
    const State k2 = model_field(params, axpy(s, k1, h / 2));
    const State k3 = model_field(params, axpy(s, k2, h / 2));
    const State k4 = model_field(params, axpy(s, k3, h));
    State out;
    for (int i = 0; i < 3; ++i) out[i] = s[i] + h / 6 * (k1[i] + 2 * k2[i] + 2 * k3[i] + k4[i]);
    return out;
}

/// Integrates the model field for time t with steps of at most h (z left unwrapped).
inline State integrate(const ModelParams& params, State s, double t, double h = 1e-3) {
    const int steps = static_cast<int>(std::ceil(std::abs(t) / h));
    if (steps == 0) return s;
    const double dt = t / steps;
    for (int i = 0; i < steps; ++i) s = rk4_step(params, s, dt);
    return s;
}

struct Hit {
    State state;
    double time = 0.0;
};

/// Integrates from `s` until `reached` first holds, then refines the crossing time by
/// bisection on the last step.
inline Hit integrate_until(const ModelParams& params, State s,
                           const std::function<bool(const State&)>& reached, double h = 1e-3,
                           double t_max = 1e3) {
    double t = 0.0;
    while (t < t_max) {
        const State next = rk4_step(params, s, h);
        if (reached(next)) {
            double lo = 0.0;
            double hi = h;
            for (int i = 0; i < 80; ++i) {
                const double mid = 0.5 * (lo + hi);
                if (reached(rk4_step(params, s, mid))) hi = mid; else lo = mid;
            }
            return {rk4_step(params, s, hi), t + hi};
        }
        s = next;
        t += h;
    }
    return {s, t};
}

/// Integrates until |y| first reaches `level`.
inline Hit integrate_until_y(const ModelParams& params, const State& s, double level,
                             double h = 1e-3) {
    return integrate_until(params, s, [level](const State& q) { return std::abs(q[1]) >= level; }, h);
}

/// Explicit 3×3 product of a word, first factor acting first, built from the closed-form
/// factor matrices without any rescaling.
inline Eigen::Matrix3d naive_product(const ModelParams& params, const CocycleWord& word) {
    Eigen::Matrix3d out = Eigen::Matrix3d::Identity();
    for (const auto& f : word.factors) {
        Eigen::Matrix3d m = Eigen::Matrix3d::Identity();
        if (const auto* seg = std::get_if<FlowSeg>(&f)) {
            m(1, 1) = std::pow(params.lambda, seg->duration);
            m(2, 2) = std::pow(params.lambda, -seg->duration);
        } else {
            m = phi_matrix_full(params, std::get<GlueAt>(f).r);
        }
        out = m * out;
    }
    return out;
}

/// Extended Euclid inverse of a modulo n, independent of the library implementation.
inline long inverse_mod(long a, long n) {
    a %= n;
    if (a < 0) a += n;
    for (long x = 1; x < n; ++x) {
        if ((a * x) % n == 1) return x;
    }
    return 0;
}

}  // namespace anosov::oracle
