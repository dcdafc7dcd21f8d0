// SPDX-License-Identifier: Apache-2.0
#pragma once

// Reflected Euler-Maruyama escape-time simulator. Each trial owns a
// counter-based RNG stream keyed by (seed, trial index), and per-trial
// results are reduced sequentially after the concurrent phase, so the
// estimate is bit-identical regardless of thread count or scheduling.
//
// Boundary handling: the step segment is intersected with the circle
// exactly; the crossing point decides absorb (angle inside an arc) versus
// specular reflection about the tangent. Naive clamping would bias escape
// times upward at O(sqrt(h)).

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <mutex>
#include <optional>
#include <thread>
#include <vector>

#include "nesc/errors.hpp"
#include "nesc/geometry.hpp"
#include "nesc/potential.hpp"

namespace nesc {

struct McEstimate {
    double mean = 0.0;
    double stderr_ = 0.0;
    std::size_t trials = 0;
    double step = 0.0;
    std::uint64_t seed = 0;
};

namespace detail {

struct SplitMix64 {
    std::uint64_t state;

    explicit SplitMix64(std::uint64_t s) : state(s) {}

    static std::uint64_t mix(std::uint64_t z) {
        z ^= z >> 30;
        z *= 0xBF58476D1CE4E5B9ULL;
        z ^= z >> 27;
        z *= 0x94D049BB133111EBULL;
        z ^= z >> 31;
        return z;
    }

    std::uint64_t next() {
        state += 0x9E3779B97F4A7C15ULL;
        return mix(state);
    }

    /// uniform in (0, 1]
    double next_open() {
        return (static_cast<double>(next() >> 11) + 1.0) * 0x1.0p-53;
    }

    /// stream keyed by (seed, trial): decorrelated starting counter
    static SplitMix64 stream(std::uint64_t seed, std::uint64_t trial) {
        return SplitMix64(mix(seed ^ (0x9E3779B97F4A7C15ULL * (trial + 1))));
    }
};

struct Gauss2 {
    double a, b;
};

inline Gauss2 box_muller(SplitMix64& rng) {
    const double u1 = rng.next_open();
    const double u2 = rng.next_open();
    const double r = std::sqrt(-2.0 * std::log(u1));
    return {r * std::cos(2.0 * pi * u2), r * std::sin(2.0 * pi * u2)};
}

/// One trial; returns the absorption time.
inline double mc_trial(Vec2 start, const TargetConfiguration& config, const Potential* pot,
                       double h, std::uint64_t seed, std::uint64_t trial) {
    SplitMix64 rng = SplitMix64::stream(seed, trial);
    const double amp = std::sqrt(2.0 * h);
    Vec2 x = start;
    const std::uint64_t max_steps = 1000000000ULL;
    for (std::uint64_t k = 0; k < max_steps; ++k) {
        const Gauss2 g = box_muller(rng);
        Vec2 xn = x;
        if (pot) {
            const Vec2 f = pot->grad(x);
            xn = xn + h * f;
        }
        xn = xn + Vec2{amp * g.a, amp * g.b};
        if (xn.norm_sq() > 1.0) {
            // exact segment-circle crossing: |x + t d| = 1, t in (0, 1]
            const Vec2 d = xn - x;
            const double A = d.norm_sq();
            const double Bq = dot(x, d);
            const double Cq = x.norm_sq() - 1.0;
            const double disc = Bq * Bq - A * Cq;
            const double t = (-Bq + std::sqrt(std::max(0.0, disc))) / A;
            const Vec2 p = x + t * d;
            const double th = std::atan2(p.y, p.x);
            bool absorbed = false;
            for (const auto& a : config.arcs)
                if (a.contains_angle(th)) {
                    absorbed = true;
                    break;
                }
            if (absorbed) return static_cast<double>(k + 1) * h;
            // specular reflection about the tangent at p (n = p on the unit circle)
            Vec2 r = xn - p;
            const double rn = dot(r, p);
            Vec2 xr = xn - 2.0 * rn * p;
            if (xr.norm_sq() > 1.0) {
                // pathological double crossing; project just inside
                const double nr = xr.norm();
                xr = (1.0 - 1e-12) * (1.0 / nr) * xr;
            }
            x = xr;
        } else {
            x = xn;
        }
    }
    throw NonAbsorbing("trial exceeded the step budget without absorbing");
}

} // namespace detail

inline McEstimate mc_escape(Vec2 start, const TargetConfiguration& config,
                            const std::optional<Potential>& potential, double h,
                            std::size_t trials, std::uint64_t seed) {
    validate(config);
    if (start.norm() >= 1.0) throw Error("start point must be strictly interior");
    if (h > 1e-3) throw StepTooLarge("step must not exceed 1e-3");
    double eps_min = config.arcs.front().half_length;
    for (const auto& a : config.arcs) eps_min = std::min(eps_min, a.half_length);
    if (h > 0.25 * eps_min * eps_min)
        throw StepTooLarge("step must resolve the absorbing window: h <= eps^2/4");
    if (trials < 1000) throw Error("at least 1000 trials required");

    const Potential* pot = potential ? &*potential : nullptr;
    std::vector<double> times(trials);
    std::size_t nthreads = std::max(1u, std::thread::hardware_concurrency());
    nthreads = std::min<std::size_t>(nthreads, trials);
    std::vector<std::thread> pool;
    std::exception_ptr error;
    std::mutex emu;
    for (std::size_t w = 0; w < nthreads; ++w) {
        pool.emplace_back([&, w]() {
            try {
                for (std::size_t t = w; t < trials; t += nthreads)
                    times[t] = detail::mc_trial(start, config, pot, h, seed, t);
            } catch (...) {
                std::lock_guard<std::mutex> lock(emu);
                if (!error) error = std::current_exception();
            }
        });
    }
    for (auto& th : pool) th.join();
    if (error) std::rethrow_exception(error);

    // sequential reduction over the trial-indexed buffer: scheduling-free
    double sum = 0.0;
    for (double t : times) sum += t;
    const double mean = sum / static_cast<double>(trials);
    double ss = 0.0;
    for (double t : times) ss += (t - mean) * (t - mean);
    const double sd = std::sqrt(ss / static_cast<double>(trials - 1));

    McEstimate est;
    est.mean = mean;
    est.stderr_ = sd / std::sqrt(static_cast<double>(trials));
    est.trials = trials;
    est.step = h;
    est.seed = seed;
    return est;
}

} // namespace nesc
