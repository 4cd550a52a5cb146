#pragma once

// Deterministic synthetic ground-truth scenes for simulation runs.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "mire/image.hpp"
#include "mire/random.hpp"

namespace mire {

namespace detail {

// Smoothly interpolated lattice noise with the given cell size in pixels.
class ValueNoise {
public:
    ValueNoise(std::size_t width, std::size_t height, double cell, NormalSampler& rng)
        : cell_(cell),
          nx_(static_cast<std::size_t>(std::ceil(width / cell)) + 2),
          ny_(static_cast<std::size_t>(std::ceil(height / cell)) + 2),
          lattice_(nx_ * ny_) {
        for (double& v : lattice_) v = rng.uniform();
    }

    double operator()(double row, double col) const {
        const double fx = col / cell_;
        const double fy = row / cell_;
        const auto ix = static_cast<std::size_t>(fx);
        const auto iy = static_cast<std::size_t>(fy);
        const double tx = smooth(fx - ix);
        const double ty = smooth(fy - iy);
        const double top = lerp(at(iy, ix), at(iy, ix + 1), tx);
        const double bottom = lerp(at(iy + 1, ix), at(iy + 1, ix + 1), tx);
        return lerp(top, bottom, ty);
    }

private:
    static double smooth(double t) { return t * t * (3.0 - 2.0 * t); }
    static double lerp(double a, double b, double t) { return a + (b - a) * t; }
    double at(std::size_t y, std::size_t x) const { return lattice_[y * nx_ + x]; }

    double cell_;
    std::size_t nx_;
    std::size_t ny_;
    std::vector<double> lattice_;
};

inline void normalize_range(Image& img, double lo, double hi) {
    const auto px = img.pixels();
    const auto [mn, mx] = std::minmax_element(px.begin(), px.end());
    const double a = *mn;
    const double span = *mx - *mn;
    for (double& v : img.pixels()) v = span > 0.0 ? lo + (hi - lo) * (v - a) / span : 0.5 * (lo + hi);
}

}  // namespace detail

/// Landscape-like scene: sky-to-ground gradient with a horizon, mild
/// multi-octave texture and a scatter of soft-edged warm or cold objects.
/// Range [0.1, 0.9].
inline Image natural_scene(std::size_t width, std::size_t height, std::uint64_t seed) {
    NormalSampler rng(seed ^ 0x9E3779B97F4A7C15ull);
    Image img(width, height);
    const double scale = static_cast<double>(std::max(width, height));

    std::vector<detail::ValueNoise> octaves;
    std::vector<double> amplitude;
    for (double cell = scale / 8.0, a = 0.12; cell >= 2.0; cell /= 2.0, a *= 0.7) {
        octaves.emplace_back(width, height, cell, rng);
        amplitude.push_back(a);
    }

    const double horizon = (0.35 + 0.2 * rng.uniform()) * height;
    struct Blob {
        double row, col, radius, level;
    };
    std::vector<Blob> blobs(12);
    for (Blob& b : blobs) {
        b.row = horizon + rng.uniform() * (height - horizon);
        b.col = rng.uniform() * width;
        b.radius = (0.02 + 0.06 * rng.uniform()) * scale;
        b.level = rng.uniform() < 0.5 ? -0.25 : 0.35;
    }

    for (std::size_t r = 0; r < height; ++r) {
        const double t = static_cast<double>(r) / std::max<std::size_t>(height - 1, 1);
        const double ground = 1.0 / (1.0 + std::exp(-(r - horizon) / 2.0));
        for (std::size_t c = 0; c < width; ++c) {
            double v = 0.25 * t + 0.3 * ground;
            for (std::size_t o = 0; o < octaves.size(); ++o) v += amplitude[o] * octaves[o](r, c);
            for (const Blob& b : blobs) {
                const double d = std::hypot(r - b.row, c - b.col) / b.radius;
                v += b.level / (1.0 + std::exp(6.0 * (d - 1.0)));
            }
            img(r, c) = v;
        }
    }
    detail::normalize_range(img, 0.1, 0.9);
    return img;
}

/// Horizontally uniform sky/ground bands plus two compact objects that
/// together cover under 40% of any column. More than half of every pair of
/// adjacent columns is then identical, so column differences have zero
/// median: the regime where additive column offsets are exactly
/// identifiable by the TV baseline. Range [0.1, 0.9].
inline Image banded_scene(std::size_t width, std::size_t height, std::uint64_t seed) {
    NormalSampler rng(seed ^ 0x94D049BB133111EBull);
    const double horizon = (0.3 + 0.3 * rng.uniform()) * height;
    struct Bump {
        double row, col, radius, level;
    };
    std::vector<Bump> bumps(2);
    for (Bump& b : bumps) {
        b.row = rng.uniform() * height;
        b.col = rng.uniform() * width;
        b.radius = (0.04 + 0.06 * rng.uniform()) * height;
        b.level = rng.uniform() < 0.5 ? -0.3 : 0.3;
    }
    Image img(width, height);
    for (std::size_t r = 0; r < height; ++r) {
        const double t = static_cast<double>(r) / std::max<std::size_t>(height - 1, 1);
        const double background = 0.4 * t + 0.25 / (1.0 + std::exp(-(r - horizon) / 2.0));
        for (std::size_t c = 0; c < width; ++c) {
            double v = background;
            for (const Bump& b : bumps) {
                const double d2 = (std::pow(r - b.row, 2) + std::pow(c - b.col, 2)) / (b.radius * b.radius);
                if (d2 < 1.0) v += b.level * (1.0 - d2) * (1.0 - d2);
            }
            img(r, c) = v;
        }
    }
    detail::normalize_range(img, 0.1, 0.9);
    return img;
}

/// Fine-grained texture dominated by 1-4 pixel structure; the regime where
/// neighbouring columns no longer share a histogram. Range [0.1, 0.9].
inline Image textured_scene(std::size_t width, std::size_t height, std::uint64_t seed) {
    NormalSampler rng(seed ^ 0xD1B54A32D192ED03ull);
    detail::ValueNoise fine(width, height, 1.5, rng);
    detail::ValueNoise medium(width, height, 4.0, rng);
    Image img(width, height);
    for (std::size_t r = 0; r < height; ++r)
        for (std::size_t c = 0; c < width; ++c) img(r, c) = 0.7 * fine(r, c) + 0.3 * medium(r, c);
    detail::normalize_range(img, 0.1, 0.9);
    return img;
}

}  // namespace mire
