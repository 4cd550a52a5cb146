#pragma once

// Midway infrared equalization. Every column is given the Gaussian-weighted
// midway histogram of its neighbourhood, which removes column-wise gain and
// offset differences while keeping each column's internal ordering.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

#include "mire/histogram.hpp"
#include "mire/image.hpp"
#include "mire/metrics.hpp"

namespace mire {

struct MireConfig {
    double sigma = 0.0;
    Orientation orientation = Orientation::Columns;
};

struct SigmaTvPoint {
    double sigma;
    double tv;

    friend bool operator==(const SigmaTvPoint&, const SigmaTvPoint&) = default;
};

struct SigmaSearchResult {
    double best_sigma = 0.0;
    Image corrected;
    std::vector<SigmaTvPoint> trace;  // in evaluation order
};

inline const std::vector<double>& default_sigma_grid() {
    static const std::vector<double> grid{0.0, 0.5, 1.0, 1.5, 2.0, 3.0, 4.0, 6.0, 8.0, 10.0};
    return grid;
}

/// Width of the bracketing interval below which refinement stops.
inline constexpr double kSigmaRefineTolerance = 0.05;

namespace detail {

inline Image equalize_columns(const Image& img, const WeightKernel& kernel) {
    const std::size_t width = img.width();
    const std::size_t height = img.height();
    if (width == 0 || height == 0) throw std::invalid_argument("mire_correct: empty image");

    std::vector<QuantileFunction> qfs;
    qfs.reserve(width);
    std::vector<double> column(height);
    for (std::size_t c = 0; c < width; ++c) {
        for (std::size_t r = 0; r < height; ++r) column[r] = img(r, c);
        qfs.push_back(quantile_function(column));
    }

    Image out(width, height);
    std::vector<double> target(height);
    const auto radius = static_cast<std::int64_t>(kernel.radius);
    for (std::size_t c = 0; c < width; ++c) {
        const auto centre = static_cast<std::int64_t>(c) - radius;
        weighted_quantile_sum(
            kernel,
            [&](std::size_t j) -> const QuantileFunction& {
                return qfs[reflect_column_index(centre + static_cast<std::int64_t>(j), width)];
            },
            target);
        const QuantileFunction& own = qfs[c];
        for (std::size_t k = 0; k < height; ++k) out(own.ranks[k], c) = target[k];
    }
    return out;
}

}  // namespace detail

/// Corrects column (or line) fixed-pattern noise in a single frame.
/// sigma == 0 returns the input unchanged.
inline Image mire_correct(const Image& img, const MireConfig& cfg) {
    const WeightKernel kernel = gaussian_kernel(cfg.sigma);
    if (cfg.orientation == Orientation::Lines) return transpose(detail::equalize_columns(transpose(img), kernel));
    return detail::equalize_columns(img, kernel);
}

/// Picks sigma minimizing the TV norm of the corrected image. The grid is
/// scanned first; with `refine`, a ternary search then narrows the interval
/// between the argmin's grid neighbours. Ties go to the smaller sigma.
inline SigmaSearchResult auto_sigma(const Image& img, const std::vector<double>& grid, bool refine = true,
                                    Orientation orientation = Orientation::Columns) {
    if (grid.empty()) throw std::invalid_argument("auto_sigma: empty sigma grid");
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (!std::isfinite(grid[i]) || grid[i] < 0.0)
            throw std::invalid_argument("auto_sigma: sigma values must be finite and >= 0");
        if (i > 0 && grid[i] <= grid[i - 1]) throw std::invalid_argument("auto_sigma: grid must be ascending");
    }

    SigmaSearchResult result;
    double best_tv = std::numeric_limits<double>::infinity();
    std::map<double, double> seen;

    auto evaluate = [&](double sigma) {
        if (auto it = seen.find(sigma); it != seen.end()) return it->second;
        Image corrected = mire_correct(img, {sigma, orientation});
        const double tv = tv_norm(corrected);
        seen.emplace(sigma, tv);
        result.trace.push_back({sigma, tv});
        if (tv < best_tv || (tv == best_tv && sigma < result.best_sigma)) {
            best_tv = tv;
            result.best_sigma = sigma;
            result.corrected = std::move(corrected);
        }
        return tv;
    };

    std::size_t arg = 0;
    double arg_tv = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double tv = evaluate(grid[i]);
        if (tv < arg_tv) {
            arg_tv = tv;
            arg = i;
        }
    }

    if (refine && grid.size() > 1) {
        double lo = grid[arg == 0 ? 0 : arg - 1];
        double hi = grid[std::min(arg + 1, grid.size() - 1)];
        while (hi - lo >= kSigmaRefineTolerance) {
            const double m1 = lo + (hi - lo) / 3.0;
            const double m2 = hi - (hi - lo) / 3.0;
            if (evaluate(m1) <= evaluate(m2))
                hi = m2;
            else
                lo = m1;
        }
    }
    return result;
}

}  // namespace mire
