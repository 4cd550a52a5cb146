#pragma once

#include <cmath>
#include <stdexcept>

#include "mire/image.hpp"

namespace mire {

/// Root mean squared difference; `truth` and `restored` must match in size.
inline double rmse(const Image& truth, const Image& restored) {
    if (truth.width() != restored.width() || truth.height() != restored.height())
        throw std::invalid_argument("rmse: dimension mismatch");
    if (truth.empty()) return 0.0;
    const auto a = truth.pixels();
    const auto b = restored.pixels();
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        acc += d * d;
    }
    return std::sqrt(acc / static_cast<double>(a.size()));
}

/// Isotropic total variation: sum over pixels of the forward-difference
/// gradient magnitude, with zero difference past the last row or column.
inline double tv_norm(const Image& img) {
    double total = 0.0;
    const std::size_t w = img.width();
    const std::size_t h = img.height();
    for (std::size_t r = 0; r < h; ++r) {
        for (std::size_t c = 0; c < w; ++c) {
            const double v = img(r, c);
            const double down = r + 1 < h ? img(r + 1, c) - v : 0.0;
            const double right = c + 1 < w ? img(r, c + 1) - v : 0.0;
            total += std::sqrt(down * down + right * right);
        }
    }
    return total;
}

}  // namespace mire
