#pragma once

// Column-offset destriping by horizontal total-variation minimization.
// Each pair of adjacent columns gets the additive shift that minimizes the
// L1 norm of their difference (a median); shifts are chained left to right
// and a global constant restores the input mean.

#include <algorithm>
#include <stdexcept>
#include <vector>

#include "mire/image.hpp"

namespace mire {

struct OffsetVector {
    std::vector<double> offsets;  // k(y), one per column
};

namespace detail {

// Median of a scratch buffer; even counts average the two central values.
inline double median_inplace(std::vector<double>& v) {
    const std::size_t n = v.size();
    const auto mid = v.begin() + static_cast<std::ptrdiff_t>(n / 2);
    std::nth_element(v.begin(), mid, v.end());
    const double upper = *mid;
    if (n % 2 == 1) return upper;
    const double lower = *std::max_element(v.begin(), mid);
    return 0.5 * (lower + upper);
}

}  // namespace detail

/// delta[y] minimizes sum_x |c_{y+1}(x) + delta - c_y(x)|.
inline std::vector<double> column_deltas(const Image& img) {
    if (img.width() < 2) throw std::invalid_argument("column_deltas: need at least two columns");
    if (img.height() == 0) throw std::invalid_argument("column_deltas: empty image");
    std::vector<double> deltas(img.width() - 1);
    std::vector<double> diff(img.height());
    for (std::size_t c = 0; c + 1 < img.width(); ++c) {
        for (std::size_t r = 0; r < img.height(); ++r) diff[r] = img(r, c) - img(r, c + 1);
        deltas[c] = detail::median_inplace(diff);
    }
    return deltas;
}

inline OffsetVector tv_offsets(const Image& img) {
    const auto deltas = column_deltas(img);
    OffsetVector k;
    k.offsets.assign(img.width(), 0.0);
    for (std::size_t c = 0; c < deltas.size(); ++c) k.offsets[c + 1] = k.offsets[c] + deltas[c];

    // Column offsets shift the image mean by their average; cancel it.
    long double acc = 0.0L;
    for (double o : k.offsets) acc += o;
    const double shift = static_cast<double>(acc / static_cast<long double>(k.offsets.size()));
    for (double& o : k.offsets) o -= shift;
    return k;
}

inline Image tv_correct(const Image& img) {
    const OffsetVector k = tv_offsets(img);
    Image out = img;
    for (std::size_t r = 0; r < img.height(); ++r)
        for (std::size_t c = 0; c < img.width(); ++c) out(r, c) += k.offsets[c];
    return out;
}

}  // namespace mire
