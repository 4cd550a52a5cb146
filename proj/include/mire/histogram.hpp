#pragma once

// Histograms as exact order statistics. A column of M samples is described
// by its quantile function (the inverse cumulative histogram): the sorted
// samples plus the row each one came from. Columns of equal height can then
// be averaged rank by rank, which is exactly the midway of their histograms.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace mire {

struct QuantileFunction {
    std::vector<double> values;      // ascending
    std::vector<std::size_t> ranks;  // values[k] was sampled at row ranks[k]

    std::size_t size() const noexcept { return values.size(); }
};

/// Truncated, normalized Gaussian weights over offsets -radius..radius.
struct WeightKernel {
    double sigma = 0.0;
    std::size_t radius = 0;
    std::vector<double> weights{1.0};

    double at(std::ptrdiff_t offset) const { return weights[static_cast<std::size_t>(offset + static_cast<std::ptrdiff_t>(radius))]; }
};

/// Stable ascending sort of a column; ties keep row order.
inline QuantileFunction quantile_function(std::span<const double> column) {
    if (column.empty()) throw std::invalid_argument("quantile_function: empty column");
    QuantileFunction qf;
    qf.ranks.resize(column.size());
    std::iota(qf.ranks.begin(), qf.ranks.end(), std::size_t{0});
    std::stable_sort(qf.ranks.begin(), qf.ranks.end(),
                     [&](std::size_t a, std::size_t b) { return column[a] < column[b]; });
    qf.values.resize(column.size());
    for (std::size_t k = 0; k < column.size(); ++k) qf.values[k] = column[qf.ranks[k]];
    return qf;
}

/// Radius is max(1, ceil(4 sigma)) for sigma > 0, so the discarded tail mass
/// stays below 1e-4. sigma == 0 gives the identity kernel.
inline WeightKernel gaussian_kernel(double sigma) {
    if (!std::isfinite(sigma) || sigma < 0.0)
        throw std::invalid_argument("gaussian_kernel: sigma must be finite and >= 0");
    WeightKernel k;
    k.sigma = sigma;
    if (sigma == 0.0) return k;

    k.radius = std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(4.0 * sigma)));
    const auto n = static_cast<std::ptrdiff_t>(k.radius);
    k.weights.assign(2 * k.radius + 1, 0.0);
    for (std::ptrdiff_t j = 0; j <= n; ++j) {
        const double w = std::exp(-static_cast<double>(j * j) / (2.0 * sigma * sigma));
        k.weights[static_cast<std::size_t>(n + j)] = w;
        k.weights[static_cast<std::size_t>(n - j)] = w;
    }
    // Sum from the tails inwards so small weights are not swamped.
    double total = k.weights[static_cast<std::size_t>(n)];
    for (std::ptrdiff_t j = n; j >= 1; --j) total += 2.0 * k.weights[static_cast<std::size_t>(n + j)];
    for (double& w : k.weights) w /= total;
    return k;
}

namespace detail {

// out[k] = sum_j w[j] * qf(j).values[k]. `qf_at` maps a kernel slot to a
// quantile function so callers can reflect indices without copying.
template <typename QfAt>
void weighted_quantile_sum(const WeightKernel& kernel, QfAt&& qf_at, std::span<double> out) {
    std::fill(out.begin(), out.end(), 0.0);
    for (std::size_t j = 0; j < kernel.weights.size(); ++j) {
        const double w = kernel.weights[j];
        const std::vector<double>& v = qf_at(j).values;
        for (std::size_t k = 0; k < out.size(); ++k) out[k] += w * v[k];
    }
}

}  // namespace detail

/// Weighted midway of 2N+1 quantile functions of equal length. The result
/// is non-decreasing because each term is.
inline std::vector<double> midway_quantiles(std::span<const QuantileFunction> qfs, const WeightKernel& kernel) {
    if (qfs.size() != kernel.weights.size())
        throw std::invalid_argument("midway_quantiles: " + std::to_string(qfs.size()) +
                                    " quantile functions for a kernel of length " +
                                    std::to_string(kernel.weights.size()));
    const std::size_t m = qfs.front().size();
    for (const auto& qf : qfs)
        if (qf.size() != m) throw std::invalid_argument("midway_quantiles: quantile functions differ in length");
    std::vector<double> out(m);
    detail::weighted_quantile_sum(kernel, [&](std::size_t j) -> const QuantileFunction& { return qfs[j]; }, out);
    return out;
}

/// Gives `qf`'s column the histogram described by `target`: the sample of
/// rank k becomes target[k]. Writes into `out` (indexed by row).
inline void specify_into(const QuantileFunction& qf, std::span<const double> target, std::span<double> out) {
    if (target.size() != qf.size() || out.size() != qf.size())
        throw std::invalid_argument("specify: length mismatch");
    for (std::size_t k = 1; k < target.size(); ++k)
        if (target[k] < target[k - 1]) throw std::invalid_argument("specify: target is not non-decreasing");
    for (std::size_t k = 0; k < target.size(); ++k) out[qf.ranks[k]] = target[k];
}

inline std::vector<double> specify(std::span<const double> column, std::span<const double> target) {
    if (column.size() != target.size()) throw std::invalid_argument("specify: length mismatch");
    std::vector<double> out(column.size());
    specify_into(quantile_function(column), target, out);
    return out;
}

}  // namespace mire
