#pragma once

// Portable seeded Gaussian source. std::mt19937_64 is bit-specified by the
// standard, but std::normal_distribution is not, so the normal transform is
// done here (Box-Muller on 53-bit uniforms).

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

namespace mire {

class NormalSampler {
public:
    explicit NormalSampler(std::uint64_t seed) : engine_(seed) {}

    /// Uniform in [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    double standard_normal() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        const double u1 = 1.0 - uniform();  // (0, 1]
        const double u2 = uniform();
        const double radius = std::sqrt(-2.0 * std::log(u1));
        const double angle = 2.0 * std::numbers::pi * u2;
        spare_ = radius * std::sin(angle);
        has_spare_ = true;
        return radius * std::cos(angle);
    }

    double normal(double mean, double stddev) { return mean + stddev * standard_normal(); }

private:
    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

}  // namespace mire
