#pragma once

// Linear column non-uniformity model:
//   observed(x, y) = clean(x, y) * gain(y) + offset(y) + noise(x, y)
// with y the column index. All draws come from one seeded NormalSampler in
// a fixed order: every gain, then every offset, then the noise row-major.

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

#include <json.hpp>

#include "mire/image.hpp"
#include "mire/random.hpp"

namespace mire {

struct NuParams {
    double gain_std = 0.05;
    double offset_std = 0.05;
    double noise_std = 0.01;
    std::uint64_t seed = 0;
};

struct NuGroundTruth {
    std::vector<double> gains;
    std::vector<double> offsets;
};

struct SimulatedFrame {
    Image observed;
    NuGroundTruth truth;
};

inline void validate(const NuParams& p) {
    for (double s : {p.gain_std, p.offset_std, p.noise_std})
        if (!std::isfinite(s) || s < 0.0) throw std::invalid_argument("NuParams: deviations must be finite and >= 0");
}

inline SimulatedFrame simulate_nu(const Image& clean, const NuParams& p) {
    validate(p);
    NormalSampler rng(p.seed);
    SimulatedFrame sim;
    sim.truth.gains.resize(clean.width());
    sim.truth.offsets.resize(clean.width());
    for (double& g : sim.truth.gains) g = rng.normal(1.0, p.gain_std);
    for (double& b : sim.truth.offsets) b = rng.normal(0.0, p.offset_std);

    sim.observed = Image(clean.width(), clean.height());
    for (std::size_t r = 0; r < clean.height(); ++r) {
        for (std::size_t c = 0; c < clean.width(); ++c) {
            const double eta = rng.normal(0.0, p.noise_std);
            sim.observed(r, c) = clean(r, c) * sim.truth.gains[c] + sim.truth.offsets[c] + eta;
        }
    }
    return sim;
}

inline void to_json(nlohmann::json& j, const NuParams& p) {
    j = {{"gain_std", p.gain_std}, {"offset_std", p.offset_std}, {"noise_std", p.noise_std}, {"seed", p.seed}};
}

inline void from_json(const nlohmann::json& j, NuParams& p) {
    j.at("gain_std").get_to(p.gain_std);
    j.at("offset_std").get_to(p.offset_std);
    j.at("noise_std").get_to(p.noise_std);
    j.at("seed").get_to(p.seed);
}

inline void to_json(nlohmann::json& j, const NuGroundTruth& t) {
    j = {{"gains", t.gains}, {"offsets", t.offsets}};
}

inline void from_json(const nlohmann::json& j, NuGroundTruth& t) {
    j.at("gains").get_to(t.gains);
    j.at("offsets").get_to(t.offsets);
}

}  // namespace mire
