#pragma once

// File-level commands behind the `mire` CLI. Each reads its inputs, runs
// one algorithm and writes images, JSON reports or CSV. They throw on any
// failure; the CLI turns exceptions into a nonzero exit code.

#include <charconv>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "mire/equalize.hpp"
#include "mire/image_io.hpp"
#include "mire/metrics.hpp"
#include "mire/report.hpp"
#include "mire/scenes.hpp"
#include "mire/simulate.hpp"
#include "mire/tv_baseline.hpp"

namespace mire {

namespace fs = std::filesystem;

struct CorrectOptions {
    fs::path input;
    fs::path output;
    std::optional<double> sigma;  // fixed sigma; ignored when auto_sigma is set
    bool auto_sigma = false;
    std::vector<double> grid = default_sigma_grid();
    bool refine = true;
    Orientation orientation = Orientation::Columns;
    std::optional<fs::path> report;
    std::optional<fs::path> clean;  // ground-truth image for rmse_vs_truth
};

struct TvCorrectOptions {
    fs::path input;
    fs::path output;
    std::optional<fs::path> report;
    std::optional<fs::path> clean;
};

struct SimulateOptions {
    fs::path input;
    fs::path output;
    NuParams params;
    std::optional<fs::path> truth;  // NU ground truth JSON
};

struct SweepOptions {
    fs::path input;
    std::vector<double> sigmas = default_sigma_grid();
    Orientation orientation = Orientation::Columns;
    std::optional<fs::path> csv;
    std::optional<fs::path> out_dir;  // corrected image per sigma
};

struct SweepRow {
    double sigma;
    double tv;
    std::optional<fs::path> image;
};

enum class SceneKind { Natural, Textured, Banded };

struct SceneOptions {
    fs::path output;
    std::size_t width = 256;
    std::size_t height = 256;
    std::uint64_t seed = 0;
    SceneKind kind = SceneKind::Natural;
    int bit_depth = 16;
};

inline std::string format_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return {buf, res.ptr};
}

inline const char* to_string(Orientation o) { return o == Orientation::Lines ? "lines" : "columns"; }

namespace detail {

using Clock = std::chrono::steady_clock;

inline double elapsed_ms(Clock::time_point start) {
    return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

inline void write_text(const fs::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw ImageIoError(IoErrc::FileAccess, "cannot create '" + path.string() + "'");
    out << text;
    if (!out) throw ImageIoError(IoErrc::FileAccess, "write failed for '" + path.string() + "'");
}

inline void fill_common(MetricsReport& r, const fs::path& input, const fs::path& output, const DecodedImage& in,
                        const Image& corrected, const std::optional<fs::path>& clean) {
    r.input_path = input.string();
    r.output_path = output.string();
    r.width = in.image.width();
    r.height = in.image.height();
    r.bit_depth = in.bit_depth;
    r.tv_before = tv_norm(in.image);
    r.tv_after = tv_norm(corrected);
    r.mean_before = in.image.mean();
    r.mean_after = corrected.mean();
    if (clean) {
        const Image truth = read_image_file(*clean).image;
        r.rmse_vs_truth = rmse(truth, corrected);
        Image aligned = corrected;
        const double shift = truth.mean() - corrected.mean();
        for (double& v : aligned.pixels()) v += shift;
        r.rmse_vs_truth_aligned = rmse(truth, aligned);
    }
}

}  // namespace detail

inline void write_report(const fs::path& path, const MetricsReport& r) {
    detail::write_text(path, report_to_json(r).dump(2) + "\n");
}

inline MetricsReport read_report(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw ImageIoError(IoErrc::FileAccess, "cannot open '" + path.string() + "'");
    return report_from_json(nlohmann::json::parse(in));
}

inline MetricsReport cmd_correct(const CorrectOptions& opt) {
    if (!opt.auto_sigma && !opt.sigma) throw std::invalid_argument("correct: give either a sigma or auto mode");
    const DecodedImage in = read_image_file(opt.input);

    MetricsReport r;
    r.method = "mire";
    r.orientation = to_string(opt.orientation);
    Image corrected;
    const auto start = detail::Clock::now();
    if (opt.auto_sigma) {
        SigmaSearchResult search = auto_sigma(in.image, opt.grid, opt.refine, opt.orientation);
        r.runtime_ms = detail::elapsed_ms(start);
        r.sigma_used = search.best_sigma;
        r.trace = std::move(search.trace);
        corrected = std::move(search.corrected);
    } else {
        corrected = mire_correct(in.image, {*opt.sigma, opt.orientation});
        r.runtime_ms = detail::elapsed_ms(start);
        r.sigma_used = *opt.sigma;
    }

    detail::fill_common(r, opt.input, opt.output, in, corrected, opt.clean);
    write_image_file(opt.output, corrected, in.bit_depth);
    if (opt.report) write_report(*opt.report, r);
    return r;
}

inline MetricsReport cmd_tv_correct(const TvCorrectOptions& opt) {
    const DecodedImage in = read_image_file(opt.input);
    MetricsReport r;
    r.method = "tv";
    const auto start = detail::Clock::now();
    const Image corrected = tv_correct(in.image);
    r.runtime_ms = detail::elapsed_ms(start);

    detail::fill_common(r, opt.input, opt.output, in, corrected, opt.clean);
    write_image_file(opt.output, corrected, in.bit_depth);
    if (opt.report) write_report(*opt.report, r);
    return r;
}

inline NuGroundTruth cmd_simulate(const SimulateOptions& opt) {
    const DecodedImage in = read_image_file(opt.input);
    SimulatedFrame sim = simulate_nu(in.image, opt.params);
    write_image_file(opt.output, sim.observed, in.bit_depth);
    if (opt.truth) {
        nlohmann::ordered_json j;
        j["input_path"] = opt.input.string();
        j["params"] = nlohmann::json(opt.params);
        j["gains"] = sim.truth.gains;
        j["offsets"] = sim.truth.offsets;
        detail::write_text(*opt.truth, j.dump(2) + "\n");
    }
    return sim.truth;
}

inline NuGroundTruth read_ground_truth(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw ImageIoError(IoErrc::FileAccess, "cannot open '" + path.string() + "'");
    return nlohmann::json::parse(in).get<NuGroundTruth>();
}

inline double cmd_evaluate(const fs::path& truth, const fs::path& candidate) {
    return rmse(read_image_file(truth).image, read_image_file(candidate).image);
}

inline std::vector<SweepRow> cmd_sweep(const SweepOptions& opt) {
    if (opt.sigmas.empty()) throw std::invalid_argument("sweep: empty sigma list");
    const auto bytes = read_file_bytes(opt.input);
    const ImageFormat format = detect_format(bytes);
    const DecodedImage in = decode_image(bytes, format);
    if (opt.out_dir) fs::create_directories(*opt.out_dir);

    std::vector<SweepRow> rows;
    std::string csv = opt.out_dir ? "sigma,tv_norm,image\n" : "sigma,tv_norm\n";
    for (double sigma : opt.sigmas) {
        const Image corrected = mire_correct(in.image, {sigma, opt.orientation});
        SweepRow row{sigma, tv_norm(corrected), std::nullopt};
        csv += format_double(row.sigma) + "," + format_double(row.tv);
        if (opt.out_dir) {
            const char* ext = format == ImageFormat::Png ? ".png" : ".pgm";
            row.image = *opt.out_dir / ("sigma_" + format_double(sigma) + ext);
            write_image_file(*row.image, corrected, in.bit_depth);
            csv += "," + row.image->string();
        }
        csv += "\n";
        rows.push_back(std::move(row));
    }
    if (opt.csv) detail::write_text(*opt.csv, csv);
    return rows;
}

inline void cmd_scene(const SceneOptions& opt) {
    Image img;
    switch (opt.kind) {
        case SceneKind::Natural: img = natural_scene(opt.width, opt.height, opt.seed); break;
        case SceneKind::Textured: img = textured_scene(opt.width, opt.height, opt.seed); break;
        case SceneKind::Banded: img = banded_scene(opt.width, opt.height, opt.seed); break;
    }
    write_image_file(opt.output, img, opt.bit_depth);
}

}  // namespace mire
