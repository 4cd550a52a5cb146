#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "mire/equalize.hpp"

namespace mire {

/// JSON evaluation record written by the correction commands.
struct MetricsReport {
    std::string input_path;
    std::string output_path;
    std::string method;  // "mire" or "tv"
    std::string orientation = "columns";
    std::size_t width = 0;
    std::size_t height = 0;
    int bit_depth = 8;
    std::optional<double> sigma_used;
    std::optional<double> rmse_vs_truth;
    std::optional<double> rmse_vs_truth_aligned;  // after removing the mean difference
    double tv_before = 0.0;
    double tv_after = 0.0;
    double mean_before = 0.0;
    double mean_after = 0.0;
    double runtime_ms = 0.0;
    std::optional<std::vector<SigmaTvPoint>> trace;
};

namespace detail {

template <typename T>
nlohmann::ordered_json optional_json(const std::optional<T>& v) {
    return v ? nlohmann::ordered_json(*v) : nlohmann::ordered_json(nullptr);
}

template <typename T>
std::optional<T> optional_from(const nlohmann::json& j, const char* key) {
    if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
    return j.at(key).get<T>();
}

}  // namespace detail

inline void to_json(nlohmann::ordered_json& j, const SigmaTvPoint& p) { j = {{"sigma", p.sigma}, {"tv", p.tv}}; }
inline void to_json(nlohmann::json& j, const SigmaTvPoint& p) { j = {{"sigma", p.sigma}, {"tv", p.tv}}; }
inline void from_json(const nlohmann::json& j, SigmaTvPoint& p) {
    j.at("sigma").get_to(p.sigma);
    j.at("tv").get_to(p.tv);
}

inline nlohmann::ordered_json report_to_json(const MetricsReport& r) {
    nlohmann::ordered_json j;
    j["input_path"] = r.input_path;
    j["output_path"] = r.output_path;
    j["method"] = r.method;
    j["orientation"] = r.orientation;
    j["width"] = r.width;
    j["height"] = r.height;
    j["bit_depth"] = r.bit_depth;
    j["sigma_used"] = detail::optional_json(r.sigma_used);
    j["rmse_vs_truth"] = detail::optional_json(r.rmse_vs_truth);
    j["rmse_vs_truth_aligned"] = detail::optional_json(r.rmse_vs_truth_aligned);
    j["tv_before"] = r.tv_before;
    j["tv_after"] = r.tv_after;
    j["mean_before"] = r.mean_before;
    j["mean_after"] = r.mean_after;
    j["runtime_ms"] = r.runtime_ms;
    if (r.trace) {
        auto& t = j["trace"] = nlohmann::ordered_json::array();
        for (const auto& p : *r.trace) t.push_back(p);
    } else {
        j["trace"] = nullptr;
    }
    return j;
}

inline MetricsReport report_from_json(const nlohmann::json& j) {
    MetricsReport r;
    j.at("input_path").get_to(r.input_path);
    j.at("output_path").get_to(r.output_path);
    j.at("method").get_to(r.method);
    j.at("orientation").get_to(r.orientation);
    j.at("width").get_to(r.width);
    j.at("height").get_to(r.height);
    j.at("bit_depth").get_to(r.bit_depth);
    r.sigma_used = detail::optional_from<double>(j, "sigma_used");
    r.rmse_vs_truth = detail::optional_from<double>(j, "rmse_vs_truth");
    r.rmse_vs_truth_aligned = detail::optional_from<double>(j, "rmse_vs_truth_aligned");
    j.at("tv_before").get_to(r.tv_before);
    j.at("tv_after").get_to(r.tv_after);
    j.at("mean_before").get_to(r.mean_before);
    j.at("mean_after").get_to(r.mean_after);
    j.at("runtime_ms").get_to(r.runtime_ms);
    r.trace = detail::optional_from<std::vector<SigmaTvPoint>>(j, "trace");
    return r;
}

}  // namespace mire
