// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any
// criterion fails.
//
//   acceptance <path-to-mire-cli> <scratch-dir>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "mire/mire.hpp"

namespace {

namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

struct Outcome {
    bool pass;
    std::string detail;
};

std::string fmt(double v, int precision = 6) {
    std::ostringstream os;
    os.precision(precision);
    os << v;
    return os.str();
}

double median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

mire::Image random_image(std::size_t w, std::size_t h, std::uint64_t seed) {
    std::mt19937_64 gen(seed);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    mire::Image img(w, h);
    for (double& v : img.pixels()) v = u(gen);
    return img;
}

double l2(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
    return std::sqrt(s);
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// 1. Median RMSE ordering MIRE(auto) < TV < uncorrected over 20 seeds.
Outcome ordering() {
    constexpr int kSeeds = 20;
    constexpr double kBudgetSeconds = 120.0;
    const auto start = Clock::now();
    std::vector<double> raw, tv, mire_rmse;
    for (std::uint64_t seed = 0; seed < kSeeds; ++seed) {
        const auto clean = mire::natural_scene(256, 256, seed);
        const auto noisy = mire::simulate_nu(clean, {0.05, 0.05, 0.01, seed}).observed;
        raw.push_back(mire::rmse(clean, noisy));
        tv.push_back(mire::rmse(clean, mire::tv_correct(noisy)));
        mire_rmse.push_back(mire::rmse(clean, mire::auto_sigma(noisy, mire::default_sigma_grid(), true).corrected));
    }
    const double seconds = std::chrono::duration<double>(Clock::now() - start).count();
    const double m = median(mire_rmse), t = median(tv), r = median(raw);
    return {m < t && t < r && seconds < kBudgetSeconds,
            "median RMSE mire " + fmt(m) + " < tv " + fmt(t) + " < raw " + fmt(r) + ", " + fmt(seconds, 3) + " s"};
}

// 2. TV baseline recovers pure column offsets up to a global constant. The
// ground truth has zero-median column differences (banded scene), which is
// what makes the median estimate of each offset step exact.
Outcome tv_exactness() {
    double worst = 0.0;
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const auto clean = mire::banded_scene(128, 96, 100 + seed);
        const auto striped = mire::simulate_nu(clean, {0.0, 0.05, 0.0, seed}).observed;
        auto out = mire::tv_correct(striped);
        const double shift = clean.mean() - out.mean();
        for (double& v : out.pixels()) v += shift;
        worst = std::max(worst, mire::rmse(clean, out));
    }
    return {worst < 1e-6, "worst mean-aligned RMSE " + fmt(worst) + " < 1e-6"};
}

// 3. sigma = 0 is the identity, bit for bit.
Outcome sigma_zero_identity() {
    int exact = 0;
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const auto img = random_image(17 + seed * 5, 11 + seed * 3, 200 + seed);
        if (mire::mire_correct(img, {0.0}) == img) ++exact;
    }
    return {exact == 10, std::to_string(exact) + "/10 images returned bit-exactly"};
}

// 4. Specification never inverts the order of two samples in a column.
Outcome monotone_specification() {
    std::mt19937_64 gen(4);
    std::normal_distribution<double> n(0.0, 1.0);
    std::uniform_int_distribution<int> level(0, 20);
    long violations = 0, pairs = 0;
    for (int trial = 0; trial < 1000; ++trial) {
        const std::size_t m = 2 + gen() % 48;
        std::vector<double> col(m), target(m);
        for (double& v : col) v = trial % 2 == 0 ? n(gen) : level(gen);
        for (double& v : target) v = 5.0 * n(gen);
        std::sort(target.begin(), target.end());
        const auto out = mire::specify(col, target);
        for (std::size_t a = 0; a < m; ++a)
            for (std::size_t b = 0; b < m; ++b)
                if (col[a] < col[b]) {
                    ++pairs;
                    if (out[a] > out[b]) ++violations;
                }
    }
    return {violations == 0, std::to_string(violations) + " violations over " + std::to_string(pairs) + " ordered pairs"};
}

// 5. Midway contraction and its law-of-large-numbers limit.
Outcome midway_contraction() {
    std::mt19937_64 gen(5);
    std::normal_distribution<double> n(0.0, 1.0);
    int exceed = 0;
    for (int trial = 0; trial < 1000; ++trial) {
        const std::size_t m = 1 + gen() % 64;
        const auto kernel = mire::gaussian_kernel(std::uniform_real_distribution<double>(0.0, 4.0)(gen));
        std::vector<mire::QuantileFunction> qfs;
        for (std::size_t j = 0; j < kernel.weights.size(); ++j) {
            std::vector<double> col(m);
            const double gain = 1.0 + 0.3 * n(gen), offset = n(gen);
            for (double& v : col) v = offset + gain * n(gen);
            qfs.push_back(mire::quantile_function(col));
        }
        std::vector<double> ref(m);
        for (double& v : ref) v = n(gen);
        std::sort(ref.begin(), ref.end());
        const auto mid = mire::midway_quantiles(qfs, kernel);
        double worst = 0.0;
        for (const auto& q : qfs) worst = std::max(worst, l2(q.values, ref));
        if (l2(mid, ref) > worst * (1.0 + 1e-12)) ++exceed;
    }

    // i.i.d. linear perturbations (zero-mean offset, gain around 1) of one
    // reference quantile function; the midway should approach it as N grows.
    auto averaged_distance = [&](std::size_t count) {
        double total = 0.0;
        for (int trial = 0; trial < 200; ++trial) {
            std::vector<double> ref(64);
            for (double& v : ref) v = n(gen);
            std::sort(ref.begin(), ref.end());
            std::vector<mire::QuantileFunction> qfs;
            for (std::size_t i = 0; i < count; ++i) {
                const double gain = std::max(0.1, 1.0 + 0.2 * n(gen)), offset = 0.2 * n(gen);
                std::vector<double> col(ref.size());
                for (std::size_t k = 0; k < ref.size(); ++k) col[k] = offset + gain * ref[k];
                qfs.push_back(mire::quantile_function(col));
            }
            mire::WeightKernel uniform;
            uniform.weights.assign(count, 1.0 / static_cast<double>(count));
            total += l2(mire::midway_quantiles(qfs, uniform), ref);
        }
        return total / 200.0;
    };
    const double w4 = averaged_distance(4), w100 = averaged_distance(100);
    return {exceed == 0 && w100 < w4, std::to_string(exceed) + "/1000 contraction failures; mean W(N=100) " + fmt(w100) +
                                          " < W(N=4) " + fmt(w4)};
}

// 6. The median delta is an L1 minimizer found by a brute-force grid scan.
Outcome median_oracle() {
    std::mt19937_64 gen(6);
    std::normal_distribution<double> n(0.0, 1.0);
    constexpr double kStep = 1e-3, kTol = 1e-3;
    int mismatches = 0;
    double worst = 0.0;
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t m = 2 + gen() % 11;
        mire::Image img(2, m);
        for (double& v : img.pixels()) v = n(gen);
        const double delta = mire::column_deltas(img)[0];

        const auto a = img.column(0), b = img.column(1);
        auto cost = [&](double d) {
            double s = 0.0;
            for (std::size_t i = 0; i < m; ++i) s += std::abs(b[i] + d - a[i]);
            return s;
        };
        double lo = 1e300, hi = -1e300;
        for (std::size_t i = 0; i < m; ++i) {
            lo = std::min(lo, a[i] - b[i]);
            hi = std::max(hi, a[i] - b[i]);
        }
        // Even counts have a flat minimum; collect the whole argmin interval.
        double best = 1e300;
        std::vector<double> costs;
        const long steps = static_cast<long>(std::ceil((hi - lo) / kStep)) + 2;
        for (long s = -1; s <= steps; ++s) costs.push_back(cost(lo + s * kStep));
        for (double c : costs) best = std::min(best, c);
        double arg_lo = 1e300, arg_hi = -1e300;
        for (long s = -1; s <= steps; ++s)
            if (costs[s + 1] <= best + 1e-12) {
                arg_lo = std::min(arg_lo, lo + s * kStep);
                arg_hi = std::max(arg_hi, lo + s * kStep);
            }
        const double dist = delta < arg_lo ? arg_lo - delta : (delta > arg_hi ? delta - arg_hi : 0.0);
        worst = std::max(worst, dist);
        if (dist > kTol) ++mismatches;
    }
    return {mismatches == 0, std::to_string(mismatches) + "/200 pairs off the grid argmin; worst distance " + fmt(worst)};
}

int run_cli(const fs::path& cli, const std::string& args) {
    const std::string cmd = "\"" + cli.string() + "\" " + args + " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string q(const fs::path& p) { return "\"" + p.string() + "\""; }

// 7. The sweep trace is U-shaped on a simulated striped frame.
Outcome sweep_shape(const fs::path& cli, const fs::path& work) {
    const auto clean = work / "sweep_clean.png", noisy = work / "sweep_noisy.png", csv = work / "sweep.csv";
    if (run_cli(cli, "scene " + q(clean) + " --width 256 --height 256 --seed 21") != 0 ||
        run_cli(cli, "simulate " + q(clean) + " " + q(noisy) + " --seed 21") != 0 ||
        run_cli(cli, "sweep " + q(noisy) + " --csv " + q(csv)) != 0)
        return {false, "CLI invocation failed"};

    std::ifstream in(csv);
    std::string line;
    std::getline(in, line);
    std::vector<std::pair<double, double>> rows;
    while (std::getline(in, line)) {
        const auto comma = line.find(',');
        rows.emplace_back(std::stod(line.substr(0, comma)), std::stod(line.substr(comma + 1)));
    }
    if (rows.size() != mire::default_sigma_grid().size()) return {false, "unexpected row count"};
    std::size_t arg = 0;
    for (std::size_t i = 1; i < rows.size(); ++i)
        if (rows[i].second < rows[arg].second) arg = i;
    const bool interior = arg > 0 && arg + 1 < rows.size();
    const bool below_ends = rows[arg].second < rows.front().second && rows[arg].second < rows.back().second;
    std::string trace;
    for (const auto& [s, tv] : rows) trace += (trace.empty() ? "" : ", ") + fmt(tv, 5);
    return {interior && below_ends, "min at sigma " + fmt(rows[arg].first) + "; TV trace " + trace};
}

// 8. Small textured frame: no crash, no more than 5% worse than the input.
Outcome textured_failure_mode() {
    std::string detail;
    bool ok = true;
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        const auto clean = mire::textured_scene(64, 64, seed);
        const auto noisy = mire::simulate_nu(clean, {0.05, 0.05, 0.01, seed}).observed;
        double raw = 0.0, fixed = 0.0;
        try {
            raw = mire::rmse(clean, noisy);
            fixed = mire::rmse(clean, mire::auto_sigma(noisy, mire::default_sigma_grid(), true).corrected);
        } catch (const std::exception& e) {
            return {false, std::string("threw: ") + e.what()};
        }
        ok = ok && fixed <= 1.05 * raw;
        detail += (detail.empty() ? "" : "; ") + fmt(fixed, 4) + "/" + fmt(raw, 4);
    }
    return {ok, "RMSE mire/raw per seed: " + detail};
}

// 9. Fixed-sigma MIRE on 512x512 under 100 ms, single thread.
Outcome performance(const fs::path& cli, const fs::path& work) {
    const auto img = mire::simulate_nu(mire::natural_scene(512, 512, 9), {0.05, 0.05, 0.01, 9}).observed;
    std::vector<double> ms;
    for (int i = 0; i < 5; ++i) {
        const auto start = Clock::now();
        const auto out = mire::mire_correct(img, {2.0});
        ms.push_back(std::chrono::duration<double, std::milli>(Clock::now() - start).count());
        if (out.width() != 512) return {false, "bad output"};
    }
    const double med = median(ms);

    // The CLI report carries runtime_ms.
    const auto in = work / "perf.pgm", out = work / "perf_out.pgm", report = work / "perf.json";
    mire::write_image_file(in, img, 16);
    if (run_cli(cli, "correct " + q(in) + " " + q(out) + " --sigma 2 --report " + q(report)) != 0)
        return {false, "CLI invocation failed"};
    const auto r = mire::read_report(report);
    return {med < 100.0 && r.runtime_ms > 0.0,
            "median " + fmt(med, 4) + " ms (limit 100); CLI runtime_ms " + fmt(r.runtime_ms, 4)};
}

// 10. Two runs of every command give byte-identical outputs. Reports are
// compared without runtime_ms, the one field that measures wall time.
Outcome determinism(const fs::path& cli, const fs::path& work) {
    auto run_all = [&](const fs::path& dir) {
        fs::create_directories(dir);
        const std::vector<std::string> cmds{
            "scene " + q(dir / "clean.png") + " --seed 3 --width 96 --height 80",
            "simulate " + q(dir / "clean.png") + " " + q(dir / "noisy.png") + " --seed 3 --truth " + q(dir / "nu.json"),
            "correct " + q(dir / "noisy.png") + " " + q(dir / "mire.png") + " --auto --clean " + q(dir / "clean.png") +
                " --report " + q(dir / "mire.json"),
            "correct " + q(dir / "noisy.png") + " " + q(dir / "lines.png") + " --sigma 1.5 --orientation lines --report " +
                q(dir / "lines.json"),
            "tv-correct " + q(dir / "noisy.png") + " " + q(dir / "tv.png") + " --clean " + q(dir / "clean.png") +
                " --report " + q(dir / "tv.json"),
            "sweep " + q(dir / "noisy.png") + " --grid 0,1,2,4 --csv " + q(dir / "sweep.csv") + " --out-dir " +
                q(dir / "sweep"),
        };
        for (const auto& c : cmds)
            if (run_cli(cli, c) != 0) return false;
        const std::string eval = "\"" + cli.string() + "\" evaluate " + q(dir / "clean.png") + " " + q(dir / "mire.png") +
                                 " > " + q(dir / "eval.txt");
        return std::system(eval.c_str()) == 0;
    };
    const auto a = work / "det_a", b = work / "det_b";
    fs::remove_all(a);
    fs::remove_all(b);
    if (!run_all(a) || !run_all(b)) return {false, "CLI invocation failed"};

    int compared = 0;
    std::string differing;
    for (const auto& entry : fs::recursive_directory_iterator(a)) {
        if (!entry.is_regular_file()) continue;
        const auto rel = fs::relative(entry.path(), a);
        std::string x = slurp(entry.path()), y = slurp(b / rel);
        if (entry.path().extension() == ".json" && rel.filename() != "nu.json") {
            auto jx = nlohmann::json::parse(x), jy = nlohmann::json::parse(y);
            jx.erase("runtime_ms");
            jy.erase("runtime_ms");
            // Paths differ between the two run directories by construction.
            jx.erase("input_path");
            jy.erase("input_path");
            jx.erase("output_path");
            jy.erase("output_path");
            x = jx.dump();
            y = jy.dump();
        } else if (rel.filename() == "nu.json" || rel.filename() == "sweep.csv") {
            // These embed paths; compare with the run directory stripped.
            auto strip = [](std::string s, const std::string& dir) {
                for (std::size_t p; (p = s.find(dir)) != std::string::npos;) s.erase(p, dir.size());
                return s;
            };
            x = strip(x, a.string());
            y = strip(y, b.string());
        }
        ++compared;
        if (x != y) differing += rel.string() + " ";
    }
    return {differing.empty() && compared >= 10,
            std::to_string(compared) + " files compared" + (differing.empty() ? "" : "; differ: " + differing)};
}

}  // namespace

int main(int argc, char** argv) {
    if (argc < 3) {
        std::cerr << "usage: acceptance <mire-cli> <work-dir>\n";
        return 2;
    }
    const fs::path cli = argv[1];
    const fs::path work = argv[2];
    fs::create_directories(work);

    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"AC1 ordering mire < tv < raw", ordering},
        {"AC2 tv baseline exactness", tv_exactness},
        {"AC3 sigma=0 identity", sigma_zero_identity},
        {"AC4 monotone specification", monotone_specification},
        {"AC5 midway contraction", midway_contraction},
        {"AC6 median L1 oracle", median_oracle},
        {"AC7 sigma sweep shape", [&] { return sweep_shape(cli, work); }},
        {"AC8 textured 64x64 regression", textured_failure_mode},
        {"AC9 512x512 under 100 ms", [&] { return performance(cli, work); }},
        {"AC10 determinism", [&] { return determinism(cli, work); }},
    };

    int failed = 0;
    for (const auto& [name, check] : criteria) {
        Outcome o;
        try {
            o = check();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        if (!o.pass) ++failed;
        std::cout << (o.pass ? "[PASS] " : "[FAIL] ") << name << " -- " << o.detail << std::endl;
    }
    std::cout << (criteria.size() - failed) << "/" << criteria.size() << " criteria passed" << std::endl;
    return failed == 0 ? 0 : 1;
}
