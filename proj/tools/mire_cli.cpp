// mire: single-frame column/line fixed-pattern noise removal.
//
//   mire correct  in.png out.png (--sigma S | --auto [--grid a,b,..]) [--orientation lines]
//   mire tv-correct in.png out.png
//   mire simulate clean.png noisy.png --seed 7 --truth nu.json
//   mire evaluate clean.png restored.png
//   mire sweep    in.png --grid 0,1,2,4 --csv trace.csv
//   mire scene    clean.png --width 256 --height 256 --seed 0

#include <cstdio>
#include <exception>
#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>

#include "mire/mire.hpp"

namespace {

const std::map<std::string, mire::Orientation> kOrientations{
    {"columns", mire::Orientation::Columns},
    {"lines", mire::Orientation::Lines},
};

void print_report_summary(const mire::MetricsReport& r) {
    std::cout << "method " << r.method;
    if (r.sigma_used) std::cout << "  sigma " << mire::format_double(*r.sigma_used);
    std::cout << "  tv " << r.tv_before << " -> " << r.tv_after;
    if (r.rmse_vs_truth) std::cout << "  rmse " << *r.rmse_vs_truth;
    std::cout << "  " << r.runtime_ms << " ms\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Single-frame infrared fixed-pattern noise correction"};
    app.require_subcommand(1);

    mire::CorrectOptions correct;
    std::string correct_report, correct_clean;
    double correct_sigma = 0.0;
    bool no_refine = false;
    auto* c = app.add_subcommand("correct", "Midway equalization of columns or lines");
    c->add_option("input", correct.input, "Input PGM/PNG")->required()->check(CLI::ExistingFile);
    c->add_option("output", correct.output, "Output image (.pgm or .png)")->required();
    auto* sigma_opt = c->add_option("--sigma", correct_sigma, "Fixed Gaussian std-dev over neighbouring columns")
                          ->check(CLI::NonNegativeNumber);
    auto* auto_opt = c->add_flag("--auto", correct.auto_sigma, "Choose sigma by total-variation minimization");
    c->add_option("--grid", correct.grid, "Comma-separated ascending sigma grid for --auto")
        ->delimiter(',')
        ->needs(auto_opt);
    c->add_flag("--no-refine", no_refine, "Skip ternary refinement around the grid minimum")->needs(auto_opt);
    c->add_option("--orientation", correct.orientation, "columns or lines")
        ->transform(CLI::CheckedTransformer(kOrientations, CLI::ignore_case));
    c->add_option("--report", correct_report, "Write a JSON metrics report");
    c->add_option("--clean", correct_clean, "Ground-truth image; adds rmse_vs_truth to the report")
        ->check(CLI::ExistingFile);
    sigma_opt->excludes(auto_opt);

    mire::TvCorrectOptions tv;
    std::string tv_report, tv_clean;
    auto* t = app.add_subcommand("tv-correct", "Column-offset baseline by horizontal TV minimization");
    t->alias("tv");
    t->add_option("input", tv.input, "Input PGM/PNG")->required()->check(CLI::ExistingFile);
    t->add_option("output", tv.output, "Output image (.pgm or .png)")->required();
    t->add_option("--report", tv_report, "Write a JSON metrics report");
    t->add_option("--clean", tv_clean, "Ground-truth image; adds rmse_vs_truth to the report")
        ->check(CLI::ExistingFile);

    mire::SimulateOptions sim;
    std::string sim_truth;
    auto* s = app.add_subcommand("simulate", "Apply a seeded linear column non-uniformity");
    s->add_option("input", sim.input, "Clean PGM/PNG")->required()->check(CLI::ExistingFile);
    s->add_option("output", sim.output, "Corrupted output image")->required();
    s->add_option("--seed", sim.params.seed, "Generator seed")->capture_default_str();
    s->add_option("--gain-std", sim.params.gain_std, "Per-column gain spread around 1")
        ->check(CLI::NonNegativeNumber)
        ->capture_default_str();
    s->add_option("--offset-std", sim.params.offset_std, "Per-column offset spread around 0")
        ->check(CLI::NonNegativeNumber)
        ->capture_default_str();
    s->add_option("--noise-std", sim.params.noise_std, "Per-pixel Gaussian noise")
        ->check(CLI::NonNegativeNumber)
        ->capture_default_str();
    s->add_option("--truth", sim_truth, "Write drawn gains/offsets as JSON");

    std::string eval_truth, eval_candidate;
    auto* e = app.add_subcommand("evaluate", "Print RMSE between a ground truth and a candidate");
    e->add_option("truth", eval_truth, "Ground-truth image")->required()->check(CLI::ExistingFile);
    e->add_option("candidate", eval_candidate, "Restored image")->required()->check(CLI::ExistingFile);

    mire::SweepOptions sweep;
    std::string sweep_csv, sweep_dir;
    auto* w = app.add_subcommand("sweep", "Total variation of the corrected image for each sigma");
    w->add_option("input", sweep.input, "Input PGM/PNG")->required()->check(CLI::ExistingFile);
    w->add_option("--grid", sweep.sigmas, "Comma-separated sigma list")->delimiter(',');
    w->add_option("--orientation", sweep.orientation, "columns or lines")
        ->transform(CLI::CheckedTransformer(kOrientations, CLI::ignore_case));
    w->add_option("--csv", sweep_csv, "Write sigma,tv_norm rows here instead of stdout");
    w->add_option("--out-dir", sweep_dir, "Also write the corrected image for every sigma");

    mire::SceneOptions scene;
    const std::map<std::string, mire::SceneKind> kinds{
        {"natural", mire::SceneKind::Natural},
        {"textured", mire::SceneKind::Textured},
        {"banded", mire::SceneKind::Banded},
    };
    auto* g = app.add_subcommand("scene", "Render a deterministic synthetic ground-truth scene");
    g->add_option("output", scene.output, "Output image (.pgm or .png)")->required();
    g->add_option("--width", scene.width)->capture_default_str();
    g->add_option("--height", scene.height)->capture_default_str();
    g->add_option("--seed", scene.seed)->capture_default_str();
    g->add_option("--kind", scene.kind, "natural, textured or banded")
        ->transform(CLI::CheckedTransformer(kinds, CLI::ignore_case));
    g->add_option("--bit-depth", scene.bit_depth)->check(CLI::IsMember({8, 16}))->capture_default_str();

    CLI11_PARSE(app, argc, argv);

    try {
        if (c->parsed()) {
            if (!correct.auto_sigma && sigma_opt->count() == 0) throw CLI::RequiredError("--sigma or --auto");
            if (sigma_opt->count() > 0) correct.sigma = correct_sigma;
            correct.refine = !no_refine;
            if (!correct_report.empty()) correct.report = correct_report;
            if (!correct_clean.empty()) correct.clean = correct_clean;
            print_report_summary(mire::cmd_correct(correct));
        } else if (t->parsed()) {
            if (!tv_report.empty()) tv.report = tv_report;
            if (!tv_clean.empty()) tv.clean = tv_clean;
            print_report_summary(mire::cmd_tv_correct(tv));
        } else if (s->parsed()) {
            if (!sim_truth.empty()) sim.truth = sim_truth;
            mire::cmd_simulate(sim);
        } else if (e->parsed()) {
            std::cout << mire::format_double(mire::cmd_evaluate(eval_truth, eval_candidate)) << "\n";
        } else if (w->parsed()) {
            if (!sweep_csv.empty()) sweep.csv = sweep_csv;
            if (!sweep_dir.empty()) sweep.out_dir = sweep_dir;
            const auto rows = mire::cmd_sweep(sweep);
            if (!sweep.csv) {
                std::cout << "sigma,tv_norm\n";
                for (const auto& row : rows)
                    std::cout << mire::format_double(row.sigma) << "," << mire::format_double(row.tv) << "\n";
            }
        } else if (g->parsed()) {
            mire::cmd_scene(scene);
        }
    } catch (const CLI::Error& err) {
        return app.exit(err);
    } catch (const std::exception& err) {
        std::cerr << "mire: " << err.what() << "\n";
        return 1;
    }
    return 0;
}
