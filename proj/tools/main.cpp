#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "pupil/commands.hpp"
#include "pupil/errors.hpp"

namespace {

using pupil::Algorithm;

std::vector<Algorithm> resolve_algorithms(const std::string& flag) {
    if (flag == "all") return {Algorithm::cdf, Algorithm::pf, Algorithm::ea};
    return {*pupil::algorithm_from_name(flag)};
}

bool parse_region(const std::string& text, pupil::Region& roi) {
    char extra = 0;
    int n = std::sscanf(text.c_str(), "%d,%d,%d,%d%c", &roi.x0, &roi.y0, &roi.width,
                        &roi.height, &extra);
    return n == 4;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Grayscale pupil localization toolkit"};
    app.require_subcommand(1);

    std::string algo_flag = "all";
    std::string format_flag = "csv";
    pupil::AlgoParams params;
    pupil::RoiPolicy roi_policy;
    std::vector<double> dmax_levels;
    bool timing = false;
    int threads = 0;

    auto add_algo_options = [&](CLI::App* cmd) {
        cmd->add_option("--algo", algo_flag, "algorithm selection")
            ->check(CLI::IsMember({"cdf", "pf", "ea", "all"}));
        cmd->add_option("--quantile", params.cdf.quantile,
                        "histogram quantile for the darkness threshold");
        cmd->add_option("--alpha", params.pf.alpha,
                        "blend between mean and variance projections");
        cmd->add_option("--pf-k", params.pf.threshold_factor,
                        "derivative threshold as a fraction of the peak");
        cmd->add_option("--sigma", params.ea.sigma, "edge detector blur sigma");
        cmd->add_option("--canny-low", params.ea.low_factor,
                        "weak edge threshold as a multiple of mean intensity");
        cmd->add_option("--canny-high", params.ea.high_factor,
                        "strong edge threshold as a multiple of mean intensity");
        cmd->add_option("--min-sep", params.ea.min_separation_base,
                        "minimum pixel distance between boundary lines");
        cmd->add_option("--min-sep-frac", params.ea.min_separation_fraction,
                        "minimum line separation as a fraction of region size");
    };
    auto add_roi_options = [&](CLI::App* cmd) {
        cmd->add_option("--roi-scale", roi_policy.scale,
                        "region side as a fraction of interocular distance");
        cmd->add_option("--jitter", roi_policy.jitter,
                        "region placement jitter as a fraction of its side");
        cmd->add_option("--seed", roi_policy.seed, "seed for region placement");
    };

    auto* locate = app.add_subcommand("locate", "Locate the pupil in one image");
    std::string image_path;
    std::string roi_spec;
    std::string eye_file;
    std::string which = "left";
    std::string dump_edges;
    locate->add_option("image", image_path, "input image (binary PGM)")->required();
    locate->add_option("--roi", roi_spec, "search region as x0,y0,w,h");
    locate->add_option("--eye-file", eye_file,
                       "annotation file the search region is derived from");
    locate->add_option("--which", which, "eye to use with --eye-file")
        ->check(CLI::IsMember({"left", "right"}));
    locate->add_option("--dump-edges", dump_edges, "write the edge map to this PGM path");
    add_algo_options(locate);
    add_roi_options(locate);

    auto* bench = app.add_subcommand("bench", "Benchmark a dataset directory");
    std::string dataset_dir;
    std::string out_path;
    bench->add_option("dataset", dataset_dir, "directory of .pgm/.eye pairs")->required();
    bench->add_option("--out", out_path, "output directory")->required();
    bench->add_option("--dmax", dmax_levels, "error levels for the summary table")
        ->delimiter(',');
    bench->add_option("--format", format_flag, "output format")
        ->check(CLI::IsMember({"csv", "json"}));
    bench->add_flag("--timing", timing, "add per-eye wall time columns");
    bench->add_option("--threads", threads, "worker threads (0 = auto)");
    add_algo_options(bench);
    add_roi_options(bench);

    auto* curve = app.add_subcommand("curve", "Write a dense efficiency curve");
    std::string curve_out;
    curve->add_option("dataset", dataset_dir, "directory of .pgm/.eye pairs")->required();
    curve->add_option("--out", curve_out, "output file (default: stdout)");
    curve->add_option("--format", format_flag, "output format")
        ->check(CLI::IsMember({"csv", "json"}));
    curve->add_option("--threads", threads, "worker threads (0 = auto)");
    add_algo_options(curve);
    add_roi_options(curve);

    auto* synth = app.add_subcommand("synth", "Generate a synthetic dataset");
    pupil::SynthOptions sopt;
    synth->add_option("--out", out_path, "output directory")->required();
    synth->add_option("--count", sopt.count, "number of image/annotation pairs");
    synth->add_option("--roi-size", sopt.spec.roi_size, "eye tile side in pixels");
    synth->add_option("--iris-radius", sopt.spec.iris_radius, "iris radius in pixels");
    synth->add_option("--pupil-radius", sopt.spec.pupil_radius, "pupil radius in pixels");
    synth->add_option("--background", sopt.spec.background, "background intensity");
    synth->add_option("--iris-intensity", sopt.spec.iris_intensity, "iris intensity");
    synth->add_option("--pupil-intensity", sopt.spec.pupil_intensity, "pupil intensity");
    synth->add_option("--eyelid", sopt.spec.eyelid_coverage,
                      "fraction of the iris hidden by the eyelid");
    synth->add_option("--noise", sopt.spec.noise_sigma, "Gaussian noise sigma");
    synth->add_option("--eye-distance", sopt.eye_distance,
                      "distance between eye centres (0 = auto)");
    synth->add_option("--seed", sopt.seed, "base seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? pupil::exit_code::ok : pupil::exit_code::usage;
    }

    try {
        params.cdf.validate();
        params.pf.validate();
        params.ea.validate();
    } catch (const pupil::Error& e) {
        std::cerr << "pupil: " << e.what() << '\n';
        return pupil::exit_code::usage;
    }
    if (roi_policy.scale <= 0.0 || roi_policy.jitter < 0.0) {
        std::cerr << "pupil: --roi-scale must be positive and --jitter non-negative\n";
        return pupil::exit_code::usage;
    }

    if (locate->parsed()) {
        pupil::LocateOptions opt;
        opt.image_path = image_path;
        if (!roi_spec.empty()) {
            pupil::Region roi;
            if (!parse_region(roi_spec, roi)) {
                std::cerr << "pupil: --roi expects x0,y0,w,h\n";
                return pupil::exit_code::usage;
            }
            opt.roi = roi;
        }
        if (!eye_file.empty()) opt.eye_file = eye_file;
        opt.use_right_eye = which == "right";
        opt.algorithms = resolve_algorithms(algo_flag);
        opt.params = params;
        opt.roi_policy = roi_policy;
        if (!dump_edges.empty()) opt.dump_edges = dump_edges;
        return pupil::cmd_locate(opt, std::cout, std::cerr);
    }
    if (bench->parsed()) {
        pupil::BenchOptions opt;
        opt.dataset_dir = dataset_dir;
        opt.out_dir = out_path;
        opt.algorithms = resolve_algorithms(algo_flag);
        opt.params = params;
        opt.roi_policy = roi_policy;
        opt.dmax_levels = dmax_levels;
        opt.format =
            format_flag == "json" ? pupil::OutputFormat::json : pupil::OutputFormat::csv;
        opt.timing = timing;
        opt.threads = threads;
        return pupil::cmd_bench(opt, std::cout, std::cerr);
    }
    if (curve->parsed()) {
        pupil::CurveOptions opt;
        opt.dataset_dir = dataset_dir;
        if (!curve_out.empty()) opt.out_file = curve_out;
        opt.algorithms = resolve_algorithms(algo_flag);
        opt.params = params;
        opt.roi_policy = roi_policy;
        opt.format =
            format_flag == "json" ? pupil::OutputFormat::json : pupil::OutputFormat::csv;
        opt.threads = threads;
        return pupil::cmd_curve(opt, std::cout, std::cerr);
    }
    sopt.out_dir = out_path;
    return pupil::cmd_synth(sopt, std::cout, std::cerr);
}
