#include "pupil/commands.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <string>
#include <system_error>
#include <utility>
#include <vector>

#include "pupil/edge_analysis.hpp"
#include "pupil/errors.hpp"
#include "pupil/pgm.hpp"
#include "pupil/rng.hpp"

namespace pupil {
namespace {

namespace fs = std::filesystem;

bool write_text_file(const fs::path& path, const std::string& text, std::ostream& err) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        err << "cannot open " << path.string() << " for writing\n";
        return false;
    }
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
    out.flush();
    if (!out) {
        err << "write failed: " << path.string() << '\n';
        return false;
    }
    return true;
}

bool ensure_directory(const fs::path& dir, std::ostream& err) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) {
        err << "cannot create directory " << dir.string() << ": " << ec.message() << '\n';
        return false;
    }
    return true;
}

std::optional<std::vector<DatasetEntry>> load_dataset(const fs::path& dir,
                                                     std::ostream& err) {
    std::vector<DatasetEntry> dataset;
    try {
        dataset = load_bioid(dir.string());
    } catch (const Error& e) {
        err << e.what() << '\n';
        return std::nullopt;
    }
    if (dataset.empty()) {
        err << "no image/annotation pairs found in " << dir.string() << '\n';
        return std::nullopt;
    }
    return dataset;
}

std::vector<double> curve_sweep_levels() {
    std::vector<double> levels;
    levels.reserve(61);
    for (int i = 0; i <= 60; ++i) levels.push_back(i * 0.005);
    return levels;
}

const char* format_extension(OutputFormat format) {
    return format == OutputFormat::csv ? "csv" : "json";
}

}  // namespace

int cmd_locate(const LocateOptions& opt, std::ostream& out, std::ostream& err) {
    if (opt.algorithms.empty()) {
        err << "locate: no algorithms selected\n";
        return exit_code::usage;
    }
    if (static_cast<bool>(opt.roi) == static_cast<bool>(opt.eye_file)) {
        err << "locate: exactly one of --roi and --eye-file is required\n";
        return exit_code::usage;
    }

    std::optional<GrayImage> img;
    try {
        img = read_pgm_file(opt.image_path.string());
    } catch (const Error& e) {
        err << "locate: " << e.what() << '\n';
        return exit_code::io;
    }

    Region roi;
    if (opt.roi) {
        roi = *opt.roi;
        if (roi.width <= 0 || roi.height <= 0 || !roi.inside(*img)) {
            err << "locate: region " << roi.x0 << ',' << roi.y0 << ',' << roi.width << ','
                << roi.height << " does not fit a " << img->width() << 'x' << img->height()
                << " image\n";
            return exit_code::usage;
        }
    } else {
        try {
            EyeAnnotation ann =
                read_eye_file(opt.eye_file->string(), img->width(), img->height());
            std::uint32_t seed =
                derive_seed(opt.roi_policy.seed, opt.image_path.stem().string());
            auto [left, right] = derive_roi(ann, img->width(), img->height(),
                                            opt.roi_policy.scale, opt.roi_policy.jitter, seed);
            roi = opt.use_right_eye ? right : left;
        } catch (const Error& e) {
            err << "locate: " << e.what() << '\n';
            return exit_code::io;
        }
    }

    bool any_failed = false;
    for (Algorithm algo : opt.algorithms) {
        try {
            PupilEstimate p = locate_pupil(algo, *img, roi, opt.params);
            out << algorithm_name(algo) << ',' << format_coord(p.x) << ','
                << format_coord(p.y) << ",ok\n";
        } catch (const Error& e) {
            any_failed = true;
            out << algorithm_name(algo) << ",,," << status_label(e.code()) << '\n';
        }
        if (algo == Algorithm::ea && opt.dump_edges) {
            try {
                EdgeMap edges = canny(*img, roi, opt.params.ea);
                write_pgm_file(opt.dump_edges->string(), edge_map_to_image(edges));
            } catch (const Error& e) {
                err << "locate: edge dump failed: " << e.what() << '\n';
                return exit_code::io;
            }
        }
    }
    return any_failed ? exit_code::detection : exit_code::ok;
}

int cmd_bench(const BenchOptions& opt, std::ostream& out, std::ostream& err) {
    auto dataset = load_dataset(opt.dataset_dir, err);
    if (!dataset) return exit_code::io;
    if (opt.algorithms.empty()) {
        err << "bench: no algorithms selected\n";
        return exit_code::usage;
    }

    BenchConfig config;
    config.algorithms = opt.algorithms;
    config.roi = opt.roi_policy;
    config.params = opt.params;
    config.timing = opt.timing;
    config.threads = opt.threads;
    std::vector<EvalRecord> records = run_benchmark(*dataset, config);

    if (!ensure_directory(opt.out_dir, err)) return exit_code::io;
    const char* ext = format_extension(opt.format);
    fs::path records_path = opt.out_dir / (std::string("records.") + ext);
    fs::path summary_path = opt.out_dir / (std::string("summary.") + ext);

    std::string records_text = opt.format == OutputFormat::csv
                                   ? records_csv(records, opt.timing)
                                   : records_json(records, opt.timing);
    if (!write_text_file(records_path, records_text, err)) return exit_code::io;

    // The per-record file is written before the summary so failures below
    // still leave the raw results on disk.
    std::vector<double> levels =
        opt.dmax_levels.empty() ? default_dmax_levels() : opt.dmax_levels;
    std::vector<EfficiencyCurve> curves;
    try {
        curves = efficiency_table(records, levels);
    } catch (const Error& e) {
        err << "bench: " << e.what() << '\n';
        return exit_code::detection;
    }
    std::string summary_text =
        opt.format == OutputFormat::csv ? summary_csv(curves) : summary_json(curves);
    if (!write_text_file(summary_path, summary_text, err)) return exit_code::io;

    out << "records: " << records_path.string() << '\n';
    out << "summary: " << summary_path.string() << '\n';
    return exit_code::ok;
}

int cmd_curve(const CurveOptions& opt, std::ostream& out, std::ostream& err) {
    auto dataset = load_dataset(opt.dataset_dir, err);
    if (!dataset) return exit_code::io;
    if (opt.algorithms.empty()) {
        err << "curve: no algorithms selected\n";
        return exit_code::usage;
    }

    BenchConfig config;
    config.algorithms = opt.algorithms;
    config.roi = opt.roi_policy;
    config.params = opt.params;
    config.threads = opt.threads;
    std::vector<EvalRecord> records = run_benchmark(*dataset, config);

    std::vector<EfficiencyCurve> curves;
    try {
        curves = efficiency_table(records, curve_sweep_levels());
    } catch (const Error& e) {
        err << "curve: " << e.what() << '\n';
        return exit_code::detection;
    }
    std::string text =
        opt.format == OutputFormat::csv ? curve_csv(curves) : curve_json(curves);

    if (opt.out_file) {
        if (!write_text_file(*opt.out_file, text, err)) return exit_code::io;
        out << "curve: " << opt.out_file->string() << '\n';
    } else {
        out << text;
    }
    return exit_code::ok;
}

int cmd_synth(const SynthOptions& opt, std::ostream& out, std::ostream& err) {
    if (opt.count < 1) {
        err << "synth: count must be at least 1\n";
        return exit_code::usage;
    }
    SynthEyeSpec spec = opt.spec;
    // Tiles are stamped at integer canvas positions, so the annotations in
    // the .eye files are exact.
    spec.center_x = (spec.roi_size - 1) / 2;
    spec.center_y = spec.center_x;
    try {
        spec.validate();
    } catch (const Error& e) {
        err << "synth: " << e.what() << '\n';
        return exit_code::usage;
    }

    const int tile = spec.roi_size;
    const int distance = opt.eye_distance > 0 ? opt.eye_distance : (5 * tile + 1) / 2;
    if (distance < tile + 8) {
        err << "synth: eye distance " << distance << " too small for tile size " << tile
            << '\n';
        return exit_code::usage;
    }
    const int margin = tile;
    const int width = distance + 2 * margin;
    const int height = 2 * margin;

    if (!ensure_directory(opt.out_dir, err)) return exit_code::io;

    for (int i = 0; i < opt.count; ++i) {
        char name[32];
        std::snprintf(name, sizeof name, "synth_%04d", i);
        std::uint32_t image_seed = derive_seed(opt.seed, name);
        Rng rng(image_seed);
        // A few pixels of placement jitter keep the set from collapsing into
        // identical frames while the annotations stay exact.
        EyeAnnotation ann;
        ann.left = {margin + rng.uniform_int(-2, 2), margin + rng.uniform_int(-2, 2)};
        ann.right = {margin + distance + rng.uniform_int(-2, 2),
                     margin + rng.uniform_int(-2, 2)};

        GrayImage canvas(width, height, static_cast<std::uint8_t>(spec.background));
        stamp_eye(canvas, spec, ann.left.x, ann.left.y);
        stamp_eye(canvas, spec, ann.right.x, ann.right.y);
        if (spec.noise_sigma > 0.0)
            add_gaussian_noise(canvas, spec.noise_sigma, derive_seed(image_seed, "noise"));

        fs::path pgm_path = opt.out_dir / (std::string(name) + ".pgm");
        fs::path eye_path = opt.out_dir / (std::string(name) + ".eye");
        try {
            write_pgm_file(pgm_path.string(), canvas);
            write_eye_file(eye_path.string(), ann);
        } catch (const Error& e) {
            err << "synth: " << e.what() << '\n';
            return exit_code::io;
        }
    }
    out << "wrote " << opt.count << " pairs to " << opt.out_dir.string() << '\n';
    return exit_code::ok;
}

}  // namespace pupil
