#include "pupil/eval.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <thread>

#include "pupil/pgm.hpp"
#include "pupil/rng.hpp"

namespace fs = std::filesystem;

namespace pupil {

const char* algorithm_name(Algorithm a) {
    switch (a) {
        case Algorithm::cdf: return "cdf";
        case Algorithm::pf:  return "pf";
        case Algorithm::ea:  return "ea";
    }
    return "?";
}

std::optional<Algorithm> algorithm_from_name(const std::string& name) {
    if (name == "cdf") return Algorithm::cdf;
    if (name == "pf")  return Algorithm::pf;
    if (name == "ea")  return Algorithm::ea;
    return std::nullopt;
}

const char* record_status_label(RecordStatus s) {
    switch (s) {
        case RecordStatus::ok:           return "ok";
        case RecordStatus::left_failed:  return "left_failed";
        case RecordStatus::right_failed: return "right_failed";
        case RecordStatus::both_failed:  return "both_failed";
    }
    return "?";
}

namespace {

double dist(double ax, double ay, double bx, double by) {
    return std::hypot(ax - bx, ay - by);
}

}  // namespace

double detection_error(const EyeAnnotation& truth, const PupilEstimate& pred_left,
                       const PupilEstimate& pred_right) {
    const double interocular = dist(truth.left.x, truth.left.y, truth.right.x, truth.right.y);
    if (interocular <= 0.0)
        throw Error(ErrorCode::DegenerateTruth, "zero interocular distance");

    const double ll = dist(truth.left.x, truth.left.y, pred_left.x, pred_left.y);
    const double rr = dist(truth.right.x, truth.right.y, pred_right.x, pred_right.y);
    const double lr = dist(truth.left.x, truth.left.y, pred_right.x, pred_right.y);
    const double rl = dist(truth.right.x, truth.right.y, pred_left.x, pred_left.y);

    // Assignment with the smaller total distance wins; guards against
    // datasets and detectors disagreeing on which eye is "left".
    if (ll + rr <= lr + rl)
        return std::max(ll, rr) / interocular;
    return std::max(lr, rl) / interocular;
}

EyeAnnotation read_eye_file(const std::string& path, int image_width, int image_height) {
    std::ifstream in(path);
    if (!in)
        throw Error(ErrorCode::MalformedEyeFile, path + ": cannot open");

    std::string header;
    if (!std::getline(in, header) || header.empty() || header[0] != '#')
        throw Error(ErrorCode::MalformedEyeFile, path + ": missing '#' header line");

    long lx, ly, rx, ry;
    if (!(in >> lx >> ly >> rx >> ry))
        throw Error(ErrorCode::MalformedEyeFile, path + ": expected four integers");
    std::string trailing;
    if (in >> trailing)
        throw Error(ErrorCode::MalformedEyeFile, path + ": trailing data after coordinates");

    auto in_bounds = [&](long x, long y) {
        return x >= 0 && x < image_width && y >= 0 && y < image_height;
    };
    if (!in_bounds(lx, ly) || !in_bounds(rx, ry))
        throw Error(ErrorCode::MalformedEyeFile, path + ": coordinates outside image bounds");
    if (lx == rx && ly == ry)
        throw Error(ErrorCode::MalformedEyeFile, path + ": left and right positions coincide");

    return EyeAnnotation{{static_cast<int>(lx), static_cast<int>(ly)},
                         {static_cast<int>(rx), static_cast<int>(ry)}};
}

void write_eye_file(const std::string& path, const EyeAnnotation& ann) {
    std::ofstream out(path);
    if (!out)
        throw Error(ErrorCode::IoError, path + ": cannot open for writing");
    out << "#LX\tLY\tRX\tRY\n"
        << ann.left.x << '\t' << ann.left.y << '\t' << ann.right.x << '\t' << ann.right.y
        << '\n';
    if (!out)
        throw Error(ErrorCode::IoError, path + ": write failed");
}

std::vector<DatasetEntry> load_bioid(const std::string& directory) {
    std::error_code ec;
    if (!fs::is_directory(directory, ec))
        throw Error(ErrorCode::IoError, directory + ": not a readable directory");

    std::vector<fs::path> images;
    for (const auto& entry : fs::directory_iterator(directory)) {
        if (!entry.is_regular_file())
            continue;
        std::string ext = entry.path().extension().string();
        std::transform(ext.begin(), ext.end(), ext.begin(),
                       [](unsigned char c) { return std::tolower(c); });
        if (ext == ".pgm")
            images.push_back(entry.path());
    }
    std::sort(images.begin(), images.end());

    std::vector<DatasetEntry> out;
    out.reserve(images.size());
    for (const auto& pgm_path : images) {
        fs::path eye_path = pgm_path;
        eye_path.replace_extension(".eye");
        if (!fs::exists(eye_path))
            throw Error(ErrorCode::MissingAnnotation,
                        pgm_path.string() + ": no matching .eye annotation");
        GrayImage img = read_pgm_file(pgm_path.string());
        EyeAnnotation ann = read_eye_file(eye_path.string(), img.width(), img.height());
        out.push_back(DatasetEntry{pgm_path.stem().string(), std::move(img), ann});
    }
    return out;
}

namespace {

Region clamp_square(double cx, double cy, int side, int image_width, int image_height) {
    int x0 = static_cast<int>(std::lround(cx)) - side / 2;
    int y0 = static_cast<int>(std::lround(cy)) - side / 2;
    int w = std::min(side, image_width);
    int h = std::min(side, image_height);
    x0 = std::clamp(x0, 0, image_width - w);
    y0 = std::clamp(y0, 0, image_height - h);
    return Region{x0, y0, w, h};
}

}  // namespace

std::pair<Region, Region> derive_roi(const EyeAnnotation& ann, int image_width,
                                     int image_height, double scale, double jitter,
                                     std::uint32_t seed) {
    const double interocular =
        dist(ann.left.x, ann.left.y, ann.right.x, ann.right.y);
    if (interocular <= 0.0)
        throw Error(ErrorCode::DegenerateTruth, "zero interocular distance");

    const int side = static_cast<int>(std::lround(scale * interocular));
    Rng rng(seed);
    const double reach = jitter * side;

    // Draw order is fixed: left x, left y, right x, right y.
    auto one = [&](const PixelPos& eye) {
        double cx = eye.x + rng.uniform(-reach, reach);
        double cy = eye.y + rng.uniform(-reach, reach);
        return clamp_square(cx, cy, side, image_width, image_height);
    };
    Region left = one(ann.left);
    Region right = one(ann.right);

    if (std::min(left.width, left.height) < 10 || std::min(right.width, right.height) < 10)
        throw Error(ErrorCode::RoiOutOfBounds, "derived ROI smaller than 10 px");
    return {left, right};
}

PupilEstimate locate_pupil(Algorithm algorithm, const GrayImage& img, const Region& roi,
                           const AlgoParams& params) {
    switch (algorithm) {
        case Algorithm::cdf: return locate_pupil_cdf(img, roi, params.cdf);
        case Algorithm::pf:  return locate_pupil_pf(img, roi, params.pf);
        case Algorithm::ea:  return locate_pupil_ea(img, roi, params.ea);
    }
    throw Error(ErrorCode::InvalidArgument, "unknown algorithm");
}

namespace {

// Runs f(i) for i in [0, n) on up to `threads` workers; rethrows the first
// worker exception after joining.
template <typename F>
void parallel_for(std::size_t n, int threads, F&& f) {
    if (n == 0)
        return;
    unsigned hw = std::thread::hardware_concurrency();
    std::size_t workers = threads > 0 ? static_cast<std::size_t>(threads)
                                      : std::max(1u, hw);
    workers = std::min(workers, n);
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i)
            f(i);
        return;
    }

    std::atomic<std::size_t> next{0};
    std::exception_ptr first_error;
    std::mutex error_mutex;
    auto body = [&] {
        for (;;) {
            std::size_t i = next.fetch_add(1);
            if (i >= n)
                return;
            try {
                f(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!first_error)
                    first_error = std::current_exception();
            }
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t t = 0; t < workers; ++t)
        pool.emplace_back(body);
    for (auto& t : pool)
        t.join();
    if (first_error)
        std::rethrow_exception(first_error);
}

struct TimedEstimate {
    std::optional<PupilEstimate> estimate;
    double ms = 0.0;
};

TimedEstimate run_one(Algorithm algorithm, const GrayImage& img, const Region& roi,
                      const AlgoParams& params) {
    TimedEstimate out;
    auto start = std::chrono::steady_clock::now();
    try {
        out.estimate = locate_pupil(algorithm, img, roi, params);
    } catch (const Error&) {
        out.estimate.reset();
    }
    out.ms = std::chrono::duration<double, std::milli>(
                 std::chrono::steady_clock::now() - start)
                 .count();
    return out;
}

}  // namespace

std::vector<EvalRecord> run_benchmark(const std::vector<DatasetEntry>& dataset,
                                      const BenchConfig& config) {
    const std::size_t per_image = config.algorithms.size();
    std::vector<EvalRecord> records(dataset.size() * per_image);

    parallel_for(dataset.size(), config.threads, [&](std::size_t i) {
        const DatasetEntry& entry = dataset[i];
        const std::uint32_t image_seed = derive_seed(config.roi.seed, entry.id);

        std::optional<std::pair<Region, Region>> rois;
        try {
            rois = derive_roi(entry.truth, entry.image.width(), entry.image.height(),
                              config.roi.scale, config.roi.jitter, image_seed);
        } catch (const Error&) {
            rois.reset();
        }

        for (std::size_t a = 0; a < per_image; ++a) {
            EvalRecord& rec = records[i * per_image + a];
            rec.image_id = entry.id;
            rec.algorithm = config.algorithms[a];
            if (!rois) {
                rec.status = RecordStatus::both_failed;
                continue;
            }
            TimedEstimate left = run_one(rec.algorithm, entry.image, rois->first,
                                         config.params);
            TimedEstimate right = run_one(rec.algorithm, entry.image, rois->second,
                                          config.params);
            rec.predicted_left = left.estimate;
            rec.predicted_right = right.estimate;
            if (config.timing) {
                rec.left_ms = left.ms;
                rec.right_ms = right.ms;
            }
            if (left.estimate && right.estimate) {
                rec.status = RecordStatus::ok;
                rec.d = detection_error(entry.truth, *left.estimate, *right.estimate);
            } else if (!left.estimate && !right.estimate) {
                rec.status = RecordStatus::both_failed;
            } else {
                rec.status = left.estimate ? RecordStatus::right_failed
                                           : RecordStatus::left_failed;
            }
        }
    });
    return records;
}

std::vector<double> default_dmax_levels() {
    return {0.02, 0.05, 0.1, 0.15, 0.2, 0.25};
}

std::vector<EfficiencyCurve> efficiency_table(const std::vector<EvalRecord>& records,
                                              const std::vector<double>& dmax_list) {
    if (dmax_list.empty())
        throw Error(ErrorCode::InvalidArgument, "d_max list must be non-empty");
    if (!std::is_sorted(dmax_list.begin(), dmax_list.end()))
        throw Error(ErrorCode::InvalidArgument, "d_max list must be ascending");

    std::vector<Algorithm> order;
    for (const EvalRecord& rec : records)
        if (std::find(order.begin(), order.end(), rec.algorithm) == order.end())
            order.push_back(rec.algorithm);

    std::vector<EfficiencyCurve> curves;
    for (Algorithm algo : order) {
        std::vector<double> errors;
        for (const EvalRecord& rec : records)
            if (rec.algorithm == algo && rec.status == RecordStatus::ok)
                errors.push_back(*rec.d);
        if (errors.empty())
            throw Error(ErrorCode::NoEvaluatedRecords,
                        std::string("no successfully evaluated records for ") +
                            algorithm_name(algo));

        EfficiencyCurve curve;
        curve.algorithm = algo;
        curve.evaluated_count = static_cast<long long>(errors.size());
        for (double dmax : dmax_list) {
            long long hits = std::count_if(errors.begin(), errors.end(),
                                           [&](double d) { return d < dmax; });
            curve.points.emplace_back(dmax,
                                      static_cast<double>(hits) /
                                          static_cast<double>(errors.size()));
        }
        curves.push_back(std::move(curve));
    }
    if (curves.empty())
        throw Error(ErrorCode::NoEvaluatedRecords, "no records to evaluate");
    return curves;
}

}  // namespace pupil
