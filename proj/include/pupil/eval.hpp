#ifndef PUPIL_EVAL_HPP
#define PUPIL_EVAL_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pupil/cdf_algorithm.hpp"
#include "pupil/edge_analysis.hpp"
#include "pupil/image.hpp"
#include "pupil/projection.hpp"

namespace pupil {

enum class Algorithm { cdf, pf, ea };

const char* algorithm_name(Algorithm a);
std::optional<Algorithm> algorithm_from_name(const std::string& name);

/// Ground-truth pupil positions for one image, as labeled by the dataset.
struct EyeAnnotation {
    PixelPos left;
    PixelPos right;
};

enum class RecordStatus { ok, left_failed, right_failed, both_failed };

const char* record_status_label(RecordStatus s);

/// One (image, algorithm) evaluation outcome.
struct EvalRecord {
    std::string image_id;
    Algorithm algorithm = Algorithm::cdf;
    std::optional<PupilEstimate> predicted_left;
    std::optional<PupilEstimate> predicted_right;
    std::optional<double> d;  // present iff status == ok
    RecordStatus status = RecordStatus::ok;
    // Per-eye wall time, present when the benchmark ran with timing enabled.
    std::optional<double> left_ms;
    std::optional<double> right_ms;
};

struct EfficiencyCurve {
    Algorithm algorithm = Algorithm::cdf;
    std::vector<std::pair<double, double>> points;  // (d_max, efficiency), ascending
    // Number of ok records for the algorithm: the efficiency denominator.
    // Per-record statuses in the benchmark output preserve the total count.
    long long evaluated_count = 0;
};

struct DatasetEntry {
    std::string id;
    GrayImage image;
    EyeAnnotation truth;
};

/// Worst of the two prediction errors, normalized by the interocular
/// distance. Predictions are first paired to the annotations by the
/// assignment minimizing total distance, making the metric insensitive to
/// left/right labeling conventions.
double detection_error(const EyeAnnotation& truth, const PupilEstimate& pred_left,
                       const PupilEstimate& pred_right);

/// Loads matched BioID-convention basename pairs (*.pgm / *.eye) from a
/// directory, sorted by image id. An empty directory yields an empty list.
std::vector<DatasetEntry> load_bioid(const std::string& directory);

EyeAnnotation read_eye_file(const std::string& path, int image_width, int image_height);
void write_eye_file(const std::string& path, const EyeAnnotation& ann);

/// How eye ROIs are derived from ground truth: a square of side
/// round(scale * interocular distance) centred on the annotated pupil plus a
/// seeded uniform jitter of up to jitter * side per axis.
struct RoiPolicy {
    double scale = 0.4;
    double jitter = 0.1;
    std::uint64_t seed = 12345;
};

std::pair<Region, Region> derive_roi(const EyeAnnotation& ann, int image_width,
                                     int image_height, double scale, double jitter,
                                     std::uint32_t seed);

struct AlgoParams {
    CdfParams cdf;
    PfParams pf;
    EaParams ea;
};

PupilEstimate locate_pupil(Algorithm algorithm, const GrayImage& img, const Region& roi,
                           const AlgoParams& params);

struct BenchConfig {
    std::vector<Algorithm> algorithms{Algorithm::cdf, Algorithm::pf, Algorithm::ea};
    RoiPolicy roi;
    AlgoParams params;
    bool timing = false;
    int threads = 0;  // 0 = hardware concurrency
};

/// Runs every requested algorithm on both eyes of every entry. Entries may be
/// processed concurrently; the record order is image-major with algorithms in
/// the requested order, and results are deterministic for a given seed.
std::vector<EvalRecord> run_benchmark(const std::vector<DatasetEntry>& dataset,
                                      const BenchConfig& config);

/// Standard d_max levels for the summary table: 0.02 through 0.25.
std::vector<double> default_dmax_levels();

/// Efficiency at each d_max level (strict d < d_max), one curve per algorithm
/// in order of first appearance in the records.
std::vector<EfficiencyCurve> efficiency_table(const std::vector<EvalRecord>& records,
                                              const std::vector<double>& dmax_list);

}  // namespace pupil

#endif
