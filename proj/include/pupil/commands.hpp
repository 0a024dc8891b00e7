#ifndef PUPIL_COMMANDS_HPP
#define PUPIL_COMMANDS_HPP

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "pupil/eval.hpp"
#include "pupil/report.hpp"
#include "pupil/synth.hpp"

namespace pupil {

// Process exit codes shared by every subcommand.
namespace exit_code {
inline constexpr int ok = 0;
inline constexpr int usage = 1;
inline constexpr int io = 2;         // unreadable or malformed input, failed write
inline constexpr int detection = 3;  // an algorithm reported a failure status
}  // namespace exit_code

struct LocateOptions {
    std::filesystem::path image_path;
    // Exactly one of the two must be set: an explicit region, or an
    // annotation file the region is derived from.
    std::optional<Region> roi;
    std::optional<std::filesystem::path> eye_file;
    bool use_right_eye = false;
    std::vector<Algorithm> algorithms{Algorithm::cdf, Algorithm::pf, Algorithm::ea};
    AlgoParams params;
    RoiPolicy roi_policy;
    std::optional<std::filesystem::path> dump_edges;
};

/// Prints one line per algorithm: algo,x,y,ok or algo,,,<failure label>.
int cmd_locate(const LocateOptions& opt, std::ostream& out, std::ostream& err);

struct BenchOptions {
    std::filesystem::path dataset_dir;
    std::filesystem::path out_dir;
    std::vector<Algorithm> algorithms{Algorithm::cdf, Algorithm::pf, Algorithm::ea};
    AlgoParams params;
    RoiPolicy roi_policy;
    std::vector<double> dmax_levels;  // empty = default table levels
    OutputFormat format = OutputFormat::csv;
    bool timing = false;
    int threads = 0;
};

/// Writes records.<ext> and summary.<ext> into out_dir.
int cmd_bench(const BenchOptions& opt, std::ostream& out, std::ostream& err);

struct CurveOptions {
    std::filesystem::path dataset_dir;
    std::optional<std::filesystem::path> out_file;  // stdout when absent
    std::vector<Algorithm> algorithms{Algorithm::cdf, Algorithm::pf, Algorithm::ea};
    AlgoParams params;
    RoiPolicy roi_policy;
    OutputFormat format = OutputFormat::csv;
    int threads = 0;
};

/// Dense efficiency sweep over d_max in [0, 0.3], step 0.005.
int cmd_curve(const CurveOptions& opt, std::ostream& out, std::ostream& err);

struct SynthOptions {
    std::filesystem::path out_dir;
    int count = 10;
    SynthEyeSpec spec;        // tile recipe; the centre fields are overridden
    std::uint64_t seed = 1;   // base seed, mixed with each file name
    int eye_distance = 0;     // 0 = 2.5x the tile size
};

/// Writes count synth_NNNN.pgm / synth_NNNN.eye pairs of two-eye canvases.
int cmd_synth(const SynthOptions& opt, std::ostream& out, std::ostream& err);

}  // namespace pupil

#endif
