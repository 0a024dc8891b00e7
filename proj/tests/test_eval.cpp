#include <cmath>
#include <doctest.h>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "helpers.hpp"
#include "pupil/eval.hpp"
#include "pupil/pgm.hpp"
#include "pupil/rng.hpp"
#include "pupil/synth.hpp"

using namespace pupil;
using pupil_tests::thrown_code;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    TempDir(const char* tag) {
        path = fs::temp_directory_path() / (std::string("pupil_eval_") + tag);
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    std::string file(const std::string& name) const { return (path / name).string(); }
};

// Two-eye canvas with exact integer centres, suitable for benchmark runs.
struct TinyDataset {
    GrayImage image;
    EyeAnnotation truth;
};

TinyDataset make_canvas(std::uint32_t noise_seed, double noise_sigma) {
    SynthEyeSpec spec;
    spec.roi_size = 33;
    spec.iris_radius = 9.0;
    spec.pupil_radius = 4.0;
    GrayImage canvas(160, 80, static_cast<std::uint8_t>(spec.background));
    stamp_eye(canvas, spec, 40, 40);
    stamp_eye(canvas, spec, 120, 40);
    if (noise_sigma > 0.0)
        add_gaussian_noise(canvas, noise_sigma, noise_seed);
    return TinyDataset{std::move(canvas), EyeAnnotation{{40, 40}, {120, 40}}};
}

std::vector<DatasetEntry> make_dataset(int n) {
    std::vector<DatasetEntry> out;
    for (int i = 0; i < n; ++i) {
        TinyDataset t = make_canvas(static_cast<std::uint32_t>(100 + i), 2.0);
        out.push_back(DatasetEntry{"img_" + std::to_string(i), std::move(t.image), t.truth});
    }
    return out;
}

bool same_records(const std::vector<EvalRecord>& a, const std::vector<EvalRecord>& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i].image_id != b[i].image_id) return false;
        if (a[i].algorithm != b[i].algorithm) return false;
        if (a[i].status != b[i].status) return false;
        if (a[i].d.has_value() != b[i].d.has_value()) return false;
        if (a[i].d && *a[i].d != *b[i].d) return false;
        if (a[i].predicted_left.has_value() != b[i].predicted_left.has_value()) return false;
        if (a[i].predicted_left &&
            (a[i].predicted_left->x != b[i].predicted_left->x ||
             a[i].predicted_left->y != b[i].predicted_left->y))
            return false;
        if (a[i].predicted_right.has_value() != b[i].predicted_right.has_value()) return false;
        if (a[i].predicted_right &&
            (a[i].predicted_right->x != b[i].predicted_right->x ||
             a[i].predicted_right->y != b[i].predicted_right->y))
            return false;
    }
    return true;
}

}  // namespace

TEST_CASE("detection_error basics") {
    EyeAnnotation truth{{100, 100}, {200, 100}};
    CHECK(detection_error(truth, {100.0, 100.0}, {200.0, 100.0}) == 0.0);

    // Interocular distance is 100; a single 10 px miss costs exactly 0.1.
    CHECK(detection_error(truth, {100.0, 110.0}, {200.0, 100.0}) == doctest::Approx(0.1).epsilon(1e-12));

    // The smaller error never dominates.
    CHECK(detection_error(truth, {103.0, 100.0}, {200.0, 108.0}) ==
          doctest::Approx(0.08).epsilon(1e-12));
}

TEST_CASE("detection_error ignores the left/right labeling of predictions") {
    EyeAnnotation truth{{60, 80}, {160, 90}};
    PupilEstimate a{62.0, 79.0};
    PupilEstimate b{158.0, 93.0};
    CHECK(detection_error(truth, a, b) == detection_error(truth, b, a));
}

TEST_CASE("detection_error is invariant under similarity transforms") {
    Rng rng(901);
    for (int trial = 0; trial < 50; ++trial) {
        EyeAnnotation truth{{rng.uniform_int(0, 100), rng.uniform_int(0, 100)},
                            {rng.uniform_int(150, 300), rng.uniform_int(0, 100)}};
        PupilEstimate pl{truth.left.x + rng.uniform(-9.0, 9.0),
                         truth.left.y + rng.uniform(-9.0, 9.0)};
        PupilEstimate pr{truth.right.x + rng.uniform(-9.0, 9.0),
                         truth.right.y + rng.uniform(-9.0, 9.0)};
        double base = detection_error(truth, pl, pr);

        double theta = rng.uniform(0.0, 6.28318);
        double s = rng.uniform(0.5, 3.0);
        double tx = rng.uniform(-50.0, 50.0), ty = rng.uniform(-50.0, 50.0);
        auto map = [&](double x, double y) {
            return PupilEstimate{s * (x * std::cos(theta) - y * std::sin(theta)) + tx,
                                 s * (x * std::sin(theta) + y * std::cos(theta)) + ty};
        };
        PupilEstimate tl = map(truth.left.x, truth.left.y);
        PupilEstimate tr = map(truth.right.x, truth.right.y);
        EyeAnnotation mapped{
            {static_cast<int>(std::lround(tl.x)), static_cast<int>(std::lround(tl.y))},
            {static_cast<int>(std::lround(tr.x)), static_cast<int>(std::lround(tr.y))}};
        // Keep the transformed truth exact: build it from doubles instead.
        // detection_error takes integer truth, so compare via a pure-double
        // recomputation of the same formula on the transformed points.
        PupilEstimate ml = map(pl.x, pl.y);
        PupilEstimate mr = map(pr.x, pr.y);
        double inter = std::hypot(tl.x - tr.x, tl.y - tr.y);
        double ll = std::hypot(tl.x - ml.x, tl.y - ml.y);
        double rr = std::hypot(tr.x - mr.x, tr.y - mr.y);
        double lr = std::hypot(tl.x - mr.x, tl.y - mr.y);
        double rl = std::hypot(tr.x - ml.x, tr.y - ml.y);
        double mapped_err =
            (ll + rr <= lr + rl ? std::max(ll, rr) : std::max(lr, rl)) / inter;
        CHECK(base == doctest::Approx(mapped_err).epsilon(1e-9));
        (void)mapped;
    }
}

TEST_CASE("detection_error rejects coincident truth") {
    EyeAnnotation truth{{50, 50}, {50, 50}};
    CHECK(thrown_code([&] { detection_error(truth, {0, 0}, {1, 1}); }) ==
          ErrorCode::DegenerateTruth);
}

TEST_CASE("eye file round-trip") {
    TempDir dir("eye");
    EyeAnnotation ann{{37, 58}, {141, 60}};
    write_eye_file(dir.file("a.eye"), ann);
    EyeAnnotation back = read_eye_file(dir.file("a.eye"), 200, 200);
    CHECK(back.left == ann.left);
    CHECK(back.right == ann.right);
}

TEST_CASE("eye file malformed inputs") {
    TempDir dir("eyebad");
    auto expect_bad = [&](const std::string& name, const std::string& content) {
        std::ofstream(dir.file(name)) << content;
        try {
            read_eye_file(dir.file(name), 100, 100);
            FAIL_CHECK("no exception for ", name);
        } catch (const Error& e) {
            CHECK(e.code() == ErrorCode::MalformedEyeFile);
            CHECK(std::string(e.what()).find(name) != std::string::npos);
        }
    };
    expect_bad("noheader.eye", "10 10 20 20\n");
    expect_bad("short.eye", "#LX LY RX RY\n10 10 20\n");
    expect_bad("trailing.eye", "#LX LY RX RY\n10 10 20 20 junk\n");
    expect_bad("oob.eye", "#LX LY RX RY\n10 10 120 20\n");
    expect_bad("negative.eye", "#LX LY RX RY\n-1 10 20 20\n");
    expect_bad("coincident.eye", "#LX LY RX RY\n15 15 15 15\n");
    CHECK(thrown_code([&] { read_eye_file(dir.file("missing.eye"), 100, 100); }) ==
          ErrorCode::MalformedEyeFile);
}

TEST_CASE("load_bioid pairs and sorts") {
    TempDir dir("ds");
    GrayImage img(64, 48, 130);
    for (const char* stem : {"charlie", "alpha", "bravo"}) {
        write_pgm_file(dir.file(std::string(stem) + ".pgm"), img);
        write_eye_file(dir.file(std::string(stem) + ".eye"), EyeAnnotation{{10, 20}, {50, 20}});
    }
    std::ofstream(dir.file("notes.txt")) << "ignored\n";

    std::vector<DatasetEntry> entries = load_bioid(dir.path.string());
    REQUIRE(entries.size() == 3);
    CHECK(entries[0].id == "alpha");
    CHECK(entries[1].id == "bravo");
    CHECK(entries[2].id == "charlie");
    CHECK(entries[0].image.width() == 64);
    CHECK(entries[0].truth.right == PixelPos{50, 20});
}

TEST_CASE("load_bioid error cases") {
    TempDir dir("dsbad");
    CHECK(load_bioid(dir.path.string()).empty());

    GrayImage img(64, 48, 130);
    write_pgm_file(dir.file("lonely.pgm"), img);
    CHECK(thrown_code([&] { load_bioid(dir.path.string()); }) ==
          ErrorCode::MissingAnnotation);

    CHECK(thrown_code([&] { load_bioid(dir.file("nope")); }) == ErrorCode::IoError);
}

TEST_CASE("derive_roi with zero jitter is a centred square") {
    EyeAnnotation ann{{60, 100}, {160, 100}};
    auto [left, right] = derive_roi(ann, 400, 300, 0.4, 0.0, 1);
    CHECK(left.x0 == 40);
    CHECK(left.y0 == 80);
    CHECK(left.width == 40);
    CHECK(left.height == 40);
    CHECK(right.x0 == 140);
    CHECK(right.y0 == 80);
    CHECK(right.width == 40);
    CHECK(right.height == 40);
}

TEST_CASE("derive_roi jitter stays within its advertised reach") {
    EyeAnnotation ann{{60, 100}, {160, 100}};
    for (std::uint32_t seed = 1; seed <= 200; ++seed) {
        auto [left, right] = derive_roi(ann, 400, 300, 0.4, 0.1, seed);
        // side 40, reach 4: centres move at most 4 px before rounding.
        CHECK(std::abs(left.x0 - 40) <= 4);
        CHECK(std::abs(left.y0 - 80) <= 4);
        CHECK(std::abs(right.x0 - 140) <= 4);
        CHECK(std::abs(right.y0 - 80) <= 4);
        CHECK(left.width == 40);
        CHECK(left.height == 40);

        auto [left2, right2] = derive_roi(ann, 400, 300, 0.4, 0.1, seed);
        CHECK(left2.x0 == left.x0);
        CHECK(left2.y0 == left.y0);
        CHECK(right2.x0 == right.x0);
        CHECK(right2.y0 == right.y0);
    }
}

TEST_CASE("derive_roi clamps to the image and rejects slivers") {
    // Eye close to the border: the square slides inward instead of clipping.
    EyeAnnotation ann{{5, 100}, {105, 100}};
    auto [left, right] = derive_roi(ann, 400, 300, 0.4, 0.0, 1);
    CHECK(left.x0 == 0);
    CHECK(left.width == 40);
    (void)right;

    CHECK(thrown_code([&] { derive_roi(ann, 400, 8, 0.4, 0.0, 1); }) ==
          ErrorCode::RoiOutOfBounds);

    EyeAnnotation degenerate{{50, 50}, {50, 50}};
    CHECK(thrown_code([&] { derive_roi(degenerate, 400, 300, 0.4, 0.0, 1); }) ==
          ErrorCode::DegenerateTruth);
}

TEST_CASE("locate_pupil dispatches to the per-algorithm entry points") {
    SynthEyeSpec spec;
    spec.roi_size = 33;
    spec.center_x = spec.center_y = 16.0;
    spec.iris_radius = 9.0;
    spec.pupil_radius = 4.0;
    SynthEye eye = synth_eye(spec);
    Region roi = Region::full(eye.image);
    AlgoParams params;

    PupilEstimate c = locate_pupil(Algorithm::cdf, eye.image, roi, params);
    PupilEstimate direct_c = locate_pupil_cdf(eye.image, roi, params.cdf);
    CHECK(c.x == direct_c.x);
    CHECK(c.y == direct_c.y);

    PupilEstimate p = locate_pupil(Algorithm::pf, eye.image, roi, params);
    PupilEstimate direct_p = locate_pupil_pf(eye.image, roi, params.pf);
    CHECK(p.x == direct_p.x);
    CHECK(p.y == direct_p.y);

    PupilEstimate e = locate_pupil(Algorithm::ea, eye.image, roi, params);
    PupilEstimate direct_e = locate_pupil_ea(eye.image, roi, params.ea);
    CHECK(e.x == direct_e.x);
    CHECK(e.y == direct_e.y);
}

TEST_CASE("algorithm names round-trip") {
    for (Algorithm a : {Algorithm::cdf, Algorithm::pf, Algorithm::ea})
        CHECK(algorithm_from_name(algorithm_name(a)) == a);
    CHECK(!algorithm_from_name("bogus").has_value());
    CHECK(!algorithm_from_name("").has_value());
}

TEST_CASE("run_benchmark produces image-major records in request order") {
    std::vector<DatasetEntry> dataset = make_dataset(3);
    BenchConfig config;
    config.threads = 1;
    std::vector<EvalRecord> records = run_benchmark(dataset, config);

    REQUIRE(records.size() == 9);
    for (int i = 0; i < 3; ++i) {
        CHECK(records[static_cast<std::size_t>(3 * i + 0)].image_id == dataset[static_cast<std::size_t>(i)].id);
        CHECK(records[static_cast<std::size_t>(3 * i + 0)].algorithm == Algorithm::cdf);
        CHECK(records[static_cast<std::size_t>(3 * i + 1)].algorithm == Algorithm::pf);
        CHECK(records[static_cast<std::size_t>(3 * i + 2)].algorithm == Algorithm::ea);
    }
    for (const EvalRecord& rec : records) {
        CHECK(rec.status == RecordStatus::ok);
        REQUIRE(rec.d.has_value());
        // Interocular distance 80: anything under 4 px of true error passes.
        CHECK(*rec.d < 0.05);
        CHECK(!rec.left_ms.has_value());
        CHECK(!rec.right_ms.has_value());
    }
}

TEST_CASE("run_benchmark is deterministic, also across thread counts") {
    std::vector<DatasetEntry> dataset = make_dataset(4);
    BenchConfig config;
    config.threads = 1;
    std::vector<EvalRecord> once = run_benchmark(dataset, config);
    std::vector<EvalRecord> twice = run_benchmark(dataset, config);
    CHECK(same_records(once, twice));

    config.threads = 3;
    std::vector<EvalRecord> parallel = run_benchmark(dataset, config);
    CHECK(same_records(once, parallel));
}

TEST_CASE("run_benchmark reports failures per record") {
    std::vector<DatasetEntry> dataset = make_dataset(1);
    dataset.push_back(DatasetEntry{"zz_flat", GrayImage(160, 80, 120),
                                   EyeAnnotation{{40, 40}, {120, 40}}});
    BenchConfig config;
    config.threads = 1;
    std::vector<EvalRecord> records = run_benchmark(dataset, config);
    REQUIRE(records.size() == 6);
    for (std::size_t i = 3; i < 6; ++i) {
        CHECK(records[i].image_id == "zz_flat");
        CHECK(records[i].status == RecordStatus::both_failed);
        CHECK(!records[i].d.has_value());
        CHECK(!records[i].predicted_left.has_value());
    }
    for (std::size_t i = 0; i < 3; ++i) CHECK(records[i].status == RecordStatus::ok);
}

TEST_CASE("run_benchmark timing fields appear only on request") {
    std::vector<DatasetEntry> dataset = make_dataset(1);
    BenchConfig config;
    config.threads = 1;
    config.timing = true;
    std::vector<EvalRecord> records = run_benchmark(dataset, config);
    for (const EvalRecord& rec : records) {
        REQUIRE(rec.left_ms.has_value());
        REQUIRE(rec.right_ms.has_value());
        CHECK(*rec.left_ms >= 0.0);
        CHECK(*rec.right_ms >= 0.0);
    }
}

TEST_CASE("default dmax levels") {
    std::vector<double> levels = default_dmax_levels();
    REQUIRE(levels.size() == 6);
    CHECK(levels == std::vector<double>{0.02, 0.05, 0.1, 0.15, 0.2, 0.25});
}

namespace {

EvalRecord ok_record(const std::string& id, Algorithm algo, double d) {
    EvalRecord rec;
    rec.image_id = id;
    rec.algorithm = algo;
    rec.predicted_left = PupilEstimate{0, 0};
    rec.predicted_right = PupilEstimate{1, 1};
    rec.d = d;
    rec.status = RecordStatus::ok;
    return rec;
}

EvalRecord failed_record(const std::string& id, Algorithm algo) {
    EvalRecord rec;
    rec.image_id = id;
    rec.algorithm = algo;
    rec.status = RecordStatus::both_failed;
    return rec;
}

}  // namespace

TEST_CASE("efficiency_table frozen example") {
    std::vector<EvalRecord> records{
        ok_record("a", Algorithm::cdf, 0.01),
        ok_record("b", Algorithm::cdf, 0.12),
        failed_record("c", Algorithm::cdf),
    };
    std::vector<EfficiencyCurve> curves = efficiency_table(records, {0.05, 0.25});
    REQUIRE(curves.size() == 1);
    CHECK(curves[0].algorithm == Algorithm::cdf);
    CHECK(curves[0].evaluated_count == 2);
    REQUIRE(curves[0].points.size() == 2);
    CHECK(curves[0].points[0].first == 0.05);
    CHECK(curves[0].points[0].second == 0.5);
    CHECK(curves[0].points[1].second == 1.0);
}

TEST_CASE("efficiency uses a strict d < d_max comparison") {
    std::vector<EvalRecord> records{ok_record("a", Algorithm::pf, 0.05)};
    std::vector<EfficiencyCurve> curves = efficiency_table(records, {0.05});
    CHECK(curves[0].points[0].second == 0.0);
}

TEST_CASE("efficiency_table matches a brute-force recount") {
    Rng rng(902);
    for (int trial = 0; trial < 30; ++trial) {
        std::vector<EvalRecord> records;
        int n = rng.uniform_int(4, 40);
        for (int i = 0; i < n; ++i) {
            Algorithm algo = static_cast<Algorithm>(rng.uniform_int(0, 2));
            if (rng.unit() < 0.2)
                records.push_back(failed_record("r" + std::to_string(i), algo));
            else
                records.push_back(
                    ok_record("r" + std::to_string(i), algo, rng.uniform(0.0, 0.4)));
        }
        std::vector<double> levels{0.02, 0.1, 0.3};
        std::vector<EfficiencyCurve> curves;
        try {
            curves = efficiency_table(records, levels);
        } catch (const Error& e) {
            REQUIRE(e.code() == ErrorCode::NoEvaluatedRecords);
            continue;
        }
        for (const EfficiencyCurve& curve : curves) {
            long long total = 0;
            std::vector<long long> hits(levels.size(), 0);
            for (const EvalRecord& rec : records) {
                if (rec.algorithm != curve.algorithm || rec.status != RecordStatus::ok)
                    continue;
                ++total;
                for (std::size_t k = 0; k < levels.size(); ++k)
                    if (*rec.d < levels[k]) ++hits[k];
            }
            REQUIRE(curve.evaluated_count == total);
            for (std::size_t k = 0; k < levels.size(); ++k) {
                REQUIRE(curve.points[k].second ==
                        static_cast<double>(hits[k]) / static_cast<double>(total));
                if (k > 0) REQUIRE(curve.points[k].second >= curve.points[k - 1].second);
            }
        }
    }
}

TEST_CASE("efficiency_table preserves first-appearance order") {
    std::vector<EvalRecord> records{
        ok_record("a", Algorithm::ea, 0.1),
        ok_record("a", Algorithm::cdf, 0.1),
        ok_record("b", Algorithm::ea, 0.2),
    };
    std::vector<EfficiencyCurve> curves = efficiency_table(records, {0.25});
    REQUIRE(curves.size() == 2);
    CHECK(curves[0].algorithm == Algorithm::ea);
    CHECK(curves[1].algorithm == Algorithm::cdf);
}

TEST_CASE("efficiency_table error cases") {
    std::vector<EvalRecord> records{ok_record("a", Algorithm::cdf, 0.1)};
    CHECK(thrown_code([&] { efficiency_table(records, {}); }) == ErrorCode::InvalidArgument);
    CHECK(thrown_code([&] { efficiency_table(records, {0.2, 0.1}); }) ==
          ErrorCode::InvalidArgument);

    std::vector<EvalRecord> all_failed{failed_record("a", Algorithm::ea)};
    CHECK(thrown_code([&] { efficiency_table(all_failed, {0.1}); }) ==
          ErrorCode::NoEvaluatedRecords);
}
