#include "pupil/synth.hpp"

#include <algorithm>
#include <cmath>

#include "pupil/rng.hpp"

namespace pupil {

void SynthEyeSpec::validate() const {
    if (roi_size < 5)
        throw Error(ErrorCode::InvalidSpec, "roi_size must be at least 5");
    if (!(pupil_radius > 0.0 && pupil_radius < iris_radius))
        throw Error(ErrorCode::InvalidSpec, "need 0 < pupil_radius < iris_radius");
    if (!(iris_radius < roi_size / 2.0))
        throw Error(ErrorCode::InvalidSpec, "iris_radius must be below roi_size / 2");
    if (!(pupil_intensity < iris_intensity && iris_intensity < background))
        throw Error(ErrorCode::InvalidSpec, "need pupil < iris < background intensity");
    if (background < 0 || background > 255 || pupil_intensity < 0)
        throw Error(ErrorCode::InvalidSpec, "intensities must lie in [0, 255]");
    if (!(eyelid_coverage >= 0.0 && eyelid_coverage <= 0.4))
        throw Error(ErrorCode::InvalidSpec, "eyelid_coverage must be in [0, 0.4]");
    if (noise_sigma < 0.0)
        throw Error(ErrorCode::InvalidSpec, "noise_sigma must be non-negative");
}

namespace {

// Disk coverage with a half-pixel anti-aliasing ramp.
double disk_alpha(double dist, double radius) {
    return std::clamp(radius + 0.5 - dist, 0.0, 1.0);
}

}  // namespace

void add_gaussian_noise(GrayImage& img, double sigma, std::uint32_t seed) {
    if (sigma <= 0.0)
        return;
    Rng rng(seed);
    for (int y = 0; y < img.height(); ++y)
        for (int x = 0; x < img.width(); ++x) {
            double v = img.at(x, y) + sigma * rng.gaussian();
            img.at(x, y) = static_cast<std::uint8_t>(std::clamp(std::lround(v), 0L, 255L));
        }
}

void stamp_eye(GrayImage& canvas, const SynthEyeSpec& spec, int cx, int cy) {
    spec.validate();

    // The fractional part of the configured centre carries over, so the
    // rendered centre is exactly (cx + frac_x, cy + frac_y).
    const double ccx = cx + (spec.center_x - std::lround(spec.center_x));
    const double ccy = cy + (spec.center_y - std::lround(spec.center_y));

    const double iris_top = ccy - spec.iris_radius;
    const double lid_y = iris_top + spec.eyelid_coverage * 2.0 * spec.iris_radius;

    const int reach = static_cast<int>(std::ceil(spec.iris_radius)) + 2;
    const int x_lo = std::max(cx - reach, 0);
    const int x_hi = std::min(cx + reach, canvas.width() - 1);
    const int y_lo = std::max(cy - reach, 0);
    const int y_hi = std::min(cy + reach, canvas.height() - 1);

    for (int y = y_lo; y <= y_hi; ++y) {
        for (int x = x_lo; x <= x_hi; ++x) {
            if (spec.eyelid_coverage > 0.0 && y < lid_y)
                continue;  // lid hides the top of the iris; canvas stays background
            double dist = std::hypot(x - ccx, y - ccy);
            double v = spec.background;
            double a_iris = disk_alpha(dist, spec.iris_radius);
            v = v * (1.0 - a_iris) + spec.iris_intensity * a_iris;
            double a_pupil = disk_alpha(dist, spec.pupil_radius);
            v = v * (1.0 - a_pupil) + spec.pupil_intensity * a_pupil;
            canvas.at(x, y) =
                static_cast<std::uint8_t>(std::clamp(std::lround(v), 0L, 255L));
        }
    }
}

SynthEye synth_eye(const SynthEyeSpec& spec) {
    spec.validate();
    GrayImage img(spec.roi_size, spec.roi_size, static_cast<std::uint8_t>(spec.background));
    stamp_eye(img, spec, static_cast<int>(std::lround(spec.center_x)),
              static_cast<int>(std::lround(spec.center_y)));
    add_gaussian_noise(img, spec.noise_sigma, spec.seed);
    return SynthEye{std::move(img), PupilEstimate{spec.center_x, spec.center_y}};
}

}  // namespace pupil
