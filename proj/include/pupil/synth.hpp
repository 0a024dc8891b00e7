#ifndef PUPIL_SYNTH_HPP
#define PUPIL_SYNTH_HPP

#include <cstdint>
#include <utility>

#include "pupil/image.hpp"

namespace pupil {

/// Recipe for a rendered eye tile with known centre: bright background,
/// anti-aliased iris disk, darker pupil disk, optional eyelid band covering
/// the top of the iris, and seeded Gaussian noise.
struct SynthEyeSpec {
    int roi_size = 31;
    double center_x = 15.0;
    double center_y = 15.0;
    double iris_radius = 7.0;
    double pupil_radius = 3.0;
    int background = 200;
    int iris_intensity = 60;
    int pupil_intensity = 20;
    double eyelid_coverage = 0.0;  // fraction of the iris height hidden from the top
    double noise_sigma = 0.0;
    std::uint32_t seed = 1;

    void validate() const;
};

struct SynthEye {
    GrayImage image;
    PupilEstimate center;  // the exact centre that was rendered
};

SynthEye synth_eye(const SynthEyeSpec& spec);

/// Renders one eye (no noise) into `canvas` so the rendered centre lands on
/// (cx, cy). The tile's background matches the canvas fill, so seams vanish.
void stamp_eye(GrayImage& canvas, const SynthEyeSpec& spec, int cx, int cy);

/// Seeded additive Gaussian noise over the whole image, clipped to [0, 255].
void add_gaussian_noise(GrayImage& img, double sigma, std::uint32_t seed);

}  // namespace pupil

#endif
