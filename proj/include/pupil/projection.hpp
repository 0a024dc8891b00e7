#ifndef PUPIL_PROJECTION_HPP
#define PUPIL_PROJECTION_HPP

#include <vector>

#include "pupil/image.hpp"

namespace pupil {

enum class Axis {
    vertical,    // one value per ROI column (intensities collapsed along y)
    horizontal,  // one value per ROI row (intensities collapsed along x)
};

struct ProjectionCurve {
    Axis axis = Axis::vertical;
    std::vector<double> values;
};

struct PfParams {
    /// Blend weight between the integral and variance projections; 0 keeps
    /// the plain integral projection.
    double alpha = 0.0;
    /// The derivative threshold is this fraction of the peak |derivative|.
    double threshold_factor = 0.5;
    /// Box-smoothing width applied to the curve before differencing (odd).
    int smooth_width = 3;

    void validate() const;
};

/// Blended projection curve: integral and variance projections are each
/// min-max normalized to [0, 1] over the ROI, then mixed as
/// (1 - alpha) * integral + alpha * variance. A constant curve normalizes to
/// all zeros and is returned as-is; rejecting it is the caller's job.
ProjectionCurve projection(const GrayImage& img, const Region& roi, Axis axis, double alpha);

/// Positions of rapid curve change: smooth, take central differences
/// (one-sided at the ends), keep |derivative| strictly above
/// threshold_factor * max, and merge consecutive survivors into runs.
/// Returns each run's centroid in ascending order.
std::vector<double> boundary_points(const ProjectionCurve& curve, const PfParams& params);

/// Box filter of odd width; windows shrink at the ends of the array.
std::vector<double> box_smooth(const std::vector<double>& values, int width);

/// Midpoint of the two boundary clusters flanking the curve minimum on one
/// axis, in ROI-local coordinates.
double axis_midpoint(const GrayImage& img, const Region& roi, Axis axis,
                     const PfParams& params);

/// Two-axis projection locator: the estimate is the midpoint of the valley-
/// flanking boundary pair on each axis, in image coordinates.
PupilEstimate locate_pupil_pf(const GrayImage& img, const Region& roi,
                              const PfParams& params = {});

}  // namespace pupil

#endif
