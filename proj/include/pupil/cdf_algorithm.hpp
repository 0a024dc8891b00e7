#ifndef PUPIL_CDF_ALGORITHM_HPP
#define PUPIL_CDF_ALGORITHM_HPP

#include "pupil/image.hpp"

namespace pupil {

/// Tuning knobs for the CDF-threshold locator. The defaults are the working
/// values: darkest 5% quantile, erosion radius 2, a 10x10 window for the
/// average-intensity threshold and a 15x15 window for the final centroid.
struct CdfParams {
    double quantile = 0.05;
    int min_filter_radius = 2;
    int ai_window = 10;
    int refine_window = 15;

    void validate() const;
};

/// Marks the darkest quantile of the ROI: output pixel is 255 iff the ROI's
/// CDF at its intensity is strictly below `quantile`, else 0. Pixels outside
/// the ROI are carried over unchanged.
GrayImage cdf_binarize(const GrayImage& img, const Region& roi, double quantile);

/// Darkest original-image pixel among the white (255) mask pixels in the ROI.
/// Ties go to row-major order: smallest y, then smallest x.
PixelPos find_pmi(const GrayImage& img, const GrayImage& mask, const Region& roi);

/// Full pipeline: binarize, erode, pick the darkest survivor, then refine to
/// the centroid of below-average pixels in a window around it.
PupilEstimate locate_pupil_cdf(const GrayImage& img, const Region& roi,
                               const CdfParams& params = {});

}  // namespace pupil

#endif
