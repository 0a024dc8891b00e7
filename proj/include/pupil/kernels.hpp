#ifndef PUPIL_KERNELS_HPP
#define PUPIL_KERNELS_HPP

#include <vector>

#include "pupil/image.hpp"

namespace pupil {

// Shared pixel kernels. All of them operate on a region view of the image and
// leave pixels outside the region untouched in the returned copy.

/// cdf[r] = fraction of region pixels with intensity <= r.
Cdf256 histogram_cdf(const GrayImage& img, const Region& region);

/// Square-window minimum (grayscale erosion) with side 2*radius+1. Windows
/// shrink at the region borders instead of padding.
GrayImage minimum_filter(const GrayImage& img, const Region& region, int radius);

/// Separable Gaussian blur, kernel radius ceil(3*sigma), taps normalized to
/// sum 1, coordinates clamped at the region borders (edge replication).
/// Output is rounded to the nearest integer intensity.
GrayImage gaussian_blur(const GrayImage& img, const Region& region, double sigma);

/// Same blur without the final 8-bit quantization: region-local row-major
/// values. Used where later thresholds must scale exactly with intensity.
std::vector<double> gaussian_blur_region(const GrayImage& img, const Region& region,
                                         double sigma);

/// Normalized 1-D Gaussian taps for offsets -radius..radius, radius = ceil(3*sigma).
std::vector<double> gaussian_kernel(double sigma);

double mean_intensity(const GrayImage& img, const Region& region);

}  // namespace pupil

#endif
