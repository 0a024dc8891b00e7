#ifndef PUPIL_EDGE_ANALYSIS_HPP
#define PUPIL_EDGE_ANALYSIS_HPP

#include <cstdint>
#include <utility>
#include <vector>

#include "pupil/image.hpp"

namespace pupil {

/// Binary edge mask with the dimensions of the source ROI.
struct EdgeMap {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> bits;  // 1 = edge pixel

    bool at(int x, int y) const {
        return bits[static_cast<std::size_t>(y) * width + x] != 0;
    }
    long long count() const;
};

struct EaParams {
    double sigma = 1.0;
    /// Hysteresis thresholds as multiples of the blurred ROI's mean
    /// luminosity: weak edges at low_factor * mean, strong at high_factor * mean.
    double low_factor = 1.5;
    double high_factor = 2.0;
    /// Boundary lines must be at least this many pixels apart; the base value
    /// holds for ~30 px regions and scales up with the fraction below.
    int min_separation_base = 7;
    double min_separation_fraction = 0.23;

    void validate() const;
    int min_separation(int length) const;
};

/// Canny edge detection: Gaussian blur, Sobel gradients, 4-direction
/// non-maximum suppression, then hysteresis with thresholds proportional to
/// the blurred ROI's mean intensity (8-connected linking).
EdgeMap canny(const GrayImage& img, const Region& roi, const EaParams& params = {});

/// Per-column and per-row edge pixel counts.
std::pair<std::vector<int>, std::vector<int>> line_votes(const EdgeMap& edges);

/// The two best-supported lines: the overall vote argmax, and the argmax over
/// positions at least min_separation away from it. Ties go to the smallest
/// index; the pair is returned in ascending order.
std::pair<int, int> select_boundary_lines(const std::vector<int>& counts, int min_separation);

/// Edge locator: boundary line pairs on both axes, estimate at their
/// midpoints, in image coordinates.
PupilEstimate locate_pupil_ea(const GrayImage& img, const Region& roi,
                              const EaParams& params = {});

/// 0/255 rendering of an edge map, for PGM debug dumps.
GrayImage edge_map_to_image(const EdgeMap& edges);

}  // namespace pupil

#endif
