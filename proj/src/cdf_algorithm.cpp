#include "pupil/cdf_algorithm.hpp"

#include "pupil/kernels.hpp"

namespace pupil {

void CdfParams::validate() const {
    if (!(quantile > 0.0 && quantile < 1.0))
        throw Error(ErrorCode::InvalidArgument, "quantile must be in (0, 1)");
    if (min_filter_radius < 1)
        throw Error(ErrorCode::InvalidArgument, "min_filter_radius must be >= 1");
    if (ai_window < 1 || refine_window < 1)
        throw Error(ErrorCode::InvalidArgument, "windows must be >= 1");
    if (ai_window > refine_window)
        throw Error(ErrorCode::InvalidArgument, "ai_window must not exceed refine_window");
}

GrayImage cdf_binarize(const GrayImage& img, const Region& roi, double quantile) {
    Cdf256 cdf = histogram_cdf(img, roi);
    GrayImage out = img;
    for (int y = roi.y0; y < roi.y1(); ++y)
        for (int x = roi.x0; x < roi.x1(); ++x)
            out.at(x, y) = cdf[img.at(x, y)] < quantile ? 255 : 0;
    return out;
}

PixelPos find_pmi(const GrayImage& img, const GrayImage& mask, const Region& roi) {
    if (!roi.inside(img) || !roi.inside(mask))
        throw Error(ErrorCode::EmptyRegion, "region is empty or outside the image");
    bool found = false;
    PixelPos best{};
    int best_intensity = 256;
    for (int y = roi.y0; y < roi.y1(); ++y) {
        for (int x = roi.x0; x < roi.x1(); ++x) {
            if (mask.at(x, y) != 255)
                continue;
            int v = img.at(x, y);
            if (v < best_intensity) {  // row-major scan keeps the tie rule
                best_intensity = v;
                best = PixelPos{x, y};
                found = true;
            }
        }
    }
    if (!found)
        throw Error(ErrorCode::NoCandidatePixels, "binarized mask has no white pixels in the ROI");
    return best;
}

PupilEstimate locate_pupil_cdf(const GrayImage& img, const Region& roi,
                               const CdfParams& params) {
    params.validate();
    if (!roi.inside(img))
        throw Error(ErrorCode::EmptyRegion, "ROI is empty or outside the image");

    GrayImage mask = cdf_binarize(img, roi, params.quantile);
    mask = minimum_filter(mask, roi, params.min_filter_radius);
    PixelPos pmi = find_pmi(img, mask, roi);

    Region ai_win = centered_window(pmi.x, pmi.y, params.ai_window, roi);
    double ai = mean_intensity(img, ai_win);

    Region refine_win = centered_window(pmi.x, pmi.y, params.refine_window, roi);
    GrayImage refined = minimum_filter(img, refine_win, params.min_filter_radius);

    long long count = 0;
    double sum_x = 0.0;
    double sum_y = 0.0;
    for (int y = refine_win.y0; y < refine_win.y1(); ++y) {
        for (int x = refine_win.x0; x < refine_win.x1(); ++x) {
            if (refined.at(x, y) < ai) {
                sum_x += x;
                sum_y += y;
                ++count;
            }
        }
    }
    if (count == 0)
        throw Error(ErrorCode::NoDarkPixels,
                    "no pixel in the refinement window falls below the average intensity");
    return PupilEstimate{sum_x / count, sum_y / count};
}

}  // namespace pupil
