#include "pupil/projection.hpp"

#include <algorithm>
#include <cmath>

namespace pupil {

void PfParams::validate() const {
    if (!(alpha >= 0.0 && alpha <= 1.0))
        throw Error(ErrorCode::InvalidArgument, "alpha must be in [0, 1]");
    if (!(threshold_factor > 0.0 && threshold_factor < 1.0))
        throw Error(ErrorCode::InvalidArgument, "threshold_factor must be in (0, 1)");
    if (smooth_width < 1 || smooth_width % 2 == 0)
        throw Error(ErrorCode::InvalidArgument, "smooth_width must be odd and >= 1");
}

namespace {

// Min-max normalization to [0, 1]; a constant vector maps to all zeros.
void normalize(std::vector<double>& v) {
    auto [lo_it, hi_it] = std::minmax_element(v.begin(), v.end());
    const double lo = *lo_it;
    const double span = *hi_it - lo;
    if (span <= 0.0) {
        std::fill(v.begin(), v.end(), 0.0);
        return;
    }
    for (double& x : v)
        x = (x - lo) / span;
}

}  // namespace

ProjectionCurve projection(const GrayImage& img, const Region& roi, Axis axis, double alpha) {
    if (!roi.inside(img))
        throw Error(ErrorCode::EmptyRegion, "ROI is empty or outside the image");
    if (!(alpha >= 0.0 && alpha <= 1.0))
        throw Error(ErrorCode::InvalidArgument, "alpha must be in [0, 1]");

    const bool vertical = axis == Axis::vertical;
    const int length = vertical ? roi.width : roi.height;
    const int depth = vertical ? roi.height : roi.width;

    std::vector<double> ipf(static_cast<std::size_t>(length));
    std::vector<double> vpf(static_cast<std::size_t>(length));
    for (int i = 0; i < length; ++i) {
        long long sum = 0;
        for (int j = 0; j < depth; ++j) {
            int x = vertical ? roi.x0 + i : roi.x0 + j;
            int y = vertical ? roi.y0 + j : roi.y0 + i;
            sum += img.at(x, y);
        }
        double mean = static_cast<double>(sum) / depth;
        ipf[static_cast<std::size_t>(i)] = mean;

        double sq = 0.0;
        for (int j = 0; j < depth; ++j) {
            int x = vertical ? roi.x0 + i : roi.x0 + j;
            int y = vertical ? roi.y0 + j : roi.y0 + i;
            double dev = img.at(x, y) - mean;
            sq += dev * dev;
        }
        vpf[static_cast<std::size_t>(i)] = sq / depth;
    }

    normalize(ipf);
    normalize(vpf);

    ProjectionCurve curve;
    curve.axis = axis;
    curve.values.resize(static_cast<std::size_t>(length));
    for (int i = 0; i < length; ++i)
        curve.values[static_cast<std::size_t>(i)] =
            (1.0 - alpha) * ipf[static_cast<std::size_t>(i)] +
            alpha * vpf[static_cast<std::size_t>(i)];
    return curve;
}

std::vector<double> box_smooth(const std::vector<double>& values, int width) {
    if (width < 1 || width % 2 == 0)
        throw Error(ErrorCode::InvalidArgument, "smooth width must be odd and >= 1");
    if (width == 1)
        return values;
    const int n = static_cast<int>(values.size());
    const int half = width / 2;
    std::vector<double> out(values.size());
    for (int i = 0; i < n; ++i) {
        int lo = std::max(i - half, 0);
        int hi = std::min(i + half, n - 1);
        double acc = 0.0;
        for (int j = lo; j <= hi; ++j)
            acc += values[static_cast<std::size_t>(j)];
        out[static_cast<std::size_t>(i)] = acc / (hi - lo + 1);
    }
    return out;
}

namespace {

std::vector<double> central_differences(const std::vector<double>& v) {
    const int n = static_cast<int>(v.size());
    std::vector<double> d(v.size());
    d[0] = v[1] - v[0];
    d[static_cast<std::size_t>(n - 1)] =
        v[static_cast<std::size_t>(n - 1)] - v[static_cast<std::size_t>(n - 2)];
    for (int i = 1; i < n - 1; ++i)
        d[static_cast<std::size_t>(i)] =
            (v[static_cast<std::size_t>(i + 1)] - v[static_cast<std::size_t>(i - 1)]) / 2.0;
    return d;
}

}  // namespace

std::vector<double> boundary_points(const ProjectionCurve& curve, const PfParams& params) {
    params.validate();
    if (curve.values.size() < 5)
        throw Error(ErrorCode::InvalidArgument, "projection curve must have at least 5 samples");

    std::vector<double> smoothed = box_smooth(curve.values, params.smooth_width);
    std::vector<double> deriv = central_differences(smoothed);

    double peak = 0.0;
    for (double d : deriv)
        peak = std::max(peak, std::abs(d));
    if (peak <= 0.0)
        throw Error(ErrorCode::NoBoundaries, "projection curve is constant");

    const double threshold = params.threshold_factor * peak;
    std::vector<double> centers;
    int run_start = -1;
    const int n = static_cast<int>(deriv.size());
    for (int i = 0; i <= n; ++i) {
        bool marked = i < n && std::abs(deriv[static_cast<std::size_t>(i)]) > threshold;
        if (marked && run_start < 0) {
            run_start = i;
        } else if (!marked && run_start >= 0) {
            centers.push_back((run_start + i - 1) / 2.0);
            run_start = -1;
        }
    }
    return centers;
}

double axis_midpoint(const GrayImage& img, const Region& roi, Axis axis,
                     const PfParams& params) {
    ProjectionCurve curve = projection(img, roi, axis, params.alpha);
    std::vector<double> clusters = boundary_points(curve, params);

    std::vector<double> smoothed = box_smooth(curve.values, params.smooth_width);
    const int valley = static_cast<int>(
        std::min_element(smoothed.begin(), smoothed.end()) - smoothed.begin());

    // Nearest cluster strictly left and strictly right of the valley.
    double left = -1.0;
    double right = -1.0;
    bool has_left = false;
    bool has_right = false;
    for (double c : clusters) {
        if (c < valley) {
            left = c;  // ascending order: the last one wins
            has_left = true;
        } else if (c > valley && !has_right) {
            right = c;
            has_right = true;
        }
    }
    if (!has_left || !has_right)
        throw Error(ErrorCode::NoFlankingPair,
                    "no boundary cluster on one side of the curve minimum");
    return (left + right) / 2.0;
}

PupilEstimate locate_pupil_pf(const GrayImage& img, const Region& roi,
                              const PfParams& params) {
    params.validate();
    double x = axis_midpoint(img, roi, Axis::vertical, params);
    double y = axis_midpoint(img, roi, Axis::horizontal, params);
    return PupilEstimate{roi.x0 + x, roi.y0 + y};
}

}  // namespace pupil
