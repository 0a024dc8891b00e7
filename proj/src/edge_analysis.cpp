#include "pupil/edge_analysis.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numeric>

#include "pupil/kernels.hpp"

namespace pupil {

long long EdgeMap::count() const {
    return std::count_if(bits.begin(), bits.end(), [](std::uint8_t b) { return b != 0; });
}

void EaParams::validate() const {
    if (!(sigma > 0.0))
        throw Error(ErrorCode::InvalidArgument, "sigma must be positive");
    if (!(low_factor > 0.0 && low_factor < high_factor))
        throw Error(ErrorCode::InvalidArgument, "need 0 < low_factor < high_factor");
    if (min_separation_base < 1)
        throw Error(ErrorCode::InvalidArgument, "min_separation_base must be >= 1");
    if (!(min_separation_fraction > 0.0 && min_separation_fraction < 1.0))
        throw Error(ErrorCode::InvalidArgument, "min_separation_fraction must be in (0, 1)");
}

int EaParams::min_separation(int length) const {
    return std::max(min_separation_base,
                    static_cast<int>(std::lround(min_separation_fraction * length)));
}

namespace {

// Gradient direction quantized to four sectors; returns the two neighbour
// offsets along the gradient (positive direction first). y grows downward.
struct NeighbourPair {
    int dx, dy;
};

NeighbourPair gradient_neighbour(double gx, double gy) {
    double angle = std::atan2(gy, gx) * 180.0 / 3.14159265358979323846;
    if (angle < 0.0)
        angle += 180.0;  // direction is modulo 180 for suppression purposes
    if (angle < 22.5 || angle >= 157.5)
        return {1, 0};  // 0 deg: E-W
    if (angle < 67.5)
        return {1, 1};  // 45 deg: down-right / up-left
    if (angle < 112.5)
        return {0, 1};  // 90 deg: N-S
    return {-1, 1};     // 135 deg: down-left / up-right
}

}  // namespace

EdgeMap canny(const GrayImage& img, const Region& roi, const EaParams& params) {
    params.validate();
    if (!roi.inside(img))
        throw Error(ErrorCode::EmptyRegion, "ROI is empty or outside the image");
    if (roi.width < 5 || roi.height < 5)
        throw Error(ErrorCode::RegionTooSmall, "Canny needs a ROI of at least 5x5 pixels");

    const int w = roi.width;
    const int h = roi.height;
    // The blur stays in floating point so that the threshold comparison
    // scales exactly with the input intensities.
    std::vector<double> blurred = gaussian_blur_region(img, roi, params.sigma);
    auto b = [&](int x, int y) { return blurred[static_cast<std::size_t>(y) * w + x]; };

    const double mean =
        std::accumulate(blurred.begin(), blurred.end(), 0.0) / static_cast<double>(w * h);
    const double low = params.low_factor * mean;
    const double high = params.high_factor * mean;

    // Sobel gradients on interior pixels; the one-pixel border keeps zero
    // magnitude and never becomes an edge.
    std::vector<double> mag(static_cast<std::size_t>(w) * h, 0.0);
    std::vector<double> gxv(static_cast<std::size_t>(w) * h, 0.0);
    std::vector<double> gyv(static_cast<std::size_t>(w) * h, 0.0);
    for (int y = 1; y < h - 1; ++y) {
        for (int x = 1; x < w - 1; ++x) {
            double gx = (b(x + 1, y - 1) + 2.0 * b(x + 1, y) + b(x + 1, y + 1)) -
                        (b(x - 1, y - 1) + 2.0 * b(x - 1, y) + b(x - 1, y + 1));
            double gy = (b(x - 1, y + 1) + 2.0 * b(x, y + 1) + b(x + 1, y + 1)) -
                        (b(x - 1, y - 1) + 2.0 * b(x, y - 1) + b(x + 1, y - 1));
            std::size_t idx = static_cast<std::size_t>(y) * w + x;
            gxv[idx] = gx;
            gyv[idx] = gy;
            mag[idx] = std::sqrt(gx * gx + gy * gy);
        }
    }

    // Non-maximum suppression. On an exact two-pixel tie the comparison is
    // strict against the negative-direction neighbour, so one pixel survives.
    std::vector<std::uint8_t> ridge(static_cast<std::size_t>(w) * h, 0);
    for (int y = 1; y < h - 1; ++y) {
        for (int x = 1; x < w - 1; ++x) {
            std::size_t idx = static_cast<std::size_t>(y) * w + x;
            double m = mag[idx];
            if (m <= 0.0)
                continue;
            NeighbourPair nb = gradient_neighbour(gxv[idx], gyv[idx]);
            double pos = mag[static_cast<std::size_t>(y + nb.dy) * w + (x + nb.dx)];
            double neg = mag[static_cast<std::size_t>(y - nb.dy) * w + (x - nb.dx)];
            if (m >= pos && m > neg)
                ridge[idx] = 1;
        }
    }

    // Hysteresis: strong pixels seed a flood over weak ones (8-connected).
    EdgeMap out;
    out.width = w;
    out.height = h;
    out.bits.assign(static_cast<std::size_t>(w) * h, 0);
    std::deque<PixelPos> queue;
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) {
            std::size_t idx = static_cast<std::size_t>(y) * w + x;
            if (ridge[idx] && mag[idx] >= high) {
                out.bits[idx] = 1;
                queue.push_back({x, y});
            }
        }
    while (!queue.empty()) {
        PixelPos p = queue.front();
        queue.pop_front();
        for (int dy = -1; dy <= 1; ++dy)
            for (int dx = -1; dx <= 1; ++dx) {
                int nx = p.x + dx;
                int ny = p.y + dy;
                if (nx < 0 || nx >= w || ny < 0 || ny >= h)
                    continue;
                std::size_t idx = static_cast<std::size_t>(ny) * w + nx;
                if (out.bits[idx] || !ridge[idx] || mag[idx] < low)
                    continue;
                out.bits[idx] = 1;
                queue.push_back({nx, ny});
            }
    }
    return out;
}

std::pair<std::vector<int>, std::vector<int>> line_votes(const EdgeMap& edges) {
    std::vector<int> columns(static_cast<std::size_t>(edges.width), 0);
    std::vector<int> rows(static_cast<std::size_t>(edges.height), 0);
    for (int y = 0; y < edges.height; ++y)
        for (int x = 0; x < edges.width; ++x)
            if (edges.at(x, y)) {
                ++columns[static_cast<std::size_t>(x)];
                ++rows[static_cast<std::size_t>(y)];
            }
    return {std::move(columns), std::move(rows)};
}

std::pair<int, int> select_boundary_lines(const std::vector<int>& counts, int min_separation) {
    const int n = static_cast<int>(counts.size());
    if (n <= min_separation)
        throw Error(ErrorCode::InvalidArgument, "vote array shorter than the separation");

    int first = -1;
    for (int i = 0; i < n; ++i)
        if (counts[static_cast<std::size_t>(i)] > 0 &&
            (first < 0 || counts[static_cast<std::size_t>(i)] >
                              counts[static_cast<std::size_t>(first)]))
            first = i;
    if (first < 0)
        throw Error(ErrorCode::NoVotes, "no edge pixels to vote on");

    int second = -1;
    for (int i = 0; i < n; ++i) {
        if (std::abs(i - first) < min_separation)
            continue;
        if (counts[static_cast<std::size_t>(i)] > 0 &&
            (second < 0 ||
             counts[static_cast<std::size_t>(i)] > counts[static_cast<std::size_t>(second)]))
            second = i;
    }
    if (second < 0)
        throw Error(ErrorCode::NoSecondLine,
                    "no supported line at the required separation from the first");
    return {std::min(first, second), std::max(first, second)};
}

PupilEstimate locate_pupil_ea(const GrayImage& img, const Region& roi,
                              const EaParams& params) {
    params.validate();
    if (!roi.inside(img))
        throw Error(ErrorCode::EmptyRegion, "ROI is empty or outside the image");
    if (roi.width < 10 || roi.height < 10)
        throw Error(ErrorCode::RegionTooSmall, "edge analysis needs a ROI of at least 10x10");

    EdgeMap edges = canny(img, roi, params);
    auto [columns, rows] = line_votes(edges);
    auto [xl, xr] = select_boundary_lines(columns, params.min_separation(roi.width));
    auto [yt, yb] = select_boundary_lines(rows, params.min_separation(roi.height));
    return PupilEstimate{roi.x0 + (xl + xr) / 2.0, roi.y0 + (yt + yb) / 2.0};
}

GrayImage edge_map_to_image(const EdgeMap& edges) {
    GrayImage out(edges.width, edges.height, 0);
    for (int y = 0; y < edges.height; ++y)
        for (int x = 0; x < edges.width; ++x)
            if (edges.at(x, y))
                out.at(x, y) = 255;
    return out;
}

}  // namespace pupil
