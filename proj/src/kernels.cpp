#include "pupil/kernels.hpp"

#include <cmath>

namespace pupil {

namespace {

void require_inside(const GrayImage& img, const Region& region) {
    if (!region.inside(img))
        throw Error(ErrorCode::EmptyRegion, "region is empty or outside the image");
}

}  // namespace

Cdf256 histogram_cdf(const GrayImage& img, const Region& region) {
    require_inside(img, region);
    std::array<long long, 256> hist{};
    for (int y = region.y0; y < region.y1(); ++y)
        for (int x = region.x0; x < region.x1(); ++x)
            ++hist[img.at(x, y)];

    Cdf256 out;
    const double total = static_cast<double>(region.area());
    long long running = 0;
    for (int r = 0; r < 256; ++r) {
        running += hist[r];
        out.cdf[r] = running / total;
    }
    out.cdf[255] = 1.0;  // exact, independent of rounding in the division
    return out;
}

GrayImage minimum_filter(const GrayImage& img, const Region& region, int radius) {
    require_inside(img, region);
    if (radius < 1)
        throw Error(ErrorCode::InvalidArgument, "minimum filter radius must be >= 1");

    GrayImage out = img;
    // Two passes (rows then columns) give the same square-window minimum as
    // the direct 2-D scan at O(radius) per pixel instead of O(radius^2).
    std::vector<std::uint8_t> rowmin(region.area());
    for (int y = region.y0; y < region.y1(); ++y) {
        for (int x = region.x0; x < region.x1(); ++x) {
            int lo = std::max(x - radius, region.x0);
            int hi = std::min(x + radius, region.x1() - 1);
            std::uint8_t m = 255;
            for (int xx = lo; xx <= hi; ++xx)
                m = std::min(m, img.at(xx, y));
            rowmin[static_cast<std::size_t>(y - region.y0) * region.width + (x - region.x0)] = m;
        }
    }
    for (int y = region.y0; y < region.y1(); ++y) {
        for (int x = region.x0; x < region.x1(); ++x) {
            int lo = std::max(y - radius, region.y0);
            int hi = std::min(y + radius, region.y1() - 1);
            std::uint8_t m = 255;
            for (int yy = lo; yy <= hi; ++yy)
                m = std::min(m, rowmin[static_cast<std::size_t>(yy - region.y0) * region.width +
                                       (x - region.x0)]);
            out.at(x, y) = m;
        }
    }
    return out;
}

std::vector<double> gaussian_kernel(double sigma) {
    if (!(sigma > 0.0))
        throw Error(ErrorCode::InvalidArgument, "sigma must be positive");
    int radius = static_cast<int>(std::ceil(3.0 * sigma));
    std::vector<double> taps(static_cast<std::size_t>(2 * radius + 1));
    double sum = 0.0;
    for (int k = -radius; k <= radius; ++k) {
        double w = std::exp(-(static_cast<double>(k) * k) / (2.0 * sigma * sigma));
        taps[static_cast<std::size_t>(k + radius)] = w;
        sum += w;
    }
    for (double& w : taps)
        w /= sum;
    return taps;
}

std::vector<double> gaussian_blur_region(const GrayImage& img, const Region& region,
                                         double sigma) {
    require_inside(img, region);
    const std::vector<double> taps = gaussian_kernel(sigma);
    const int radius = static_cast<int>(taps.size() / 2);
    const int w = region.width;
    const int h = region.height;

    std::vector<double> horiz(static_cast<std::size_t>(w) * h);
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            double acc = 0.0;
            for (int k = -radius; k <= radius; ++k) {
                int xx = std::clamp(x + k, 0, w - 1);
                acc += taps[static_cast<std::size_t>(k + radius)] *
                       img.at(region.x0 + xx, region.y0 + y);
            }
            horiz[static_cast<std::size_t>(y) * w + x] = acc;
        }
    }

    std::vector<double> out(static_cast<std::size_t>(w) * h);
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            double acc = 0.0;
            for (int k = -radius; k <= radius; ++k) {
                int yy = std::clamp(y + k, 0, h - 1);
                acc += taps[static_cast<std::size_t>(k + radius)] *
                       horiz[static_cast<std::size_t>(yy) * w + x];
            }
            out[static_cast<std::size_t>(y) * w + x] = acc;
        }
    }
    return out;
}

GrayImage gaussian_blur(const GrayImage& img, const Region& region, double sigma) {
    std::vector<double> values = gaussian_blur_region(img, region, sigma);
    GrayImage out = img;
    for (int y = 0; y < region.height; ++y)
        for (int x = 0; x < region.width; ++x) {
            double v = values[static_cast<std::size_t>(y) * region.width + x];
            out.at(region.x0 + x, region.y0 + y) =
                static_cast<std::uint8_t>(std::clamp(std::lround(v), 0L, 255L));
        }
    return out;
}

double mean_intensity(const GrayImage& img, const Region& region) {
    require_inside(img, region);
    long long sum = 0;
    for (int y = region.y0; y < region.y1(); ++y)
        for (int x = region.x0; x < region.x1(); ++x)
            sum += img.at(x, y);
    return static_cast<double>(sum) / static_cast<double>(region.area());
}

}  // namespace pupil
