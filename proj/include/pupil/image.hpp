#ifndef PUPIL_IMAGE_HPP
#define PUPIL_IMAGE_HPP

#include <algorithm>
#include <array>
#include <cstdint>
#include <utility>
#include <vector>

#include "pupil/errors.hpp"

namespace pupil {

/// 8-bit single-channel raster. Origin at the top-left corner, x grows
/// rightward (columns), y grows downward (rows); 0 is black, 255 white.
class GrayImage {
public:
    GrayImage(int width, int height, std::uint8_t fill = 0)
        : width_(width), height_(height) {
        if (width <= 0 || height <= 0)
            throw Error(ErrorCode::InvalidArgument, "image dimensions must be positive");
        data_.assign(static_cast<std::size_t>(width) * height, fill);
    }

    GrayImage(int width, int height, std::vector<std::uint8_t> data)
        : width_(width), height_(height), data_(std::move(data)) {
        if (width <= 0 || height <= 0)
            throw Error(ErrorCode::InvalidArgument, "image dimensions must be positive");
        if (data_.size() != static_cast<std::size_t>(width) * height)
            throw Error(ErrorCode::InvalidArgument, "pixel buffer size does not match dimensions");
    }

    int width() const { return width_; }
    int height() const { return height_; }

    std::uint8_t at(int x, int y) const {
        return data_[static_cast<std::size_t>(y) * width_ + x];
    }
    std::uint8_t& at(int x, int y) {
        return data_[static_cast<std::size_t>(y) * width_ + x];
    }

    const std::vector<std::uint8_t>& data() const { return data_; }
    std::vector<std::uint8_t>& data() { return data_; }

    bool contains(int x, int y) const {
        return x >= 0 && x < width_ && y >= 0 && y < height_;
    }

private:
    int width_;
    int height_;
    std::vector<std::uint8_t> data_;
};

/// Integer rectangle selecting a window of a parent image. Factories clamp
/// to the parent bounds; a rectangle that is empty after clamping is an
/// error, so a constructed Region is always non-empty and in-bounds.
struct Region {
    int x0 = 0;
    int y0 = 0;
    int width = 0;
    int height = 0;

    int x1() const { return x0 + width; }   // exclusive
    int y1() const { return y0 + height; }  // exclusive
    long long area() const { return static_cast<long long>(width) * height; }

    bool contains(int x, int y) const {
        return x >= x0 && x < x1() && y >= y0 && y < y1();
    }

    static Region clipped(int x0, int y0, int w, int h, int parentW, int parentH) {
        int cx0 = std::max(x0, 0);
        int cy0 = std::max(y0, 0);
        int cx1 = std::min(x0 + w, parentW);
        int cy1 = std::min(y0 + h, parentH);
        if (cx1 <= cx0 || cy1 <= cy0)
            throw Error(ErrorCode::EmptyRegion, "region is empty after clamping to parent bounds");
        return Region{cx0, cy0, cx1 - cx0, cy1 - cy0};
    }

    static Region clipped(int x0, int y0, int w, int h, const GrayImage& img) {
        return clipped(x0, y0, w, h, img.width(), img.height());
    }

    static Region full(const GrayImage& img) {
        return Region{0, 0, img.width(), img.height()};
    }

    /// Intersection clamped to this region; throws EmptyRegion when disjoint.
    Region intersect(int ox0, int oy0, int ow, int oh) const {
        int cx0 = std::max(ox0, x0);
        int cy0 = std::max(oy0, y0);
        int cx1 = std::min(ox0 + ow, x1());
        int cy1 = std::min(oy0 + oh, y1());
        if (cx1 <= cx0 || cy1 <= cy0)
            throw Error(ErrorCode::EmptyRegion, "regions do not overlap");
        return Region{cx0, cy0, cx1 - cx0, cy1 - cy0};
    }

    bool inside(const GrayImage& img) const {
        return x0 >= 0 && y0 >= 0 && width > 0 && height > 0 &&
               x1() <= img.width() && y1() <= img.height();
    }
};

/// A window of side `side` notionally centred at (cx, cy): it spans offsets
/// [-side/2, side/2) for even sides (e.g. -5..+4 for side 10) and is symmetric
/// for odd sides, then gets clipped to `bounds`.
inline Region centered_window(int cx, int cy, int side, const Region& bounds) {
    int lo = side / 2;
    return bounds.intersect(cx - lo, cy - lo, side, side);
}

struct PixelPos {
    int x = 0;
    int y = 0;
    bool operator==(const PixelPos&) const = default;
};

/// Sub-pixel pupil location in parent-image coordinates.
struct PupilEstimate {
    double x = 0.0;
    double y = 0.0;
};

/// Cumulative distribution of 8-bit intensities: cdf[r] is the fraction of
/// pixels with intensity <= r, so cdf[255] == 1 for any non-empty region.
struct Cdf256 {
    std::array<double, 256> cdf{};

    double operator[](int r) const { return cdf[static_cast<std::size_t>(r)]; }
};

}  // namespace pupil

#endif
