#ifndef PUPIL_TESTS_HELPERS_HPP
#define PUPIL_TESTS_HELPERS_HPP

#include <optional>

#include "pupil/errors.hpp"
#include "pupil/image.hpp"
#include "pupil/rng.hpp"

namespace pupil_tests {

inline pupil::GrayImage random_image(pupil::Rng& rng, int width, int height, int lo = 0,
                                     int hi = 255) {
    pupil::GrayImage img(width, height);
    for (int y = 0; y < height; ++y)
        for (int x = 0; x < width; ++x)
            img.at(x, y) = static_cast<std::uint8_t>(rng.uniform_int(lo, hi));
    return img;
}

/// Runs f and reports the error code it threw, if any.
template <typename F>
std::optional<pupil::ErrorCode> thrown_code(F&& f) {
    try {
        f();
    } catch (const pupil::Error& e) {
        return e.code();
    }
    return std::nullopt;
}

}  // namespace pupil_tests

#endif
