#include <cstdio>
#include <doctest.h>
#include <filesystem>
#include <sstream>
#include <string>

#include "helpers.hpp"
#include "pupil/pgm.hpp"

using namespace pupil;
using pupil_tests::random_image;
using pupil_tests::thrown_code;

TEST_CASE("pgm round-trip preserves every pixel") {
    Rng rng(606);
    for (int trial = 0; trial < 20; ++trial) {
        GrayImage img = random_image(rng, rng.uniform_int(1, 40), rng.uniform_int(1, 40));
        std::stringstream buf;
        write_pgm(buf, img);
        GrayImage back = read_pgm(buf);
        REQUIRE(back.width() == img.width());
        REQUIRE(back.height() == img.height());
        for (int y = 0; y < img.height(); ++y)
            for (int x = 0; x < img.width(); ++x) REQUIRE(back.at(x, y) == img.at(x, y));
    }
}

TEST_CASE("pgm writer emits the canonical header") {
    GrayImage img(3, 2, 9);
    std::stringstream buf;
    write_pgm(buf, img);
    std::string text = buf.str();
    CHECK(text.substr(0, 11) == "P5\n3 2\n255\n");
    CHECK(text.size() == 11 + 6);
}

TEST_CASE("pgm reader accepts comments and odd whitespace") {
    std::string payload(4, '\x42');
    std::string header = "P5\n# a comment\n 2 # inline\n2\n# more\n255\n";
    std::stringstream buf(header + payload);
    GrayImage img = read_pgm(buf);
    CHECK(img.width() == 2);
    CHECK(img.height() == 2);
    CHECK(img.at(0, 0) == 0x42);
    CHECK(img.at(1, 1) == 0x42);
}

TEST_CASE("pgm reader rejects malformed input with the stream name") {
    auto expect_malformed = [](const std::string& text) {
        std::stringstream buf(text);
        try {
            read_pgm(buf, "sample.pgm");
            FAIL("expected a parse error for: " << text.substr(0, 20));
        } catch (const Error& e) {
            CHECK(e.code() == ErrorCode::MalformedPgm);
            CHECK(std::string(e.what()).find("sample.pgm") != std::string::npos);
        }
    };
    expect_malformed("P2\n2 2\n255\n1234");          // ascii variant
    expect_malformed("P5\n2 2\n65535\n1234");        // wide samples
    expect_malformed("P5\n2 2\n255\n12");            // truncated raster
    expect_malformed("P5\nx 2\n255\n1234");          // junk width
    expect_malformed("P5\n-2 2\n255\n1234");         // negative width
    expect_malformed("P5\n2\n255\n1234");            // missing height
}

TEST_CASE("pgm file io errors") {
    CHECK(thrown_code([] { read_pgm_file("/nonexistent/nope.pgm"); }) == ErrorCode::IoError);

    namespace fs = std::filesystem;
    fs::path dir = fs::temp_directory_path() / "pupil_pgm_test";
    fs::create_directories(dir);
    fs::path path = dir / "img.pgm";
    Rng rng(707);
    GrayImage img = random_image(rng, 17, 11);
    write_pgm_file(path.string(), img);
    GrayImage back = read_pgm_file(path.string());
    REQUIRE(back.width() == 17);
    REQUIRE(back.height() == 11);
    for (int y = 0; y < 11; ++y)
        for (int x = 0; x < 17; ++x) REQUIRE(back.at(x, y) == img.at(x, y));
    fs::remove_all(dir);
}
