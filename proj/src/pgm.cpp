#include "pupil/pgm.hpp"

#include <cctype>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>

namespace pupil {

namespace {

[[noreturn]] void malformed(const std::string& name, const std::string& why) {
    throw Error(ErrorCode::MalformedPgm, name + ": " + why);
}

// Reads the next header token, skipping whitespace and '#' comments.
std::string next_token(std::istream& in, const std::string& name) {
    std::string tok;
    int c;
    while ((c = in.get()) != EOF) {
        if (c == '#') {
            while ((c = in.get()) != EOF && c != '\n') {
            }
            continue;
        }
        if (std::isspace(c))
            continue;
        tok.push_back(static_cast<char>(c));
        while ((c = in.peek()) != EOF && !std::isspace(c) && c != '#')
            tok.push_back(static_cast<char>(in.get()));
        return tok;
    }
    malformed(name, "truncated header");
}

int parse_header_int(std::istream& in, const std::string& name, const char* what) {
    std::string tok = next_token(in, name);
    int value = 0;
    for (char ch : tok) {
        if (!std::isdigit(static_cast<unsigned char>(ch)))
            malformed(name, std::string("invalid ") + what + " '" + tok + "'");
        value = value * 10 + (ch - '0');
        if (value > 1000000)
            malformed(name, std::string(what) + " out of range");
    }
    return value;
}

}  // namespace

GrayImage read_pgm(std::istream& in, const std::string& name) {
    std::string magic = next_token(in, name);
    if (magic != "P5")
        malformed(name, "not a binary PGM (missing P5 magic)");

    int width = parse_header_int(in, name, "width");
    int height = parse_header_int(in, name, "height");
    int maxval = parse_header_int(in, name, "maxval");
    if (width <= 0 || height <= 0)
        malformed(name, "non-positive dimensions");
    if (maxval != 255)
        malformed(name, "unsupported maxval " + std::to_string(maxval) + " (only 255)");

    // Exactly one whitespace byte separates the header from the raster.
    int sep = in.get();
    if (sep == EOF || !std::isspace(sep))
        malformed(name, "missing whitespace before pixel data");

    std::vector<std::uint8_t> data(static_cast<std::size_t>(width) * height);
    in.read(reinterpret_cast<char*>(data.data()), static_cast<std::streamsize>(data.size()));
    if (static_cast<std::size_t>(in.gcount()) != data.size())
        malformed(name, "truncated pixel data");
    return GrayImage(width, height, std::move(data));
}

GrayImage read_pgm_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw Error(ErrorCode::IoError, path + ": cannot open for reading");
    return read_pgm(in, path);
}

void write_pgm(std::ostream& out, const GrayImage& img) {
    out << "P5\n" << img.width() << " " << img.height() << "\n255\n";
    out.write(reinterpret_cast<const char*>(img.data().data()),
              static_cast<std::streamsize>(img.data().size()));
}

void write_pgm_file(const std::string& path, const GrayImage& img) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw Error(ErrorCode::IoError, path + ": cannot open for writing");
    write_pgm(out, img);
    out.flush();
    if (!out)
        throw Error(ErrorCode::IoError, path + ": write failed");
}

}  // namespace pupil
