#ifndef PUPIL_PGM_HPP
#define PUPIL_PGM_HPP

#include <iosfwd>
#include <string>

#include "pupil/image.hpp"

namespace pupil {

// Binary PGM ("P5"), maxval 255 only. '#' comment lines are allowed anywhere
// in the header. This is the storage format of the BioID face set.

GrayImage read_pgm(std::istream& in, const std::string& name = "<stream>");
GrayImage read_pgm_file(const std::string& path);

void write_pgm(std::ostream& out, const GrayImage& img);
void write_pgm_file(const std::string& path, const GrayImage& img);

}  // namespace pupil

#endif
