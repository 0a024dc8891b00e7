#ifndef PUPIL_ERRORS_HPP
#define PUPIL_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace pupil {

/// Failure reasons surfaced by the library. The CLI maps these to its
/// machine-readable status column, so the labels are part of the output
/// contract (see status_label).
enum class ErrorCode {
    InvalidArgument,
    EmptyRegion,
    RegionTooSmall,
    NoCandidatePixels,
    NoDarkPixels,
    NoBoundaries,
    NoFlankingPair,
    NoVotes,
    NoSecondLine,
    DegenerateTruth,
    RoiOutOfBounds,
    MissingAnnotation,
    MalformedEyeFile,
    MalformedPgm,
    InvalidSpec,
    NoEvaluatedRecords,
    IoError,
};

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(message), code_(code) {}

    ErrorCode code() const { return code_; }

private:
    ErrorCode code_;
};

/// Stable snake_case label, e.g. NoCandidatePixels -> "no_candidate_pixels".
inline const char* status_label(ErrorCode code) {
    switch (code) {
        case ErrorCode::InvalidArgument:    return "invalid_argument";
        case ErrorCode::EmptyRegion:        return "empty_region";
        case ErrorCode::RegionTooSmall:     return "region_too_small";
        case ErrorCode::NoCandidatePixels:  return "no_candidate_pixels";
        case ErrorCode::NoDarkPixels:       return "no_dark_pixels";
        case ErrorCode::NoBoundaries:       return "no_boundaries";
        case ErrorCode::NoFlankingPair:     return "no_flanking_pair";
        case ErrorCode::NoVotes:            return "no_votes";
        case ErrorCode::NoSecondLine:       return "no_second_line";
        case ErrorCode::DegenerateTruth:    return "degenerate_truth";
        case ErrorCode::RoiOutOfBounds:     return "roi_out_of_bounds";
        case ErrorCode::MissingAnnotation:  return "missing_annotation";
        case ErrorCode::MalformedEyeFile:   return "malformed_eye_file";
        case ErrorCode::MalformedPgm:       return "malformed_pgm";
        case ErrorCode::InvalidSpec:        return "invalid_spec";
        case ErrorCode::NoEvaluatedRecords: return "no_evaluated_records";
        case ErrorCode::IoError:            return "io_error";
    }
    return "unknown";
}

}  // namespace pupil

#endif
