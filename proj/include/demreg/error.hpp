#pragma once

#include <stdexcept>
#include <string>

namespace demreg {

/// Failure classes raised by the toolkit. Each value corresponds to one
/// named error condition of the module contracts; the CLI maps them onto
/// exit codes.
enum class ErrorCode {
    // grid parsing / coordinates
    MalformedHeader,
    CellCountMismatch,
    NonFiniteValue,
    IndexOutOfRange,
    OutOfBounds,
    // tiling
    InvalidTileSize,
    InconsistentCellsize,
    GapOrOverlap,
    // control points
    MalformedLine,
    BorderCell,
    NodataInRing,
    // constellation matching
    DuplicateCell,
    TooFewPoints,
    InsufficientMatches,
    // registration
    CellsizeMismatch,
    // error metrics
    NoOverlap,
    MisalignedGrids,
    EmptySurface,
    NoInteriorCells,
    TooFewSamples,
    // render
    AllNodata,
    InvalidRamp,
    // synth
    EmptyWindow,
    // filesystem
    IoError,
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(std::string(error_code_name(code)) + ": " + message),
          code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
    throw Error(code, message);
}

} // namespace demreg
