#include "demreg/error.hpp"

namespace demreg {

const char* error_code_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::MalformedHeader: return "MalformedHeader";
        case ErrorCode::CellCountMismatch: return "CellCountMismatch";
        case ErrorCode::NonFiniteValue: return "NonFiniteValue";
        case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
        case ErrorCode::OutOfBounds: return "OutOfBounds";
        case ErrorCode::InvalidTileSize: return "InvalidTileSize";
        case ErrorCode::InconsistentCellsize: return "InconsistentCellsize";
        case ErrorCode::GapOrOverlap: return "GapOrOverlap";
        case ErrorCode::MalformedLine: return "MalformedLine";
        case ErrorCode::BorderCell: return "BorderCell";
        case ErrorCode::NodataInRing: return "NodataInRing";
        case ErrorCode::DuplicateCell: return "DuplicateCell";
        case ErrorCode::TooFewPoints: return "TooFewPoints";
        case ErrorCode::InsufficientMatches: return "InsufficientMatches";
        case ErrorCode::CellsizeMismatch: return "CellsizeMismatch";
        case ErrorCode::NoOverlap: return "NoOverlap";
        case ErrorCode::MisalignedGrids: return "MisalignedGrids";
        case ErrorCode::EmptySurface: return "EmptySurface";
        case ErrorCode::NoInteriorCells: return "NoInteriorCells";
        case ErrorCode::TooFewSamples: return "TooFewSamples";
        case ErrorCode::AllNodata: return "AllNodata";
        case ErrorCode::InvalidRamp: return "InvalidRamp";
        case ErrorCode::EmptyWindow: return "EmptyWindow";
        case ErrorCode::IoError: return "IoError";
    }
    return "UnknownError";
}

} // namespace demreg
