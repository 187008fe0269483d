#pragma once

#include <stdexcept>
#include <string>

namespace tmesh {

enum class ErrorKind {
    OverlappingCells,
    DisconnectedDomain,
    DomainNotSimplyConnected,
    DanglingGeometry,
    DegenerateCell,
    EmptyMesh,
    UnknownNode,
    UnknownCell,
    CoordinateOnCellBoundary,
    HistoryMismatch,
    DuplicatePoints,
    DegreeOutOfRange,
    SyntaxError,
    UnknownDirective,
};

inline const char* to_string(ErrorKind kind)
{
    switch (kind) {
    case ErrorKind::OverlappingCells: return "OverlappingCells";
    case ErrorKind::DisconnectedDomain: return "DisconnectedDomain";
    case ErrorKind::DomainNotSimplyConnected: return "DomainNotSimplyConnected";
    case ErrorKind::DanglingGeometry: return "DanglingGeometry";
    case ErrorKind::DegenerateCell: return "DegenerateCell";
    case ErrorKind::EmptyMesh: return "EmptyMesh";
    case ErrorKind::UnknownNode: return "UnknownNode";
    case ErrorKind::UnknownCell: return "UnknownCell";
    case ErrorKind::CoordinateOnCellBoundary: return "CoordinateOnCellBoundary";
    case ErrorKind::HistoryMismatch: return "HistoryMismatch";
    case ErrorKind::DuplicatePoints: return "DuplicatePoints";
    case ErrorKind::DegreeOutOfRange: return "DegreeOutOfRange";
    case ErrorKind::SyntaxError: return "SyntaxError";
    case ErrorKind::UnknownDirective: return "UnknownDirective";
    }
    return "Unknown";
}

/// Every library failure carries a machine-readable kind; what() starts
/// with the kind name so CLI diagnostics can be grepped.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& detail)
        : std::runtime_error(std::string(to_string(kind)) + ": " + detail), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

} // namespace tmesh
