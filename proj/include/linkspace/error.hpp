#pragma once
#include <stdexcept>
#include <string>

namespace linkspace {

enum class ErrorKind {
    IncompletePlacement,
    MalformedInput,
    NotAConfiguration,
    PlacementEmbedded,
    InvalidApproachPath,
    UncataloguedSingularity,
    NotAChainComplex,
    InfeasibleLengths,
    ChamberWall,
    InfeasibleCollineation,
    Unsupported,
    DegenerateGeometry,
    InconsistentLabels,
    EndpointsNotEmbedded,
    InvalidArgument,
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

// Stable short name used in JSON error reports.
const char* error_kind_name(ErrorKind kind);

} // namespace linkspace
