#include "linkspace/error.hpp"

namespace linkspace {

const char* error_kind_name(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::IncompletePlacement: return "incomplete placement";
        case ErrorKind::MalformedInput: return "malformed input";
        case ErrorKind::NotAConfiguration: return "not a configuration";
        case ErrorKind::PlacementEmbedded: return "placement is embedded";
        case ErrorKind::InvalidApproachPath: return "invalid approach path";
        case ErrorKind::UncataloguedSingularity: return "uncatalogued singularity";
        case ErrorKind::NotAChainComplex: return "not a chain complex";
        case ErrorKind::InfeasibleLengths: return "infeasible lengths";
        case ErrorKind::ChamberWall: return "chamber wall";
        case ErrorKind::InfeasibleCollineation: return "infeasible collineation";
        case ErrorKind::Unsupported: return "unsupported";
        case ErrorKind::DegenerateGeometry: return "degenerate geometry";
        case ErrorKind::InconsistentLabels: return "inconsistent labels";
        case ErrorKind::EndpointsNotEmbedded: return "endpoints not embedded";
        case ErrorKind::InvalidArgument: return "invalid argument";
    }
    return "error";
}

} // namespace linkspace
