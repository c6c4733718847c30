#include "rdper/error.hpp"

namespace rdper {

std::string_view to_string(ErrorKind kind)
{
    switch (kind)
    {
        case ErrorKind::NotGood: return "NotGood";
        case ErrorKind::NotIrregular: return "NotIrregular";
        case ErrorKind::ZeroUnit: return "ZeroUnit";
        case ErrorKind::ResolutionTooCoarse: return "ResolutionTooCoarse";
        case ErrorKind::InvalidStratum: return "InvalidStratum";
        case ErrorKind::SpecTooCoarse: return "SpecTooCoarse";
        case ErrorKind::BoundaryNotNilpotent: return "BoundaryNotNilpotent";
        case ErrorKind::WindowTooSmall: return "WindowTooSmall";
        case ErrorKind::NotStabilized: return "NotStabilized";
        case ErrorKind::InvalidParams: return "InvalidParams";
        case ErrorKind::IdentityFailed: return "IdentityFailed";
        case ErrorKind::ReductionDiverged: return "ReductionDiverged";
        case ErrorKind::MatrixMismatch: return "MatrixMismatch";
        case ErrorKind::IntegrabilityFailed: return "IntegrabilityFailed";
        case ErrorKind::SingularPoint: return "SingularPoint";
        case ErrorKind::NoConvergence: return "NoConvergence";
        case ErrorKind::ChamberViolation: return "ChamberViolation";
        case ErrorKind::StepTooLarge: return "StepTooLarge";
        case ErrorKind::InvalidQuadratureSpec: return "InvalidQuadratureSpec";
        case ErrorKind::ConfigError: return "ConfigError";
        case ErrorKind::VersionMismatch: return "VersionMismatch";
    }
    return "Unknown";
}

}   // namespace rdper
