/**
 * Error type shared by all rdper modules.
 *
 * Every failure carries a machine-readable kind so that callers (the CLI in
 * particular) can map failures onto exit codes without parsing messages.
 */
#ifndef RDPER_ERROR_HPP
#define RDPER_ERROR_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace rdper {

enum class ErrorKind
{
    // local_model
    NotGood,
    NotIrregular,
    ZeroUnit,
    ResolutionTooCoarse,
    InvalidStratum,
    // stokes_topology
    SpecTooCoarse,
    BoundaryNotNilpotent,
    // laurent_ops
    WindowTooSmall,
    NotStabilized,
    // chg_symbolic
    InvalidParams,
    IdentityFailed,
    ReductionDiverged,
    MatrixMismatch,
    IntegrabilityFailed,
    SingularPoint,
    // periods_numeric
    NoConvergence,
    ChamberViolation,
    StepTooLarge,
    InvalidQuadratureSpec,
    // cli_report
    ConfigError,
    VersionMismatch,
};

std::string_view to_string(ErrorKind kind);

class Error : public std::runtime_error
{
    public:
        Error(ErrorKind kind, const std::string& what)
            : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind)
        {
        }

        ErrorKind kind() const noexcept { return kind_; }

    private:
        ErrorKind kind_;
};

}   // namespace rdper

#endif
