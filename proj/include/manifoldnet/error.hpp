#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace manifoldnet {

enum class ErrorKind {
    NonSymmetric,
    NotPositiveDefinite,
    DimMismatch,
    NoConvergence,
    EmptyCohort,
    CohortTooSmall,
    IsolatedNode,
    Disconnected,
    SameNode,
    InvalidGraph,
    InfeasibleSpec,
    ConnectivityRetryExceeded,
    ParseError,
    DuplicateId,
    MissingGene,
    UnlabeledNetwork,
    InvalidArgument,
    IoError,
};

std::string_view error_kind_name(ErrorKind kind) noexcept;

// Every failure raised by the library carries a kind so callers (the CLI in
// particular) can map it onto a stable exit code.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(std::string(error_kind_name(kind)) + ": " + message), kind_(kind), detail_(message) {}

    ErrorKind kind() const noexcept { return kind_; }
    // Message without the kind prefix, for re-raising with added context.
    const std::string& detail() const noexcept { return detail_; }

private:
    ErrorKind kind_;
    std::string detail_;
};

}  // namespace manifoldnet
