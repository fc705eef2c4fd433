#include "manifoldnet/error.hpp"

namespace manifoldnet {

std::string_view error_kind_name(ErrorKind kind) noexcept {
    switch (kind) {
        case ErrorKind::NonSymmetric: return "NonSymmetric";
        case ErrorKind::NotPositiveDefinite: return "NotPositiveDefinite";
        case ErrorKind::DimMismatch: return "DimMismatch";
        case ErrorKind::NoConvergence: return "NoConvergence";
        case ErrorKind::EmptyCohort: return "EmptyCohort";
        case ErrorKind::CohortTooSmall: return "CohortTooSmall";
        case ErrorKind::IsolatedNode: return "IsolatedNode";
        case ErrorKind::Disconnected: return "Disconnected";
        case ErrorKind::SameNode: return "SameNode";
        case ErrorKind::InvalidGraph: return "InvalidGraph";
        case ErrorKind::InfeasibleSpec: return "InfeasibleSpec";
        case ErrorKind::ConnectivityRetryExceeded: return "ConnectivityRetryExceeded";
        case ErrorKind::ParseError: return "ParseError";
        case ErrorKind::DuplicateId: return "DuplicateId";
        case ErrorKind::MissingGene: return "MissingGene";
        case ErrorKind::UnlabeledNetwork: return "UnlabeledNetwork";
        case ErrorKind::InvalidArgument: return "InvalidArgument";
        case ErrorKind::IoError: return "IoError";
    }
    return "Unknown";
}

}  // namespace manifoldnet
