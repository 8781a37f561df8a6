#include "adjpair/error.hpp"

namespace adjpair {

std::string_view to_string(ErrorKind kind) noexcept {
    switch (kind) {
        case ErrorKind::EpsGapViolated: return "EpsGapViolated";
        case ErrorKind::XiNotL2: return "XiNotL2";
        case ErrorKind::XiInDomainOfR: return "XiInDomainOfR";
        case ErrorKind::DomainViolation: return "DomainViolation";
        case ErrorKind::TailBoundFailure: return "TailBoundFailure";
        case ErrorKind::InvalidElement: return "InvalidElement";
        case ErrorKind::ModelMismatch: return "ModelMismatch";
        case ErrorKind::NotInDomain: return "NotInDomain";
        case ErrorKind::NotInExtensionDomain: return "NotInExtensionDomain";
        case ErrorKind::DegenerateSubspace: return "DegenerateSubspace";
        case ErrorKind::AlphaZero: return "AlphaZero";
        case ErrorKind::AmbiguousSupport: return "AmbiguousSupport";
        case ErrorKind::InvalidArgument: return "InvalidArgument";
        case ErrorKind::ParseError: return "ParseError";
        case ErrorKind::SchemaError: return "SchemaError";
        case ErrorKind::IoError: return "IoError";
    }
    return "Unknown";
}

}  // namespace adjpair
