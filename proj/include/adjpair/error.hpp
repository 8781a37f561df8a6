#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace adjpair {

enum class ErrorKind {
    EpsGapViolated,
    XiNotL2,
    XiInDomainOfR,
    DomainViolation,
    TailBoundFailure,
    InvalidElement,
    ModelMismatch,
    NotInDomain,
    NotInExtensionDomain,
    DegenerateSubspace,
    AlphaZero,
    AmbiguousSupport,
    InvalidArgument,
    ParseError,
    SchemaError,
    IoError,
};

std::string_view to_string(ErrorKind kind) noexcept;

/// Error raised by every library operation. Carries a machine-readable kind
/// and the name of the module that raised it.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, std::string module, const std::string& message)
        : std::runtime_error(message), kind_(kind), module_(std::move(module)) {}

    ErrorKind kind() const noexcept { return kind_; }
    const std::string& module() const noexcept { return module_; }

private:
    ErrorKind kind_;
    std::string module_;
};

}  // namespace adjpair
