#pragma once

#include <stdexcept>
#include <string>

namespace monoidal {

/// Error categories surfaced by kernel operations. The CLI maps these
/// one-to-one onto user-facing diagnostics.
enum class ErrorCode {
    StructureMismatch,
    NotAUnit,
    NotInKernel,
    CommutationViolation,
    MissingAssignment,
    NoncommutativeTarget,
    ZeroPolynomial,
    UnknownVariable,
    CharacteristicNotZero,
    NonUnitConstantTerm,
    ArgumentNotInIdeal,
    IncoherentTower,
    OverlappingVariables,
    SyntaxError,
    InvalidArgument,
};

inline const char* error_code_name(ErrorCode c) {
    switch (c) {
        case ErrorCode::StructureMismatch: return "StructureMismatch";
        case ErrorCode::NotAUnit: return "NotAUnit";
        case ErrorCode::NotInKernel: return "NotInKernel";
        case ErrorCode::CommutationViolation: return "CommutationViolation";
        case ErrorCode::MissingAssignment: return "MissingAssignment";
        case ErrorCode::NoncommutativeTarget: return "NoncommutativeTarget";
        case ErrorCode::ZeroPolynomial: return "ZeroPolynomial";
        case ErrorCode::UnknownVariable: return "UnknownVariable";
        case ErrorCode::CharacteristicNotZero: return "CharacteristicNotZero";
        case ErrorCode::NonUnitConstantTerm: return "NonUnitConstantTerm";
        case ErrorCode::ArgumentNotInIdeal: return "ArgumentNotInIdeal";
        case ErrorCode::IncoherentTower: return "IncoherentTower";
        case ErrorCode::OverlappingVariables: return "OverlappingVariables";
        case ErrorCode::SyntaxError: return "SyntaxError";
        case ErrorCode::InvalidArgument: return "InvalidArgument";
    }
    return "Unknown";
}

class KernelError : public std::runtime_error {
public:
    KernelError(ErrorCode code, const std::string& message)
        : std::runtime_error(message), code_(code) {}

    ErrorCode code() const { return code_; }

private:
    ErrorCode code_;
};

/// Parse failure with the byte offset and the token set the parser would
/// have accepted at that point.
class SyntaxError : public KernelError {
public:
    SyntaxError(std::size_t position, const std::string& expected, const std::string& found)
        : KernelError(ErrorCode::SyntaxError,
                      "syntax error at position " + std::to_string(position) +
                          ": expected " + expected + ", found " + found),
          position_(position), expected_(expected), found_(found) {}

    std::size_t position() const { return position_; }
    const std::string& expected() const { return expected_; }
    const std::string& found() const { return found_; }

private:
    std::size_t position_;
    std::string expected_;
    std::string found_;
};

} // namespace monoidal
