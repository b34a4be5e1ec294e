#pragma once

#include <stdexcept>
#include <string>

namespace fragmark {

enum class ErrorCode {
    EmptyKey,
    DegenerateChaosState,
    CoverTooSmall,
    CapacityExceeded,
    RecordPayloadMismatch,
    RecordDimensionMismatch,
    CoverNotInitialized,
    InvalidArgument,
    DimensionMismatch,
    InvalidAttack,
    NotAKeyFile,
    UnsupportedVersion,
    CorruptKeyFile,
    UnsupportedFormat,
    UnsupportedMaxval,
    MalformedHeader,
    Io,
};

// Every failure raised by the library carries a code so callers (the CLI, the
// python bindings) can branch without string matching.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace fragmark
