#pragma once

#include <stdexcept>
#include <string>

namespace cyclotome {

// Base for all domain errors. kind() is stable text used by the CLI to pick
// exit codes and by tests to match failure categories.
struct CycloError : std::runtime_error {
    std::string kind_;
    CycloError(std::string kind, const std::string& msg)
        : std::runtime_error(kind + ": " + msg), kind_(std::move(kind)) {}
    const std::string& kind() const { return kind_; }
};

#define CYCLOTOME_ERROR(Name)                                                            \
    struct Name : CycloError {                                                           \
        explicit Name(const std::string& msg) : CycloError(#Name, msg) {}                \
    }

CYCLOTOME_ERROR(NotContained);
CYCLOTOME_ERROR(NotChainCompatible);
CYCLOTOME_ERROR(SizeBudgetExceeded);
CYCLOTOME_ERROR(WindowTooSmall);
CYCLOTOME_ERROR(NotStabilized);
CYCLOTOME_ERROR(NotAGroup);
CYCLOTOME_ERROR(NotARepresentation);
CYCLOTOME_ERROR(ValidationFailed);
CYCLOTOME_ERROR(CommutationFailed);
CYCLOTOME_ERROR(ChainMapViolation);
CYCLOTOME_ERROR(NonzeroUPrime);
CYCLOTOME_ERROR(OutOfRange);
CYCLOTOME_ERROR(SourceTargetMismatch);
CYCLOTOME_ERROR(OddDifferentialNonzero);
CYCLOTOME_ERROR(FreenessFailed);
CYCLOTOME_ERROR(UnsupportedAlgebra);
CYCLOTOME_ERROR(UsageError);

#undef CYCLOTOME_ERROR

} // namespace cyclotome
