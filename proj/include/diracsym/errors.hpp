#pragma once

#include <stdexcept>
#include <string>

namespace diracsym {

/// Base of every error raised by the library. Carries a stable kind tag so
/// front ends can map failures to exit codes without string matching.
class Error : public std::runtime_error {
public:
    Error(std::string kind, const std::string& what)
        : std::runtime_error(kind + ": " + what), kind_(std::move(kind)) {}
    const std::string& kind() const noexcept { return kind_; }

private:
    std::string kind_;
};

#define DIRACSYM_ERROR(Name)                                                  \
    class Name : public Error {                                               \
    public:                                                                   \
        explicit Name(const std::string& what) : Error(#Name, what) {}        \
    }

DIRACSYM_ERROR(NonHermitianInput);
DIRACSYM_ERROR(InvalidCoupling);
DIRACSYM_ERROR(InvalidLambda);
DIRACSYM_ERROR(ZeroMomentum);
DIRACSYM_ERROR(NoStateFound);
DIRACSYM_ERROR(TurningPointOutsideGrid);
DIRACSYM_ERROR(IterationDiverged);
DIRACSYM_ERROR(SingularDenominator);
DIRACSYM_ERROR(DoublingDetected);
DIRACSYM_ERROR(ConfigError);

#undef DIRACSYM_ERROR

} // namespace diracsym
