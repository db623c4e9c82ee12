#pragma once

#include <stdexcept>
#include <string>

namespace pgsnf {

/// Base class for all library errors. `kind()` names the error condition.
class Error : public std::runtime_error {
public:
    Error(std::string kind, const std::string& what)
        : std::runtime_error(kind + ": " + what), kind_(std::move(kind)) {}

    const std::string& kind() const noexcept { return kind_; }

private:
    std::string kind_;
};

#define PGSNF_DEFINE_ERROR(Name)                                      \
    class Name : public Error {                                       \
    public:                                                           \
        explicit Name(const std::string& what) : Error(#Name, what) {} \
    }

PGSNF_DEFINE_ERROR(InvalidArgument);
PGSNF_DEFINE_ERROR(DivisionByZero);
PGSNF_DEFINE_ERROR(SpecMismatch);
PGSNF_DEFINE_ERROR(NotAUnit);
PGSNF_DEFINE_ERROR(InvalidDimension);
PGSNF_DEFINE_ERROR(OutsideTheoremRange);
PGSNF_DEFINE_ERROR(NoType);
PGSNF_DEFINE_ERROR(DegenerateCharacters);
PGSNF_DEFINE_ERROR(AtLeastPrecision);
PGSNF_DEFINE_ERROR(PrecisionExhausted);
PGSNF_DEFINE_ERROR(TooLarge);
PGSNF_DEFINE_ERROR(ParseError);

#undef PGSNF_DEFINE_ERROR

}  // namespace pgsnf
