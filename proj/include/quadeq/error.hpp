#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace quadeq {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class SyntaxError : public Error {
public:
    SyntaxError(std::size_t offset, const std::string& what)
        : Error("syntax error at byte " + std::to_string(offset) + ": " + what), offset_(offset) {}
    std::size_t offset() const { return offset_; }

private:
    std::size_t offset_;
};

#define QUADEQ_ERROR(Name)          \
    class Name : public Error {     \
    public:                         \
        using Error::Error;         \
    };

QUADEQ_ERROR(BasisMismatch)
QUADEQ_ERROR(EpsilonMismatch)
QUADEQ_ERROR(DomainMismatch)
QUADEQ_ERROR(NotDivisible)
QUADEQ_ERROR(NotInKernel)
QUADEQ_ERROR(NotMixedCase)
QUADEQ_ERROR(CaseMismatch)
QUADEQ_ERROR(SingularBase)
QUADEQ_ERROR(InconsistentSign)
QUADEQ_ERROR(ExtractionFailed)
QUADEQ_ERROR(BudgetExceeded)

#undef QUADEQ_ERROR

}  // namespace quadeq
