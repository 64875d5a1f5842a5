#pragma once

#include <stdexcept>
#include <string>

namespace wka {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

#define WKA_DECLARE_ERROR(Name)                                   \
    class Name : public Error {                                   \
    public:                                                       \
        explicit Name(const std::string& what)                    \
            : Error(std::string(#Name ": ") + what) {}            \
    }

WKA_DECLARE_ERROR(Inconsistent);
WKA_DECLARE_ERROR(MismatchedParent);
WKA_DECLARE_ERROR(NotSemisimple);
WKA_DECLARE_ERROR(NotStarClosed);
WKA_DECLARE_ERROR(CartanMismatch);
WKA_DECLARE_ERROR(NoSolution);
WKA_DECLARE_ERROR(NonUnique);
WKA_DECLARE_ERROR(GramDegenerate);
WKA_DECLARE_ERROR(NonIntegralMultiplicity);
WKA_DECLARE_ERROR(NotCounital);
WKA_DECLARE_ERROR(NotFaithful);
WKA_DECLARE_ERROR(NotTracial);
WKA_DECLARE_ERROR(NoUnit);
WKA_DECLARE_ERROR(InvalidCocycle);
WKA_DECLARE_ERROR(InvalidAction);
WKA_DECLARE_ERROR(InvalidGroupoid);
WKA_DECLARE_ERROR(IndexOutOfRange);
WKA_DECLARE_ERROR(InvalidArgument);

#undef WKA_DECLARE_ERROR

/// Parse failure with the offending line (1-based, 0 when unknown) and field.
class ParseError : public Error {
public:
    ParseError(std::size_t line, const std::string& field, const std::string& what)
        : Error("ParseError at line " + std::to_string(line) + " (" + field + "): " + what),
          line_(line), field_(field) {}

    std::size_t line() const { return line_; }
    const std::string& field() const { return field_; }

private:
    std::size_t line_;
    std::string field_;
};

} // namespace wka
