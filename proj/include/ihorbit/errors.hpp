#ifndef IHORBIT_ERRORS_HPP
#define IHORBIT_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace ihorbit
{

enum class ErrorKind
{
    EmptyComplex,
    NotASimplex,
    InvalidOrder,
    NotPseudomanifold,
    PerversityDomainError,
    InvalidPerversity,
    InvalidFiltration,
    NotSimplicial,
    NotPlacid,
    NotSimplicialAction,
    BadGroup,
    BadElement,
    NotRegular,
    NotOriented,
    NotRamified,
    OutOfRange,
    FormUnavailable,
    NotSymmetric,
    NotInvariant,
    Degenerate,
    BadRep,
    InvariantsIsoFailure,
    ParseError,
    BudgetExceeded,
    InternalError,
};

char const* errorKindName(ErrorKind kind);

/// Every failure raised by the library carries one of the kinds above so
/// callers (and the CLI exit-code mapping) can branch on it.
class Error : public std::runtime_error
{
public:
    Error(ErrorKind kind, std::string const& what)
        : std::runtime_error(std::string(errorKindName(kind)) + ": " + what), kind_(kind)
    {
    }

    ErrorKind kind() const { return kind_; }

private:
    ErrorKind kind_;
};

} // namespace ihorbit

#endif // IHORBIT_ERRORS_HPP
