#include "ihorbit/errors.hpp"

namespace ihorbit
{

char const* errorKindName(ErrorKind kind)
{
    switch (kind)
    {
    case ErrorKind::EmptyComplex: return "EmptyComplex";
    case ErrorKind::NotASimplex: return "NotASimplex";
    case ErrorKind::InvalidOrder: return "InvalidOrder";
    case ErrorKind::NotPseudomanifold: return "NotPseudomanifold";
    case ErrorKind::PerversityDomainError: return "PerversityDomainError";
    case ErrorKind::InvalidPerversity: return "InvalidPerversity";
    case ErrorKind::InvalidFiltration: return "InvalidFiltration";
    case ErrorKind::NotSimplicial: return "NotSimplicial";
    case ErrorKind::NotPlacid: return "NotPlacid";
    case ErrorKind::NotSimplicialAction: return "NotSimplicialAction";
    case ErrorKind::BadGroup: return "BadGroup";
    case ErrorKind::BadElement: return "BadElement";
    case ErrorKind::NotRegular: return "NotRegular";
    case ErrorKind::NotOriented: return "NotOriented";
    case ErrorKind::NotRamified: return "NotRamified";
    case ErrorKind::OutOfRange: return "OutOfRange";
    case ErrorKind::FormUnavailable: return "FormUnavailable";
    case ErrorKind::NotSymmetric: return "NotSymmetric";
    case ErrorKind::NotInvariant: return "NotInvariant";
    case ErrorKind::Degenerate: return "Degenerate";
    case ErrorKind::BadRep: return "BadRep";
    case ErrorKind::InvariantsIsoFailure: return "InvariantsIsoFailure";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::BudgetExceeded: return "BudgetExceeded";
    case ErrorKind::InternalError: return "InternalError";
    }
    return "Unknown";
}

} // namespace ihorbit
