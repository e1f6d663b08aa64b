// Push-forward and transfer on intersection homology for the orbit
// projection of a regular action, and the transfer identities.

#ifndef IHORBIT_TRANSFERS_HPP
#define IHORBIT_TRANSFERS_HPP

#include <optional>
#include <string>
#include <vector>

#include "ihorbit/filtered.hpp"
#include "ihorbit/group.hpp"
#include "ihorbit/linalg.hpp"
#include "ihorbit/signatures.hpp"

namespace ihorbit
{

/// pi_! = d * iota (pi_* iota)^-1 with iota the inclusion of the common fixed
/// space of the g_*.  Throws InvariantsIsoFailure (with ranks) when pi_* iota
/// is not invertible, BadRep when the g_* are not a representation.
Matrix transferFromCharacterization(Matrix const& pushForward, GRep const& gStars, int degree);

struct TransferDegree
{
    int degree = 0;
    // intersection homology
    Matrix pushForward;  // IH_d(X) -> IH_d(Y)
    Matrix transfer;     // IH_d(Y) -> IH_d(X)
    std::vector<Matrix> gStars;
    Matrix invariants;
    // ordinary homology, same characterisation
    Matrix pushForwardH;
    Matrix transferH;
    std::vector<Matrix> gStarsH;
    // canonical maps IH -> H
    Matrix canonicalX;
    Matrix canonicalY;
};

struct TransferData
{
    Perversity perversity;
    int coverDegree = 1;
    int subdivisions = 0;
    FiniteGroup group;
    std::vector<TransferDegree> degrees;
};

/// Regularizes, forms the orbit complex, and builds all matrices on skeletal
/// filtrations.  `degrees` defaults to 0..n.  Throws BudgetExceeded when the
/// subdivided regular complex would have more than `budget` simplices.
TransferData transfer(GroupAction const& action, std::optional<Perversity> perversity = std::nullopt,
                      std::optional<std::vector<int>> degrees = std::nullopt, int maxSubdivisions = 2,
                      std::size_t budget = 200000);

struct TransferCheck
{
    int degree = 0;
    bool upDown = false;          // pi_* pi_! = d I
    bool downUp = false;          // pi_! pi_* = sum g_*
    bool upDownH = false;
    bool downUpH = false;
    bool commutesTransfer = false;  // c_X pi_! = pi_!^H c_Y
    bool commutesPush = false;      // c_Y pi_* = pi_*^H c_X
    bool imageIsInvariants = false;
    bool ok() const
    {
        return upDown && downUp && upDownH && downUpH && commutesTransfer && commutesPush && imageIsInvariants;
    }
};

struct TransferVerdict
{
    bool ok = true;
    std::vector<TransferCheck> checks;
    std::vector<std::string> failures;
};

TransferVerdict verifyTransferIdentities(TransferData const& td);

} // namespace ihorbit

#endif // IHORBIT_TRANSFERS_HPP
