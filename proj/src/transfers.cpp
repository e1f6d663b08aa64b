#include "ihorbit/transfers.hpp"

#include <algorithm>

#include "ihorbit/errors.hpp"
#include "ihorbit/ih.hpp"

namespace ihorbit
{

Matrix transferFromCharacterization(Matrix const& pushForward, GRep const& gStars, int degree)
{
    Matrix iota = invariantSubspace(gStars);
    Matrix a = pushForward * iota;
    auto inv = a.rows() == a.cols() ? inverse(a) : std::nullopt;
    if (!inv)
        throw Error(ErrorKind::InvariantsIsoFailure,
                    "pi_* restricted to invariants is not invertible: invariants " + std::to_string(iota.cols()) +
                        ", target " + std::to_string(a.rows()) + ", rank " + std::to_string(rank(a)));
    return Rational(degree) * (iota * *inv);
}

namespace
{

Matrix sum(std::vector<Matrix> const& ms, std::size_t n)
{
    Matrix s(n, n);
    for (auto const& m : ms)
        s = s + m;
    return s;
}

} // namespace

TransferData transfer(GroupAction const& action, std::optional<Perversity> perversity,
                      std::optional<std::vector<int>> degrees, int maxSubdivisions, std::size_t budget)
{
    auto reg = regularize(action, maxSubdivisions);
    auto orbit = orbitComplex(reg.action);
    auto const& x = reg.action.complex;
    auto const& y = orbit.quotient;
    int n = x.dim();
    if (auto size = barycentricSize(x); size > budget)
        throw Error(ErrorKind::BudgetExceeded, "transfer model would need " + std::to_string(size) +
                                                   " simplices, budget " + std::to_string(budget));
    Perversity p = perversity ? *perversity : Perversity::lowerMiddle(std::max(n, 2));

    TransferData td;
    td.perversity = p;
    td.coverDegree = action.group.order();
    td.group = action.group;
    // skeletal filtrations are never full, so both models subdivide once
    IHModel mx(skeletalFiltration(x), p, true);
    IHModel my(skeletalFiltration(y), p, true);
    td.subdivisions = reg.subdivisions + 1;
    auto lifted = subdivideAction(reg.action, *mx.subdivision());
    auto pi = mx.liftMap(orbit.projection, my);

    std::vector<int> ds;
    if (degrees)
        ds = *degrees;
    else
        for (int d = 0; d <= n; ++d)
            ds.push_back(d);
    for (int d : ds)
    {
        if (d < 0 || d > n)
            throw Error(ErrorKind::OutOfRange, "degree " + std::to_string(d) + " outside 0.." + std::to_string(n));
        TransferDegree t;
        t.degree = d;
        t.pushForward = inducedMatrix(mx, my, pi, d);
        t.pushForwardH = inducedMatrix(mx, my, pi, d, true);
        for (int g = 0; g < action.group.order(); ++g)
        {
            auto const& perm = lifted.perm[static_cast<std::size_t>(g)];
            t.gStars.push_back(inducedMatrix(mx, mx, perm, d));
            t.gStarsH.push_back(inducedMatrix(mx, mx, perm, d, true));
        }
        GRep rep{action.group, t.gStars};
        GRep repH{action.group, t.gStarsH};
        t.invariants = invariantSubspace(rep);
        t.transfer = transferFromCharacterization(t.pushForward, rep, td.coverDegree);
        t.transferH = transferFromCharacterization(t.pushForwardH, repH, td.coverDegree);
        t.canonicalX = mx.canonicalMap(d);
        t.canonicalY = my.canonicalMap(d);
        td.degrees.push_back(std::move(t));
    }
    return td;
}

TransferVerdict verifyTransferIdentities(TransferData const& td)
{
    TransferVerdict v;
    Rational deg(td.coverDegree);
    for (auto const& t : td.degrees)
    {
        TransferCheck c;
        c.degree = t.degree;
        std::size_t nx = t.pushForward.cols();
        std::size_t ny = t.pushForward.rows();
        std::size_t hx = t.pushForwardH.cols();
        std::size_t hy = t.pushForwardH.rows();
        c.upDown = t.pushForward * t.transfer == deg * Matrix::identity(ny);
        c.downUp = t.transfer * t.pushForward == sum(t.gStars, nx);
        c.upDownH = t.pushForwardH * t.transferH == deg * Matrix::identity(hy);
        c.downUpH = t.transferH * t.pushForwardH == sum(t.gStarsH, hx);
        c.commutesTransfer = t.canonicalX * t.transfer == t.transferH * t.canonicalY;
        c.commutesPush = t.canonicalY * t.pushForward == t.pushForwardH * t.canonicalX;
        c.imageIsInvariants = rank(t.transfer) == t.invariants.cols() &&
                              rank(hconcat(t.transfer, t.invariants)) == t.invariants.cols();
        auto tag = "degree " + std::to_string(t.degree) + ": ";
        if (!c.upDown)
            v.failures.push_back(tag + "pi_* pi_! != d I");
        if (!c.downUp)
            v.failures.push_back(tag + "pi_! pi_* != sum g_*");
        if (!c.upDownH)
            v.failures.push_back(tag + "ordinary pi_* pi_! != d I");
        if (!c.downUpH)
            v.failures.push_back(tag + "ordinary pi_! pi_* != sum g_*");
        if (!c.commutesTransfer)
            v.failures.push_back(tag + "canonical map does not commute with the transfers");
        if (!c.commutesPush)
            v.failures.push_back(tag + "canonical map does not commute with the push-forwards");
        if (!c.imageIsInvariants)
            v.failures.push_back(tag + "image of pi_! is not the invariant subspace");
        v.ok = v.ok && c.ok();
        v.checks.push_back(c);
    }
    return v;
}

} // namespace ihorbit
