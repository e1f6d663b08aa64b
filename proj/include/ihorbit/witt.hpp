// Witt condition via links, the suspension oracle for middle IH, and the
// ramified-covering structure of orbit projections.

#ifndef IHORBIT_WITT_HPP
#define IHORBIT_WITT_HPP

#include <optional>
#include <string>
#include <vector>

#include "ihorbit/complex.hpp"
#include "ihorbit/group.hpp"

namespace ihorbit
{

/// Isomorphism-invariant encoding of a complex (labels ignored), found by
/// colour refinement plus individualisation.  nullopt when the search
/// exceeds `leafBudget` leaves.
std::optional<std::string> canonicalForm(SimplicialComplex const& k, std::size_t leafBudget = 4096);

/// IH^m_i of a complex with its skeletal filtration (lower middle perversity,
/// rational coefficients), all degrees.
std::vector<int> middleIH(SimplicialComplex const& k);

struct WittFailure
{
    Simplex simplex;
    int linkDim = 0;
    int ihDim = 0;
};

struct WittReport
{
    bool isWitt = true;
    std::size_t checkedLinks = 0;
    std::vector<WittFailure> failures;
    /// Simplices whose links are zero-dimensional; PM2 makes these S^0.
    std::size_t exemptLinks = 0;
    std::size_t cacheHits = 0;
};

/// For every simplex whose link has even dimension 2k >= 2, requires
/// IH^m_k(link) = 0.  Throws NotPseudomanifold unless PM1 and PM2 hold.
WittReport isWitt(SimplicialComplex const& k, int jobs = 1);

/// IH^m_i(L) computed directly; by the suspension lemma this equals
/// IH^m_i(Sigma^s L) for i <= dim L / 2.  Throws OutOfRange above that bound.
int suspensionIHOracle(SimplicialComplex const& l, int s, int i);

/// A finite-to-one simplicial surjection with a multiplicity on the open
/// simplices of the source whose fibre sums are constant.
struct RamifiedCoverData
{
    SimplicialComplex source;
    SimplicialComplex base;
    std::vector<Vertex> projection;
    /// multiplicity[d][i] for the open d-simplex i of the source.
    std::vector<std::vector<int>> multiplicity;
    int degree = 1;
};

/// Orbit projection of a regular action: degree |G|, multiplicity = order of
/// the stabiliser.  Throws NotRamified when a fibre sum differs from |G|.
RamifiedCoverData ramifiedStructure(GroupAction const& action, OrbitComplexData const& orbit);

/// Checks a user supplied covering; throws NotRamified on a bad fibre sum and
/// NotSimplicial when the projection does not preserve simplex dimensions.
RamifiedCoverData ramifiedStructure(SimplicialComplex source, SimplicialComplex base, std::vector<Vertex> projection,
                                    std::vector<std::vector<int>> multiplicity, int degree);

/// Sum of multiplicities over the preimage of each open base simplex
/// (indexed like base.simplices(d)).
std::vector<std::vector<int>> fibreSums(RamifiedCoverData const& cover);

/// Suspension of a cover: apexes map to apexes with multiplicity d.
RamifiedCoverData suspendCover(RamifiedCoverData const& cover);

struct LinkCoverVerdict
{
    bool ok = true;
    std::size_t preimages = 0;
    int baseLinkDim = -1;
    std::vector<int> linkDims;  // one per preimage simplex
    int fibreSum = 0;
    std::vector<std::string> failures;
};

/// Restriction of a cover to the link of delta: every preimage has a link of
/// the same dimension and the multiplicities over delta sum to the degree.
LinkCoverVerdict linkCoverCheck(RamifiedCoverData const& cover, Simplex const& delta);

} // namespace ihorbit

#endif // IHORBIT_WITT_HPP
