// Simplicial intersection homology: allowable chains, IH over the rationals,
// explicit generators, and maps induced by placid simplicial maps.

#ifndef IHORBIT_IH_HPP
#define IHORBIT_IH_HPP

#include <optional>
#include <vector>

#include "ihorbit/chains.hpp"
#include "ihorbit/filtered.hpp"
#include "ihorbit/linalg.hpp"

namespace ihorbit
{

/// Every simplex meets every X_i in a single face.
bool isFull(FilteredComplex const& x);

/// Filtration of the barycentric subdivision: a flag lies in X'_i iff its
/// largest simplex lies in X_i.  The result is always full.
FilteredComplex liftFiltration(FilteredComplex const& x, Subdivision const& sd);

/// Vertex map of the subdivisions induced by a simplicial map: the barycentre
/// of sigma goes to the barycentre of f(sigma).
std::vector<Vertex> subdivideMap(std::vector<Vertex> const& vertexMap, Subdivision const& sdSource,
                                 Subdivision const& sdTarget);

/// Allowable chains I^pC_* of a full filtered complex.  Coefficients are
/// rational; chains are expressed in the simplex basis of the complex.
class IntersectionChainComplex
{
public:
    /// Throws InvalidFiltration if x is not full and PerversityDomainError when
    /// some codimension present in x lies outside the perversity's domain.
    IntersectionChainComplex(FilteredComplex x, Perversity p);

    FilteredComplex const& filtered() const { return x_; }
    Perversity const& perversity() const { return p_; }
    int dim() const { return x_.complex().dim(); }

    bool allowable(int d, std::size_t idx) const { return allowable_[static_cast<std::size_t>(d)][idx] != 0; }
    std::vector<std::size_t> const& allowableSimplices(int d) const
    {
        return allowableList_[static_cast<std::size_t>(d)];
    }

    /// Basis of I^pC_d: allowable chains with allowable boundary.
    std::vector<SparseVec> chainBasis(int d) const;

    /// Rational IH dimensions in degrees 0..dim.
    std::vector<int> betti() const;

    /// IH_d with cycle representatives.
    HomologyBasis homologyBasis(int d) const;

private:
    std::vector<SparseVec> boundaryOfAllowable(int d) const;
    SparseVec nonAllowablePart(int d, SparseVec const& v) const;

    FilteredComplex x_;
    Perversity p_;
    std::vector<std::vector<char>> allowable_;
    std::vector<std::vector<std::size_t>> allowableList_;
};

/// Rational IH of any filtered complex, subdividing once first when the
/// filtration is not full.
struct IHResult
{
    std::vector<int> betti;
    int subdivisions = 0;
};

IHResult intersectionHomology(FilteredComplex const& x, Perversity const& p);

/// IH and ordinary homology with generators on a single full model of a
/// filtered complex, so both can be compared and pushed forward.
class IHModel
{
public:
    /// Subdivides once when x is not full, or when `subdivide` is set.
    IHModel(FilteredComplex const& x, Perversity const& p, bool subdivide = false);

    FilteredComplex const& original() const { return original_; }
    FilteredComplex const& full() const { return chains_.filtered(); }
    std::optional<Subdivision> const& subdivision() const { return subdivision_; }
    int subdivisions() const { return subdivision_ ? 1 : 0; }
    IntersectionChainComplex const& chains() const { return chains_; }
    int dim() const { return chains_.dim(); }

    HomologyBasis const& ih(int d) const { return ih_[static_cast<std::size_t>(d)]; }
    HomologyBasis const& ordinary(int d) const { return h_[static_cast<std::size_t>(d)]; }
    std::vector<int> ihBetti() const;

    /// Matrix of the canonical map IH_d -> H_d in the two generator bases.
    Matrix canonicalMap(int d) const;

    /// Lifts a vertex map between the original complexes to the full models.
    std::vector<Vertex> liftMap(std::vector<Vertex> const& vertexMap, IHModel const& target) const;

private:
    FilteredComplex original_;
    std::optional<Subdivision> subdivision_;
    IntersectionChainComplex chains_;
    std::vector<HomologyBasis> ih_;
    std::vector<HomologyBasis> h_;
};

/// Matrix of the map induced on IH_d (or H_d when `ordinaryHomology`) by a
/// vertex map between the full models.  Columns are images of the source
/// generators in target generator coordinates.
Matrix inducedMatrix(IHModel const& source, IHModel const& target, std::vector<Vertex> const& fullMap, int d,
                     bool ordinaryHomology = false);

/// Per-degree matrices of f_*: IH(source) -> IH(target).  Throws NotPlacid
/// unless classifyMap reports placid.  Both complexes are subdivided together
/// when either needs it.
struct InducedMapIH
{
    std::vector<Matrix> matrices;
    int subdivisions = 0;
};

InducedMapIH inducedMapIH(std::vector<Vertex> const& vertexMap, FilteredComplex const& source,
                          FilteredComplex const& target, Perversity const& p);

/// Cycle and boundary spaces of ordinary simplicial homology in degree d.
HomologyBasis ordinaryHomologyBasis(SimplicialComplex const& k, int d);

} // namespace ihorbit

#endif // IHORBIT_IH_HPP
