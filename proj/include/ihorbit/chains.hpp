// Simplicial chains, boundary operators, chain maps, homology and orientation.

#ifndef IHORBIT_CHAINS_HPP
#define IHORBIT_CHAINS_HPP

#include <optional>
#include <vector>

#include <gmpxx.h>

#include "ihorbit/complex.hpp"
#include "ihorbit/linalg.hpp"

namespace ihorbit
{

enum class Ring
{
    Integers,
    Rationals,
};

/// A chain of a fixed degree: sparse coefficients indexed by the position of
/// each (sorted) simplex in its dimension table.  Orientation of a simplex is
/// the one given by increasing vertex ids.
struct OrientedChain
{
    int degree = 0;
    SparseVec terms;
};

/// Boundary of the idx-th simplex of dimension d, as a chain of degree d-1.
SparseVec boundaryColumn(SimplicialComplex const& k, int d, std::size_t idx);

/// Boundary of an arbitrary chain.
SparseVec boundary(SimplicialComplex const& k, int d, SparseVec const& chain);

/// Chain-level boundary matrices with explicit simplex bases.
struct ChainComplexData
{
    /// bases[d] lists the simplices of dimension d in basis order.
    std::vector<std::vector<Simplex>> bases;
    /// boundaryMatrices[d] has one sparse column per d-simplex, indices into
    /// bases[d-1]; boundaryMatrices[0] is empty.
    std::vector<std::vector<SparseVec>> boundaryMatrices;
};

ChainComplexData chainComplex(SimplicialComplex const& k);

/// True when every composite boundary vanishes.
bool boundarySquaresToZero(ChainComplexData const& c);

/// Image of one simplex under a vertex map, as (index in target, sign).  The
/// sign is 0 when the image is degenerate (a repeated vertex).  Throws
/// NotSimplicial when the image vertex set is not a simplex of the target.
struct SimplexImage
{
    std::int64_t index = -1;
    int sign = 0;
};

SimplexImage imageOf(std::span<Vertex const> sigma, std::vector<Vertex> const& vertexMap,
                     SimplicialComplex const& target);

/// Push a degree-d chain forward along a simplicial vertex map.
SparseVec pushForward(SimplicialComplex const& source, SimplicialComplex const& target,
                      std::vector<Vertex> const& vertexMap, int d, SparseVec const& chain);

struct HomologyGroup
{
    int betti = 0;
    std::vector<mpz_class> torsion;  // invariant factors > 1
};

/// Homology of K in degrees 0..dim K.
std::vector<HomologyGroup> homology(SimplicialComplex const& k, Ring ring);

/// Rational Betti numbers only (fast path: ranks with clearing).
std::vector<int> bettiNumbers(SimplicialComplex const& k);

/// Nontrivial invariant factors (> 1) of an integer matrix given by sparse
/// columns, together with its rank.
struct SmithResult
{
    std::size_t rank = 0;
    std::vector<mpz_class> torsion;
};

SmithResult smithNormalForm(std::vector<SparseVec> columns, std::size_t rows);

/// Coherent signs on the top simplices of a pseudomanifold.
struct Orientation
{
    int dim = 0;
    std::vector<int> topSigns;  // indexed like k.simplices(dim)

    /// The fundamental cycle sum(sign * top simplex).
    SparseVec cycle() const;
};

struct OrientationResult
{
    std::optional<Orientation> orientation;
    /// When propagation fails: a codimension-one face at which two incoherent
    /// signs met.
    Simplex conflict;
};

/// Propagates an orientation across codimension-one faces.  Throws
/// NotPseudomanifold when K is not pure or some (n-1)-simplex does not have
/// exactly two cofaces.
OrientationResult fundamentalClass(SimplicialComplex const& k);

/// The orientation of bsd(K) for which the subdivision chain map sends the
/// fundamental cycle of K to that of bsd(K).
Orientation subdivideOrientation(Orientation const& o, Subdivision const& sd);

/// Homology with explicit generators: a basis of cycle representatives for
/// Z / B and a coordinate map from cycles to that basis.  Used for induced
/// maps, transfers and the canonical map from intersection homology.
class HomologyBasis
{
public:
    HomologyBasis() = default;

    /// `cycles` spans the cycle space; `boundaries` spans the boundary space
    /// (both as chains in simplex coordinates of the same degree).
    HomologyBasis(std::vector<SparseVec> const& cycles, std::vector<SparseVec> const& boundaries);

    std::size_t dimension() const { return generators_.size(); }
    std::vector<SparseVec> const& generators() const { return generators_; }

    /// Coordinates of a cycle's class; nullopt if the chain is not in Z.
    std::optional<std::vector<Rational>> coordinates(SparseVec const& cycle) const;

private:
    EchelonBasis echelon_;
    std::vector<SparseVec> generators_;
};

} // namespace ihorbit

#endif // IHORBIT_CHAINS_HPP
