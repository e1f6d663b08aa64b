// Finite groups acting on simplicial complexes by vertex permutations:
// validation, regularity, regularisation by subdivision, orbit complexes,
// pseudomanifold checks and fibres of the orbit projection.

#ifndef IHORBIT_GROUP_HPP
#define IHORBIT_GROUP_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ihorbit/chains.hpp"
#include "ihorbit/complex.hpp"

namespace ihorbit
{

/// A finite group given by its multiplication table.  Elements are 0..n-1.
class FiniteGroup
{
public:
    FiniteGroup() : FiniteGroup(trivial()) {}

    /// table[a][b] = a*b.  Throws BadGroup unless the table defines a group.
    FiniteGroup(std::vector<std::string> labels, std::vector<std::vector<int>> table);

    static FiniteGroup trivial();
    /// Z/k with elements "0".."k-1" and identity "0".
    static FiniteGroup cyclic(int k);
    /// S_n acting on {0..n-1}; labels are one-line notation ("102" swaps 0,1).
    static FiniteGroup symmetric(int n);

    int order() const { return static_cast<int>(labels_.size()); }
    int identity() const { return identity_; }
    int mul(int a, int b) const { return table_[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)]; }
    int inverse(int a) const { return inverse_[static_cast<std::size_t>(a)]; }
    int elementOrder(int a) const;
    std::string const& label(int a) const { return labels_.at(static_cast<std::size_t>(a)); }
    std::vector<std::string> const& labels() const { return labels_; }
    std::optional<int> find(std::string const& label) const;
    std::vector<std::vector<int>> const& table() const { return table_; }

    /// Every subgroup, as sorted element lists (trivial subgroup first).
    std::vector<std::vector<int>> subgroups() const;
    std::vector<std::vector<int>> conjugacyClasses() const;

private:
    std::vector<std::string> labels_;
    std::vector<std::vector<int>> table_;
    std::vector<int> inverse_;
    int identity_ = 0;
};

/// A validated action: perm[g][v] is the image of vertex v under g, with
/// perm(gh) = perm(g) o perm(h).
struct GroupAction
{
    FiniteGroup group;
    SimplicialComplex complex;
    std::vector<std::vector<Vertex>> perm;

    /// Sorted image of a simplex.
    Simplex apply(int g, std::span<Vertex const> s) const;
};

/// Extends generator permutations to the whole group by composition and
/// checks every element is a simplicial automorphism.  Throws BadGroup when
/// the generators do not generate or contradict the table, BadElement for an
/// unknown element, NotSimplicialAction when a simplex is not sent to a
/// simplex.
GroupAction validateAction(FiniteGroup group, SimplicialComplex complex,
                           std::map<int, std::vector<Vertex>> const& generators);

/// Induced action on the barycentric subdivision.
GroupAction subdivideAction(GroupAction const& action, Subdivision const& sd);

/// A witness against regularity.
struct RegularityReport
{
    bool regular = true;
    /// False when the search bound was exceeded and nothing was decided.
    bool decided = true;
    std::vector<int> subgroup;
    Simplex simplex;
    std::vector<int> elements;  // g_i, one per vertex of `simplex`
    std::string reason;
};

/// Regularity: (a) v and gv in a common simplex forces gv = v; (b) for every
/// subgroup H, simplex (v_i) and g_i in H with {g_i v_i} a simplex there is a
/// single g in H with g v_i = g_i v_i.  Brute force, limited to |G| <= 16 and
/// at most 1e5 simplices.
RegularityReport checkRegular(GroupAction const& action);
bool isRegular(GroupAction const& action);

struct Regularized
{
    GroupAction action;
    int subdivisions = 0;
    /// Regularity was confirmed by the predicate (not assumed from two
    /// subdivisions beyond the search bound).
    bool verified = true;
};

/// Subdivides 0, 1 or 2 times until the action is regular.  Throws NotRegular
/// when maxSubdivisions is reached first (with maxSubdivisions < 2) and
/// InternalError when two subdivisions do not suffice, BudgetExceeded when a
/// subdivision would exceed `budget` simplices.
Regularized regularize(GroupAction const& action, int maxSubdivisions = 2, std::size_t budget = 2000000);

struct OrbitComplexData
{
    SimplicialComplex quotient;
    std::vector<Vertex> projection;  // source vertex -> orbit
    std::vector<std::vector<Vertex>> orbits;
    int groupOrder = 1;
};

/// Vertices are orbits, simplices are images.  Throws NotRegular when the
/// action is not regular.
OrbitComplexData orbitComplex(GroupAction const& action);

struct PseudomanifoldReport
{
    int dim = 0;
    bool pm1 = false;
    bool pm2 = false;
    std::vector<Simplex> pm1Violations;
    std::vector<Simplex> pm2Violations;
    bool orientable = false;
    std::optional<Orientation> orientation;
    Simplex orientationConflict;
    bool ok() const { return pm1 && pm2 && orientable; }
};

PseudomanifoldReport checkPseudomanifold(SimplicialComplex const& k);

/// Orientation of the orbit complex induced by an orientation-preserving
/// action: the sign of each top simplex in the push-forward of [X].  Throws
/// NotOriented when the push-forward is not a fundamental cycle.
Orientation orbitOrientation(GroupAction const& action, OrbitComplexData const& orbit,
                             Orientation const& orientation);

/// Source simplices whose open interiors map onto the open simplex delta.
std::vector<Simplex> preimageOpenSimplex(OrbitComplexData const& orbit, SimplicialComplex const& source,
                                         Simplex const& delta);

/// Simplices pointwise fixed by g.  Throws BadElement for an unknown element.
SimplicialComplex fixedSubcomplex(GroupAction const& action, int g);

/// Number of group elements fixing every vertex of s.
int stabilizerOrder(GroupAction const& action, std::span<Vertex const> s);

/// No element other than the identity has a fixed point in |K|.
bool isFree(GroupAction const& action);

/// Does each element send the fundamental cycle to itself?  Throws
/// NotOriented when the orientation does not belong to the complex.
std::vector<bool> isOrientationPreserving(GroupAction const& action, Orientation const& orientation);

/// Image of a chain under g, in the simplex basis.
SparseVec actOnChain(GroupAction const& action, int g, int d, SparseVec const& chain);

} // namespace ihorbit

#endif // IHORBIT_GROUP_HPP
