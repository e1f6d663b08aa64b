// Filtered simplicial complexes, strata, perversities and the classification
// of simplicial maps between filtered complexes.

#ifndef IHORBIT_FILTERED_HPP
#define IHORBIT_FILTERED_HPP

#include <string>
#include <vector>

#include "ihorbit/complex.hpp"

namespace ihorbit
{

/// A complex with a filtration X_0 <= X_1 <= ... <= X_n = X by subcomplexes.
///
/// The filtration is stored as a level per simplex: level(s) is the least i
/// with s in X_i.  Levels never decrease from a face to a coface, and at
/// least one simplex sits at level n (so X_{n-1} != X).
class FilteredComplex
{
public:
    FilteredComplex() = default;

    /// levels[d][i] is the level of the i-th d-simplex.  Validates nesting.
    FilteredComplex(SimplicialComplex complex, int formalDim, std::vector<std::vector<int>> levels);

    SimplicialComplex const& complex() const { return complex_; }
    int formalDim() const { return formalDim_; }
    int level(int d, std::size_t idx) const { return levels_[static_cast<std::size_t>(d)][idx]; }
    std::vector<std::vector<int>> const& levels() const { return levels_; }

    /// Level of an arbitrary simplex given by sorted vertices (must be in K).
    int levelOf(std::span<Vertex const> s) const;

    /// Formal codimension n - level.
    int codim(int d, std::size_t idx) const { return formalDim_ - level(d, idx); }

    /// Does X_i contain the simplex?
    bool inSkeleton(int i, int d, std::size_t idx) const { return level(d, idx) <= i; }

    /// The subcomplex X_i as a list of maximal simplices (may be empty).
    std::vector<Simplex> subcomplex(int i) const;

private:
    SimplicialComplex complex_;
    int formalDim_ = 0;
    std::vector<std::vector<int>> levels_;
};

/// X_i = i-skeleton, formal dimension dim K.
FilteredComplex skeletalFiltration(SimplicialComplex const& k);

/// The one-step filtration X_{n-1} = empty, X_n = X, n = dim K.
FilteredComplex trivialFiltration(SimplicialComplex const& k);

/// Filtration given by explicit subcomplexes: `members[i]` lists simplices
/// (closed under faces after closure is taken) of X_i for i < formalDim.
FilteredComplex filtrationFromSubcomplexes(SimplicialComplex const& k, int formalDim,
                                           std::vector<std::vector<Simplex>> const& members);

/// Suspension filtration: (SX)_0 = poles and (SX)_i = S(X_{i-1}).  `suspended`
/// must be suspension(x.complex(), ...) whose two last vertex ids are the
/// apexes.
FilteredComplex suspensionFiltration(FilteredComplex const& x, SimplicialComplex const& suspended);

/// A connected component of X_i - X_{i-1}.
struct Stratum
{
    int formalDim = 0;
    int codim = 0;
    /// (dimension, index) pairs of the open simplices making up the stratum.
    std::vector<std::pair<int, std::size_t>> simplices;
};

struct StrataData
{
    std::vector<Stratum> strata;
    /// stratumOf[d][i] = index into strata of the open simplex (d, i).
    std::vector<std::vector<std::size_t>> stratumOf;
};

StrataData computeStrata(FilteredComplex const& x);

/// Goresky-MacPherson perversity, defined on codimensions 2..maxCodim().
class Perversity
{
public:
    Perversity() = default;

    /// values[k] is p(k + 2).  Throws InvalidPerversity if p(2) != 0 or the
    /// growth condition p(k) <= p(k+1) <= p(k)+1 fails.
    explicit Perversity(std::vector<int> values, std::string name = "custom");

    static Perversity lowerMiddle(int maxCodim);
    static Perversity upperMiddle(int maxCodim);
    static Perversity zero(int maxCodim);
    static Perversity top(int maxCodim);

    /// Parses "lower-middle", "upper-middle", "zero", "top" or a comma list of
    /// values starting at codimension 2.
    static Perversity parse(std::string const& spec, int maxCodim);

    int maxCodim() const { return static_cast<int>(values_.size()) + 1; }
    int operator()(int codim) const;
    std::string const& name() const { return name_; }

private:
    std::vector<int> values_;
    std::string name_;
};

struct MapClassification
{
    bool stratified = false;
    bool equidimensionallyStratified = false;
    bool cofiltered = false;
    bool placid = false;
    /// f_*: stratum index in source -> stratum index in target (when stratified).
    std::vector<std::size_t> stratumImage;
};

/// Checks the flags directly from the strata and filtrations.  Throws
/// NotSimplicial when the vertex map does not send simplices to simplices.
MapClassification classifyMap(std::vector<Vertex> const& vertexMap, FilteredComplex const& source,
                              FilteredComplex const& target);

/// Does the vertex map send every simplex of `source` to a simplex of `target`?
bool isSimplicialMap(std::vector<Vertex> const& vertexMap, SimplicialComplex const& source,
                     SimplicialComplex const& target);

} // namespace ihorbit

#endif // IHORBIT_FILTERED_HPP
