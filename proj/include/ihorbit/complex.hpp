// Finite abstract simplicial complexes and the standard constructions on them.

#ifndef IHORBIT_COMPLEX_HPP
#define IHORBIT_COMPLEX_HPP

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

namespace ihorbit
{

using Vertex = std::int32_t;

/// A simplex as a strictly increasing list of vertex ids.
using Simplex = std::vector<Vertex>;

/// Sign of the permutation that sorts `tuple` (+1 / -1), or 0 if the tuple has
/// a repeated vertex.
int permutationSign(std::vector<Vertex> const& tuple);

/// Sorts `tuple` in place and returns the sign of the sorting permutation
/// (0 when a vertex repeats; the tuple is then left sorted with duplicates).
int sortWithSign(std::vector<Vertex>& tuple);

/// All simplices of one dimension, stored contiguously with a hash index.
class SimplexTable
{
public:
    explicit SimplexTable(int dim = 0) : dim_(dim) {}

    int dim() const { return dim_; }
    std::size_t size() const { return count_; }

    std::span<Vertex const> operator[](std::size_t i) const
    {
        return {verts_.data() + i * width(), width()};
    }

    Simplex simplex(std::size_t i) const
    {
        auto s = (*this)[i];
        return Simplex(s.begin(), s.end());
    }

    /// Index of a sorted simplex, or -1.
    std::int64_t find(std::span<Vertex const> s) const;

    /// Inserts a sorted simplex; returns its index.
    std::size_t insert(std::span<Vertex const> s);

    /// Sorts lexicographically and rebuilds the index.
    void finalize();

private:
    std::size_t width() const { return static_cast<std::size_t>(dim_) + 1; }
    std::uint64_t hash(std::span<Vertex const> s) const;
    void rehash(std::size_t buckets);

    int dim_;
    std::size_t count_ = 0;
    std::vector<Vertex> verts_;
    std::vector<std::int64_t> slots_;
};

/// Finite abstract simplicial complex, closed under faces.  Vertex ids are
/// dense (0..numVertices-1) and every vertex carries a stable string label.
/// Simplices of each dimension are sorted lexicographically, which fixes the
/// basis order of every chain group.
class SimplicialComplex
{
public:
    SimplicialComplex() = default;

    /// Downward closure of the given simplices (vertex ids, any order).
    /// Labels default to the decimal vertex ids.
    static SimplicialComplex fromMaximal(std::vector<std::vector<Vertex>> const& maximal,
                                         std::vector<std::string> labels = {});

    /// Same, with vertices given by label.
    static SimplicialComplex fromLabelled(std::vector<std::vector<std::string>> const& maximal);

    bool empty() const { return tables_.empty(); }
    int dim() const { return static_cast<int>(tables_.size()) - 1; }
    std::size_t numVertices() const { return labels_.size(); }
    std::size_t count(int d) const;
    std::size_t totalSimplices() const;

    SimplexTable const& simplices(int d) const { return tables_.at(static_cast<std::size_t>(d)); }

    /// Index of a sorted simplex within its dimension, or -1.
    std::int64_t indexOf(std::span<Vertex const> s) const;
    bool contains(std::span<Vertex const> s) const { return indexOf(s) >= 0; }
    /// Accepts an unsorted tuple.
    bool containsSet(std::vector<Vertex> s) const;

    std::string const& label(Vertex v) const { return labels_.at(static_cast<std::size_t>(v)); }
    std::vector<std::string> const& labels() const { return labels_; }
    std::optional<Vertex> vertexByLabel(std::string const& label) const;

    /// Simplices not contained in any larger simplex, by dimension then lex.
    std::vector<Simplex> maximalSimplices() const;

    /// Simplices whose vertex sets contain sigma (cofaces of all dimensions),
    /// including sigma itself.
    std::vector<Simplex> star(Simplex const& sigma) const;

    /// Codimension-one cofaces of an indexed simplex.
    std::vector<std::size_t> cofaces(int d, std::size_t idx) const;

    /// Cofaces of every simplex in dimension d (index lists into dimension
    /// d+1).  Computed on first use.
    std::vector<std::vector<std::size_t>> const& cofaceLists(int d) const;

    /// Structural equality (same labels, same simplices).
    friend bool operator==(SimplicialComplex const& a, SimplicialComplex const& b);

    /// f-vector (count per dimension).
    std::vector<std::size_t> fVector() const;
    long long eulerCharacteristic() const;

    /// Is every simplex a face of a top-dimensional one?
    bool isPure() const;

private:
    friend class ComplexBuilder;

    std::vector<SimplexTable> tables_;
    std::vector<std::string> labels_;
    std::unordered_map<std::string, Vertex> labelIndex_;
    struct CofaceCache;
    std::shared_ptr<CofaceCache> cofaceCache_;
};

/// Incremental construction of a complex by inserting simplices with all their
/// faces.
class ComplexBuilder
{
public:
    explicit ComplexBuilder(std::vector<std::string> labels);

    /// Inserts the simplex spanned by the given vertices and all of its faces.
    void addClosed(std::vector<Vertex> simplex);

    /// Inserts exactly one (sorted) simplex; the caller guarantees closure.
    void addSimplex(std::span<Vertex const> sorted);

    SimplicialComplex build() &&;

private:
    std::vector<std::string> labels_;
    std::vector<SimplexTable> tables_;
};

/// Result of a barycentric subdivision: the subdivided complex together with,
/// for each new vertex, the simplex of the original complex it stands for.
struct Subdivision
{
    SimplicialComplex complex;
    std::vector<Simplex> carrier;  // carrier[v] = original simplex of bsd vertex v
    /// bsd vertex id of an original simplex (dimension, index) pair.
    std::vector<std::vector<Vertex>> vertexOf;
};

/// Link of sigma: simplices disjoint from sigma whose union with sigma is in K.
/// Vertex labels are inherited.  Throws NotASimplex when sigma is not in K.
/// Returns an empty complex when sigma is maximal.
SimplicialComplex link(SimplicialComplex const& k, Simplex const& sigma);

Subdivision barycentricSubdivision(SimplicialComplex const& k);

/// Simplex count of the barycentric subdivision, without building it
/// (SIZE_MAX past dimension 7).
std::size_t barycentricSize(SimplicialComplex const& k);

/// Staircase triangulation of |K| x |L| with respect to total vertex orders
/// (orders list every vertex exactly once, smallest first).
SimplicialComplex productComplex(SimplicialComplex const& k, SimplicialComplex const& l,
                                 std::vector<Vertex> const& orderK,
                                 std::vector<Vertex> const& orderL);

/// Join with two new apex vertices.  The apexes get the two highest ids and
/// labels derived from `north` / `south` (made unique if needed).
SimplicialComplex suspension(SimplicialComplex const& k, std::string north = "N",
                             std::string south = "S");

/// Disjoint union; labels of the i-th summand are suffixed with ".i" when
/// `tagLabels` is set.
SimplicialComplex disjointUnion(std::vector<SimplicialComplex> const& parts, bool tagLabels = true);

/// Boundary of the (n+1)-simplex, an n-sphere with n+2 vertices labelled 0..n+1.
SimplicialComplex boundaryOfSimplex(int n);

} // namespace ihorbit

#endif // IHORBIT_COMPLEX_HPP
