#include "ihorbit/filtered.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "ihorbit/errors.hpp"

namespace ihorbit
{

FilteredComplex::FilteredComplex(SimplicialComplex complex, int formalDim, std::vector<std::vector<int>> levels)
    : complex_(std::move(complex)), formalDim_(formalDim), levels_(std::move(levels))
{
    if (complex_.empty())
        throw Error(ErrorKind::EmptyComplex, "filtered complex needs a nonempty complex");
    if (levels_.size() != static_cast<std::size_t>(complex_.dim()) + 1)
        throw Error(ErrorKind::InvalidFiltration, "level table has wrong number of dimensions");
    bool top = false;
    for (int d = 0; d <= complex_.dim(); ++d)
    {
        auto const& lv = levels_[static_cast<std::size_t>(d)];
        if (lv.size() != complex_.count(d))
            throw Error(ErrorKind::InvalidFiltration, "level table size mismatch");
        for (std::size_t i = 0; i < lv.size(); ++i)
        {
            if (lv[i] < 0 || lv[i] > formalDim_)
                throw Error(ErrorKind::InvalidFiltration, "level outside 0..formal dimension");
            if (lv[i] == formalDim_)
                top = true;
            if (d > 0)
            {
                auto s = complex_.simplices(d)[i];
                std::vector<Vertex> face;
                for (std::size_t skip = 0; skip < s.size(); ++skip)
                {
                    face.clear();
                    for (std::size_t j = 0; j < s.size(); ++j)
                        if (j != skip)
                            face.push_back(s[j]);
                    auto f = complex_.simplices(d - 1).find(face);
                    if (levels_[static_cast<std::size_t>(d) - 1][static_cast<std::size_t>(f)] > lv[i])
                        throw Error(ErrorKind::InvalidFiltration, "filtration stages are not subcomplexes");
                }
            }
        }
    }
    if (!top)
        throw Error(ErrorKind::InvalidFiltration, "X_{n-1} must differ from X");
}

int FilteredComplex::levelOf(std::span<Vertex const> s) const
{
    auto idx = complex_.indexOf(s);
    if (idx < 0)
        throw Error(ErrorKind::NotASimplex, "simplex not in filtered complex");
    return level(static_cast<int>(s.size()) - 1, static_cast<std::size_t>(idx));
}

std::vector<Simplex> FilteredComplex::subcomplex(int i) const
{
    // maximal simplices of X_i: members none of whose cofaces are members
    std::vector<Simplex> out;
    for (int d = 0; d <= complex_.dim(); ++d)
    {
        auto const& cof = complex_.cofaceLists(d);
        for (std::size_t j = 0; j < complex_.count(d); ++j)
        {
            if (level(d, j) > i)
                continue;
            bool maximal = true;
            if (d < complex_.dim())
                for (auto c : cof[j])
                    if (level(d + 1, c) <= i)
                    {
                        maximal = false;
                        break;
                    }
            if (maximal)
                out.push_back(complex_.simplices(d).simplex(j));
        }
    }
    return out;
}

FilteredComplex skeletalFiltration(SimplicialComplex const& k)
{
    std::vector<std::vector<int>> levels;
    for (int d = 0; d <= k.dim(); ++d)
        levels.emplace_back(k.count(d), d);
    return FilteredComplex(k, k.dim(), std::move(levels));
}

FilteredComplex trivialFiltration(SimplicialComplex const& k)
{
    std::vector<std::vector<int>> levels;
    for (int d = 0; d <= k.dim(); ++d)
        levels.emplace_back(k.count(d), k.dim());
    return FilteredComplex(k, k.dim(), std::move(levels));
}

FilteredComplex filtrationFromSubcomplexes(SimplicialComplex const& k, int formalDim,
                                           std::vector<std::vector<Simplex>> const& members)
{
    std::vector<std::vector<int>> levels;
    for (int d = 0; d <= k.dim(); ++d)
        levels.emplace_back(k.count(d), formalDim);
    for (std::size_t i = 0; i < members.size() && static_cast<int>(i) < formalDim; ++i)
    {
        for (auto s : members[i])
        {
            std::sort(s.begin(), s.end());
            if (!k.contains(s))
                throw Error(ErrorKind::NotASimplex, "filtration member is not a simplex");
            // all faces of s enter at level <= i
            std::size_t n = s.size();
            std::vector<Vertex> face;
            for (std::uint32_t mask = 1; mask < (1u << n); ++mask)
            {
                face.clear();
                for (std::size_t j = 0; j < n; ++j)
                    if (mask & (1u << j))
                        face.push_back(s[j]);
                auto idx = k.indexOf(face);
                int& lv = levels[face.size() - 1][static_cast<std::size_t>(idx)];
                lv = std::min(lv, static_cast<int>(i));
            }
        }
    }
    return FilteredComplex(k, formalDim, std::move(levels));
}

FilteredComplex suspensionFiltration(FilteredComplex const& x, SimplicialComplex const& suspended)
{
    auto const& k = x.complex();
    if (suspended.numVertices() != k.numVertices() + 2 || suspended.dim() != k.dim() + 1)
        throw Error(ErrorKind::InvalidFiltration, "not the suspension of the filtered complex");
    Vertex north = static_cast<Vertex>(k.numVertices());
    std::vector<std::vector<int>> levels;
    for (int d = 0; d <= suspended.dim(); ++d)
    {
        std::vector<int> lv(suspended.count(d));
        for (std::size_t i = 0; i < lv.size(); ++i)
        {
            auto s = suspended.simplices(d)[i];
            std::vector<Vertex> base;
            for (Vertex v : s)
                if (v < north)
                    base.push_back(v);
            lv[i] = base.empty() ? 0 : x.levelOf(base) + 1;
        }
        levels.push_back(std::move(lv));
    }
    return FilteredComplex(suspended, x.formalDim() + 1, std::move(levels));
}

// ---------------------------------------------------------------------------

namespace
{

struct UnionFind
{
    std::vector<std::size_t> parent;
    explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    std::size_t find(std::size_t a)
    {
        while (parent[a] != a)
        {
            parent[a] = parent[parent[a]];
            a = parent[a];
        }
        return a;
    }
    void unite(std::size_t a, std::size_t b)
    {
        a = find(a);
        b = find(b);
        if (a != b)
            parent[std::max(a, b)] = std::min(a, b);
    }
};

} // namespace

StrataData computeStrata(FilteredComplex const& x)
{
    auto const& k = x.complex();
    std::vector<std::size_t> offset;
    std::size_t total = 0;
    for (int d = 0; d <= k.dim(); ++d)
    {
        offset.push_back(total);
        total += k.count(d);
    }
    UnionFind uf(total);
    for (int d = 0; d < k.dim(); ++d)
    {
        auto const& cof = k.cofaceLists(d);
        for (std::size_t i = 0; i < k.count(d); ++i)
            for (auto c : cof[i])
                if (x.level(d, i) == x.level(d + 1, c))
                    uf.unite(offset[static_cast<std::size_t>(d)] + i, offset[static_cast<std::size_t>(d) + 1] + c);
    }
    StrataData data;
    std::vector<std::size_t> rootToStratum(total, static_cast<std::size_t>(-1));
    data.stratumOf.resize(static_cast<std::size_t>(k.dim()) + 1);
    for (int d = 0; d <= k.dim(); ++d)
    {
        data.stratumOf[static_cast<std::size_t>(d)].resize(k.count(d));
        for (std::size_t i = 0; i < k.count(d); ++i)
        {
            std::size_t root = uf.find(offset[static_cast<std::size_t>(d)] + i);
            if (rootToStratum[root] == static_cast<std::size_t>(-1))
            {
                rootToStratum[root] = data.strata.size();
                Stratum s;
                s.formalDim = x.level(d, i);
                s.codim = x.formalDim() - s.formalDim;
                data.strata.push_back(std::move(s));
            }
            std::size_t sidx = rootToStratum[root];
            data.strata[sidx].simplices.emplace_back(d, i);
            data.stratumOf[static_cast<std::size_t>(d)][i] = sidx;
        }
    }
    return data;
}

// ---------------------------------------------------------------------------

Perversity::Perversity(std::vector<int> values, std::string name)
    : values_(std::move(values)), name_(std::move(name))
{
    if (!values_.empty() && values_[0] != 0)
        throw Error(ErrorKind::InvalidPerversity, "p(2) must be 0");
    for (std::size_t i = 1; i < values_.size(); ++i)
        if (values_[i] < values_[i - 1] || values_[i] > values_[i - 1] + 1)
            throw Error(ErrorKind::InvalidPerversity, "growth condition p(k) <= p(k+1) <= p(k)+1 violated");
}

Perversity Perversity::lowerMiddle(int maxCodim)
{
    std::vector<int> v;
    for (int k = 2; k <= maxCodim; ++k)
        v.push_back((k - 2) / 2);
    return Perversity(std::move(v), "lower-middle");
}

Perversity Perversity::upperMiddle(int maxCodim)
{
    std::vector<int> v;
    for (int k = 2; k <= maxCodim; ++k)
        v.push_back((k - 1) / 2);
    return Perversity(std::move(v), "upper-middle");
}

Perversity Perversity::zero(int maxCodim)
{
    std::vector<int> v;
    for (int k = 2; k <= maxCodim; ++k)
        v.push_back(0);
    return Perversity(std::move(v), "zero");
}

Perversity Perversity::top(int maxCodim)
{
    std::vector<int> v;
    for (int k = 2; k <= maxCodim; ++k)
        v.push_back(k - 2);
    return Perversity(std::move(v), "top");
}

Perversity Perversity::parse(std::string const& spec, int maxCodim)
{
    if (spec == "lower-middle" || spec == "m")
        return lowerMiddle(maxCodim);
    if (spec == "upper-middle" || spec == "n")
        return upperMiddle(maxCodim);
    if (spec == "zero")
        return zero(maxCodim);
    if (spec == "top")
        return top(maxCodim);
    std::vector<int> values;
    std::stringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ','))
    {
        try
        {
            values.push_back(std::stoi(item));
        }
        catch (std::exception const&)
        {
            throw Error(ErrorKind::InvalidPerversity, "cannot parse perversity '" + spec + "'");
        }
    }
    return Perversity(std::move(values), spec);
}

int Perversity::operator()(int codim) const
{
    if (codim < 2)
        return 0;
    if (codim > maxCodim())
        throw Error(ErrorKind::PerversityDomainError,
                    "perversity " + name_ + " undefined at codimension " + std::to_string(codim));
    return values_[static_cast<std::size_t>(codim - 2)];
}

// ---------------------------------------------------------------------------

bool isSimplicialMap(std::vector<Vertex> const& vertexMap, SimplicialComplex const& source,
                     SimplicialComplex const& target)
{
    if (vertexMap.size() != source.numVertices())
        return false;
    for (Vertex w : vertexMap)
        if (w < 0 || static_cast<std::size_t>(w) >= target.numVertices())
            return false;
    std::vector<Vertex> img;
    for (int d = 0; d <= source.dim(); ++d)
        for (std::size_t i = 0; i < source.count(d); ++i)
        {
            img.clear();
            for (Vertex v : source.simplices(d)[i])
                img.push_back(vertexMap[static_cast<std::size_t>(v)]);
            if (!target.containsSet(img))
                return false;
        }
    return true;
}

MapClassification classifyMap(std::vector<Vertex> const& vertexMap, FilteredComplex const& source,
                              FilteredComplex const& target)
{
    auto const& k = source.complex();
    auto const& l = target.complex();
    if (!isSimplicialMap(vertexMap, k, l))
        throw Error(ErrorKind::NotSimplicial, "vertex map is not simplicial");
    auto sStrata = computeStrata(source);
    auto tStrata = computeStrata(target);
    int n = source.formalDim();
    int m = target.formalDim();

    MapClassification c;
    c.stratified = true;
    c.equidimensionallyStratified = true;
    c.cofiltered = true;
    c.stratumImage.assign(sStrata.strata.size(), static_cast<std::size_t>(-1));
    std::vector<Vertex> img;
    for (int d = 0; d <= k.dim(); ++d)
        for (std::size_t i = 0; i < k.count(d); ++i)
        {
            img.clear();
            for (Vertex v : k.simplices(d)[i])
                img.push_back(vertexMap[static_cast<std::size_t>(v)]);
            std::sort(img.begin(), img.end());
            img.erase(std::unique(img.begin(), img.end()), img.end());
            int e = static_cast<int>(img.size()) - 1;
            auto j = static_cast<std::size_t>(l.indexOf(img));
            // the open simplex maps onto the open simplex spanned by the image
            std::size_t s = sStrata.stratumOf[static_cast<std::size_t>(d)][i];
            std::size_t t = tStrata.stratumOf[static_cast<std::size_t>(e)][j];
            if (c.stratumImage[s] == static_cast<std::size_t>(-1))
                c.stratumImage[s] = t;
            else if (c.stratumImage[s] != t)
                c.stratified = false;
            int levelX = source.level(d, i);
            int levelY = target.level(e, j);
            if (levelX != levelY)
                c.equidimensionallyStratified = false;
            // f^{-1}(Y^k) in X^k for all k >= 0  <=>  codim_X >= codim_Y pointwise
            if (n - levelX < m - levelY)
                c.cofiltered = false;
        }
    if (!c.stratified)
    {
        c.equidimensionallyStratified = false;
        c.placid = false;
        c.stratumImage.clear();
        return c;
    }
    c.placid = true;
    for (std::size_t s = 0; s < sStrata.strata.size(); ++s)
        if (tStrata.strata[c.stratumImage[s]].codim > sStrata.strata[s].codim)
            c.placid = false;
    return c;
}

} // namespace ihorbit
