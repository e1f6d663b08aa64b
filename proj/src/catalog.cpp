#include "ihorbit/catalog.hpp"

#include <numeric>

#include "ihorbit/errors.hpp"
#include "ihorbit/io.hpp"
#include "ihorbit/signatures.hpp"

#ifndef IHORBIT_ASSET_DIR
#define IHORBIT_ASSET_DIR "assets"
#endif

namespace ihorbit
{

namespace
{

int param(std::vector<int> const& p, std::size_t i, int fallback)
{
    return i < p.size() ? p[i] : fallback;
}

SimplicialComplex circle(int n)
{
    std::vector<std::vector<Vertex>> edges;
    for (int i = 0; i < n; ++i)
        edges.push_back({i, (i + 1) % n});
    return SimplicialComplex::fromMaximal(edges);
}

SimplicialComplex s2xs2()
{
    auto s2 = boundaryOfSimplex(2);
    std::vector<Vertex> order{0, 1, 2, 3};
    return productComplex(s2, s2, order, order);
}

Orientation productOrientation(SimplicialComplex const& k, Orientation o);

Orientation s2xs2Orientation()
{
    auto k = s2xs2();
    return productOrientation(k, *fundamentalClass(k).orientation);
}

SimplicialComplex torus2()
{
    auto c = boundaryOfSimplex(1);
    std::vector<Vertex> order{0, 1, 2};
    return productComplex(c, c, order, order);
}

SimplicialComplex rp2()
{
    return SimplicialComplex::fromMaximal({{0, 1, 3}, {0, 1, 5}, {0, 2, 4}, {0, 2, 5}, {0, 3, 4},
                                           {1, 2, 3}, {1, 2, 4}, {1, 4, 5}, {2, 3, 5}, {3, 4, 5}});
}

// Flips o to the product orientation of staircase S^2 x S^2: the one with
// <p1*u cup p2*u, [X]> = +1 for u dual to the face {0,1,2} of each factor.
Orientation productOrientation(SimplicialComplex const& k, Orientation o)
{
    long long pairing = 0;
    for (std::size_t t = 0; t < k.count(4); ++t)
    {
        auto s = k.simplices(4)[t];
        bool front = s[0] / 4 == 0 && s[1] / 4 == 1 && s[2] / 4 == 2;
        bool back = s[2] % 4 == 0 && s[3] % 4 == 1 && s[4] % 4 == 2;
        if (front && back)
            pairing += o.topSigns[t];
    }
    if (pairing == 0)
        throw Error(ErrorKind::InternalError, "product pairing vanishes");
    if (pairing < 0)
        for (int& x : o.topSigns)
            x = -x;
    return o;
}

CatalogItem finish(CatalogItem item)
{
    if (!item.orientation)
        item.orientation = orientationOf(item.complex);
    if (item.action)
        item.free = isFree(*item.action);
    return item;
}

CatalogItem loadCp2()
{
    auto in = parseScxFile(assetDirectory() + "/cp2.scx");
    CatalogItem item;
    item.name = "cp2";
    item.description = "CP^2 triangulation (asset), oriented so that the signature is +1";
    item.complex = std::move(in.complex);
    auto o = orientationOf(item.complex);
    if (!o)
        throw Error(ErrorKind::InternalError, "CP^2 asset is not orientable");
    if (signatureExact(cupFormMiddle(item.complex, *o).b) < 0)
        for (int& s : o->topSigns)
            s = -s;
    item.orientation = o;
    return item;
}

// Orientation of n disjoint copies of k, copying the signs of k.
Orientation copiesOrientation(Orientation const& o, SimplicialComplex const& k, SimplicialComplex const& copies)
{
    Orientation out;
    out.dim = o.dim;
    out.topSigns.assign(copies.count(o.dim), 0);
    std::size_t nv = k.numVertices();
    for (std::size_t i = 0; i < copies.count(o.dim); ++i)
    {
        auto s = copies.simplices(o.dim).simplex(i);
        auto shift = static_cast<Vertex>(static_cast<std::size_t>(s[0]) / nv * nv);
        for (auto& v : s)
            v -= shift;
        out.topSigns[i] = o.topSigns[static_cast<std::size_t>(k.indexOf(s))];
    }
    return out;
}

} // namespace

std::string assetDirectory()
{
    return IHORBIT_ASSET_DIR;
}

SimplicialComplex gridTorus(int n)
{
    if (n < 3)
        throw Error(ErrorKind::OutOfRange, "grid torus needs n >= 3");
    auto id = [n](int i, int j) { return static_cast<Vertex>(((i % n + n) % n) * n + (j % n + n) % n); };
    std::vector<std::vector<Vertex>> tris;
    std::vector<std::string> labels(static_cast<std::size_t>(n * n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
        {
            labels[static_cast<std::size_t>(id(i, j))] = "(" + std::to_string(i) + "," + std::to_string(j) + ")";
            tris.push_back({id(i, j), id(i + 1, j), id(i + 1, j + 1)});
            tris.push_back({id(i, j), id(i, j + 1), id(i + 1, j + 1)});
        }
    return SimplicialComplex::fromMaximal(tris, labels);
}

std::optional<Orientation> orientationOf(SimplicialComplex const& k)
{
    if (k.empty() || !checkPseudomanifold(k).ok())
        return std::nullopt;
    return fundamentalClass(k).orientation;
}

GroupAction copiesAction(SimplicialComplex const& k, FiniteGroup group, std::map<int, std::vector<int>> const& copyPerm)
{
    std::size_t copies = copyPerm.empty() ? 1 : copyPerm.begin()->second.size();
    auto all = disjointUnion(std::vector<SimplicialComplex>(copies, k));
    std::size_t nv = k.numVertices();
    std::map<int, std::vector<Vertex>> gens;
    for (auto const& [g, p] : copyPerm)
    {
        if (p.size() != copies)
            throw Error(ErrorKind::OutOfRange, "copy permutations must have a common length");
        std::vector<Vertex> perm(all.numVertices());
        for (std::size_t c = 0; c < copies; ++c)
            for (std::size_t v = 0; v < nv; ++v)
                perm[c * nv + v] = static_cast<Vertex>(static_cast<std::size_t>(p[c]) * nv + v);
        gens[g] = std::move(perm);
    }
    return validateAction(std::move(group), std::move(all), gens);
}

CatalogItem suspendItem(CatalogItem const& item, int times)
{
    if (times < 0)
        throw Error(ErrorKind::OutOfRange, "suspension count must be non-negative");
    CatalogItem out = item;
    for (int s = 0; s < times; ++s)
    {
        auto k = suspension(out.complex, "N" + std::to_string(s + 1), "S" + std::to_string(s + 1));
        if (out.action)
        {
            auto const& a = *out.action;
            std::map<int, std::vector<Vertex>> gens;
            for (int g = 0; g < a.group.order(); ++g)
            {
                auto p = a.perm[static_cast<std::size_t>(g)];
                p.push_back(static_cast<Vertex>(p.size()));
                p.push_back(static_cast<Vertex>(p.size()));
                gens[g] = std::move(p);
            }
            out.action = validateAction(a.group, k, gens);
        }
        out.complex = std::move(k);
    }
    if (times > 0)
    {
        out.name = "suspend" + std::to_string(times) + "-" + item.name;
        out.description = "suspension^" + std::to_string(times) + " of " + item.description;
        out.orientation.reset();
    }
    return finish(std::move(out));
}

std::vector<CatalogEntry> catalogEntries()
{
    return {
        {"sphere", "n (default 2)", "boundary of the (n+1)-simplex"},
        {"torus", "", "staircase T^2 = S^1 x S^1 (9 vertices)"},
        {"torus4", "", "staircase T^4 = T^2 x T^2"},
        {"rp2", "", "6-vertex real projective plane"},
        {"s2xs2", "", "staircase S^2 x S^2"},
        {"s2xs2-swap", "", "S^2 x S^2 with Z/2 swapping the factors"},
        {"s2xs2-copies", "", "Z/2 swapping two copies of S^2 x S^2 (free)"},
        {"s2xs2-cycle3", "", "Z/3 cycling three copies of S^2 x S^2 (free)"},
        {"cp2", "", "CP^2 triangulation asset, trivial group"},
        {"cp2-s3", "", "S_3 permuting three copies of CP^2"},
        {"octahedron-rot", "", "octahedron with Z/4 rotating about an axis"},
        {"triangles-swap", "", "Z/2 swapping two disjoint triangles (free)"},
        {"circle-halfturn", "n (default 8)", "free half-turn on an n-gon"},
        {"torus-shift", "n (default 3)", "Z/n translating the n x n grid torus (free)"},
        {"torus-rot6", "n (default 3)", "Z/6 acting on the n x n grid torus by (i,j) -> (i-j, i)"},
        {"suspension-torus", "", "suspension of the staircase torus (not Witt)"},
        {"suspension-s2", "", "suspension of the 2-sphere"},
    };
}

CatalogItem catalogItem(std::string const& name, std::vector<int> const& params)
{
    CatalogItem item;
    item.name = name;
    for (auto const& e : catalogEntries())
        if (e.name == name)
            item.description = e.description;
    if (name == "sphere")
    {
        int n = param(params, 0, 2);
        if (n < 0 || n > 8)
            throw Error(ErrorKind::OutOfRange, "sphere dimension must be in 0..8");
        item.complex = boundaryOfSimplex(n);
        item.name = "sphere" + std::to_string(n);
    }
    else if (name == "torus")
        item.complex = torus2();
    else if (name == "torus4")
    {
        auto t = torus2();
        std::vector<Vertex> order(t.numVertices());
        std::iota(order.begin(), order.end(), 0);
        item.complex = productComplex(t, t, order, order);
    }
    else if (name == "rp2")
        item.complex = rp2();
    else if (name == "s2xs2")
    {
        item.complex = s2xs2();
        item.orientation = s2xs2Orientation();
    }
    else if (name == "s2xs2-swap")
    {
        auto k = s2xs2();
        std::vector<Vertex> swap(16);
        for (int u = 0; u < 4; ++u)
            for (int v = 0; v < 4; ++v)
                swap[static_cast<std::size_t>(u * 4 + v)] = v * 4 + u;
        item.complex = k;
        item.action = validateAction(FiniteGroup::cyclic(2), k, {{1, swap}});
        item.orientation = s2xs2Orientation();
    }
    else if (name == "s2xs2-copies")
    {
        item.action = copiesAction(s2xs2(), FiniteGroup::cyclic(2), {{1, {1, 0}}});
        item.complex = item.action->complex;
        item.orientation = copiesOrientation(s2xs2Orientation(), s2xs2(), item.complex);
    }
    else if (name == "s2xs2-cycle3")
    {
        item.action = copiesAction(s2xs2(), FiniteGroup::cyclic(3), {{1, {1, 2, 0}}});
        item.complex = item.action->complex;
        item.orientation = copiesOrientation(s2xs2Orientation(), s2xs2(), item.complex);
    }
    else if (name == "cp2")
    {
        item = loadCp2();
        item.action = validateAction(FiniteGroup::trivial(), item.complex, {});
    }
    else if (name == "cp2-s3")
    {
        auto cp2 = loadCp2();
        auto s3 = FiniteGroup::symmetric(3);
        std::map<int, std::vector<int>> perms;
        for (int g = 0; g < s3.order(); ++g)
        {
            std::vector<int> p;
            for (char c : s3.label(g))
                p.push_back(c - '0');
            perms[g] = p;
        }
        item.action = copiesAction(cp2.complex, s3, perms);
        item.complex = item.action->complex;
        item.orientation = copiesOrientation(*cp2.orientation, cp2.complex, item.complex);
    }
    else if (name == "octahedron-rot")
    {
        auto k = suspension(circle(4));
        item.complex = k;
        item.action = validateAction(FiniteGroup::cyclic(4), k, {{1, {1, 2, 3, 0, 4, 5}}});
    }
    else if (name == "triangles-swap")
    {
        item.action = copiesAction(boundaryOfSimplex(1), FiniteGroup::cyclic(2), {{1, {1, 0}}});
        item.complex = item.action->complex;
    }
    else if (name == "circle-halfturn")
    {
        int n = param(params, 0, 8);
        if (n < 4 || n % 2 != 0)
            throw Error(ErrorKind::OutOfRange, "half-turn needs an even n >= 4");
        auto k = circle(n);
        std::vector<Vertex> p(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i)
            p[static_cast<std::size_t>(i)] = (i + n / 2) % n;
        item.complex = k;
        item.action = validateAction(FiniteGroup::cyclic(2), k, {{1, p}});
    }
    else if (name == "torus-shift" || name == "torus-rot6")
    {
        int n = param(params, 0, 3);
        auto k = gridTorus(n);
        std::vector<Vertex> p(static_cast<std::size_t>(n * n));
        int order = name == "torus-shift" ? n : 6;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
            {
                int ti = name == "torus-shift" ? i + 1 : i - j;
                int tj = name == "torus-shift" ? j : i;
                p[static_cast<std::size_t>(i * n + j)] = ((ti % n + n) % n) * n + (tj % n + n) % n;
            }
        item.complex = k;
        item.action = validateAction(FiniteGroup::cyclic(order), k, {{1, p}});
    }
    else if (name == "suspension-torus" || name == "suspension-s2")
    {
        item.complex = suspension(name == "suspension-torus" ? torus2() : boundaryOfSimplex(2));
    }
    else
        throw Error(ErrorKind::OutOfRange, "unknown catalog example '" + name + "'");
    return finish(std::move(item));
}

std::vector<CatalogItem> catalogActions()
{
    std::vector<CatalogItem> out;
    for (auto const& e : catalogEntries())
    {
        auto item = catalogItem(e.name);
        if (item.action)
            out.push_back(std::move(item));
    }
    return out;
}

} // namespace ihorbit
