// Regenerates assets/cp2.scx: the orbit space of the factor swap on S^2 x S^2
// (which is CP^2), shrunk by edge contractions satisfying the link condition.
//
//   make_cp2 <output.scx>

#include <algorithm>
#include <iostream>
#include <map>
#include <set>

#include "ihorbit/catalog.hpp"
#include "ihorbit/chains.hpp"
#include "ihorbit/errors.hpp"
#include "ihorbit/io.hpp"

using namespace ihorbit;

namespace
{

using Facets = std::set<Simplex>;

std::set<Simplex> linkOf(Facets const& facets, Simplex const& s)
{
    std::set<Simplex> out;
    for (auto const& f : facets)
    {
        if (!std::includes(f.begin(), f.end(), s.begin(), s.end()))
            continue;
        Simplex rest;
        std::set_difference(f.begin(), f.end(), s.begin(), s.end(), std::back_inserter(rest));
        auto n = rest.size();
        for (unsigned mask = 0; mask < (1u << n); ++mask)
        {
            Simplex t;
            for (std::size_t i = 0; i < n; ++i)
                if (mask & (1u << i))
                    t.push_back(rest[i]);
            out.insert(t);
        }
    }
    return out;
}

bool contractible(Facets const& facets, Vertex a, Vertex b)
{
    auto la = linkOf(facets, {a});
    auto lb = linkOf(facets, {b});
    std::set<Simplex> both;
    std::set_intersection(la.begin(), la.end(), lb.begin(), lb.end(), std::inserter(both, both.end()));
    return both == linkOf(facets, {std::min(a, b), std::max(a, b)});
}

Facets contract(Facets const& facets, Vertex a, Vertex b)
{
    Facets out;
    for (auto const& f : facets)
    {
        bool hasA = std::binary_search(f.begin(), f.end(), a);
        bool hasB = std::binary_search(f.begin(), f.end(), b);
        if (hasA && hasB)
            continue;
        if (!hasB)
        {
            out.insert(f);
            continue;
        }
        Simplex g = f;
        std::replace(g.begin(), g.end(), b, a);
        std::sort(g.begin(), g.end());
        out.insert(g);
    }
    return out;
}

} // namespace

int main(int argc, char** argv)
{
    if (argc != 2)
    {
        std::cerr << "usage: make_cp2 <output.scx>\n";
        return 2;
    }
    auto item = catalogItem("s2xs2-swap");
    auto reg = regularize(*item.action);
    auto orbit = orbitComplex(reg.action);
    auto const& q = orbit.quotient;
    Facets facets;
    for (auto const& s : q.maximalSimplices())
        facets.insert(s);
    std::cerr << "orbit complex: " << q.numVertices() << " vertices, " << facets.size() << " facets\n";

    bool progress = true;
    while (progress)
    {
        progress = false;
        std::set<std::pair<Vertex, Vertex>> edges;
        for (auto const& f : facets)
            for (std::size_t i = 0; i < f.size(); ++i)
                for (std::size_t j = i + 1; j < f.size(); ++j)
                    edges.emplace(f[i], f[j]);
        for (auto [a, b] : edges)
            if (contractible(facets, a, b))
            {
                facets = contract(facets, a, b);
                progress = true;
                break;
            }
    }

    std::map<Vertex, Vertex> ids;
    for (auto const& f : facets)
        for (Vertex v : f)
            ids.emplace(v, 0);
    Vertex next = 0;
    for (auto& [v, id] : ids)
        id = next++;
    std::vector<std::vector<Vertex>> relabelled;
    for (auto const& f : facets)
    {
        std::vector<Vertex> g;
        for (Vertex v : f)
            g.push_back(ids[v]);
        relabelled.push_back(g);
    }
    auto k = SimplicialComplex::fromMaximal(relabelled);
    auto betti = bettiNumbers(k);
    std::cerr << "result: " << k.numVertices() << " vertices, " << k.count(4) << " facets, betti";
    for (int b : betti)
        std::cerr << ' ' << b;
    std::cerr << "\n";
    if (betti != std::vector<int>{1, 0, 1, 0, 1} || !checkPseudomanifold(k).ok())
    {
        std::cerr << "contraction went wrong\n";
        return 3;
    }
    writeScxFile(argv[1], k);
    return 0;
}
