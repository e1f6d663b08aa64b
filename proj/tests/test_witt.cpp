#include "doctest.h"

#include <numeric>

#include "ihorbit/errors.hpp"
#include "ihorbit/filtered.hpp"
#include "ihorbit/ih.hpp"
#include "ihorbit/witt.hpp"

using namespace ihorbit;

namespace
{

std::vector<Vertex> iota(std::size_t n)
{
    std::vector<Vertex> v(n);
    std::iota(v.begin(), v.end(), 0);
    return v;
}

SimplicialComplex torus()
{
    auto c = boundaryOfSimplex(1);
    return productComplex(c, c, iota(3), iota(3));
}

GroupAction octahedronRotation()
{
    auto sq = SimplicialComplex::fromMaximal({{0, 1}, {1, 2}, {2, 3}, {0, 3}});
    return validateAction(FiniteGroup::cyclic(4), suspension(sq), {{1, {1, 2, 3, 0, 4, 5}}});
}

} // namespace

TEST_CASE("canonical forms")
{
    auto a = SimplicialComplex::fromMaximal({{0, 1, 2}, {1, 2, 3}});
    auto b = SimplicialComplex::fromMaximal({{5, 7, 9}, {7, 9, 2}});
    auto c = SimplicialComplex::fromMaximal({{0, 1, 2}, {2, 3, 4}});
    CHECK(canonicalForm(a) == canonicalForm(b));
    CHECK(canonicalForm(a) != canonicalForm(c));
    auto t = torus();
    auto relabelled = SimplicialComplex::fromMaximal(t.maximalSimplices(), {"z", "y", "x", "w", "v", "u", "t", "s", "r"});
    CHECK(canonicalForm(t) == canonicalForm(relabelled));
    CHECK(canonicalForm(t) != canonicalForm(barycentricSubdivision(boundaryOfSimplex(2)).complex));
}

TEST_CASE("Witt verdicts")
{
    auto surf = isWitt(torus());
    CHECK(surf.isWitt);
    CHECK(surf.checkedLinks == 0);
    auto ss2 = isWitt(suspension(boundaryOfSimplex(2)));
    CHECK(ss2.isWitt);
    auto st = suspension(torus());
    auto rep = isWitt(st);
    CHECK_FALSE(rep.isWitt);
    REQUIRE(rep.failures.size() == 2);
    for (auto const& f : rep.failures)
    {
        CHECK(f.linkDim == 2);
        CHECK(f.ihDim == 2);
        REQUIRE(f.simplex.size() == 1);
        CHECK(f.simplex[0] >= 9);
    }
    auto par = isWitt(st, 3);
    CHECK(par.failures.size() == rep.failures.size());
    CHECK(par.cacheHits == rep.cacheHits);
    CHECK_THROWS_AS(isWitt(SimplicialComplex::fromMaximal({{0, 1, 2}, {2, 3}})), Error);
    CHECK(isWitt(barycentricSubdivision(suspension(boundaryOfSimplex(2))).complex).isWitt);
}

TEST_CASE("suspension oracle")
{
    CHECK(suspensionIHOracle(torus(), 3, 1) == 2);
    CHECK(suspensionIHOracle(boundaryOfSimplex(2), 1, 0) == 1);
    CHECK(suspensionIHOracle(boundaryOfSimplex(2), 2, 1) == 0);
    CHECK_THROWS_AS(suspensionIHOracle(torus(), 1, 2), Error);
    // compare against iterated suspensions computed directly
    auto l = torus();
    auto x = skeletalFiltration(l);
    auto k = l;
    for (int s = 1; s <= 2; ++s)
    {
        auto sk = suspension(k);
        x = suspensionFiltration(x, sk);
        k = sk;
        auto ih = intersectionHomology(x, Perversity::lowerMiddle(x.formalDim())).betti;
        for (int i = 0; i <= 1; ++i)
            CHECK(ih[static_cast<std::size_t>(i)] == suspensionIHOracle(l, s, i));
    }
}

TEST_CASE("ramified structure of orbit projections")
{
    auto two = disjointUnion({boundaryOfSimplex(1), boundaryOfSimplex(1)});
    auto swap = validateAction(FiniteGroup::cyclic(2), two, {{1, {3, 4, 5, 0, 1, 2}}});
    auto cover = ramifiedStructure(swap, orbitComplex(swap));
    CHECK(cover.degree == 2);
    for (auto const& row : cover.multiplicity)
        for (int m : row)
            CHECK(m == 1);
    auto v = linkCoverCheck(cover, {0});
    CHECK(v.ok);
    CHECK(v.preimages == 2);

    auto r = regularize(octahedronRotation());
    auto orbit = orbitComplex(r.action);
    auto oc = ramifiedStructure(r.action, orbit);
    CHECK(oc.degree == 4);
    int fourFold = 0;
    for (std::size_t i = 0; i < oc.source.count(0); ++i)
        if (oc.multiplicity[0][i] == 4)
            ++fourFold;
    CHECK(fourFold == 2);
    auto sc = suspendCover(oc);
    CHECK(sc.degree == 4);
    auto n = static_cast<std::size_t>(oc.source.numVertices());
    CHECK(sc.multiplicity[0][n] == 4);
    CHECK(sc.multiplicity[0][n + 1] == 4);

    // an edge of the quotient away from the pole orbits
    bool found = false;
    for (std::size_t i = 0; i < orbit.quotient.count(1) && !found; ++i)
    {
        auto e = orbit.quotient.simplices(1).simplex(i);
        auto pre = preimageOpenSimplex(orbit, r.action.complex, e);
        bool offPole = true;
        for (auto const& s : pre)
            for (Vertex w : s)
                if (stabilizerOrder(r.action, Simplex{w}) > 1)
                    offPole = false;
        if (!offPole)
            continue;
        found = true;
        auto lc = linkCoverCheck(oc, e);
        CHECK(lc.ok);
        CHECK(lc.preimages == 4);
        for (int d : lc.linkDims)
            CHECK(d == 0);
    }
    CHECK(found);

    auto bad = cover.multiplicity;
    bad[0][0] = 2;
    CHECK_THROWS_AS(ramifiedStructure(cover.source, cover.base, cover.projection, bad, 2), Error);
}
