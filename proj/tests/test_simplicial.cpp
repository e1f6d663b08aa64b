#include "doctest.h"

#include <numeric>

#include "ihorbit/chains.hpp"
#include "ihorbit/complex.hpp"
#include "ihorbit/errors.hpp"

using namespace ihorbit;

namespace
{

SimplicialComplex rp2()
{
    return SimplicialComplex::fromMaximal({{0, 1, 3}, {0, 1, 5}, {0, 2, 4}, {0, 2, 5}, {0, 3, 4},
                                           {1, 2, 3}, {1, 2, 4}, {1, 4, 5}, {2, 3, 5}, {3, 4, 5}});
}

std::vector<Vertex> iota(std::size_t n)
{
    std::vector<Vertex> v(n);
    std::iota(v.begin(), v.end(), 0);
    return v;
}

} // namespace

TEST_CASE("closure of maximal simplices")
{
    auto t = SimplicialComplex::fromMaximal({{0, 1, 2}});
    CHECK(t.dim() == 2);
    CHECK(t.fVector() == std::vector<std::size_t>{3, 3, 1});
    auto s = boundaryOfSimplex(2);
    CHECK(s.fVector() == std::vector<std::size_t>{4, 6, 4});
    CHECK_THROWS_AS(SimplicialComplex::fromMaximal({}), Error);
}

TEST_CASE("links")
{
    auto s = boundaryOfSimplex(2);
    Simplex v{0};
    auto lv = link(s, v);
    CHECK(lv.fVector() == std::vector<std::size_t>{3, 3});
    Simplex e{0, 1};
    CHECK(link(s, e).fVector() == std::vector<std::size_t>{2});
    Simplex bad{0, 7};
    CHECK_THROWS_AS(link(s, bad), Error);
    auto oct = suspension(SimplicialComplex::fromMaximal({{0, 1}, {1, 2}, {2, 3}, {3, 0}}));
    CHECK(oct.fVector() == std::vector<std::size_t>{6, 12, 8});
    Simplex pole{4};
    CHECK(link(oct, pole).fVector() == std::vector<std::size_t>{4, 4});
}

TEST_CASE("barycentric subdivision counts")
{
    auto e = SimplicialComplex::fromMaximal({{0, 1}});
    CHECK(barycentricSubdivision(e).complex.fVector() == std::vector<std::size_t>{3, 2});
    auto t = SimplicialComplex::fromMaximal({{0, 1, 2}});
    CHECK(barycentricSubdivision(t).complex.fVector() == std::vector<std::size_t>{7, 12, 6});
    auto s = boundaryOfSimplex(3);
    CHECK(barycentricSubdivision(s).complex.count(3) == s.count(3) * 24);
}

TEST_CASE("staircase products")
{
    auto e = SimplicialComplex::fromMaximal({{0, 1}});
    auto sq = productComplex(e, e, {0, 1}, {0, 1});
    CHECK(sq.fVector() == std::vector<std::size_t>{4, 5, 2});
    auto c = boundaryOfSimplex(1);
    auto torus = productComplex(c, c, iota(3), iota(3));
    CHECK(torus.fVector() == std::vector<std::size_t>{9, 27, 18});
    CHECK(bettiNumbers(torus) == std::vector<int>{1, 2, 1});
    auto s2 = boundaryOfSimplex(2);
    auto s2s2 = productComplex(s2, s2, iota(4), iota(4));
    CHECK(s2s2.numVertices() == 16);
    CHECK(s2s2.count(4) == 96);
    CHECK(bettiNumbers(s2s2) == std::vector<int>{1, 0, 2, 0, 1});
    CHECK_THROWS_AS(productComplex(c, c, {0, 1}, iota(3)), Error);
}

TEST_CASE("suspension counts")
{
    auto c = boundaryOfSimplex(1);
    auto torus = productComplex(c, c, iota(3), iota(3));
    auto st = suspension(torus);
    CHECK(st.numVertices() == 11);
    CHECK(st.count(3) == 36);
    CHECK(suspension(boundaryOfSimplex(0)).fVector() == std::vector<std::size_t>{4, 4});
}

TEST_CASE("homology of spheres, torus and RP2")
{
    for (int n = 0; n <= 6; ++n)
    {
        auto h = homology(boundaryOfSimplex(n), Ring::Integers);
        for (int d = 0; d <= n; ++d)
        {
            int expected = (d == 0 ? 1 : 0) + (d == n ? 1 : 0);
            CHECK(h[static_cast<std::size_t>(d)].betti == expected);
            CHECK(h[static_cast<std::size_t>(d)].torsion.empty());
        }
    }
    auto p = rp2();
    auto hz = homology(p, Ring::Integers);
    CHECK(hz[0].betti == 1);
    CHECK(hz[1].betti == 0);
    CHECK(hz[2].betti == 0);
    REQUIRE(hz[1].torsion.size() == 1);
    CHECK(hz[1].torsion[0] == 2);
    CHECK(hz[2].torsion.empty());
    auto hq = homology(p, Ring::Rationals);
    CHECK(hq[1].torsion.empty());
}

TEST_CASE("boundary squares to zero and Euler characteristic")
{
    auto c = boundaryOfSimplex(1);
    auto torus = productComplex(c, c, iota(3), iota(3));
    for (auto const& k : {boundaryOfSimplex(3), torus, rp2(), barycentricSubdivision(torus).complex})
    {
        CHECK(boundarySquaresToZero(chainComplex(k)));
        auto b = bettiNumbers(k);
        long long alt = 0;
        for (std::size_t d = 0; d < b.size(); ++d)
            alt += (d % 2 == 0 ? 1 : -1) * b[d];
        CHECK(alt == k.eulerCharacteristic());
    }
    CHECK(bettiNumbers(barycentricSubdivision(rp2()).complex) == bettiNumbers(rp2()));
}

TEST_CASE("fundamental class")
{
    auto s = boundaryOfSimplex(2);
    auto r = fundamentalClass(s);
    REQUIRE(r.orientation);
    CHECK(boundary(s, 2, r.orientation->cycle()).empty());
    CHECK_FALSE(fundamentalClass(rp2()).orientation);
    auto two = disjointUnion({boundaryOfSimplex(1), boundaryOfSimplex(1)});
    auto r2 = fundamentalClass(two);
    REQUIRE(r2.orientation);
    CHECK(boundary(two, 1, r2.orientation->cycle()).empty());
    auto dangling = SimplicialComplex::fromMaximal({{0, 1, 2}, {2, 3}});
    CHECK_THROWS_AS(fundamentalClass(dangling), Error);
}
