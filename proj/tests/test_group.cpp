#include "doctest.h"

#include <numeric>

#include "ihorbit/errors.hpp"
#include "ihorbit/group.hpp"

using namespace ihorbit;

namespace
{

SimplicialComplex square()
{
    return SimplicialComplex::fromMaximal({{0, 1}, {1, 2}, {2, 3}, {0, 3}});
}

GroupAction octahedronRotation()
{
    auto oct = suspension(square());
    return validateAction(FiniteGroup::cyclic(4), oct, {{1, {1, 2, 3, 0, 4, 5}}});
}

} // namespace

TEST_CASE("finite groups")
{
    auto c4 = FiniteGroup::cyclic(4);
    CHECK(c4.order() == 4);
    CHECK(c4.inverse(1) == 3);
    CHECK(c4.subgroups().size() == 3);
    auto s3 = FiniteGroup::symmetric(3);
    CHECK(s3.order() == 6);
    CHECK(s3.subgroups().size() == 6);
    CHECK(s3.conjugacyClasses().size() == 3);
    auto v4 = FiniteGroup({"e", "a", "b", "c"}, {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}});
    CHECK(v4.subgroups().size() == 5);
    CHECK_THROWS_AS(FiniteGroup({"e", "a"}, {{0, 1}, {1, 1}}), Error);
}

TEST_CASE("action validation")
{
    auto sq = square();
    CHECK_NOTHROW(validateAction(FiniteGroup::cyclic(4), sq, {{1, {1, 2, 3, 0}}}));
    // a generator of order 3 cannot represent a generator of Z/4
    CHECK_THROWS_AS(validateAction(FiniteGroup::cyclic(4), boundaryOfSimplex(1), {{1, {1, 2, 0}}}), Error);
    // a non-faithful action is still an action
    CHECK_NOTHROW(validateAction(FiniteGroup::cyclic(4), sq, {{1, {2, 3, 0, 1}}}));
    auto tri = SimplicialComplex::fromMaximal({{0, 1, 2}, {3, 4}});
    try
    {
        validateAction(FiniteGroup::cyclic(2), tri, {{1, {3, 1, 2, 0, 4}}});
        FAIL("expected NotSimplicialAction");
    }
    catch (Error const& e)
    {
        CHECK(e.kind() == ErrorKind::NotSimplicialAction);
    }
}

TEST_CASE("regularity and regularisation")
{
    auto rot = octahedronRotation();
    CHECK_FALSE(isRegular(rot));
    auto r = regularize(rot);
    // after one subdivision a vertex still sees two translates of one edge barycentre
    CHECK(r.subdivisions == 2);
    CHECK(isRegular(r.action));
    CHECK_THROWS_AS(regularize(rot, 1), Error);
    auto triv = validateAction(FiniteGroup::trivial(), square(), {});
    CHECK(regularize(triv).subdivisions == 0);
    auto two = disjointUnion({boundaryOfSimplex(1), boundaryOfSimplex(1)});
    auto swap = validateAction(FiniteGroup::cyclic(2), two, {{1, {3, 4, 5, 0, 1, 2}}});
    CHECK(isRegular(swap));
    CHECK_THROWS_AS(orbitComplex(rot), Error);
}

TEST_CASE("orbit complexes and fibres")
{
    auto two = disjointUnion({boundaryOfSimplex(1), boundaryOfSimplex(1)});
    auto swap = validateAction(FiniteGroup::cyclic(2), two, {{1, {3, 4, 5, 0, 1, 2}}});
    auto o = orbitComplex(swap);
    CHECK(o.quotient.fVector() == std::vector<std::size_t>{3, 3});
    auto edge = o.quotient.simplices(1).simplex(0);
    CHECK(preimageOpenSimplex(o, two, edge).size() == 2);

    auto r = regularize(octahedronRotation());
    auto oo = orbitComplex(r.action);
    CHECK(bettiNumbers(oo.quotient) == std::vector<int>{1, 0, 1});
    CHECK(oo.quotient.dim() == 2);
    for (std::size_t i = 0; i < oo.quotient.count(2); ++i)
        CHECK(preimageOpenSimplex(oo, r.action.complex, oo.quotient.simplices(2).simplex(i)).size() == 4);
    auto pm = checkPseudomanifold(oo.quotient);
    CHECK(pm.ok());

    auto triv = validateAction(FiniteGroup::trivial(), square(), {});
    auto ot = orbitComplex(triv);
    CHECK(ot.quotient == square());
}

TEST_CASE("pseudomanifold reports")
{
    CHECK(checkPseudomanifold(boundaryOfSimplex(4)).ok());
    auto dangling = checkPseudomanifold(SimplicialComplex::fromMaximal({{0, 1, 2}, {2, 3}}));
    CHECK_FALSE(dangling.pm1);
    REQUIRE(dangling.pm1Violations.size() == 1);
    CHECK(dangling.pm1Violations[0] == Simplex{2, 3});
    auto book = checkPseudomanifold(SimplicialComplex::fromMaximal({{0, 1, 2}, {0, 1, 3}, {0, 1, 4}}));
    CHECK_FALSE(book.pm2);
    CHECK(std::find(book.pm2Violations.begin(), book.pm2Violations.end(), Simplex{0, 1}) != book.pm2Violations.end());
}

TEST_CASE("fixed subcomplexes, freeness, orientation")
{
    auto rot = octahedronRotation();
    CHECK(fixedSubcomplex(rot, 0).fVector() == rot.complex.fVector());
    auto f = fixedSubcomplex(rot, 1);
    CHECK(f.fVector() == std::vector<std::size_t>{2});
    CHECK_THROWS_AS(fixedSubcomplex(rot, 9), Error);
    auto octagon = SimplicialComplex::fromMaximal({{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 6}, {6, 7}, {0, 7}});
    auto half = validateAction(FiniteGroup::cyclic(2), octagon, {{1, {4, 5, 6, 7, 0, 1, 2, 3}}});
    CHECK(fixedSubcomplex(half, 1).empty());
    CHECK(isFree(half));
    CHECK_FALSE(isFree(rot));

    auto o = fundamentalClass(rot.complex);
    REQUIRE(o.orientation);
    for (bool b : isOrientationPreserving(rot, *o.orientation))
        CHECK(b);
    // reflection of the square fixing 0 and 2, extended by fixing the poles
    auto refl = validateAction(FiniteGroup::cyclic(2), rot.complex, {{1, {0, 3, 2, 1, 4, 5}}});
    auto pres = isOrientationPreserving(refl, *o.orientation);
    CHECK(pres[0]);
    CHECK_FALSE(pres[1]);
}
