#include <doctest.h>

#include <sstream>

#include "ihorbit/catalog.hpp"
#include "ihorbit/errors.hpp"
#include "ihorbit/io.hpp"

using namespace ihorbit;

namespace
{

ParsedInput parse(std::string const& text)
{
    std::istringstream in(text);
    return parseScx(in, "t.scx");
}

// kind and message of the error raised while parsing text
std::pair<ErrorKind, std::string> failure(std::string const& text)
{
    try
    {
        parse(text);
    }
    catch (Error const& e)
    {
        return {e.kind(), e.what()};
    }
    FAIL("no error for: " << text);
    return {ErrorKind::InternalError, ""};
}

void checkRoundTrip(CatalogItem const& item)
{
    auto o = item.orientation ? item.orientation : orientationOf(item.complex);
    auto text = serializeScx(item.complex, item.action ? &*item.action : nullptr, o ? &*o : nullptr);
    auto back = parse(text);
    CHECK(back.complex == item.complex);
    REQUIRE(back.action.has_value() == item.action.has_value());
    if (item.action)
    {
        CHECK(back.action->group.labels() == item.action->group.labels());
        CHECK(back.action->group.table() == item.action->group.table());
        CHECK(back.action->perm == item.action->perm);
    }
    REQUIRE(back.orientation.has_value() == o.has_value());
    if (o)
        CHECK(back.orientation->topSigns == o->topSigns);
}

} // namespace

TEST_CASE("four triangles make a 2-sphere")
{
    auto p = parse("# boundary of a tetrahedron\na b c\na b d\na c d\nb c d\n");
    CHECK(p.complex.dim() == 2);
    CHECK(p.complex.fVector() == std::vector<std::size_t>{4, 6, 4});
    CHECK(bettiNumbers(p.complex) == std::vector<int>{1, 0, 1});
    CHECK_FALSE(p.action);
}

TEST_CASE("octahedron with a quarter turn")
{
    auto p = parse("dim 2\n"
                   "n 1 2\nn 2 3\nn 3 4\nn 4 1\n"
                   "s 1 2\ns 2 3\ns 3 4\ns 4 1\n"
                   "group cyclic 4\n"
                   "gen 1: 1->2 2->3 3->4 4->1\n");
    REQUIRE(p.action);
    CHECK(p.action->group.order() == 4);
    auto n = *p.complex.vertexByLabel("n");
    for (int g = 0; g < 4; ++g)
        CHECK(p.action->perm[static_cast<std::size_t>(g)][static_cast<std::size_t>(n)] == n);
}

TEST_CASE("errors carry line numbers")
{
    auto [k1, m1] = failure("a b c\ndim two\n");
    CHECK(k1 == ErrorKind::ParseError);
    CHECK(m1.find("t.scx:2:") != std::string::npos);

    // swapping a and b sends the edge b-c to a-c, which is missing
    auto [k2, m2] = failure("a b\nb c\nc d\nd a\ngroup cyclic 2\ngen 1: a->b b->a\n");
    CHECK(k2 == ErrorKind::NotSimplicialAction);
    CHECK(m2.find("t.scx:6:") != std::string::npos);

    auto [k3, m3] = failure("a b\ngroup cyclic 2\ngen 7: a->b b->a\n");
    CHECK(k3 == ErrorKind::BadElement);
    CHECK(m3.find("t.scx:3:") != std::string::npos);

    auto [k4, m4] = failure("a b c\na b d\na c d\nb c d\norientation ++++\n");
    CHECK(k4 == ErrorKind::NotOriented);
    CHECK(m4.find("t.scx:5:") != std::string::npos);

    CHECK(failure("gen 1: a->b\n").first == ErrorKind::ParseError);
    CHECK(failure("").first == ErrorKind::EmptyComplex);
}

TEST_CASE("hash only starts a comment at a token boundary")
{
    auto p = parse("a#1 b c  # trailing\n");
    CHECK(p.complex.vertexByLabel("a#1").has_value());
    CHECK(p.complex.numVertices() == 3);
}

TEST_CASE("every catalog example survives a round trip")
{
    for (auto const& e : catalogEntries())
    {
        CAPTURE(e.name);
        checkRoundTrip(catalogItem(e.name));
    }
    checkRoundTrip(catalogItem("sphere", {4}));
    checkRoundTrip(suspendItem(catalogItem("octahedron-rot"), 2));
    checkRoundTrip(suspendItem(catalogItem("torus"), 1));
}

TEST_CASE("suspension keeps the action and fixes the apexes")
{
    auto s = suspendItem(catalogItem("s2xs2-swap"), 2);
    CHECK(s.complex.dim() == 6);
    REQUIRE(s.action);
    for (auto const& label : {"N1", "S1", "N2", "S2"})
    {
        auto v = s.complex.vertexByLabel(label);
        REQUIRE(v);
        CHECK(s.action->perm[1][static_cast<std::size_t>(*v)] == *v);
    }
}
