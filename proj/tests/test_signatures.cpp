#include <doctest.h>

#include <cmath>
#include <random>

#include "ihorbit/catalog.hpp"
#include "ihorbit/errors.hpp"
#include "ihorbit/signatures.hpp"

using namespace ihorbit;

namespace
{

Matrix mat(std::vector<std::vector<std::int64_t>> const& rows)
{
    std::vector<std::vector<Rational>> r;
    for (auto const& row : rows)
        r.emplace_back(row.begin(), row.end());
    return Matrix::fromRows(r);
}

// cochain on 2-simplices of staircase S^2 x S^2: pullback of the dual of
// {0,1,2} along the first (coord 0) or second (coord 1) projection
SparseVec pullback(SimplicialComplex const& k, int coord)
{
    SparseVec out;
    for (std::size_t i = 0; i < k.count(2); ++i)
    {
        auto s = k.simplices(2)[i];
        bool hit = true;
        for (int j = 0; j < 3; ++j)
            hit = hit && (coord == 0 ? s[j] / 4 : s[j] % 4) == j;
        if (hit)
            out.emplace_back(static_cast<std::int64_t>(i), Rational(1));
    }
    return out;
}

// <a cup b, [X]> by brute force over the top simplices
long long cupPairing(SimplicialComplex const& k, Orientation const& o, SparseVec const& a, SparseVec const& b)
{
    auto value = [&](SparseVec const& c, Simplex const& s) {
        auto idx = k.indexOf(s);
        for (auto const& [i, v] : c)
            if (i == idx)
                return v.numerator().get_si();
        return 0L;
    };
    long long total = 0;
    for (std::size_t t = 0; t < k.count(4); ++t)
    {
        auto s = k.simplices(4).simplex(t);
        total += o.topSigns[t] * value(a, {s[0], s[1], s[2]}) * value(b, {s[2], s[3], s[4]});
    }
    return total;
}

Rational quad(Matrix const& b, std::vector<Rational> const& x, std::vector<Rational> const& y)
{
    Rational s;
    for (std::size_t i = 0; i < x.size(); ++i)
        for (std::size_t j = 0; j < y.size(); ++j)
            s += x[i] * b(i, j) * y[j];
    return s;
}

} // namespace

TEST_CASE("exact signature")
{
    CHECK(signatureExact(mat({{0, 1}, {1, 0}})) == 0);
    CHECK(signatureExact(mat({{2}})) == 1);
    CHECK(signatureExact(mat({{1, 0, 0}, {0, 1, 0}, {0, 0, -1}})) == 1);
    CHECK(signatureExact(Matrix(0, 0)) == 0);
    CHECK_THROWS_AS(signatureExact(mat({{0, 1}, {0, 0}})), Error);

    // invariant under rational congruence
    std::mt19937 rng(11);
    std::uniform_int_distribution<int> d(-3, 3);
    for (int trial = 0; trial < 40; ++trial)
    {
        std::size_t n = 1 + static_cast<std::size_t>(trial % 5);
        Matrix b(n, n), p(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i; j < n; ++j)
                b(i, j) = b(j, i) = Rational(d(rng));
        do
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j)
                    p(i, j) = Rational(d(rng), 1 + (d(rng) + 3) % 3);
        while (determinant(p).isZero());
        CHECK(signatureExact(p.transpose() * b * p) == signatureExact(b));
    }
}

TEST_CASE("cup form of S2 x S2 is hyperbolic")
{
    auto item = catalogItem("s2xs2");
    auto const& k = item.complex;
    auto form = cupFormMiddle(k, *item.orientation);
    CHECK(form.degree == 2);
    CHECK(form.parity == FormParity::Symmetric);
    CHECK(form.regime == FormRegime::HomologyManifold);
    CHECK(form.rank() == 2);
    CHECK(determinant(form.b) == Rational(-1));
    CHECK(signatureExact(form.b) == 0);

    auto a = pullback(k, 0);
    auto b = pullback(k, 1);
    CHECK(cupPairing(k, *item.orientation, a, a) == 0);
    CHECK(cupPairing(k, *item.orientation, b, b) == 0);
    CHECK(cupPairing(k, *item.orientation, a, b) == 1);
    auto ca = form.cohomology.coordinates(a);
    auto cb = form.cohomology.coordinates(b);
    REQUIRE(ca);
    REQUIRE(cb);
    CHECK(quad(form.b, *ca, *cb) == Rational(1));
    CHECK(quad(form.b, *ca, *ca) == Rational(0));
    CHECK(quad(form.b, *cb, *cb) == Rational(0));

    // the dual cycles are cycles
    for (auto const& x : form.basis)
        CHECK(boundary(k, 2, x).empty());
}

TEST_CASE("cup forms of CP2 and S4")
{
    auto cp2 = catalogItem("cp2");
    auto f = cupFormMiddle(cp2.complex, *cp2.orientation);
    REQUIRE(f.rank() == 1);
    CHECK(f.b(0, 0) == Rational(1));

    auto s4 = catalogItem("sphere", {4});
    auto e = cupFormMiddle(s4.complex, *s4.orientation);
    CHECK(e.rank() == 0);
    CHECK(signatureExact(e.b) == 0);

    auto s3 = catalogItem("sphere", {3});
    CHECK_THROWS_AS(cupFormMiddle(s3.complex, *s3.orientation), Error);
}

TEST_CASE("cup form refuses a non-manifold beyond the budget")
{
    // suspension of a torus, doubled: not a homology manifold at the poles
    auto item = suspendItem(catalogItem("torus"), 2);
    REQUIRE(item.orientation);
    CupFormOptions tight;
    tight.ihBudget = 10;
    try
    {
        cupFormMiddle(item.complex, *item.orientation, tight);
        FAIL("expected FormUnavailable");
    }
    catch (Error const& e)
    {
        CHECK(e.kind() == ErrorKind::FormUnavailable);
    }
}

TEST_CASE("double suspensions")
{
    // Sigma^2 S^2 is a 4-sphere; every link is a homology sphere
    auto item = suspendItem(catalogItem("sphere", {2}), 2);
    auto f = cupFormMiddle(item.complex, *item.orientation);
    CHECK(f.rank() == 0);

    // Sigma^2 T^2 has H_2 = Q^2 but IH_2 = 0 at the lower middle perversity
    auto st = suspendItem(catalogItem("torus"), 2);
    try
    {
        cupFormMiddle(st.complex, *st.orientation);
        FAIL("expected FormUnavailable");
    }
    catch (Error const& e)
    {
        CHECK(e.kind() == ErrorKind::FormUnavailable);
    }
}

TEST_CASE("swap signature on S2 x S2")
{
    auto item = catalogItem("s2xs2-swap");
    auto form = cupFormMiddle(item.complex, *item.orientation);
    auto rep = representationOnMiddle(*item.action, form);
    validateRep(rep);
    auto e = gSignature(form, rep, 0);
    CHECK(e.path == SignaturePath::Exact);
    CHECK(*e.exact == 0);
    auto s = gSignature(form, rep, 1);
    CHECK(s.path == SignaturePath::Exact);
    CHECK(*s.exact == 2);

    GSignatureOptions numeric;
    numeric.allowExact = false;
    auto n = gSignature(form, rep, 1, numeric);
    CHECK(n.path == SignaturePath::Numeric);
    CHECK(std::abs(n.re - 2.0) < 1e-8);
    numeric.seed = 7;
    CHECK(std::abs(gSignature(form, rep, 1, numeric).re - 2.0) < 1e-8);
    CHECK(traceFormulaHolds(rep));
}

TEST_CASE("hand-sized forms")
{
    // hyperbolic plane with the swap
    MiddleForm h;
    h.degree = 2;
    h.b = mat({{0, 1}, {1, 0}});
    h.regime = FormRegime::External;
    auto swap = repFromGenerators(FiniteGroup::cyclic(2), {{1, mat({{0, 1}, {1, 0}})}});
    CHECK(*gSignature(h, swap, 1).exact == 2);

    // minus the swap also preserves B and flips the sign
    auto neg = repFromGenerators(FiniteGroup::cyclic(2), {{1, mat({{0, -1}, {-1, 0}})}});
    CHECK(*gSignature(h, neg, 1).exact == -2);

    auto bad = repFromGenerators(FiniteGroup::cyclic(2), {{1, mat({{1, 0}, {0, -1}})}});
    try
    {
        gSignature(h, bad, 1);
        FAIL("expected NotInvariant");
    }
    catch (Error const& e)
    {
        CHECK(e.kind() == ErrorKind::NotInvariant);
    }

    // skew plane, quarter turn g = -B acts as multiplication by -i
    MiddleForm s;
    s.degree = 1;
    s.parity = FormParity::Skew;
    s.b = mat({{0, 1}, {-1, 0}});
    s.regime = FormRegime::External;
    auto quarter = repFromGenerators(FiniteGroup::cyclic(4), {{1, mat({{0, -1}, {1, 0}})}});
    auto v = gSignature(s, quarter, 1);
    CHECK(v.path == SignaturePath::Numeric);
    CHECK(std::abs(v.im + 2.0) < 1e-9);
    CHECK(std::abs(gSignature(s, quarter, 3).im - 2.0) < 1e-9);
    auto half = gSignature(s, quarter, 2);
    CHECK(half.path == SignaturePath::Exact);
    CHECK(*half.exact == 0);

    MiddleForm z;
    z.degree = 2;
    z.b = mat({{1, 0}, {0, 0}});
    auto triv = repFromGenerators(FiniteGroup::cyclic(3), {{1, Matrix::identity(2)}});
    CHECK_THROWS_AS(gSignature(z, triv, 1), Error);
}

TEST_CASE("representations")
{
    auto c3 = FiniteGroup::cyclic(3);
    auto regular = repFromGenerators(c3, {{1, mat({{0, 0, 1}, {1, 0, 0}, {0, 1, 0}})}});
    auto inv = invariantSubspace(regular);
    REQUIRE(inv.cols() == 1);
    CHECK(inv(0, 0) == inv(1, 0));
    CHECK(inv(1, 0) == inv(2, 0));
    CHECK(traceFormulaHolds(regular));

    auto trivial = repFromGenerators(c3, {{1, Matrix::identity(3)}});
    CHECK(invariantSubspace(trivial).cols() == 3);

    auto swap = repFromGenerators(FiniteGroup::cyclic(2), {{1, mat({{0, 1}, {1, 0}})}});
    auto sv = invariantSubspace(swap);
    REQUIRE(sv.cols() == 1);
    CHECK(sv(0, 0) == sv(1, 0));

    // an order-2 matrix cannot represent the generator of Z/3
    CHECK_THROWS_AS(repFromGenerators(c3, {{1, mat({{0, 1}, {1, 0}})}}), Error);
    GRep broken{FiniteGroup::cyclic(2), {Matrix::identity(1), mat({{2}})}};
    CHECK_THROWS_AS(validateRep(broken), Error);
}

TEST_CASE("rotation of order six on the grid torus")
{
    auto item = catalogItem("torus-rot6");
    REQUIRE(item.orientation);
    auto form = cupFormMiddle(item.complex, *item.orientation);
    CHECK(form.parity == FormParity::Skew);
    CHECK(form.rank() == 2);
    auto rep = representationOnMiddle(*item.action, form);
    validateRep(rep);
    auto g = gSignature(form, rep, 1);
    CHECK(g.path == SignaturePath::Numeric);
    CHECK(std::abs(std::abs(g.im) - std::sqrt(3.0)) < 1e-8);
    // g^-1 gives the conjugate value
    CHECK(std::abs(gSignature(form, rep, 5).im + g.im) < 1e-8);
    auto inv = gSignature(form, rep, 3);
    CHECK(inv.path == SignaturePath::Exact);
    CHECK(*inv.exact == 0);
    CHECK(traceFormulaHolds(rep));
}

TEST_CASE("averaging formula on the swap")
{
    auto item = catalogItem("s2xs2-swap");
    auto rep = averagingCheck(*item.action, *item.orientation);
    CHECK(rep.signature == 0);
    CHECK(*rep.elements[1].value.exact == 2);
    REQUIRE(rep.averageExact);
    CHECK(*rep.averageExact == Rational(1));
    CHECK(rep.subdivisions == 1);
    CHECK(rep.orbitSignature == 1);
    CHECK(rep.pass);
}

TEST_CASE("averaging formula on small actions")
{
    for (auto name : {"torus-rot6", "torus-shift", "circle-halfturn", "cp2", "cp2-s3"})
    {
        CAPTURE(name);
        auto item = catalogItem(name);
        if (item.complex.dim() % 2 != 0)
        {
            CHECK_THROWS_AS(averagingCheck(*item.action, *item.orientation), Error);
            continue;
        }
        AveragingOptions opt;
        opt.jobs = 2;
        auto rep = averagingCheck(*item.action, *item.orientation, opt);
        CHECK(rep.pass);
        CHECK(rep.conjugationInvariant);
        CHECK(rep.traceFormula);
    }
}

TEST_CASE("S3 on three copies of CP2")
{
    auto item = catalogItem("cp2-s3");
    auto rep = averagingCheck(*item.action, *item.orientation);
    auto const& g = item.action->group;
    for (auto const& e : rep.elements)
    {
        auto order = g.elementOrder(e.element);
        double expect = order == 1 ? 3.0 : order == 2 ? 1.0 : 0.0;
        CAPTURE(e.label);
        CHECK(std::abs(e.value.re - expect) < 1e-8);
    }
    CHECK(rep.orbitSignature == 1);
    CHECK(rep.pass);
}

TEST_CASE("wedge of two tori uses the canonical-map regime")
{
    auto t = gridTorus(3);
    std::vector<std::vector<Vertex>> facets;
    for (auto const& s : t.maximalSimplices())
    {
        facets.push_back(s);
        std::vector<Vertex> c;
        for (Vertex v : s)
            c.push_back(v == 0 ? 0 : v + 8);
        facets.push_back(c);
    }
    auto w = SimplicialComplex::fromMaximal(facets);
    auto o = orientationOf(w);
    REQUIRE(o);
    REQUIRE(homologyManifoldWitness(w));
    auto f = cupFormMiddle(w, *o);
    CHECK(f.regime == FormRegime::CanonicalIso);
    CHECK(f.parity == FormParity::Skew);
    CHECK(f.rank() == 4);
    CHECK(f.b.isSkewSymmetric());
    CHECK(determinant(f.b) == Rational(1));
}
