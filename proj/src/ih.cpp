#include "ihorbit/ih.hpp"

#include <algorithm>

#include "ihorbit/errors.hpp"

namespace ihorbit
{

bool isFull(FilteredComplex const& x)
{
    auto const& k = x.complex();
    std::vector<std::pair<int, Vertex>> byLevel;
    std::vector<Vertex> face;
    for (int d = 1; d <= k.dim(); ++d)
        for (std::size_t i = 0; i < k.count(d); ++i)
        {
            auto s = k.simplices(d)[i];
            byLevel.clear();
            for (Vertex v : s)
                byLevel.emplace_back(x.level(0, static_cast<std::size_t>(v)), v);
            std::sort(byLevel.begin(), byLevel.end());
            int top = x.level(d, i);
            // X_j meets s in the span of the vertices of level <= j
            for (std::size_t c = 1; c <= byLevel.size(); ++c)
            {
                int j = byLevel[c - 1].first;
                if (c < byLevel.size() && byLevel[c].first == j)
                    continue;
                if (j >= top)
                    break;
                if (c == byLevel.size())
                    return false;
                face.clear();
                for (std::size_t t = 0; t < c; ++t)
                    face.push_back(byLevel[t].second);
                std::sort(face.begin(), face.end());
                if (x.levelOf(face) > j)
                    return false;
            }
        }
    return true;
}

FilteredComplex liftFiltration(FilteredComplex const& x, Subdivision const& sd)
{
    auto const& b = sd.complex;
    std::vector<int> vertexLevel(b.numVertices());
    for (std::size_t v = 0; v < vertexLevel.size(); ++v)
        vertexLevel[v] = x.levelOf(sd.carrier[v]);
    std::vector<std::vector<int>> levels;
    for (int d = 0; d <= b.dim(); ++d)
    {
        std::vector<int> lv(b.count(d));
        for (std::size_t i = 0; i < lv.size(); ++i)
        {
            int m = 0;
            for (Vertex v : b.simplices(d)[i])
                m = std::max(m, vertexLevel[static_cast<std::size_t>(v)]);
            lv[i] = m;
        }
        levels.push_back(std::move(lv));
    }
    return FilteredComplex(b, x.formalDim(), std::move(levels));
}

std::vector<Vertex> subdivideMap(std::vector<Vertex> const& vertexMap, Subdivision const& sdSource,
                                 Subdivision const& sdTarget)
{
    std::vector<Vertex> out(sdSource.carrier.size());
    std::vector<Vertex> img;
    for (std::size_t v = 0; v < out.size(); ++v)
    {
        img.clear();
        for (Vertex w : sdSource.carrier[v])
            img.push_back(vertexMap[static_cast<std::size_t>(w)]);
        std::sort(img.begin(), img.end());
        img.erase(std::unique(img.begin(), img.end()), img.end());
        std::size_t e = img.size() - 1;
        if (e >= sdTarget.vertexOf.size())
            throw Error(ErrorKind::NotSimplicial, "image simplex too large for target");
        auto const& ids = sdTarget.vertexOf[e];
        // carriers of one dimension are in lexicographic order
        std::int64_t idx = -1;
        {
            std::size_t lo = 0;
            std::size_t hi = ids.size();
            while (lo < hi)
            {
                std::size_t mid = (lo + hi) / 2;
                auto const& c = sdTarget.carrier[static_cast<std::size_t>(ids[mid])];
                if (c < img)
                    lo = mid + 1;
                else
                    hi = mid;
            }
            if (lo < ids.size() && sdTarget.carrier[static_cast<std::size_t>(ids[lo])] == img)
                idx = static_cast<std::int64_t>(lo);
        }
        if (idx < 0)
            throw Error(ErrorKind::NotSimplicial, "vertex map does not send a simplex to a simplex");
        out[v] = ids[static_cast<std::size_t>(idx)];
    }
    return out;
}

// ---------------------------------------------------------------------------

IntersectionChainComplex::IntersectionChainComplex(FilteredComplex x, Perversity p)
    : x_(std::move(x)), p_(std::move(p))
{
    if (!isFull(x_))
        throw Error(ErrorKind::InvalidFiltration, "allowable chains need a full filtration");
    auto const& k = x_.complex();
    int n = x_.formalDim();
    int minLevel = n;
    for (std::size_t v = 0; v < k.numVertices(); ++v)
        minLevel = std::min(minLevel, x_.level(0, v));
    if (n - minLevel >= 2 && n - minLevel > p_.maxCodim())
        throw Error(ErrorKind::PerversityDomainError, "perversity " + p_.name() + " is undefined at codimension " +
                                                          std::to_string(n - minLevel));
    std::vector<int> pv(static_cast<std::size_t>(std::max(n, 0)) + 1, 0);
    for (int s = 2; s <= n - minLevel; ++s)
        pv[static_cast<std::size_t>(s)] = p_(s);

    allowable_.resize(static_cast<std::size_t>(k.dim()) + 1);
    allowableList_.resize(allowable_.size());
    std::vector<int> lv;
    for (int d = 0; d <= k.dim(); ++d)
    {
        auto& flags = allowable_[static_cast<std::size_t>(d)];
        flags.assign(k.count(d), 0);
        for (std::size_t i = 0; i < k.count(d); ++i)
        {
            lv.clear();
            for (Vertex v : k.simplices(d)[i])
                lv.push_back(x_.level(0, static_cast<std::size_t>(v)));
            std::sort(lv.begin(), lv.end());
            bool ok = true;
            // the face in X^s = X_{n-s} is spanned by the vertices of level <= n-s
            std::size_t count = lv.size();
            for (int s = 2; s <= n - lv.front() && ok; ++s)
            {
                while (count > 0 && lv[count - 1] > n - s)
                    --count;
                if (count == 0)
                    break;
                if (static_cast<int>(count) - 1 > d - s + pv[static_cast<std::size_t>(s)])
                    ok = false;
            }
            if (ok)
            {
                flags[i] = 1;
                allowableList_[static_cast<std::size_t>(d)].push_back(i);
            }
        }
    }
}

std::vector<SparseVec> IntersectionChainComplex::boundaryOfAllowable(int d) const
{
    std::vector<SparseVec> cols;
    auto const& k = x_.complex();
    for (auto i : allowableSimplices(d))
        cols.push_back(boundaryColumn(k, d, i));
    return cols;
}

SparseVec IntersectionChainComplex::nonAllowablePart(int d, SparseVec const& v) const
{
    SparseVec out;
    for (auto const& e : v)
        if (!allowable(d, static_cast<std::size_t>(e.first)))
            out.push_back(e);
    return out;
}

std::vector<SparseVec> IntersectionChainComplex::chainBasis(int d) const
{
    std::vector<SparseVec> basis;
    auto const& a = allowableSimplices(d);
    if (d == 0)
    {
        for (auto i : a)
            basis.push_back(SparseVec{{static_cast<std::int64_t>(i), Rational(1)}});
        return basis;
    }
    auto const& k = x_.complex();
    EchelonBasis e;
    for (auto i : a)
    {
        SparseVec tag{{static_cast<std::int64_t>(i), Rational(1)}};
        SparseVec zero;
        if (!e.insert(nonAllowablePart(d - 1, boundaryColumn(k, d, i)), tag, &zero))
            basis.push_back(std::move(zero));
    }
    return basis;
}

std::vector<int> IntersectionChainComplex::betti() const
{
    auto const& k = x_.complex();
    int top = k.dim();
    std::vector<std::size_t> r1(static_cast<std::size_t>(top) + 2, 0);
    std::vector<std::size_t> r2(static_cast<std::size_t>(top) + 2, 0);
    for (int d = 1; d <= top; ++d)
    {
        EchelonBasis full;
        EchelonBasis restricted;
        for (auto i : allowableSimplices(d))
        {
            auto col = boundaryColumn(k, d, i);
            auto bad = nonAllowablePart(d - 1, col);
            full.insert(std::move(col));
            if (!bad.empty())
                restricted.insert(std::move(bad));
        }
        r1[static_cast<std::size_t>(d)] = full.rank();
        r2[static_cast<std::size_t>(d)] = restricted.rank();
    }
    std::vector<int> out;
    for (int d = 0; d <= top; ++d)
    {
        auto ud = static_cast<std::size_t>(d);
        long long v = static_cast<long long>(allowableSimplices(d).size()) - static_cast<long long>(r1[ud]) -
                      static_cast<long long>(r1[ud + 1]) + static_cast<long long>(r2[ud + 1]);
        out.push_back(static_cast<int>(v));
    }
    return out;
}

HomologyBasis IntersectionChainComplex::homologyBasis(int d) const
{
    auto const& k = x_.complex();
    std::vector<SparseVec> cycles;
    if (d == 0)
    {
        for (auto i : allowableSimplices(0))
            cycles.push_back(SparseVec{{static_cast<std::int64_t>(i), Rational(1)}});
    }
    else
    {
        EchelonBasis e;
        for (auto i : allowableSimplices(d))
        {
            SparseVec tag{{static_cast<std::int64_t>(i), Rational(1)}};
            SparseVec zero;
            if (!e.insert(boundaryColumn(k, d, i), tag, &zero))
                cycles.push_back(std::move(zero));
        }
    }
    std::vector<SparseVec> boundaries;
    if (d < k.dim())
        for (auto const& xi : chainBasis(d + 1))
        {
            auto b = boundary(k, d + 1, xi);
            if (!b.empty())
                boundaries.push_back(std::move(b));
        }
    return HomologyBasis(cycles, boundaries);
}

IHResult intersectionHomology(FilteredComplex const& x, Perversity const& p)
{
    IHResult r;
    if (isFull(x))
    {
        r.betti = IntersectionChainComplex(x, p).betti();
        return r;
    }
    auto sd = barycentricSubdivision(x.complex());
    r.betti = IntersectionChainComplex(liftFiltration(x, sd), p).betti();
    r.subdivisions = 1;
    return r;
}

HomologyBasis ordinaryHomologyBasis(SimplicialComplex const& k, int d)
{
    std::vector<SparseVec> cycles;
    if (d == 0)
    {
        for (std::size_t i = 0; i < k.count(0); ++i)
            cycles.push_back(SparseVec{{static_cast<std::int64_t>(i), Rational(1)}});
    }
    else
    {
        EchelonBasis e;
        for (std::size_t i = 0; i < k.count(d); ++i)
        {
            SparseVec tag{{static_cast<std::int64_t>(i), Rational(1)}};
            SparseVec zero;
            if (!e.insert(boundaryColumn(k, d, i), tag, &zero))
                cycles.push_back(std::move(zero));
        }
    }
    std::vector<SparseVec> boundaries;
    if (d < k.dim())
        for (std::size_t i = 0; i < k.count(d + 1); ++i)
            boundaries.push_back(boundaryColumn(k, d + 1, i));
    return HomologyBasis(cycles, boundaries);
}

// ---------------------------------------------------------------------------

IHModel::IHModel(FilteredComplex const& x, Perversity const& p, bool subdivide)
    : original_(x),
      subdivision_((subdivide || !isFull(x)) ? std::optional<Subdivision>(barycentricSubdivision(x.complex()))
                                             : std::nullopt),
      chains_(subdivision_ ? liftFiltration(x, *subdivision_) : x, p)
{
    for (int d = 0; d <= chains_.dim(); ++d)
    {
        ih_.push_back(chains_.homologyBasis(d));
        h_.push_back(ordinaryHomologyBasis(full().complex(), d));
    }
}

std::vector<int> IHModel::ihBetti() const
{
    std::vector<int> out;
    for (auto const& b : ih_)
        out.push_back(static_cast<int>(b.dimension()));
    return out;
}

Matrix IHModel::canonicalMap(int d) const
{
    auto const& src = ih(d);
    auto const& dst = ordinary(d);
    Matrix m(dst.dimension(), src.dimension());
    for (std::size_t j = 0; j < src.dimension(); ++j)
    {
        auto c = dst.coordinates(src.generators()[j]);
        if (!c)
            throw Error(ErrorKind::InternalError, "IH generator is not a cycle");
        for (std::size_t i = 0; i < c->size(); ++i)
            m(i, j) = (*c)[i];
    }
    return m;
}

std::vector<Vertex> IHModel::liftMap(std::vector<Vertex> const& vertexMap, IHModel const& target) const
{
    if (subdivision_.has_value() != target.subdivision_.has_value())
        throw Error(ErrorKind::InternalError, "models were subdivided inconsistently");
    if (!subdivision_)
        return vertexMap;
    return subdivideMap(vertexMap, *subdivision_, *target.subdivision_);
}

Matrix inducedMatrix(IHModel const& source, IHModel const& target, std::vector<Vertex> const& fullMap, int d,
                     bool ordinaryHomology)
{
    auto const& src = ordinaryHomology ? source.ordinary(d) : source.ih(d);
    std::size_t rows = 0;
    HomologyBasis const* dst = nullptr;
    if (d <= target.dim())
    {
        dst = ordinaryHomology ? &target.ordinary(d) : &target.ih(d);
        rows = dst->dimension();
    }
    Matrix m(rows, src.dimension());
    if (!dst)
        return m;
    auto const& sk = source.full().complex();
    auto const& tk = target.full().complex();
    for (std::size_t j = 0; j < src.dimension(); ++j)
    {
        auto img = pushForward(sk, tk, fullMap, d, src.generators()[j]);
        auto c = dst->coordinates(img);
        if (!c)
            throw Error(ErrorKind::InternalError, "image of a generator is not an allowable cycle");
        for (std::size_t i = 0; i < rows; ++i)
            m(i, j) = (*c)[i];
    }
    return m;
}

InducedMapIH inducedMapIH(std::vector<Vertex> const& vertexMap, FilteredComplex const& source,
                          FilteredComplex const& target, Perversity const& p)
{
    auto cls = classifyMap(vertexMap, source, target);
    if (!cls.placid)
        throw Error(ErrorKind::NotPlacid, "map is not placid; no induced map on IH");
    bool subdivide = !isFull(source) || !isFull(target);
    IHModel s(source, p, subdivide);
    IHModel t(target, p, subdivide);
    auto lifted = s.liftMap(vertexMap, t);
    InducedMapIH out;
    out.subdivisions = subdivide ? 1 : 0;
    for (int d = 0; d <= s.dim(); ++d)
        out.matrices.push_back(inducedMatrix(s, t, lifted, d));
    return out;
}

} // namespace ihorbit
