#include "ihorbit/witt.hpp"

#include <algorithm>
#include <map>

#include "ihorbit/errors.hpp"
#include "ihorbit/ih.hpp"
#include "parallel.hpp"

namespace ihorbit
{

namespace
{

using Colors = std::vector<int>;

// Replaces each signature by its rank among the distinct signatures, so the
// colouring never depends on vertex ids.
template <typename Sig>
Colors rankSignatures(std::vector<Sig> const& sigs)
{
    std::vector<Sig> sorted = sigs;
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    Colors out(sigs.size());
    for (std::size_t v = 0; v < sigs.size(); ++v)
        out[v] = static_cast<int>(std::lower_bound(sorted.begin(), sorted.end(), sigs[v]) - sorted.begin());
    return out;
}

int distinct(Colors const& c)
{
    return c.empty() ? 0 : *std::max_element(c.begin(), c.end()) + 1;
}

struct Canonizer
{
    std::vector<Simplex> maximal;
    std::vector<std::vector<std::size_t>> containing;  // vertex -> maximal simplices
    std::size_t budget;
    std::size_t leaves = 0;
    std::optional<std::vector<Simplex>> best;

    Colors refine(Colors c) const
    {
        while (true)
        {
            using Sig = std::pair<int, std::vector<std::vector<int>>>;
            std::vector<Sig> sigs(c.size());
            for (std::size_t v = 0; v < c.size(); ++v)
            {
                sigs[v].first = c[v];
                for (auto m : containing[v])
                {
                    std::vector<int> others;
                    for (Vertex u : maximal[m])
                        if (static_cast<std::size_t>(u) != v)
                            others.push_back(c[static_cast<std::size_t>(u)]);
                    std::sort(others.begin(), others.end());
                    sigs[v].second.push_back(std::move(others));
                }
                std::sort(sigs[v].second.begin(), sigs[v].second.end());
            }
            Colors next = rankSignatures(sigs);
            if (distinct(next) == distinct(c))
                return next;
            c = std::move(next);
        }
    }

    bool search(Colors const& c)
    {
        int k = distinct(c);
        if (static_cast<std::size_t>(k) == c.size())
        {
            if (++leaves > budget)
                return false;
            std::vector<Simplex> cert;
            for (auto const& s : maximal)
            {
                Simplex t;
                for (Vertex v : s)
                    t.push_back(c[static_cast<std::size_t>(v)]);
                std::sort(t.begin(), t.end());
                cert.push_back(std::move(t));
            }
            std::sort(cert.begin(), cert.end());
            if (!best || cert < *best)
                best = std::move(cert);
            return true;
        }
        // first smallest non-singleton cell
        std::vector<int> size(static_cast<std::size_t>(k), 0);
        for (int x : c)
            ++size[static_cast<std::size_t>(x)];
        int cell = -1;
        for (int x = 0; x < k; ++x)
            if (size[static_cast<std::size_t>(x)] > 1 &&
                (cell < 0 || size[static_cast<std::size_t>(x)] < size[static_cast<std::size_t>(cell)]))
                cell = x;
        for (std::size_t v = 0; v < c.size(); ++v)
        {
            if (c[v] != cell)
                continue;
            std::vector<std::pair<int, int>> sigs(c.size());
            for (std::size_t u = 0; u < c.size(); ++u)
                sigs[u] = {c[u], u == v ? 0 : 1};
            if (!search(refine(rankSignatures(sigs))))
                return false;
        }
        return true;
    }
};

} // namespace

std::optional<std::string> canonicalForm(SimplicialComplex const& k, std::size_t leafBudget)
{
    if (k.empty())
        return std::string("empty");
    Canonizer cz;
    cz.maximal = k.maximalSimplices();
    cz.containing.resize(k.numVertices());
    for (std::size_t m = 0; m < cz.maximal.size(); ++m)
        for (Vertex v : cz.maximal[m])
            cz.containing[static_cast<std::size_t>(v)].push_back(m);
    cz.budget = leafBudget;
    std::vector<std::vector<int>> init(k.numVertices());
    for (std::size_t v = 0; v < init.size(); ++v)
    {
        for (auto m : cz.containing[v])
            init[v].push_back(static_cast<int>(cz.maximal[m].size()));
        std::sort(init[v].begin(), init[v].end());
    }
    if (!cz.search(cz.refine(rankSignatures(init))))
        return std::nullopt;
    std::string out = std::to_string(k.numVertices()) + ":";
    for (auto const& s : *cz.best)
    {
        for (std::size_t i = 0; i < s.size(); ++i)
            out += (i ? "," : "") + std::to_string(s[i]);
        out += ";";
    }
    return out;
}

std::vector<int> middleIH(SimplicialComplex const& k)
{
    auto x = skeletalFiltration(k);
    return intersectionHomology(x, Perversity::lowerMiddle(std::max(k.dim(), 2))).betti;
}

WittReport isWitt(SimplicialComplex const& k, int jobs)
{
    auto pm = checkPseudomanifold(k);
    if (!pm.pm1 || !pm.pm2)
        throw Error(ErrorKind::NotPseudomanifold, "Witt check needs PM1 and PM2");
    int n = k.dim();
    WittReport rep;
    struct Task
    {
        int d;
        std::size_t idx;
        SimplicialComplex link;
        std::optional<std::string> form;
        int value = 0;
    };
    std::vector<Task> tasks;
    for (int d = 0; d <= n; ++d)
    {
        int linkDim = n - d - 1;
        if (linkDim == 0)
        {
            rep.exemptLinks += k.count(d);
            continue;
        }
        if (linkDim < 2 || linkDim % 2 != 0)
            continue;
        for (std::size_t i = 0; i < k.count(d); ++i)
            tasks.push_back({d, i, {}, {}, 0});
    }
    rep.checkedLinks = tasks.size();

    detail::parallelFor(jobs, tasks.size(), [&](std::size_t t) {
        auto& task = tasks[t];
        task.link = link(k, k.simplices(task.d).simplex(task.idx));
        task.form = canonicalForm(task.link);
    });
    // one IH computation per isomorphism type, chosen deterministically
    std::map<std::string, std::size_t> firstOf;
    std::vector<std::size_t> compute;
    for (std::size_t t = 0; t < tasks.size(); ++t)
    {
        if (!tasks[t].form)
        {
            compute.push_back(t);
            continue;
        }
        auto [it, fresh] = firstOf.emplace(*tasks[t].form, t);
        if (fresh)
            compute.push_back(t);
        else
            ++rep.cacheHits;
    }
    detail::parallelFor(jobs, compute.size(), [&](std::size_t c) {
        auto& task = tasks[compute[c]];
        int kk = task.link.dim() / 2;
        task.value = middleIH(task.link)[static_cast<std::size_t>(kk)];
    });
    for (auto& task : tasks)
    {
        if (task.form)
            task.value = tasks[firstOf.at(*task.form)].value;
        if (task.value != 0)
            rep.failures.push_back({k.simplices(task.d).simplex(task.idx), task.link.dim(), task.value});
    }
    rep.isWitt = rep.failures.empty();
    return rep;
}

int suspensionIHOracle(SimplicialComplex const& l, int s, int i)
{
    if (s < 0)
        throw Error(ErrorKind::OutOfRange, "number of suspensions must be nonnegative");
    if (i < 0 || i > l.dim() / 2)
        throw Error(ErrorKind::OutOfRange, "degree " + std::to_string(i) + " is above the suspension-stable range");
    return middleIH(l)[static_cast<std::size_t>(i)];
}

// ---------------------------------------------------------------------------

std::vector<std::vector<int>> fibreSums(RamifiedCoverData const& cover)
{
    auto const& src = cover.source;
    auto const& base = cover.base;
    std::vector<std::vector<int>> sums;
    for (int d = 0; d <= base.dim(); ++d)
        sums.emplace_back(base.count(d), 0);
    std::vector<Vertex> img;
    for (int d = 0; d <= src.dim(); ++d)
        for (std::size_t i = 0; i < src.count(d); ++i)
        {
            img.clear();
            for (Vertex v : src.simplices(d)[i])
                img.push_back(cover.projection[static_cast<std::size_t>(v)]);
            std::sort(img.begin(), img.end());
            auto j = base.indexOf(img);
            if (j < 0 || std::adjacent_find(img.begin(), img.end()) != img.end())
                throw Error(ErrorKind::NotSimplicial, "projection does not map open simplices onto open simplices");
            sums[static_cast<std::size_t>(d)][static_cast<std::size_t>(j)] +=
                cover.multiplicity[static_cast<std::size_t>(d)][i];
        }
    return sums;
}

RamifiedCoverData ramifiedStructure(SimplicialComplex source, SimplicialComplex base, std::vector<Vertex> projection,
                                    std::vector<std::vector<int>> multiplicity, int degree)
{
    RamifiedCoverData c{std::move(source), std::move(base), std::move(projection), std::move(multiplicity), degree};
    if (c.projection.size() != c.source.numVertices())
        throw Error(ErrorKind::NotSimplicial, "projection does not cover every vertex");
    if (c.multiplicity.size() != static_cast<std::size_t>(c.source.dim()) + 1)
        throw Error(ErrorKind::NotRamified, "multiplicity table has the wrong shape");
    for (int d = 0; d <= c.source.dim(); ++d)
    {
        auto const& row = c.multiplicity[static_cast<std::size_t>(d)];
        if (row.size() != c.source.count(d))
            throw Error(ErrorKind::NotRamified, "multiplicity table has the wrong shape");
        for (int m : row)
            if (m < 1)
                throw Error(ErrorKind::NotRamified, "multiplicities must be positive");
    }
    auto sums = fibreSums(c);
    for (int d = 0; d <= c.base.dim(); ++d)
        for (std::size_t j = 0; j < c.base.count(d); ++j)
            if (sums[static_cast<std::size_t>(d)][j] != degree)
            {
                std::string text;
                for (Vertex v : c.base.simplices(d)[j])
                    text += (text.empty() ? "" : " ") + c.base.label(v);
                throw Error(ErrorKind::NotRamified, "fibre over {" + text + "} has multiplicity sum " +
                                                        std::to_string(sums[static_cast<std::size_t>(d)][j]) +
                                                        ", expected " + std::to_string(degree));
            }
    return c;
}

RamifiedCoverData ramifiedStructure(GroupAction const& action, OrbitComplexData const& orbit)
{
    auto const& k = action.complex;
    std::vector<std::vector<int>> mu;
    for (int d = 0; d <= k.dim(); ++d)
    {
        std::vector<int> row(k.count(d));
        for (std::size_t i = 0; i < row.size(); ++i)
            row[i] = stabilizerOrder(action, k.simplices(d)[i]);
        mu.push_back(std::move(row));
    }
    return ramifiedStructure(k, orbit.quotient, orbit.projection, std::move(mu), action.group.order());
}

RamifiedCoverData suspendCover(RamifiedCoverData const& cover)
{
    auto src = suspension(cover.source);
    auto base = suspension(cover.base);
    auto srcN = static_cast<Vertex>(cover.source.numVertices());
    auto baseN = static_cast<Vertex>(cover.base.numVertices());
    auto proj = cover.projection;
    proj.push_back(baseN);
    proj.push_back(baseN + 1);
    std::vector<std::vector<int>> mu;
    std::vector<Vertex> rest;
    for (int d = 0; d <= src.dim(); ++d)
    {
        std::vector<int> row(src.count(d));
        for (std::size_t i = 0; i < row.size(); ++i)
        {
            rest.clear();
            for (Vertex v : src.simplices(d)[i])
                if (v < srcN)
                    rest.push_back(v);
            if (rest.empty())
                row[i] = cover.degree;
            else
            {
                auto j = cover.source.indexOf(rest);
                row[i] = cover.multiplicity[rest.size() - 1][static_cast<std::size_t>(j)];
            }
        }
        mu.push_back(std::move(row));
    }
    return ramifiedStructure(std::move(src), std::move(base), std::move(proj), std::move(mu), cover.degree);
}

LinkCoverVerdict linkCoverCheck(RamifiedCoverData const& cover, Simplex const& delta)
{
    Simplex sorted = delta;
    std::sort(sorted.begin(), sorted.end());
    if (sorted.empty() || !cover.base.contains(sorted))
        throw Error(ErrorKind::NotASimplex, "simplex is not in the base of the cover");
    LinkCoverVerdict v;
    v.baseLinkDim = link(cover.base, sorted).dim();
    int d = static_cast<int>(sorted.size()) - 1;
    std::vector<Vertex> img;
    for (std::size_t i = 0; i < cover.source.count(d); ++i)
    {
        auto s = cover.source.simplices(d)[i];
        img.clear();
        for (Vertex w : s)
            img.push_back(cover.projection[static_cast<std::size_t>(w)]);
        std::sort(img.begin(), img.end());
        if (img != sorted)
            continue;
        ++v.preimages;
        Simplex pre(s.begin(), s.end());
        int ld = link(cover.source, pre).dim();
        v.linkDims.push_back(ld);
        v.fibreSum += cover.multiplicity[static_cast<std::size_t>(d)][i];
        if (ld != v.baseLinkDim)
        {
            std::string text;
            for (Vertex w : pre)
                text += (text.empty() ? "" : " ") + cover.source.label(w);
            v.failures.push_back("link of {" + text + "} has dimension " + std::to_string(ld) + ", base link has " +
                                 std::to_string(v.baseLinkDim));
        }
    }
    if (v.fibreSum != cover.degree)
        v.failures.push_back("multiplicities over the simplex sum to " + std::to_string(v.fibreSum) + ", expected " +
                             std::to_string(cover.degree));
    v.ok = v.failures.empty();
    return v;
}

} // namespace ihorbit
