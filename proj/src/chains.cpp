#include "ihorbit/chains.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>

#include "ihorbit/errors.hpp"

namespace ihorbit
{

SparseVec boundaryColumn(SimplicialComplex const& k, int d, std::size_t idx)
{
    SparseVec col;
    if (d <= 0)
        return col;
    auto s = k.simplices(d)[idx];
    std::vector<std::pair<std::int64_t, Rational>> entries;
    entries.reserve(s.size());
    std::vector<Vertex> face;
    for (std::size_t skip = 0; skip < s.size(); ++skip)
    {
        face.clear();
        for (std::size_t i = 0; i < s.size(); ++i)
            if (i != skip)
                face.push_back(s[i]);
        std::int64_t f = k.simplices(d - 1).find(face);
        entries.emplace_back(f, Rational(skip % 2 == 0 ? 1 : -1));
    }
    std::sort(entries.begin(), entries.end(),
              [](auto const& a, auto const& b) { return a.first < b.first; });
    return entries;
}

SparseVec boundary(SimplicialComplex const& k, int d, SparseVec const& chain)
{
    std::vector<std::pair<std::int64_t, Rational>> entries;
    for (auto const& [idx, c] : chain)
        for (auto const& [f, s] : boundaryColumn(k, d, static_cast<std::size_t>(idx)))
            entries.emplace_back(f, s * c);
    return makeSparse(std::move(entries));
}

ChainComplexData chainComplex(SimplicialComplex const& k)
{
    ChainComplexData c;
    for (int d = 0; d <= k.dim(); ++d)
    {
        std::vector<Simplex> basis;
        std::vector<SparseVec> cols;
        for (std::size_t i = 0; i < k.count(d); ++i)
        {
            basis.push_back(k.simplices(d).simplex(i));
            if (d > 0)
                cols.push_back(boundaryColumn(k, d, i));
        }
        c.bases.push_back(std::move(basis));
        c.boundaryMatrices.push_back(std::move(cols));
    }
    return c;
}

bool boundarySquaresToZero(ChainComplexData const& c)
{
    for (std::size_t d = 2; d < c.boundaryMatrices.size(); ++d)
    {
        auto const& lower = c.boundaryMatrices[d - 1];
        for (auto const& col : c.boundaryMatrices[d])
        {
            std::vector<std::pair<std::int64_t, Rational>> entries;
            for (auto const& [i, a] : col)
                for (auto const& [j, b] : lower[static_cast<std::size_t>(i)])
                    entries.emplace_back(j, a * b);
            if (!makeSparse(std::move(entries)).empty())
                return false;
        }
    }
    return true;
}

SimplexImage imageOf(std::span<Vertex const> sigma, std::vector<Vertex> const& vertexMap,
                     SimplicialComplex const& target)
{
    std::vector<Vertex> img;
    img.reserve(sigma.size());
    for (Vertex v : sigma)
        img.push_back(vertexMap.at(static_cast<std::size_t>(v)));
    int sign = sortWithSign(img);
    std::vector<Vertex> set = img;
    set.erase(std::unique(set.begin(), set.end()), set.end());
    std::int64_t idx = target.indexOf(set);
    if (idx < 0)
        throw Error(ErrorKind::NotSimplicial, "vertex map sends a simplex to a non-simplex");
    SimplexImage r;
    if (sign != 0)
    {
        r.index = idx;
        r.sign = sign;
    }
    return r;
}

SparseVec pushForward(SimplicialComplex const& source, SimplicialComplex const& target,
                      std::vector<Vertex> const& vertexMap, int d, SparseVec const& chain)
{
    std::vector<std::pair<std::int64_t, Rational>> entries;
    for (auto const& [idx, c] : chain)
    {
        auto im = imageOf(source.simplices(d)[static_cast<std::size_t>(idx)], vertexMap, target);
        if (im.sign != 0)
            entries.emplace_back(im.index, im.sign > 0 ? c : -c);
    }
    return makeSparse(std::move(entries));
}

// ---------------------------------------------------------------------------

namespace
{

/// Dense Smith normal form on a small integer matrix; returns the nonzero
/// invariant factors.
std::vector<mpz_class> denseSmith(std::vector<std::vector<mpz_class>> a)
{
    std::vector<mpz_class> factors;
    std::size_t rows = a.size();
    std::size_t cols = rows ? a[0].size() : 0;
    std::size_t t = 0;
    while (t < rows && t < cols)
    {
        // pick the nonzero entry of least absolute value in the remaining block
        std::size_t pr = rows, pc = cols;
        for (std::size_t i = t; i < rows; ++i)
            for (std::size_t j = t; j < cols; ++j)
                if (a[i][j] != 0 && (pr == rows || abs(a[i][j]) < abs(a[pr][pc])))
                {
                    pr = i;
                    pc = j;
                }
        if (pr == rows)
            break;
        std::swap(a[t], a[pr]);
        for (auto& row : a)
            std::swap(row[t], row[pc]);
        bool done = false;
        while (!done)
        {
            done = true;
            // clear column t
            for (std::size_t i = t + 1; i < rows; ++i)
            {
                if (a[i][t] == 0)
                    continue;
                mpz_class q;
                mpz_fdiv_q(q.get_mpz_t(), a[i][t].get_mpz_t(), a[t][t].get_mpz_t());
                for (std::size_t j = t; j < cols; ++j)
                    a[i][j] -= q * a[t][j];
                if (a[i][t] != 0)
                {
                    std::swap(a[t], a[i]);
                    done = false;
                }
            }
            // clear row t
            for (std::size_t j = t + 1; j < cols; ++j)
            {
                if (a[t][j] == 0)
                    continue;
                mpz_class q;
                mpz_fdiv_q(q.get_mpz_t(), a[t][j].get_mpz_t(), a[t][t].get_mpz_t());
                for (std::size_t i = t; i < rows; ++i)
                    a[i][j] -= q * a[i][t];
                if (a[t][j] != 0)
                {
                    for (auto& row : a)
                        std::swap(row[t], row[j]);
                    done = false;
                }
            }
            if (done)
            {
                // divisibility: the pivot must divide every remaining entry
                for (std::size_t i = t + 1; i < rows && done; ++i)
                    for (std::size_t j = t + 1; j < cols; ++j)
                        if (a[i][j] % a[t][t] != 0)
                        {
                            for (std::size_t jj = t; jj < cols; ++jj)
                                a[t][jj] += a[i][jj];
                            done = false;
                            break;
                        }
            }
        }
        factors.push_back(abs(a[t][t]));
        ++t;
    }
    return factors;
}

} // namespace

SmithResult smithNormalForm(std::vector<SparseVec> columns, std::size_t rows)
{
    // Sparse phase: eliminate unit pivots.  Every Schur update with a +-1
    // pivot keeps the matrix integral.
    SmithResult result;
    std::vector<std::set<std::size_t>> rowCols(rows);
    for (std::size_t c = 0; c < columns.size(); ++c)
        for (auto const& [r, v] : columns[c])
        {
            if (!v.isInteger())
                throw Error(ErrorKind::InternalError, "smithNormalForm: non-integer entry");
            rowCols[static_cast<std::size_t>(r)].insert(c);
        }
    std::vector<bool> alive(columns.size(), true);
    bool progress = true;
    while (progress)
    {
        progress = false;
        // choose a unit entry minimising a Markowitz-style cost
        std::size_t bestC = columns.size();
        std::int64_t bestR = -1;
        std::size_t bestCost = 0;
        for (std::size_t c = 0; c < columns.size(); ++c)
        {
            if (!alive[c] || columns[c].empty())
                continue;
            for (auto const& [r, v] : columns[c])
            {
                if (!(v == Rational(1) || v == Rational(-1)))
                    continue;
                std::size_t cost = (columns[c].size() - 1) * (rowCols[static_cast<std::size_t>(r)].size() - 1);
                if (bestR < 0 || cost < bestCost)
                {
                    bestR = r;
                    bestC = c;
                    bestCost = cost;
                }
                if (cost == 0)
                    break;
            }
            if (bestR >= 0 && bestCost == 0)
                break;
        }
        if (bestR < 0)
            break;
        progress = true;
        Rational pivot;
        for (auto const& [r, v] : columns[bestC])
            if (r == bestR)
                pivot = v;
        std::vector<std::size_t> others(rowCols[static_cast<std::size_t>(bestR)].begin(),
                                        rowCols[static_cast<std::size_t>(bestR)].end());
        SparseVec const pcol = columns[bestC];
        for (std::size_t c : others)
        {
            if (c == bestC)
                continue;
            Rational a;
            for (auto const& [r, v] : columns[c])
                if (r == bestR)
                    a = v;
            Rational f = a / pivot;
            SparseVec before = columns[c];
            subtractMultiple(columns[c], f, pcol);
            for (auto const& [r, v] : before)
                rowCols[static_cast<std::size_t>(r)].erase(c);
            for (auto const& [r, v] : columns[c])
                rowCols[static_cast<std::size_t>(r)].insert(c);
        }
        // Row bestR is now zero outside the pivot, so clearing the rest of the
        // pivot column by row operations leaves the other columns untouched:
        // drop the pivot row and column.
        for (auto const& [r, v] : pcol)
            rowCols[static_cast<std::size_t>(r)].erase(bestC);
        alive[bestC] = false;
        ++result.rank;
    }
    // Dense phase on what remains.
    std::vector<std::size_t> liveCols;
    std::set<std::size_t> liveRows;
    for (std::size_t c = 0; c < columns.size(); ++c)
        if (alive[c] && !columns[c].empty())
        {
            liveCols.push_back(c);
            for (auto const& [r, v] : columns[c])
                liveRows.insert(static_cast<std::size_t>(r));
        }
    if (!liveCols.empty())
    {
        std::map<std::size_t, std::size_t> rowPos;
        for (auto r : liveRows)
            rowPos.emplace(r, rowPos.size());
        std::vector<std::vector<mpz_class>> dense(rowPos.size(), std::vector<mpz_class>(liveCols.size()));
        for (std::size_t j = 0; j < liveCols.size(); ++j)
            for (auto const& [r, v] : columns[liveCols[j]])
                dense[rowPos[static_cast<std::size_t>(r)]][j] = v.numerator();
        for (auto const& f : denseSmith(std::move(dense)))
        {
            ++result.rank;
            if (f != 1)
                result.torsion.push_back(f);
        }
    }
    std::sort(result.torsion.begin(), result.torsion.end());
    return result;
}

namespace
{

std::vector<std::size_t> rationalRanks(SimplicialComplex const& k)
{
    // ranks[d] = rank of the boundary map C_d -> C_{d-1}, computed top down
    // with clearing: a (d)-simplex that is the pivot of a reduced (d+1)-column
    // is a cycle creator and its own column reduces to zero.
    int n = k.dim();
    std::vector<std::size_t> ranks(static_cast<std::size_t>(n) + 2, 0);
    std::vector<bool> cleared;
    for (int d = n; d >= 1; --d)
    {
        std::vector<bool> nextCleared(k.count(d - 1), false);
        EchelonBasis e;
        for (std::size_t i = 0; i < k.count(d); ++i)
        {
            if (!cleared.empty() && cleared[i])
                continue;
            SparseVec col = boundaryColumn(k, d, i);
            e.reduce(col, nullptr);
            if (!col.empty())
            {
                nextCleared[static_cast<std::size_t>(col.back().first)] = true;
                e.insert(std::move(col));
            }
        }
        ranks[static_cast<std::size_t>(d)] = e.rank();
        cleared = std::move(nextCleared);
    }
    return ranks;
}

} // namespace

std::vector<int> bettiNumbers(SimplicialComplex const& k)
{
    auto ranks = rationalRanks(k);
    std::vector<int> betti;
    for (int d = 0; d <= k.dim(); ++d)
        betti.push_back(static_cast<int>(k.count(d)) - static_cast<int>(ranks[static_cast<std::size_t>(d)]) -
                        static_cast<int>(ranks[static_cast<std::size_t>(d) + 1]));
    return betti;
}

std::vector<HomologyGroup> homology(SimplicialComplex const& k, Ring ring)
{
    std::vector<HomologyGroup> out(static_cast<std::size_t>(k.dim()) + 1);
    if (ring == Ring::Rationals)
    {
        auto b = bettiNumbers(k);
        for (std::size_t d = 0; d < b.size(); ++d)
            out[d].betti = b[d];
        return out;
    }
    std::vector<std::size_t> ranks(static_cast<std::size_t>(k.dim()) + 2, 0);
    for (int d = 1; d <= k.dim(); ++d)
    {
        std::vector<SparseVec> cols;
        for (std::size_t i = 0; i < k.count(d); ++i)
            cols.push_back(boundaryColumn(k, d, i));
        auto snf = smithNormalForm(std::move(cols), k.count(d - 1));
        ranks[static_cast<std::size_t>(d)] = snf.rank;
        out[static_cast<std::size_t>(d) - 1].torsion = snf.torsion;
    }
    for (int d = 0; d <= k.dim(); ++d)
        out[static_cast<std::size_t>(d)].betti =
            static_cast<int>(k.count(d)) - static_cast<int>(ranks[static_cast<std::size_t>(d)]) -
            static_cast<int>(ranks[static_cast<std::size_t>(d) + 1]);
    return out;
}

// ---------------------------------------------------------------------------

SparseVec Orientation::cycle() const
{
    SparseVec c;
    for (std::size_t i = 0; i < topSigns.size(); ++i)
        c.emplace_back(static_cast<std::int64_t>(i), Rational(topSigns[i]));
    return c;
}

OrientationResult fundamentalClass(SimplicialComplex const& k)
{
    if (k.empty())
        throw Error(ErrorKind::NotPseudomanifold, "empty complex");
    int n = k.dim();
    if (!k.isPure())
        throw Error(ErrorKind::NotPseudomanifold, "complex is not pure");
    OrientationResult result;
    Orientation o;
    o.dim = n;
    o.topSigns.assign(k.count(n), 0);
    if (n == 0)
    {
        std::fill(o.topSigns.begin(), o.topSigns.end(), 1);
        result.orientation = std::move(o);
        return result;
    }
    auto const& cof = k.cofaceLists(n - 1);
    for (auto const& c : cof)
        if (c.size() != 2)
            throw Error(ErrorKind::NotPseudomanifold, "an (n-1)-simplex does not have exactly two cofaces");
    // facet incidence: for each top simplex, its facets with boundary signs
    auto facetSign = [&](std::size_t top, std::size_t facet) {
        for (auto const& [f, s] : boundaryColumn(k, n, top))
            if (static_cast<std::size_t>(f) == facet)
                return s.sign();
        return 0;
    };
    for (std::size_t start = 0; start < o.topSigns.size(); ++start)
    {
        if (o.topSigns[start] != 0)
            continue;
        o.topSigns[start] = 1;
        std::deque<std::size_t> queue{start};
        while (!queue.empty())
        {
            std::size_t t = queue.front();
            queue.pop_front();
            for (auto const& [f, s] : boundaryColumn(k, n, t))
            {
                auto const& pair = cof[static_cast<std::size_t>(f)];
                std::size_t other = pair[0] == t ? pair[1] : pair[0];
                // coherence: sign_t * s + sign_other * s' = 0
                int want = -o.topSigns[t] * s.sign() * facetSign(other, static_cast<std::size_t>(f));
                if (o.topSigns[other] == 0)
                {
                    o.topSigns[other] = want;
                    queue.push_back(other);
                }
                else if (o.topSigns[other] != want)
                {
                    result.conflict = k.simplices(n - 1).simplex(static_cast<std::size_t>(f));
                    return result;
                }
            }
        }
    }
    result.orientation = std::move(o);
    return result;
}

Orientation subdivideOrientation(Orientation const& o, Subdivision const& sd)
{
    auto const& b = sd.complex;
    int n = o.dim;
    if (b.dim() != n)
        throw Error(ErrorKind::NotOriented, "orientation and subdivision have different dimensions");
    Orientation out;
    out.dim = n;
    out.topSigns.resize(b.count(n));
    std::map<Vertex, std::size_t> topIndex;
    auto const& tops = sd.vertexOf[static_cast<std::size_t>(n)];
    for (std::size_t i = 0; i < tops.size(); ++i)
        topIndex[tops[i]] = i;
    std::vector<std::pair<std::size_t, Vertex>> byDim;
    std::vector<Vertex> added;
    std::vector<Vertex> ordered;
    for (std::size_t i = 0; i < b.count(n); ++i)
    {
        byDim.clear();
        for (Vertex v : b.simplices(n)[i])
            byDim.emplace_back(sd.carrier[static_cast<std::size_t>(v)].size(), v);
        std::sort(byDim.begin(), byDim.end());
        added.clear();
        ordered.clear();
        Simplex const* prev = nullptr;
        for (auto const& [size, v] : byDim)
        {
            auto const& c = sd.carrier[static_cast<std::size_t>(v)];
            for (Vertex w : c)
                if (!prev || !std::binary_search(prev->begin(), prev->end(), w))
                {
                    added.push_back(w);
                    break;
                }
            ordered.push_back(v);
            prev = &c;
        }
        auto pos = topIndex.at(byDim.back().second);
        out.topSigns[i] = o.topSigns[pos] * permutationSign(added) * permutationSign(ordered);
    }
    return out;
}

// ---------------------------------------------------------------------------

HomologyBasis::HomologyBasis(std::vector<SparseVec> const& cycles, std::vector<SparseVec> const& boundaries)
{
    for (auto const& b : boundaries)
        echelon_.insert(b);
    for (auto const& z : cycles)
    {
        SparseVec tag{{static_cast<std::int64_t>(generators_.size()), Rational(1)}};
        if (echelon_.insert(z, std::move(tag)))
            generators_.push_back(z);
    }
}

std::optional<std::vector<Rational>> HomologyBasis::coordinates(SparseVec const& cycle) const
{
    auto c = echelon_.coordinates(cycle);
    if (!c)
        return std::nullopt;
    std::vector<Rational> out(generators_.size());
    for (auto const& [i, v] : *c)
        out[static_cast<std::size_t>(i)] = v;
    return out;
}

} // namespace ihorbit
