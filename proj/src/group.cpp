#include "ihorbit/group.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "ihorbit/errors.hpp"

namespace ihorbit
{

FiniteGroup::FiniteGroup(std::vector<std::string> labels, std::vector<std::vector<int>> table)
    : labels_(std::move(labels)), table_(std::move(table))
{
    int n = static_cast<int>(labels_.size());
    if (n == 0)
        throw Error(ErrorKind::BadGroup, "group has no elements");
    if (std::set<std::string>(labels_.begin(), labels_.end()).size() != labels_.size())
        throw Error(ErrorKind::BadGroup, "duplicate element labels");
    if (table_.size() != labels_.size())
        throw Error(ErrorKind::BadGroup, "multiplication table has the wrong number of rows");
    for (auto const& row : table_)
    {
        if (row.size() != labels_.size())
            throw Error(ErrorKind::BadGroup, "multiplication table row has the wrong length");
        for (int x : row)
            if (x < 0 || x >= n)
                throw Error(ErrorKind::BadGroup, "product outside the group");
    }
    identity_ = -1;
    for (int e = 0; e < n && identity_ < 0; ++e)
    {
        bool ok = true;
        for (int a = 0; a < n && ok; ++a)
            ok = mul(e, a) == a && mul(a, e) == a;
        if (ok)
            identity_ = e;
    }
    if (identity_ < 0)
        throw Error(ErrorKind::BadGroup, "no identity element");
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c)
                if (mul(mul(a, b), c) != mul(a, mul(b, c)))
                    throw Error(ErrorKind::BadGroup, "multiplication is not associative at (" + labels_[static_cast<std::size_t>(a)] +
                                                         ", " + labels_[static_cast<std::size_t>(b)] + ", " +
                                                         labels_[static_cast<std::size_t>(c)] + ")");
    inverse_.assign(static_cast<std::size_t>(n), -1);
    for (int a = 0; a < n; ++a)
    {
        for (int b = 0; b < n; ++b)
            if (mul(a, b) == identity_ && mul(b, a) == identity_)
                inverse_[static_cast<std::size_t>(a)] = b;
        if (inverse_[static_cast<std::size_t>(a)] < 0)
            throw Error(ErrorKind::BadGroup, "element " + labels_[static_cast<std::size_t>(a)] + " has no inverse");
    }
}

FiniteGroup FiniteGroup::trivial()
{
    return FiniteGroup({"e"}, {{0}});
}

FiniteGroup FiniteGroup::cyclic(int k)
{
    if (k < 1)
        throw Error(ErrorKind::BadGroup, "cyclic group order must be positive");
    std::vector<std::string> labels;
    std::vector<std::vector<int>> table(static_cast<std::size_t>(k), std::vector<int>(static_cast<std::size_t>(k)));
    for (int a = 0; a < k; ++a)
    {
        labels.push_back(std::to_string(a));
        for (int b = 0; b < k; ++b)
            table[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = (a + b) % k;
    }
    return FiniteGroup(std::move(labels), std::move(table));
}

FiniteGroup FiniteGroup::symmetric(int n)
{
    if (n < 1 || n > 9)
        throw Error(ErrorKind::BadGroup, "symmetric groups are supported for 1 <= n <= 9");
    std::vector<std::vector<int>> perms;
    std::vector<int> p(static_cast<std::size_t>(n));
    std::iota(p.begin(), p.end(), 0);
    do
        perms.push_back(p);
    while (std::next_permutation(p.begin(), p.end()));
    std::vector<std::string> labels;
    for (auto const& q : perms)
    {
        std::string s;
        for (int x : q)
            s += static_cast<char>('0' + x);
        labels.push_back(s);
    }
    std::size_t m = perms.size();
    std::vector<std::vector<int>> table(m, std::vector<int>(m));
    std::vector<int> c(static_cast<std::size_t>(n));
    for (std::size_t a = 0; a < m; ++a)
        for (std::size_t b = 0; b < m; ++b)
        {
            for (std::size_t i = 0; i < c.size(); ++i)
                c[i] = perms[a][static_cast<std::size_t>(perms[b][i])];
            table[a][b] = static_cast<int>(std::lower_bound(perms.begin(), perms.end(), c) - perms.begin());
        }
    return FiniteGroup(std::move(labels), std::move(table));
}

int FiniteGroup::elementOrder(int a) const
{
    int k = 1;
    for (int x = a; x != identity_; x = mul(x, a))
        ++k;
    return k;
}

std::optional<int> FiniteGroup::find(std::string const& label) const
{
    auto it = std::find(labels_.begin(), labels_.end(), label);
    if (it == labels_.end())
        return std::nullopt;
    return static_cast<int>(it - labels_.begin());
}

std::vector<std::vector<int>> FiniteGroup::subgroups() const
{
    int n = order();
    auto closure = [&](std::vector<char> in) {
        std::vector<int> members;
        for (int a = 0; a < n; ++a)
            if (in[static_cast<std::size_t>(a)])
                members.push_back(a);
        for (std::size_t i = 0; i < members.size(); ++i)
            for (std::size_t j = 0; j <= i; ++j)
                for (int c : {mul(members[i], members[j]), mul(members[j], members[i])})
                    if (!in[static_cast<std::size_t>(c)])
                    {
                        in[static_cast<std::size_t>(c)] = 1;
                        members.push_back(c);
                    }
        return in;
    };
    std::set<std::vector<char>> seen;
    std::vector<std::vector<char>> queue;
    std::vector<char> triv(static_cast<std::size_t>(n), 0);
    triv[static_cast<std::size_t>(identity_)] = 1;
    seen.insert(triv);
    queue.push_back(triv);
    for (std::size_t q = 0; q < queue.size(); ++q)
        for (int g = 0; g < n; ++g)
        {
            if (queue[q][static_cast<std::size_t>(g)])
                continue;
            auto next = queue[q];
            next[static_cast<std::size_t>(g)] = 1;
            next = closure(std::move(next));
            if (seen.insert(next).second)
                queue.push_back(next);
        }
    std::vector<std::vector<int>> out;
    for (auto const& mask : queue)
    {
        std::vector<int> h;
        for (int a = 0; a < n; ++a)
            if (mask[static_cast<std::size_t>(a)])
                h.push_back(a);
        out.push_back(std::move(h));
    }
    std::stable_sort(out.begin(), out.end(), [](auto const& a, auto const& b) { return a.size() < b.size(); });
    return out;
}

std::vector<std::vector<int>> FiniteGroup::conjugacyClasses() const
{
    int n = order();
    std::vector<char> done(static_cast<std::size_t>(n), 0);
    std::vector<std::vector<int>> out;
    for (int g = 0; g < n; ++g)
    {
        if (done[static_cast<std::size_t>(g)])
            continue;
        std::set<int> cls;
        for (int h = 0; h < n; ++h)
            cls.insert(mul(mul(h, g), inverse(h)));
        for (int c : cls)
            done[static_cast<std::size_t>(c)] = 1;
        out.emplace_back(cls.begin(), cls.end());
    }
    return out;
}

// ---------------------------------------------------------------------------

Simplex GroupAction::apply(int g, std::span<Vertex const> s) const
{
    Simplex out;
    out.reserve(s.size());
    auto const& p = perm[static_cast<std::size_t>(g)];
    for (Vertex v : s)
        out.push_back(p[static_cast<std::size_t>(v)]);
    std::sort(out.begin(), out.end());
    return out;
}

GroupAction validateAction(FiniteGroup group, SimplicialComplex complex,
                           std::map<int, std::vector<Vertex>> const& generators)
{
    std::size_t nv = complex.numVertices();
    auto maximal = complex.maximalSimplices();
    for (auto const& [g, p] : generators)
    {
        if (g < 0 || g >= group.order())
            throw Error(ErrorKind::BadElement, "unknown group element " + std::to_string(g));
        if (p.size() != nv)
            throw Error(ErrorKind::NotSimplicialAction,
                        "permutation for " + group.label(g) + " does not cover every vertex");
        std::vector<char> hit(nv, 0);
        for (Vertex w : p)
        {
            if (w < 0 || static_cast<std::size_t>(w) >= nv || hit[static_cast<std::size_t>(w)])
                throw Error(ErrorKind::NotSimplicialAction, "map for " + group.label(g) + " is not a bijection");
            hit[static_cast<std::size_t>(w)] = 1;
        }
        for (auto const& s : maximal)
        {
            std::vector<Vertex> img;
            for (Vertex v : s)
                img.push_back(p[static_cast<std::size_t>(v)]);
            if (!complex.containsSet(img))
            {
                std::string text;
                for (Vertex v : s)
                    text += (text.empty() ? "" : " ") + complex.label(v);
                throw Error(ErrorKind::NotSimplicialAction,
                            "element " + group.label(g) + " sends {" + text + "} to a non-simplex");
            }
        }
    }
    GroupAction a;
    a.perm.assign(static_cast<std::size_t>(group.order()), {});
    std::vector<Vertex> id(nv);
    std::iota(id.begin(), id.end(), 0);
    a.perm[static_cast<std::size_t>(group.identity())] = id;
    std::vector<int> queue{group.identity()};
    for (std::size_t q = 0; q < queue.size(); ++q)
    {
        int x = queue[q];
        for (auto const& [s, ps] : generators)
        {
            int y = group.mul(x, s);
            auto const& px = a.perm[static_cast<std::size_t>(x)];
            std::vector<Vertex> py(nv);
            for (std::size_t v = 0; v < nv; ++v)
                py[v] = px[static_cast<std::size_t>(ps[v])];
            auto& slot = a.perm[static_cast<std::size_t>(y)];
            if (slot.empty())
            {
                slot = std::move(py);
                queue.push_back(y);
            }
            else if (slot != py)
                throw Error(ErrorKind::BadGroup,
                            "generator permutations do not satisfy the group table at element " + group.label(y));
        }
    }
    for (int g = 0; g < group.order(); ++g)
        if (a.perm[static_cast<std::size_t>(g)].empty())
            throw Error(ErrorKind::BadGroup, "generators do not generate the group (missing " + group.label(g) + ")");
    a.group = std::move(group);
    a.complex = std::move(complex);
    return a;
}

GroupAction subdivideAction(GroupAction const& action, Subdivision const& sd)
{
    GroupAction out;
    out.group = action.group;
    out.complex = sd.complex;
    auto const& k = action.complex;
    for (auto const& p : action.perm)
    {
        std::vector<Vertex> q(sd.carrier.size());
        for (std::size_t v = 0; v < q.size(); ++v)
        {
            std::vector<Vertex> img;
            for (Vertex w : sd.carrier[v])
                img.push_back(p[static_cast<std::size_t>(w)]);
            std::sort(img.begin(), img.end());
            auto idx = k.indexOf(img);
            q[v] = sd.vertexOf[img.size() - 1][static_cast<std::size_t>(idx)];
        }
        out.perm.push_back(std::move(q));
    }
    return out;
}

// ---------------------------------------------------------------------------

namespace
{

constexpr int kMaxGroupForSearch = 16;
constexpr std::size_t kMaxSimplicesForSearch = 100000;

std::vector<Vertex> orbitIds(GroupAction const& a)
{
    std::vector<Vertex> id(a.complex.numVertices());
    for (std::size_t v = 0; v < id.size(); ++v)
    {
        Vertex m = static_cast<Vertex>(v);
        for (auto const& p : a.perm)
            m = std::min(m, p[v]);
        id[v] = m;
    }
    return id;
}

// Condition (a): no simplex contains two distinct vertices of one orbit.
bool checkNoOrbitEdges(GroupAction const& a, RegularityReport& rep)
{
    auto const& k = a.complex;
    if (k.dim() < 1)
        return true;
    auto orb = orbitIds(a);
    for (std::size_t i = 0; i < k.count(1); ++i)
    {
        auto e = k.simplices(1)[i];
        if (orb[static_cast<std::size_t>(e[0])] == orb[static_cast<std::size_t>(e[1])])
        {
            rep.regular = false;
            rep.simplex = Simplex(e.begin(), e.end());
            for (int g = 0; g < a.group.order(); ++g)
                if (a.perm[static_cast<std::size_t>(g)][static_cast<std::size_t>(e[0])] == e[1])
                {
                    rep.elements = {a.group.identity(), g};
                    break;
                }
            rep.reason = "a simplex contains a vertex v and a translate gv != v";
            return false;
        }
    }
    return true;
}

struct TupleSearch
{
    GroupAction const& a;
    std::vector<int> const& h;
    std::span<Vertex const> s;
    std::vector<int> chosen;
    std::vector<Vertex> image;

    // mask: elements of h (by position) agreeing with every chosen g_i so far
    bool dfs(std::size_t i, std::uint32_t mask)
    {
        if (mask == 0)
            return false;
        if (i == s.size())
            return true;
        Vertex v = s[i];
        for (int g : h)
        {
            Vertex w = a.perm[static_cast<std::size_t>(g)][static_cast<std::size_t>(v)];
            image.push_back(w);
            if (a.complex.containsSet(image))
            {
                std::uint32_t m = 0;
                for (std::size_t t = 0; t < h.size(); ++t)
                    if ((mask >> t) & 1u)
                        if (a.perm[static_cast<std::size_t>(h[t])][static_cast<std::size_t>(v)] == w)
                            m |= 1u << t;
                chosen.push_back(g);
                if (!dfs(i + 1, m))
                    return false;
                chosen.pop_back();
            }
            image.pop_back();
        }
        return true;
    }
};

} // namespace

RegularityReport checkRegular(GroupAction const& action)
{
    RegularityReport rep;
    if (!checkNoOrbitEdges(action, rep))
        return rep;
    auto const& k = action.complex;
    if (action.group.order() > kMaxGroupForSearch || k.totalSimplices() > kMaxSimplicesForSearch)
    {
        rep.decided = false;
        return rep;
    }
    auto subgroups = action.group.subgroups();
    for (auto const& h : subgroups)
    {
        if (h.size() == 1)
            continue;
        for (int d = 1; d <= k.dim(); ++d)
            for (std::size_t i = 0; i < k.count(d); ++i)
            {
                auto s = k.simplices(d)[i];
                TupleSearch ts{action, h, s, {}, {}};
                // g_0 = e without loss of generality
                ts.image.push_back(s[0]);
                ts.chosen.push_back(action.group.identity());
                std::uint32_t mask = 0;
                for (std::size_t t = 0; t < h.size(); ++t)
                    if (action.perm[static_cast<std::size_t>(h[t])][static_cast<std::size_t>(s[0])] == s[0])
                        mask |= 1u << t;
                if (!ts.dfs(1, mask))
                {
                    rep.regular = false;
                    rep.subgroup = h;
                    rep.simplex = Simplex(s.begin(), s.end());
                    rep.elements = ts.chosen;
                    rep.reason = "translated tuple spans a simplex but no single element realises it";
                    return rep;
                }
            }
    }
    return rep;
}

bool isRegular(GroupAction const& action)
{
    auto r = checkRegular(action);
    if (!r.decided)
        throw Error(ErrorKind::OutOfRange, "regularity search bound exceeded");
    return r.regular;
}

Regularized regularize(GroupAction const& action, int maxSubdivisions, std::size_t budget)
{
    if (maxSubdivisions < 0 || maxSubdivisions > 2)
        throw Error(ErrorKind::OutOfRange, "at most two subdivisions are supported");
    Regularized r{action, 0, true};
    auto subdivide = [&] {
        if (auto size = barycentricSize(r.action.complex); size > budget)
            throw Error(ErrorKind::BudgetExceeded, "subdivision " + std::to_string(r.subdivisions + 1) + " would have " +
                                                       std::to_string(size) + " simplices, budget " +
                                                       std::to_string(budget));
        r.action = subdivideAction(r.action, barycentricSubdivision(r.action.complex));
        ++r.subdivisions;
    };
    while (true)
    {
        auto rep = checkRegular(r.action);
        if (!rep.decided)
        {
            // beyond the search bound two subdivisions are applied unconditionally
            if (maxSubdivisions < 2)
                throw Error(ErrorKind::NotRegular, "regularity undecidable within the search bound and fewer than "
                                                   "two subdivisions allowed");
            while (r.subdivisions < 2)
                subdivide();
            r.verified = false;
            return r;
        }
        if (rep.regular)
            return r;
        if (r.subdivisions == maxSubdivisions)
        {
            if (maxSubdivisions == 2)
                throw Error(ErrorKind::InternalError, "action still irregular after two subdivisions");
            throw Error(ErrorKind::NotRegular, "action irregular after " + std::to_string(r.subdivisions) +
                                                   " subdivisions: " + rep.reason);
        }
        subdivide();
    }
}

OrbitComplexData orbitComplex(GroupAction const& action)
{
    auto rep = checkRegular(action);
    if (!rep.regular)
        throw Error(ErrorKind::NotRegular, "orbit complex needs a regular action: " + rep.reason);
    auto const& k = action.complex;
    auto orb = orbitIds(action);
    OrbitComplexData out;
    out.groupOrder = action.group.order();
    std::vector<Vertex> orbitIndex(k.numVertices(), -1);
    std::vector<std::string> labels;
    out.projection.resize(k.numVertices());
    for (std::size_t v = 0; v < k.numVertices(); ++v)
    {
        auto rep0 = static_cast<std::size_t>(orb[v]);
        if (orbitIndex[rep0] < 0)
        {
            orbitIndex[rep0] = static_cast<Vertex>(labels.size());
            labels.push_back(k.label(static_cast<Vertex>(rep0)));
            out.orbits.emplace_back();
        }
        out.projection[v] = orbitIndex[rep0];
        out.orbits[static_cast<std::size_t>(orbitIndex[rep0])].push_back(static_cast<Vertex>(v));
    }
    ComplexBuilder b(labels);
    for (auto const& s : k.maximalSimplices())
    {
        std::vector<Vertex> img;
        for (Vertex v : s)
            img.push_back(out.projection[static_cast<std::size_t>(v)]);
        std::sort(img.begin(), img.end());
        if (std::adjacent_find(img.begin(), img.end()) != img.end())
            throw Error(ErrorKind::NotRegular, "projection collapses a simplex");
        b.addClosed(std::move(img));
    }
    out.quotient = std::move(b).build();
    return out;
}

PseudomanifoldReport checkPseudomanifold(SimplicialComplex const& k)
{
    if (k.empty())
        throw Error(ErrorKind::EmptyComplex, "pseudomanifold check on an empty complex");
    PseudomanifoldReport r;
    int n = k.dim();
    r.dim = n;
    for (auto const& s : k.maximalSimplices())
        if (static_cast<int>(s.size()) - 1 < n)
            r.pm1Violations.push_back(s);
    r.pm1 = r.pm1Violations.empty();
    if (n >= 1)
    {
        auto const& cof = k.cofaceLists(n - 1);
        for (std::size_t i = 0; i < k.count(n - 1); ++i)
            if (cof[i].size() != 2)
                r.pm2Violations.push_back(k.simplices(n - 1).simplex(i));
    }
    r.pm2 = r.pm2Violations.empty();
    if (r.pm1 && r.pm2)
    {
        auto o = fundamentalClass(k);
        r.orientable = o.orientation.has_value();
        r.orientation = std::move(o.orientation);
        r.orientationConflict = std::move(o.conflict);
    }
    return r;
}

std::vector<Simplex> preimageOpenSimplex(OrbitComplexData const& orbit, SimplicialComplex const& source,
                                         Simplex const& delta)
{
    Simplex sorted = delta;
    std::sort(sorted.begin(), sorted.end());
    if (sorted.empty() || !orbit.quotient.contains(sorted))
        throw Error(ErrorKind::NotASimplex, "simplex is not in the orbit complex");
    int d = static_cast<int>(sorted.size()) - 1;
    std::vector<Simplex> out;
    if (d > source.dim())
        return out;
    std::vector<Vertex> img;
    for (std::size_t i = 0; i < source.count(d); ++i)
    {
        auto s = source.simplices(d)[i];
        img.clear();
        for (Vertex v : s)
            img.push_back(orbit.projection[static_cast<std::size_t>(v)]);
        std::sort(img.begin(), img.end());
        if (img == sorted)
            out.emplace_back(s.begin(), s.end());
    }
    return out;
}

SimplicialComplex fixedSubcomplex(GroupAction const& action, int g)
{
    if (g < 0 || g >= action.group.order())
        throw Error(ErrorKind::BadElement, "unknown group element " + std::to_string(g));
    auto const& k = action.complex;
    auto const& p = action.perm[static_cast<std::size_t>(g)];
    ComplexBuilder b(k.labels());
    bool any = false;
    for (int d = 0; d <= k.dim(); ++d)
        for (std::size_t i = 0; i < k.count(d); ++i)
        {
            auto s = k.simplices(d)[i];
            bool fixed = std::all_of(s.begin(), s.end(), [&](Vertex v) { return p[static_cast<std::size_t>(v)] == v; });
            if (fixed)
            {
                b.addSimplex(s);
                any = true;
            }
        }
    if (!any)
        return {};
    return std::move(b).build();
}

int stabilizerOrder(GroupAction const& action, std::span<Vertex const> s)
{
    int count = 0;
    for (auto const& p : action.perm)
        if (std::all_of(s.begin(), s.end(), [&](Vertex v) { return p[static_cast<std::size_t>(v)] == v; }))
            ++count;
    return count;
}

bool isFree(GroupAction const& action)
{
    // g has a fixed point iff it maps some simplex onto itself (its barycentre
    // is then fixed)
    auto const& k = action.complex;
    for (int g = 0; g < action.group.order(); ++g)
    {
        if (g == action.group.identity())
            continue;
        for (int d = 0; d <= k.dim(); ++d)
            for (std::size_t i = 0; i < k.count(d); ++i)
            {
                auto s = k.simplices(d)[i];
                auto img = action.apply(g, s);
                if (std::equal(img.begin(), img.end(), s.begin(), s.end()))
                    return false;
            }
    }
    return true;
}

SparseVec actOnChain(GroupAction const& action, int g, int d, SparseVec const& chain)
{
    auto const& k = action.complex;
    auto const& p = action.perm[static_cast<std::size_t>(g)];
    std::vector<std::pair<std::int64_t, Rational>> entries;
    entries.reserve(chain.size());
    std::vector<Vertex> t;
    for (auto const& [idx, c] : chain)
    {
        t.clear();
        for (Vertex v : k.simplices(d)[static_cast<std::size_t>(idx)])
            t.push_back(p[static_cast<std::size_t>(v)]);
        int sign = sortWithSign(t);
        auto j = k.indexOf(t);
        entries.emplace_back(j, sign > 0 ? c : -c);
    }
    return makeSparse(std::move(entries));
}

std::vector<bool> isOrientationPreserving(GroupAction const& action, Orientation const& orientation)
{
    auto const& k = action.complex;
    if (orientation.dim != k.dim() || orientation.topSigns.size() != k.count(k.dim()))
        throw Error(ErrorKind::NotOriented, "orientation does not belong to this complex");
    auto z = orientation.cycle();
    std::vector<bool> out;
    for (int g = 0; g < action.group.order(); ++g)
        out.push_back(actOnChain(action, g, k.dim(), z) == z);
    return out;
}

Orientation orbitOrientation(GroupAction const& action, OrbitComplexData const& orbit,
                             Orientation const& orientation)
{
    auto const& x = action.complex;
    auto const& y = orbit.quotient;
    int n = x.dim();
    if (orientation.dim != n || orientation.topSigns.size() != x.count(n))
        throw Error(ErrorKind::NotOriented, "orientation does not belong to this complex");
    if (y.dim() != n)
        throw Error(ErrorKind::NotOriented, "orbit complex has lower dimension");
    auto pushed = pushForward(x, y, orbit.projection, n, orientation.cycle());
    if (pushed.size() != y.count(n))
        throw Error(ErrorKind::NotOriented, "push-forward of the fundamental cycle misses a top simplex");
    Orientation out;
    out.dim = n;
    out.topSigns.reserve(pushed.size());
    for (auto const& [idx, c] : pushed)
        out.topSigns.push_back(c.sign());
    if (!boundary(y, n, out.cycle()).empty())
        throw Error(ErrorKind::NotOriented, "push-forward signs are not coherent on the orbit complex");
    return out;
}

} // namespace ihorbit
