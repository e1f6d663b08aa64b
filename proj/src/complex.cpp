#include "ihorbit/complex.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <set>

#include "ihorbit/errors.hpp"

namespace ihorbit
{

int sortWithSign(std::vector<Vertex>& tuple)
{
    int sign = 1;
    // insertion sort, counting transpositions
    for (std::size_t i = 1; i < tuple.size(); ++i)
    {
        Vertex x = tuple[i];
        std::size_t j = i;
        while (j > 0 && tuple[j - 1] > x)
        {
            tuple[j] = tuple[j - 1];
            --j;
            sign = -sign;
        }
        tuple[j] = x;
    }
    for (std::size_t i = 1; i < tuple.size(); ++i)
        if (tuple[i] == tuple[i - 1])
            return 0;
    return sign;
}

int permutationSign(std::vector<Vertex> const& tuple)
{
    std::vector<Vertex> t = tuple;
    return sortWithSign(t);
}

// ---------------------------------------------------------------------------

std::uint64_t SimplexTable::hash(std::span<Vertex const> s) const
{
    std::uint64_t h = 0x9e3779b97f4a7c15ULL;
    for (Vertex v : s)
    {
        h ^= static_cast<std::uint64_t>(static_cast<std::uint32_t>(v)) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        h *= 0xff51afd7ed558ccdULL;
    }
    return h ^ (h >> 33);
}

std::int64_t SimplexTable::find(std::span<Vertex const> s) const
{
    if (s.size() != width() || slots_.empty())
        return -1;
    std::size_t mask = slots_.size() - 1;
    std::size_t pos = hash(s) & mask;
    while (true)
    {
        std::int64_t idx = slots_[pos];
        if (idx < 0)
            return -1;
        auto t = (*this)[static_cast<std::size_t>(idx)];
        if (std::equal(s.begin(), s.end(), t.begin()))
            return idx;
        pos = (pos + 1) & mask;
    }
}

void SimplexTable::rehash(std::size_t buckets)
{
    slots_.assign(buckets, -1);
    std::size_t mask = buckets - 1;
    for (std::size_t i = 0; i < count_; ++i)
    {
        std::size_t pos = hash((*this)[i]) & mask;
        while (slots_[pos] >= 0)
            pos = (pos + 1) & mask;
        slots_[pos] = static_cast<std::int64_t>(i);
    }
}

std::size_t SimplexTable::insert(std::span<Vertex const> s)
{
    std::int64_t found = find(s);
    if (found >= 0)
        return static_cast<std::size_t>(found);
    if ((count_ + 1) * 2 > slots_.size())
        rehash(std::max<std::size_t>(16, slots_.size() * 2));
    verts_.insert(verts_.end(), s.begin(), s.end());
    std::size_t idx = count_++;
    std::size_t mask = slots_.size() - 1;
    std::size_t pos = hash(s) & mask;
    while (slots_[pos] >= 0)
        pos = (pos + 1) & mask;
    slots_[pos] = static_cast<std::int64_t>(idx);
    return idx;
}

void SimplexTable::finalize()
{
    std::size_t w = width();
    std::vector<std::size_t> order(count_);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return std::lexicographical_compare(verts_.begin() + static_cast<std::ptrdiff_t>(a * w),
                                            verts_.begin() + static_cast<std::ptrdiff_t>((a + 1) * w),
                                            verts_.begin() + static_cast<std::ptrdiff_t>(b * w),
                                            verts_.begin() + static_cast<std::ptrdiff_t>((b + 1) * w));
    });
    std::vector<Vertex> sorted;
    sorted.reserve(verts_.size());
    for (std::size_t i : order)
        sorted.insert(sorted.end(), verts_.begin() + static_cast<std::ptrdiff_t>(i * w),
                      verts_.begin() + static_cast<std::ptrdiff_t>((i + 1) * w));
    verts_ = std::move(sorted);
    std::size_t buckets = 16;
    while (buckets < count_ * 2)
        buckets *= 2;
    rehash(buckets);
}

// ---------------------------------------------------------------------------

struct SimplicialComplex::CofaceCache
{
    std::mutex mutex;
    std::map<int, std::vector<std::vector<std::size_t>>> lists;
};

ComplexBuilder::ComplexBuilder(std::vector<std::string> labels) : labels_(std::move(labels)) {}

void ComplexBuilder::addSimplex(std::span<Vertex const> sorted)
{
    std::size_t d = sorted.size() - 1;
    while (tables_.size() <= d)
        tables_.emplace_back(static_cast<int>(tables_.size()));
    tables_[d].insert(sorted);
}

void ComplexBuilder::addClosed(std::vector<Vertex> simplex)
{
    std::sort(simplex.begin(), simplex.end());
    simplex.erase(std::unique(simplex.begin(), simplex.end()), simplex.end());
    if (simplex.empty())
        return;
    for (Vertex v : simplex)
        if (v < 0 || static_cast<std::size_t>(v) >= labels_.size())
            throw Error(ErrorKind::InternalError, "ComplexBuilder: vertex id out of range");
    std::size_t n = simplex.size();
    if (n > 30)
        throw Error(ErrorKind::InternalError, "ComplexBuilder: simplex too large");
    // Skip work when the simplex (hence all faces) is already present.
    if (tables_.size() >= n && tables_[n - 1].find(simplex) >= 0)
        return;
    std::vector<Vertex> face;
    face.reserve(n);
    for (std::uint32_t mask = 1; mask < (1u << n); ++mask)
    {
        face.clear();
        for (std::size_t i = 0; i < n; ++i)
            if (mask & (1u << i))
                face.push_back(simplex[i]);
        addSimplex(face);
    }
}

SimplicialComplex ComplexBuilder::build() &&
{
    if (tables_.empty())
        throw Error(ErrorKind::EmptyComplex, "no simplices");
    SimplicialComplex k;
    // Drop unused vertices by renumbering (labels keep their relative order).
    std::vector<bool> used(labels_.size(), false);
    for (std::size_t i = 0; i < tables_[0].size(); ++i)
        used[static_cast<std::size_t>(tables_[0][i][0])] = true;
    bool all = std::all_of(used.begin(), used.end(), [](bool b) { return b; });
    if (all)
    {
        k.tables_ = std::move(tables_);
        k.labels_ = std::move(labels_);
    }
    else
    {
        std::vector<Vertex> remap(labels_.size(), -1);
        for (std::size_t v = 0; v < labels_.size(); ++v)
            if (used[v])
            {
                remap[v] = static_cast<Vertex>(k.labels_.size());
                k.labels_.push_back(labels_[v]);
            }
        for (auto& t : tables_)
        {
            SimplexTable nt(t.dim());
            std::vector<Vertex> s;
            for (std::size_t i = 0; i < t.size(); ++i)
            {
                s.clear();
                for (Vertex v : t[i])
                    s.push_back(remap[static_cast<std::size_t>(v)]);
                nt.insert(s);
            }
            k.tables_.push_back(std::move(nt));
        }
    }
    for (auto& t : k.tables_)
        t.finalize();
    for (std::size_t v = 0; v < k.labels_.size(); ++v)
    {
        auto [it, inserted] = k.labelIndex_.emplace(k.labels_[v], static_cast<Vertex>(v));
        if (!inserted)
            throw Error(ErrorKind::InternalError, "duplicate vertex label '" + k.labels_[v] + "'");
    }
    k.cofaceCache_ = std::make_shared<SimplicialComplex::CofaceCache>();
    return k;
}

SimplicialComplex SimplicialComplex::fromMaximal(std::vector<std::vector<Vertex>> const& maximal,
                                                 std::vector<std::string> labels)
{
    if (maximal.empty())
        throw Error(ErrorKind::EmptyComplex, "no maximal simplices given");
    Vertex maxV = -1;
    for (auto const& s : maximal)
    {
        if (s.empty())
            throw Error(ErrorKind::EmptyComplex, "empty simplex in input");
        for (Vertex v : s)
        {
            if (v < 0)
                throw Error(ErrorKind::InternalError, "negative vertex id");
            maxV = std::max(maxV, v);
        }
    }
    if (labels.empty())
        for (Vertex v = 0; v <= maxV; ++v)
            labels.push_back(std::to_string(v));
    if (labels.size() <= static_cast<std::size_t>(maxV))
        throw Error(ErrorKind::InternalError, "not enough labels for vertex ids");
    ComplexBuilder b(std::move(labels));
    for (auto const& s : maximal)
        b.addClosed(s);
    return std::move(b).build();
}

SimplicialComplex SimplicialComplex::fromLabelled(std::vector<std::vector<std::string>> const& maximal)
{
    std::vector<std::string> labels;
    std::unordered_map<std::string, Vertex> ids;
    std::vector<std::vector<Vertex>> simplices;
    for (auto const& s : maximal)
    {
        std::vector<Vertex> t;
        for (auto const& l : s)
        {
            auto [it, inserted] = ids.emplace(l, static_cast<Vertex>(labels.size()));
            if (inserted)
                labels.push_back(l);
            t.push_back(it->second);
        }
        simplices.push_back(std::move(t));
    }
    return fromMaximal(simplices, std::move(labels));
}

std::size_t SimplicialComplex::count(int d) const
{
    if (d < 0 || d > dim())
        return 0;
    return tables_[static_cast<std::size_t>(d)].size();
}

std::size_t SimplicialComplex::totalSimplices() const
{
    std::size_t n = 0;
    for (auto const& t : tables_)
        n += t.size();
    return n;
}

std::int64_t SimplicialComplex::indexOf(std::span<Vertex const> s) const
{
    if (s.empty() || s.size() > tables_.size())
        return -1;
    return tables_[s.size() - 1].find(s);
}

bool SimplicialComplex::containsSet(std::vector<Vertex> s) const
{
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    return indexOf(s) >= 0;
}

std::optional<Vertex> SimplicialComplex::vertexByLabel(std::string const& label) const
{
    auto it = labelIndex_.find(label);
    if (it == labelIndex_.end())
        return std::nullopt;
    return it->second;
}

std::vector<std::vector<std::size_t>> const& SimplicialComplex::cofaceLists(int d) const
{
    static std::vector<std::vector<std::size_t>> const none;
    if (!cofaceCache_)
        return none;
    std::lock_guard<std::mutex> lock(cofaceCache_->mutex);
    auto it = cofaceCache_->lists.find(d);
    if (it != cofaceCache_->lists.end())
        return it->second;
    std::vector<std::vector<std::size_t>> lists(count(d));
    if (d + 1 <= dim())
    {
        auto const& up = tables_[static_cast<std::size_t>(d + 1)];
        std::vector<Vertex> face;
        for (std::size_t j = 0; j < up.size(); ++j)
        {
            auto s = up[j];
            for (std::size_t skip = 0; skip < s.size(); ++skip)
            {
                face.clear();
                for (std::size_t i = 0; i < s.size(); ++i)
                    if (i != skip)
                        face.push_back(s[i]);
                auto f = tables_[static_cast<std::size_t>(d)].find(face);
                lists[static_cast<std::size_t>(f)].push_back(j);
            }
        }
    }
    return cofaceCache_->lists.emplace(d, std::move(lists)).first->second;
}

std::vector<std::size_t> SimplicialComplex::cofaces(int d, std::size_t idx) const
{
    return cofaceLists(d).at(idx);
}

std::vector<Simplex> SimplicialComplex::star(Simplex const& sigma) const
{
    std::vector<Simplex> out;
    std::int64_t idx = indexOf(sigma);
    if (idx < 0)
        return out;
    int d = static_cast<int>(sigma.size()) - 1;
    std::vector<std::size_t> layer{static_cast<std::size_t>(idx)};
    while (!layer.empty())
    {
        for (auto i : layer)
            out.push_back(simplices(d).simplex(i));
        if (d == dim())
            break;
        std::set<std::size_t> next;
        auto const& lists = cofaceLists(d);
        for (auto i : layer)
            next.insert(lists[i].begin(), lists[i].end());
        layer.assign(next.begin(), next.end());
        ++d;
    }
    return out;
}

std::vector<Simplex> SimplicialComplex::maximalSimplices() const
{
    std::vector<Simplex> out;
    for (int d = 0; d <= dim(); ++d)
    {
        auto const& lists = cofaceLists(d);
        for (std::size_t i = 0; i < count(d); ++i)
            if (lists[i].empty())
                out.push_back(simplices(d).simplex(i));
    }
    return out;
}

bool operator==(SimplicialComplex const& a, SimplicialComplex const& b)
{
    if (a.labels_ != b.labels_ || a.tables_.size() != b.tables_.size())
        return false;
    for (std::size_t d = 0; d < a.tables_.size(); ++d)
    {
        if (a.tables_[d].size() != b.tables_[d].size())
            return false;
        for (std::size_t i = 0; i < a.tables_[d].size(); ++i)
        {
            auto x = a.tables_[d][i];
            auto y = b.tables_[d][i];
            if (!std::equal(x.begin(), x.end(), y.begin()))
                return false;
        }
    }
    return true;
}

std::vector<std::size_t> SimplicialComplex::fVector() const
{
    std::vector<std::size_t> f;
    for (auto const& t : tables_)
        f.push_back(t.size());
    return f;
}

long long SimplicialComplex::eulerCharacteristic() const
{
    long long chi = 0;
    for (std::size_t d = 0; d < tables_.size(); ++d)
        chi += (d % 2 == 0 ? 1 : -1) * static_cast<long long>(tables_[d].size());
    return chi;
}

bool SimplicialComplex::isPure() const
{
    for (int d = 0; d < dim(); ++d)
    {
        auto const& lists = cofaceLists(d);
        for (auto const& l : lists)
            if (l.empty())
                return false;
    }
    return true;
}

// ---------------------------------------------------------------------------

SimplicialComplex link(SimplicialComplex const& k, Simplex const& sigma)
{
    Simplex s = sigma;
    std::sort(s.begin(), s.end());
    if (!k.contains(s))
        throw Error(ErrorKind::NotASimplex, "simplex is not in the complex");
    auto star = k.star(s);
    std::vector<Vertex> remap(k.numVertices(), -1);
    std::vector<std::string> labels;
    std::vector<std::vector<Vertex>> faces;
    for (auto const& t : star)
    {
        if (t.size() == s.size())
            continue;
        std::vector<Vertex> rest;
        std::set_difference(t.begin(), t.end(), s.begin(), s.end(), std::back_inserter(rest));
        for (Vertex& v : rest)
        {
            auto& r = remap[static_cast<std::size_t>(v)];
            if (r < 0)
            {
                r = static_cast<Vertex>(labels.size());
                labels.push_back(k.label(v));
            }
            v = r;
        }
        faces.push_back(std::move(rest));
    }
    if (faces.empty())
        return SimplicialComplex();
    ComplexBuilder b(std::move(labels));
    for (auto& f : faces)
    {
        std::sort(f.begin(), f.end());
        b.addSimplex(f);
    }
    return std::move(b).build();
}

namespace
{

std::string joinLabels(SimplicialComplex const& k, std::span<Vertex const> s)
{
    std::string out = "{";
    for (std::size_t i = 0; i < s.size(); ++i)
    {
        if (i)
            out += ",";
        out += k.label(s[i]);
    }
    return out + "}";
}

} // namespace

std::size_t barycentricSize(SimplicialComplex const& k)
{
    static constexpr std::size_t fubini[] = {1, 1, 3, 13, 75, 541, 4683, 47293, 545835};
    std::size_t total = 0;
    for (int d = 0; d <= k.dim(); ++d)
    {
        if (d + 1 >= static_cast<int>(std::size(fubini)))
            return SIZE_MAX;
        total += k.count(d) * fubini[d + 1];
    }
    return total;
}

Subdivision barycentricSubdivision(SimplicialComplex const& k)
{
    if (k.empty())
        throw Error(ErrorKind::EmptyComplex, "cannot subdivide an empty complex");
    Subdivision sd;
    std::vector<std::string> labels;
    sd.vertexOf.resize(static_cast<std::size_t>(k.dim()) + 1);
    for (int d = 0; d <= k.dim(); ++d)
    {
        auto const& t = k.simplices(d);
        sd.vertexOf[static_cast<std::size_t>(d)].resize(t.size());
        for (std::size_t i = 0; i < t.size(); ++i)
        {
            sd.vertexOf[static_cast<std::size_t>(d)][i] = static_cast<Vertex>(labels.size());
            labels.push_back(d == 0 ? k.label(t[i][0]) : joinLabels(k, t[i]));
            sd.carrier.push_back(t.simplex(i));
        }
    }
    // Vertex labels of original vertices are kept verbatim; make sure that does
    // not collide with a "{...}" label (it cannot, unless a label starts with '{').
    ComplexBuilder b(std::move(labels));
    for (auto const& top : k.maximalSimplices())
    {
        std::vector<Vertex> perm = top;
        std::sort(perm.begin(), perm.end());
        do
        {
            std::vector<Vertex> flag;
            std::vector<Vertex> prefix;
            for (Vertex v : perm)
            {
                prefix.insert(std::upper_bound(prefix.begin(), prefix.end(), v), v);
                auto idx = k.indexOf(prefix);
                flag.push_back(sd.vertexOf[prefix.size() - 1][static_cast<std::size_t>(idx)]);
            }
            b.addClosed(std::move(flag));
        } while (std::next_permutation(perm.begin(), perm.end()));
    }
    sd.complex = std::move(b).build();
    return sd;
}

SimplicialComplex productComplex(SimplicialComplex const& k, SimplicialComplex const& l,
                                 std::vector<Vertex> const& orderK,
                                 std::vector<Vertex> const& orderL)
{
    auto rankOf = [](std::vector<Vertex> const& order, std::size_t n) {
        if (order.size() != n)
            throw Error(ErrorKind::InvalidOrder, "order does not list every vertex once");
        std::vector<int> rank(n, -1);
        for (std::size_t i = 0; i < order.size(); ++i)
        {
            Vertex v = order[i];
            if (v < 0 || static_cast<std::size_t>(v) >= n || rank[static_cast<std::size_t>(v)] >= 0)
                throw Error(ErrorKind::InvalidOrder, "order does not list every vertex once");
            rank[static_cast<std::size_t>(v)] = static_cast<int>(i);
        }
        return rank;
    };
    auto rk = rankOf(orderK, k.numVertices());
    auto rl = rankOf(orderL, l.numVertices());
    std::size_t nl = l.numVertices();
    std::vector<std::string> labels(k.numVertices() * nl);
    for (std::size_t u = 0; u < k.numVertices(); ++u)
        for (std::size_t v = 0; v < nl; ++v)
            labels[u * nl + v] = "(" + k.label(static_cast<Vertex>(u)) + "," + l.label(static_cast<Vertex>(v)) + ")";
    ComplexBuilder b(std::move(labels));
    auto byRank = [](Simplex s, std::vector<int> const& rank) {
        std::sort(s.begin(), s.end(), [&](Vertex a, Vertex c) {
            return rank[static_cast<std::size_t>(a)] < rank[static_cast<std::size_t>(c)];
        });
        return s;
    };
    auto maxK = k.maximalSimplices();
    auto maxL = l.maximalSimplices();
    for (auto const& sk : maxK)
    {
        Simplex a = byRank(sk, rk);
        for (auto const& sl : maxL)
        {
            Simplex c = byRank(sl, rl);
            std::size_t p = a.size() - 1;
            std::size_t q = c.size() - 1;
            // staircase paths: choose which of the p+q steps move in K
            std::vector<bool> stepInK(p + q, false);
            std::fill(stepInK.begin(), stepInK.begin() + static_cast<std::ptrdiff_t>(p), true);
            std::sort(stepInK.begin(), stepInK.end());
            do
            {
                std::vector<Vertex> chain;
                std::size_t i = 0, j = 0;
                chain.push_back(static_cast<Vertex>(static_cast<std::size_t>(a[i]) * nl + static_cast<std::size_t>(c[j])));
                for (bool inK : stepInK)
                {
                    if (inK)
                        ++i;
                    else
                        ++j;
                    chain.push_back(static_cast<Vertex>(static_cast<std::size_t>(a[i]) * nl + static_cast<std::size_t>(c[j])));
                }
                b.addClosed(std::move(chain));
            } while (std::next_permutation(stepInK.begin(), stepInK.end()));
        }
    }
    return std::move(b).build();
}

SimplicialComplex suspension(SimplicialComplex const& k, std::string north, std::string south)
{
    if (k.empty())
        throw Error(ErrorKind::EmptyComplex, "cannot suspend an empty complex");
    auto unique = [&](std::string name) {
        while (k.vertexByLabel(name))
            name += "'";
        return name;
    };
    north = unique(north);
    south = unique(south);
    if (north == south)
        south += "'";
    std::vector<std::string> labels = k.labels();
    Vertex n = static_cast<Vertex>(labels.size());
    Vertex s = n + 1;
    labels.push_back(north);
    labels.push_back(south);
    ComplexBuilder b(std::move(labels));
    for (auto const& top : k.maximalSimplices())
    {
        auto t = top;
        t.push_back(n);
        b.addClosed(t);
        t.back() = s;
        b.addClosed(t);
    }
    return std::move(b).build();
}

SimplicialComplex disjointUnion(std::vector<SimplicialComplex> const& parts, bool tagLabels)
{
    std::vector<std::string> labels;
    std::vector<std::vector<Vertex>> tops;
    for (std::size_t p = 0; p < parts.size(); ++p)
    {
        Vertex offset = static_cast<Vertex>(labels.size());
        for (auto const& l : parts[p].labels())
            labels.push_back(tagLabels ? l + "." + std::to_string(p) : l);
        for (auto top : parts[p].maximalSimplices())
        {
            for (auto& v : top)
                v += offset;
            tops.push_back(std::move(top));
        }
    }
    return SimplicialComplex::fromMaximal(tops, std::move(labels));
}

SimplicialComplex boundaryOfSimplex(int n)
{
    if (n < 0)
        throw Error(ErrorKind::OutOfRange, "sphere dimension must be nonnegative");
    std::vector<std::vector<Vertex>> tops;
    for (Vertex skip = 0; skip <= n + 1; ++skip)
    {
        std::vector<Vertex> t;
        for (Vertex v = 0; v <= n + 1; ++v)
            if (v != skip)
                t.push_back(v);
        tops.push_back(std::move(t));
    }
    return SimplicialComplex::fromMaximal(tops);
}

} // namespace ihorbit
