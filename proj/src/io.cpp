#include "ihorbit/io.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>
#include <unordered_map>

#include "ihorbit/errors.hpp"

namespace ihorbit
{

namespace
{

std::vector<std::string> tokens(std::string const& line)
{
    std::vector<std::string> out;
    std::istringstream ss(line);
    std::string t;
    while (ss >> t)
    {
        if (t[0] == '#')
            break;
        out.push_back(t);
    }
    return out;
}

int toInt(std::string const& s, std::string const& where)
{
    try
    {
        std::size_t pos = 0;
        int v = std::stoi(s, &pos);
        if (pos == s.size())
            return v;
    }
    catch (std::exception const&)
    {
    }
    throw Error(ErrorKind::ParseError, where + "expected an integer, got '" + s + "'");
}

bool sameTable(FiniteGroup const& a, FiniteGroup const& b)
{
    return a.labels() == b.labels() && a.table() == b.table();
}

} // namespace

ParsedInput parseScx(std::istream& in, std::string const& source)
{
    std::vector<std::string> labels;
    std::unordered_map<std::string, Vertex> ids;
    bool fixedVertices = false;
    std::optional<int> declaredDim;
    std::vector<std::vector<Vertex>> simplices;

    std::optional<FiniteGroup> group;
    int groupLine = 0;
    std::vector<std::string> tableLabels;
    std::vector<std::vector<std::string>> rows;
    struct Gen
    {
        int line;
        std::string element;
        std::vector<std::pair<std::string, std::string>> maps;
    };
    std::vector<Gen> gens;
    std::string orientationText;
    int orientationLine = 0;

    auto vertexId = [&](std::string const& label, std::string const& where) {
        auto it = ids.find(label);
        if (it != ids.end())
            return it->second;
        if (fixedVertices)
            throw Error(ErrorKind::ParseError, where + "vertex '" + label + "' is not declared");
        auto v = static_cast<Vertex>(labels.size());
        labels.push_back(label);
        ids.emplace(label, v);
        return v;
    };

    std::string line;
    int lineNo = 0;
    bool inAction = false;
    while (std::getline(in, line))
    {
        ++lineNo;
        std::string where = source + ":" + std::to_string(lineNo) + ": ";
        auto t = tokens(line);
        if (t.empty())
            continue;
        if (t[0] == "dim")
        {
            if (t.size() != 2)
                throw Error(ErrorKind::ParseError, where + "expected 'dim <n>'");
            declaredDim = toInt(t[1], where);
        }
        else if (t[0] == "vertices")
        {
            if (!labels.empty())
                throw Error(ErrorKind::ParseError, where + "'vertices' must precede the simplices");
            for (std::size_t i = 1; i < t.size(); ++i)
            {
                if (ids.count(t[i]))
                    throw Error(ErrorKind::ParseError, where + "vertex '" + t[i] + "' declared twice");
                vertexId(t[i], where);
            }
            fixedVertices = true;
        }
        else if (t[0] == "orientation")
        {
            if (t.size() != 2 || t[1].find_first_not_of("+-") != std::string::npos)
                throw Error(ErrorKind::ParseError, where + "expected 'orientation' followed by a string of + and -");
            orientationText = t[1];
            orientationLine = lineNo;
        }
        else if (t[0] == "group")
        {
            if (group || !tableLabels.empty())
                throw Error(ErrorKind::ParseError, where + "second group declaration");
            inAction = true;
            groupLine = lineNo;
            try
            {
                if (t.size() == 3 && t[1] == "cyclic")
                    group = FiniteGroup::cyclic(toInt(t[2], where));
                else if (t.size() == 3 && t[1] == "symmetric")
                    group = FiniteGroup::symmetric(toInt(t[2], where));
                else if (t.size() == 2 && t[1] == "trivial")
                    group = FiniteGroup::trivial();
                else if (t.size() >= 3 && t[1] == "table")
                    tableLabels.assign(t.begin() + 2, t.end());
                else
                    throw Error(ErrorKind::ParseError, where + "expected 'group cyclic k | symmetric n | trivial | table ...'");
            }
            catch (Error const& e)
            {
                if (e.kind() == ErrorKind::ParseError)
                    throw;
                throw Error(e.kind(), where + e.what());
            }
        }
        else if (t[0] == "row")
        {
            if (tableLabels.empty())
                throw Error(ErrorKind::ParseError, where + "'row' outside a group table");
            rows.emplace_back(t.begin() + 1, t.end());
        }
        else if (t[0] == "gen")
        {
            if (!inAction)
                throw Error(ErrorKind::ParseError, where + "'gen' before 'group'");
            Gen g{lineNo, {}, {}};
            std::size_t start = 2;
            if (t.size() < 2)
                throw Error(ErrorKind::ParseError, where + "expected 'gen <element>: a->b ...'");
            if (t[1].back() == ':')
                g.element = t[1].substr(0, t[1].size() - 1);
            else if (t.size() > 2 && t[2] == ":")
            {
                g.element = t[1];
                start = 3;
            }
            else
                throw Error(ErrorKind::ParseError, where + "expected 'gen <element>: a->b ...'");
            for (std::size_t i = start; i < t.size(); ++i)
            {
                auto arrow = t[i].find("->");
                if (arrow == std::string::npos || arrow == 0 || arrow + 2 >= t[i].size())
                    throw Error(ErrorKind::ParseError, where + "expected 'a->b', got '" + t[i] + "'");
                g.maps.emplace_back(t[i].substr(0, arrow), t[i].substr(arrow + 2));
            }
            gens.push_back(std::move(g));
        }
        else
        {
            if (inAction)
                throw Error(ErrorKind::ParseError, where + "simplex after the action block");
            std::vector<Vertex> s;
            for (auto const& label : t)
                s.push_back(vertexId(label, where));
            auto sorted = s;
            std::sort(sorted.begin(), sorted.end());
            if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
                throw Error(ErrorKind::ParseError, where + "repeated vertex in a simplex");
            if (declaredDim && static_cast<int>(s.size()) - 1 > *declaredDim)
                throw Error(ErrorKind::ParseError, where + "simplex exceeds the declared dimension");
            simplices.push_back(std::move(sorted));
        }
    }
    if (simplices.empty() && labels.empty())
        throw Error(ErrorKind::EmptyComplex, source + ": no simplices");
    for (std::size_t v = 0; v < labels.size(); ++v)
    {
        bool used = std::any_of(simplices.begin(), simplices.end(), [&](auto const& s) {
            return std::find(s.begin(), s.end(), static_cast<Vertex>(v)) != s.end();
        });
        if (!used)
            simplices.push_back({static_cast<Vertex>(v)});
    }

    ParsedInput out;
    out.complex = SimplicialComplex::fromMaximal(simplices, labels);
    if (declaredDim && out.complex.dim() != *declaredDim)
        throw Error(ErrorKind::ParseError, source + ": declared dim " + std::to_string(*declaredDim) +
                                               " but the simplices have dimension " +
                                               std::to_string(out.complex.dim()));
    if (orientationLine > 0)
    {
        std::string where = source + ":" + std::to_string(orientationLine) + ": ";
        int n = out.complex.dim();
        if (orientationText.size() != out.complex.count(n))
            throw Error(ErrorKind::ParseError, where + "orientation needs one sign per top simplex (" +
                                                   std::to_string(out.complex.count(n)) + ")");
        Orientation o;
        o.dim = n;
        for (char c : orientationText)
            o.topSigns.push_back(c == '+' ? 1 : -1);
        if (!boundary(out.complex, n, o.cycle()).empty())
            throw Error(ErrorKind::NotOriented, where + "signs do not form a fundamental cycle");
        out.orientation = std::move(o);
    }
    if (!inAction)
        return out;

    std::string gwhere = source + ":" + std::to_string(groupLine) + ": ";
    if (!tableLabels.empty())
    {
        std::map<std::string, int> pos;
        for (std::size_t i = 0; i < tableLabels.size(); ++i)
            pos[tableLabels[i]] = static_cast<int>(i);
        if (rows.size() != tableLabels.size())
            throw Error(ErrorKind::ParseError, gwhere + "group table needs one row per element");
        std::vector<std::vector<int>> table;
        for (auto const& r : rows)
        {
            if (r.size() != tableLabels.size())
                throw Error(ErrorKind::ParseError, gwhere + "group table row has the wrong length");
            std::vector<int> row;
            for (auto const& x : r)
            {
                auto it = pos.find(x);
                if (it == pos.end())
                    throw Error(ErrorKind::BadGroup, gwhere + "unknown element '" + x + "' in the table");
                row.push_back(it->second);
            }
            table.push_back(std::move(row));
        }
        try
        {
            group = FiniteGroup(tableLabels, table);
        }
        catch (Error const& e)
        {
            throw Error(e.kind(), gwhere + e.what());
        }
    }

    auto const& k = out.complex;
    auto maximal = k.maximalSimplices();
    std::map<int, std::vector<Vertex>> perms;
    for (auto const& g : gens)
    {
        std::string where = source + ":" + std::to_string(g.line) + ": ";
        auto e = group->find(g.element);
        if (!e)
            throw Error(ErrorKind::BadElement, where + "unknown group element '" + g.element + "'");
        if (perms.count(*e))
            throw Error(ErrorKind::ParseError, where + "element '" + g.element + "' given twice");
        std::vector<Vertex> p(k.numVertices());
        for (std::size_t v = 0; v < p.size(); ++v)
            p[v] = static_cast<Vertex>(v);
        std::vector<char> seen(p.size(), 0);
        for (auto const& [a, b] : g.maps)
        {
            auto va = k.vertexByLabel(a);
            auto vb = k.vertexByLabel(b);
            if (!va || !vb)
                throw Error(ErrorKind::NotSimplicialAction, where + "unknown vertex in '" + a + "->" + b + "'");
            if (seen[static_cast<std::size_t>(*va)])
                throw Error(ErrorKind::NotSimplicialAction, where + "vertex '" + a + "' mapped twice");
            seen[static_cast<std::size_t>(*va)] = 1;
            p[static_cast<std::size_t>(*va)] = *vb;
        }
        auto sorted = p;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
            throw Error(ErrorKind::NotSimplicialAction, where + "generator is not a bijection on vertices");
        for (auto const& s : maximal)
        {
            std::vector<Vertex> img;
            for (Vertex v : s)
                img.push_back(p[static_cast<std::size_t>(v)]);
            if (!k.containsSet(img))
            {
                std::string text;
                for (Vertex v : s)
                    text += (text.empty() ? "" : " ") + k.label(v);
                throw Error(ErrorKind::NotSimplicialAction,
                            where + "'" + g.element + "' sends {" + text + "} to a non-simplex");
            }
        }
        perms[*e] = std::move(p);
    }
    try
    {
        out.action = validateAction(*group, k, perms);
    }
    catch (Error const& e)
    {
        throw Error(e.kind(), gwhere + e.what());
    }
    return out;
}

ParsedInput parseScxFile(std::string const& path)
{
    std::ifstream in(path);
    if (!in)
        throw Error(ErrorKind::ParseError, path + ": cannot open file");
    return parseScx(in, path);
}

std::string serializeScx(SimplicialComplex const& k, GroupAction const* action, Orientation const* orientation)
{
    std::ostringstream os;
    os << "dim " << k.dim() << "\n";
    os << "vertices";
    for (auto const& l : k.labels())
        os << ' ' << l;
    os << "\n";
    for (auto const& s : k.maximalSimplices())
    {
        for (std::size_t i = 0; i < s.size(); ++i)
            os << (i ? " " : "") << k.label(s[i]);
        os << "\n";
    }
    if (orientation)
    {
        os << "orientation ";
        for (int x : orientation->topSigns)
            os << (x > 0 ? '+' : '-');
        os << "\n";
    }
    if (!action)
        return os.str();

    auto const& g = action->group;
    int n = g.order();
    if (sameTable(g, FiniteGroup::trivial()))
        os << "group trivial\n";
    else if (sameTable(g, FiniteGroup::cyclic(n)))
        os << "group cyclic " << n << "\n";
    else
    {
        int sym = 0;
        for (int m = 1, f = 1; m <= 9 && f <= n; ++m, f *= m)
            if (f == n)
                sym = m;
        if (sym > 0 && sameTable(g, FiniteGroup::symmetric(sym)))
            os << "group symmetric " << sym << "\n";
        else
        {
            os << "group table";
            for (auto const& l : g.labels())
                os << ' ' << l;
            os << "\n";
            for (int a = 0; a < n; ++a)
            {
                os << "row";
                for (int b = 0; b < n; ++b)
                    os << ' ' << g.label(g.mul(a, b));
                os << "\n";
            }
        }
    }
    // a generating set, greedily
    std::vector<char> reached(static_cast<std::size_t>(n), 0);
    reached[static_cast<std::size_t>(g.identity())] = 1;
    std::vector<int> gens;
    for (int x = 0; x < n; ++x)
    {
        if (reached[static_cast<std::size_t>(x)])
            continue;
        gens.push_back(x);
        std::vector<int> queue;
        for (int y = 0; y < n; ++y)
            if (reached[static_cast<std::size_t>(y)])
                queue.push_back(y);
        for (std::size_t q = 0; q < queue.size(); ++q)
            for (int s : gens)
            {
                int z = g.mul(queue[q], s);
                if (!reached[static_cast<std::size_t>(z)])
                {
                    reached[static_cast<std::size_t>(z)] = 1;
                    queue.push_back(z);
                }
            }
    }
    for (int x : gens)
    {
        os << "gen " << g.label(x) << ":";
        auto const& p = action->perm[static_cast<std::size_t>(x)];
        for (std::size_t v = 0; v < p.size(); ++v)
            if (p[v] != static_cast<Vertex>(v))
                os << ' ' << k.label(static_cast<Vertex>(v)) << "->" << k.label(p[v]);
        os << "\n";
    }
    return os.str();
}

void writeScxFile(std::string const& path, SimplicialComplex const& k, GroupAction const* action,
                  Orientation const* orientation)
{
    std::ofstream out(path);
    if (!out)
        throw Error(ErrorKind::ParseError, path + ": cannot write file");
    out << serializeScx(k, action, orientation);
}

} // namespace ihorbit
