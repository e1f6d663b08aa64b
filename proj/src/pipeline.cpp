#include "ihorbit/pipeline.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <sstream>

#include "ihorbit/catalog.hpp"
#include "ihorbit/errors.hpp"
#include "ihorbit/filtered.hpp"
#include "ihorbit/ih.hpp"
#include "ihorbit/io.hpp"
#include "ihorbit/transfers.hpp"
#include "ihorbit/witt.hpp"

namespace ihorbit
{

namespace
{

constexpr std::size_t kMaxWitnesses = 10;

Json labelsOf(SimplicialComplex const& k, std::span<Vertex const> s)
{
    Json a = Json::array();
    for (Vertex v : s)
        a.push_back(k.label(v));
    return a;
}

Json matrixJson(Matrix const& m)
{
    Json rows = Json::array();
    for (auto const& r : m.toStrings())
        rows.push_back(r);
    return rows;
}

Json approx(double x)
{
    return Json{{"approx", x}};
}

Json errorJson(Error const& e)
{
    return Json{{"kind", errorKindName(e.kind())}, {"message", e.what()}};
}

Json summaryJson(LoadedInput const& in)
{
    Json j;
    j["source"] = in.source;
    j["dim"] = in.complex.dim();
    j["vertices"] = in.complex.numVertices();
    j["f_vector"] = in.complex.fVector();
    if (in.action)
    {
        j["group"] = {{"order", in.action->group.order()}, {"elements", in.action->group.labels()}};
        j["free"] = isFree(*in.action);
    }
    return j;
}

int maxCodimFor(SimplicialComplex const& k)
{
    return std::max(k.dim(), 2);
}

Json pmJson(SimplicialComplex const& k, bool& pass)
{
    auto r = checkPseudomanifold(k);
    Json j;
    j["dim"] = r.dim;
    j["pm1"] = r.pm1;
    j["pm2"] = r.pm2;
    j["orientable"] = r.orientable;
    Json v1 = Json::array(), v2 = Json::array();
    for (std::size_t i = 0; i < r.pm1Violations.size() && i < kMaxWitnesses; ++i)
        v1.push_back(labelsOf(k, r.pm1Violations[i]));
    for (std::size_t i = 0; i < r.pm2Violations.size() && i < kMaxWitnesses; ++i)
        v2.push_back(labelsOf(k, r.pm2Violations[i]));
    j["pm1_violations"] = v1;
    j["pm2_violations"] = v2;
    if (!r.orientationConflict.empty())
        j["orientation_conflict"] = labelsOf(k, r.orientationConflict);
    pass = r.ok();
    j["verdict"] = pass ? "PASS" : "FAIL";
    return j;
}

Json wittJson(SimplicialComplex const& k, int jobs, bool& pass)
{
    auto r = isWitt(k, jobs);
    Json j;
    j["witt"] = r.isWitt;
    j["checked_links"] = r.checkedLinks;
    j["exempt_links"] = r.exemptLinks;
    j["distinct_link_types_reused"] = r.cacheHits;
    j["failure_count"] = r.failures.size();
    Json f = Json::array();
    for (std::size_t i = 0; i < r.failures.size() && i < kMaxWitnesses; ++i)
        f.push_back({{"simplex", labelsOf(k, r.failures[i].simplex)},
                     {"link_dim", r.failures[i].linkDim},
                     {"ih_middle", r.failures[i].ihDim}});
    j["failures"] = f;
    pass = r.isWitt;
    j["verdict"] = pass ? "PASS" : "FAIL";
    return j;
}

Json homologyJson(SimplicialComplex const& k, std::string const& ring)
{
    Json j;
    j["ring"] = ring;
    auto h = homology(k, ring == "Z" ? Ring::Integers : Ring::Rationals);
    Json betti = Json::array(), torsion = Json::array();
    for (std::size_t d = 0; d < h.size(); ++d)
    {
        betti.push_back(h[d].betti);
        if (!h[d].torsion.empty())
        {
            Json t = Json::array();
            for (auto const& z : h[d].torsion)
                t.push_back(z.get_str());
            torsion.push_back({{"degree", d}, {"factors", t}});
        }
    }
    j["betti"] = betti;
    if (ring == "Z")
        j["torsion"] = torsion;
    return j;
}

Json ihJson(SimplicialComplex const& k, PipelineConfig const& cfg)
{
    auto p = Perversity::parse(cfg.perversity, maxCodimFor(k));
    Json pj;
    pj["name"] = p.name();
    Json vals = Json::array();
    for (int c = 2; c <= p.maxCodim(); ++c)
        vals.push_back(p(c));
    pj["values_from_codim_2"] = vals;
    auto r = intersectionHomology(skeletalFiltration(k), p);
    Json j;
    j["perversity"] = pj;
    j["filtration"] = "skeletal";
    j["ring"] = "Q";
    j["subdivisions"] = r.subdivisions;
    j["betti"] = r.betti;
    return j;
}

Orientation orientationFor(LoadedInput const& in)
{
    if (in.orientation)
        return *in.orientation;
    auto o = orientationOf(in.complex);
    if (!o)
        throw Error(ErrorKind::NotOriented, "input is not an orientable pseudomanifold");
    return *o;
}

GroupAction const& requireAction(LoadedInput const& in)
{
    if (!in.action)
        throw Error(ErrorKind::BadGroup, in.source + ": this verb needs a group action");
    return *in.action;
}

Json formJson(MiddleForm const& f)
{
    Json j;
    j["degree"] = f.degree;
    j["parity"] = f.parity == FormParity::Symmetric ? "symmetric" : "skew";
    j["regime"] = regimeName(f.regime);
    j["rank"] = f.rank();
    j["matrix"] = matrixJson(f.b);
    j["signature"] = f.parity == FormParity::Symmetric ? signatureExact(f.b) : 0;
    return j;
}

Json valueJson(GSignatureValue const& v, FormParity parity)
{
    Json j;
    j["path"] = v.path == SignaturePath::Exact ? "exact" : "numeric";
    if (v.exact)
        j["value"] = std::to_string(*v.exact);
    else if (parity == FormParity::Symmetric)
        j["value"] = approx(v.re);
    else
        j["value"] = Json{{"imaginary", approx(v.im)}};
    if (v.path == SignaturePath::Numeric)
    {
        j["snapped"] = v.snapped;
        j["error_bound"] = v.errorBound;
    }
    return j;
}

Json gSignatureTable(MiddleForm const& form, GRep const& rep, PipelineConfig const& cfg, bool& pass)
{
    validateRep(rep);
    std::vector<GSignatureValue> vals(static_cast<std::size_t>(rep.group.order()));
    for (int g = 0; g < rep.group.order(); ++g)
        vals[static_cast<std::size_t>(g)] = gSignature(form, rep, g);
    Json table = Json::array();
    for (int g = 0; g < rep.group.order(); ++g)
    {
        Json e = valueJson(vals[static_cast<std::size_t>(g)], form.parity);
        Json row{{"element", rep.group.label(g)}};
        row.update(e);
        table.push_back(row);
    }
    bool conj = true;
    for (auto const& cls : rep.group.conjugacyClasses())
        for (int g : cls)
            conj = conj && std::abs(vals[static_cast<std::size_t>(g)].value() -
                                    vals[static_cast<std::size_t>(cls.front())].value()) < cfg.tolerance;
    bool trace = traceFormulaHolds(rep);
    Json j;
    j["form"] = formJson(form);
    j["elements"] = table;
    j["conjugation_invariant"] = conj;
    j["trace_formula"] = trace;
    pass = conj && trace;
    j["verdict"] = pass ? "PASS" : "FAIL";
    return j;
}

Json transferJson(GroupAction const& action, PipelineConfig const& cfg, bool& pass)
{
    auto p = Perversity::parse(cfg.perversity, maxCodimFor(action.complex));
    std::optional<std::vector<int>> degrees;
    if (!cfg.degrees.empty())
        degrees = cfg.degrees;
    Json j;
    try
    {
        auto td = transfer(action, p, degrees, cfg.maxSubdivisions);
        auto v = verifyTransferIdentities(td);
        j["perversity"] = p.name();
        j["cover_degree"] = td.coverDegree;
        j["subdivisions"] = td.subdivisions;
        Json per = Json::array();
        for (std::size_t i = 0; i < td.degrees.size(); ++i)
        {
            auto const& t = td.degrees[i];
            auto const& c = v.checks[i];
            Json sumG = matrixJson([&] {
                Matrix s(t.pushForward.cols(), t.pushForward.cols());
                for (auto const& m : t.gStars)
                    s = s + m;
                return s;
            }());
            per.push_back({{"degree", t.degree},
                           {"ih_source", t.pushForward.cols()},
                           {"ih_orbit", t.pushForward.rows()},
                           {"invariants", t.invariants.cols()},
                           {"push_forward", matrixJson(t.pushForward)},
                           {"transfer", matrixJson(t.transfer)},
                           {"sum_g", sumG},
                           {"up_down", c.upDown},
                           {"down_up", c.downUp},
                           {"up_down_ordinary", c.upDownH},
                           {"down_up_ordinary", c.downUpH},
                           {"canonical_commutes_transfer", c.commutesTransfer},
                           {"canonical_commutes_push_forward", c.commutesPush},
                           {"image_is_invariants", c.imageIsInvariants}});
        }
        j["degrees"] = per;
        j["failures"] = v.failures;
        pass = v.ok;
    }
    catch (Error const& e)
    {
        if (e.kind() != ErrorKind::InvariantsIsoFailure)
            throw;
        j["counterexample"] = errorJson(e);
        pass = false;
    }
    j["verdict"] = pass ? "PASS" : "FAIL";
    return j;
}

Json averagingJson(GroupAction const& action, Orientation const& o, PipelineConfig const& cfg, bool& pass)
{
    AveragingOptions opt;
    opt.tolerance = cfg.tolerance;
    opt.jobs = cfg.jobs;
    opt.maxSubdivisions = cfg.maxSubdivisions;
    auto r = averagingCheck(action, o, opt);
    Json j;
    j["middle_degree"] = r.middleDegree;
    j["parity"] = r.parity == FormParity::Symmetric ? "symmetric" : "skew";
    j["signature"] = std::to_string(r.signature);
    Json table = Json::array();
    for (auto const& e : r.elements)
    {
        Json row{{"element", e.label}};
        row.update(valueJson(e.value, r.parity));
        table.push_back(row);
    }
    j["g_signatures"] = table;
    if (r.averageExact)
        j["average"] = r.averageExact->str();
    else
        j["average"] = {{"re", approx(r.average.real())}, {"im", approx(r.average.imag())}};
    j["orbit"] = {{"subdivisions", r.subdivisions},
                  {"regularity_verified", r.regularityVerified},
                  {"simplices", r.orbitSimplices},
                  {"regime", regimeName(r.orbitRegime)},
                  {"signature", std::to_string(r.orbitSignature)}};
    j["comparison"] = r.averageExact ? "exact" : "tolerance";
    j["conjugation_invariant"] = r.conjugationInvariant;
    j["trace_formula"] = r.traceFormula;
    pass = r.pass;
    j["verdict"] = pass ? "PASS" : "FAIL";
    return j;
}

Json orbitJson(LoadedInput const& in, PipelineConfig const& cfg, bool withWitt, bool& pass)
{
    auto const& action = requireAction(in);
    auto reg = regularize(action, cfg.maxSubdivisions);
    auto orbit = orbitComplex(reg.action);
    auto const& q = orbit.quotient;
    Json j;
    j["subdivisions"] = reg.subdivisions;
    j["regularity_verified"] = reg.verified;
    j["quotient"] = {{"vertices", q.numVertices()}, {"f_vector", q.fVector()}, {"betti", bettiNumbers(q)}};
    auto cover = ramifiedStructure(reg.action, orbit);
    j["ramified"] = {{"degree", cover.degree}, {"fibre_sums_constant", true}};
    bool pmPass = false;
    j["pm"] = pmJson(q, pmPass);
    pass = pmPass;
    if (!withWitt)
    {
        j["verdict"] = pass ? "PASS" : "FAIL";
        return j;
    }
    bool sourceWitt = false, orbitWitt = false;
    wittJson(in.complex, cfg.jobs, sourceWitt);
    j["source_witt"] = sourceWitt;
    j["witt"] = wittJson(q, cfg.jobs, orbitWitt);
    if (sourceWitt)
        pass = pass && orbitWitt;
    j["verdict"] = pass ? "PASS" : "FAIL";
    return j;
}

struct Stage
{
    std::string name;
    Json body;
    bool pass = true;
    bool hasVerdict = false;
};

double since(std::chrono::steady_clock::time_point t0)
{
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

} // namespace

void validateConfig(PipelineConfig const& cfg)
{
    if (!(cfg.tolerance > 0))
        throw Error(ErrorKind::OutOfRange, "tolerance must be positive");
    if (cfg.maxSubdivisions < 0 || cfg.maxSubdivisions > 2)
        throw Error(ErrorKind::OutOfRange, "max-subdiv must be 0, 1 or 2");
    if (cfg.jobs < 1)
        throw Error(ErrorKind::OutOfRange, "jobs must be at least 1");
    if (cfg.ring != "Q" && cfg.ring != "Z")
        throw Error(ErrorKind::OutOfRange, "ring must be Q or Z");
    Perversity::parse(cfg.perversity, 8);
}

LoadedInput loadInput(std::string const& spec)
{
    LoadedInput in;
    in.source = spec;
    if (spec.rfind("cat:", 0) == 0)
    {
        std::string rest = spec.substr(4);
        std::string name = rest;
        std::vector<int> params;
        auto colon = rest.find(':');
        if (colon != std::string::npos)
        {
            name = rest.substr(0, colon);
            std::stringstream ss(rest.substr(colon + 1));
            std::string p;
            while (std::getline(ss, p, ','))
            {
                try
                {
                    params.push_back(std::stoi(p));
                }
                catch (std::exception const&)
                {
                    throw Error(ErrorKind::ParseError, spec + ": bad catalog parameter '" + p + "'");
                }
            }
        }
        auto item = catalogItem(name, params);
        in.complex = std::move(item.complex);
        in.action = std::move(item.action);
        in.orientation = std::move(item.orientation);
        return in;
    }
    auto parsed = parseScxFile(spec);
    in.complex = std::move(parsed.complex);
    in.action = std::move(parsed.action);
    in.orientation = std::move(parsed.orientation);
    return in;
}

ExternalForm loadExternalForm(std::string const& path)
{
    std::ifstream f(path);
    if (!f)
        throw Error(ErrorKind::ParseError, path + ": cannot open file");
    Json j;
    try
    {
        j = Json::parse(f);
    }
    catch (std::exception const& e)
    {
        throw Error(ErrorKind::ParseError, path + ": " + e.what());
    }
    auto entry = [&](Json const& x) {
        if (x.is_number_integer())
            return Rational(x.get<std::int64_t>());
        if (x.is_string())
        {
            try
            {
                mpq_class q(x.get<std::string>());
                q.canonicalize();
                return Rational(q);
            }
            catch (std::exception const&)
            {
            }
        }
        throw Error(ErrorKind::ParseError, path + ": matrix entries must be integers or \"p/q\" strings");
    };
    auto matrix = [&](Json const& m) {
        if (!m.is_array())
            throw Error(ErrorKind::ParseError, path + ": matrix must be an array of rows");
        std::vector<std::vector<Rational>> rows;
        for (auto const& r : m)
        {
            if (!r.is_array() || (!rows.empty() && r.size() != rows[0].size()))
                throw Error(ErrorKind::ParseError, path + ": ragged matrix");
            std::vector<Rational> row;
            for (auto const& x : r)
                row.push_back(entry(x));
            rows.push_back(std::move(row));
        }
        return rows.empty() ? Matrix() : Matrix::fromRows(rows);
    };
    try
    {
        ExternalForm out;
        out.form.degree = j.at("degree").get<int>();
        out.form.parity = out.form.degree % 2 == 0 ? FormParity::Symmetric : FormParity::Skew;
        out.form.regime = FormRegime::External;
        out.form.b = matrix(j.at("matrix"));
        if (out.form.b.rows() != out.form.b.cols())
            throw Error(ErrorKind::ParseError, path + ": form matrix must be square");
        bool ok = out.form.parity == FormParity::Symmetric ? out.form.b.isSymmetric() : out.form.b.isSkewSymmetric();
        if (!ok)
            throw Error(ErrorKind::NotSymmetric, path + ": form parity does not match the degree");
        std::istringstream gs(j.value("group", std::string("trivial")));
        std::string kind;
        int n = 0;
        gs >> kind >> n;
        FiniteGroup g = kind == "cyclic" ? FiniteGroup::cyclic(n)
                        : kind == "symmetric" ? FiniteGroup::symmetric(n)
                        : kind == "trivial" ? FiniteGroup::trivial()
                        : throw Error(ErrorKind::ParseError, path + ": group must be 'cyclic k', 'symmetric n' or 'trivial'");
        std::map<int, Matrix> gens;
        if (j.contains("generators"))
            for (auto const& [label, m] : j.at("generators").items())
            {
                auto e = g.find(label);
                if (!e)
                    throw Error(ErrorKind::BadElement, path + ": unknown element '" + label + "'");
                gens[*e] = matrix(m);
            }
        if (gens.empty())
            gens[g.identity()] = Matrix::identity(out.form.b.rows());
        out.rep = repFromGenerators(g, gens);
        return out;
    }
    catch (Json::exception const& e)
    {
        throw Error(ErrorKind::ParseError, path + ": " + e.what());
    }
}

ExitCode exitCodeFor(ErrorKind kind)
{
    switch (kind)
    {
    case ErrorKind::InternalError:
        return ExitCode::InternalError;
    case ErrorKind::NotRegular:
    case ErrorKind::InvariantsIsoFailure:
    case ErrorKind::NotRamified:
    case ErrorKind::BudgetExceeded:
        return ExitCode::Fail;
    default:
        return ExitCode::InputError;
    }
}

Report runVerb(std::string const& verb, PipelineConfig const& cfg)
{
    static std::vector<std::string> const verbs{"check-pm",         "homology",        "ih",
                                                "witt",             "orbit",           "signature",
                                                "g-signature",      "verify-transfer", "verify-averaging",
                                                "run"};
    Report rep;
    rep.doc["verb"] = verb;
    try
    {
        if (std::find(verbs.begin(), verbs.end(), verb) == verbs.end())
            throw Error(ErrorKind::ParseError, "unknown verb '" + verb + "'");
        validateConfig(cfg);
        if (verb == "ih" && cfg.ring != "Q")
            throw Error(ErrorKind::OutOfRange, "intersection homology is computed over Q only");
        rep.doc["config"] = {{"perversity", cfg.perversity},
                             {"ring", cfg.ring},
                             {"tolerance", cfg.tolerance},
                             {"max_subdiv", cfg.maxSubdivisions},
                             {"jobs", cfg.jobs}};

        if (verb == "g-signature" && !cfg.formPath.empty())
        {
            auto ext = loadExternalForm(cfg.formPath);
            bool pass = false;
            rep.doc["input"] = {{"form", cfg.formPath}};
            rep.doc["g_signature"] = gSignatureTable(ext.form, ext.rep, cfg, pass);
            rep.code = pass ? ExitCode::Pass : ExitCode::Fail;
            return rep;
        }

        auto in = loadInput(cfg.input);
        rep.doc["input"] = summaryJson(in);
        auto const& k = in.complex;

        std::vector<Stage> stages;
        auto t0 = std::chrono::steady_clock::now();
        auto runStage = [&](std::string const& name, bool hasVerdict, auto&& body) {
            Stage s{name, {}, true, hasVerdict};
            auto start = std::chrono::steady_clock::now();
            if (verb != "run" && !(verb == "check-pm" && name == "orbit"))
            {
                s.body = body(s.pass);
            }
            else
            {
                try
                {
                    s.body = body(s.pass);
                }
                catch (Error const& e)
                {
                    s.body = Json{{"error", errorJson(e)}};
                    // size limits are reported, not counted as failures
                    s.pass = e.kind() == ErrorKind::FormUnavailable || e.kind() == ErrorKind::BudgetExceeded;
                    s.body["verdict"] = s.pass ? "SKIPPED" : "FAIL";
                    s.hasVerdict = true;
                    if (e.kind() == ErrorKind::InternalError)
                        throw;
                }
            }
            if (cfg.timing)
                s.body["seconds"] = since(start);
            stages.push_back(std::move(s));
        };

        bool all = verb == "run";
        if (verb == "homology" || all)
            runStage("homology", false, [&](bool&) { return homologyJson(k, cfg.ring == "Z" || all ? "Z" : "Q"); });
        if (verb == "check-pm" || all)
            runStage("pseudomanifold", true, [&](bool& p) { return pmJson(k, p); });
        if (verb == "ih" || all)
            runStage("intersection_homology", false, [&](bool&) { return ihJson(k, cfg); });
        if (verb == "witt" || all)
            runStage("witt", true, [&](bool& p) { return wittJson(k, cfg.jobs, p); });
        if ((verb == "orbit" || verb == "check-pm") || (all && in.action))
            if (verb != "check-pm" || in.action)
                runStage("orbit", true, [&](bool& p) { return orbitJson(in, cfg, verb != "check-pm", p); });
        bool evenPm = k.dim() % 2 == 0 && orientationOf(k).has_value();
        if (verb == "signature" || (all && evenPm))
            runStage("signature", false, [&](bool&) {
                return formJson(cupFormMiddle(k, orientationFor(in)));
            });
        if (verb == "g-signature" || (all && evenPm && in.action))
            runStage("g_signature", true, [&](bool& p) {
                auto const& a = requireAction(in);
                auto form = cupFormMiddle(k, orientationFor(in));
                return gSignatureTable(form, representationOnMiddle(a, form), cfg, p);
            });
        if (verb == "verify-transfer" || (all && in.action))
            runStage("transfer", true, [&](bool& p) { return transferJson(requireAction(in), cfg, p); });
        if (verb == "verify-averaging" || (all && evenPm && in.action))
            runStage("averaging", true, [&](bool& p) {
                return averagingJson(requireAction(in), orientationFor(in), cfg, p);
            });

        bool pass = true;
        Json st;
        for (auto& s : stages)
        {
            if (s.hasVerdict)
                pass = pass && s.pass;
            st[s.name] = std::move(s.body);
        }
        rep.doc["stages"] = st;
        if (cfg.timing)
            rep.doc["seconds"] = since(t0);
        rep.doc["verdict"] = pass ? "PASS" : "FAIL";
        rep.code = pass ? ExitCode::Pass : ExitCode::Fail;
    }
    catch (Error const& e)
    {
        rep.doc["error"] = errorJson(e);
        rep.code = exitCodeFor(e.kind());
    }
    catch (std::exception const& e)
    {
        rep.doc["error"] = {{"kind", "InternalError"}, {"message", e.what()}};
        rep.code = ExitCode::InternalError;
    }
    return rep;
}

} // namespace ihorbit
