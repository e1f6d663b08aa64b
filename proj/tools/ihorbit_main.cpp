// ihorbit command line: one verb per stage plus `run` and `gen`.

#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "ihorbit/catalog.hpp"
#include "ihorbit/errors.hpp"
#include "ihorbit/io.hpp"
#include "ihorbit/pipeline.hpp"

using namespace ihorbit;

namespace
{

int emit(Json const& doc, std::string const& out)
{
    std::string text = doc.dump(2) + "\n";
    if (out.empty())
    {
        std::cout << text;
        return 0;
    }
    std::ofstream f(out);
    if (!f)
    {
        std::cerr << "ihorbit: cannot write " << out << "\n";
        return 2;
    }
    f << text;
    return 0;
}

CatalogItem suspendFile(std::string const& path, int times)
{
    auto in = loadInput(path);
    CatalogItem item;
    item.name = path;
    item.complex = std::move(in.complex);
    item.action = std::move(in.action);
    item.orientation = std::move(in.orientation);
    return suspendItem(item, times);
}

int runGen(std::vector<std::string> const& args, std::string const& out)
{
    if (args.empty() || args[0] == "list")
    {
        Json j = Json::array();
        for (auto const& e : catalogEntries())
            j.push_back({{"name", e.name}, {"params", e.params}, {"description", e.description}});
        return emit(j, out);
    }
    auto toInt = [](std::string const& s) {
        try
        {
            std::size_t used = 0;
            int v = std::stoi(s, &used);
            if (used == s.size())
                return v;
        }
        catch (std::exception const&)
        {
        }
        throw Error(ErrorKind::ParseError, "expected an integer, got '" + s + "'");
    };
    CatalogItem item;
    if (args[0] == "suspend")
    {
        if (args.size() < 2 || args.size() > 3)
            throw Error(ErrorKind::ParseError, "usage: gen suspend <file|cat:name> [times]");
        item = suspendFile(args[1], args.size() == 3 ? toInt(args[2]) : 1);
    }
    else
    {
        std::vector<int> params;
        for (std::size_t i = 1; i < args.size(); ++i)
            params.push_back(toInt(args[i]));
        item = catalogItem(args[0], params);
    }
    auto orientation = item.orientation ? item.orientation : orientationOf(item.complex);
    std::string text = serializeScx(item.complex, item.action ? &*item.action : nullptr,
                                    orientation ? &*orientation : nullptr);
    if (out.empty())
    {
        std::cout << text;
        return 0;
    }
    writeScxFile(out, item.complex, item.action ? &*item.action : nullptr, orientation ? &*orientation : nullptr);
    return 0;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Intersection homology and G-signatures of finite group actions on simplicial pseudomanifolds"};
    app.require_subcommand(1);

    PipelineConfig cfg;
    std::string out;
    std::vector<std::string> genArgs;

    auto shared = [&](CLI::App* sub, bool withInput) {
        if (withInput)
            sub->add_option("input", cfg.input, ".scx file or cat:<name>[:p1,p2]")->required();
        sub->add_option("--perversity", cfg.perversity, "lower-middle, upper-middle, zero, top, or p2,p3,...")
            ->capture_default_str();
        sub->add_option("--ring", cfg.ring, "Q or Z (homology only)")->capture_default_str();
        sub->add_option("--tolerance", cfg.tolerance, "numeric comparison tolerance")->capture_default_str();
        sub->add_option("--max-subdiv", cfg.maxSubdivisions, "barycentric subdivision cap (0..2)")
            ->capture_default_str();
        sub->add_option("--jobs", cfg.jobs, "worker threads")->capture_default_str();
        sub->add_option("--out", out, "write the report here instead of stdout");
        sub->add_flag("--timing", cfg.timing, "add wall-clock timings to the report");
    };

    std::vector<std::pair<std::string, std::string>> const verbs{
        {"check-pm", "pseudomanifold conditions and orientability (and of the orbit complex, with an action)"},
        {"homology", "simplicial homology over Q or Z"},
        {"ih", "intersection homology for a perversity"},
        {"witt", "Witt condition on links"},
        {"orbit", "regularize, build the orbit complex, check it"},
        {"signature", "middle-dimensional cup form and its signature"},
        {"g-signature", "g-signatures of every group element"},
        {"verify-transfer", "transfer identities in intersection homology"},
        {"verify-averaging", "orbit signature against the averaged g-signatures"},
        {"run", "every stage that applies to the input"},
    };
    for (auto const& [name, help] : verbs)
    {
        auto* sub = app.add_subcommand(name, help);
        if (name == "g-signature")
        {
            sub->add_option("input", cfg.input, ".scx file or cat:<name>[:p1,p2]");
            sub->add_option("--form", cfg.formPath, "external form JSON instead of an input complex");
            shared(sub, false);
        }
        else
        {
            shared(sub, true);
        }
        if (name == "verify-transfer")
            sub->add_option("--degrees", cfg.degrees, "restrict to these degrees")->delimiter(',');
    }
    auto* gen = app.add_subcommand("gen", "write a catalog example as .scx (gen list | gen <name> [params] | gen "
                                          "suspend <file> [times])");
    gen->add_option("args", genArgs, "name and parameters");
    gen->add_option("--out", out, "output file");

    try
    {
        app.parse(argc, argv);
    }
    catch (CLI::CallForHelp const& e)
    {
        return app.exit(e);
    }
    catch (CLI::ParseError const& e)
    {
        app.exit(e);
        return 2;
    }

    auto* sub = app.get_subcommands().front();
    try
    {
        if (sub->get_name() == "gen")
            return runGen(genArgs, out);
        if (sub->get_name() == "g-signature" && cfg.input.empty() && cfg.formPath.empty())
            throw Error(ErrorKind::ParseError, "g-signature needs an input or --form");
        auto report = runVerb(sub->get_name(), cfg);
        if (int rc = emit(report.doc, out); rc != 0)
            return rc;
        return static_cast<int>(report.code);
    }
    catch (Error const& e)
    {
        std::cerr << "ihorbit: " << errorKindName(e.kind()) << ": " << e.what() << "\n";
        return static_cast<int>(exitCodeFor(e.kind()));
    }
    catch (std::exception const& e)
    {
        std::cerr << "ihorbit: internal error: " << e.what() << "\n";
        return 3;
    }
}
