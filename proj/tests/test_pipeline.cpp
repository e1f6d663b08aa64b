#include <doctest.h>

#include <cstdio>
#include <fstream>

#include "ihorbit/pipeline.hpp"

using namespace ihorbit;

namespace
{

Report run(std::string const& verb, std::string const& input)
{
    PipelineConfig cfg;
    cfg.input = input;
    return runVerb(verb, cfg);
}

} // namespace

TEST_CASE("full pipeline on the swap")
{
    auto r = run("run", "cat:s2xs2-swap");
    CHECK(r.code == ExitCode::Pass);
    auto const& st = r.doc["stages"];
    CHECK(st["pseudomanifold"]["verdict"] == "PASS");
    CHECK(st["orbit"]["pm"]["orientable"] == true);
    CHECK(st["orbit"]["witt"]["witt"] == true);
    CHECK(st["signature"]["signature"] == 0);
    auto const& avg = st["averaging"];
    CHECK(avg["verdict"] == "PASS");
    CHECK(avg["comparison"] == "exact");
    CHECK(avg["g_signatures"][0]["value"] == "0");
    CHECK(avg["g_signatures"][1]["value"] == "2");
    CHECK(avg["g_signatures"][1]["path"] == "exact");
    CHECK(avg["average"] == "1");
    CHECK(avg["orbit"]["signature"] == "1");
    // too large for the transfer model; reported rather than failed
    CHECK(st["transfer"]["verdict"] == "SKIPPED");
    CHECK(st["transfer"]["error"]["kind"] == "BudgetExceeded");
}

TEST_CASE("Witt failure on the suspended torus")
{
    auto r = run("witt", "cat:suspension-torus");
    CHECK(r.code == ExitCode::Fail);
    auto const& w = r.doc["stages"]["witt"];
    CHECK(w["verdict"] == "FAIL");
    REQUIRE(w["failures"].size() == 2);
    std::vector<std::string> poles;
    for (auto const& f : w["failures"])
    {
        REQUIRE(f["simplex"].size() == 1);
        poles.push_back(f["simplex"][0]);
        CHECK(f["ih_middle"] == 2);
    }
    CHECK(poles == std::vector<std::string>{"N", "S"});
}

TEST_CASE("homology of the 2-sphere")
{
    auto r = run("homology", "cat:sphere:2");
    CHECK(r.code == ExitCode::Pass);
    CHECK(r.doc["stages"]["homology"]["betti"] == Json::array({1, 0, 1}));
}

TEST_CASE("integer homology reports torsion")
{
    PipelineConfig cfg;
    cfg.input = "cat:rp2";
    cfg.ring = "Z";
    auto r = runVerb("homology", cfg);
    auto const& h = r.doc["stages"]["homology"];
    CHECK(h["betti"] == Json::array({1, 0, 0}));
    REQUIRE(h["torsion"].size() == 1);
    CHECK(h["torsion"][0]["degree"] == 1);
    CHECK(h["torsion"][0]["factors"] == Json::array({"2"}));
}

TEST_CASE("input and config errors map to exit code 2")
{
    CHECK(run("homology", "/no/such/file.scx").code == ExitCode::InputError);
    CHECK(run("homology", "cat:nothing").code == ExitCode::InputError);
    CHECK(run("frobnicate", "cat:torus").code == ExitCode::InputError);
    CHECK(run("g-signature", "cat:torus").code == ExitCode::InputError);

    PipelineConfig cfg;
    cfg.input = "cat:torus";
    cfg.tolerance = 0;
    CHECK(runVerb("homology", cfg).code == ExitCode::InputError);
    cfg.tolerance = 1e-8;
    cfg.maxSubdivisions = 3;
    CHECK(runVerb("homology", cfg).code == ExitCode::InputError);
    cfg.maxSubdivisions = 2;
    cfg.ring = "Z";
    auto r = runVerb("ih", cfg);
    CHECK(r.code == ExitCode::InputError);
    CHECK(r.doc["error"]["kind"] == "OutOfRange");
    cfg.ring = "Q";
    cfg.perversity = "sideways";
    CHECK(runVerb("ih", cfg).code == ExitCode::InputError);

    CHECK(exitCodeFor(ErrorKind::InternalError) == ExitCode::InternalError);
    CHECK(exitCodeFor(ErrorKind::InvariantsIsoFailure) == ExitCode::Fail);
}

TEST_CASE("reports are deterministic")
{
    PipelineConfig cfg;
    cfg.input = "cat:octahedron-rot";
    cfg.jobs = 3;
    auto a = runVerb("run", cfg).doc.dump();
    auto b = runVerb("run", cfg).doc.dump();
    CHECK(a == b);
}

TEST_CASE("intersection homology of the suspended torus")
{
    auto r = run("ih", "cat:suspension-torus");
    CHECK(r.doc["stages"]["intersection_homology"]["betti"] == Json::array({1, 2, 0, 1}));
}

TEST_CASE("external form file")
{
    std::string path = "ihorbit_test_form.json";
    {
        std::ofstream f(path);
        f << R"({"degree": 2, "matrix": [[0, 1], [1, 0]], "group": "cyclic 2",
                 "generators": {"1": [[0, 1], [1, 0]]}})";
    }
    PipelineConfig cfg;
    cfg.formPath = path;
    auto r = runVerb("g-signature", cfg);
    CHECK(r.code == ExitCode::Pass);
    auto const& els = r.doc["g_signature"]["elements"];
    CHECK(els[0]["value"] == "0");
    CHECK(els[1]["value"] == "2");

    {
        std::ofstream f(path);
        f << R"({"degree": 2, "matrix": [[0, 1], [-1, 0]]})";
    }
    CHECK(runVerb("g-signature", cfg).code == ExitCode::InputError);
    std::remove(path.c_str());
}
