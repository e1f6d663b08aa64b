// Orchestration behind the command line: loading inputs, running stages and
// assembling a deterministic JSON report.

#ifndef IHORBIT_PIPELINE_HPP
#define IHORBIT_PIPELINE_HPP

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "ihorbit/chains.hpp"
#include "ihorbit/complex.hpp"
#include "ihorbit/errors.hpp"
#include "ihorbit/group.hpp"
#include "ihorbit/signatures.hpp"

namespace ihorbit
{

using Json = nlohmann::ordered_json;

struct PipelineConfig
{
    std::string input;
    std::string perversity = "lower-middle";
    std::string ring = "Q";
    double tolerance = 1e-8;
    int maxSubdivisions = 2;
    int jobs = 1;
    /// External form (JSON) for g-signature.
    std::string formPath;
    /// Degrees for verify-transfer; empty means all.
    std::vector<int> degrees;
    /// Adds wall-clock timings (makes the report run-dependent).
    bool timing = false;
};

/// Throws InvalidPerversity / OutOfRange for bad settings.
void validateConfig(PipelineConfig const& cfg);

struct LoadedInput
{
    std::string source;
    SimplicialComplex complex;
    std::optional<GroupAction> action;
    std::optional<Orientation> orientation;
};

/// A path to a .scx file, or "cat:<name>[:p1,p2,...]" for a catalog example.
LoadedInput loadInput(std::string const& spec);

/// External form file: {"degree": m, "matrix": [[...]], "group": "cyclic 4",
/// "generators": {"1": [[...]]}}; entries are integers or "p/q" strings.
struct ExternalForm
{
    MiddleForm form;
    GRep rep;
};
ExternalForm loadExternalForm(std::string const& path);

enum class ExitCode
{
    Pass = 0,
    Fail = 1,
    InputError = 2,
    InternalError = 3,
};

struct Report
{
    Json doc;
    ExitCode code = ExitCode::Pass;
};

/// Verbs: check-pm, homology, ih, witt, orbit, signature, g-signature,
/// verify-transfer, verify-averaging, run (all stages).
Report runVerb(std::string const& verb, PipelineConfig const& cfg);

/// Exit code class of a library error.
ExitCode exitCodeFor(ErrorKind kind);

} // namespace ihorbit

#endif // IHORBIT_PIPELINE_HPP
