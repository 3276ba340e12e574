#include "fungal/compiler.hpp"
#include "fungal/engine.hpp"
#include "fungal/error.hpp"
#include "fungal/gadget.hpp"
#include "fungal/grid_io.hpp"
#include "fungal/netlist.hpp"
#include "fungal/search.hpp"
#include "fungal/version.hpp"

#include <CLI11.hpp>
#include <fmt/core.h>
#include <json.hpp>

#include <chrono>
#include <filesystem>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace
{

using fungal::Error;
using fungal::ErrorCode;
using Json = nlohmann::ordered_json;

constexpr int kExitParse = 2;
constexpr int kExitContract = 3;

int exit_code_for(ErrorCode code)
{
    switch (code)
    {
        case ErrorCode::ParseError:
        case ErrorCode::DuplicateCoord:
        case ErrorCode::Cycle:
        case ErrorCode::UnknownId:
        case ErrorCode::Arity:
        case ErrorCode::NoOutput:
        case ErrorCode::Io:
            return kExitParse;
        default:
            return kExitContract;
    }
}

struct Common
{
    std::string word = "H^4V^4";
    std::string mode = "fixed4";
    std::string manifest;
    std::uint64_t seed = 0;
};

Json manifest_base(const std::string& subcommand, const Common& common, const std::vector<std::string>& files)
{
    Json m;
    m["subcommand"] = subcommand;
    m["tool_version"] = std::string(fungal::kToolVersion);
    m["inputs"] = files;
    m["schedule"] = fungal::Schedule::parse(common.word).to_string();
    m["mode"] = std::string(fungal::to_string(fungal::parse_mode(common.mode)));
    m["seed"] = common.seed;
    return m;
}

void emit_manifest(const Common& common, const Json& m)
{
    if (common.manifest.empty())
    {
        return;
    }
    const std::string text = m.dump(2) + "\n";
    if (common.manifest == "-")
    {
        fmt::print("{}", text);
    }
    else
    {
        fungal::write_file_atomic(common.manifest, text);
    }
}

void add_common(CLI::App* cmd, Common& common, bool with_word)
{
    if (with_word)
    {
        cmd->add_option("--word", common.word, "Schedule word, e.g. H^4V^4, HV, A")->capture_default_str();
        cmd->add_option("--mode", common.mode, "Threshold mode: fixed4 or adaptive")->capture_default_str();
    }
    cmd->add_option("--manifest", common.manifest, "Write the run manifest here ('-' for stdout)");
}

// ---- run --------------------------------------------------------------------

struct RunArgs
{
    Common common;
    std::string grid;
    std::uint64_t steps = 0;
    std::string out;
    std::string trace;
    std::string format = "ascii";
};

int cmd_run(const RunArgs& a)
{
    const fungal::Schedule word = fungal::Schedule::parse(a.common.word);
    const fungal::ThresholdMode mode = fungal::parse_mode(a.common.mode);
    if (a.format != "ascii" && a.format != "ppm")
    {
        throw Error(ErrorCode::ParseError, "--format must be ascii or ppm");
    }
    const fungal::ChipGrid initial = fungal::parse_grid(fungal::read_file(a.grid));
    fungal::ChipGrid final_grid;
    if (!a.trace.empty())
    {
        const auto frames = fungal::trace(initial, word, a.steps, mode);
        std::optional<fungal::Bounds> region;
        for (const auto& f : frames)
        {
            if (const auto b = f.bounds())
            {
                region = region ? region->merged(*b) : *b;
            }
        }
        std::filesystem::create_directories(a.trace);
        for (std::size_t t = 0; t < frames.size(); ++t)
        {
            const bool ppm = a.format == "ppm";
            const std::string name = fmt::format("frame_{:05d}.{}", t, ppm ? "ppm" : "txt");
            fungal::write_file_atomic(std::filesystem::path(a.trace) / name,
                                      ppm ? fungal::render_ppm(frames[t], region)
                                          : fungal::render_ascii(frames[t], region));
        }
        final_grid = frames.back();
    }
    else
    {
        final_grid = fungal::run(initial, word, a.steps, mode);
    }
    const std::string text = fungal::format_grid(final_grid);
    if (a.out.empty())
    {
        fmt::print("{}", text);
    }
    else
    {
        fungal::write_file_atomic(a.out, text);
    }
    Json m = manifest_base("run", a.common, {a.grid});
    m["steps"] = a.steps;
    m["result"] = {{"total_chips", final_grid.total()}, {"cells", final_grid.size()}};
    emit_manifest(a.common, m);
    return 0;
}

// ---- probe ------------------------------------------------------------------

struct ProbeArgs
{
    Common common;
    std::string grid;
    std::uint64_t steps = 0;
    std::int64_t x = 0;
    std::int64_t y = 0;
};

int cmd_probe(const ProbeArgs& a)
{
    const fungal::ChipGrid grid = fungal::parse_grid(fungal::read_file(a.grid));
    const auto t = fungal::probe(grid, fungal::Schedule::parse(a.common.word), a.steps, {a.x, a.y},
                                 fungal::parse_mode(a.common.mode));
    const std::string verdict = t ? fmt::format("FIRES {}", *t) : std::string("NONE");
    fmt::print("{}\n", verdict);
    Json m = manifest_base("probe", a.common, {a.grid});
    m["steps"] = a.steps;
    m["probe"] = {a.x, a.y};
    m["result"] = verdict;
    emit_manifest(a.common, m);
    return 0;
}

// ---- verify-gadget -------------------------------------------------------------

struct VerifyArgs
{
    Common common;
    std::string gadget;
    std::uint32_t ticks = 0;
};

int cmd_verify(const VerifyArgs& a)
{
    const fungal::Gadget g = fungal::load_gadget(a.gadget);
    const std::uint32_t ticks = a.ticks != 0 ? a.ticks : g.latency + 4;
    const fungal::VerificationReport report = fungal::verify_gadget(g, ticks);
    fmt::print("{}", fungal::format_report(g, report));

    Common common = a.common;
    common.word = g.word.to_string();
    common.mode = std::string(fungal::to_string(g.mode));
    Json m = manifest_base("verify-gadget", common, {a.gadget});
    m["ticks"] = ticks;
    Json combos = Json::array();
    for (const auto& c : report.combinations)
    {
        Json first = Json::array();
        for (const auto& f : c.first_fire)
        {
            first.push_back(f ? Json(*f) : Json(nullptr));
        }
        combos.push_back({{"inputs", c.inputs},
                          {"expected", c.expected},
                          {"observed", c.observed},
                          {"first_fire", first},
                          {"escaped_cells", c.escaped_cells},
                          {"backward_extent", c.backward_extent}});
    }
    m["combinations"] = combos;
    m["result"] = {{"quiescent", report.quiescent},
                   {"function_matches", report.function_matches()},
                   {"within_latency", report.within_latency(g)},
                   {"contained", report.contained()},
                   {"backward_extent", report.backward_extent()},
                   {"passed", report.passed(g)}};
    emit_manifest(common, m);
    return report.function_matches() ? 0 : 1;
}

// ---- search -----------------------------------------------------------------

struct SearchArgs
{
    Common common;
    std::int64_t width = 1;
    std::int64_t height = 1;
    fungal::ChipCount max_chips = 4;
    std::string contract = "QUIESCENT_WIRE";
    std::uint64_t budget = 0;
    bool no_prune = false;
    std::string out;
};

int cmd_search(const SearchArgs& a)
{
    fungal::SearchSpec spec;
    spec.word = fungal::Schedule::parse(a.common.word);
    spec.mode = fungal::parse_mode(a.common.mode);
    spec.width = a.width;
    spec.height = a.height;
    spec.max_chips = a.max_chips;
    spec.contract = fungal::parse_contract(a.contract);
    spec.budget = a.budget;
    spec.prune = !a.no_prune;

    const auto start = std::chrono::steady_clock::now();
    const fungal::SearchResult result = fungal::search(spec);
    const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    fmt::print(stderr, "searched {} candidates in {:.3f} s\n", result.checked, elapsed);

    if (result.gadget)
    {
        const std::string text = fungal::format_gadget(*result.gadget);
        if (a.out.empty())
        {
            fmt::print("{}", text);
        }
        else
        {
            fungal::write_file_atomic(a.out, text);
            fmt::print("FOUND {}\n", a.out);
        }
    }
    else
    {
        fmt::print("NONE\n");
    }
    if (!a.common.manifest.empty())
    {
        const std::string text = fungal::search_manifest(spec, result);
        if (a.common.manifest == "-")
        {
            fmt::print("{}", text);
        }
        else
        {
            fungal::write_file_atomic(a.common.manifest, text);
        }
    }
    return 0;
}

// ---- compile ----------------------------------------------------------------

struct CompileArgs
{
    Common common;
    std::string netlist;
    std::string out = "layout";
    std::string catalog;
};

fungal::CompileOptions compile_options(const std::string& catalog_dir)
{
    fungal::CompileOptions options;
    if (!catalog_dir.empty())
    {
        options.catalog_dir = catalog_dir;
    }
    return options;
}

int cmd_compile(const CompileArgs& a)
{
    const fungal::Netlist n = fungal::parse_netlist(fungal::read_file(a.netlist));
    const fungal::CompiledLayout layout =
        fungal::compile(n, fungal::Schedule::parse(a.common.word), compile_options(a.catalog));
    const std::string grid_path = a.out + ".grid";
    const std::string manifest_path = a.out + ".json";
    fungal::write_file_atomic(grid_path, fungal::format_grid(layout.grid));
    fungal::write_file_atomic(manifest_path, fungal::layout_manifest(layout));
    fmt::print("wrote {} and {} (area {}, T {}, probe {} {})\n", grid_path, manifest_path, layout.area(), layout.T,
               layout.probe.x, layout.probe.y);
    Json m = manifest_base("compile", a.common, {a.netlist});
    m["result"] = {{"grid", grid_path},
                   {"layout", manifest_path},
                   {"area", layout.area()},
                   {"T", layout.T},
                   {"crossings", layout.crossings}};
    emit_manifest(a.common, m);
    return 0;
}

// ---- check ------------------------------------------------------------------

struct CheckArgs
{
    Common common;
    std::string netlist;
    std::string assignments = "all";
    std::size_t sample = 0;
    std::size_t corpus = 0;
    std::size_t max_gates = 20;
    std::size_t max_inputs = 8;
    std::string catalog;
};

int cmd_check(const CheckArgs& a)
{
    std::vector<std::pair<std::string, fungal::Netlist>> netlists;
    if (!a.netlist.empty())
    {
        netlists.emplace_back(a.netlist, fungal::parse_netlist(fungal::read_file(a.netlist)));
    }
    for (std::size_t i = 0; i < a.corpus; ++i)
    {
        const std::uint64_t seed = a.common.seed + i;
        netlists.emplace_back(fmt::format("random:{}", seed),
                              fungal::random_netlist(seed, a.max_gates, a.max_inputs));
    }
    if (netlists.empty())
    {
        throw Error(ErrorCode::ParseError, "give a netlist file or --corpus N");
    }
    const bool sampled = a.assignments == "sample";
    if (!sampled && a.assignments != "all")
    {
        throw Error(ErrorCode::ParseError, "--assignments must be 'all' or 'sample'");
    }

    std::mt19937_64 rng(a.common.seed);
    const fungal::Schedule word = fungal::Schedule::parse(a.common.word);
    std::uint64_t cases = 0;
    std::uint64_t agreed = 0;
    Json per = Json::array();
    for (const auto& [label, n] : netlists)
    {
        const fungal::CompiledLayout layout = fungal::compile(n, word, compile_options(a.catalog));
        const fungal::LayoutChecker checker(layout, n);
        const std::uint64_t space = std::uint64_t{1} << n.inputs.size();
        std::vector<std::uint64_t> indices;
        if (sampled && a.sample < space)
        {
            for (std::size_t i = 0; i < a.sample; ++i)
            {
                indices.push_back(rng() % space);
            }
        }
        else
        {
            for (std::uint64_t i = 0; i < space; ++i)
            {
                indices.push_back(i);
            }
        }
        std::uint64_t ok = 0;
        std::uint64_t slowest = 0;
        for (const std::uint64_t idx : indices)
        {
            const fungal::CheckResult r = checker.check(fungal::assignment_from_index(n, idx));
            ok += r.agrees ? 1 : 0;
            if (r.probe_step)
            {
                slowest = std::max(slowest, *r.probe_step);
            }
            if (!r.agrees)
            {
                fmt::print("MISMATCH {} assignment {}: circuit {}, probe {}\n", label, idx, r.expected ? 1 : 0,
                           r.probe_step ? fmt::format("fires at {}", *r.probe_step) : std::string("silent"));
            }
        }
        cases += indices.size();
        agreed += ok;
        per.push_back({{"netlist", label},
                       {"inputs", n.inputs.size()},
                       {"gates", n.gates.size()},
                       {"area", layout.area()},
                       {"T", layout.T},
                       {"latest_probe_step", slowest},
                       {"cases", indices.size()},
                       {"agreed", ok}});
    }
    fmt::print("{} of {} cases agree across {} netlist(s)\n", agreed, cases, netlists.size());

    std::vector<std::string> files;
    if (!a.netlist.empty())
    {
        files.push_back(a.netlist);
    }
    Json m = manifest_base("check", a.common, files);
    m["assignments"] = sampled ? fmt::format("sample {}", a.sample) : std::string("all");
    m["corpus"] = a.corpus;
    m["netlists"] = per;
    m["result"] = {{"cases", cases}, {"agreed", agreed}, {"all_agree", agreed == cases}};
    emit_manifest(a.common, m);
    return agreed == cases ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Chip-firing automata with gated sides: simulate, verify gadgets, search, compile circuits"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(fungal::kToolVersion));

    RunArgs run_args;
    auto* run = app.add_subcommand("run", "Apply a schedule to a grid and write the final grid");
    add_common(run, run_args.common, true);
    run->add_option("grid", run_args.grid, "Grid file")->required();
    run->add_option("--steps", run_args.steps, "Number of steps")->required();
    run->add_option("-o,--out", run_args.out, "Final grid file (default: stdout)");
    run->add_option("--trace", run_args.trace, "Directory for one frame per step");
    run->add_option("--format", run_args.format, "Frame format: ascii or ppm")->capture_default_str();

    ProbeArgs probe_args;
    auto* probe = app.add_subcommand("probe", "Earliest step at which an empty site receives chips");
    add_common(probe, probe_args.common, true);
    probe->add_option("grid", probe_args.grid, "Grid file")->required();
    probe->add_option("--steps,-T", probe_args.steps, "Step bound T")->required();
    probe->add_option("--x", probe_args.x, "Probe column")->required();
    probe->add_option("--y", probe_args.y, "Probe row")->required();

    VerifyArgs verify_args;
    auto* verify = app.add_subcommand("verify-gadget", "Exhaustively verify a gadget file");
    add_common(verify, verify_args.common, false);
    verify->add_option("gadget", verify_args.gadget, "Gadget file")->required();
    verify->add_option("--ticks", verify_args.ticks, "Ticks to simulate (default: latency + 4)");

    SearchArgs search_args;
    auto* search = app.add_subcommand("search", "Brute-force search for a gadget in a window");
    add_common(search, search_args.common, true);
    search->add_option("--width", search_args.width, "Window width")->capture_default_str();
    search->add_option("--height", search_args.height, "Window height")->capture_default_str();
    search->add_option("--max-chips", search_args.max_chips, "Largest count per cell")->capture_default_str();
    search->add_option("--contract", search_args.contract, "QUIESCENT_WIRE, OR2, AND2 or CROSS")->capture_default_str();
    search->add_option("--budget", search_args.budget, "Candidates to check (0: no limit)")->capture_default_str();
    search->add_flag("--no-prune", search_args.no_prune, "Check candidates that cannot be quiescent too");
    search->add_option("-o,--out", search_args.out, "Gadget file to write on success");

    CompileArgs compile_args;
    auto* compile = app.add_subcommand("compile", "Compile a monotone netlist into a layout");
    add_common(compile, compile_args.common, true);
    compile->add_option("netlist", compile_args.netlist, "Netlist file")->required();
    compile->add_option("-o,--out", compile_args.out, "Output prefix for <prefix>.grid and <prefix>.json")
        ->capture_default_str();
    compile->add_option("--catalog", compile_args.catalog, "Gadget catalog directory");

    CheckArgs check_args;
    auto* check = app.add_subcommand("check", "Compile and compare probe verdicts with the circuit");
    add_common(check, check_args.common, true);
    check->add_option("netlist", check_args.netlist, "Netlist file");
    check->add_option("--assignments", check_args.assignments, "all or sample")->capture_default_str();
    check->add_option("--sample", check_args.sample, "Assignments per netlist when sampling");
    check->add_option("--corpus", check_args.corpus, "Also check this many seeded random netlists");
    check->add_option("--max-gates", check_args.max_gates, "Gate bound for random netlists")->capture_default_str();
    check->add_option("--max-inputs", check_args.max_inputs, "Input bound for random netlists")->capture_default_str();
    check->add_option("--seed", check_args.common.seed, "Seed for the corpus and for sampling")->capture_default_str();
    check->add_option("--catalog", check_args.catalog, "Gadget catalog directory");

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::CallForHelp& e)
    {
        return app.exit(e);
    }
    catch (const CLI::CallForVersion& e)
    {
        return app.exit(e);
    }
    catch (const CLI::ParseError& e)
    {
        app.exit(e);
        return kExitParse;
    }

    try
    {
        if (*run) return cmd_run(run_args);
        if (*probe) return cmd_probe(probe_args);
        if (*verify) return cmd_verify(verify_args);
        if (*search) return cmd_search(search_args);
        if (*compile) return cmd_compile(compile_args);
        if (*check) return cmd_check(check_args);
    }
    catch (const Error& e)
    {
        fmt::print(stderr, "error: {}\n", e.what());
        return exit_code_for(e.code());
    }
    catch (const std::exception& e)
    {
        fmt::print(stderr, "error: {}\n", e.what());
        return kExitContract;
    }
    return 0;
}
