#include "fungal/search.hpp"

#include "fungal/designs.hpp"
#include "fungal/engine.hpp"
#include "fungal/error.hpp"
#include "fungal/version.hpp"

#include <json.hpp>

#include <algorithm>
#include <limits>

namespace fungal
{

namespace
{

constexpr std::uint64_t kSaturated = std::numeric_limits<std::uint64_t>::max();

std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b)
{
    if (a != 0 && b > kSaturated / a)
    {
        return kSaturated;
    }
    return a * b;
}

std::uint64_t saturating_add(std::uint64_t a, std::uint64_t b) { return b > kSaturated - a ? kSaturated : a + b; }

ChipCount smallest_threshold(const Schedule& word, ThresholdMode mode)
{
    ChipCount lowest = 4;
    for (const GateStep g : word.word())
    {
        lowest = std::min(lowest, firing_threshold(g, mode));
    }
    return lowest;
}

/// Position of a candidate in the unpruned row-major order.
std::uint64_t raw_index(const std::vector<ChipCount>& digits, ChipCount max_chips)
{
    std::uint64_t index = 0;
    for (const ChipCount d : digits)
    {
        index = saturating_add(saturating_mul(index, static_cast<std::uint64_t>(max_chips) + 1), d);
    }
    return index;
}

std::uint32_t search_ticks(const SearchSpec& spec) { return static_cast<std::uint32_t>(spec.width + spec.height + 4); }

std::string lowercase(std::string_view s)
{
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

}  // namespace

std::string_view to_string(Contract c) noexcept
{
    switch (c)
    {
        case Contract::QuiescentWire: return "QUIESCENT_WIRE";
        case Contract::Or2: return "OR2";
        case Contract::And2: return "AND2";
        case Contract::Cross: return "CROSS";
    }
    return "?";
}

Contract parse_contract(std::string_view s)
{
    if (s == "QUIESCENT_WIRE" || s == "WIRE") return Contract::QuiescentWire;
    if (s == "OR2") return Contract::Or2;
    if (s == "AND2") return Contract::And2;
    if (s == "CROSS") return Contract::Cross;
    throw Error(ErrorCode::ParseError, "unknown contract '" + std::string(s) + "'");
}

ContractPorts contract_ports(const SearchSpec& spec)
{
    const std::int64_t w = spec.width;
    const std::int64_t h = spec.height;
    const std::int64_t cx = (w - 1) / 2;
    const std::int64_t cy = (h - 1) / 2;
    ContractPorts ports;
    switch (spec.contract)
    {
        case Contract::QuiescentWire:
            ports.function = GadgetFunction::Wire;
            ports.inputs.push_back({{-1, 0}, Direction::East, 0});
            ports.outputs.push_back({{w - 1, h - 1}, w >= h ? Direction::East : Direction::South, 0});
            break;
        case Contract::Or2:
        case Contract::And2:
            ports.function = spec.contract == Contract::Or2 ? GadgetFunction::Or2 : GadgetFunction::And2;
            ports.inputs.push_back({{-1, 0}, Direction::East, 0});
            ports.inputs.push_back({{w, 0}, Direction::West, 0});
            ports.outputs.push_back({{cx, h - 1}, Direction::South, 0});
            break;
        case Contract::Cross:
            ports.function = GadgetFunction::Cross;
            ports.inputs.push_back({{-1, cy}, Direction::East, 0});
            ports.inputs.push_back({{cx, -1}, Direction::South, 0});
            ports.outputs.push_back({{w - 1, cy}, Direction::East, 0});
            ports.outputs.push_back({{cx, h - 1}, Direction::South, 0});
            break;
    }
    return ports;
}

std::uint64_t raw_space_size(const SearchSpec& spec)
{
    std::uint64_t size = 1;
    for (std::int64_t i = 0; i < spec.width * spec.height; ++i)
    {
        size = saturating_mul(size, static_cast<std::uint64_t>(spec.max_chips) + 1);
    }
    return size;
}

EnumerationStats enumerate_candidates(const SearchSpec& spec, const std::function<bool(const ChipGrid&)>& visit)
{
    if (spec.width < 1 || spec.height < 1)
    {
        throw Error(ErrorCode::ContractViolation, "search window must be at least 1x1");
    }
    const auto cells = static_cast<std::size_t>(spec.width * spec.height);
    // a cell at or above the lowest threshold of the word fires at some step, so the
    // background could not be quiescent
    const ChipCount cap =
        spec.prune ? std::min<ChipCount>(spec.max_chips, smallest_threshold(spec.word, spec.mode) - 1) : spec.max_chips;

    EnumerationStats stats;
    std::vector<ChipCount> digits(cells, 0);
    for (;;)
    {
        ChipGrid grid;
        for (std::size_t i = 0; i < cells; ++i)
        {
            if (digits[i] != 0)
            {
                grid.set({static_cast<std::int64_t>(i) % spec.width, static_cast<std::int64_t>(i) / spec.width},
                         digits[i]);
            }
        }
        ++stats.yielded;
        if (!visit(grid))
        {
            stats.visited = saturating_add(raw_index(digits, spec.max_chips), 1);
            break;
        }
        // odometer: the last cell is the least significant digit
        std::size_t i = cells;
        while (i > 0 && digits[i - 1] == cap)
        {
            digits[--i] = 0;
        }
        if (i == 0)
        {
            stats.visited = raw_space_size(spec);
            break;
        }
        ++digits[i - 1];
    }
    stats.pruned = stats.visited - std::min(stats.visited, stats.yielded);
    return stats;
}

ContractResult check_contract(const ChipGrid& candidate, const SearchSpec& spec)
{
    const ContractPorts ports = contract_ports(spec);
    ContractResult result;
    Gadget& g = result.gadget;
    g.name = "found_" + lowercase(to_string(spec.contract));
    g.word = spec.word;
    g.mode = spec.mode;
    g.footprint = candidate;
    g.inputs = ports.inputs;
    g.outputs = ports.outputs;
    g.period = static_cast<std::uint32_t>(spec.word.length());
    g.function = ports.function;

    if (!(run(candidate, spec.word, g.period, spec.mode) == candidate))
    {
        result.witness = "background is not a fixed point of one word application";
        return result;
    }

    const std::uint32_t ticks = search_ticks(spec);
    {
        // every output must fire when all inputs are asserted, whatever the contract
        Simulator sim(candidate, spec.word, spec.mode);
        std::vector<bool> seen(g.outputs.size(), false);
        const std::uint64_t steps = static_cast<std::uint64_t>(ticks) * g.period;
        for (std::uint64_t t = 0; t <= steps; ++t)
        {
            for (const Port& p : g.inputs)
            {
                if (p.phase == t)
                {
                    sim.add(p.offset, kSignalChips);
                }
            }
            const ChipCount threshold = firing_threshold(spec.word.at(t), spec.mode);
            for (std::size_t o = 0; o < g.outputs.size(); ++o)
            {
                seen[o] = seen[o] || sim.at(g.outputs[o].offset) >= threshold;
            }
            sim.step();
        }
        for (std::size_t o = 0; o < seen.size(); ++o)
        {
            if (!seen[o])
            {
                result.witness = "output " + std::to_string(o) + " never fires with every input asserted";
                return result;
            }
        }
    }

    g = designs::calibrate(std::move(g), ticks);
    if (spec.contract != Contract::Or2 && g.backward != 0)
    {
        result.witness = "signal runs back along an idle input";
        return result;
    }
    const VerificationReport report = verify_gadget(g, std::max(ticks, g.latency + 1));
    result.passed = report.passed(g);
    if (!result.passed)
    {
        result.witness = format_report(g, report);
    }
    return result;
}

SearchResult search(const SearchSpec& spec)
{
    SearchResult result;
    bool exhausted = false;
    result.stats = enumerate_candidates(spec, [&](const ChipGrid& candidate) {
        if (spec.budget != 0 && result.checked == spec.budget)
        {
            exhausted = true;
            return false;
        }
        ++result.checked;
        ContractResult r = check_contract(candidate, spec);
        if (r.passed)
        {
            result.gadget = std::move(r.gadget);
            return false;
        }
        return true;
    });
    if (exhausted)
    {
        throw Error(ErrorCode::BudgetExhausted, "budget of " + std::to_string(spec.budget) +
                                                    " candidates spent after visiting " +
                                                    std::to_string(result.stats.visited) + " of " +
                                                    std::to_string(raw_space_size(spec)) + " raw candidates");
    }
    return result;
}

std::string search_manifest(const SearchSpec& spec, const SearchResult& result)
{
    nlohmann::ordered_json m;
    m["subcommand"] = "search";
    m["tool_version"] = std::string(kToolVersion);
    m["schedule"] = spec.word.to_string();
    m["mode"] = std::string(to_string(spec.mode));
    m["window"] = {spec.width, spec.height};
    m["max_chips"] = spec.max_chips;
    m["contract"] = std::string(to_string(spec.contract));
    m["budget"] = spec.budget;
    m["prune"] = spec.prune;
    m["raw_space"] = raw_space_size(spec);
    m["visited"] = result.stats.visited;
    m["pruned"] = result.stats.pruned;
    m["checked"] = result.checked;
    m["result"] = result.gadget ? result.gadget->name : "NONE";
    return m.dump(2) + "\n";
}

}  // namespace fungal
