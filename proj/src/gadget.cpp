#include "fungal/gadget.hpp"

#include "fungal/engine.hpp"
#include "fungal/error.hpp"
#include "fungal/grid_io.hpp"
#include "text_util.hpp"

#include <algorithm>
#include <cstdlib>
#include <set>
#include <sstream>
#include <unordered_set>

namespace fungal
{

namespace
{

Coord perpendicular(Direction d) noexcept
{
    const Coord u = unit(d);
    return {-u.y, u.x};
}

/// Outer half of the straight run that leads from an input port towards the gadget origin.
std::vector<Coord> input_corridor(const Port& p)
{
    std::vector<Coord> cells;
    const Coord u = unit(p.direction);
    const Coord v = perpendicular(p.direction);
    const std::int64_t reach = std::max<std::int64_t>(1, chebyshev(p.offset, {0, 0}) / 2);
    for (std::int64_t i = 1; i <= reach; ++i)
    {
        for (std::int64_t j = -2; j <= 2; ++j)
        {
            cells.push_back({p.offset.x + i * u.x + j * v.x, p.offset.y + i * u.y + j * v.y});
        }
    }
    return cells;
}

struct AllowedRegion
{
    Bounds box;
    std::unordered_set<Coord, CoordHash> extra;

    [[nodiscard]] bool contains(Coord c) const { return box.contains(c) || extra.contains(c); }
};

AllowedRegion allowed_region(const Gadget& g)
{
    Bounds box = g.footprint.bounds().value_or(Bounds{{0, 0}, {0, 0}});
    for (const auto* ports : {&g.inputs, &g.outputs})
    {
        for (const Port& p : *ports)
        {
            box = box.merged({p.offset, p.offset});
        }
    }
    AllowedRegion region{box.expanded(1), {}};
    for (const Port& p : g.inputs)
    {
        const Coord u = unit(p.direction);
        const Coord v = perpendicular(p.direction);
        for (std::int64_t i = 1; i <= static_cast<std::int64_t>(g.backward); ++i)
        {
            for (std::int64_t j = -2; j <= 2; ++j)
            {
                region.extra.insert({p.offset.x - i * u.x + j * v.x, p.offset.y - i * u.y + j * v.y});
            }
        }
    }
    return region;
}

std::string port_line(std::string_view kind, const Port& p)
{
    std::ostringstream out;
    out << "port " << kind << ' ' << p.offset.x << ' ' << p.offset.y << ' ' << to_string(p.direction) << ' '
        << p.phase << '\n';
    return out.str();
}

CombinationReport run_combination(const Gadget& g, const std::vector<bool>& inputs, std::uint32_t ticks,
                                  const AllowedRegion& allowed)
{
    CombinationReport rep;
    rep.inputs = inputs;
    rep.expected = expected_outputs(g.function, inputs, g.outputs.size());
    rep.observed.assign(g.outputs.size(), false);
    rep.first_fire.assign(g.outputs.size(), std::nullopt);

    std::vector<std::unordered_set<Coord, CoordHash>> corridors;
    for (std::size_t i = 0; i < g.inputs.size(); ++i)
    {
        corridors.emplace_back();
        if (!inputs[i])
        {
            for (const Coord c : input_corridor(g.inputs[i]))
            {
                corridors.back().insert(c);
            }
        }
    }
    std::unordered_set<Coord, CoordHash> backward_fired;
    std::unordered_set<Coord, CoordHash> escaped;

    Simulator sim(g.footprint, g.word, g.mode);
    const std::uint64_t steps = static_cast<std::uint64_t>(ticks) * g.period;
    for (std::uint64_t t = 0; t <= steps; ++t)
    {
        for (std::size_t i = 0; i < g.inputs.size(); ++i)
        {
            if (inputs[i] && g.inputs[i].phase == t)
            {
                sim.add(g.inputs[i].offset, kSignalChips);
            }
        }
        const ChipCount threshold = firing_threshold(g.word.at(t), g.mode);
        for (std::size_t o = 0; o < g.outputs.size(); ++o)
        {
            const Port& p = g.outputs[o];
            if (!rep.first_fire[o] && t % g.period == p.phase % g.period && sim.at(p.offset) >= threshold)
            {
                rep.first_fire[o] = t;
                rep.observed[o] = true;
            }
        }
        if (t == steps)
        {
            break;
        }
        sim.step();
        for (const Coord c : sim.last_fired())
        {
            for (const auto& corridor : corridors)
            {
                if (corridor.contains(c))
                {
                    backward_fired.insert(c);
                }
            }
        }
        if ((t + 1) % g.period == 0 || t + 1 == steps)
        {
            const Bounds w = sim.window();
            if (!(allowed.box.contains(w.min) && allowed.box.contains(w.max)))
            {
                for (const auto& [c, n] : sim.grid())
                {
                    if (!allowed.contains(c))
                    {
                        escaped.insert(c);
                    }
                }
            }
        }
    }
    rep.escaped_cells = escaped.size();
    rep.backward_extent = backward_fired.size();
    return rep;
}

}  // namespace

std::string_view to_string(GadgetFunction f) noexcept
{
    switch (f)
    {
        case GadgetFunction::Wire: return "WIRE";
        case GadgetFunction::Or2: return "OR2";
        case GadgetFunction::And2: return "AND2";
        case GadgetFunction::Cross: return "CROSS";
    }
    return "?";
}

GadgetFunction parse_gadget_function(std::string_view s)
{
    if (s == "WIRE") return GadgetFunction::Wire;
    if (s == "OR2") return GadgetFunction::Or2;
    if (s == "AND2") return GadgetFunction::And2;
    if (s == "CROSS") return GadgetFunction::Cross;
    throw Error(ErrorCode::ParseError, "unknown gadget function '" + std::string(s) + "'");
}

std::vector<bool> expected_outputs(GadgetFunction f, const std::vector<bool>& inputs, std::size_t output_count)
{
    std::vector<bool> out(output_count, false);
    switch (f)
    {
        case GadgetFunction::Wire:
            std::fill(out.begin(), out.end(), !inputs.empty() && inputs[0]);
            break;
        case GadgetFunction::Or2:
            std::fill(out.begin(), out.end(), inputs.size() == 2 && (inputs[0] || inputs[1]));
            break;
        case GadgetFunction::And2:
            std::fill(out.begin(), out.end(), inputs.size() == 2 && inputs[0] && inputs[1]);
            break;
        case GadgetFunction::Cross:
            for (std::size_t i = 0; i < output_count && i < inputs.size(); ++i)
            {
                out[i] = inputs[i];
            }
            break;
    }
    return out;
}

Gadget parse_gadget(std::string_view text)
{
    using detail::parse_int;
    Gadget g;
    std::set<std::string> seen;
    for (const auto& line : detail::split_lines(text))
    {
        const auto& w = line.words;
        if (w.empty())
        {
            continue;
        }
        const std::string key(w[0]);
        const bool is_cell = !key.empty() && (key[0] == '-' || (key[0] >= '0' && key[0] <= '9'));
        if (is_cell)
        {
            if (w.size() != 3)
            {
                throw Error(ErrorCode::ParseError, "expected 'x y n'", line.number);
            }
            const Coord c{parse_int<std::int64_t>(w[0], line.number), parse_int<std::int64_t>(w[1], line.number)};
            const auto n = parse_int<std::int64_t>(w[2], line.number);
            if (n < 1 || n > 0xFFFFFFFFLL)
            {
                throw Error(ErrorCode::ParseError, "chip count must be a positive 32-bit integer", line.number);
            }
            if (g.footprint.at(c) != 0)
            {
                throw Error(ErrorCode::DuplicateCoord,
                            "cell (" + std::to_string(c.x) + "," + std::to_string(c.y) + ") listed twice",
                            line.number);
            }
            g.footprint.set(c, static_cast<ChipCount>(n));
            continue;
        }
        if (key == "port")
        {
            if (w.size() != 6 || (w[1] != "in" && w[1] != "out"))
            {
                throw Error(ErrorCode::ParseError, "expected 'port in|out x y dir phase'", line.number);
            }
            Port p;
            p.offset = {parse_int<std::int64_t>(w[2], line.number), parse_int<std::int64_t>(w[3], line.number)};
            try
            {
                p.direction = parse_direction(w[4]);
            }
            catch (const Error&)
            {
                throw Error(ErrorCode::ParseError, "bad direction '" + std::string(w[4]) + "'", line.number);
            }
            p.phase = parse_int<std::uint32_t>(w[5], line.number);
            (w[1] == "in" ? g.inputs : g.outputs).push_back(p);
            continue;
        }
        if (w.size() != 2)
        {
            throw Error(ErrorCode::ParseError, "expected '" + key + " <value>'", line.number);
        }
        if (!seen.insert(key).second)
        {
            throw Error(ErrorCode::ParseError, "header '" + key + "' given twice", line.number);
        }
        try
        {
            if (key == "name")
                g.name = std::string(w[1]);
            else if (key == "word")
                g.word = Schedule::parse(w[1]);
            else if (key == "mode")
                g.mode = parse_mode(w[1]);
            else if (key == "period")
                g.period = parse_int<std::uint32_t>(w[1], line.number);
            else if (key == "latency")
                g.latency = parse_int<std::uint32_t>(w[1], line.number);
            else if (key == "function")
                g.function = parse_gadget_function(w[1]);
            else if (key == "backward")
                g.backward = parse_int<std::uint32_t>(w[1], line.number);
            else
                throw Error(ErrorCode::ParseError, "unknown header '" + key + "'", line.number);
        }
        catch (const Error& e)
        {
            if (e.line() != 0)
            {
                throw;
            }
            throw Error(ErrorCode::ParseError, "bad value '" + std::string(w[1]) + "' for " + key, line.number);
        }
    }
    for (const char* required : {"name", "word", "mode", "period", "latency", "function"})
    {
        if (!seen.contains(required))
        {
            throw Error(ErrorCode::ParseError, std::string("missing header '") + required + "'");
        }
    }
    if (g.period == 0)
    {
        throw Error(ErrorCode::ParseError, "period must be positive");
    }
    for (const auto* ports : {&g.inputs, &g.outputs})
    {
        for (const Port& p : *ports)
        {
            if (p.phase >= g.period)
            {
                throw Error(ErrorCode::ParseError, "port phase " + std::to_string(p.phase) + " not below period");
            }
        }
    }
    return g;
}

std::string format_gadget(const Gadget& g)
{
    std::ostringstream out;
    out << "name " << g.name << '\n';
    out << "word " << g.word.to_string() << '\n';
    out << "mode " << to_string(g.mode) << '\n';
    out << "period " << g.period << '\n';
    out << "latency " << g.latency << '\n';
    out << "function " << to_string(g.function) << '\n';
    if (g.backward != 0)
    {
        out << "backward " << g.backward << '\n';
    }
    for (const Port& p : g.inputs)
    {
        out << port_line("in", p);
    }
    for (const Port& p : g.outputs)
    {
        out << port_line("out", p);
    }
    out << format_grid(g.footprint);
    return out.str();
}

Gadget load_gadget(const std::filesystem::path& path) { return parse_gadget(read_file(path)); }

PlacedGadget instantiate(const Gadget& g, Coord origin, int rotation, const std::optional<Schedule>& target_word)
{
    if (rotation < 0 || rotation > 3)
    {
        throw Error(ErrorCode::ContractViolation, "rotation must be 0..3");
    }
    const Schedule rotated = rotation % 2 == 1 ? g.word.transposed() : g.word;
    const Schedule& target = target_word ? *target_word : g.word;
    if (!(rotated == target))
    {
        throw Error(ErrorCode::RotationWordMismatch, "rotating " + g.name + " by " + std::to_string(rotation) +
                                                         " quarter-turns needs word " + rotated.to_string() +
                                                         ", not " + target.to_string());
    }
    auto turn = [rotation](Coord c) {
        for (int i = 0; i < rotation; ++i)
        {
            c = rotate_cw(c);
        }
        return c;
    };
    auto turn_port = [&](Port p) {
        p.offset = turn(p.offset) + origin;
        for (int i = 0; i < rotation; ++i)
        {
            p.direction = rotate_cw(p.direction);
        }
        return p;
    };
    PlacedGadget placed;
    for (const auto& [c, n] : g.footprint)
    {
        placed.grid.set(turn(c) + origin, n);
    }
    for (const Port& p : g.inputs)
    {
        placed.inputs.push_back(turn_port(p));
    }
    for (const Port& p : g.outputs)
    {
        placed.outputs.push_back(turn_port(p));
    }
    return placed;
}

ChipGrid assert_signal(const ChipGrid& grid, const Port& port, bool value)
{
    ChipGrid out = grid;
    if (value)
    {
        out.add(port.offset, kSignalChips);
    }
    return out;
}

bool VerificationReport::function_matches() const
{
    return std::all_of(combinations.begin(), combinations.end(),
                       [](const CombinationReport& c) { return c.observed == c.expected; });
}

bool VerificationReport::within_latency(const Gadget& g) const
{
    const std::uint64_t limit = static_cast<std::uint64_t>(g.latency) * g.period;
    for (const auto& c : combinations)
    {
        for (const auto& f : c.first_fire)
        {
            if (f && *f >= limit)
            {
                return false;
            }
        }
    }
    return true;
}

bool VerificationReport::contained() const
{
    return std::all_of(combinations.begin(), combinations.end(),
                       [](const CombinationReport& c) { return c.escaped_cells == 0; });
}

std::size_t VerificationReport::backward_extent() const
{
    std::size_t worst = 0;
    for (const auto& c : combinations)
    {
        worst = std::max(worst, c.backward_extent);
    }
    return worst;
}

bool VerificationReport::passed(const Gadget& g) const
{
    return quiescent && function_matches() && within_latency(g) && contained() && backward_extent() <= g.backward;
}

VerificationReport verify_gadget(const Gadget& g, std::uint32_t ticks)
{
    if (g.period == 0 || g.period % g.word.length() != 0)
    {
        throw Error(ErrorCode::PeriodMismatch, "word " + g.word.to_string() + " of length " +
                                                   std::to_string(g.word.length()) + " does not divide period " +
                                                   std::to_string(g.period));
    }
    if (ticks < g.latency + 1)
    {
        throw Error(ErrorCode::ContractViolation,
                    "verification needs at least latency + 1 = " + std::to_string(g.latency + 1) + " ticks");
    }
    if (g.inputs.size() > 16)
    {
        throw Error(ErrorCode::ContractViolation, "too many inputs to enumerate");
    }

    VerificationReport report;
    report.gadget = g.name;
    report.ticks = ticks;
    report.quiescent = run(g.footprint, g.word, g.period, g.mode) == g.footprint;

    const AllowedRegion allowed = allowed_region(g);
    const std::size_t n = g.inputs.size();
    for (std::uint32_t mask = 0; mask < (1U << n); ++mask)
    {
        std::vector<bool> bits(n);
        for (std::size_t i = 0; i < n; ++i)
        {
            // first input is the most significant bit, so combinations list as 00, 01, 10, 11
            bits[i] = ((mask >> (n - 1 - i)) & 1U) != 0;
        }
        report.combinations.push_back(run_combination(g, bits, ticks, allowed));
    }
    return report;
}

std::string format_report(const Gadget& g, const VerificationReport& report)
{
    std::ostringstream out;
    out << "gadget " << g.name << " (" << to_string(g.function) << ", " << g.word.to_string() << ", "
        << to_string(g.mode) << "), " << report.ticks << " ticks\n";
    out << "quiescent: " << (report.quiescent ? "yes" : "NO") << '\n';
    for (const auto& c : report.combinations)
    {
        out << "  in ";
        for (const bool b : c.inputs)
        {
            out << (b ? '1' : '0');
        }
        out << " -> out ";
        for (const bool b : c.observed)
        {
            out << (b ? '1' : '0');
        }
        out << " (expected ";
        for (const bool b : c.expected)
        {
            out << (b ? '1' : '0');
        }
        out << ")";
        for (const auto& f : c.first_fire)
        {
            out << (f ? " t=" + std::to_string(*f) : std::string(" t=-"));
        }
        if (c.escaped_cells != 0)
        {
            out << " escaped=" << c.escaped_cells;
        }
        if (c.backward_extent != 0)
        {
            out << " backward=" << c.backward_extent;
        }
        out << '\n';
    }
    out << "function: " << (report.function_matches() ? "ok" : "MISMATCH") << '\n';
    out << "latency: " << (report.within_latency(g) ? "ok" : "EXCEEDED") << '\n';
    out << "containment: " << (report.contained() ? "ok" : "VIOLATED") << '\n';
    out << "backward extent: " << report.backward_extent() << " (allowed " << g.backward << ")\n";
    out << (report.passed(g) ? "PASS" : "FAIL") << '\n';
    return out.str();
}

std::filesystem::path default_catalog_dir()
{
    if (const char* env = std::getenv("FUNGAL_CATALOG"); env != nullptr && *env != '\0')
    {
        return env;
    }
    return FUNGAL_CATALOG_DIR;
}

std::vector<Gadget> load_catalog(const std::filesystem::path& dir)
{
    std::error_code ec;
    if (!std::filesystem::is_directory(dir, ec))
    {
        throw Error(ErrorCode::Io, "catalog directory " + dir.string() + " not found");
    }
    std::vector<std::filesystem::path> files;
    for (const auto& entry : std::filesystem::directory_iterator(dir))
    {
        if (entry.is_regular_file() && entry.path().extension() == ".gadget")
        {
            files.push_back(entry.path());
        }
    }
    std::sort(files.begin(), files.end());
    std::vector<Gadget> gadgets;
    for (const auto& f : files)
    {
        try
        {
            gadgets.push_back(load_gadget(f));
        }
        catch (const Error& e)
        {
            throw Error(e.code(), f.filename().string() + ": " + e.what(), e.line());
        }
    }
    return gadgets;
}

std::vector<Gadget> catalog(const Schedule& word, ThresholdMode mode, const std::filesystem::path& dir)
{
    std::vector<Gadget> out;
    for (auto& g : load_catalog(dir))
    {
        if (g.word == word && g.mode == mode)
        {
            out.push_back(std::move(g));
        }
    }
    if (out.empty())
    {
        throw Error(ErrorCode::UnsupportedWord,
                    "no gadgets for word " + word.to_string() + " in mode " + std::string(to_string(mode)));
    }
    return out;
}

const Gadget* find_gadget(const std::vector<Gadget>& gadgets, std::string_view name)
{
    for (const Gadget& g : gadgets)
    {
        if (g.name == name)
        {
            return &g;
        }
    }
    return nullptr;
}

bool provides(const std::vector<Gadget>& gadgets, GadgetFunction f)
{
    return std::any_of(gadgets.begin(), gadgets.end(), [f](const Gadget& g) { return g.function == f; });
}

}  // namespace fungal
