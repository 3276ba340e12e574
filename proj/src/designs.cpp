#include "fungal/designs.hpp"

#include "fungal/engine.hpp"
#include "fungal/error.hpp"

#include <algorithm>
#include <array>
#include <string>
#include <utility>

namespace fungal::designs
{

namespace
{

constexpr std::int64_t kWestArmStart = -27;
constexpr std::int64_t kNorthArmStart = -23;
constexpr std::int64_t kArmEnd = 32;
constexpr std::int64_t kGateArmEnd = 40;
constexpr std::uint32_t kNorthPhase = 4;
constexpr std::int64_t kOpenArm = 4;

void put(ChipGrid& g, std::int64_t x, std::int64_t y, ChipCount n) { g.set({x, y}, n); }

void hrow(ChipGrid& g, std::int64_t y, std::int64_t x0, std::int64_t x1, ChipCount n = kBandChips)
{
    for (std::int64_t x = x0; x <= x1; ++x)
    {
        put(g, x, y, n);
    }
}

void vcol(ChipGrid& g, std::int64_t x, std::int64_t y0, std::int64_t y1, ChipCount n = kBandChips)
{
    for (std::int64_t y = y0; y <= y1; ++y)
    {
        put(g, x, y, n);
    }
}

// A column (or row) pattern that shifts a signal parked on the band centre line
// by two cells sideways during the perpendicular half of the word.
constexpr std::array<std::pair<std::int64_t, ChipCount>, 9> kJog{
    {{-3, 0}, {-2, 0}, {-1, 3}, {0, 3}, {1, 3}, {2, 3}, {3, 3}, {4, 0}, {5, 0}}};

void jog_col(ChipGrid& g, std::int64_t x, std::int64_t park, bool down)
{
    const std::int64_t s = down ? 1 : -1;
    for (const auto& [d, n] : kJog)
    {
        put(g, x, park + s * d, n);
    }
}

void jog_row(ChipGrid& g, std::int64_t y, std::int64_t park, bool right)
{
    const std::int64_t s = right ? 1 : -1;
    for (const auto& [d, n] : kJog)
    {
        put(g, park + s * d, y, n);
    }
}

ChipGrid gate_tile(ChipCount junction)
{
    ChipGrid g;
    // west input runs to its last parking spot at x = -4
    hband(g, -10, -3, 0);
    hrow(g, 0, -2, -1);
    // north input parks at y = -4, then hooks east, south and back west into the junction
    vband(g, 0, -10, -5);
    hrow(g, -4, 0, 4);
    vcol(g, 4, -3, 0);
    hrow(g, 0, 1, 3);
    put(g, 0, 0, junction);
    // output leaves south, turns east, and is lifted back onto the centre line by two jogs
    vcol(g, 0, 1, 4);
    hrow(g, 4, 1, 4);
    vcol(g, 4, 2, 6);
    hrow(g, 4, 5, 7);
    jog_col(g, 8, 4, false);
    hrow(g, 2, 9, 11);
    jog_col(g, 12, 2, false);
    hband(g, 13, kTilePitch + 9, 0);
    return g;
}

ChipGrid cross_tile()
{
    ChipGrid g;
    hband(g, -10, -5, 0);
    vband(g, 0, -10, -5);
    jog_col(g, -4, 0, true);
    jog_row(g, -4, 0, true);
    hrow(g, 2, -3, 7);
    vcol(g, 2, -3, 7);
    for (const std::int64_t x : {0, 4})
    {
        vcol(g, x, 0, 4);
    }
    for (const std::int64_t y : {0, 4})
    {
        hrow(g, y, 0, 4);
    }
    for (const auto& [x, y] : std::array<std::pair<std::int64_t, std::int64_t>, 4>{{{1, 1}, {3, 1}, {1, 3}, {3, 3}}})
    {
        put(g, x, y, 0);
    }
    jog_col(g, 8, 2, false);
    jog_row(g, 8, 2, false);
    hband(g, 9, 9, 0);
    vband(g, 0, 9, 9);
    put(g, -5, 2, 0);
    put(g, 2, -5, 0);
    return g;
}

ChipGrid turn_east_tile()
{
    ChipGrid g;
    vband(g, 0, -10, -5);
    hrow(g, -4, -4, 0);
    vcol(g, -4, -3, 0);
    hband(g, -3, 9, 0);
    return g;
}

struct Arms
{
    bool west_in{false};
    bool north_in{false};
    std::int64_t east_out{0};  // arm end, 0 when absent
    std::int64_t south_out{0};
    std::int64_t east_from{kTilePitch / 2};
};

Gadget band_gadget(std::string name, GadgetFunction f, ChipGrid tile_cells, const Arms& arms)
{
    Gadget g;
    g.name = std::move(name);
    g.word = Schedule::parse("HHHHVVVV");
    g.mode = ThresholdMode::FixedFour;
    g.period = 8;
    g.function = f;
    g.footprint = std::move(tile_cells);
    if (arms.west_in)
    {
        hband(g.footprint, kWestArmStart, -kTilePitch / 2 - 1, 0);
        g.inputs.push_back({{kWestArmStart - 1, 0}, Direction::East, 0});
    }
    if (arms.north_in)
    {
        vband(g.footprint, 0, kNorthArmStart, -kTilePitch / 2 - 1);
        g.inputs.push_back({{0, kNorthArmStart - 1}, Direction::South, kNorthPhase});
    }
    if (arms.east_out != 0)
    {
        hband(g.footprint, arms.east_from, arms.east_out, 0);
        g.outputs.push_back({{arms.east_out, 0}, Direction::East, 0});
    }
    if (arms.south_out != 0)
    {
        vband(g.footprint, 0, kTilePitch / 2, arms.south_out);
        g.outputs.push_back({{0, arms.south_out}, Direction::South, 0});
    }
    return g;
}

std::string family_prefix(int k, ThresholdMode mode)
{
    std::string prefix = k == 1 ? "hv" : "h" + std::to_string(k) + "v" + std::to_string(k);
    if (mode == ThresholdMode::Adaptive)
    {
        prefix += "_adaptive";
    }
    return prefix;
}

Schedule hv_word(int k)
{
    std::string w(static_cast<std::size_t>(k), 'H');
    w.append(static_cast<std::size_t>(k), 'V');
    return Schedule::parse(w);
}

}  // namespace

void hband(ChipGrid& g, std::int64_t x0, std::int64_t x1, std::int64_t yc)
{
    for (std::int64_t y = yc - kBandHalfWidth; y <= yc + kBandHalfWidth; ++y)
    {
        hrow(g, y, x0, x1);
    }
}

void vband(ChipGrid& g, std::int64_t xc, std::int64_t y0, std::int64_t y1)
{
    for (std::int64_t x = xc - kBandHalfWidth; x <= xc + kBandHalfWidth; ++x)
    {
        vcol(g, x, y0, y1);
    }
}

ChipGrid tile(Tile t)
{
    constexpr std::int64_t lo = -kTilePitch / 2;
    constexpr std::int64_t hi = kTilePitch / 2 - 1;
    ChipGrid g;
    switch (t)
    {
        case Tile::HWire:
            hband(g, lo, hi, 0);
            break;
        case Tile::VWire:
            vband(g, 0, lo, hi);
            break;
        case Tile::TurnSouth:
            hband(g, lo, 0, 0);
            vband(g, 0, 0, hi);
            put(g, -1, 2, 0);
            break;
        case Tile::TurnEast:
            g = turn_east_tile();
            break;
        case Tile::Branch:
            hband(g, lo, hi, 0);
            vband(g, 0, 0, hi);
            put(g, -1, 2, 0);
            put(g, 2, 2, 0);
            break;
        case Tile::Cross:
            g = cross_tile();
            break;
        case Tile::And:
            g = gate_tile(2);
            break;
        case Tile::Or:
            g = gate_tile(3);
            break;
    }
    return g;
}

std::vector<Gadget> band_gadgets()
{
    std::vector<Gadget> out;
    out.push_back(band_gadget("h4v4_wire", GadgetFunction::Wire, tile(Tile::HWire), {true, false, kArmEnd, 0}));
    out.push_back(
        band_gadget("h4v4_wire_vertical", GadgetFunction::Wire, tile(Tile::VWire), {false, true, 0, kArmEnd}));
    out.push_back(
        band_gadget("h4v4_turn_south", GadgetFunction::Wire, tile(Tile::TurnSouth), {true, false, 0, kArmEnd}));
    out.push_back(
        band_gadget("h4v4_turn_east", GadgetFunction::Wire, tile(Tile::TurnEast), {false, true, kArmEnd, 0}));
    out.push_back(
        band_gadget("h4v4_branch", GadgetFunction::Wire, tile(Tile::Branch), {true, false, kArmEnd, kArmEnd}));
    out.push_back(band_gadget("h4v4_cross", GadgetFunction::Cross, tile(Tile::Cross), {true, true, kArmEnd, kArmEnd}));
    out.push_back(band_gadget("h4v4_and2", GadgetFunction::And2, tile(Tile::And), {true, true, kGateArmEnd, 0, kTilePitch + kTilePitch / 2}));
    out.push_back(band_gadget("h4v4_or2", GadgetFunction::Or2, tile(Tile::Or), {true, true, kGateArmEnd, 0, kTilePitch + kTilePitch / 2}));
    return out;
}

std::vector<Gadget> path_gadgets(int k, ThresholdMode mode)
{
    if (k < 1)
    {
        throw Error(ErrorCode::ContractViolation, "staircase runs need k >= 1");
    }
    const bool adaptive = mode == ThresholdMode::Adaptive;
    const ChipCount path = adaptive ? 1 : 3;
    // an adaptive port fires twice; starting on the last H step sends the second firing sideways
    const std::int64_t phase = adaptive ? k - 1 : 0;
    const std::int64_t first_run = k - phase;
    const std::string prefix = family_prefix(k, mode);

    auto base = [&](std::string name, GadgetFunction f) {
        Gadget g;
        g.name = prefix + "_" + std::move(name);
        g.word = hv_word(k);
        g.mode = mode;
        g.period = static_cast<std::uint32_t>(2 * k);
        g.function = f;
        return g;
    };
    // lays `len` cells from `at` (exclusive) in direction (dx, dy) and returns the last one
    auto run = [&](ChipGrid& grid, Coord at, std::int64_t dx, std::int64_t dy, std::int64_t len) {
        for (std::int64_t i = 0; i < len; ++i)
        {
            at = {at.x + dx, at.y + dy};
            grid.set(at, path);
        }
        return at;
    };

    std::vector<Gadget> out;
    {
        Gadget g = base("wire", GadgetFunction::Wire);
        Coord at{0, 0};
        at = run(g.footprint, at, 1, 0, first_run);
        at = run(g.footprint, at, 0, 1, k);
        for (int i = 0; i < 2; ++i)
        {
            at = run(g.footprint, at, 1, 0, k);
            at = run(g.footprint, at, 0, 1, k);
        }
        g.inputs.push_back({{0, 0}, Direction::East, static_cast<std::uint32_t>(phase)});
        g.outputs.push_back({at, Direction::South, 0});
        out.push_back(std::move(g));
    }
    for (const auto& [name, f, junction] :
         std::array<std::tuple<const char*, GadgetFunction, ChipCount>, 2>{
             {{"and2", GadgetFunction::And2, static_cast<ChipCount>(adaptive ? 0 : 2)},
              {"or2", GadgetFunction::Or2, static_cast<ChipCount>(adaptive ? 1 : 3)}}})
    {
        Gadget g = base(name, f);
        for (const std::int64_t side : {-1, 1})
        {
            const Coord port{side * (2 * k - phase), -k};
            Coord at = run(g.footprint, port, -side, 0, first_run);
            at = run(g.footprint, at, 0, 1, k);
            run(g.footprint, at, -side, 0, k - 1);
            g.inputs.push_back({port, side < 0 ? Direction::East : Direction::West, static_cast<std::uint32_t>(phase)});
        }
        if (junction != 0)
        {
            g.footprint.set({0, 0}, junction);
        }
        Coord at{0, 0};
        at = run(g.footprint, at, 0, 1, k);
        at = run(g.footprint, at, 1, 0, k);
        at = run(g.footprint, at, 0, 1, k);
        g.outputs.push_back({at, Direction::South, 0});
        out.push_back(std::move(g));
    }
    return out;
}

std::vector<Gadget> open_gadgets(ThresholdMode mode)
{
    const std::string prefix = mode == ThresholdMode::Adaptive ? "a_adaptive" : "a";
    auto base = [&](std::string name, GadgetFunction f) {
        Gadget g;
        g.name = prefix + "_" + std::move(name);
        g.word = Schedule::parse("A");
        g.mode = mode;
        g.period = 1;
        g.function = f;
        return g;
    };
    std::vector<Gadget> out;
    {
        Gadget g = base("wire", GadgetFunction::Wire);
        hrow(g.footprint, 0, 1, kOpenArm);
        g.inputs.push_back({{0, 0}, Direction::East, 0});
        g.outputs.push_back({{kOpenArm, 0}, Direction::East, 0});
        out.push_back(std::move(g));
    }
    for (const auto& [name, f, junction] : std::array<std::tuple<const char*, GadgetFunction, ChipCount>, 2>{
             {{"and2", GadgetFunction::And2, 2}, {"or2", GadgetFunction::Or2, 3}}})
    {
        Gadget g = base(name, f);
        hrow(g.footprint, 0, -kOpenArm, kOpenArm);
        put(g.footprint, 0, 0, junction);
        vcol(g.footprint, 0, 1, kOpenArm);
        g.inputs.push_back({{-kOpenArm - 1, 0}, Direction::East, 0});
        g.inputs.push_back({{kOpenArm + 1, 0}, Direction::West, 0});
        g.outputs.push_back({{0, kOpenArm}, Direction::South, 0});
        out.push_back(std::move(g));
    }
    return out;
}

Gadget calibrate(Gadget g, std::uint32_t ticks)
{
    const std::uint64_t steps = static_cast<std::uint64_t>(ticks) * g.period;
    // sampling phases come from the run with every input asserted, which drives every output
    {
        Simulator sim(g.footprint, g.word, g.mode);
        std::vector<bool> seen(g.outputs.size(), false);
        for (std::uint64_t t = 0; t <= steps; ++t)
        {
            for (const Port& p : g.inputs)
            {
                if (p.phase == t)
                {
                    sim.add(p.offset, kSignalChips);
                }
            }
            const ChipCount threshold = firing_threshold(g.word.at(t), g.mode);
            for (std::size_t o = 0; o < g.outputs.size(); ++o)
            {
                if (!seen[o] && sim.at(g.outputs[o].offset) >= threshold)
                {
                    seen[o] = true;
                    g.outputs[o].phase = static_cast<std::uint32_t>(t % g.period);
                }
            }
            sim.step();
        }
    }
    g.latency = ticks - 1;
    g.backward = ticks * g.period;
    const VerificationReport report = verify_gadget(g, ticks);
    std::uint64_t last = 0;
    for (const auto& c : report.combinations)
    {
        for (const auto& f : c.first_fire)
        {
            if (f)
            {
                last = std::max(last, *f);
            }
        }
    }
    g.latency = static_cast<std::uint32_t>(last / g.period + 1);
    g.backward = static_cast<std::uint32_t>(report.backward_extent());
    return g;
}

std::vector<Gadget> catalog_gadgets()
{
    std::vector<Gadget> out;
    for (const Gadget& g : band_gadgets())
    {
        out.push_back(calibrate(g, 24));
    }
    for (const ThresholdMode mode : {ThresholdMode::FixedFour, ThresholdMode::Adaptive})
    {
        // the fixed H4V4 word is served by the band set above
        const int largest = mode == ThresholdMode::FixedFour ? 3 : 4;
        for (int k = 1; k <= largest; ++k)
        {
            for (const Gadget& g : path_gadgets(k, mode))
            {
                out.push_back(calibrate(g, 12));
            }
        }
        for (const Gadget& g : open_gadgets(mode))
        {
            out.push_back(calibrate(g, 12));
        }
    }
    return out;
}

}  // namespace fungal::designs
