#include "fungal/compiler.hpp"

#include "fungal/error.hpp"

#include <json.hpp>

#include <algorithm>
#include <set>
#include <unordered_map>

namespace fungal
{

namespace
{

using designs::kTilePitch;
using designs::Tile;

/// Band potential of every signal: the tiles are drawn for a west input injected at (-28, 0) on step 0.
constexpr std::int64_t kPotential = -24;
constexpr std::int64_t kHalfPitch = kTilePitch / 2;

std::string_view tile_name(Tile t) noexcept
{
    switch (t)
    {
        case Tile::HWire: return "HWIRE";
        case Tile::VWire: return "VWIRE";
        case Tile::TurnSouth: return "TURN_SOUTH";
        case Tile::TurnEast: return "TURN_EAST";
        case Tile::Branch: return "BRANCH";
        case Tile::Cross: return "CROSS";
        case Tile::And: return "AND";
        case Tile::Or: return "OR";
    }
    return "?";
}

struct Route
{
    std::string value;
    std::int64_t column;
    bool west_input;  // true: drops, turns east and enters from the west; false: enters from the north
};

struct Plan
{
    std::unordered_map<std::string, std::int64_t> row;
    std::unordered_map<std::string, std::int64_t> first_column;
    std::unordered_map<std::string, std::int64_t> last_column;  // -1 when the value has no track
    std::unordered_map<std::string, std::set<std::int64_t>> taps;
    std::vector<std::pair<Route, Route>> gate_routes;
    std::int64_t last_layout_column{0};
};

Plan make_plan(const Netlist& n)
{
    Plan p;
    const auto inputs = static_cast<std::int64_t>(n.inputs.size());
    const auto gates = static_cast<std::int64_t>(n.gates.size());
    p.last_layout_column = gates == 0 ? 0 : 3 * gates - 1;
    for (std::int64_t j = 0; j < inputs; ++j)
    {
        const auto& name = n.inputs[static_cast<std::size_t>(j)];
        p.row[name] = j;
        p.first_column[name] = 0;
        p.last_column[name] = -1;
    }
    for (std::int64_t g = 0; g < gates; ++g)
    {
        const NetGate& gate = n.gates[static_cast<std::size_t>(g)];
        p.row[gate.id] = inputs + g;
        p.first_column[gate.id] = 3 * g + 3;
        p.last_column[gate.id] = -1;
        // the lower of the two argument tracks drops first
        std::string a = gate.a;
        std::string b = gate.b;
        if (p.row.at(b) > p.row.at(a))
        {
            std::swap(a, b);
        }
        const Route ra{a, 3 * g, true};
        const Route rb{b, 3 * g + 1, false};
        for (const Route& r : {ra, rb})
        {
            p.taps[r.value].insert(r.column);
            p.last_column[r.value] = std::max(p.last_column[r.value], r.column);
        }
        p.gate_routes.emplace_back(ra, rb);
    }
    p.last_column[n.output] = std::max(p.last_column[n.output], p.last_layout_column);
    return p;
}

std::int64_t ceil_div4(std::int64_t v) { return v >= 0 ? (v + 3) / 4 : -((-v) / 4); }

}  // namespace

Bounds CompiledLayout::bounds() const
{
    Bounds b = grid.bounds().value_or(Bounds{probe, probe});
    b = b.merged({probe, probe});
    for (const auto& [name, port] : input_ports)
    {
        b = b.merged({port.offset, port.offset});
    }
    return b;
}

std::uint64_t CompiledLayout::area() const
{
    const Bounds b = bounds();
    return static_cast<std::uint64_t>(b.width()) * static_cast<std::uint64_t>(b.height());
}

CompiledLayout compile(const Netlist& n, const Schedule& word, const CompileOptions& options)
{
    const std::vector<Gadget> gadgets = catalog(word, ThresholdMode::FixedFour, options.catalog_dir);
    const Plan plan = make_plan(n);

    std::map<std::pair<std::int64_t, std::int64_t>, PlacedTile> cells;  // (row, column)
    auto place = [&](Tile t, std::int64_t column, std::int64_t row, const std::string& net) {
        const auto [it, fresh] = cells.emplace(std::pair{row, column}, PlacedTile{t, column, row, net});
        if (!fresh)
        {
            throw Error(ErrorCode::PlacementOverflow, "two tiles claim column " + std::to_string(column) + ", row " +
                                                          std::to_string(row));
        }
    };

    // value tracks
    std::vector<std::string> values = n.inputs;
    for (const auto& g : n.gates)
    {
        values.push_back(g.id);
    }
    for (const auto& v : values)
    {
        const std::int64_t last = plan.last_column.at(v);
        const auto& taps = plan.taps.contains(v) ? plan.taps.at(v) : std::set<std::int64_t>{};
        for (std::int64_t c = plan.first_column.at(v); c <= last; ++c)
        {
            Tile t = Tile::HWire;
            if (taps.contains(c))
            {
                t = c < last ? Tile::Branch : Tile::TurnSouth;
            }
            place(t, c, plan.row.at(v), v);
        }
    }

    // argument drops and gates
    CompiledLayout layout;
    for (std::size_t g = 0; g < n.gates.size(); ++g)
    {
        const NetGate& gate = n.gates[g];
        const std::int64_t gate_row = plan.row.at(gate.id);
        const auto& [ra, rb] = plan.gate_routes[g];
        std::pair<std::int64_t, std::int64_t> arrival{};
        for (const Route* r : {&ra, &rb})
        {
            for (std::int64_t row = plan.row.at(r->value) + 1; row < gate_row; ++row)
            {
                const auto it = cells.find({row, r->column});
                if (it != cells.end())
                {
                    if (it->second.tile != Tile::HWire)
                    {
                        throw Error(ErrorCode::PlacementOverflow, "drop for " + gate.id + " runs into a " +
                                                                      std::string(tile_name(it->second.tile)) + " tile");
                    }
                    it->second.tile = Tile::Cross;
                    ++layout.crossings;
                }
                else
                {
                    place(Tile::VWire, r->column, row, r->value);
                }
            }
            if (r->west_input)
            {
                place(Tile::TurnEast, r->column, gate_row, r->value);
            }
            // path length from the value's source to the gate centre, in cells
            const std::int64_t source_row = plan.row.at(r->value);
            std::int64_t length = 0;
            if (const auto it = std::find(n.inputs.begin(), n.inputs.end(), r->value); it != n.inputs.end())
            {
                const std::int64_t x_in = kPotential - 4 - kTilePitch * source_row;
                length = kTilePitch * r->column - x_in;
            }
            else
            {
                const std::int64_t src_gate = source_row - static_cast<std::int64_t>(n.inputs.size());
                const std::int64_t src_column = 3 * src_gate + 1;
                const auto& src_arrival = layout.arrival_ticks.at(r->value);
                length = 4 * src_arrival.first + kTilePitch * (r->column - src_column);
            }
            length += kTilePitch * (gate_row - source_row);
            if (r->west_input)
            {
                length += kTilePitch;
            }
            (r == &ra ? arrival.first : arrival.second) = length / 4;
        }
        if (arrival.first != arrival.second)
        {
            throw Error(ErrorCode::ContractViolation, "arguments of " + gate.id + " arrive on ticks " +
                                                          std::to_string(arrival.first) + " and " +
                                                          std::to_string(arrival.second));
        }
        layout.arrival_ticks[gate.id] = arrival;
        const Tile t = gate.kind == GateKind::And ? Tile::And : Tile::Or;
        place(t, rb.column, gate_row, gate.id);
        // the gate tile also covers the next column
        place(Tile::HWire, rb.column + 1, gate_row, gate.id);
        cells.at({gate_row, rb.column + 1}).net = "";
        layout.placement[gate.id] = PlacedTile{t, rb.column, gate_row, gate.id};
    }

    if (layout.crossings > 0 && !provides(gadgets, GadgetFunction::Cross))
    {
        throw Error(ErrorCode::NonplanarWithoutCrossover,
                    "layout needs " + std::to_string(layout.crossings) + " crossing(s) and the catalog for " +
                        word.to_string() + " has no CROSS gadget");
    }
    for (const GadgetFunction f : {GadgetFunction::Wire, GadgetFunction::And2, GadgetFunction::Or2})
    {
        if (!provides(gadgets, f))
        {
            throw Error(ErrorCode::UnsupportedWord,
                        "catalog for " + word.to_string() + " lacks " + std::string(to_string(f)));
        }
    }
    if (!(word == Schedule::parse("H^4V^4")))
    {
        throw Error(ErrorCode::UnsupportedWord, "no routing tiles (turns, branches) exist for word " + word.to_string());
    }

    layout.schedule = word;
    layout.mode = ThresholdMode::FixedFour;
    layout.potential = kPotential;
    for (const auto& [key, placed] : cells)
    {
        if (placed.net.empty())
        {
            continue;  // second half of a gate tile
        }
        layout.tiles.push_back(placed);
        const ChipGrid cells_of_tile = designs::tile(placed.tile);
        const Coord centre{kTilePitch * placed.column, kTilePitch * placed.row};
        for (const auto& [c, chips] : cells_of_tile)
        {
            layout.grid.set(c + centre, chips);
        }
    }
    for (std::size_t j = 0; j < n.inputs.size(); ++j)
    {
        const auto& name = n.inputs[j];
        const auto row = static_cast<std::int64_t>(j);
        const std::int64_t y = kTilePitch * row;
        const std::int64_t x_in = kPotential - 4 - y;
        layout.input_ports[name] = Port{{x_in, y}, Direction::East, 0};
        if (plan.last_column.at(name) >= 0)
        {
            designs::hband(layout.grid, x_in + 1, -kHalfPitch - 1, y);
        }
    }

    const std::int64_t out_row = plan.row.at(n.output);
    const std::int64_t out_column = plan.last_column.at(n.output);
    layout.probe = {kTilePitch * out_column + kHalfPitch, kTilePitch * out_row};
    const std::int64_t arrival = ceil_div4(layout.probe.x + layout.probe.y - kPotential);
    layout.T = static_cast<std::uint64_t>(word.length()) * static_cast<std::uint64_t>(std::max<std::int64_t>(0, arrival) + 2);

    if (options.max_area != 0 && layout.area() > options.max_area)
    {
        throw Error(ErrorCode::PlacementOverflow, "layout needs " + std::to_string(layout.area()) +
                                                      " cells, limit is " + std::to_string(options.max_area));
    }
    return layout;
}

LayoutChecker::LayoutChecker(const CompiledLayout& layout, const Netlist& netlist)
    : layout_(layout), netlist_(netlist), base_(layout.grid, layout.schedule, layout.mode)
{
    if (layout.grid.at(layout.probe) != 0)
    {
        throw Error(ErrorCode::ProbeNotEmpty, "probe site of the layout holds chips");
    }
}

CheckResult LayoutChecker::check(const Assignment& assignment) const
{
    CheckResult r;
    r.expected = evaluate_netlist(netlist_, assignment);
    Simulator sim = base_;
    for (const auto& [name, port] : layout_.input_ports)
    {
        const auto it = assignment.find(name);
        if (it != assignment.end() && it->second)
        {
            sim.add(port.offset, kSignalChips);
        }
    }
    for (std::uint64_t t = 1; t <= layout_.T; ++t)
    {
        sim.step();
        r.steps_used = t;
        if (sim.at(layout_.probe) != 0)
        {
            r.probe_step = t;
            break;
        }
        if (sim.dormant())
        {
            break;
        }
    }
    r.agrees = r.probe_step.has_value() == r.expected;
    return r;
}

CheckResult check_compiled(const CompiledLayout& layout, const Netlist& n, const Assignment& assignment)
{
    return LayoutChecker(layout, n).check(assignment);
}

std::string layout_manifest(const CompiledLayout& layout)
{
    nlohmann::ordered_json m;
    m["schedule"] = layout.schedule.to_string();
    m["mode"] = std::string(to_string(layout.mode));
    m["T"] = layout.T;
    m["probe"] = {layout.probe.x, layout.probe.y};
    m["potential"] = layout.potential;
    nlohmann::ordered_json ports = nlohmann::ordered_json::array();
    for (const auto& [name, port] : layout.input_ports)
    {
        ports.push_back({{"name", name},
                         {"x", port.offset.x},
                         {"y", port.offset.y},
                         {"dir", std::string(to_string(port.direction))},
                         {"phase", port.phase}});
    }
    m["inputs"] = ports;
    const Bounds b = layout.bounds();
    m["bounds"] = {b.min.x, b.min.y, b.max.x, b.max.y};
    m["area"] = layout.area();
    m["cells"] = layout.grid.size();
    m["crossings"] = layout.crossings;
    nlohmann::ordered_json gates = nlohmann::ordered_json::array();
    for (const auto& [id, placed] : layout.placement)
    {
        const auto& arrival = layout.arrival_ticks.at(id);
        gates.push_back({{"gate", id},
                         {"tile", std::string(tile_name(placed.tile))},
                         {"column", placed.column},
                         {"row", placed.row},
                         {"arrival_tick", arrival.first}});
    }
    m["placement"] = gates;
    return m.dump(2) + "\n";
}

CompiledLayout parse_layout_manifest(std::string_view json, ChipGrid grid)
{
    CompiledLayout layout;
    try
    {
        const auto m = nlohmann::json::parse(json);
        layout.schedule = Schedule::parse(m.at("schedule").get<std::string>());
        layout.mode = parse_mode(m.at("mode").get<std::string>());
        layout.T = m.at("T").get<std::uint64_t>();
        layout.probe = {m.at("probe").at(0).get<std::int64_t>(), m.at("probe").at(1).get<std::int64_t>()};
        layout.potential = m.value("potential", std::int64_t{0});
        for (const auto& p : m.at("inputs"))
        {
            layout.input_ports[p.at("name").get<std::string>()] =
                Port{{p.at("x").get<std::int64_t>(), p.at("y").get<std::int64_t>()},
                     parse_direction(p.at("dir").get<std::string>()), p.at("phase").get<std::uint32_t>()};
        }
    }
    catch (const nlohmann::json::exception& e)
    {
        throw Error(ErrorCode::ParseError, std::string("layout manifest: ") + e.what());
    }
    layout.grid = std::move(grid);
    return layout;
}

}  // namespace fungal
