#pragma once

#include "fungal/chip_grid.hpp"
#include "fungal/designs.hpp"
#include "fungal/engine.hpp"
#include "fungal/gadget.hpp"
#include "fungal/netlist.hpp"
#include "fungal/schedule.hpp"

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace fungal
{

struct PlacedTile
{
    designs::Tile tile{designs::Tile::HWire};
    /// Tile column and row; the tile centre is (pitch * column, pitch * row).
    std::int64_t column{0};
    std::int64_t row{0};
    /// Net carried (for gates, the gate id).
    std::string net;
};

struct CompiledLayout
{
    ChipGrid grid;
    Schedule schedule{std::vector<GateStep>{GateStep::H}};
    ThresholdMode mode{ThresholdMode::FixedFour};
    std::uint64_t T{0};
    Coord probe;
    std::map<std::string, Port> input_ports;
    /// Gate id to its tile.
    std::map<std::string, PlacedTile> placement;
    std::vector<PlacedTile> tiles;
    /// Band potential: a signal front at (x, y) at the end of the H half of tick k has x + y - 4k == potential.
    std::int64_t potential{0};
    std::size_t crossings{0};
    /// Arrival tick of each gate's two arguments at the gate tile centre, computed from the routes.
    std::map<std::string, std::pair<std::int64_t, std::int64_t>> arrival_ticks;

    [[nodiscard]] Bounds bounds() const;
    [[nodiscard]] std::uint64_t area() const;
};

struct CompileOptions
{
    std::filesystem::path catalog_dir = default_catalog_dir();
    /// PLACEMENT_OVERFLOW when the bounding box would exceed this many cells (0: unlimited).
    std::uint64_t max_area{0};
};

/**
 * Places every value on its own row and every gate on three columns of its own,
 * routes arguments down from their rows with branch, crossing and turn tiles,
 * and sets T from the arrival tick at the probe plus two ticks.
 * Needs WIRE, AND2, OR2 and CROSS in the catalog for (word, fixed4).
 * Errors: UNSUPPORTED_WORD, NONPLANAR_WITHOUT_CROSSOVER, PLACEMENT_OVERFLOW.
 */
[[nodiscard]] CompiledLayout compile(const Netlist& n, const Schedule& word, const CompileOptions& options = {});

struct CheckResult
{
    bool expected{false};
    std::optional<std::uint64_t> probe_step;
    std::uint64_t steps_used{0};
    bool agrees{false};
};

/// Runs one assignment of the layout; a prebuilt simulator is copied for each run.
class LayoutChecker
{
  public:
    LayoutChecker(const CompiledLayout& layout, const Netlist& netlist);
    [[nodiscard]] CheckResult check(const Assignment& assignment) const;

  private:
    const CompiledLayout& layout_;
    const Netlist& netlist_;
    Simulator base_;
};

[[nodiscard]] CheckResult check_compiled(const CompiledLayout& layout, const Netlist& n, const Assignment& assignment);

/// JSON manifest: schedule, mode, T, probe, input port table, size and placement.
[[nodiscard]] std::string layout_manifest(const CompiledLayout& layout);
/// Reads the fields of a manifest back onto a layout whose grid is loaded separately.
[[nodiscard]] CompiledLayout parse_layout_manifest(std::string_view json, ChipGrid grid);

}  // namespace fungal
