#pragma once

#include "fungal/chip_grid.hpp"
#include "fungal/gadget.hpp"

#include <cstdint>
#include <vector>

namespace fungal::designs
{

/**
 * Layout tiles for the H4V4 band construction. A band is five rows (or columns)
 * of 3s; a signal crosses it four cells per word. Every tile keeps its cells in
 * [-10, 9] x [-10, 9] around its centre, except the two-input gates, which also
 * use the tile to their east, so tiles abut on a grid of pitch kTilePitch.
 * Inputs arrive from the west and from the north; outputs leave to the east and
 * to the south.
 */
enum class Tile : std::uint8_t
{
    HWire,      ///< west to east
    VWire,      ///< north to south
    TurnSouth,  ///< west in, south out
    TurnEast,   ///< north in, east out
    Branch,     ///< west in, east and south out
    Cross,      ///< west to east and north to south
    And,        ///< west and north in, east out (spans two tiles)
    Or          ///< west and north in, east out (spans two tiles)
};

inline constexpr std::int64_t kTilePitch = 20;
inline constexpr std::int64_t kBandHalfWidth = 2;
inline constexpr ChipCount kBandChips = 3;

[[nodiscard]] ChipGrid tile(Tile t);

/// Five-row band of 3s over x0..x1 centred on row yc.
void hband(ChipGrid& g, std::int64_t x0, std::int64_t x1, std::int64_t yc);
/// Five-column band of 3s over y0..y1 centred on column xc.
void vband(ChipGrid& g, std::int64_t xc, std::int64_t y0, std::int64_t y1);

/// Free-standing H4V4 gadgets built from the tiles with straight arms.
[[nodiscard]] std::vector<Gadget> band_gadgets();

/// Staircase gadgets for H^kV^k, one cell per step.
[[nodiscard]] std::vector<Gadget> path_gadgets(int k, ThresholdMode mode);

/// Straight-line gadgets for the all-open word.
[[nodiscard]] std::vector<Gadget> open_gadgets(ThresholdMode mode);

/// Every gadget that ships in the catalog, already calibrated.
[[nodiscard]] std::vector<Gadget> catalog_gadgets();

/**
 * Fills in output phases, latency and the backward allowance by simulating the
 * gadget with all inputs asserted and with each input alone.
 */
[[nodiscard]] Gadget calibrate(Gadget g, std::uint32_t ticks);

}  // namespace fungal::designs
