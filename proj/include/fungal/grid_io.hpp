#pragma once

#include "fungal/chip_grid.hpp"

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>

namespace fungal
{

/**
 * Grid text format: one `x y n` triple per line with n >= 1, `#` starts a
 * comment, blank lines are ignored, repeated coordinates are rejected.
 * `first_line` offsets reported line numbers when the grid is embedded in a larger file.
 */
[[nodiscard]] ChipGrid parse_grid(std::string_view text, std::size_t first_line = 1);
/// Row-major listing, one cell per line.
[[nodiscard]] std::string format_grid(const ChipGrid& grid);

/// One character per cell: `.` for 0, digits 1-9, `+` for 10 or more.
[[nodiscard]] std::string render_ascii(const ChipGrid& grid, std::optional<Bounds> region = std::nullopt);
/// Binary portable pixmap, one pixel per cell, gray levels by count.
[[nodiscard]] std::string render_ppm(const ChipGrid& grid, std::optional<Bounds> region = std::nullopt);

[[nodiscard]] std::string read_file(const std::filesystem::path& path);
/// Writes to a sibling temporary file and renames it into place, so readers never see partial output.
void write_file_atomic(const std::filesystem::path& path, std::string_view contents);

}  // namespace fungal
