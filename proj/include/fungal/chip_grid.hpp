#pragma once

#include "fungal/coord.hpp"

#include <cstdint>
#include <optional>
#include <unordered_map>
#include <utility>
#include <vector>

namespace fungal
{

using ChipCount = std::uint32_t;

/// Inclusive bounding box.
struct Bounds
{
    Coord min;
    Coord max;

    [[nodiscard]] bool contains(Coord c) const noexcept
    {
        return c.x >= min.x && c.x <= max.x && c.y >= min.y && c.y <= max.y;
    }
    [[nodiscard]] std::int64_t width() const noexcept { return max.x - min.x + 1; }
    [[nodiscard]] std::int64_t height() const noexcept { return max.y - min.y + 1; }
    [[nodiscard]] Bounds expanded(std::int64_t margin) const noexcept
    {
        return {{min.x - margin, min.y - margin}, {max.x + margin, max.y + margin}};
    }
    [[nodiscard]] Bounds merged(const Bounds& o) const noexcept
    {
        return {{std::min(min.x, o.min.x), std::min(min.y, o.min.y)},
                {std::max(max.x, o.max.x), std::max(max.y, o.max.y)}};
    }
    friend bool operator==(const Bounds&, const Bounds&) = default;
};

/**
 * Finite configuration on the unbounded grid. Absent sites hold zero chips and
 * zero counts are never stored, so two grids are equal iff their maps are equal.
 */
class ChipGrid
{
  public:
    using Map = std::unordered_map<Coord, ChipCount, CoordHash>;

    ChipGrid() = default;
    ChipGrid(std::initializer_list<std::pair<Coord, ChipCount>> cells);

    [[nodiscard]] ChipCount at(Coord c) const noexcept;
    void set(Coord c, ChipCount n);
    void add(Coord c, ChipCount n);
    /// Removes up to `n` chips; returns how many were actually removed.
    ChipCount remove(Coord c, ChipCount n);

    [[nodiscard]] std::size_t size() const noexcept { return cells_.size(); }
    [[nodiscard]] bool empty() const noexcept { return cells_.empty(); }
    [[nodiscard]] std::uint64_t total() const noexcept;
    [[nodiscard]] std::optional<Bounds> bounds() const noexcept;

    /// Cells in row-major order.
    [[nodiscard]] std::vector<std::pair<Coord, ChipCount>> sorted() const;

    [[nodiscard]] ChipGrid translated(Coord by) const;
    /// Keeps only the sites for which `keep` is true.
    template <typename Pred>
    [[nodiscard]] ChipGrid filtered(Pred keep) const
    {
        ChipGrid out;
        for (const auto& [c, n] : cells_)
        {
            if (keep(c))
            {
                out.cells_.emplace(c, n);
            }
        }
        return out;
    }
    /// Adds every chip of `other` onto this grid.
    void merge(const ChipGrid& other);

    [[nodiscard]] Map::const_iterator begin() const noexcept { return cells_.begin(); }
    [[nodiscard]] Map::const_iterator end() const noexcept { return cells_.end(); }

    friend bool operator==(const ChipGrid& a, const ChipGrid& b) { return a.cells_ == b.cells_; }

  private:
    Map cells_;
};

/// Sum of all chip counts.
[[nodiscard]] inline std::uint64_t total_chips(const ChipGrid& grid) noexcept { return grid.total(); }

}  // namespace fungal
