#include "fungal/chip_grid.hpp"

#include <algorithm>

namespace fungal
{

ChipGrid::ChipGrid(std::initializer_list<std::pair<Coord, ChipCount>> cells)
{
    for (const auto& [c, n] : cells)
    {
        add(c, n);
    }
}

ChipCount ChipGrid::at(Coord c) const noexcept
{
    const auto it = cells_.find(c);
    return it == cells_.end() ? 0 : it->second;
}

void ChipGrid::set(Coord c, ChipCount n)
{
    if (n == 0)
    {
        cells_.erase(c);
    }
    else
    {
        cells_[c] = n;
    }
}

void ChipGrid::add(Coord c, ChipCount n)
{
    if (n != 0)
    {
        cells_[c] += n;
    }
}

ChipCount ChipGrid::remove(Coord c, ChipCount n)
{
    const auto it = cells_.find(c);
    if (it == cells_.end())
    {
        return 0;
    }
    const ChipCount taken = std::min(n, it->second);
    it->second -= taken;
    if (it->second == 0)
    {
        cells_.erase(it);
    }
    return taken;
}

std::uint64_t ChipGrid::total() const noexcept
{
    std::uint64_t sum = 0;
    for (const auto& [c, n] : cells_)
    {
        sum += n;
    }
    return sum;
}

std::optional<Bounds> ChipGrid::bounds() const noexcept
{
    if (cells_.empty())
    {
        return std::nullopt;
    }
    Bounds b{cells_.begin()->first, cells_.begin()->first};
    for (const auto& [c, n] : cells_)
    {
        b.min.x = std::min(b.min.x, c.x);
        b.min.y = std::min(b.min.y, c.y);
        b.max.x = std::max(b.max.x, c.x);
        b.max.y = std::max(b.max.y, c.y);
    }
    return b;
}

std::vector<std::pair<Coord, ChipCount>> ChipGrid::sorted() const
{
    std::vector<std::pair<Coord, ChipCount>> out(cells_.begin(), cells_.end());
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    return out;
}

ChipGrid ChipGrid::translated(Coord by) const
{
    ChipGrid out;
    out.cells_.reserve(cells_.size());
    for (const auto& [c, n] : cells_)
    {
        out.cells_.emplace(c + by, n);
    }
    return out;
}

void ChipGrid::merge(const ChipGrid& other)
{
    for (const auto& [c, n] : other.cells_)
    {
        cells_[c] += n;
    }
}

}  // namespace fungal
