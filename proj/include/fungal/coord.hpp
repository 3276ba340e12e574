#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <string_view>

namespace fungal
{

/// Site on the integer grid. `x` is the column, `y` the row; rows grow southward.
struct Coord
{
    std::int64_t x{0};
    std::int64_t y{0};

    // row-major ordering, used wherever grids are listed
    friend constexpr std::strong_ordering operator<=>(const Coord& a, const Coord& b) noexcept
    {
        if (auto c = a.y <=> b.y; c != 0)
        {
            return c;
        }
        return a.x <=> b.x;
    }
    friend constexpr bool operator==(const Coord&, const Coord&) noexcept = default;

    friend constexpr Coord operator+(Coord a, Coord b) noexcept { return {a.x + b.x, a.y + b.y}; }
    friend constexpr Coord operator-(Coord a, Coord b) noexcept { return {a.x - b.x, a.y - b.y}; }
};

struct CoordHash
{
    std::size_t operator()(const Coord& c) const noexcept
    {
        auto h = static_cast<std::uint64_t>(c.x) * 0x9E3779B97F4A7C15ULL;
        h ^= static_cast<std::uint64_t>(c.y) + 0x632BE59BD9B4E019ULL + (h << 6) + (h >> 2);
        return static_cast<std::size_t>(h);
    }
};

enum class Direction : std::uint8_t
{
    East,
    West,
    North,
    South
};

constexpr Coord unit(Direction d) noexcept
{
    switch (d)
    {
        case Direction::East: return {1, 0};
        case Direction::West: return {-1, 0};
        case Direction::North: return {0, -1};
        case Direction::South: return {0, 1};
    }
    return {0, 0};
}

constexpr Direction opposite(Direction d) noexcept
{
    switch (d)
    {
        case Direction::East: return Direction::West;
        case Direction::West: return Direction::East;
        case Direction::North: return Direction::South;
        case Direction::South: return Direction::North;
    }
    return d;
}

/// Quarter-turn clockwise on screen (x east, y south).
constexpr Direction rotate_cw(Direction d) noexcept
{
    switch (d)
    {
        case Direction::East: return Direction::South;
        case Direction::South: return Direction::West;
        case Direction::West: return Direction::North;
        case Direction::North: return Direction::East;
    }
    return d;
}

/// Quarter-turn clockwise of a coordinate about the origin.
constexpr Coord rotate_cw(Coord c) noexcept { return {-c.y, c.x}; }

std::string_view to_string(Direction d) noexcept;
Direction parse_direction(std::string_view s);

/// Chebyshev (king-move) distance.
constexpr std::int64_t chebyshev(Coord a, Coord b) noexcept
{
    const auto dx = a.x > b.x ? a.x - b.x : b.x - a.x;
    const auto dy = a.y > b.y ? a.y - b.y : b.y - a.y;
    return dx > dy ? dx : dy;
}

}  // namespace fungal
