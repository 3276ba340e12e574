#include "fungal/coord.hpp"

#include "fungal/error.hpp"

#include <string>

namespace fungal
{

std::string_view to_string(Direction d) noexcept
{
    switch (d)
    {
        case Direction::East: return "E";
        case Direction::West: return "W";
        case Direction::North: return "N";
        case Direction::South: return "S";
    }
    return "?";
}

Direction parse_direction(std::string_view s)
{
    if (s == "E" || s == "east" || s == "EAST") return Direction::East;
    if (s == "W" || s == "west" || s == "WEST") return Direction::West;
    if (s == "N" || s == "north" || s == "NORTH") return Direction::North;
    if (s == "S" || s == "south" || s == "SOUTH") return Direction::South;
    throw Error(ErrorCode::ParseError, "unknown direction '" + std::string(s) + "'");
}

}  // namespace fungal
