#include "fungal/grid_io.hpp"

#include "fungal/error.hpp"
#include "text_util.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <vector>

namespace fungal
{

namespace
{

Bounds region_or_bounds(const ChipGrid& grid, std::optional<Bounds> region)
{
    if (region)
    {
        return *region;
    }
    return grid.bounds().value_or(Bounds{{0, 0}, {0, 0}});
}

}  // namespace

ChipGrid parse_grid(std::string_view text, std::size_t first_line)
{
    using detail::parse_int;
    ChipGrid grid;
    for (const auto& line : detail::split_lines(text, first_line))
    {
        const auto& words = line.words;
        if (words.empty())
        {
            continue;
        }
        if (words.size() != 3)
        {
            throw Error(ErrorCode::ParseError, "expected 'x y n'", line.number);
        }
        const Coord c{parse_int<std::int64_t>(words[0], line.number), parse_int<std::int64_t>(words[1], line.number)};
        const auto n = parse_int<std::int64_t>(words[2], line.number);
        if (n < 1 || n > 0xFFFFFFFFLL)
        {
            throw Error(ErrorCode::ParseError, "chip count must be a positive 32-bit integer", line.number);
        }
        if (grid.at(c) != 0)
        {
            throw Error(ErrorCode::DuplicateCoord,
                        "cell (" + std::to_string(c.x) + "," + std::to_string(c.y) + ") listed twice", line.number);
        }
        grid.set(c, static_cast<ChipCount>(n));
    }
    return grid;
}

std::string format_grid(const ChipGrid& grid)
{
    std::string out;
    for (const auto& [c, n] : grid.sorted())
    {
        out += std::to_string(c.x);
        out += ' ';
        out += std::to_string(c.y);
        out += ' ';
        out += std::to_string(n);
        out += '\n';
    }
    return out;
}

std::string render_ascii(const ChipGrid& grid, std::optional<Bounds> region)
{
    const Bounds b = region_or_bounds(grid, region);
    std::string out;
    out.reserve(static_cast<std::size_t>((b.width() + 1) * b.height()));
    for (std::int64_t y = b.min.y; y <= b.max.y; ++y)
    {
        for (std::int64_t x = b.min.x; x <= b.max.x; ++x)
        {
            const ChipCount n = grid.at({x, y});
            out += n == 0 ? '.' : (n >= 10 ? '+' : static_cast<char>('0' + n));
        }
        out += '\n';
    }
    return out;
}

std::string render_ppm(const ChipGrid& grid, std::optional<Bounds> region)
{
    const Bounds b = region_or_bounds(grid, region);
    std::string out = "P6\n" + std::to_string(b.width()) + " " + std::to_string(b.height()) + "\n255\n";
    // a fixed palette keeps images comparable between frames
    static constexpr unsigned char kPalette[5][3] = {
        {255, 255, 255}, {190, 215, 255}, {90, 150, 240}, {20, 60, 170}, {220, 40, 40}};
    for (std::int64_t y = b.min.y; y <= b.max.y; ++y)
    {
        for (std::int64_t x = b.min.x; x <= b.max.x; ++x)
        {
            const ChipCount n = std::min<ChipCount>(grid.at({x, y}), 4);
            out.append(reinterpret_cast<const char*>(kPalette[n]), 3);
        }
    }
    return out;
}

std::string read_file(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
    {
        throw Error(ErrorCode::Io, "cannot open " + path.string());
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file_atomic(const std::filesystem::path& path, std::string_view contents)
{
    std::filesystem::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out)
        {
            throw Error(ErrorCode::Io, "cannot write " + tmp.string());
        }
        out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
        if (!out)
        {
            throw Error(ErrorCode::Io, "write failed for " + tmp.string());
        }
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec)
    {
        std::filesystem::remove(tmp);
        throw Error(ErrorCode::Io, "cannot rename into " + path.string() + ": " + ec.message());
    }
}

}  // namespace fungal
