#pragma once

#include "fungal/error.hpp"

#include <charconv>
#include <string>
#include <string_view>
#include <vector>

namespace fungal::detail
{

/// Whitespace-separated words of one line.
inline std::vector<std::string_view> split_words(std::string_view line)
{
    std::vector<std::string_view> words;
    std::size_t i = 0;
    while (i < line.size())
    {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r'))
        {
            ++i;
        }
        const std::size_t start = i;
        while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r')
        {
            ++i;
        }
        if (i > start)
        {
            words.push_back(line.substr(start, i - start));
        }
    }
    return words;
}

template <typename Int>
Int parse_int(std::string_view word, std::size_t line)
{
    Int value{};
    const auto* end = word.data() + word.size();
    const auto [ptr, ec] = std::from_chars(word.data(), end, value);
    if (ec != std::errc{} || ptr != end)
    {
        throw Error(ErrorCode::ParseError, "expected an integer, got '" + std::string(word) + "'", line);
    }
    return value;
}

/// Text split into lines with `#` comments removed, numbered from `first_line`.
struct Line
{
    std::size_t number;
    std::string_view raw;
    std::vector<std::string_view> words;
};

inline std::vector<Line> split_lines(std::string_view text, std::size_t first_line = 1)
{
    std::vector<Line> lines;
    std::size_t line_no = first_line;
    std::size_t pos = 0;
    while (pos <= text.size())
    {
        const std::size_t nl = text.find('\n', pos);
        const std::string_view raw =
            text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
        std::string_view body = raw;
        if (const auto hash = body.find('#'); hash != std::string_view::npos)
        {
            body = body.substr(0, hash);
        }
        lines.push_back({line_no, raw, split_words(body)});
        if (nl == std::string_view::npos)
        {
            break;
        }
        pos = nl + 1;
        ++line_no;
    }
    return lines;
}

}  // namespace fungal::detail
