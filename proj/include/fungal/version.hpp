#pragma once

#include <string_view>

namespace fungal
{

/// Recorded in every manifest so that a run can be matched to the code that produced it.
inline constexpr std::string_view kToolVersion = "0.1.0";

}  // namespace fungal
