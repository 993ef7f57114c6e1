#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "tonekit/score.hpp"

namespace tonekit {

// Built-in showcase scores, one per module plus a combined piece.
const std::vector<std::string>& demo_names();
// Score text; throws InvalidArgument for an unknown name.
std::string demo_text(std::string_view name);
Score demo_score(std::string_view name);

} // namespace tonekit
