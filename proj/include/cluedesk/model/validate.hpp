#pragma once

#include "cluedesk/model/types.hpp"

#include <string>
#include <vector>

namespace cluedesk {

inline constexpr double kProfileMin = 1.0;
inline constexpr double kProfileMax = 5.0;
inline constexpr double kPriorWeight = 1.0;

// Every broken type invariant, one human-readable line each; empty when the
// state is well formed. Never throws.
std::vector<std::string> validate_state(const ConversationState& state,
                                        std::size_t expected_dims = 23);

} // namespace cluedesk
