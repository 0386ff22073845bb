#pragma once

#include <string_view>

namespace ntnharq {

enum class Direction { DL, UL };

/// Single transport-block grant or one grant covering every TB of the cycle.
enum class GrantMode { STBG, MTBG };

enum class Bundling { None, Bundled };

enum class ScheduleMode { LegacyFixed, ProposedVariable };

std::string_view to_string(Direction d);
std::string_view to_string(GrantMode g);
std::string_view to_string(Bundling b);
std::string_view to_string(ScheduleMode m);

}  // namespace ntnharq
