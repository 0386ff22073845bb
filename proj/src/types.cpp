#include "ntnharq/types.hpp"

namespace ntnharq {

std::string_view to_string(Direction d) { return d == Direction::DL ? "DL" : "UL"; }

std::string_view to_string(GrantMode g) { return g == GrantMode::STBG ? "STBG" : "MTBG"; }

std::string_view to_string(Bundling b) { return b == Bundling::None ? "None" : "Bundled"; }

std::string_view to_string(ScheduleMode m) {
    return m == ScheduleMode::LegacyFixed ? "LegacyFixed" : "ProposedVariable";
}

}  // namespace ntnharq
