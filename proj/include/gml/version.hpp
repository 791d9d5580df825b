#pragma once

namespace gml {

// Bumped whenever cache record layout or numeric semantics change;
// cache files carry this tag and mismatches are treated as misses.
inline constexpr const char* kCacheVersionTag = "1";

}  // namespace gml
