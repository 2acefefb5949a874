#pragma once

#include <string>
#include <vector>

#include "paperfold/scheme.hpp"

namespace paperfold {

// Scheme diagram: polygon outline, dotted chords joining paired points
// (chords_per_pairing parameter positions each), and marked fold points.
// Output is deterministic for fixed input.
std::string render_svg(const Polygon& poly, const std::vector<Pairing>& pairings,
                       int chords_per_pairing = 7);

}  // namespace paperfold
