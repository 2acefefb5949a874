#pragma once

#include <string>
#include <variant>
#include <vector>

#include "paperfold/approx.hpp"
#include "paperfold/scheme.hpp"

namespace paperfold {

// Parsed scheme file: polygon plus raw pairing intervals. Validation into a
// Scheme is a separate step so rendering can accept partial collections.
struct SchemeDoc {
  Polygon polygon;
  std::vector<PairingSpec> pairings;
};

using Document = std::variant<SchemeDoc, InfiniteScheme>;

// Parses either a scheme file or a pattern file; unknown fields are
// rejected. Throws ParseError for malformed input.
Document parse_document(const std::string& text);

std::string serialize_scheme(const Polygon& poly, const std::vector<Pairing>& pairings);

std::string experiment_csv(const std::vector<ExperimentRow>& rows);

// Shortest decimal rendering with 12 significant digits.
std::string fmt_g12(double v);

}  // namespace paperfold
