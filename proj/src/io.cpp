#include "paperfold/io.hpp"

#include <cstdio>

#include <json.hpp>

namespace paperfold {

namespace {

using nlohmann::json;

void require_keys(const json& node, std::initializer_list<const char*> allowed,
                  const char* where) {
  for (const auto& [key, value] : node.items()) {
    (void)value;
    bool ok = false;
    for (const char* k : allowed) {
      if (key == k) ok = true;
    }
    if (!ok) fail(ErrorKind::ParseError, "unknown field \"" + key + "\" in " + where);
  }
}

double number_at(const json& node, const char* key, const char* where) {
  if (!node.contains(key) || !node[key].is_number()) {
    fail(ErrorKind::ParseError, std::string("missing number \"") + key + "\" in " + where);
  }
  return node[key].get<double>();
}

BoundaryInterval parse_interval(const json& node, const char* where) {
  if (!node.is_object()) fail(ErrorKind::ParseError, std::string(where) + " must be an object");
  require_keys(node, {"start", "len"}, where);
  return {number_at(node, "start", where), number_at(node, "len", where)};
}

std::vector<PairingSpec> parse_pairings(const json& node, const char* where) {
  if (!node.is_array()) fail(ErrorKind::ParseError, std::string(where) + " must be an array");
  std::vector<PairingSpec> out;
  for (const json& p : node) {
    if (!p.is_object()) fail(ErrorKind::ParseError, "pairing must be an object");
    require_keys(p, {"a", "b"}, "pairing");
    if (!p.contains("a") || !p.contains("b")) {
      fail(ErrorKind::ParseError, "pairing needs intervals \"a\" and \"b\"");
    }
    out.push_back({parse_interval(p["a"], "interval a"), parse_interval(p["b"], "interval b")});
  }
  return out;
}

Polygon parse_polygon(const json& node) {
  if (!node.is_array()) fail(ErrorKind::ParseError, "\"polygon\" must be an array of [x,y]");
  std::vector<Point> vs;
  for (const json& v : node) {
    if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number()) {
      fail(ErrorKind::ParseError, "polygon vertex must be [x,y]");
    }
    vs.push_back({v[0].get<double>(), v[1].get<double>()});
  }
  return Polygon::validate(std::move(vs));
}

void check_version(const json& doc) {
  if (!doc.contains("version")) return;
  if (!doc["version"].is_number_integer() || doc["version"].get<int>() != 1) {
    fail(ErrorKind::ParseError, "unsupported version tag");
  }
}

PatternSpec parse_pattern_fields(const json& node, const char* where) {
  PatternSpec spec;
  const std::string kind = node.contains("kind") && node["kind"].is_string()
                               ? node["kind"].get<std::string>()
                               : std::string();
  if (kind == "canon1") {
    spec.kind = PatternKind::Canon1;
  } else if (kind == "canon2") {
    spec.kind = PatternKind::Canon2;
  } else if (kind == "singular1") {
    spec.kind = PatternKind::Singular1;
  } else {
    fail(ErrorKind::ParseError, "pattern kind must be canon1, canon2 or singular1");
  }
  spec.anchor = number_at(node, "anchor", where);
  spec.ratio = node.contains("ratio") ? number_at(node, "ratio", where) : 0.5;
  spec.first_len = number_at(node, "first_len", where);
  return spec;
}

}  // namespace

Document parse_document(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    fail(ErrorKind::ParseError, e.what());
  }
  if (!doc.is_object()) fail(ErrorKind::ParseError, "top level must be an object");

  const bool is_pattern = doc.contains("kind") || doc.contains("patterns");
  if (!is_pattern) {
    require_keys(doc, {"version", "polygon", "pairings"}, "scheme file");
    check_version(doc);
    if (!doc.contains("polygon") || !doc.contains("pairings")) {
      fail(ErrorKind::ParseError, "scheme file needs \"polygon\" and \"pairings\"");
    }
    SchemeDoc out{parse_polygon(doc["polygon"]), parse_pairings(doc["pairings"], "pairings")};
    return out;
  }

  std::vector<PatternSpec> patterns;
  if (doc.contains("patterns")) {
    require_keys(doc, {"version", "polygon", "patterns", "base_pairings"}, "pattern file");
    if (!doc["patterns"].is_array() || doc["patterns"].empty()) {
      fail(ErrorKind::ParseError, "\"patterns\" must be a non-empty array");
    }
    for (const json& p : doc["patterns"]) {
      require_keys(p, {"kind", "anchor", "ratio", "first_len"}, "pattern");
      patterns.push_back(parse_pattern_fields(p, "pattern"));
    }
  } else {
    require_keys(doc, {"version", "polygon", "kind", "anchor", "ratio", "first_len", "base_pairings"},
                 "pattern file");
    patterns.push_back(parse_pattern_fields(doc, "pattern file"));
  }
  check_version(doc);
  if (!doc.contains("polygon")) fail(ErrorKind::ParseError, "pattern file needs \"polygon\"");
  Polygon poly = parse_polygon(doc["polygon"]);
  std::vector<PairingSpec> base;
  if (doc.contains("base_pairings")) {
    base = parse_pairings(doc["base_pairings"], "base_pairings");
  }
  return InfiniteScheme::validate(std::move(poly), std::move(base), std::move(patterns));
}

std::string fmt_g12(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

std::string serialize_scheme(const Polygon& poly, const std::vector<Pairing>& pairings) {
  std::string out = "{\n  \"version\": 1,\n  \"polygon\": [";
  for (std::size_t i = 0; i < poly.size(); ++i) {
    if (i) out += ", ";
    out += "[" + fmt_g12(poly.vertex(i).x) + ", " + fmt_g12(poly.vertex(i).y) + "]";
  }
  out += "],\n  \"pairings\": [\n";
  for (std::size_t i = 0; i < pairings.size(); ++i) {
    const Pairing& p = pairings[i];
    out += "    {\"a\": {\"start\": " + fmt_g12(p.a.start) + ", \"len\": " + fmt_g12(p.a.length) +
           "}, \"b\": {\"start\": " + fmt_g12(p.b.start) + ", \"len\": " + fmt_g12(p.b.length) +
           "}}";
    if (i + 1 < pairings.size()) out += ",";
    out += "\n";
  }
  out += "  ]\n}\n";
  return out;
}

std::string experiment_csv(const std::vector<ExperimentRow>& rows) {
  std::string out = "n,gamma_len,gamma_diam,sup_diff,gh_bound,theorem_bound,total_abs_curv\n";
  for (const ExperimentRow& r : rows) {
    out += std::to_string(r.n);
    out += "," + fmt_g12(r.gamma_len);
    out += "," + fmt_g12(r.gamma_diam);
    out += "," + fmt_g12(r.sup_diff);
    out += "," + fmt_g12(r.gh_bound);
    out += "," + fmt_g12(r.theorem_bound);
    out += "," + fmt_g12(r.total_abs_curv);
    out += "\n";
  }
  return out;
}

}  // namespace paperfold
