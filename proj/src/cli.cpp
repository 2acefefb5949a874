#include "paperfold/cli.hpp"

#include <fstream>
#include <numbers>
#include <sstream>

#include <CLI11.hpp>

#include "paperfold/analysis.hpp"
#include "paperfold/gh.hpp"
#include "paperfold/io.hpp"
#include "paperfold/quotient.hpp"
#include "paperfold/render.hpp"

namespace paperfold {

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::ParseError, "cannot read " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorKind::ParseError, "cannot write " + path);
  out << content;
}

Point parse_location(const Polygon& poly, const std::string& token) {
  const auto comma = token.find(',');
  try {
    if (comma == std::string::npos) {
      return poly.boundary_point(std::stod(token));
    }
    return {std::stod(token.substr(0, comma)), std::stod(token.substr(comma + 1))};
  } catch (const std::exception&) {
    fail(ErrorKind::ParseError, "location must be a boundary coordinate or \"x,y\": " + token);
  }
}

SchemeDoc expect_scheme(Document&& doc) {
  if (auto* s = std::get_if<SchemeDoc>(&doc)) return std::move(*s);
  fail(ErrorKind::ParseError, "expected a scheme file, got a pattern file");
}

InfiniteScheme expect_pattern(Document&& doc) {
  if (auto* p = std::get_if<InfiniteScheme>(&doc)) return std::move(*p);
  fail(ErrorKind::ParseError, "expected a pattern file, got a scheme file");
}

int cmd_validate(const std::string& path, std::ostream& out) {
  Document doc = parse_document(read_file(path));
  if (auto* pattern = std::get_if<InfiniteScheme>(&doc)) {
    const Scheme first = truncate(*pattern, 1);
    out << "valid pattern file: " << pattern->patterns.size() << " pattern(s), truncation n=1 "
        << (first.plain() ? "plain" : "NOT plain") << "\n";
    return 0;
  }
  SchemeDoc sdoc = std::get<SchemeDoc>(std::move(doc));
  const Scheme sch = Scheme::validate(std::move(sdoc.polygon), sdoc.pairings);
  out << "valid, full, " << (sch.plain() ? "plain" : "NOT plain") << "\n";
  return 0;
}

int cmd_dist(const std::string& path, const std::string& a, const std::string& b, double delta,
             double tol, std::ostream& out) {
  SchemeDoc doc = expect_scheme(parse_document(read_file(path)));
  const Scheme sch = Scheme::validate(std::move(doc.polygon), doc.pairings);
  const Point x = parse_location(sch.polygon(), a);
  const Point y = parse_location(sch.polygon(), b);
  const QuotientDistanceResult r = refine_until(sch, x, y, tol, delta);
  out << "value: " << fmt_g12(r.value) << "\n";
  out << "mesh: " << fmt_g12(r.mesh) << "\n";
  out << "certified: upper-bound\n";
  return 0;
}

int cmd_gh_bound(const std::string& path_a, const std::string& path_b, double delta,
                 std::ostream& out) {
  SchemeDoc da = expect_scheme(parse_document(read_file(path_a)));
  SchemeDoc db = expect_scheme(parse_document(read_file(path_b)));
  const Scheme a = Scheme::validate(std::move(da.polygon), da.pairings);
  const Scheme b = Scheme::validate(std::move(db.polygon), db.pairings);
  if (delta <= 0.0) delta = a.polygon().perimeter() / 200.0;
  const SupDiffResult sup = sup_metric_diff(a, b, delta);
  const GHBound bound = gh_bound_lemma(delta, sup.sup_diff);
  out << "sup_diff: " << fmt_g12(bound.sup_diff) << "\n";
  out << "r: " << fmt_g12(std::max(bound.r, bound.sup_diff)) << "\n";
  out << "gh_bound: " << fmt_g12(bound.bound) << "\n";
  return 0;
}

int cmd_converge(const std::string& path, int n_max, double delta, double delta0,
                 const std::string& out_path, std::ostream& out) {
  const InfiniteScheme inf = expect_pattern(parse_document(read_file(path)));
  if (delta <= 0.0) delta = inf.polygon.perimeter() / 200.0;
  const auto rows = approximation_sequence(inf, n_max, delta, delta0);
  const std::string csv = experiment_csv(rows);
  if (out_path.empty()) {
    out << csv;
  } else {
    write_file(out_path, csv);
  }
  return 0;
}

int cmd_render(const std::string& path, const std::string& out_path, int chords,
               std::ostream& out) {
  Document doc = parse_document(read_file(path));
  std::string svg;
  if (auto* pattern = std::get_if<InfiniteScheme>(&doc)) {
    const Scheme sch = truncate(*pattern, 3);
    svg = render_svg(sch.polygon(), sch.pairings(), chords);
  } else {
    SchemeDoc sdoc = std::get<SchemeDoc>(std::move(doc));
    std::vector<Pairing> pairings;
    for (const PairingSpec& spec : sdoc.pairings) {
      pairings.push_back(make_pairing(sdoc.polygon, spec));
    }
    svg = render_svg(sdoc.polygon, pairings, chords);
  }
  if (out_path.empty()) {
    out << svg;
  } else {
    write_file(out_path, svg);
  }
  return 0;
}

int cmd_curvature(const std::string& path, bool include_flat, std::ostream& out) {
  SchemeDoc doc = expect_scheme(parse_document(read_file(path)));
  const Scheme sch = Scheme::validate(std::move(doc.polygon), doc.pairings);
  const auto cps = cone_points(sch, include_flat);
  const ClassTable& table = sch.boundary_classes();

  std::string json = "{\n  \"cone_points\": [\n";
  for (std::size_t i = 0; i < cps.size(); ++i) {
    const ConePoint& c = cps[i];
    json += "    {\"class\": " + std::to_string(c.class_id) + ", \"members\": [";
    for (std::size_t j = 0; j < c.members.size(); ++j) {
      if (j) json += ", ";
      json += fmt_g12(c.members[j]);
    }
    json += "], \"total_angle\": " + fmt_g12(c.total_angle) +
            ", \"curvature\": " + fmt_g12(c.curvature) + "}";
    if (i + 1 < cps.size()) json += ",";
    json += "\n";
  }
  json += "  ],\n";
  json += "  \"class_count\": " + std::to_string(table.classes.size()) + ",\n";
  json += "  \"euler_characteristic\": " + std::to_string(euler_characteristic(sch)) + ",\n";
  json += "  \"gauss_bonnet_residual\": " + fmt_g12(gauss_bonnet_residual(sch)) + ",\n";
  json += "  \"total_abs_curvature\": " + fmt_g12(total_abs_curvature(sch)) + "\n}\n";
  out << json;
  return 0;
}

int cmd_simplify(const std::string& path, double epsilon, double delta, double delta0,
                 const std::string& out_path, std::ostream& out) {
  const InfiniteScheme inf = expect_pattern(parse_document(read_file(path)));
  const SimplifyResult res = repeat_simplify(inf, epsilon, delta, delta0);
  out << "stages: " << res.stages.size() << "\n";
  for (const SimplifyStage& s : res.stages) {
    out << "  pattern " << s.pattern << " anchor " << fmt_g12(s.anchor) << " level " << s.level
        << " theorem_bound " << fmt_g12(s.theorem_bound);
    if (s.empirical_gh_bound >= 0.0) out << " empirical_gh_bound " << fmt_g12(s.empirical_gh_bound);
    out << "\n";
  }
  out << "bound_sum: " << fmt_g12(res.bound_sum) << "\n";
  if (!out_path.empty()) {
    write_file(out_path, serialize_scheme(res.final_scheme.polygon(), res.final_scheme.pairings()));
  }
  return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"metric quotients of polygons under boundary self-gluings"};
  app.require_subcommand(1);

  std::string path, path_b, loc_a, loc_b, out_path;
  double delta = 0.0, tol = 0.0, delta0 = 0.01, epsilon = 0.0;
  int n_max = 6, chords = 7;
  bool include_flat = false;

  auto* validate = app.add_subcommand("validate", "validate a scheme or pattern file");
  validate->add_option("file", path)->required();

  auto* dist = app.add_subcommand("dist", "quotient distance upper bound between two points");
  dist->add_option("file", path)->required();
  dist->add_option("a", loc_a, "boundary coordinate or x,y")->required();
  dist->add_option("b", loc_b, "boundary coordinate or x,y")->required();
  dist->add_option("--delta", delta, "initial mesh (default perimeter/200)");
  dist->add_option("--tol", tol, "refinement stop (default 1e-3*perimeter)");

  auto* ghb = app.add_subcommand("gh-bound", "Gromov-Hausdorff upper bound for two schemes");
  ghb->add_option("fileA", path)->required();
  ghb->add_option("fileB", path_b)->required();
  ghb->add_option("--delta", delta, "net mesh (default perimeter/200)");

  auto* converge = app.add_subcommand("converge", "truncation convergence experiment (CSV)");
  converge->add_option("file", path)->required();
  converge->add_option("--n-max", n_max);
  converge->add_option("--delta", delta);
  converge->add_option("--delta0", delta0);
  converge->add_option("--out", out_path);

  auto* render = app.add_subcommand("render", "SVG diagram of a scheme");
  render->add_option("file", path)->required();
  render->add_option("--out", out_path);
  render->add_option("--chords", chords);

  auto* curvature = app.add_subcommand("curvature", "cone points and curvature report (JSON)");
  curvature->add_option("file", path)->required();
  curvature->add_flag("--include-flat", include_flat);

  auto* simplify = app.add_subcommand("simplify", "staged pattern replacement");
  simplify->add_option("file", path)->required();
  simplify->add_option("--epsilon", epsilon)->required();
  simplify->add_option("--delta", delta);
  simplify->add_option("--delta0", delta0);
  simplify->add_option("--out", out_path);

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return 0;
    }
    err << e.what() << "\n";
    return 2;
  }

  try {
    if (validate->parsed()) return cmd_validate(path, out);
    if (dist->parsed()) return cmd_dist(path, loc_a, loc_b, delta, tol, out);
    if (ghb->parsed()) return cmd_gh_bound(path, path_b, delta, out);
    if (converge->parsed()) return cmd_converge(path, n_max, delta, delta0, out_path, out);
    if (render->parsed()) return cmd_render(path, out_path, chords, out);
    if (curvature->parsed()) return cmd_curvature(path, include_flat, out);
    if (simplify->parsed()) return cmd_simplify(path, epsilon, delta, delta0, out_path, out);
  } catch (const Error& e) {
    err << e.what() << "\n";
    if (e.kind() == ErrorKind::MeshTooFine || e.kind() == ErrorKind::BudgetExceeded) return 3;
    return 1;
  } catch (const std::exception& e) {
    err << e.what() << "\n";
    return 1;
  }
  return 2;
}

}  // namespace paperfold
