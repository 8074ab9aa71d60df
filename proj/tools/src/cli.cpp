#include "cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <memory>
#include <optional>
#include <sstream>

#include "germscan/dangelo.hpp"
#include "germscan/errors.hpp"
#include "germscan/grid.hpp"
#include "germscan/hausdorff.hpp"
#include "germscan/io.hpp"
#include "json.hpp"
#include "manifest.hpp"

#ifndef GERMSCAN_VERSION
#define GERMSCAN_VERSION "unknown"
#endif

namespace germscan::cli {

using nlohmann::json;

namespace {

struct SearchFlags {
  SearchConfig defaults;
  std::vector<unsigned> kappas = defaults.kappas;
  unsigned d = defaults.d;
  double eps0 = defaults.eps0;
  unsigned stages = defaults.stages;
  double tol = defaults.tol;
  double sep_factor = defaults.sep_factor;
  unsigned restarts = defaults.restarts;
  unsigned max_iters = defaults.max_iters;
  std::uint64_t seed = defaults.seed;

  void attach(CLI::App* cmd) {
    cmd->add_option("--d", d, "Dimension of the sought complex germs")->capture_default_str();
    cmd->add_option("--kappa", kappas, "Ascending kappa sweep, e.g. 1,2; IN at any kappa gives IN")->delimiter(',')->capture_default_str();
    cmd->add_option("--eps0", eps0, "Radius of the first stage")->capture_default_str();
    cmd->add_option("--stages", stages, "Number of radii eps0 / 2^s")->capture_default_str();
    cmd->add_option("--tol", tol, "Residual tolerance")->capture_default_str();
    cmd->add_option("--sep-factor", sep_factor, "Minimum base separation as a fraction of eps")->capture_default_str();
    cmd->add_option("--restarts", restarts, "Random starts per search")->capture_default_str();
    cmd->add_option("--max-iters", max_iters, "Solver iterations per start")->capture_default_str();
    cmd->add_option("--seed", seed, "Random seed")->capture_default_str();
  }

  SearchConfig config() const {
    SearchConfig cfg;
    cfg.kappas = kappas;
    cfg.d = d;
    cfg.eps0 = eps0;
    cfg.stages = stages;
    cfg.tol = tol;
    cfg.sep_factor = sep_factor;
    cfg.restarts = restarts;
    cfg.max_iters = max_iters;
    cfg.seed = seed;
    cfg.validate();
    return cfg;
  }
};

std::string join_args(const std::vector<std::string>& args) {
  std::string out;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (i) out += ' ';
    out += args[i];
  }
  return out;
}

class Context {
 public:
  Context(const std::vector<std::string>& args, std::ostream& out) : out_(out) {
    manifest_.command = join_args(args);
    manifest_.version = GERMSCAN_VERSION;
    manifest_.timestamp = utc_timestamp();
  }

  /// Reads an input file and records its hash.
  std::string input(const std::string& path) {
    std::string bytes = read_file(path);
    manifest_.inputs.push_back({path, sha256_hex(bytes)});
    return bytes;
  }

  RunManifest& manifest() { return manifest_; }

  void set_config(const SearchConfig& cfg) {
    manifest_.config = cfg;
    manifest_.has_config = true;
    manifest_.seed = cfg.seed;
  }

  /// JSON document with the manifest embedded, to --out or stdout.
  void emit_json(json doc, const std::string& out_path) {
    doc["manifest"] = manifest_to_json(manifest_);
    write_text(doc.dump(2) + "\n", out_path);
  }

  void write_text(const std::string& text, const std::string& path) {
    if (path.empty()) {
      out_ << text;
      return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw InvalidInput("cannot write '" + path + "'");
    f << text;
  }

 private:
  std::ostream& out_;
  RunManifest manifest_;
};

int verdict_exit(Verdict v) {
  switch (v) {
    case Verdict::In:
      return kExitIn;
    case Verdict::Out:
      return kExitOut;
    case Verdict::Undecided:
      return kExitUndecided;
  }
  return kExitInternal;
}

std::vector<ExactPlane> load_planes(Context& ctx, const std::vector<std::string>& paths) {
  std::vector<ExactPlane> planes;
  for (const auto& path : paths) planes.push_back(plane_from_json(ctx.input(path)));
  return planes;
}

json curve_json(const CurveJet& gamma) {
  json comps = json::array();
  for (const auto& comp : gamma.components()) {
    json terms = json::array();
    for (const auto& [k, c] : comp) terms.push_back({{"k", k}, {"re", to_string(c.re())}, {"im", to_string(c.im())}});
    comps.push_back(terms);
  }
  return {{"components", comps}};
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Scanning for complex germs in real algebraic hypersurfaces", "germscan"};
  app.set_config("--config", "", "TOML/INI file with defaults; command-line flags take precedence");
  app.require_subcommand(1);
  app.set_version_flag("--version", GERMSCAN_VERSION);

  std::string rho_path, point_text, out_path, box_text, ideal_path, grid_path, a_path, b_path, t_text = "1/2";
  std::string json_path;
  std::vector<std::string> delta_text, curve_paths, plane_paths;
  double resolution = 0.05, grid_tol = 0.0;
  unsigned threads = 1, max_degree = 3, budget = 2, weight_bound = 0;
  std::optional<std::size_t> solve_coordinate;

  SearchFlags classify_flags, scan_flags;

  auto* classify = app.add_subcommand("classify", "Classify a point of X");
  classify->add_option("--rho", rho_path, "Polynomial JSON file")->required();
  classify->add_option("--point", point_text, "2n comma-separated reals or a/b rationals")->required();
  classify->add_option("--plane", plane_paths, "Exact plane JSON used to certify IN before searching");
  classify->add_option("--out", out_path, "Write JSON here instead of stdout");
  classify_flags.attach(classify);

  auto* scan = app.add_subcommand("scan", "Classify the points of X in a box");
  scan->add_option("--rho", rho_path, "Polynomial JSON file")->required();
  scan->add_option("--box", box_text, "lo1:hi1,... over (Re z1, Im z1, ...)")->required();
  scan->add_option("--resolution", resolution, "Lattice step")->capture_default_str();
  scan->add_option("--solve", solve_coordinate, "1-based real coordinate solved for instead of enumerated");
  scan->add_option("--threads", threads, "Worker threads")->capture_default_str();
  scan->add_option("--out", out_path, "CSV file; its manifest goes to <out>.manifest.json");
  scan->add_option("--json", json_path, "Also write the table as JSON to this file");
  scan_flags.attach(scan);

  auto* decompose = app.add_subcommand("decompose", "Holomorphic decomposition of rho at its center");
  decompose->add_option("--rho", rho_path, "Polynomial JSON file")->required();
  decompose->add_option("--t", t_text, "Parameter t in (0, 1)")->capture_default_str();
  decompose->add_option("--delta", delta_text, "Positive weights, one per variable")->delimiter(',');
  decompose->add_option("--out", out_path, "Write JSON here instead of stdout");

  auto* type = app.add_subcommand("type", "Lower bound for the order of contact of curves at a point");
  type->add_option("--rho", rho_path, "Polynomial JSON file")->required();
  type->add_option("--point", point_text, "2n comma-separated exact reals")->required();
  type->add_option("--max-degree", max_degree, "Largest monomial curve exponent")->capture_default_str();
  type->add_option("--budget", budget, "Coefficient choices per component")->capture_default_str();
  type->add_option("--curve", curve_paths, "Extra curve JSON files");
  type->add_option("--out", out_path, "Write JSON here instead of stdout");

  auto* invariants = app.add_subcommand("invariants", "tau*, K and D of a monomial ideal");
  invariants->add_option("--ideal", ideal_path, "Ideal JSON file")->required();
  invariants->add_option("--weight-bound", weight_bound, "Largest weight (0: twice the max generator degree)");
  invariants->add_option("--out", out_path, "Write JSON here instead of stdout");

  auto* verify = app.add_subcommand("verify-grid", "Check a candidate grid");
  verify->add_option("--rho", rho_path, "Polynomial JSON file")->required();
  verify->add_option("--grid", grid_path, "Grid JSON file")->required();
  verify->add_option("--tol", grid_tol, "0 verifies exactly")->capture_default_str();
  verify->add_option("--out", out_path, "Write JSON here instead of stdout");

  auto* hausdorff = app.add_subcommand("hausdorff", "Hausdorff distance of two point clouds");
  hausdorff->add_option("--a", a_path, "CSV point cloud")->required();
  hausdorff->add_option("--b", b_path, "CSV point cloud")->required();
  hausdorff->add_option("--out", out_path, "Write JSON here instead of stdout");

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::Success& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitMalformed;
  }

  Context ctx(args, out);
  try {
    if (*classify) {
      const SearchConfig cfg = classify_flags.config();
      ctx.set_config(cfg);
      const HermitianPolynomial rho = polynomial_from_json(ctx.input(rho_path));
      const ParsedPoint p = parse_point(point_text, rho.dim());
      const auto planes = load_planes(ctx, plane_paths);
      ctx.manifest().exact = p.is_exact;
      const Classification c =
          p.is_exact ? classify_point(rho, p.exact, cfg, planes) : classify_point(rho, p.value, cfg);
      ctx.emit_json(json::parse(classification_to_json(c)), out_path);
      return verdict_exit(c.verdict);
    }

    if (*scan) {
      const SearchConfig cfg = scan_flags.config();
      ctx.set_config(cfg);
      const HermitianPolynomial rho = polynomial_from_json(ctx.input(rho_path));
      const Box box = parse_box(box_text);
      if (box.lo.size() != 2 * rho.dim()) throw DimensionMismatch("box needs 2n entries for this rho");
      ScanOptions options;
      options.resolution = resolution;
      options.threads = threads;
      if (solve_coordinate) {
        if (*solve_coordinate < 1 || *solve_coordinate > 2 * rho.dim()) {
          throw InvalidInput("--solve must lie in [1, 2n]");
        }
        options.solve_coordinate = *solve_coordinate - 1;
      }
      const auto rows = scan_table(scan_region(rho, box, options, cfg), cfg.stages);
      std::ostringstream csv;
      write_scan_csv(csv, rows, rho.dim(), cfg.stages);
      ctx.write_text(csv.str(), out_path);
      const json manifest = manifest_to_json(ctx.manifest());
      if (!out_path.empty()) ctx.write_text(manifest.dump(2) + "\n", out_path + ".manifest.json");
      if (!json_path.empty()) {
        json doc = json::parse(scan_to_json(rows, rho.dim(), cfg.stages));
        doc["manifest"] = manifest;
        ctx.write_text(doc.dump(2) + "\n", json_path);
      }
      return kExitIn;
    }

    if (*decompose) {
      const HermitianPolynomial rho = polynomial_from_json(ctx.input(rho_path));
      std::vector<Rational> delta;
      for (const auto& d : delta_text) delta.push_back(parse_rational(d));
      ctx.manifest().exact = true;
      const HoloDecomposition dec = holo_decompose(rho, parse_rational(t_text), delta);
      json doc = json::parse(decomposition_to_json(dec));
      doc["identity_verified"] = decomposition_identity_holds(rho, dec);
      ctx.emit_json(doc, out_path);
      return kExitIn;
    }

    if (*type) {
      const HermitianPolynomial rho = polynomial_from_json(ctx.input(rho_path));
      const ParsedPoint p = parse_point(point_text, rho.dim());
      if (!p.is_exact) throw InvalidInput("type bounds need an exact point");
      TypeOptions options;
      options.max_curve_degree = max_degree;
      options.coefficient_budget = budget;
      for (const auto& path : curve_paths) options.user_curves.push_back(curve_from_json(ctx.input(path), p.exact));
      ctx.manifest().exact = true;
      const TypeBound bound = type_lower_bound(rho, p.exact, options);
      json doc = {{"infinite", bound.infinite},
                  {"value", bound.infinite ? std::string("INFINITE") : to_string(bound.value)},
                  {"curves_examined", bound.curves_examined}};
      doc["witness"] = bound.witness ? curve_json(*bound.witness) : json(nullptr);
      ctx.emit_json(doc, out_path);
      return kExitIn;
    }

    if (*invariants) {
      const MonomialIdeal ideal = ideal_from_json(ctx.input(ideal_path));
      ctx.manifest().exact = true;
      const InequalityChainReport r = check_inequality_chain(ideal, weight_bound);
      json doc = {{"tau_star", r.tau_star ? to_string(*r.tau_star) : std::string("INFINITE")},
                  {"chain_holds", r.holds}};
      doc["K"] = r.K ? json(*r.K) : json("INFINITE");
      doc["D"] = r.D ? json(*r.D) : json("INFINITE");
      ctx.emit_json(doc, out_path);
      return r.holds ? kExitIn : kExitOut;
    }

    if (*verify) {
      const HermitianPolynomial rho = polynomial_from_json(ctx.input(rho_path));
      const std::string text = ctx.input(grid_path);
      GridReport report;
      if (grid_tol == 0.0) {
        ctx.manifest().exact = true;
        report = verify_grid(rho, exact_grid_from_json(text), 0.0);
      } else {
        report = verify_grid(rho, float_grid_from_json(text), grid_tol);
      }
      json pairs = json::array();
      for (const auto& v : report.pair_violations) pairs.push_back({{"i", v.i}, {"j", v.j}, {"residual", v.residual}});
      json coords = json::array();
      for (const auto& v : report.coordinate_violations) {
        coords.push_back({{"i", v.i}, {"j", v.j}, {"base", v.base + 1}, {"equal_index", v.equal_index}});
      }
      json doc = {{"ok", report.ok},
                  {"condition_a", report.condition_a},
                  {"condition_b", report.condition_b},
                  {"max_residual", report.max_residual},
                  {"pair_violations", pairs},
                  {"coordinate_violations", coords}};
      ctx.emit_json(doc, out_path);
      return report.ok ? kExitIn : kExitOut;
    }

    if (*hausdorff) {
      std::istringstream a(ctx.input(a_path)), b(ctx.input(b_path));
      const PointCloud A = read_point_cloud_csv(a), B = read_point_cloud_csv(b);
      ctx.emit_json({{"distance", hausdorff_distance(A, B)}}, out_path);
      return kExitIn;
    }
  } catch (const NotOnVariety& e) {
    err << "error: " << e.what() << '\n';
    return kExitNotOnVariety;
  } catch (const StructuralError& e) {
    err << "error: " << e.what() << '\n';
    return kExitStructural;
  } catch (const InvalidInput& e) {
    err << "error: " << e.what() << '\n';
    return kExitMalformed;
  } catch (const DimensionMismatch& e) {
    err << "error: " << e.what() << '\n';
    return kExitMalformed;
  } catch (const NotHermitian& e) {
    err << "error: " << e.what() << '\n';
    return kExitMalformed;
  } catch (const AnchorMismatch& e) {
    err << "error: " << e.what() << '\n';
    return kExitMalformed;
  } catch (const DegenerateCurve& e) {
    err << "error: " << e.what() << '\n';
    return kExitMalformed;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kExitInternal;
  }
  err << "error: no subcommand\n";
  return kExitMalformed;
}

}  // namespace germscan::cli
