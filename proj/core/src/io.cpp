#include "germscan/io.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <set>
#include <sstream>

#include "germscan/errors.hpp"
#include "json.hpp"

namespace germscan {

using nlohmann::json;

namespace {

json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw InvalidInput(std::string("malformed JSON: ") + e.what());
  }
}

// Wraps nlohmann's type errors so they surface as InvalidInput.
template <typename F>
auto guarded(const char* what, F&& f) {
  try {
    return f();
  } catch (const json::exception& e) {
    throw InvalidInput(std::string(what) + ": " + e.what());
  }
}

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw InvalidInput(std::string("missing field '") + key + "'");
  return j.at(key);
}

Rational rational_field(const json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<long>());
  if (j.is_number()) {
    const double v = j.get<double>();
    if (!std::isfinite(v)) throw InvalidInput("non-finite number");
    return rational_from_double(v);
  }
  throw InvalidInput("expected a rational string or number");
}

ComplexRational complex_field(const json& j) {
  Rational re = j.contains("re") ? rational_field(j.at("re")) : Rational(0);
  Rational im = j.contains("im") ? rational_field(j.at("im")) : Rational(0);
  return {re, im};
}

json complex_json(const ComplexRational& z) { return {{"re", to_string(z.re())}, {"im", to_string(z.im())}}; }

std::size_t dim_field(const json& j) {
  const json& n = field(j, "n");
  if (!n.is_number_integer() || n.get<long>() < 1) throw InvalidInput("'n' must be a positive integer");
  return n.get<std::size_t>();
}

MultiIndex index_field(const json& j, std::size_t n) {
  if (!j.is_array() || j.size() != n) throw InvalidInput("multi-index must be an array of length n");
  std::vector<unsigned> e;
  for (const auto& x : j) {
    if (!x.is_number_integer() || x.get<long>() < 0) throw InvalidInput("multi-index entries must be non-negative integers");
    e.push_back(x.get<unsigned>());
  }
  return MultiIndex(std::move(e));
}

json index_json(const MultiIndex& m) { return m.entries(); }

QPoint qpoint_field(const json& j) {
  if (!j.is_array()) throw InvalidInput("point must be an array");
  QPoint p;
  for (const auto& c : j) p.push_back(complex_field(c));
  return p;
}

json holo_json(const HoloPolynomial& f) {
  json terms = json::array();
  for (const auto& [alpha, c] : f.terms()) {
    terms.push_back({{"alpha", index_json(alpha)}, {"re", to_string(c.re())}, {"im", to_string(c.im())}});
  }
  return terms;
}

HoloPolynomial holo_from_json(const json& j, std::size_t n, const QPoint& center) {
  HoloPolynomial f(n, center);
  if (!j.is_array()) throw InvalidInput("holomorphic polynomial must be an array of terms");
  for (const auto& t : j) f.add_term(index_field(field(t, "alpha"), n), complex_field(t));
  return f;
}

json cpoint_json(const CPoint& p) {
  json a = json::array();
  for (const auto& c : p) a.push_back({c.real(), c.imag()});
  return a;
}

CPoint cpoint_from_json(const json& j) {
  if (!j.is_array()) throw InvalidInput("point must be an array");
  CPoint p;
  for (const auto& c : j) {
    if (c.is_array() && c.size() == 2) {
      p.emplace_back(c[0].get<double>(), c[1].get<double>());
    } else {
      p.push_back(complex_field(c).to_complex());
    }
  }
  return p;
}

std::string format_double(double v) {
  std::ostringstream os;
  os << std::setprecision(17) << v;
  return os.str();
}

std::vector<unsigned> lambda_to_one_based(const std::vector<unsigned>& lambda) {
  std::vector<unsigned> out;
  for (unsigned l : lambda) out.push_back(l + 1);
  return out;
}

std::vector<unsigned> lambda_from_one_based(const json& j) {
  std::vector<unsigned> out;
  for (const auto& x : j) {
    if (!x.is_number_integer() || x.get<long>() < 1) throw InvalidInput("lambda entries are 1-based positive integers");
    out.push_back(x.get<unsigned>() - 1);
  }
  return out;
}

template <typename Point>
BasicGrid<Point> grid_header(const json& j) {
  BasicGrid<Point> g;
  g.d = field(j, "d").get<unsigned>();
  g.kappa = field(j, "kappa").get<unsigned>();
  g.lambda = lambda_from_one_based(field(j, "lambda"));
  return g;
}

}  // namespace

// ---------------------------------------------------------------------------

HermitianPolynomial polynomial_from_json(const std::string& text) {
  const json j = parse_json(text);
  return guarded("polynomial", [&] {
    const std::size_t n = dim_field(j);
    QPoint center(n, ComplexRational(0));
    if (j.contains("center")) {
      center = qpoint_field(j.at("center"));
      if (center.size() != n) throw DimensionMismatch("center must have n coordinates");
    }
    std::map<BiExponent, ComplexRational> given;
    for (const auto& t : field(j, "terms")) {
      BiExponent key{index_field(field(t, "alpha"), n), index_field(field(t, "beta"), n)};
      if (given.count(key)) {
        throw InvalidInput("duplicate term alpha=" + to_string(key.first) + " beta=" + to_string(key.second));
      }
      given.emplace(key, complex_field(t));
    }
    BiPolynomial poly(n, center);
    for (const auto& [key, c] : given) {
      const BiExponent mirror{key.second, key.first};
      if (key.first == key.second) {
        if (!c.is_real()) throw NotHermitian("diagonal term " + to_string(key.first) + " has a non-real coefficient");
        poly.add_term(key.first, key.second, c);
        continue;
      }
      auto it = given.find(mirror);
      if (it == given.end()) {
        poly.add_term(key.first, key.second, c);
        poly.add_term(mirror.first, mirror.second, c.conj());
      } else if (it->second != c.conj()) {
        throw NotHermitian("terms (" + to_string(key.first) + ", " + to_string(key.second) +
                           ") and their mirror are not conjugate");
      } else if (key < mirror) {
        poly.add_term(key.first, key.second, c);
        poly.add_term(mirror.first, mirror.second, it->second);
      }
    }
    return HermitianPolynomial(std::move(poly));
  });
}

std::string polynomial_to_json(const HermitianPolynomial& rho) {
  json center = json::array();
  for (const auto& c : rho.center()) center.push_back(complex_json(c));
  json terms = json::array();
  for (const auto& [key, c] : rho.terms()) {
    terms.push_back({{"alpha", index_json(key.first)},
                     {"beta", index_json(key.second)},
                     {"re", to_string(c.re())},
                     {"im", to_string(c.im())}});
  }
  return json{{"n", rho.dim()}, {"center", center}, {"terms", terms}}.dump(2);
}

MonomialIdeal ideal_from_json(const std::string& text) {
  const json j = parse_json(text);
  return guarded("ideal", [&] {
    const std::size_t n = dim_field(j);
    std::vector<MultiIndex> gens;
    for (const auto& g : field(j, "generators")) gens.push_back(index_field(g, n));
    return MonomialIdeal(n, std::move(gens));
  });
}

std::string ideal_to_json(const MonomialIdeal& ideal) {
  json gens = json::array();
  for (const auto& g : ideal.generators()) gens.push_back(index_json(g));
  return json{{"n", ideal.dim()}, {"generators", gens}}.dump(2);
}

CurveJet curve_from_json(const std::string& text, const QPoint& anchor) {
  const json j = parse_json(text);
  return guarded("curve", [&] {
    const json& comps = field(j, "components");
    if (!comps.is_array() || comps.size() != anchor.size()) {
      throw DimensionMismatch("curve needs one component per coordinate of the anchor");
    }
    std::vector<UnivariateSeries> components;
    unsigned max_k = 1;
    for (const auto& comp : comps) {
      UnivariateSeries s;
      for (const auto& term : comp) {
        const json& k = field(term, "k");
        if (!k.is_number_integer() || k.get<long>() < 1) throw InvalidInput("curve exponents k must be >= 1");
        const unsigned e = k.get<unsigned>();
        if (s.count(e)) throw InvalidInput("duplicate exponent in a curve component");
        const ComplexRational c = complex_field(term);
        if (!c.is_zero()) s.emplace(e, c);
        max_k = std::max(max_k, e);
      }
      components.push_back(std::move(s));
    }
    return CurveJet(anchor, std::move(components), max_k);
  });
}

ExactGrid exact_grid_from_json(const std::string& text) {
  const json j = parse_json(text);
  return guarded("grid", [&] {
    auto g = grid_header<QPoint>(j);
    for (const auto& p : field(j, "points")) g.points.push_back(qpoint_field(p));
    return g;
  });
}

FloatGrid float_grid_from_json(const std::string& text) {
  const json j = parse_json(text);
  return guarded("grid", [&] {
    auto g = grid_header<CPoint>(j);
    for (const auto& p : field(j, "points")) g.points.push_back(cpoint_from_json(p));
    return g;
  });
}

std::string grid_to_json(const ExactGrid& g) {
  json points = json::array();
  for (const auto& p : g.points) {
    json pj = json::array();
    for (const auto& c : p) pj.push_back(complex_json(c));
    points.push_back(pj);
  }
  return json{{"d", g.d}, {"kappa", g.kappa}, {"lambda", lambda_to_one_based(g.lambda)}, {"points", points}}.dump(2);
}

std::string grid_to_json(const FloatGrid& g) {
  json points = json::array();
  for (const auto& p : g.points) points.push_back(cpoint_json(p));
  return json{{"d", g.d}, {"kappa", g.kappa}, {"lambda", lambda_to_one_based(g.lambda)}, {"points", points}}.dump(2);
}

ExactPlane plane_from_json(const std::string& text) {
  const json j = parse_json(text);
  return guarded("plane", [&] {
    ExactPlane plane;
    plane.base = qpoint_field(field(j, "base"));
    for (const auto& dir : field(j, "directions")) {
      plane.directions.push_back(qpoint_field(dir));
      if (plane.directions.back().size() != plane.base.size()) throw DimensionMismatch("plane direction dimension");
    }
    return plane;
  });
}

std::string classification_to_json(const Classification& c) {
  json records = json::array();
  for (const auto& r : c.records) {
    json stages = json::array();
    for (const auto& s : r.stages) {
      stages.push_back({{"eps", s.eps},
                        {"best_residual", s.best_residual},
                        {"found", s.found},
                        {"lambda", lambda_to_one_based(s.lambda)},
                        {"exact", s.exact}});
    }
    records.push_back({{"kappa", r.kappa}, {"verdict", to_string(r.verdict)}, {"stages", stages}});
  }
  return json{{"point", cpoint_json(c.point)},
              {"verdict", to_string(c.verdict)},
              {"d", c.d},
              {"kappa", c.kappa},
              {"records", records}}
      .dump(2);
}

Classification classification_from_json(const std::string& text) {
  const json j = parse_json(text);
  return guarded("classification", [&] {
    Classification c;
    c.point = cpoint_from_json(field(j, "point"));
    c.verdict = verdict_from_string(field(j, "verdict").get<std::string>());
    c.d = field(j, "d").get<unsigned>();
    c.kappa = field(j, "kappa").get<unsigned>();
    for (const auto& rj : field(j, "records")) {
      KappaRecord r;
      r.kappa = field(rj, "kappa").get<unsigned>();
      r.verdict = verdict_from_string(field(rj, "verdict").get<std::string>());
      for (const auto& sj : field(rj, "stages")) {
        StageRecord s;
        s.eps = field(sj, "eps").get<double>();
        s.best_residual = field(sj, "best_residual").get<double>();
        s.found = field(sj, "found").get<bool>();
        s.lambda = lambda_from_one_based(field(sj, "lambda"));
        s.exact = field(sj, "exact").get<bool>();
        r.stages.push_back(std::move(s));
      }
      c.records.push_back(std::move(r));
    }
    return c;
  });
}

std::string decomposition_to_json(const HoloDecomposition& dec) {
  json center = json::array();
  for (const auto& c : dec.center) center.push_back(complex_json(c));
  json delta = json::array();
  for (const auto& d : dec.delta) delta.push_back(to_string(d));
  json components = json::array();
  for (const auto& [beta, fb] : dec.f) {
    components.push_back({{"beta", index_json(beta)}, {"f", holo_json(fb)}, {"g", holo_json(dec.g.at(beta))}});
  }
  return json{{"n", dec.center.size()}, {"center", center},  {"t", to_string(dec.t)},
              {"delta", delta},         {"h", holo_json(dec.h)}, {"components", components}}
      .dump(2);
}

HoloDecomposition decomposition_from_json(const std::string& text) {
  const json j = parse_json(text);
  return guarded("decomposition", [&] {
    HoloDecomposition dec;
    const std::size_t n = dim_field(j);
    dec.center = qpoint_field(field(j, "center"));
    if (dec.center.size() != n) throw DimensionMismatch("center must have n coordinates");
    dec.t = rational_field(field(j, "t"));
    for (const auto& d : field(j, "delta")) dec.delta.push_back(rational_field(d));
    dec.h = holo_from_json(field(j, "h"), n, dec.center);
    for (const auto& comp : field(j, "components")) {
      const MultiIndex beta = index_field(field(comp, "beta"), n);
      dec.f.emplace(beta, holo_from_json(field(comp, "f"), n, dec.center));
      dec.g.emplace(beta, holo_from_json(field(comp, "g"), n, dec.center));
    }
    return dec;
  });
}

// ---------------------------------------------------------------------------

ParsedPoint parse_point(const std::string& text, std::size_t n) {
  std::vector<std::string> cells;
  std::stringstream ss(text);
  std::string cell;
  while (std::getline(ss, cell, ',')) {
    const auto b = cell.find_first_not_of(" \t");
    const auto e = cell.find_last_not_of(" \t");
    cells.push_back(b == std::string::npos ? std::string() : cell.substr(b, e - b + 1));
  }
  if (cells.size() != 2 * n) {
    throw InvalidInput("point needs " + std::to_string(2 * n) + " comma-separated reals, got " +
                       std::to_string(cells.size()));
  }
  ParsedPoint out;
  out.is_exact = true;
  std::vector<Rational> exact(2 * n);
  std::vector<double> value(2 * n);
  for (std::size_t k = 0; k < cells.size(); ++k) {
    try {
      exact[k] = parse_rational(cells[k]);
      value[k] = exact[k].get_d();
    } catch (const InvalidInput&) {
      out.is_exact = false;
      try {
        std::size_t used = 0;
        value[k] = std::stod(cells[k], &used);
        if (used != cells[k].size() || !std::isfinite(value[k])) throw InvalidInput("");
      } catch (const std::exception&) {
        throw InvalidInput("bad point coordinate '" + cells[k] + "'");
      }
      exact[k] = rational_from_double(value[k]);
    }
  }
  for (std::size_t j = 0; j < n; ++j) {
    out.exact.emplace_back(exact[2 * j], exact[2 * j + 1]);
    out.value.emplace_back(value[2 * j], value[2 * j + 1]);
  }
  return out;
}

std::vector<ScanTableRow> scan_table(const std::vector<ScanRow>& rows, unsigned stages) {
  std::vector<ScanTableRow> out;
  for (const auto& row : rows) {
    const Classification& c = row.classification;
    ScanTableRow t;
    t.point = c.point;
    t.verdict = c.verdict;
    t.kappa = c.kappa;
    t.d = c.d;
    t.residuals.assign(stages, std::nullopt);
    if (!c.records.empty()) {
      const KappaRecord& r = c.deciding_record();
      if (!r.stages.empty()) t.lambda = lambda_to_one_based(r.stages.front().lambda);
      for (std::size_t s = 0; s < r.stages.size() && s < stages; ++s) t.residuals[s] = r.stages[s].best_residual;
    }
    out.push_back(std::move(t));
  }
  return out;
}

void write_scan_csv(std::ostream& out, const std::vector<ScanTableRow>& rows, std::size_t n, unsigned stages) {
  for (std::size_t j = 1; j <= n; ++j) out << "re" << j << ",im" << j << ",";
  out << "verdict,kappa,d,lambda";
  for (unsigned s = 0; s < stages; ++s) out << ",residual_s" << s;
  out << '\n';
  for (const auto& r : rows) {
    if (r.point.size() != n || r.residuals.size() != stages) throw DimensionMismatch("scan row has the wrong shape");
    for (const auto& c : r.point) out << format_double(c.real()) << ',' << format_double(c.imag()) << ',';
    out << to_string(r.verdict) << ',' << r.kappa << ',' << r.d << ',';
    for (std::size_t k = 0; k < r.lambda.size(); ++k) out << (k ? ";" : "") << r.lambda[k];
    for (const auto& res : r.residuals) {
      out << ',';
      if (res) out << format_double(*res);
    }
    out << '\n';
  }
}

std::vector<ScanTableRow> read_scan_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw InvalidInput("scan CSV is empty");
  auto split = [](const std::string& s) {
    std::vector<std::string> cells;
    std::size_t start = 0;
    while (true) {
      const auto comma = s.find(',', start);
      cells.push_back(s.substr(start, comma == std::string::npos ? std::string::npos : comma - start));
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    return cells;
  };
  if (!line.empty() && line.back() == '\r') line.pop_back();
  const auto header = split(line);
  std::size_t verdict_col = 0;
  while (verdict_col < header.size() && header[verdict_col] != "verdict") ++verdict_col;
  if (verdict_col == header.size() || verdict_col % 2 != 0 || header.size() < verdict_col + 4) {
    throw InvalidInput("scan CSV header is malformed");
  }
  const std::size_t n = verdict_col / 2;
  const std::size_t stages = header.size() - verdict_col - 4;

  auto number = [](const std::string& s) {
    try {
      std::size_t used = 0;
      const double v = std::stod(s, &used);
      if (used != s.size()) throw InvalidInput("");
      return v;
    } catch (const std::exception&) {
      throw InvalidInput("bad number '" + s + "' in scan CSV");
    }
  };
  std::vector<ScanTableRow> rows;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto cells = split(line);
    if (cells.size() != header.size()) throw InvalidInput("scan CSV row has the wrong number of columns");
    ScanTableRow r;
    for (std::size_t j = 0; j < n; ++j) r.point.emplace_back(number(cells[2 * j]), number(cells[2 * j + 1]));
    r.verdict = verdict_from_string(cells[verdict_col]);
    r.kappa = static_cast<unsigned>(number(cells[verdict_col + 1]));
    r.d = static_cast<unsigned>(number(cells[verdict_col + 2]));
    std::stringstream ls(cells[verdict_col + 3]);
    std::string item;
    while (std::getline(ls, item, ';')) r.lambda.push_back(static_cast<unsigned>(number(item)));
    for (std::size_t s = 0; s < stages; ++s) {
      const std::string& cell = cells[verdict_col + 4 + s];
      r.residuals.push_back(cell.empty() ? std::nullopt : std::optional<double>(number(cell)));
    }
    rows.push_back(std::move(r));
  }
  return rows;
}

std::string scan_to_json(const std::vector<ScanTableRow>& rows, std::size_t n, unsigned stages) {
  json out = json::array();
  for (const auto& r : rows) {
    if (r.point.size() != n || r.residuals.size() != stages) throw DimensionMismatch("scan row has the wrong shape");
    json residuals = json::array();
    for (const auto& res : r.residuals) residuals.push_back(res ? json(*res) : json(nullptr));
    out.push_back({{"point", cpoint_json(r.point)},
                   {"verdict", to_string(r.verdict)},
                   {"kappa", r.kappa},
                   {"d", r.d},
                   {"lambda", r.lambda},
                   {"residuals", residuals}});
  }
  return json{{"n", n}, {"stages", stages}, {"rows", out}}.dump(2);
}

std::vector<ScanTableRow> scan_from_json(const std::string& text) {
  const json j = parse_json(text);
  return guarded("scan", [&] {
    std::vector<ScanTableRow> rows;
    for (const auto& rj : field(j, "rows")) {
      ScanTableRow r;
      r.point = cpoint_from_json(field(rj, "point"));
      r.verdict = verdict_from_string(field(rj, "verdict").get<std::string>());
      r.kappa = field(rj, "kappa").get<unsigned>();
      r.d = field(rj, "d").get<unsigned>();
      r.lambda = field(rj, "lambda").get<std::vector<unsigned>>();
      for (const auto& res : field(rj, "residuals")) {
        r.residuals.push_back(res.is_null() ? std::nullopt : std::optional<double>(res.get<double>()));
      }
      rows.push_back(std::move(r));
    }
    return rows;
  });
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidInput("cannot open '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

}  // namespace germscan
