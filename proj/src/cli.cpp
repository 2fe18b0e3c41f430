#include "qcu/cli.hpp"

#include "qcu/classical.hpp"
#include "qcu/coupled_ho.hpp"
#include "qcu/delta_box.hpp"
#include "qcu/dimensions.hpp"
#include "qcu/errors.hpp"
#include "qcu/quantum1d.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <future>
#include <iterator>
#include <optional>
#include <set>
#include <sstream>

namespace qcu::cli {

using nlohmann::json;

namespace {

class IoError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

enum class Format { csv, json };

struct Artifact {
  std::string text;
  Format format = Format::json;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read '" + path + "'");
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write '" + path + "'");
  out << text;
  out.flush();
  if (!out) throw IoError("failed writing '" + path + "'");
}

json parse_json(const std::string& text, const std::string& field) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError(std::string("malformed JSON: ") + e.what(), field);
  }
}

// A flat JSON object of numeric parameters. Every key must be consumed.
class Params {
public:
  explicit Params(const std::string& text) {
    if (text.empty()) {
      doc_ = json::object();
      return;
    }
    doc_ = parse_json(text.front() == '@' ? read_file(text.substr(1)) : text, "params");
    if (!doc_.is_object()) throw InputError("--params must be a JSON object", "params");
  }

  double get(const std::string& key, std::optional<double> fallback = std::nullopt) {
    used_.insert(key);
    auto it = doc_.find(key);
    if (it == doc_.end()) {
      if (fallback) return *fallback;
      throw InputError("missing parameter '" + key + "'", key);
    }
    if (!it->is_number()) throw InputError("parameter '" + key + "' must be a number", key);
    const double v = it->get<double>();
    if (!std::isfinite(v)) throw InputError("parameter '" + key + "' must be finite", key);
    return v;
  }

  void finish() const {
    for (auto it = doc_.begin(); it != doc_.end(); ++it) {
      if (!used_.count(it.key())) throw InputError("unknown parameter '" + it.key() + "'", it.key());
    }
  }

private:
  json doc_;
  std::set<std::string> used_;
};

std::string csv(const std::vector<std::string>& header, const std::vector<std::vector<double>>& rows) {
  std::string s;
  for (std::size_t i = 0; i < header.size(); ++i) s += (i ? "," : "") + header[i];
  s += '\n';
  for (const auto& r : rows) {
    for (std::size_t i = 0; i < r.size(); ++i) s += (i ? "," : "") + format_number(r[i]);
    s += '\n';
  }
  return s;
}

json rows_json(const std::vector<std::string>& header, const std::vector<std::vector<double>>& rows) {
  json arr = json::array();
  for (const auto& r : rows) {
    json o = json::object();
    for (std::size_t i = 0; i < header.size(); ++i) o[header[i]] = r[i];
    arr.push_back(std::move(o));
  }
  return arr;
}

Artifact table(Format f, const std::vector<std::string>& header, const std::vector<std::vector<double>>& rows) {
  if (f == Format::csv) return {csv(header, rows), f};
  return {rows_json(header, rows).dump(2) + "\n", f};
}

Artifact document(Format f, const json& doc, const std::vector<std::string>& header,
                  const std::vector<std::vector<double>>& rows) {
  if (f == Format::csv) return {csv(header, rows), f};
  return {doc.dump(2) + "\n", f};
}

json moments_json(const MomentSet& m) {
  return {{"mean_x", m.mean_x},
          {"mean_x2", m.mean_x2},
          {"mean_p", m.mean_p},
          {"mean_p2", m.mean_p2},
          {"method", to_string(m.method)},
          {"error",
           {{"mean_x", m.error.mean_x},
            {"mean_x2", m.error.mean_x2},
            {"mean_p", m.error.mean_p},
            {"mean_p2", m.error.mean_p2}}}};
}

json product_json(const UncertaintyProduct& u) {
  return {{"particle1", u.particle1.value}, {"particle2", u.particle2.value},
          {"dx1", u.particle1.dx},          {"dp1", u.particle1.dp},
          {"dx2", u.particle2.dx},          {"dp2", u.particle2.dp},
          {"scales", {{"x", u.scales.x_scale}, {"p", u.scales.p_scale}}}};
}

std::vector<double> product_row(const UncertaintyProduct& u) {
  return {u.particle1.value, u.particle2.value, u.particle1.dx, u.particle1.dp, u.particle2.dx,
          u.particle2.dp,    u.scales.x_scale,  u.scales.p_scale};
}

const std::vector<std::string> kProductHeader{"particle1", "particle2", "dx1", "dp1", "dx2", "dp2", "x_scale", "p_scale"};

BoundState1D single_state(const std::string& system, Params& p) {
  if (system == "harmonic") {
    const double m = p.get("m");
    const double w = p.get("omega");
    const double a = p.get("A");
    p.finish();
    return harmonic_state(m, w, a);
  }
  if (system == "box") {
    const double m = p.get("m");
    const double len = p.get("L");
    const double e = p.get("E");
    p.finish();
    return box_state(m, len, e);
  }
  throw InputError("unknown system '" + system + "'", "system");
}

EqualMassSystem equal_system(Params& p) {
  EqualMassSystem s;
  s.mass = p.get("m");
  s.k = p.get("k");
  s.k_coupling = p.get("kc", 0.0);
  s.amp_c = p.get("Ac", 1.0);
  s.amp_r = p.get("Ar", 1.0);
  return s;
}

UnequalMassSystem unequal_system(Params& p) {
  UnequalMassSystem s;
  s.m1 = p.get("m1");
  s.m2 = p.get("m2");
  s.omega = p.get("omega");
  s.k = p.get("k", 0.0);
  s.amp_c = p.get("Ac", 1.0);
  s.amp_r = p.get("Ar", 1.0);
  return s;
}

Rational json_rational(const json& v, const std::string& field) {
  if (v.is_number_integer()) return Rational(v.get<std::int64_t>());
  if (v.is_string()) return Rational::parse(v.get<std::string>());
  throw InputError("exponents must be integers or \"p/q\" strings", field);
}

// ---------------------------------------------------------------- commands

struct Common {
  std::string out;
  std::uint64_t seed = 0;
  double tol = 1e-9;
  std::string format = "json";
  Format fmt() const { return format == "csv" ? Format::csv : Format::json; }
};

struct Options {
  std::string input;
  std::string system;
  std::string params;
  std::string mode;
  std::string method = "analytic";
  std::string kind = "both";
  std::string levels = "5,10,20";
  std::size_t grid = 0;
  std::size_t samples = 100000;
  std::size_t count = 10;
  std::size_t steps = 12;
  int dim = 1;
  std::int64_t n = 0;
  std::int64_t nc = 0;
  std::int64_t nr = 0;
  std::int64_t root_index = 1;
  double width = 0.0;
  double length = 1.0;
  double c = 0.0;
  double m1 = 1.0;
  double m2 = 1.0;
  double lambda = 0.0;
  double hbar = 1.0;
  std::optional<double> ec;
  std::optional<double> er;
};

Artifact cmd_pi_groups(const Options& o, const Common& g) {
  if (o.input.empty()) throw InputError("--input is required", "input");
  const json doc = parse_json(read_file(o.input), "input");
  if (!doc.is_array()) throw InputError("input must be a JSON array of quantities", "input");
  std::vector<Quantity> qs;
  for (std::size_t i = 0; i < doc.size(); ++i) {
    const json& q = doc[i];
    const std::string where = "quantities[" + std::to_string(i) + "]";
    if (!q.is_object() || !q.contains("name") || !q.contains("dims") || !q["name"].is_string() ||
        !q["dims"].is_array())
      throw InputError("each quantity needs a string name and a dims array", where);
    std::vector<Rational> exps;
    for (const auto& e : q["dims"]) exps.push_back(json_rational(e, where + ".dims"));
    if (exps.empty()) throw InputError("dims must not be empty", where + ".dims");
    qs.push_back({q["name"].get<std::string>(), DimensionVector(std::move(exps))});
  }
  const auto groups = pi_basis(qs);

  if (g.fmt() == Format::csv) {
    std::string s = "group,quantity,exponent\n";
    for (std::size_t i = 0; i < groups.size(); ++i) {
      for (const auto& [name, e] : groups[i].exponents) s += std::to_string(i) + "," + name + "," + e.str() + "\n";
    }
    return {s, Format::csv};
  }
  json out = json::object();
  json names = json::array();
  for (const auto& q : qs) names.push_back(q.name);
  out["quantities"] = names;
  out["rank"] = dimension_rank(qs);
  json arr = json::array();
  for (const auto& grp : groups) {
    json e = json::object();
    for (const auto& [name, x] : grp.exponents) e[name] = x.str();
    arr.push_back({{"exponents", e}, {"text", to_string(grp)}});
  }
  out["groups"] = arr;
  return {out.dump(2) + "\n", Format::json};
}

Artifact cmd_density(const Options& o, const Common& g) {
  Params p(o.params);
  if (o.dim == 2) {
    const QuantumModeState st{o.nc, o.nr, p.get("hbar", 1.0)};
    const std::size_t count = o.grid ? o.grid : 257;
    DensityPair d;
    if (o.system == "equal") {
      const EqualMassSystem s = equal_system(p);
      p.finish();
      validate(s);
      d = density_2d(s, st, count);
    } else if (o.system == "unequal") {
      const UnequalMassSystem s = unequal_system(p);
      p.finish();
      validate(s);
      d = density_2d(s, st, count);
    } else {
      throw InputError("--dim 2 needs --system equal or unequal", "system");
    }
    const Axis& ax = d.quantum.axes[0];
    std::vector<std::vector<double>> rows;
    rows.reserve(ax.count * ax.count);
    for (std::size_t i = 0; i < ax.count; ++i) {
      for (std::size_t j = 0; j < ax.count; ++j)
        rows.push_back({ax.node(i), ax.node(j), d.quantum.at(i, j), d.classical.at(i, j)});
    }
    return table(g.fmt(), {"x1", "x2", "rho_qm", "rho_cl"}, rows);
  }
  if (o.dim != 1) throw InputError("--dim must be 1 or 2", "dim");

  const std::size_t count = o.grid ? o.grid : 1025;
  if (o.system == "level") {
    const ModeParams mode{p.get("m", 1.0), p.get("omega", 1.0), p.get("hbar", 1.0)};
    p.finish();
    const Axis ax = default_axis_1d(o.n, mode, count);
    const DensityGrid q = density_1d(DensityKind::quantum, o.n, mode, ax);
    const DensityGrid c = density_1d(DensityKind::classical, o.n, mode, ax);
    std::vector<std::vector<double>> rows;
    for (std::size_t i = 0; i < ax.count; ++i) rows.push_back({ax.node(i), q.values[i], c.values[i]});
    return table(g.fmt(), {"x", "rho_qm", "rho_cl"}, rows);
  }
  const BoundState1D s = single_state(o.system, p);
  const DensityGrid d = classical_density(s, support_axis(s, count));
  std::vector<std::vector<double>> rows;
  for (std::size_t i = 0; i < d.size(); ++i) rows.push_back({d.axes[0].node(i), d.values[i]});
  return table(g.fmt(), {"x", "rho"}, rows);
}

Artifact cmd_moments(const Options& o, const Common& g) {
  Params p(o.params);
  const MomentMethod method = parse_moment_method(o.method);
  MomentSet m;
  ScaledPair scales;
  if (o.system == "level") {
    const double mass = p.get("m", 1.0);
    const double omega = p.get("omega", 1.0);
    const double hbar = p.get("hbar", 1.0);
    p.finish();
    if (method == MomentMethod::monte_carlo) throw UnsupportedError("oscillator levels have no sampled ensemble");
    m = method == MomentMethod::analytic ? ho_moments(o.n, mass, omega, hbar)
                                         : ho_moments_quadrature(o.n, mass, omega, hbar);
    const double amp = turning_point(o.n, mass, omega, hbar);
    scales = make_scaled_pair(amp, mass * omega * amp);
  } else {
    const BoundState1D s = single_state(o.system, p);
    switch (method) {
      case MomentMethod::analytic: m = analytic_moments(s); break;
      case MomentMethod::quadrature: m = quadrature_moments(s); break;
      case MomentMethod::monte_carlo: m = mc_moments(s, o.samples, g.seed); break;
    }
    scales = natural_scales(s);
  }
  const ParticleUncertainty u = scaled_uncertainty(m, scales);
  json doc = moments_json(m);
  doc["dx"] = u.dx;
  doc["dp"] = u.dp;
  doc["product"] = u.value;
  return document(g.fmt(), doc, {"mean_x", "mean_x2", "mean_p", "mean_p2", "dx", "dp", "product"},
                  {{m.mean_x, m.mean_x2, m.mean_p, m.mean_p2, u.dx, u.dp, u.value}});
}

Artifact cmd_uncertainty(const Options& o, const Common& g) {
  Params p(o.params);
  if (o.mode != "classical" && o.mode != "quantum") throw InputError("--mode must be classical or quantum", "mode");
  const bool quantum = o.mode == "quantum";
  UncertaintyProduct u;
  bool equal = false;
  if (o.system == "equal") {
    const EqualMassSystem s = equal_system(p);
    const double hbar = p.get("hbar", 1.0);
    p.finish();
    u = quantum ? quantum_product_equal(s, {o.nc, o.nr, hbar}) : classical_product_equal(s);
    equal = true;
  } else if (o.system == "unequal") {
    const UnequalMassSystem s = unequal_system(p);
    const double hbar = p.get("hbar", 1.0);
    p.finish();
    u = quantum ? quantum_product_unequal(s, {o.nc, o.nr, hbar}) : classical_product_unequal(s);
  } else {
    throw InputError("--system must be equal or unequal", "system");
  }
  json doc = product_json(u);
  if (equal) doc["value"] = u.particle1.value;
  return document(g.fmt(), doc, kProductHeader, {product_row(u)});
}

Artifact cmd_roots(const Options& o, const Common& g) {
  if (o.count < 1) throw InputError("--count must be at least 1", "count");
  if (o.c < 0.0) throw UnsupportedError("negative coupling (attractive contact) is not modelled");
  const auto roots = solve_wavenumbers(o.length, o.c, o.count);
  std::vector<std::vector<double>> rows;
  for (const auto& r : roots) rows.push_back({static_cast<double>(r.index), r.k, r.residual});
  return table(g.fmt(), {"index", "k", "residual"}, rows);
}

Artifact cmd_box(const Options& o, const Common& g) {
  const DeltaBoxSystem sys{o.m1, o.m2, o.length, o.lambda, o.hbar};
  validate(sys);
  if (o.mode == "classical" || o.mode == "quantum") {
    const RelativeModeRoot root = solve_wavenumber(sys.length, sys.coupling(), o.root_index);
    const std::int64_t nc = o.nc > 0 ? o.nc : 1;
    UncertaintyProduct u;
    EnergyPair e;
    if (o.mode == "quantum") {
      e = quantum_energies(sys, nc, root.k);
      u = quantum_box_products(sys, nc, root);
    } else {
      e = quantum_energies(sys, nc, root.k);
      if (o.ec) e.e_c = *o.ec;
      if (o.er) e.e_r = *o.er;
      u = classical_box_products(sys, e);
    }
    json doc = product_json(u);
    doc["energies"] = {{"Ec", e.e_c}, {"Er", e.e_r}};
    doc["k"] = root.k;
    return document(g.fmt(), doc, kProductHeader, {product_row(u)});
  }
  if (o.mode != "limit") throw InputError("--mode must be classical, quantum or limit", "mode");
  if (o.steps < 2) throw InputError("--steps must be at least 2", "steps");
  const std::int64_t nc_end = o.nc > 0 ? o.nc : 2000;
  const std::int64_t j_end = o.root_index > 1 ? o.root_index : nc_end;
  std::vector<std::pair<std::int64_t, std::int64_t>> seq;
  for (std::size_t i = 0; i < o.steps; ++i) {
    const double t = static_cast<double>(i) / static_cast<double>(o.steps - 1);
    const auto nc = std::max<std::int64_t>(1, std::llround(std::pow(static_cast<double>(nc_end), t)));
    const auto j = std::max<std::int64_t>(1, std::llround(std::pow(static_cast<double>(j_end), t)));
    if (seq.empty() || (nc >= seq.back().first && j >= seq.back().second && std::make_pair(nc, j) != seq.back()))
      seq.emplace_back(nc, j);
  }
  const LimitCheck lc = classical_limit_check(sys, seq);
  std::vector<std::vector<double>> rows;
  json arr = json::array();
  for (const auto& r : lc.rows) {
    rows.push_back({static_cast<double>(r.n_c), static_cast<double>(r.root_index), r.k, r.energy_ratio,
                    r.quantum.particle1.value, r.classical.particle1.value, r.quantum.particle2.value,
                    r.classical.particle2.value, r.gap});
    arr.push_back({{"n_c", r.n_c},
                   {"root_index", r.root_index},
                   {"k", r.k},
                   {"energy_ratio", r.energy_ratio},
                   {"quantum", {r.quantum.particle1.value, r.quantum.particle2.value}},
                   {"classical", {r.classical.particle1.value, r.classical.particle2.value}},
                   {"gap", r.gap}});
  }
  json doc = {{"rows", arr},
              {"monotone_after_third", lc.monotone_after_third},
              {"final_gap", lc.final_gap},
              {"final_in_classical_regime", lc.final_in_classical_regime},
              {"converged", lc.converged()}};
  return document(g.fmt(), doc,
                  {"n_c", "root_index", "k", "energy_ratio", "quantum1", "classical1", "quantum2", "classical2", "gap"},
                  rows);
}

std::vector<std::int64_t> parse_levels(const std::string& text) {
  std::vector<std::int64_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      const long long v = std::stoll(item, &used);
      if (used != item.size() || v < 0) throw std::invalid_argument(item);
      out.push_back(v);
    } catch (const std::logic_error&) {
      throw InputError("--levels must be a comma-separated list of non-negative integers", "levels");
    }
  }
  if (out.empty()) throw InputError("--levels is empty", "levels");
  return out;
}

Artifact cmd_converge(const Options& o, const Common& g) {
  Params p(o.params);
  const auto levels = parse_levels(o.levels);
  std::vector<ConvergenceRow> rows(levels.size());
  if (o.dim == 2) {
    if (o.system != "equal" && !o.system.empty()) throw InputError("--dim 2 convergence uses --system equal", "system");
    EqualMassSystem s;
    s.mass = p.get("m", 1.0);
    s.k = p.get("k", 1.0);
    s.k_coupling = p.get("kc", 0.0);
    const double hbar = p.get("hbar", 1.0);
    p.finish();
    const std::size_t count = o.grid ? o.grid : 129;
    const double x0 = std::sqrt(hbar / (s.mass * s.omega_c()));
    const double w = o.width > 0.0 ? o.width : x0;
    std::vector<std::future<double>> tasks;
    for (std::int64_t n : levels) {
      tasks.push_back(std::async(std::launch::async, [=] {
        const DensityPair d = density_2d(s, {n, n, hbar}, count);
        return smear_and_compare(d.quantum, d.classical, w);
      }));
    }
    for (std::size_t i = 0; i < levels.size(); ++i) rows[i] = {levels[i], w, tasks[i].get()};
  } else {
    const ModeParams mode{p.get("m", 1.0), p.get("omega", 1.0), p.get("hbar", 1.0)};
    p.finish();
    const std::size_t count = o.grid ? o.grid : 1025;
    std::vector<std::future<std::vector<ConvergenceRow>>> tasks;
    for (std::int64_t n : levels)
      tasks.push_back(std::async(std::launch::async, [=] { return converge({n}, mode, o.width, count); }));
    for (std::size_t i = 0; i < levels.size(); ++i) rows[i] = tasks[i].get().front();
  }
  std::vector<std::vector<double>> table_rows;
  for (const auto& r : rows) table_rows.push_back({static_cast<double>(r.n), r.smear_width, r.l1_distance});
  return table(g.fmt(), {"n", "smear_width", "l1_distance"}, table_rows);
}

// ---------------------------------------------------------------- verify

struct Comparison {
  std::size_t compared = 0;
  double max_diff = 0.0;
  std::vector<std::string> problems;
};

void compare_number(double a, double b, double tol, const std::string& where, Comparison& c) {
  ++c.compared;
  const double diff = std::abs(a - b);
  const double scale = std::max({1.0, std::abs(a), std::abs(b)});
  c.max_diff = std::max(c.max_diff, diff / scale);
  if (!(diff <= tol * scale)) c.problems.push_back(where + ": " + format_number(a) + " vs " + format_number(b));
}

void compare_json(const json& a, const json& b, double tol, const std::string& where, Comparison& c) {
  if (a.is_number() && b.is_number()) return compare_number(a.get<double>(), b.get<double>(), tol, where, c);
  if (a.type() != b.type()) {
    c.problems.push_back(where + ": type differs");
    return;
  }
  if (a.is_array()) {
    if (a.size() != b.size()) {
      c.problems.push_back(where + ": length differs");
      return;
    }
    for (std::size_t i = 0; i < a.size(); ++i) compare_json(a[i], b[i], tol, where + "[" + std::to_string(i) + "]", c);
  } else if (a.is_object()) {
    if (a.size() != b.size()) c.problems.push_back(where + ": key set differs");
    for (auto it = a.begin(); it != a.end(); ++it) {
      if (!b.contains(it.key())) {
        c.problems.push_back(where + "." + it.key() + ": missing");
        continue;
      }
      compare_json(it.value(), b[it.key()], tol, where + "." + it.key(), c);
    }
  } else if (a != b) {
    c.problems.push_back(where + ": value differs");
  }
}

std::vector<std::vector<std::string>> split_csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::stringstream ss(text);
  std::string line;
  while (std::getline(ss, line)) {
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::stringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    rows.push_back(std::move(cells));
  }
  return rows;
}

std::optional<double> as_number(const std::string& s) {
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size()) return std::nullopt;
  return v;
}

void compare_csv(const std::string& a, const std::string& b, double tol, Comparison& c) {
  const auto ra = split_csv(a);
  const auto rb = split_csv(b);
  if (ra.size() != rb.size()) {
    c.problems.push_back("row count differs");
    return;
  }
  for (std::size_t i = 0; i < ra.size(); ++i) {
    if (ra[i].size() != rb[i].size()) {
      c.problems.push_back("row " + std::to_string(i) + ": column count differs");
      continue;
    }
    for (std::size_t j = 0; j < ra[i].size(); ++j) {
      const std::string where = "row " + std::to_string(i) + " col " + std::to_string(j);
      const auto x = as_number(ra[i][j]);
      const auto y = as_number(rb[i][j]);
      if (x && y)
        compare_number(*x, *y, tol, where, c);
      else if (ra[i][j] != rb[i][j])
        c.problems.push_back(where + ": '" + ra[i][j] + "' vs '" + rb[i][j] + "'");
    }
  }
}

std::string meta_path(const std::string& out) { return out + ".meta.json"; }

Artifact produce(const std::vector<std::string>& args, Common& common);

Artifact cmd_verify(const Options& o, const Common& g, int& status) {
  if (o.input.empty()) throw InputError("--input is required", "input");
  const std::string stored = read_file(o.input);
  const json meta = parse_json(read_file(meta_path(o.input)), "meta");
  if (!meta.contains("args") || !meta["args"].is_array()) throw InputError("provenance file has no args", "meta");
  const auto args = meta["args"].get<std::vector<std::string>>();
  if (!args.empty() && args.front() == "verify") throw InputError("cannot verify a verify report", "input");

  Common inner;
  const Artifact fresh = produce(args, inner);
  const double tol = g.tol;
  Comparison cmp;
  if (fresh.format == Format::csv) {
    compare_csv(fresh.text, stored, tol, cmp);
  } else {
    compare_json(parse_json(fresh.text, "recomputed"), parse_json(stored, "input"), tol, "$", cmp);
  }
  status = cmp.problems.empty() ? kOk : kMismatch;
  json report = {{"input", o.input},
                 {"command", args},
                 {"compared", cmp.compared},
                 {"max_relative_diff", cmp.max_diff},
                 {"tolerance", tol},
                 {"ok", cmp.problems.empty()}};
  if (!cmp.problems.empty()) {
    json p = json::array();
    for (std::size_t i = 0; i < std::min<std::size_t>(cmp.problems.size(), 20); ++i) p.push_back(cmp.problems[i]);
    report["problems"] = p;
  }
  return {report.dump(2) + "\n", Format::json};
}

// ---------------------------------------------------------------- parsing

struct Parsed {
  std::string command;
  Options opts;
};

void add_common(CLI::App& app, Common& c) {
  app.add_option("--out", c.out, "Output file (default: stdout)");
  app.add_option("--seed", c.seed, "Seed for Monte Carlo sampling");
  app.add_option("--tol", c.tol, "Relative tolerance for verify")->check(CLI::PositiveNumber);
  app.add_option("--format", c.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
}

// Parses args and runs a producing subcommand. `status` receives the verify
// outcome when the command is verify.
Artifact dispatch(const std::vector<std::string>& args, Common& common, int* status, std::string* command) {
  CLI::App app{"Quantum-classical correspondence toolkit", "qcu"};
  app.require_subcommand(1);
  app.fallthrough();
  add_common(app, common);
  Options o;

  auto* pi = app.add_subcommand("pi-groups", "Dimensionless groups of a quantity list");
  pi->add_option("--input", o.input, "JSON array of {name, dims}")->required();

  auto* den = app.add_subcommand("density", "Classical and quantum position densities");
  den->add_option("--system", o.system, "harmonic|box|level (1D) or equal|unequal (2D)")->required();
  den->add_option("--params", o.params, "JSON object or @file");
  den->add_option("--grid", o.grid, "Cells per axis");
  den->add_option("--dim", o.dim, "1 or 2");
  den->add_option("--n", o.n, "Oscillator level for --system level");
  den->add_option("--nc", o.nc, "Centre-of-mass level");
  den->add_option("--nr", o.nr, "Relative level");

  auto* mom = app.add_subcommand("moments", "Ensemble or eigenstate moments");
  mom->add_option("--system", o.system, "harmonic|box|level")->required();
  mom->add_option("--params", o.params, "JSON object or @file");
  mom->add_option("--method", o.method, "analytic|quadrature|mc");
  mom->add_option("--samples", o.samples, "Monte Carlo sample count");
  mom->add_option("--n", o.n, "Oscillator level for --system level");

  auto* unc = app.add_subcommand("uncertainty", "Coupled-oscillator uncertainty products");
  unc->add_option("--system", o.system, "equal|unequal")->required();
  unc->add_option("--params", o.params, "JSON object or @file");
  unc->add_option("--mode", o.mode, "classical|quantum")->required();
  unc->add_option("--nc", o.nc, "Centre-of-mass level");
  unc->add_option("--nr", o.nr, "Relative level");

  auto* roots = app.add_subcommand("roots", "Relative-mode wavenumbers of the delta-coupled box");
  roots->add_option("--L", o.length, "Box length")->required();
  roots->add_option("--c", o.c, "Coupling mu lambda / hbar^2")->required();
  roots->add_option("--count", o.count, "Number of roots");

  auto* box = app.add_subcommand("box-uncertainty", "Delta-coupled box uncertainty products");
  box->add_option("--m1", o.m1);
  box->add_option("--m2", o.m2);
  box->add_option("--L", o.length);
  box->add_option("--lambda", o.lambda);
  box->add_option("--hbar", o.hbar);
  box->add_option("--nc", o.nc, "Centre-of-mass level (final level in limit mode)");
  box->add_option("--root-index", o.root_index, "Relative root index (final index in limit mode)");
  box->add_option("--mode", o.mode, "classical|quantum|limit")->required();
  box->add_option("--Ec", o.ec, "Classical centre-of-mass energy");
  box->add_option("--Er", o.er, "Classical relative energy");
  box->add_option("--steps", o.steps, "Points in the limit ladder");

  auto* conv = app.add_subcommand("converge", "Smeared L1 distance between quantum and classical densities");
  conv->add_option("--levels", o.levels, "Comma-separated levels");
  conv->add_option("--params", o.params, "JSON object or @file");
  conv->add_option("--width", o.width, "Smear width (default: oscillator length)");
  conv->add_option("--grid", o.grid, "Cells per axis");
  conv->add_option("--dim", o.dim, "1 or 2");
  conv->add_option("--system", o.system, "equal (2D only)");

  auto* ver = app.add_subcommand("verify", "Recompute an artifact and compare");
  ver->add_option("--input", o.input, "Artifact written with --out")->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    std::ostringstream help, ignored;
    app.exit(e, help, ignored);
    if (command) *command = "help";
    return {help.str(), Format::json};
  }

  const std::string name = app.get_subcommands().front()->get_name();
  if (command) *command = name;
  if (name == "pi-groups") return cmd_pi_groups(o, common);
  if (name == "density") return cmd_density(o, common);
  if (name == "moments") return cmd_moments(o, common);
  if (name == "uncertainty") return cmd_uncertainty(o, common);
  if (name == "roots") return cmd_roots(o, common);
  if (name == "box-uncertainty") return cmd_box(o, common);
  if (name == "converge") return cmd_converge(o, common);
  int st = kOk;
  Artifact a = cmd_verify(o, common, st);
  if (status) *status = st;
  return a;
}

Artifact produce(const std::vector<std::string>& args, Common& common) {
  return dispatch(args, common, nullptr, nullptr);
}

json error_json(const std::string& kind, const std::string& message, const std::string& field = {}) {
  json e = {{"kind", kind}, {"message", message}};
  if (!field.empty()) e["field"] = field;
  return {{"error", e}};
}

// Arguments minus --out, for provenance.
std::vector<std::string> strip_out(const std::vector<std::string>& args) {
  std::vector<std::string> kept;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--out") {
      ++i;
      continue;
    }
    if (args[i].rfind("--out=", 0) == 0) continue;
    kept.push_back(args[i]);
  }
  return kept;
}

}  // namespace

std::string format_number(double v) {
  if (v == 0.0) return "0";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Common common;
  try {
    int status = kOk;
    std::string command;
    const Artifact a = dispatch(args, common, &status, &command);
    if (common.out.empty() || command == "help") {
      out << a.text;
    } else {
      write_file(common.out, a.text);
      if (command != "verify") {
        const json meta = {{"tool", "qcu"}, {"args", strip_out(args)},
                           {"format", a.format == Format::csv ? "csv" : "json"}};
        write_file(meta_path(common.out), meta.dump(2) + "\n");
      }
    }
    return status;
  } catch (const CLI::ParseError& e) {
    err << error_json("invalid_parameter", e.what()).dump() << "\n";
    return kInvalidInput;
  } catch (const IoError& e) {
    err << error_json("io", e.what()).dump() << "\n";
    return kIoFailure;
  } catch (const InputError& e) {
    err << error_json("invalid_parameter", e.what(), e.field()).dump() << "\n";
    return kInvalidInput;
  } catch (const DomainError& e) {
    err << error_json("domain", e.what()).dump() << "\n";
    return kInvalidInput;
  } catch (const ScalingError& e) {
    err << error_json("scaling", e.what()).dump() << "\n";
    return kInvalidInput;
  } catch (const UnsupportedError& e) {
    err << error_json("unsupported", e.what()).dump() << "\n";
    return kInvalidInput;
  } catch (const json::exception& e) {
    err << error_json("invalid_parameter", e.what()).dump() << "\n";
    return kInvalidInput;
  }
}

}  // namespace qcu::cli
