#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>

#include "hyperslice/certificates.hpp"
#include "hyperslice/errors.hpp"
#include "hyperslice/integral.hpp"
#include "hyperslice/maximizer.hpp"
#include "hyperslice/montecarlo.hpp"
#include "hyperslice/vertex_sum.hpp"

namespace hyperslice::cli {

namespace {

using nlohmann::ordered_json;

const std::set<std::string> kBooleanFlags = {"diagonal", "rigorous"};

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::capacity:
    case ErrorKind::convergence:
    case ErrorKind::cell_crossing:
    case ErrorKind::internal:
      return numerical;
    default:
      return usage;
  }
}

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

bool mentions(const std::vector<std::string>& args, const std::string& key) {
  const std::string flag = "--" + key;
  return std::any_of(args.begin(), args.end(), [&](const std::string& a) {
    return a == flag || a.rfind(flag + "=", 0) == 0;
  });
}

// Appends key=value lines from the --config file as flags, skipping any key
// already given on the command line.
std::vector<std::string> merge_config(std::vector<std::string> args) {
  std::optional<std::string> path;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) {
      path = args[i + 1];
      args.erase(args.begin() + static_cast<std::ptrdiff_t>(i),
                 args.begin() + static_cast<std::ptrdiff_t>(i + 2));
      break;
    }
    if (args[i].rfind("--config=", 0) == 0) {
      path = args[i].substr(9);
      args.erase(args.begin() + static_cast<std::ptrdiff_t>(i));
      break;
    }
  }
  if (!path) return args;

  std::ifstream in(*path);
  if (!in) throw UsageError("cannot read config file " + *path);
  std::vector<std::string> extra;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw UsageError(*path + ":" + std::to_string(lineno) + ": expected key=value");
    }
    std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.rfind("--", 0) == 0) key = key.substr(2);
    if (mentions(args, key)) continue;
    if (kBooleanFlags.count(key)) {
      if (value == "true" || value == "1" || value == "yes") extra.push_back("--" + key);
      continue;
    }
    extra.push_back("--" + key);
    extra.push_back(value);
  }
  args.insert(args.end(), extra.begin(), extra.end());
  return args;
}

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != item.size()) {
      throw UsageError("not a number in list: '" + item + "'");
    }
    out.push_back(v);
  }
  if (out.empty()) throw UsageError("empty coordinate list");
  return out;
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, sep)) parts.push_back(trim(item));
  if (!text.empty() && text.back() == sep) parts.emplace_back();
  return parts;
}

int parse_int(const std::string& s, const std::string& what) {
  std::size_t used = 0;
  int v = 0;
  try {
    v = std::stoi(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != s.size()) throw UsageError("bad integer in " + what + ": '" + s + "'");
  return v;
}

double parse_double(const std::string& s, const std::string& what) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != s.size() || !std::isfinite(v)) {
    throw UsageError("bad number in " + what + ": '" + s + "'");
  }
  return v;
}

ordered_json cut_json(const CutClassification& cut) {
  return {{"count", cut.count_below}, {"kind", std::string(to_string(cut.kind))}};
}

// Per-command option storage.
struct VolumeArgs {
  int d = 0;
  std::string a;
  bool diagonal = false;
  double t = 0.0;
  std::string method = "sum";
  std::uint64_t seed = 0;
  double tol = 1e-9;
  std::int64_t samples = 1'000'000;
};

struct MaximizeArgs {
  int d = 0;
  double t = 0.0;
  int starts = 64;
  std::uint64_t seed = 0;
};

struct CertifyArgs {
  std::string d_range;
  int grid = 10000;
  bool rigorous = false;
};

struct ScanArgs {
  int d = 0;
  std::string t_range;
  std::string mode = "diagonal";
  std::string a;
};

SectionSpec volume_spec(const VolumeArgs& v, bool d_given) {
  if (v.diagonal == !v.a.empty()) {
    throw UsageError("give exactly one of --a and --diagonal");
  }
  if (v.diagonal) {
    if (!d_given) throw UsageError("--diagonal needs --d");
    if (v.d < 2) throw UsageError("--d must be at least 2");
    return SectionSpec::diagonal(v.d, v.t);
  }
  const std::vector<double> a = parse_list(v.a);
  if (d_given && static_cast<int>(a.size()) != v.d) {
    throw UsageError("--a has " + std::to_string(a.size()) + " coordinates but --d is " +
                     std::to_string(v.d));
  }
  return make_section_spec(a, v.t);
}

void cmd_volume(const VolumeArgs& v, bool d_given, std::ostream& out) {
  const SectionSpec spec = volume_spec(v, d_given);
  ordered_json results = ordered_json::array();
  const bool all = v.method == "all";
  if (all || v.method == "sum") {
    const VolumeResult r = section_volume_vertex_sum(spec);
    results.push_back({{"method", "vertex_sum"}, {"value", r.value}, {"err", r.err},
                       {"cut", cut_json(r.cut)}});
  }
  if (all || v.method == "integral") {
    const VolumeResult r = section_volume_integral(spec, v.tol);
    results.push_back({{"method", "integral"}, {"value", r.value}, {"err", r.err},
                       {"cut", cut_json(r.cut)}});
  }
  if (all || v.method == "mc") {
    if (v.samples < 1) throw UsageError("--samples must be positive");
    const McEstimate m = mc_section_volume(spec, v.samples, v.seed);
    const CutClassification cut =
        spec.d() <= EnumerationLimits{}.max_dimension ? classify_cut(spec)
                                                      : CutClassification{-1, CutKind::other, {}};
    results.push_back({{"method", "monte_carlo"}, {"value", m.estimate},
                       {"err", m.std_error}, {"cut", cut_json(cut)}});
  }
  ordered_json doc;
  doc["spec"] = {{"d", spec.d()}, {"a", spec.a()}, {"t", spec.t()}, {"b", spec.b()}};
  doc["results"] = std::move(results);
  out << doc.dump(2) << '\n';
}

void cmd_maximize(const MaximizeArgs& m, std::ostream& out) {
  MaximizeOptions options;
  options.starts = m.starts;
  options.seed = m.seed;
  const OptimizerReport r = maximize_section_volume(m.d, m.t, options);
  ordered_json doc;
  doc["d"] = r.d;
  doc["t"] = r.t;
  doc["best_a"] = r.best_a;
  doc["best_V"] = r.best_V;
  doc["closed_form_V"] = r.closed_form_V;
  doc["angle_to_diagonal"] = r.angle_to_diagonal;
  doc["lagrange_lambda"] = r.lagrange_lambda;
  doc["residual_norm"] = r.residual_norm;
  doc["starts"] = r.starts;
  doc["converged_starts"] = r.converged_starts;
  doc["degenerate"] = r.degenerate;
  out << doc.dump(2) << '\n';
}

std::pair<int, int> parse_d_range(const std::string& text) {
  const auto parts = split(text, ':');
  if (parts.size() != 2) throw UsageError("--d-range must be lo:hi");
  const int lo = parse_int(parts[0], "--d-range");
  const int hi = parse_int(parts[1], "--d-range");
  if (lo < 2 || hi < lo) throw UsageError("--d-range needs 2 <= lo <= hi");
  return {lo, hi};
}

int cmd_certify(const CertifyArgs& c, std::ostream& out) {
  const auto [lo, hi] = parse_d_range(c.d_range);
  if (c.grid < 2) throw UsageError("--grid must be at least 2");
  const std::vector<double> grid = default_y_grid(c.grid);
  bool failed = false;

  ordered_json reports = ordered_json::array();
  for (int d = lo; d <= hi; ++d) {
    const CertificateReport r = sign_certificates(d, grid);
    ordered_json entry;
    entry["d"] = d;
    entry["grid_size"] = r.grid_size;
    entry["max_alpha"] = r.min_margin_alpha;
    entry["max_2alpha_plus_beta"] = r.min_margin_2ab;
    entry["max_alpha_plus_beta_plus_gamma"] = r.min_margin_abc;
    entry["roots_excluded"] = r.roots_excluded;
    entry["grid_points_with_root"] = r.grid_points_with_root;
    entry["max_root_deviation_from_y_plus_1"] = r.max_root_deviation_from_y_plus_1;
    entry["alpha_asserted"] = r.alpha_asserted;
    entry["pair_asserted"] = r.pair_asserted;

    ordered_json notes = ordered_json::array();
    bool ok = true;
    if (r.alpha_asserted && !(r.min_margin_alpha < 0.0)) ok = false;
    if (r.pair_asserted && !r.roots_excluded) ok = false;
    if (!r.alpha_asserted) notes.push_back("alpha < 0: out of hypothesis (d < 4)");
    if (!r.pair_asserted) {
      notes.push_back("2alpha+beta < 0 and alpha+beta+gamma < 0: out of hypothesis (d < 6)");
    }
    if (r.grid_points_with_root > 0 && !r.pair_asserted) {
      notes.push_back("informational: quadratic has a root in [1, inf) at " +
                      std::to_string(r.grid_points_with_root) + " grid points");
    }
    if (c.rigorous) {
      const RigorousCertificate rc = certify_rigorous(d);
      entry["rigorous"] = {{"alpha", rc.alpha},
                           {"two_alpha_beta", rc.two_alpha_beta},
                           {"alpha_beta_gamma", rc.alpha_beta_gamma},
                           {"cells", rc.cells}};
      if (r.alpha_asserted && !rc.alpha) ok = false;
      if (r.pair_asserted && !rc.certified()) ok = false;
    }
    entry["ok"] = ok;
    entry["notes"] = std::move(notes);
    failed = failed || !ok;
    reports.push_back(std::move(entry));
  }

  ordered_json decay = ordered_json::array();
  constexpr int kDecayPoints = 100;
  for (int d = std::max(lo, 5); d <= hi; ++d) {
    const double t_lo = 0.5 * std::sqrt(static_cast<double>(d - 2));
    const double t_hi = 0.5 * std::sqrt(static_cast<double>(d - 1));
    bool holds = true;
    double min_gap = std::numeric_limits<double>::infinity();
    for (int i = 0; i < kDecayPoints; ++i) {
      const double t = t_lo + (t_hi - t_lo) * i / (kDecayPoints - 1);
      const DecayCheck k = decay_inequality_check(d, t);
      holds = holds && k.holds;
      min_gap = std::min(min_gap, k.lhs - k.rhs);
    }
    failed = failed || !holds;
    decay.push_back({{"d", d}, {"points", kDecayPoints}, {"holds", holds},
                     {"min_lhs_minus_rhs", min_gap}});
  }

  ordered_json doc;
  doc["grid"] = c.grid;
  doc["rigorous"] = c.rigorous;
  doc["reports"] = std::move(reports);
  doc["decay"] = std::move(decay);
  out << doc.dump(2) << '\n';
  return failed ? certificate : ok;
}

std::vector<double> parse_t_range(const std::string& text) {
  const auto parts = split(text, ':');
  if (parts.size() != 3) throw UsageError("--t-range must be lo:hi:n");
  const double lo = parse_double(parts[0], "--t-range");
  const double hi = parse_double(parts[1], "--t-range");
  const int n = parse_int(parts[2], "--t-range");
  if (n < 1 || lo < 0.0 || hi < lo || (n == 1 && hi != lo)) {
    throw UsageError("--t-range needs 0 <= lo <= hi and n >= 1 (n = 1 only when lo = hi)");
  }
  std::vector<double> ts;
  for (int i = 0; i < n; ++i) ts.push_back(n == 1 ? lo : lo + (hi - lo) * i / (n - 1));
  return ts;
}

std::string format_g(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

void cmd_scan(const ScanArgs& s, std::ostream& out) {
  if (s.d < 2) throw UsageError("--d must be at least 2");
  if (s.mode != "diagonal" && s.mode != "maximize" && s.mode != "classify") {
    throw UsageError("--mode must be diagonal, maximize or classify");
  }
  const std::vector<double> ts = parse_t_range(s.t_range);
  std::vector<double> direction = diagonal_direction(s.d);
  if (!s.a.empty()) {
    if (s.mode != "classify") throw UsageError("--a only applies to --mode classify");
    direction = parse_list(s.a);
    if (static_cast<int>(direction.size()) != s.d) {
      throw UsageError("--a must have d coordinates");
    }
  }
  if (s.mode == "maximize" && ts.front() <= 0.5) {
    throw UsageError("maximize mode needs every t > 1/2");
  }

  std::ostringstream csv;
  csv << "d,t,V_closed,V_best,angle,count_below,kind\n";
  const std::vector<double> diag = diagonal_direction(s.d);
  for (double t : ts) {
    std::vector<double> a = direction;
    double v_best = 0.0;
    double angle = 0.0;
    if (s.mode == "maximize") {
      const OptimizerReport r = maximize_section_volume(s.d, t);
      a = r.best_a;
      v_best = r.best_V;
      angle = r.angle_to_diagonal;
    } else {
      v_best = section_volume_vertex_sum(make_section_spec(a, t)).value;
      angle = angle_between(a, diag);
    }
    const CutClassification cut = classify_cut(make_section_spec(a, t));
    csv << s.d << ',' << format_g(t) << ',' << format_g(closed_form_max(s.d, t)) << ','
        << format_g(v_best) << ',' << format_g(angle) << ',' << cut.count_below << ','
        << to_string(cut.kind) << '\n';
  }
  out << csv.str();
}

}  // namespace

int run(const std::vector<std::string>& raw_args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Sections of the unit cube by hyperplanes tangent to a central ball"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all");
  app.add_option("--config", "key=value file mirroring the flags; flags win");

  VolumeArgs vol;
  auto* volume = app.add_subcommand("volume", "Section volume by one or more methods");
  auto* vol_d = volume->add_option("--d", vol.d, "Dimension");
  volume->add_option("--a", vol.a, "Normal direction, comma separated");
  volume->add_flag("--diagonal", vol.diagonal, "Use the diagonal direction");
  volume->add_option("--t", vol.t, "Distance to the cube center")->required();
  volume->add_option("--method", vol.method, "sum, integral, mc or all")
      ->check(CLI::IsMember({"sum", "integral", "mc", "all"}));
  volume->add_option("--seed", vol.seed, "Monte Carlo seed");
  volume->add_option("--tol", vol.tol, "Absolute tolerance of the integral");
  volume->add_option("--samples", vol.samples, "Monte Carlo sample count");

  MaximizeArgs mx;
  auto* maximize = app.add_subcommand("maximize", "Multistart maximization over directions");
  maximize->add_option("--d", mx.d, "Dimension")->required();
  maximize->add_option("--t", mx.t, "Distance to the cube center")->required();
  maximize->add_option("--starts", mx.starts, "Number of starts");
  maximize->add_option("--seed", mx.seed, "Seed for the random starts");

  CertifyArgs cert;
  auto* certify = app.add_subcommand("certify", "Sign certificates and the decay check");
  certify->add_option("--d-range", cert.d_range, "lo:hi")->required();
  certify->add_option("--grid", cert.grid, "Uniform y-grid size");
  certify->add_flag("--rigorous", cert.rigorous, "Also run the interval proof");

  ScanArgs sc;
  auto* scan = app.add_subcommand("scan", "CSV sweep over t");
  scan->add_option("--d", sc.d, "Dimension")->required();
  scan->add_option("--t-range", sc.t_range, "lo:hi:n")->required();
  scan->add_option("--mode", sc.mode, "diagonal, maximize or classify");
  scan->add_option("--a", sc.a, "Direction for classify mode");

  try {
    std::vector<std::string> args = merge_config(raw_args);
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return ok;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return ok;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return usage;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return usage;
  }

  try {
    if (*volume) {
      cmd_volume(vol, vol_d->count() > 0, out);
    } else if (*maximize) {
      cmd_maximize(mx, out);
    } else if (*certify) {
      return cmd_certify(cert, out);
    } else if (*scan) {
      cmd_scan(sc, out);
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return usage;
  } catch (const Error& e) {
    err << "error (" << to_string(e.kind()) << "): " << e.what() << '\n';
    return exit_code(e.kind());
  }
  return ok;
}

}  // namespace hyperslice::cli
