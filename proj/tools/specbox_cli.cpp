// specbox: inclusion sets and finite-arithmetic spectral approximations for
// tridiagonal/banded bi-infinite operators.

#include <cmath>
#include <complex>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "specbox/inclusion.hpp"
#include "specbox/io.hpp"
#include "specbox/oracle.hpp"
#include "specbox/penalty.hpp"

namespace {

using Json = nlohmann::ordered_json;
using specbox::Complex;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitOperatorFile = 3;
constexpr int kExitEnumerationCap = 4;

/// "a..b" (inclusive), single values, and comma-separated mixtures.
std::vector<std::size_t> parse_n_list(const std::string& text) {
  std::vector<std::size_t> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t comma = std::min(text.find(',', pos), text.size());
    const std::string item = text.substr(pos, comma - pos);
    const std::size_t dots = item.find("..");
    if (dots == std::string::npos) {
      out.push_back(std::stoul(item));
    } else {
      const std::size_t a = std::stoul(item.substr(0, dots));
      const std::size_t b = std::stoul(item.substr(dots + 2));
      if (a > b) throw CLI::ValidationError("--n", "range must be ascending");
      for (std::size_t n = a; n <= b; ++n) out.push_back(n);
    }
    pos = comma + 1;
    if (comma == text.size()) break;
  }
  if (out.empty()) throw CLI::ValidationError("--n", "empty n list");
  for (std::size_t n : out) {
    if (n == 0) throw CLI::ValidationError("--n", "n must be >= 1");
  }
  return out;
}

std::pair<std::int64_t, std::int64_t> parse_window(const std::string& text) {
  const std::size_t dots = text.find("..");
  if (dots == std::string::npos) {
    throw CLI::ValidationError("--window", "expected LO..HI");
  }
  return {std::stoll(text.substr(0, dots)), std::stoll(text.substr(dots + 2))};
}

Complex t_from_turns(double turns) {
  const double ang = 2.0 * std::numbers::pi * turns;
  return Complex(std::cos(ang), std::sin(ang));
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::fputs(text.c_str(), stdout);
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

struct NormInfo {
  double r = 0.0;      // sup |alpha|
  double s = 0.0;      // sup |gamma|
  double radius = 0.0; // R = sup|alpha| + sup|beta| + sup|gamma|
};

NormInfo norm_info(const specbox::OperatorFile& file) {
  NormInfo info;
  if (file.op) {
    info.r = file.op->alpha_max();
    info.s = file.op->gamma_max();
    info.radius = file.op->norm_bound();
    return info;
  }
  auto max_abs = [](const std::vector<Complex>& v) {
    double m = 0.0;
    for (const Complex& z : v) m = std::max(m, std::abs(z));
    return m;
  };
  info.r = max_abs(file.alphabet->alpha);
  info.s = max_abs(file.alphabet->gamma);
  info.radius = info.r + info.s + max_abs(file.alphabet->beta);
  return info;
}

struct CommonOpts {
  std::string op_path;
  std::string output;
  std::string summary_path;
  unsigned threads = 0;
  double sv_tol = 1e-12;
  double pivot_tol = 1e-13;

  specbox::LinalgTols tols() const {
    specbox::LinalgTols t;
    t.sv_tol = sv_tol;
    t.pivot_rel_tol = pivot_tol;
    return t;
  }
};

int run_penalty(const std::string& n_list, double r, double s,
                const std::string& output) {
  const std::vector<std::size_t> ns = parse_n_list(n_list);
  write_text(output, specbox::penalty_csv(ns, r, s));
  return kExitOk;
}

int run_inclusion(const CommonOpts& common, const std::string& method_name,
                  std::size_t n, double t_turns, std::size_t grid_n,
                  double grid_radius, double eps_override, bool enumerate,
                  const std::string& window_text,
                  const std::string& explicit_path) {
  specbox::OperatorFile file = specbox::load_operator_file(common.op_path);

  specbox::Method method;
  if (method_name == "tau") {
    method = specbox::Method::Tau;
  } else if (method_name == "pi") {
    method = specbox::Method::Pi;
  } else if (method_name == "tau1") {
    method = specbox::Method::Tau1;
  } else {
    throw CLI::ValidationError("--method", "expected tau, pi, or tau1");
  }

  const Complex t = t_from_turns(t_turns);
  const NormInfo norms = norm_info(file);
  const specbox::LinalgTols tols = common.tols();

  double eps = eps_override;
  if (eps < 0.0) {
    switch (method) {
      case specbox::Method::Tau:
        eps = specbox::eps_tau(n, norms.r, norms.s).value;
        break;
      case specbox::Method::Pi:
        eps = specbox::eps_pi(n, norms.r, norms.s);
        break;
      case specbox::Method::Tau1:
        eps = specbox::eps_tau1(n, norms.r, norms.s);
        break;
    }
  }

  specbox::SectionFamily family = [&] {
    if (enumerate) {
      if (!file.alphabet) {
        throw specbox::ParseError("--enumerate needs an alphabet in the operator file");
      }
      const specbox::IndexFamily fam =
          specbox::enumerate_pseudoergodic(*file.alphabet, n, method, t);
      std::fprintf(stderr, "family size: %zu\n", fam.mats().size());
      return specbox::SectionFamily::squares(fam.mats(), 1);
    }
    if (!file.op) {
      throw specbox::ParseError("operator file has no diagonals; use --enumerate");
    }
    specbox::IndexFamily fam = [&] {
      if (!explicit_path.empty()) {
        std::ifstream in(explicit_path);
        if (!in) throw specbox::ParseError("cannot open K file: " + explicit_path);
        std::vector<std::int64_t> ks;
        std::int64_t k;
        while (in >> k) ks.push_back(k);
        return specbox::IndexFamily::explicit_k(std::move(ks));
      }
      std::int64_t lo = -static_cast<std::int64_t>(n);
      std::int64_t hi = static_cast<std::int64_t>(n);
      if (!window_text.empty()) std::tie(lo, hi) = parse_window(window_text);
      return specbox::IndexFamily::window_scan(lo, hi, 1.0 / static_cast<double>(n));
    }();
    specbox::SectionFamily resolved =
        specbox::SectionFamily::resolve(*file.op, method, n, fam, t, tols);
    std::fprintf(stderr, "family size: %zu\n", resolved.size());
    return resolved;
  }();

  const std::size_t gn = grid_n == 0 ? n : grid_n;
  const double gr = grid_radius > 0.0 ? grid_radius : norms.radius;
  const specbox::MuGrid grid = specbox::mu_grid(
      family, method, n, {gn, gr}, eps, common.threads, tols);

  write_text(common.output, specbox::mu_grid_csv(grid));

  if (!common.summary_path.empty()) {
    std::size_t members = 0;
    for (char m : grid.members) members += m != 0;
    Json summary;
    summary["schema"] = "specbox.inclusion-summary.v1";
    summary["method"] = method_name;
    summary["n"] = n;
    summary["eps"] = eps;
    summary["grid_n"] = gn;
    summary["grid_radius"] = gr;
    summary["points"] = grid.points.size();
    summary["members"] = members;
    summary["family_size"] = family.size();
    summary["sv_tol"] = common.sv_tol;
    summary["pivot_rel_tol"] = common.pivot_tol;
    write_text(common.summary_path, summary.dump(2) + "\n");
  }
  return kExitOk;
}

int run_spectrum_approx(const CommonOpts& common, const std::string& method_name,
                        const std::string& n_list, double t_turns,
                        double bdo_delta, std::size_t oracle_samples,
                        const std::string& window_text) {
  specbox::OperatorFile file = specbox::load_operator_file(common.op_path);
  const std::vector<std::size_t> ns = parse_n_list(n_list);
  const Complex t = t_from_turns(t_turns);
  const specbox::LinalgTols tols = common.tols();

  const bool use_pi = method_name == "pi";
  if (!use_pi && method_name != "tau1") {
    throw CLI::ValidationError("--method", "spectrum-approx supports tau1 or pi");
  }

  std::optional<specbox::PointSet> oracle;
  if (file.op) {
    try {
      oracle = specbox::periodic_spectrum(*file.op, oracle_samples);
    } catch (const specbox::PeriodMismatch&) {
      // no analytic oracle for this operator
    }
  }

  Json summary;
  summary["schema"] = "specbox.spectrum-approx-summary.v1";
  summary["method"] = use_pi ? "pi" : "tau1";
  summary["bdo_delta"] = bdo_delta;
  Json runs = Json::array();

  for (std::size_t n : ns) {
    specbox::DilatedPointSet approx;
    if (use_pi) {
      if (!file.alphabet) {
        throw specbox::ParseError("pi spectrum approximation needs an alphabet");
      }
      approx = specbox::pi_fin(*file.alphabet, n, t, bdo_delta, common.threads,
                               std::size_t{1} << 24, tols);
    } else {
      if (!file.op) {
        throw specbox::ParseError("tau1 spectrum approximation needs operator diagonals");
      }
      std::int64_t lo = -static_cast<std::int64_t>(n);
      std::int64_t hi = static_cast<std::int64_t>(n);
      if (!window_text.empty()) std::tie(lo, hi) = parse_window(window_text);
      const specbox::IndexFamily fam =
          specbox::IndexFamily::window_scan(lo, hi, 1.0 / static_cast<double>(n));
      approx = specbox::gamma_fin(*file.op, n, fam, bdo_delta, common.threads, tols);
    }

    Json run;
    run["n"] = n;
    run["threshold"] = approx.threshold;
    run["dilation_radius"] = approx.dilation_radius;
    run["grid_radius"] = approx.grid_radius;
    run["points"] = approx.centers.points.size();
    if (oracle && !oracle->points.empty() && !approx.centers.points.empty()) {
      run["hausdorff_to_oracle"] = specbox::hausdorff(approx.centers, *oracle);
    }
    runs.push_back(std::move(run));

    if (!common.output.empty()) {
      const std::string path = common.output + "_n" + std::to_string(n) + ".csv";
      write_text(path, specbox::points_csv(approx.centers));
    }
  }
  summary["runs"] = std::move(runs);
  write_text(common.summary_path, summary.dump(2) + "\n");
  return kExitOk;
}

int run_oracle(const CommonOpts& common, std::size_t samples,
               std::size_t period_union) {
  specbox::OperatorFile file = specbox::load_operator_file(common.op_path);
  if (period_union > 0) {
    if (!file.alphabet) {
      throw specbox::ParseError("--period-union needs an alphabet");
    }
    const specbox::PointSet pts =
        specbox::pseudoergodic_period_union(*file.alphabet, period_union, samples);
    write_text(common.output, specbox::points_csv(pts));
    return kExitOk;
  }
  if (!file.op) {
    throw specbox::ParseError("oracle needs operator diagonals or --period-union");
  }
  const specbox::SymbolSweep sweep = specbox::periodic_symbol_sweep(*file.op, samples);
  write_text(common.output, specbox::sweep_csv(sweep));
  return kExitOk;
}

int run_hausdorff(const std::string& path_a, const std::string& path_b) {
  auto load = [](const std::string& path) {
    std::ifstream in(path);
    if (!in) throw specbox::ParseError("cannot open points file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return specbox::parse_points_csv(buf.str());
  };
  const double d = specbox::hausdorff(load(path_a), load(path_b));
  std::printf("%s\n", specbox::format_double(d).c_str());
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"spectral inclusion sets and finite spectral approximations "
               "for tridiagonal bi-infinite operators"};
  app.require_subcommand(1);

  // penalty
  auto* penalty = app.add_subcommand("penalty", "tabulate truncation penalties");
  std::string pen_n;
  double pen_r = 0.0, pen_s = 0.0;
  std::string pen_out;
  penalty->add_option("--n", pen_n, "n values, e.g. 1..8 or 4,8,16")->required();
  penalty->add_option("--r", pen_r, "sup norm of the subdiagonal")->required();
  penalty->add_option("--s", pen_s, "sup norm of the superdiagonal")->required();
  penalty->add_option("--output,-o", pen_out, "CSV path (default stdout)");

  auto add_common = [](CLI::App* cmd, CommonOpts& c, bool with_op = true) {
    if (with_op) {
      cmd->add_option("operator", c.op_path, "operator spec JSON file")->required();
    }
    cmd->add_option("--output,-o", c.output, "output path (default stdout)");
    cmd->add_option("--summary", c.summary_path, "JSON summary path");
    cmd->add_option("--threads", c.threads,
                    "worker threads (default: SPECBOX_THREADS or hardware)");
    cmd->add_option("--sv-tol", c.sv_tol, "singular value tolerance (squared scale)");
    cmd->add_option("--pivot-tol", c.pivot_tol, "relative LDL pivot tolerance");
  };

  // inclusion
  auto* inclusion = app.add_subcommand("inclusion", "membership grid for one method");
  CommonOpts inc_common;
  std::string inc_method;
  std::size_t inc_n = 0, inc_grid_n = 0;
  double inc_turns = 0.0, inc_radius = -1.0, inc_eps = -1.0;
  bool inc_enumerate = false;
  std::string inc_window, inc_kfile;
  add_common(inclusion, inc_common);
  inclusion->add_option("--method", inc_method, "tau | pi | tau1")->required();
  inclusion->add_option("--n", inc_n, "section size")->required();
  inclusion->add_option("--t-turns", inc_turns, "pi corner factor as angle in turns");
  inclusion->add_option("--grid-n", inc_grid_n, "lattice density (default n)");
  inclusion->add_option("--grid-radius", inc_radius, "lattice radius (default R)");
  inclusion->add_option("--eps", inc_eps, "membership threshold (default: method penalty)");
  auto* fam_enum = inclusion->add_flag("--enumerate", inc_enumerate,
                                       "enumerate the pseudoergodic alphabet");
  auto* fam_win = inclusion->add_option("--window", inc_window, "k window LO..HI");
  auto* fam_k = inclusion->add_option("--explicit-k", inc_kfile,
                                      "file with explicit k values");
  fam_enum->excludes(fam_win)->excludes(fam_k);
  fam_win->excludes(fam_k);

  // spectrum-approx
  auto* approx = app.add_subcommand("spectrum-approx",
                                    "finitely computable spectrum approximations");
  CommonOpts app_common;
  std::string app_method = "tau1", app_n, app_window;
  double app_turns = 0.0, app_delta = 0.0;
  std::size_t app_oracle_samples = 512;
  add_common(approx, app_common);
  approx->add_option("--method", app_method, "tau1 (default) | pi");
  approx->add_option("--n", app_n, "n values, e.g. 8,16,32")->required();
  approx->add_option("--t-turns", app_turns, "pi corner factor as angle in turns");
  approx->add_option("--bdo-delta", app_delta,
                     "band-dominated truncation bound added to thresholds");
  approx->add_option("--oracle-samples", app_oracle_samples,
                     "symbol sweep samples for the Hausdorff diagnostic");
  approx->add_option("--window", app_window, "k window LO..HI");

  // oracle
  auto* oracle = app.add_subcommand("oracle", "analytic spectrum samples");
  CommonOpts orc_common;
  std::size_t orc_samples = 512, orc_union = 0;
  add_common(oracle, orc_common);
  oracle->add_option("--samples", orc_samples, "unit circle samples (>= 8)");
  oracle->add_option("--period-union", orc_union,
                     "union over alphabet words of period <= P");

  // hausdorff
  auto* haus = app.add_subcommand("hausdorff", "distance between two point CSVs");
  std::string haus_a, haus_b;
  haus->add_option("a", haus_a, "first points CSV")->required();
  haus->add_option("b", haus_b, "second points CSV")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (penalty->parsed()) return run_penalty(pen_n, pen_r, pen_s, pen_out);
    if (inclusion->parsed()) {
      return run_inclusion(inc_common, inc_method, inc_n, inc_turns, inc_grid_n,
                           inc_radius, inc_eps, inc_enumerate, inc_window,
                           inc_kfile);
    }
    if (approx->parsed()) {
      return run_spectrum_approx(app_common, app_method, app_n, app_turns,
                                 app_delta, app_oracle_samples, app_window);
    }
    if (oracle->parsed()) return run_oracle(orc_common, orc_samples, orc_union);
    if (haus->parsed()) return run_hausdorff(haus_a, haus_b);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  } catch (const specbox::TooMany& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitEnumerationCap;
  } catch (const specbox::ParseError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitOperatorFile;
  } catch (const specbox::PeriodMismatch& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitOperatorFile;
  } catch (const specbox::IndexOutsideRange& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitOperatorFile;
  } catch (const specbox::InvalidArgument& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitUsage;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return kExitUsage;
}
