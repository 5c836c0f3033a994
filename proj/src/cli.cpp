#include "cuboid/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <ostream>
#include <sstream>
#include <variant>

#include "cuboid/errors.hpp"
#include "cuboid/lattice.hpp"
#include "cuboid/limits.hpp"
#include "cuboid/min_analysis.hpp"
#include "cuboid/zeta.hpp"

namespace cuboid::cli {

namespace {

struct UsageError : Error {
  using Error::Error;
};

[[noreturn]] void fail(std::string_view flag, const std::string& msg) {
  throw UsageError(std::string(flag) + ": " + msg);
}

double require_real(const std::string& text, std::string_view flag) {
  const auto v = parse_real(text);
  if (!v) fail(flag, "cannot parse '" + text + "' as a number or fraction p/q");
  return *v;
}

double require_s(const std::string& text, std::string_view flag = "--s") {
  const double s = require_real(text, flag);
  if (!(s > 1.5)) fail(flag, "must exceed 3/2 (the lattice sum diverges for s <= 3/2), got " + text);
  return s;
}

double require_A(const std::string& text, std::string_view flag = "--A") {
  const double a = require_real(text, flag);
  if (!(a > 0.0)) fail(flag, "must be positive, got " + text);
  return a;
}

std::vector<double> parse_list(const std::string& text, std::string_view flag) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(require_real(item, flag));
  if (out.empty()) fail(flag, "empty list");
  return out;
}

enum class Format { Csv, Jsonl };

// One output table: a CSV header plus rows, or JSON objects per line.
class Table {
 public:
  Table(Format f, std::vector<std::string> columns) : format_(f), columns_(std::move(columns)) {
    if (format_ == Format::Csv) {
      for (std::size_t i = 0; i < columns_.size(); ++i) text_ << (i ? "," : "") << columns_[i];
      text_ << '\n';
    }
  }

  using Cell = std::variant<double, long long, std::string, bool>;

  void row(const std::vector<Cell>& cells) {
    if (format_ == Format::Csv) {
      for (std::size_t i = 0; i < cells.size(); ++i) text_ << (i ? "," : "") << csv_cell(cells[i]);
      text_ << '\n';
      return;
    }
    nlohmann::ordered_json j;
    for (std::size_t i = 0; i < cells.size(); ++i)
      std::visit([&](const auto& v) { json_cell(j[columns_[i]], v); }, cells[i]);
    text_ << j.dump() << '\n';
  }

  std::string str() const { return text_.str(); }

 private:
  static std::string csv_cell(const Cell& c) {
    if (auto d = std::get_if<double>(&c)) return format_real(*d);
    if (auto i = std::get_if<long long>(&c)) return std::to_string(*i);
    if (auto b = std::get_if<bool>(&c)) return *b ? "true" : "false";
    return std::get<std::string>(c);
  }
  static void json_cell(nlohmann::ordered_json& j, double d) {
    if (std::isfinite(d)) j = d;
    else j = format_real(d);
  }
  static void json_cell(nlohmann::ordered_json& j, long long i) { j = i; }
  static void json_cell(nlohmann::ordered_json& j, const std::string& s) { j = s; }
  static void json_cell(nlohmann::ordered_json& j, bool b) { j = b; }

  Format format_;
  std::vector<std::string> columns_;
  std::ostringstream text_;
};

struct Common {
  std::string out_path;
  std::string format = "csv";
  std::string accumulation = "compensated";
  std::string kernel = "auto";
  int threads = 0;

  Format fmt() const { return format == "jsonl" ? Format::Jsonl : Format::Csv; }

  SumSpec spec() const {
    SumSpec s;
    s.accumulation = accumulation == "plain" ? Accumulation::Plain : Accumulation::Compensated;
    s.workers = threads;
    if (kernel == "scalar") s.kernel = KernelChoice::Scalar;
    else if (kernel == "avx2") s.kernel = KernelChoice::Avx2;
    else if (kernel == "avx512") s.kernel = KernelChoice::Avx512;
    else if (kernel == "neon") s.kernel = KernelChoice::Neon;
    return s;
  }
};

struct Sizing {
  std::string tol;
  int cutoff = 0;
  std::vector<CLI::Option*> tol_opts, cutoff_opts;

  void attach(CLI::App* app) {
    auto* t = app->add_option("--tol", tol, "relative target tolerance");
    auto* c = app->add_option("--cutoff", cutoff, "explicit cube size N");
    t->excludes(c);
    tol_opts.push_back(t);
    cutoff_opts.push_back(c);
  }
  static bool given(const std::vector<CLI::Option*>& opts) {
    return std::any_of(opts.begin(), opts.end(), [](const CLI::Option* o) { return o->count() > 0; });
  }
  bool tol_given() const { return given(tol_opts); }
  std::optional<double> tolerance() const {
    if (!tol_given()) return std::nullopt;
    const double t = require_real(tol, "--tol");
    if (!(t > 0.0 && std::isfinite(t))) fail("--tol", "must be positive, got " + tol);
    return t;
  }
  std::optional<int> n() const {
    if (!given(cutoff_opts)) return std::nullopt;
    if (cutoff < kMinCutoff || cutoff > kMaxCutoff)
      fail("--cutoff", "must lie in [" + std::to_string(kMinCutoff) + ", " + std::to_string(kMaxCutoff) + "]");
    return cutoff;
  }
  SumSpec apply(SumSpec spec, double s) const {
    if (auto n_ = n()) spec.cutoff = n_;
    else spec.target_tol = tolerance().value_or(default_scan_tolerance(s));
    return spec;
  }
};

void add_common(CLI::App* app, Common& c) {
  app->add_option("--out", c.out_path, "write the table to this file");
  app->add_option("--format", c.format, "csv or jsonl")->check(CLI::IsMember({"csv", "jsonl"}));
  app->add_option("--accumulation", c.accumulation, "plain or compensated")
      ->check(CLI::IsMember({"plain", "compensated"}));
  app->add_option("--kernel", c.kernel, "auto, scalar, avx2, avx512 or neon")
      ->check(CLI::IsMember({"auto", "scalar", "avx2", "avx512", "neon"}));
  app->add_option("--threads", c.threads, "worker threads (0: CUBOID_THREADS or all cores)")
      ->check(CLI::NonNegativeNumber);
}

std::vector<Table::Cell> zeta_row(double A, double s, const ZetaValue& z) {
  return {A, s, z.value, z.tail_bound, static_cast<long long>(z.cutoff_used)};
}

const std::vector<std::string> kZetaColumns{"A", "s", "value", "tail_bound", "cutoff"};

}  // namespace

std::optional<double> parse_real(std::string_view text) {
  const auto number = [](std::string_view t) -> std::optional<double> {
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (t.empty() || ec != std::errc{} || ptr != t.data() + t.size()) return std::nullopt;
    return v;
  };
  if (const auto slash = text.find('/'); slash != std::string_view::npos) {
    const auto p = number(text.substr(0, slash)), q = number(text.substr(slash + 1));
    if (!p || !q || *q == 0.0) return std::nullopt;
    return *p / *q;
  }
  return number(text);
}

std::string format_real(double x) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 17);
  return std::string(buf, ec == std::errc{} ? ptr : buf);
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Epstein zeta function of the cuboidal lattice family", "cuboid"};
  app.require_subcommand(1);
  Common common;

  std::string A_text, s_text, min_text, max_text, probes_text, direction = "a-inf";
  int steps = 41;
  bool argmin = false;
  std::string tol_first = "1e-5", tol_second = "1e-2";
  Sizing sizing;

  auto* eval = app.add_subcommand("eval", "one value of L(A; s) with its tail bound");
  eval->add_option("--A", A_text, "A as a real or fraction p/q")->required();
  eval->add_option("--s", s_text, "exponent s > 3/2")->required();

  auto* scan = app.add_subcommand("scan", "L(A; s) on a uniform grid in [1/3, 1]");
  scan->add_option("--s", s_text, "exponent s > 3/2")->required();
  scan->add_option("--min", min_text, "smallest A (default 1/3)");
  scan->add_option("--max", max_text, "largest A (default 1)");
  scan->add_option("--steps", steps, "grid points (default 41)");
  scan->add_flag("--argmin", argmin, "report the refined minimizer instead of the grid");

  auto* verify = app.add_subcommand("verify", "check dL/dA = 0 and d2L/dA2 > 0 at A = 1/2");
  verify->add_option("--s", s_text, "exponent s > 3/2")->required();
  verify->add_option("--tol-first", tol_first, "bound on the finite-difference first derivative");
  verify->add_option("--tol-second", tol_second, "relative agreement of second derivatives");

  auto* density = app.add_subcommand("density", "packing density at a point or on a grid");
  auto* density_A = density->add_option("--A", A_text, "A as a real or fraction p/q");
  density->add_option("--min", min_text, "smallest A")->excludes(density_A);
  density->add_option("--max", max_text, "largest A")->excludes(density_A);
  density->add_option("--steps", steps, "grid points");

  auto* kissing = app.add_subcommand("kissing", "kissing number at A");
  kissing->add_option("--A", A_text, "A as a real or fraction p/q")->required();

  auto* limits = app.add_subcommand("limits", "degeneration checks for A -> inf, A -> 0, s -> inf");
  limits->add_option("--direction", direction, "a-inf, a-zero or s-inf")
      ->check(CLI::IsMember({"a-inf", "a-zero", "s-inf"}));
  limits->add_option("--s", s_text, "exponent for a-inf (default 6)");
  limits->add_option("--A", A_text, "A for s-inf (default 1/2)");
  limits->add_option("--probes", probes_text, "comma-separated probe values");

  auto* figure2 = app.add_subcommand("figure2", "L on A = 1/3 + k/60 for s in {3, 6, 20} and the kissing row");

  for (auto* sub : {eval, scan, verify, density, kissing, limits, figure2}) add_common(sub, common);
  for (auto* sub : {eval, scan, verify, limits, figure2}) sizing.attach(sub);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  std::string text;
  int status = kOk;
  try {
    const SumSpec base = common.spec();
    const Format fmt = common.fmt();

    if (*eval) {
      const double A = require_A(A_text), s = require_s(s_text);
      const ZetaValue z = epstein_zeta(classify(A), s, sizing.apply(base, s));
      Table t(fmt, kZetaColumns);
      t.row(zeta_row(A, s, z));
      text = t.str();
    } else if (*scan) {
      const double s = require_s(s_text);
      const double lo = min_text.empty() ? 1.0 / 3.0 : require_real(min_text, "--min");
      const double hi = max_text.empty() ? 1.0 : require_real(max_text, "--max");
      if (!(lo >= 1.0 / 3.0 && lo <= 1.0)) fail("--min", "must lie in [1/3, 1]");
      if (!(hi >= 1.0 / 3.0 && hi <= 1.0)) fail("--max", "must lie in [1/3, 1]");
      if (!(lo < hi)) fail("--max", "must exceed --min");
      if (steps < (argmin ? 8 : 2)) fail("--steps", argmin ? "must be >= 8 with --argmin" : "must be >= 2");
      SumSpec spec = base;
      if (auto n = sizing.n()) spec.cutoff = n;
      if (argmin) {
        const ArgminResult r = argmin_scan(s, lo, hi, steps, sizing.tolerance(), spec);
        Table t(fmt, {"A_star", "s", "value", "tail_bound", "cutoff", "at_boundary"});
        t.row({r.A_star, s, r.L_star, r.tail_bound, static_cast<long long>(r.cutoff), r.at_boundary});
        text = t.str();
      } else {
        const ScanTable table = scan_L(s, lo, hi, steps, sizing.tolerance(), spec);
        Table t(fmt, kZetaColumns);
        for (const ScanRow& r : table.rows)
          t.row({r.A, s, r.value, r.tail_bound, static_cast<long long>(r.cutoff)});
        text = t.str();
      }
    } else if (*verify) {
      const double s = require_s(s_text);
      const double t1 = require_real(tol_first, "--tol-first"), t2 = require_real(tol_second, "--tol-second");
      if (!(t1 > 0.0)) fail("--tol-first", "must be positive");
      if (!(t2 > 0.0)) fail("--tol-second", "must be positive");
      if (sizing.tol_given()) fail("--tol", "not used by verify; pass --cutoff to fix the cube size");
      TheoremOptions opts;
      opts.cutoff = sizing.n();
      opts.workers = base.workers;
      opts.kernel = base.kernel;
      const TheoremReport r = verify_theorem(s, t1, t2, opts);
      Table t(fmt, {"s", "cutoff", "check", "value", "bound", "pass"});
      for (const Check& c : r.checks)
        t.row({s, static_cast<long long>(r.cutoff), c.name, c.value, c.bound, c.pass});
      text = t.str();
      status = r.pass ? kOk : kVerificationFailed;
    } else if (*density) {
      Table t(fmt, {"A", "density"});
      if (!A_text.empty()) {
        const double A = require_A(A_text);
        t.row({A, packing_density(classify(A))});
      } else {
        if (min_text.empty()) fail("--min", "required unless --A is given");
        if (max_text.empty()) fail("--max", "required unless --A is given");
        const double lo = require_A(min_text, "--min"), hi = require_A(max_text, "--max");
        if (!(lo < hi)) fail("--max", "must exceed --min");
        if (steps < 2) fail("--steps", "must be >= 2");
        for (const DensityRow& r : density_table(lo, hi, steps)) t.row({r.A, r.density});
      }
      text = t.str();
    } else if (*kissing) {
      const double A = require_A(A_text);
      const AnisotropyParam p = classify(A);
      if (fmt == Format::Csv) {
        text = std::to_string(kissing_number(p)) + "\n";
      } else {
        Table t(fmt, {"A", "regime", "kissing"});
        t.row({A, std::string(to_string(p.regime())), static_cast<long long>(kissing_number(p))});
        text = t.str();
      }
    } else if (*limits) {
      LimitReport r;
      if (direction == "a-inf") {
        const double s = s_text.empty() ? 6.0 : require_s(s_text);
        std::vector<double> probes = probes_text.empty() ? std::vector<double>{4, 16, 64}
                                                         : parse_list(probes_text, "--probes");
        for (std::size_t i = 0; i < probes.size(); ++i) {
          if (!(probes[i] > 1.0)) fail("--probes", "A probes must exceed 1");
          if (i && !(probes[i] > probes[i - 1])) fail("--probes", "A probes must be increasing");
        }
        SumSpec spec = base;
        if (auto n = sizing.n()) spec.cutoff = n;
        if (auto tol = sizing.tolerance()) spec.target_tol = tol;
        r = verify_A_to_inf(s, probes, spec);
      } else if (direction == "a-zero") {
        std::vector<double> probes = probes_text.empty() ? std::vector<double>{0.2, 0.1, 0.01}
                                                         : parse_list(probes_text, "--probes");
        for (std::size_t i = 0; i < probes.size(); ++i) {
          if (!(probes[i] > 0.0 && probes[i] < 1.0 / 3.0)) fail("--probes", "A probes must lie in (0, 1/3)");
          if (i && !(probes[i] < probes[i - 1])) fail("--probes", "A probes must be decreasing");
        }
        r = verify_A_to_zero(probes);
      } else {
        const double A = A_text.empty() ? 0.5 : require_A(A_text);
        if (!(A >= 1.0 / 3.0 && A <= 1.0)) fail("--A", "must lie in [1/3, 1] for s-inf");
        std::vector<double> probes = probes_text.empty() ? std::vector<double>{10, 20, 50}
                                                         : parse_list(probes_text, "--probes");
        for (std::size_t i = 0; i < probes.size(); ++i) {
          if (!(probes[i] > 1.5)) fail("--probes", "s probes must exceed 3/2");
          if (i && !(probes[i] > probes[i - 1])) fail("--probes", "s probes must be increasing");
        }
        SumSpec spec = base;
        if (auto n = sizing.n()) spec.cutoff = n;
        if (auto tol = sizing.tolerance()) spec.target_tol = tol;
        r = verify_s_to_inf(A, probes, spec);
      }
      Table t(fmt, {"direction", "fixed", "probe", "deviation", "tail_bound", "threshold", "converged"});
      for (const LimitProbe& p : r.probes)
        t.row({std::string(to_string(r.direction)), r.fixed, p.probe, p.deviation, p.tail_bound, r.threshold,
               r.converged});
      text = t.str();
      status = r.converged ? kOk : kVerificationFailed;
    } else if (*figure2) {
      std::vector<double> grid;
      for (int k = 0; k <= 40; ++k) grid.push_back((20.0 + k) / 60.0);
      Table t(fmt, kZetaColumns);
      for (double s : {3.0, 6.0, 20.0}) {
        SumSpec spec = base;
        if (auto n = sizing.n()) spec.cutoff = n;
        for (const ScanRow& r : scan_L_at(s, grid, sizing.tolerance(), spec).rows)
          t.row({r.A, s, r.value, r.tail_bound, static_cast<long long>(r.cutoff)});
      }
      const double inf = std::numeric_limits<double>::infinity();
      for (double A : grid) t.row({A, inf, double(kissing_number(classify(A))), 0.0, 0LL});
      text = t.str();
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const UnattainableTolerance& e) {
    err << "error: " << e.what() << '\n';
    return kUnattainable;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }

  if (common.out_path.empty()) {
    out << text;
  } else {
    std::ofstream file(common.out_path, std::ios::binary);
    if (!file) {
      err << "error: --out: cannot open '" << common.out_path << "' for writing\n";
      return kUsage;
    }
    file << text;
  }
  return status;
}

}  // namespace cuboid::cli
