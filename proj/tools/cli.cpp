#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <charconv>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "ept/decompose.hpp"
#include "ept/ensemble.hpp"
#include "ept/io.hpp"
#include "ept/maps.hpp"
#include "ept/patch.hpp"
#include "ept/select.hpp"
#include "ept/siggen.hpp"

namespace ept::cli {
namespace {

/// Bad flag combination or value detected after CLI11 parsing.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

const std::map<std::string, Shape> kShapes{{"rectangle", Shape::Rectangle},
                                           {"rect", Shape::Rectangle},
                                           {"oval", Shape::Oval}};
const std::map<std::string, StatKind> kStats{
    {"ave", StatKind::Ave},       {"mean-envelope", StatKind::MeanEnvelope},
    {"sd", StatKind::Sd},         {"range", StatKind::Range},
    {"median", StatKind::Median}, {"lower", StatKind::Lower},
    {"upper", StatKind::Upper}};
enum class OuterChoice { None, Mean, Median };
const std::map<std::string, OuterChoice> kOuters{{"none", OuterChoice::None},
                                                 {"mean", OuterChoice::Mean},
                                                 {"median", OuterChoice::Median}};

// ---------------------------------------------------------------------------
// Shared option groups

struct InputOptions {
  std::string in;
  std::string preset;
  double dt = 1.0;
  double t0 = 0.0;
  std::uint64_t seed = 1;
  std::size_t n = 1000;

  void attach(CLI::App& app) {
    app.add_option("--in", in, "input CSV (one value column, or time,value)");
    app.add_option("--preset", preset, "built-in signal instead of --in")
        ->check(CLI::IsMember({"example1", "example2", "example3", "intro"}));
    app.add_option("--dt", dt, "sampling interval for single-column input")
        ->check(CLI::PositiveNumber);
    app.add_option("--t0", t0, "time of the first sample for single-column input");
    app.add_option("--seed", seed, "noise seed for noisy presets");
    app.add_option("--n", n, "sample count for presets")->check(CLI::Range(2, 10000000));
  }

  std::optional<Preset> preset_choice() const {
    return preset.empty() ? std::nullopt : parse_preset(preset);
  }

  Signal load() const {
    if (!in.empty() && !preset.empty())
      throw UsageError("--in and --preset are mutually exclusive");
    if (auto p = preset_choice()) return make_preset(*p, seed, n).signal;
    if (in.empty()) throw UsageError("one of --in or --preset is required");
    return read_series(in, SeriesFormat{dt, t0});
  }
};

struct FilterOptions {
  Shape shape = Shape::Rectangle;
  StatKind inner = StatKind::Ave;
  std::optional<OuterChoice> outer;
  double gamma = 1.0;
  double tol = kDefaultTolerance;
  int max_iter = kDefaultMaxIterations;

  void attach(CLI::App& app, bool iterative) {
    attach_patch(app);
    app.add_option_function<StatKind>(
           "--inner", [this](const StatKind& k) { inner = k; },
           "per-patch statistic: ave|mean-envelope|sd|range|median")
        ->transform(CLI::CheckedTransformer(kStats, CLI::ignore_case))
        ->option_text("STAT");
    if (iterative) {
      app.add_option("--tol", tol, "relative update tolerance")
          ->check(CLI::PositiveNumber);
      app.add_option("--max-iter", max_iter, "maximum refinement passes")
          ->check(CLI::PositiveNumber);
    }
  }

  // Shape, outer combiner and gamma; commands choosing the statistic
  // themselves attach only these.
  void attach_patch(CLI::App& app) {
    app.add_option_function<Shape>(
           "--shape", [this](const Shape& s) { shape = s; },
           "patch shape: rectangle|oval")
        ->transform(CLI::CheckedTransformer(kShapes, CLI::ignore_case))
        ->option_text("SHAPE");
    app.add_option_function<OuterChoice>(
           "--outer", [this](const OuterChoice& o) { outer = o; },
           "combiner across shifts: mean|median (none = single patch)")
        ->transform(CLI::CheckedTransformer(kOuters, CLI::ignore_case))
        ->option_text("OUTER");
    app.add_option("--gamma", gamma, "patch scale factor")
        ->check(CLI::NonNegativeNumber);
  }

  EnsembleSpec ensemble(int tau, std::optional<Preset> preset) const {
    EnsembleSpec spec;
    spec.patch = {shape, tau, gamma};
    spec.inner = inner;
    OuterChoice o = outer.value_or(OuterChoice::Mean);
    if (!outer && preset && preset_info(*preset).median_of_averages)
      o = OuterChoice::Median;
    if (o == OuterChoice::None)
      throw UsageError("--outer none is not valid for this command");
    spec.outer = o == OuterChoice::Median ? Outer::Median : Outer::Mean;
    return spec;
  }

  ExtractOptions extract_options() const { return {tol, max_iter}; }
};

// "10,21", "2:64", "2:64:2" and mixtures of those.
std::vector<int> parse_int_list(const std::string& text, const char* flag) {
  std::vector<int> out;
  auto to_int = [&](std::string_view s) {
    int v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size())
      throw UsageError(std::string("cannot parse ") + flag + " value '" + text + "'");
    return v;
  };
  std::stringstream items(text);
  std::string item;
  while (std::getline(items, item, ',')) {
    std::vector<std::string> parts;
    std::stringstream range(item);
    std::string part;
    while (std::getline(range, part, ':')) parts.push_back(part);
    if (parts.size() == 1) {
      out.push_back(to_int(parts[0]));
    } else if (parts.size() == 2 || parts.size() == 3) {
      const int a = to_int(parts[0]);
      const int b = to_int(parts[1]);
      const int step = parts.size() == 3 ? to_int(parts[2]) : 1;
      if (step < 1 || b < a)
        throw UsageError(std::string("bad range in ") + flag + " '" + item + "'");
      for (int v = a; v <= b; v += step) out.push_back(v);
    } else {
      throw UsageError(std::string("bad item in ") + flag + " '" + item + "'");
    }
  }
  if (out.empty()) throw UsageError(std::string(flag) + " is empty");
  return out;
}

// Atomic file write to path, or straight to the stdout stream when no path
// was given.
void emit(const std::string& path, std::ostream& stdout_stream,
          const std::function<void(std::ostream&)>& writer) {
  if (path.empty()) {
    writer(stdout_stream);
  } else {
    write_file_atomic(path, writer);
  }
}

// ---------------------------------------------------------------------------
// Commands

struct GenCommand {
  InputOptions input;
  std::string out;
  std::string components_out;

  void attach(CLI::App& app) {
    app.add_option("--preset", input.preset, "example1|example2|example3|intro")
        ->check(CLI::IsMember({"example1", "example2", "example3", "intro"}));
    app.add_option("--n", input.n, "sample count")->check(CLI::Range(2, 10000000));
    app.add_option("--seed", input.seed, "noise seed for noisy presets");
    app.add_option("--out", out, "output CSV (t,value rows; default: stdout)");
    app.add_option("--components-out", components_out,
                   "optional CSV of the ground-truth components");
  }

  void run(std::ostream& stdout_stream) {
    const auto preset = input.preset_choice();
    if (!preset) throw UsageError("--preset is required");
    const GeneratedSignal g = make_preset(*preset, input.seed, input.n);
    emit(out, stdout_stream, [&](std::ostream& os) { write_signal_csv(g.signal, os); });
    if (!components_out.empty()) {
      write_file_atomic(components_out, [&](std::ostream& os) {
        os << "t";
        for (std::size_t k = 0; k < g.components.size(); ++k)
          os << ",component_" << k + 1;
        os << '\n';
        for (std::size_t i = 0; i < g.signal.size(); ++i) {
          os << format_real(g.signal.time_at(i));
          for (const auto& c : g.components) os << ',' << format_real(c[i]);
          os << '\n';
        }
      });
    }
  }
};

struct DecomposeCommand {
  InputOptions input;
  FilterOptions filter;
  std::string taus;
  std::string out;

  void attach(CLI::App& app) {
    input.attach(app);
    filter.attach(app, true);
    app.add_option("--tau", taus, "size parameter per level, e.g. 10,21");
    app.add_option("--out", out, "output CSV (default: stdout)");
  }

  void run(std::ostream& stdout_stream) {
    const Signal signal = input.load();
    const auto preset = input.preset_choice();
    std::vector<int> levels;
    if (!taus.empty()) {
      levels = parse_int_list(taus, "--tau");
    } else if (preset) {
      levels = preset_info(*preset).taus;
    } else {
      throw UsageError("--tau is required without --preset");
    }
    DecompositionPlan plan;
    for (int tau : levels)
      plan.levels.push_back({filter.ensemble(tau, preset), filter.extract_options()});
    const Decomposition d = sequential_decompose(signal, plan);

    emit(out, stdout_stream, [&](std::ostream& os) {
      os << "t,input";
      for (std::size_t k = 0; k < d.components.size(); ++k)
        os << ",component_" << k + 1;
      os << ",residue\n";
      for (std::size_t i = 0; i < signal.size(); ++i) {
        os << format_real(signal.time_at(i)) << ',' << format_real(signal[i]);
        for (const auto& c : d.components) os << ',' << format_real(c[i]);
        os << ',' << format_real(d.residue[i]) << '\n';
      }
    });
  }
};

struct MapCommand {
  InputOptions input;
  FilterOptions filter;
  std::string taus = "2:64";
  std::string stat = "ave";
  std::string diff = "none";
  std::string format = "csv";
  std::string out;

  void attach(CLI::App& app) {
    input.attach(app);
    filter.attach_patch(app);
    app.add_option("--taus", taus, "tau grid, e.g. 2:64 or 2,4,8,16");
    app.add_option("--stat", stat, "ave|mean-envelope|median|sd|range")
        ->check(CLI::IsMember({"ave", "mean-envelope", "median", "sd", "range"}));
    app.add_option("--diff", diff, "none|time|scale")
        ->check(CLI::IsMember({"none", "time", "scale"}));
    app.add_option("--format", format, "csv|pgm")->check(CLI::IsMember({"csv", "pgm"}));
    app.add_option("--out", out, "output file (default: stdout)");
  }

  void run(std::ostream& stdout_stream) {
    const Signal signal = input.load();
    const std::vector<int> grid_taus = parse_int_list(taus, "--taus");
    const StatKind kind = kStats.at(stat);
    const OuterChoice outer = filter.outer.value_or(OuterChoice::Mean);
    MapSource source = PatchSpec{filter.shape, 1, filter.gamma};
    if (outer != OuterChoice::None) {
      source = EnsembleSpec{{filter.shape, 1, filter.gamma},
                            kind,
                            outer == OuterChoice::Median ? Outer::Median : Outer::Mean};
    }
    MapGrid grid = build_map(signal, grid_taus, source, kind);
    if (diff == "time") grid = diff_map(grid, DiffAxis::Time);
    if (diff == "scale") grid = diff_map(grid, DiffAxis::Scale);
    emit(out, stdout_stream, [&](std::ostream& os) {
      if (format == "pgm") {
        write_map_pgm(grid, os);
      } else {
        write_map_csv(grid, os);
      }
    });
  }
};

struct SelectCommand {
  InputOptions input;
  FilterOptions filter;
  std::string method = "period";
  std::string grid;
  std::string trim = "tau";
  std::string out;

  void attach(CLI::App& app) {
    input.attach(app);
    filter.attach(app, true);
    app.add_option("--method", method, "period|correlation")
        ->check(CLI::IsMember({"period", "correlation"}));
    app.add_option("--grid", grid, "tau grid for the correlation method, e.g. 10:30");
    app.add_option("--trim", trim, "samples dropped per end: tau|none|<count>");
    app.add_option("--out", out, "output file (default: stdout)");
  }

  TrimPolicy trim_policy() const {
    if (trim == "tau") return TrimPolicy::tau();
    if (trim == "none") return TrimPolicy::none();
    const int v = parse_int_list(trim, "--trim").front();
    if (v < 0) throw UsageError("--trim must be >= 0");
    return TrimPolicy::fixed(v);
  }

  void run(std::ostream& stdout_stream) {
    const Signal signal = input.load();
    std::ostringstream report;
    if (method == "period") {
      const PeriodHistogram h = select_tau_period(signal);
      report << "# method=period mode=" << h.mode << "\nperiod,count\n";
      for (const auto& [gap, count] : h.counts) report << gap << ',' << count << '\n';
    } else {
      if (grid.empty()) throw UsageError("--grid is required for --method correlation");
      const std::vector<int> taus = parse_int_list(grid, "--grid");
      const TauSearchResult r =
          select_tau_correlation(signal, taus, filter.ensemble(taus.front(), input.preset_choice()),
                                 filter.extract_options(), trim_policy());
      report << "# method=correlation best_tau=" << r.best_tau
             << "\ntau,correlation,abs_correlation,degenerate\n";
      for (std::size_t k = 0; k < r.tau_grid.size(); ++k) {
        report << r.tau_grid[k] << ',' << format_real(r.correlations[k]) << ','
               << format_real(std::abs(r.correlations[k])) << ','
               << (r.degenerate[k] ? 1 : 0) << '\n';
      }
    }
    emit(out, stdout_stream, [&](std::ostream& os) { os << report.str(); });
  }
};

struct StatCommand {
  InputOptions input;
  FilterOptions filter;
  int tau = 0;
  std::string stat = "ave";
  std::string out;

  void attach(CLI::App& app) {
    input.attach(app);
    filter.attach_patch(app);
    app.add_option("--tau", tau, "size parameter")->required()->check(CLI::PositiveNumber);
    app.add_option("--stat", stat, "ave|mean-envelope|sd|range|median|lower|upper")
        ->check(CLI::IsMember({"ave", "mean-envelope", "sd", "range", "median", "lower", "upper"}));
    app.add_option("--out", out, "output CSV of t,value rows (default: stdout)");
  }

  void run(std::ostream& stdout_stream) {
    const Signal signal = input.load();
    const StatKind kind = kStats.at(stat);
    const OuterChoice outer = filter.outer.value_or(OuterChoice::Mean);
    PatchSpec patch{filter.shape, tau, filter.gamma};
    std::vector<double> series;
    if (outer == OuterChoice::None) {
      series = patch_series(signal, patch, kind);
    } else {
      series = ensemble_series(
          signal, EnsembleSpec{patch, kind,
                               outer == OuterChoice::Median ? Outer::Median : Outer::Mean});
    }
    const Signal result = signal.with_values(std::move(series));
    emit(out, stdout_stream, [&](std::ostream& os) { write_signal_csv(result, os); });
  }
};

// ---------------------------------------------------------------------------
// Config file: "key = value" lines, '#' comments. Keys are long flag names of
// the chosen command. Flags given on the command line win.

std::vector<std::string> apply_config(std::vector<std::string> args) {
  std::string path;
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
  if (path.empty()) return args;

  std::ifstream in(path);
  if (!in) throw ParseError("cannot open config file " + path);
  auto given = [&](const std::string& key) {
    const std::string flag = "--" + key;
    return std::any_of(args.begin(), args.end(), [&](const std::string& a) {
      return a == flag || a.rfind(flag + "=", 0) == 0;
    });
  };
  std::vector<std::string> extra;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw UsageError(path + ":" + std::to_string(line_no) + ": expected key=value");
    auto strip = [](std::string s) {
      const auto a = s.find_first_not_of(" \t\r");
      const auto b = s.find_last_not_of(" \t\r");
      return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
    };
    const std::string key = strip(line.substr(0, eq));
    const std::string value = strip(line.substr(eq + 1));
    if (key.empty())
      throw UsageError(path + ":" + std::to_string(line_no) + ": empty key");
    if (!given(key)) {
      extra.push_back("--" + key);
      extra.push_back(value);
    }
  }
  // Command name stays first.
  if (!args.empty()) args.insert(args.begin() + 1, extra.begin(), extra.end());
  return args;
}

}  // namespace

int dispatch(const std::vector<std::string>& raw_args, std::ostream& out,
             std::ostream& err) {
  CLI::App app{"ept - ensemble patch transform toolkit", "ept"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "show help for all commands");

  GenCommand gen;
  DecomposeCommand decompose;
  MapCommand map;
  SelectCommand select;
  StatCommand stat;

  gen.attach(*app.add_subcommand("gen", "write a built-in test signal"));
  decompose.attach(*app.add_subcommand("decompose", "iterative ensemble-patch decomposition"));
  map.attach(*app.add_subcommand("map", "multiscale centrality/dispersion map"));
  select.attach(*app.add_subcommand("select-tau", "choose the size parameter"));
  auto* stat_cmd = app.add_subcommand("stat", "single patch or ensemble statistic series");
  stat_cmd->alias("ept-stat");
  stat.attach(*stat_cmd);

  try {
    std::vector<std::string> args = apply_config(raw_args);
    std::reverse(args.begin(), args.end());
    app.parse(args);

    const auto* cmd = app.get_subcommands().front();
    const std::string name = cmd->get_name();
    if (name == "gen") gen.run(out);
    else if (name == "decompose") decompose.run(out);
    else if (name == "map") map.run(out);
    else if (name == "select-tau") select.run(out);
    else stat.run(out);
    return kExitOk;
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "ept: " << e.what() << '\n';
    return kExitUsage;
  } catch (const UsageError& e) {
    err << "ept: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "ept: error: " << e.what() << '\n';
    return kExitFailure;
  }
}

}  // namespace ept::cli
