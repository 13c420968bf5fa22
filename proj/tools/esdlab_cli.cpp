// esdlab command-line tool: Choi-state dynamics export, ESD transition-time
// search, parameter sweeps, concurrence-factorization checks and n-qubit
// separability certificates. Talks to the library exclusively through the C
// API in esdlab.h.

#include "esdlab.h"

#include <CLI11.hpp>

#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <thread>
#include <variant>
#include <vector>

namespace {

constexpr int kExitInvalidInput = 2;
constexpr int kExitToleranceFailure = 3;

struct Options {
  std::string config_path;
  std::string family = "thermal";
  double gamma = 1.0;
  std::optional<double> n_mean;
  std::optional<double> n_th;
  double r = 0.0;
  double phi = 0.0;
  double omega = 0.0;
  double g_scale = 1.0;
  double g_power = 1.0;

  double t_start = 0.01;
  double t_stop = 10.0;
  int t_points = 50;
  std::string grid = "lin";

  double horizon = 50.0;
  double precision = 1e-8;

  int d = 2;
  int samples = 200;
  int n_qubits = 3;
  std::uint64_t seed = 12345;
  double tol = 1e-9;

  std::string axis = "n-mean";
  double axis_start = 0.1;
  double axis_stop = 1.0;
  int axis_points = 5;
  std::string axis_grid = "lin";

  std::string out = "-";
  std::string format = "csv";
  int workers = 1;
};

// A table cell: a number or a literal string (e.g. "never").
struct Cell {
  bool is_number = true;
  double number = 0.0;
  std::string text;

  Cell(double v) : number(v) {}  // NOLINT(google-explicit-constructor)
  Cell(std::string s) : is_number(false), text(std::move(s)) {}
};

using Row = std::vector<Cell>;

std::string format_number(double v, int significant) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*g", significant, v);
  return buf;
}

std::string json_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  return out;
}

class OutputTable {
 public:
  std::vector<std::pair<std::string, std::string>> config;  // values preformatted
  std::vector<std::string> columns;
  std::vector<Row> rows;

  void add_config(const std::string& key, const std::string& value) {
    config.emplace_back(key, value);
  }
  void add_config(const std::string& key, double value) {
    config.emplace_back(key, format_number(value, 17));
  }
  void add_config(const std::string& key, std::uint64_t value) {
    config.emplace_back(key, std::to_string(value));
  }

  std::string to_csv() const {
    std::string s;
    for (std::size_t c = 0; c < columns.size(); ++c) {
      if (c) s.push_back(',');
      s += columns[c];
    }
    s.push_back('\n');
    for (const Row& row : rows) {
      for (std::size_t c = 0; c < row.size(); ++c) {
        if (c) s.push_back(',');
        s += row[c].is_number ? format_number(row[c].number, 12) : row[c].text;
      }
      s.push_back('\n');
    }
    return s;
  }

  std::string to_json() const {
    std::string s = "{\n  \"config\": {";
    for (std::size_t k = 0; k < config.size(); ++k) {
      if (k) s.push_back(',');
      s += "\n    \"" + json_escape(config[k].first) + "\": \"" +
           json_escape(config[k].second) + "\"";
    }
    s += "\n  },\n  \"columns\": [";
    for (std::size_t c = 0; c < columns.size(); ++c) {
      if (c) s += ", ";
      s += "\"" + json_escape(columns[c]) + "\"";
    }
    s += "],\n  \"rows\": [";
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r) s.push_back(',');
      s += "\n    [";
      for (std::size_t c = 0; c < rows[r].size(); ++c) {
        if (c) s += ", ";
        if (rows[r][c].is_number)
          s += format_number(rows[r][c].number, 17);
        else
          s += "\"" + json_escape(rows[r][c].text) + "\"";
      }
      s += "]";
    }
    s += "\n  ]\n}\n";
    return s;
  }
};

int write_output(const OutputTable& table, const Options& opt) {
  const std::string payload = (opt.format == "json") ? table.to_json() : table.to_csv();
  if (opt.out == "-") {
    std::cout << payload;
    return 0;
  }
  std::ofstream f(opt.out, std::ios::binary | std::ios::trunc);
  if (!f) {
    std::cerr << "error: cannot open output path: " << opt.out << "\n";
    return kExitInvalidInput;
  }
  f << payload;
  if (!f.good()) {
    std::cerr << "error: failed writing output path: " << opt.out << "\n";
    return kExitInvalidInput;
  }
  return 0;
}

using ChannelPtr = std::unique_ptr<esdlab_channel, decltype(&esdlab_channel_free)>;

// Builds the channel handle for the configured family, enforcing the
// occupation relation when both --n-mean and --n-th are given.
ChannelPtr make_channel(const Options& opt, std::string& err) {
  esdlab_channel* raw = nullptr;
  esdlab_status st = ESDLAB_OK;

  if (opt.family == "thermal") {
    if (opt.r != 0.0) {
      err = "thermal family requires r = 0 (use --family squeezed)";
      return {nullptr, &esdlab_channel_free};
    }
    double n = 0.0;
    if (opt.n_mean && opt.n_th && std::abs(*opt.n_mean - *opt.n_th) > 1e-12) {
      err = "violated relation 2N+1 = cosh(2r)(2N_th+1): at r = 0, N must equal N_th";
      return {nullptr, &esdlab_channel_free};
    }
    if (opt.n_mean)
      n = *opt.n_mean;
    else if (opt.n_th)
      n = *opt.n_th;
    st = esdlab_channel_thermal(opt.gamma, n, &raw);
  } else if (opt.family == "squeezed") {
    if (!opt.n_th) {
      err = "squeezed family requires --n-th";
      return {nullptr, &esdlab_channel_free};
    }
    if (opt.n_mean) {
      const double implied =
          0.5 * (std::cosh(2.0 * opt.r) * (2.0 * *opt.n_th + 1.0) - 1.0);
      if (std::abs(*opt.n_mean - implied) > 1e-9) {
        err = "violated relation 2N+1 = cosh(2r)(2N_th+1): --n-mean is inconsistent "
              "with --n-th and --r";
        return {nullptr, &esdlab_channel_free};
      }
    }
    st = esdlab_channel_squeezed(opt.gamma, *opt.n_th, opt.r, opt.phi, opt.omega, &raw);
  } else if (opt.family == "qnd") {
    st = esdlab_channel_qnd(opt.omega, opt.g_scale, opt.g_power, &raw);
  } else {
    err = "unknown family: " + opt.family + " (expected thermal|squeezed|qnd)";
    return {nullptr, &esdlab_channel_free};
  }

  if (st != ESDLAB_OK) {
    err = esdlab_last_error();
    return {nullptr, &esdlab_channel_free};
  }
  return {raw, &esdlab_channel_free};
}

std::vector<double> make_grid(double start, double stop, int points,
                              const std::string& kind, std::string& err) {
  if (points < 2) {
    err = "grid needs at least 2 points";
    return {};
  }
  if (!(stop > start)) {
    err = "grid must be strictly increasing (stop > start)";
    return {};
  }
  std::vector<double> g(points);
  if (kind == "geo") {
    if (!(start > 0.0)) {
      err = "geometric grid requires start > 0";
      return {};
    }
    const double ratio = std::pow(stop / start, 1.0 / (points - 1));
    for (int k = 0; k < points; ++k) g[k] = start * std::pow(ratio, k);
  } else if (kind == "lin") {
    const double step = (stop - start) / (points - 1);
    for (int k = 0; k < points; ++k) g[k] = start + step * k;
  } else {
    err = "unknown grid kind: " + kind + " (expected lin|geo)";
    return {};
  }
  g.back() = stop;
  return g;
}

void echo_family_config(OutputTable& table, const Options& opt) {
  table.add_config("family", opt.family);
  table.add_config("gamma", opt.gamma);
  if (opt.n_mean) table.add_config("n_mean", *opt.n_mean);
  if (opt.n_th) table.add_config("n_th", *opt.n_th);
  table.add_config("r", opt.r);
  table.add_config("phi", opt.phi);
  table.add_config("omega", opt.omega);
  if (opt.family == "qnd") {
    table.add_config("g_scale", opt.g_scale);
    table.add_config("g_power", opt.g_power);
  }
}

void append_report_rows(OutputTable& table, const esdlab_esd_report& rep) {
  if (rep.found)
    table.rows.push_back({Cell("transition_time"), Cell(rep.transition_time)});
  else
    table.rows.push_back({Cell("transition_time"), Cell(std::string("never"))});
  table.rows.push_back({Cell("horizon"), Cell(rep.horizon)});
  table.rows.push_back({Cell("bracket_low"), Cell(rep.bracket_low)});
  table.rows.push_back({Cell("bracket_high"), Cell(rep.bracket_high)});
  table.rows.push_back({Cell("min_pt_low"), Cell(rep.min_pt_low)});
  table.rows.push_back({Cell("min_pt_high"), Cell(rep.min_pt_high)});
  table.rows.push_back({Cell("min_pt_at_horizon"), Cell(rep.min_pt_at_horizon)});
  table.rows.push_back({Cell("iterations"), Cell(double(rep.iterations))});
  if (rep.has_sinh_form)
    table.rows.push_back({Cell("closed_form_sinh"), Cell(rep.sinh_form_time)});
  if (rep.has_block_form)
    table.rows.push_back({Cell("closed_form_block"), Cell(rep.block_form_time)});
}

int cmd_choi_dynamics(const Options& opt) {
  std::string err;
  auto ch = make_channel(opt, err);
  if (!ch) {
    std::cerr << "error: " << err << "\n";
    return kExitInvalidInput;
  }
  auto grid = make_grid(opt.t_start, opt.t_stop, opt.t_points, opt.grid, err);
  if (grid.empty()) {
    std::cerr << "error: " << err << "\n";
    return kExitInvalidInput;
  }

  OutputTable table;
  table.add_config("command", std::string("choi-dynamics"));
  echo_family_config(table, opt);
  table.add_config("t_start", opt.t_start);
  table.add_config("t_stop", opt.t_stop);
  table.add_config("t_points", double(opt.t_points));
  table.add_config("grid", opt.grid);
  table.columns = {"t", "min_pt_eigenvalue", "negativity", "concurrence"};

  for (double t : grid) {
    esdlab_choi_point p{};
    if (esdlab_choi_dynamics(ch.get(), t, &p) != ESDLAB_OK) {
      std::cerr << "error: " << esdlab_last_error() << "\n";
      return kExitInvalidInput;
    }
    table.rows.push_back({Cell(p.t), Cell(p.min_pt_eigenvalue), Cell(p.negativity),
                          Cell(p.concurrence)});
  }
  return write_output(table, opt);
}

int cmd_esd_time(const Options& opt) {
  std::string err;
  auto ch = make_channel(opt, err);
  if (!ch) {
    std::cerr << "error: " << err << "\n";
    return kExitInvalidInput;
  }
  esdlab_esd_report rep{};
  if (esdlab_esd_time(ch.get(), opt.horizon, opt.precision, &rep) != ESDLAB_OK) {
    std::cerr << "error: " << esdlab_last_error() << "\n";
    return kExitInvalidInput;
  }

  OutputTable table;
  table.add_config("command", std::string("esd-time"));
  echo_family_config(table, opt);
  table.add_config("horizon", opt.horizon);
  table.add_config("precision", opt.precision);
  table.columns = {"key", "value"};
  append_report_rows(table, rep);
  return write_output(table, opt);
}

int cmd_sweep(const Options& opt) {
  std::string err;
  auto grid = make_grid(opt.axis_start, opt.axis_stop, opt.axis_points,
                        opt.axis_grid, err);
  if (grid.empty()) {
    std::cerr << "error: " << err << "\n";
    return kExitInvalidInput;
  }
  if (opt.axis != "n-mean" && opt.axis != "n-th" && opt.axis != "r" &&
      opt.axis != "gamma") {
    std::cerr << "error: unknown sweep axis: " << opt.axis
              << " (expected n-mean|n-th|r|gamma)\n";
    return kExitInvalidInput;
  }

  // Validate the base configuration once before spawning workers.
  {
    Options probe = opt;
    if (opt.axis == "n-mean") probe.n_mean = grid.front();
    if (opt.axis == "n-th") probe.n_th = grid.front();
    if (opt.axis == "r") probe.r = grid.front();
    if (opt.axis == "gamma") probe.gamma = grid.front();
    auto ch = make_channel(probe, err);
    if (!ch) {
      std::cerr << "error: " << err << "\n";
      return kExitInvalidInput;
    }
  }

  const int points = static_cast<int>(grid.size());
  std::vector<esdlab_esd_report> reports(points);
  std::vector<int> statuses(points, 0);
  std::atomic<int> next{0};
  auto worker = [&] {
    for (int i; (i = next.fetch_add(1)) < points;) {
      Options local = opt;
      if (opt.axis == "n-mean") local.n_mean = grid[i];
      if (opt.axis == "n-th") local.n_th = grid[i];
      if (opt.axis == "r") local.r = grid[i];
      if (opt.axis == "gamma") local.gamma = grid[i];
      std::string werr;
      auto ch = make_channel(local, werr);
      if (!ch) {
        statuses[i] = 1;
        continue;
      }
      if (esdlab_esd_time(ch.get(), opt.horizon, opt.precision, &reports[i]) !=
          ESDLAB_OK)
        statuses[i] = 1;
    }
  };
  const int nthreads = std::max(1, std::min(opt.workers, points));
  std::vector<std::thread> pool;
  for (int k = 0; k < nthreads; ++k) pool.emplace_back(worker);
  for (auto& th : pool) th.join();

  for (int i = 0; i < points; ++i) {
    if (statuses[i]) {
      std::cerr << "error: sweep point " << i << " (value "
                << format_number(grid[i], 12) << ") failed\n";
      return kExitInvalidInput;
    }
  }

  OutputTable table;
  table.add_config("command", std::string("sweep"));
  echo_family_config(table, opt);
  table.add_config("axis", opt.axis);
  table.add_config("axis_start", opt.axis_start);
  table.add_config("axis_stop", opt.axis_stop);
  table.add_config("axis_points", double(opt.axis_points));
  table.add_config("axis_grid", opt.axis_grid);
  table.add_config("horizon", opt.horizon);
  table.add_config("precision", opt.precision);
  table.columns = {"axis_value", "transition_time", "bracket_low", "bracket_high",
                   "min_pt_at_horizon", "iterations"};
  for (int i = 0; i < points; ++i) {
    const auto& rep = reports[i];
    Row row;
    row.push_back(Cell(grid[i]));
    if (rep.found)
      row.push_back(Cell(rep.transition_time));
    else
      row.push_back(Cell(std::string("never")));
    row.push_back(Cell(rep.bracket_low));
    row.push_back(Cell(rep.bracket_high));
    row.push_back(Cell(rep.min_pt_at_horizon));
    row.push_back(Cell(double(rep.iterations)));
    table.rows.push_back(std::move(row));
  }
  return write_output(table, opt);
}

int cmd_factorization_check(const Options& opt) {
  if (opt.d < 2 || opt.d > 4) {
    std::cerr << "error: --d must lie in {2, 3, 4}\n";
    return kExitInvalidInput;
  }
  if (opt.samples < 1) {
    std::cerr << "error: --samples must be >= 1\n";
    return kExitInvalidInput;
  }
  std::string err;
  auto ch = make_channel(opt, err);
  if (!ch) {
    std::cerr << "error: " << err << "\n";
    return kExitInvalidInput;
  }

  // Evaluate at t_start (single-instant check).
  std::vector<double> residuals(opt.samples);
  double worst = 0.0;
  if (esdlab_factorization_residuals(ch.get(), opt.t_start, opt.d, opt.samples,
                                     opt.seed, residuals.data(),
                                     &worst) != ESDLAB_OK) {
    std::cerr << "error: " << esdlab_last_error() << "\n";
    return kExitInvalidInput;
  }

  OutputTable table;
  table.add_config("command", std::string("factorization-check"));
  echo_family_config(table, opt);
  table.add_config("t", opt.t_start);
  table.add_config("d", double(opt.d));
  table.add_config("samples", double(opt.samples));
  table.add_config("seed", opt.seed);
  table.add_config("tol", opt.tol);
  table.add_config("max_residual", worst);
  table.columns = {"sample", "residual"};
  for (int k = 0; k < opt.samples; ++k)
    table.rows.push_back({Cell(double(k)), Cell(residuals[k])});
  table.rows.push_back({Cell(std::string("max")), Cell(worst)});

  const int rc = write_output(table, opt);
  if (rc != 0) return rc;
  if (worst > opt.tol) {
    std::cerr << "factorization-check: max residual " << format_number(worst, 12)
              << " exceeds tolerance " << format_number(opt.tol, 12) << "\n";
    return kExitToleranceFailure;
  }
  return 0;
}

int cmd_nqubit_cert(const Options& opt) {
  if (opt.n_qubits < 2 || opt.n_qubits > 6) {
    std::cerr << "error: --n-qubits must lie in [2, 6]\n";
    return kExitInvalidInput;
  }
  std::string err;
  auto ch = make_channel(opt, err);
  if (!ch) {
    std::cerr << "error: " << err << "\n";
    return kExitInvalidInput;
  }

  esdlab_esd_report rep{};
  double per_state[ESDLAB_NQUBIT_STATES] = {};
  double one_sided = 0.0;
  int breaking = 0;
  if (esdlab_nqubit_certificate(ch.get(), opt.n_qubits, opt.horizon, opt.precision,
                                opt.seed, &rep, per_state, &one_sided,
                                &breaking) != ESDLAB_OK) {
    std::cerr << "error: " << esdlab_last_error() << "\n";
    return kExitInvalidInput;
  }

  OutputTable table;
  table.add_config("command", std::string("nqubit-cert"));
  echo_family_config(table, opt);
  table.add_config("n_qubits", double(opt.n_qubits));
  table.add_config("horizon", opt.horizon);
  table.add_config("precision", opt.precision);
  table.add_config("seed", opt.seed);
  table.columns = {"key", "value"};
  append_report_rows(table, rep);
  if (rep.found) {
    table.rows.push_back({Cell("channel_breaking"), Cell(double(breaking))});
    table.rows.push_back({Cell("ghz_one_sided_min_pt_at_0.9t"), Cell(one_sided)});
    static const char* names[ESDLAB_NQUBIT_STATES] = {
        "ghz", "w", "random1", "random2", "random3", "random4", "random5"};
    for (int k = 0; k < ESDLAB_NQUBIT_STATES; ++k)
      table.rows.push_back(
          {Cell(std::string(names[k]) + "_max_negativity"), Cell(per_state[k])});
  }
  return write_output(table, opt);
}

}  // namespace

// Plain key=value configuration file ('#' starts a comment). Values apply
// only where the matching flag was not given on the command line.
int apply_config_file(const Options& parsed, CLI::App* sub, Options& opt) {
  std::ifstream f(parsed.config_path);
  if (!f) {
    std::cerr << "error: cannot read config file: " << parsed.config_path << "\n";
    return kExitInvalidInput;
  }
  auto normalize = [](std::string s) {
    for (char& c : s)
      if (c == '_') c = '-';
    return s;
  };
  auto trim = [](std::string s) {
    const auto a = s.find_first_not_of(" \t\r");
    const auto b = s.find_last_not_of(" \t\r");
    return (a == std::string::npos) ? std::string() : s.substr(a, b - a + 1);
  };
  auto flag_given = [&](const std::string& flag) {
    const CLI::Option* o = sub->get_option_no_throw(flag);
    return o != nullptr && o->count() > 0;
  };

  std::string line;
  int lineno = 0;
  while (std::getline(f, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      std::cerr << "error: " << parsed.config_path << ":" << lineno
                << ": expected key=value\n";
      return kExitInvalidInput;
    }
    const std::string key = normalize(trim(line.substr(0, eq)));
    const std::string value = trim(line.substr(eq + 1));
    try {
      if (key == "family") {
        if (!flag_given("--family")) opt.family = value;
      } else if (key == "gamma") {
        if (!flag_given("--gamma")) opt.gamma = std::stod(value);
      } else if (key == "n-mean") {
        if (!flag_given("--n-mean")) opt.n_mean = std::stod(value);
      } else if (key == "n-th") {
        if (!flag_given("--n-th")) opt.n_th = std::stod(value);
      } else if (key == "r") {
        if (!flag_given("--r")) opt.r = std::stod(value);
      } else if (key == "phi") {
        if (!flag_given("--phi")) opt.phi = std::stod(value);
      } else if (key == "omega") {
        if (!flag_given("--omega")) opt.omega = std::stod(value);
      } else if (key == "g-scale") {
        if (!flag_given("--g-scale")) opt.g_scale = std::stod(value);
      } else if (key == "g-power") {
        if (!flag_given("--g-power")) opt.g_power = std::stod(value);
      } else if (key == "t-start") {
        if (!flag_given("--t-start")) opt.t_start = std::stod(value);
      } else if (key == "t-stop") {
        if (!flag_given("--t-stop")) opt.t_stop = std::stod(value);
      } else if (key == "t-points") {
        if (!flag_given("--t-points")) opt.t_points = std::stoi(value);
      } else if (key == "grid") {
        if (!flag_given("--grid")) opt.grid = value;
      } else if (key == "horizon") {
        if (!flag_given("--horizon")) opt.horizon = std::stod(value);
      } else if (key == "precision") {
        if (!flag_given("--precision")) opt.precision = std::stod(value);
      } else if (key == "d") {
        if (!flag_given("--d")) opt.d = std::stoi(value);
      } else if (key == "samples") {
        if (!flag_given("--samples")) opt.samples = std::stoi(value);
      } else if (key == "n-qubits") {
        if (!flag_given("--n-qubits")) opt.n_qubits = std::stoi(value);
      } else if (key == "seed") {
        if (!flag_given("--seed")) opt.seed = std::stoull(value);
      } else if (key == "tol") {
        if (!flag_given("--tol")) opt.tol = std::stod(value);
      } else if (key == "axis") {
        if (!flag_given("--axis")) opt.axis = value;
      } else if (key == "axis-start") {
        if (!flag_given("--axis-start")) opt.axis_start = std::stod(value);
      } else if (key == "axis-stop") {
        if (!flag_given("--axis-stop")) opt.axis_stop = std::stod(value);
      } else if (key == "axis-points") {
        if (!flag_given("--axis-points")) opt.axis_points = std::stoi(value);
      } else if (key == "axis-grid") {
        if (!flag_given("--axis-grid")) opt.axis_grid = value;
      } else if (key == "out") {
        if (!flag_given("--out")) opt.out = value;
      } else if (key == "format") {
        if (!flag_given("--format")) opt.format = value;
      } else if (key == "workers") {
        if (!flag_given("--workers")) opt.workers = std::stoi(value);
      } else {
        std::cerr << "error: " << parsed.config_path << ":" << lineno
                  << ": unknown key: " << key << "\n";
        return kExitInvalidInput;
      }
    } catch (const std::exception&) {
      std::cerr << "error: " << parsed.config_path << ":" << lineno
                << ": bad value for " << key << ": " << value << "\n";
      return kExitInvalidInput;
    }
  }
  if (opt.format != "csv" && opt.format != "json") {
    std::cerr << "error: unknown format: " << opt.format << "\n";
    return kExitInvalidInput;
  }
  return 0;
}

int main(int argc, char** argv) {
  CLI::App app{"esdlab — entanglement sudden death under local qubit baths"};
  app.require_subcommand(1);

  Options opt;
  auto add_family_flags = [&](CLI::App* sub) {
    sub->add_option("--config", opt.config_path,
                    "key=value configuration file; flags override");
    sub->add_option("--family", opt.family, "bath family: thermal|squeezed|qnd");
    sub->add_option("--gamma", opt.gamma, "decay rate (> 0)");
    sub->add_option("--n-mean", opt.n_mean, "effective mean occupation N");
    sub->add_option("--n-th", opt.n_th, "thermal photon number N_th");
    sub->add_option("--r", opt.r, "squeezing magnitude (>= 0)");
    sub->add_option("--phi", opt.phi, "squeezing phase (radians)");
    sub->add_option("--omega", opt.omega, "free-rotation rate");
    sub->add_option("--g-scale", opt.g_scale, "QND exponent scale in g(t) = scale*t^power");
    sub->add_option("--g-power", opt.g_power, "QND exponent power");
    sub->add_option("--out", opt.out, "output path ('-' for stdout)");
    sub->add_option("--format", opt.format, "output format: csv|json")
        ->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--seed", opt.seed, "random seed");
    sub->add_option("--workers", opt.workers, "worker threads for sweeps")
        ->check(CLI::PositiveNumber);
  };

  CLI::App* dyn = app.add_subcommand("choi-dynamics",
                                     "Choi-state diagnostics over a time grid");
  add_family_flags(dyn);
  dyn->add_option("--t-start", opt.t_start, "first grid time");
  dyn->add_option("--t-stop", opt.t_stop, "last grid time");
  dyn->add_option("--t-points", opt.t_points, "grid size (>= 2)");
  dyn->add_option("--grid", opt.grid, "grid spacing: lin|geo")
      ->check(CLI::IsMember({"lin", "geo"}));

  CLI::App* esdt = app.add_subcommand("esd-time",
                                      "separability transition time of the Choi state");
  add_family_flags(esdt);
  esdt->add_option("--horizon", opt.horizon, "largest time scanned");
  esdt->add_option("--precision", opt.precision, "bisection bracket width");

  CLI::App* sweep = app.add_subcommand("sweep", "ESD time over a parameter grid");
  add_family_flags(sweep);
  sweep->add_option("--horizon", opt.horizon, "largest time scanned");
  sweep->add_option("--precision", opt.precision, "bisection bracket width");
  sweep->add_option("--axis", opt.axis, "sweep axis: n-mean|n-th|r|gamma");
  sweep->add_option("--axis-start", opt.axis_start, "first axis value");
  sweep->add_option("--axis-stop", opt.axis_stop, "last axis value");
  sweep->add_option("--axis-points", opt.axis_points, "axis grid size (>= 2)");
  sweep->add_option("--axis-grid", opt.axis_grid, "axis spacing: lin|geo")
      ->check(CLI::IsMember({"lin", "geo"}));

  CLI::App* fact = app.add_subcommand(
      "factorization-check",
      "concurrence factorization residuals on random pure d x 2 states");
  add_family_flags(fact);
  fact->add_option("--t-start", opt.t_start, "evolution time");
  fact->add_option("--d", opt.d, "first-factor dimension (2, 3 or 4)");
  fact->add_option("--samples", opt.samples, "number of random states");
  fact->add_option("--tol", opt.tol, "residual tolerance (exit 3 when exceeded)");

  CLI::App* cert = app.add_subcommand("nqubit-cert",
                                      "n-qubit full-separability certificate");
  add_family_flags(cert);
  cert->add_option("--horizon", opt.horizon, "largest time scanned");
  cert->add_option("--precision", opt.precision, "bisection bracket width");
  cert->add_option("--n-qubits", opt.n_qubits, "number of qubits (2..6)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInvalidInput;
  }

  CLI::App* active = nullptr;
  for (CLI::App* sub : {dyn, esdt, sweep, fact, cert})
    if (sub->parsed()) active = sub;
  if (!active) return kExitInvalidInput;

  if (!opt.config_path.empty()) {
    const int rc = apply_config_file(opt, active, opt);
    if (rc != 0) return rc;
  }

  try {
    if (active == dyn) return cmd_choi_dynamics(opt);
    if (active == esdt) return cmd_esd_time(opt);
    if (active == sweep) return cmd_sweep(opt);
    if (active == fact) return cmd_factorization_check(opt);
    if (active == cert) return cmd_nqubit_cert(opt);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalidInput;
  }
  return kExitInvalidInput;
}
