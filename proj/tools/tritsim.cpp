// tritsim: unit-delay simulator for ternary sequential logic.
//
// Verbs:
//   simulate    run a netlist against a stimulus file, write VCD or CSV
//   truthtable  exhaustive truth-table extraction of a netlist or cell
//   check       built-in conformance suite for the standard cells
//   power       static-power proxy (voltage divisions per tick)
//   cells       print the built-in standard cells as netlist text
//
// Exit codes: 0 success, 1 failed checks, 2 usage errors, 3 netlist or
// stimulus errors (diagnostics with line:column spans go to stderr).

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "tritsim/behavior.hpp"
#include "tritsim/conformance.hpp"
#include "tritsim/export.hpp"
#include "tritsim/metrics.hpp"
#include "tritsim/parser.hpp"
#include "tritsim/sim.hpp"
#include "tritsim/stdcells.hpp"

#if defined(_WIN32)
#include <io.h>
#define TRITSIM_ISATTY(fd) _isatty(fd)
#else
#include <unistd.h>
#define TRITSIM_ISATTY(fd) isatty(fd)
#endif

namespace {

using namespace tritsim;

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitUsage = 2;
constexpr int kExitBadInput = 3;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

bool color_enabled() {
  const char* env = std::getenv("TRITSIM_COLOR");
  if (env != nullptr && std::string(env) == "0") return false;
  return TRITSIM_ISATTY(1) != 0;
}

std::string paint(const std::string& text, const char* code) {
  static const bool color = color_enabled();
  if (!color) return text;
  return std::string("\x1b[") + code + "m" + text + "\x1b[0m";
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_output(const std::string& path, const std::string& bytes) {
  if (path.empty() || path == "-") {
    std::cout << bytes;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot open '" + path + "' for writing");
  out << bytes;
}

// A target is either a built-in cell name or a netlist file path.
Circuit load_target(const std::string& target) {
  StdCell cell;
  if (std_cell_from_name(target, cell)) return build_standard_cell(cell);
  const std::string text = read_file(target);
  ParseResult parsed = parse(text);
  if (!parsed.ok()) {
    for (const ParseError& e : parsed.errors) {
      std::cerr << target << ":" << format_error(e) << "\n";
    }
    throw InputError(std::to_string(parsed.errors.size()) + " error(s) in '" + target + "'");
  }
  return std::move(parsed.circuit);
}

void print_warnings(const std::vector<std::string>& warnings) {
  for (const std::string& w : warnings) std::cerr << "warning: " << w << "\n";
}

// Control levels that store a trit through the latch's set pair.
std::pair<LogicLevel, LogicLevel> control_pair_for(Trit value) {
  switch (value) {
    case 0: return {LogicLevel::Low, LogicLevel::Low};
    case 1: return {LogicLevel::Low, LogicLevel::High};
    default: return {LogicLevel::High, LogicLevel::High};
  }
}

int cmd_simulate(const std::string& target, const std::string& stimulus_path,
                 std::optional<SimTime> until, SimTime max_ticks, const std::string& format,
                 const std::vector<std::string>& nets, const std::string& out_path) {
  FlatNetlist nl = elaborate(load_target(target));

  Stimulus stim;
  if (!stimulus_path.empty()) stim = parse_stimulus(read_file(stimulus_path));

  SimTime horizon = until.value_or(0);
  if (!until.has_value()) {
    SimTime last_event = 0;
    for (const auto& [at, net, value] : stim.events) last_event = std::max(last_event, at);
    horizon = std::max<SimTime>(last_event + 16, max_ticks);
  }

  Waveform wave = run(nl, stim, horizon);
  std::vector<std::string> warnings;
  std::string bytes;
  if (format == "vcd") {
    VcdConfig config;
    config.net_selection = nets;
    bytes = export_vcd(wave, config, &warnings);
  } else if (format == "csv") {
    bytes = export_csv(wave, nets, &warnings);
  } else {
    throw UsageError("simulate writes vcd or csv, not '" + format + "'");
  }
  print_warnings(warnings);
  write_output(out_path, bytes);
  return kExitOk;
}

int cmd_truthtable(const std::string& target, std::string mode, const std::string& clock,
                   SimTime max_ticks, const std::string& format) {
  Circuit circuit = load_target(target);
  FlatNetlist nl = elaborate(circuit);

  bool has_clock = false;
  for (NetId n : nl.input_nets) has_clock |= nl.net_names[n] == clock;
  if (mode == "auto") mode = has_clock ? "clocked" : "combinational";
  if (mode == "clocked" && !has_clock) {
    throw UsageError("no input named '" + clock + "' for clocked extraction");
  }

  TruthTableOptions opts;
  opts.mode = mode == "clocked" ? TableMode::Clocked : TableMode::Combinational;
  opts.clock_port = clock;
  opts.max_settle = max_ticks;
  TruthTable table = extract_truth_table(nl, opts);

  if (format == "csv") {
    std::cout << render_truth_csv(table);
    return kExitOk;
  }
  if (format != "table") throw UsageError("truthtable writes table or csv, not '" + format + "'");

  std::optional<std::string> clock_display;
  if (opts.mode == TableMode::Clocked) {
    // The level-sensitive cell stores while the clock level is High; the
    // edge-triggered cells store on the rising edge.
    clock_display = target == std_cell_name(StdCell::LevelFFF) ? "High" : "^";
  }
  std::cout << render_truth_table(table, clock_display);
  return kExitOk;
}

int cmd_check(std::vector<std::string> names, const conformance::CheckOptions& options) {
  if (names.empty()) {
    for (StdCell cell : all_std_cells()) names.emplace_back(std_cell_name(cell));
  }
  bool all_pass = true;
  for (const std::string& name : names) {
    StdCell cell;
    if (!std_cell_from_name(name, cell)) {
      throw UsageError("unknown cell '" + name + "' (try: tritsim cells)");
    }
    std::cout << "== " << name << " ==\n";
    for (const conformance::CheckResult& r : conformance::run_cell_checks(cell, options)) {
      all_pass &= r.pass;
      std::cout << (r.pass ? paint("PASS", "32") : paint("FAIL", "31")) << " " << r.name;
      if (!r.detail.empty()) std::cout << ": " << r.detail;
      std::cout << "\n";
    }
  }
  return all_pass ? kExitOk : kExitCheckFailed;
}

int cmd_power(const std::string& name, int hold, SimTime ticks, bool json) {
  StdCell cell;
  if (!std_cell_from_name(name, cell)) {
    throw UsageError("power expects a built-in cell name (try: tritsim cells)");
  }
  const Trit value = static_cast<Trit>(hold);
  const auto [c1, c2] = control_pair_for(value);

  Stimulus stim;
  SimTime start = 0;
  switch (cell) {
    case StdCell::TLatch:
    case StdCell::TLatchNoQbar:
      stim.initial["s1"] = c1;
      stim.initial["s2"] = c2;
      start = 8;
      break;
    case StdCell::LevelFFF:
      stim.initial["clk"] = LogicLevel::Low;
      stim.initial["z1"] = c1;
      stim.initial["z2"] = c2;
      break;
    case StdCell::EdgeFFF:
      stim.initial["clk"] = LogicLevel::Low;
      stim.initial["z1bar"] = c1 == LogicLevel::High ? LogicLevel::Low : LogicLevel::High;
      stim.initial["z2bar"] = c2 == LogicLevel::High ? LogicLevel::Low : LogicLevel::High;
      break;
    case StdCell::DFFF:
    case StdCell::DFFFWithQbar:
      stim.initial["clk"] = LogicLevel::Low;
      stim.initial["d"] = level_of(value);
      break;
  }
  if (start == 0) {
    // One write pulse, then a long hold with the clock Low.
    stim.events.emplace_back(6, "clk", LogicLevel::High);
    stim.events.emplace_back(12, "clk", LogicLevel::Low);
    start = 16;
  }
  if (ticks <= start + 4) throw UsageError("--ticks must exceed " + std::to_string(start + 4));

  FlatNetlist nl = elaborate(build_standard_cell(cell));
  Waveform wave = run(nl, stim, ticks);
  PowerReport report = measure(nl, wave, "q", start);
  std::cout << (json ? render_power_jsonl(report) : render_power_table(report));
  return kExitOk;
}

int cmd_cells(const std::string& name, const std::string& out_path) {
  if (name.empty()) {
    for (StdCell cell : all_std_cells()) std::cout << std_cell_name(cell) << "\n";
    return kExitOk;
  }
  StdCell cell;
  if (!std_cell_from_name(name, cell)) {
    throw UsageError("unknown cell '" + name + "' (try: tritsim cells)");
  }
  write_output(out_path, serialize(build_standard_cell(cell)));
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"tritsim: unit-delay simulator for ternary sequential logic"};
  app.require_subcommand(1);
  app.fallthrough();  // lets --max-ticks and --seed follow the verb

  SimTime max_ticks = 64;
  uint64_t seed = 1;
  app.add_option("--max-ticks", max_ticks, "Settling budget in ticks")->capture_default_str();
  app.add_option("--seed", seed, "Seed for randomized checks")->capture_default_str();

  auto* sim = app.add_subcommand("simulate", "Run a netlist against a stimulus");
  std::string sim_target, sim_stim, sim_format = "vcd", sim_out;
  std::optional<SimTime> sim_until;
  std::vector<std::string> sim_nets;
  sim->add_option("netlist", sim_target, "Netlist file or built-in cell name")->required();
  sim->add_option("--stimulus", sim_stim, "Stimulus CSV file");
  sim->add_option("--until", sim_until, "Ticks to simulate");
  sim->add_option("--format", sim_format, "vcd or csv")->capture_default_str();
  sim->add_option("--nets", sim_nets, "Net name patterns to export ('*' wildcard)");
  sim->add_option("--out,-o", sim_out, "Output file (default stdout)");

  auto* tt = app.add_subcommand("truthtable", "Extract a truth table exhaustively");
  std::string tt_target, tt_mode = "auto", tt_clock = "clk", tt_format = "table";
  tt->add_option("netlist", tt_target, "Netlist file or built-in cell name")->required();
  tt->add_option("--mode", tt_mode, "auto, combinational or clocked")->capture_default_str();
  tt->add_option("--clock", tt_clock, "Clock input name")->capture_default_str();
  tt->add_option("--format", tt_format, "table or csv")->capture_default_str();

  auto* chk = app.add_subcommand("check", "Run the conformance suite for standard cells");
  std::vector<std::string> chk_cells;
  int chk_sequences = 50, chk_cycles = 20;
  chk->add_option("cells", chk_cells, "Cell names (default: all)");
  chk->add_option("--sequences", chk_sequences, "Randomized stimulus sequences")
      ->capture_default_str();
  chk->add_option("--cycles", chk_cycles, "Clock cycles per sequence")->capture_default_str();

  auto* pow = app.add_subcommand("power", "Static-power proxy for a held value");
  std::string pow_cell;
  int pow_hold = 1;
  SimTime pow_ticks = 48;
  bool pow_json = false;
  pow->add_option("cell", pow_cell, "Built-in cell name")->required();
  pow->add_option("--hold", pow_hold, "Trit to hold (0, 1 or 2)")
      ->check(CLI::Range(0, 2))
      ->capture_default_str();
  pow->add_option("--ticks", pow_ticks, "Run length in ticks")->capture_default_str();
  pow->add_flag("--json", pow_json, "JSON-lines output");

  auto* cel = app.add_subcommand("cells", "List or print the built-in cells");
  std::string cel_name, cel_out;
  cel->add_option("cell", cel_name, "Cell name (omit to list all)");
  cel->add_option("--out,-o", cel_out, "Output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (sim->parsed()) {
      return cmd_simulate(sim_target, sim_stim, sim_until, max_ticks, sim_format, sim_nets,
                          sim_out);
    }
    if (tt->parsed()) return cmd_truthtable(tt_target, tt_mode, tt_clock, max_ticks, tt_format);
    if (chk->parsed()) {
      conformance::CheckOptions options;
      options.seed = seed;
      options.sequences = chk_sequences;
      options.cycles = chk_cycles;
      options.max_ticks = max_ticks;
      return cmd_check(chk_cells, options);
    }
    if (pow->parsed()) return cmd_power(pow_cell, pow_hold, pow_ticks, pow_json);
    if (cel->parsed()) return cmd_cells(cel_name, cel_out);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBadInput;
  } catch (const StructuralError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBadInput;
  } catch (const SimError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBadInput;
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
