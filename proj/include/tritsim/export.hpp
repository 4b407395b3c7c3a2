#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tritsim/sim.hpp"

namespace tritsim {

// Waveform serialization. Both formats are deterministic: identical
// waveforms serialize to identical bytes (no timestamps, no host data).
//
// VCD encoding of a ternary net: a 2-bit vector (b00 / b01 / b10 / bxx for
// 0 / H / 1 / X) plus a companion real variable `<net>__level` carrying
// 0, 0.5 or 1 (-1 while unknown) for viewers with analog panes.

struct VcdConfig {
  std::string timescale_label = "1ns";
  // Net-name patterns with '*' wildcards, e.g. "q*" or "lat/*".
  // Empty selects every net. Patterns that match nothing are reported
  // through `warnings` but do not fail the export.
  std::vector<std::string> net_selection;
};

bool glob_match(std::string_view pattern, std::string_view name);

std::string export_vcd(const Waveform& waveform, const VcdConfig& config = {},
                       std::vector<std::string>* warnings = nullptr);

// CSV: header `time,<net>,...`, one row per tick, levels as 0/H/1/X.
std::string export_csv(const Waveform& waveform,
                       const std::vector<std::string>& net_selection = {},
                       std::vector<std::string>* warnings = nullptr);

// Truth-table extraction by exhaustive structural simulation.

enum class TableMode {
  Combinational,  // apply inputs to the held initial state and settle
  Clocked,        // hold inputs through a clock-low phase, then raise clk
};

struct TruthTableOptions {
  TableMode mode = TableMode::Combinational;
  std::string clock_port = "clk";           // Clocked mode only
  std::map<std::string, LogicLevel> init;   // initial net values per row
  SimTime phase_ticks = 8;                  // Clocked: length of the low phase
  SimTime max_settle = 64;
};

struct TruthRow {
  std::vector<LogicLevel> inputs;   // one per (non-clock) input port
  std::vector<LogicLevel> outputs;  // settled levels; empty when oscillating
  bool oscillating = false;
  SimTime settle_ticks = 0;  // ticks until the state stopped changing
};

struct TruthTable {
  std::vector<std::string> input_names;  // clock excluded in Clocked mode
  std::vector<std::string> output_names;
  std::vector<bool> input_ternary;
  std::vector<bool> output_ternary;
  std::vector<TruthRow> rows;
};

TruthTable extract_truth_table(const FlatNetlist& netlist,
                               const TruthTableOptions& options = {});

// Human-readable rendering. Ternary levels print as trit digits, binary
// levels as Low/High; oscillating rows print OSC. `clock_display`, when
// set, adds a constant clock column ("^" for an edge, "High" for a level).
std::string render_truth_table(const TruthTable& table,
                               std::optional<std::string> clock_display = {});

// Same cell values as render_truth_table, as CSV with a header row.
std::string render_truth_csv(const TruthTable& table);

}  // namespace tritsim
