#include "tritsim/export.hpp"

#include <algorithm>
#include <iomanip>
#include <map>
#include <sstream>

namespace tritsim {

bool glob_match(std::string_view pattern, std::string_view name) {
  if (pattern.empty()) return name.empty();
  if (pattern[0] == '*') {
    for (size_t i = 0; i <= name.size(); ++i) {
      if (glob_match(pattern.substr(1), name.substr(i))) return true;
    }
    return false;
  }
  return !name.empty() && pattern[0] == name[0] &&
         glob_match(pattern.substr(1), name.substr(1));
}

namespace {

std::vector<NetId> select_nets(const Waveform& waveform,
                               const std::vector<std::string>& patterns,
                               std::vector<std::string>* warnings) {
  std::vector<NetId> selected;
  std::vector<bool> taken(waveform.net_names.size(), false);
  if (patterns.empty()) {
    for (NetId n = 0; n < waveform.net_names.size(); ++n) selected.push_back(n);
    return selected;
  }
  for (const std::string& pattern : patterns) {
    bool hit = false;
    for (NetId n = 0; n < waveform.net_names.size(); ++n) {
      if (!taken[n] && glob_match(pattern, waveform.net_names[n])) {
        selected.push_back(n);
        taken[n] = true;
        hit = true;
      } else if (taken[n] && glob_match(pattern, waveform.net_names[n])) {
        hit = true;
      }
    }
    if (!hit && warnings) {
      warnings->push_back("pattern '" + pattern + "' matches no net");
    }
  }
  return selected;
}

// Short printable identifiers: !, ", #, ... then two-character codes.
std::string vcd_id(size_t index) {
  std::string id;
  do {
    id.insert(id.begin(), static_cast<char>('!' + index % 94));
    index = index / 94;
  } while (index-- > 0);
  return id;
}

void append_vcd_value(std::string& out, LogicLevel v, bool ternary,
                      const std::string& id, const std::string& real_id) {
  if (!ternary) {
    char c = v == LogicLevel::Low ? '0' : v == LogicLevel::High ? '1' : 'x';
    out += c;
    out += id;
    out += '\n';
    return;
  }
  switch (v) {
    case LogicLevel::Low: out += "b00 "; break;
    case LogicLevel::Half: out += "b01 "; break;
    case LogicLevel::High: out += "b10 "; break;
    case LogicLevel::Unknown: out += "bxx "; break;
  }
  out += id;
  out += '\n';
  switch (v) {
    case LogicLevel::Low: out += "r0 "; break;
    case LogicLevel::Half: out += "r0.5 "; break;
    case LogicLevel::High: out += "r1 "; break;
    case LogicLevel::Unknown: out += "r-1 "; break;
  }
  out += real_id;
  out += '\n';
}

}  // namespace

std::string export_vcd(const Waveform& waveform, const VcdConfig& config,
                       std::vector<std::string>* warnings) {
  const std::vector<NetId> nets = select_nets(waveform, config.net_selection, warnings);

  std::vector<std::string> ids(waveform.net_names.size());
  std::vector<std::string> real_ids(waveform.net_names.size());
  size_t next_id = 0;
  for (NetId n : nets) {
    ids[n] = vcd_id(next_id++);
    if (waveform.net_ternary[n]) real_ids[n] = vcd_id(next_id++);
  }

  std::string out;
  out += "$version tritsim $end\n";
  out += "$timescale " + config.timescale_label + " $end\n";
  out += "$scope module top $end\n";
  for (NetId n : nets) {
    if (waveform.net_ternary[n]) {
      out += "$var wire 2 " + ids[n] + " " + waveform.net_names[n] + " $end\n";
      out += "$var real 64 " + real_ids[n] + " " + waveform.net_names[n] +
             "__level $end\n";
    } else {
      out += "$var wire 1 " + ids[n] + " " + waveform.net_names[n] + " $end\n";
    }
  }
  out += "$upscope $end\n";
  out += "$enddefinitions $end\n";

  out += "$dumpvars\n";
  for (NetId n : nets) {
    append_vcd_value(out, waveform.value_at(n, 0), waveform.net_ternary[n], ids[n],
                     real_ids[n]);
  }
  out += "$end\n";

  // Later transitions, grouped by time.
  std::map<SimTime, std::string> frames;
  for (NetId n : nets) {
    for (const auto& [at, value] : waveform.transitions[n]) {
      if (at == 0) continue;
      append_vcd_value(frames[at], value, waveform.net_ternary[n], ids[n], real_ids[n]);
    }
  }
  for (const auto& [at, body] : frames) {
    out += "#" + std::to_string(at) + "\n";
    out += body;
  }
  out += "#" + std::to_string(waveform.duration) + "\n";
  return out;
}

std::string export_csv(const Waveform& waveform,
                       const std::vector<std::string>& net_selection,
                       std::vector<std::string>* warnings) {
  const std::vector<NetId> nets = select_nets(waveform, net_selection, warnings);
  std::string out = "time";
  for (NetId n : nets) {
    out += ",";
    out += waveform.net_names[n];
  }
  out += "\n";
  for (SimTime t = 0; t <= waveform.duration; ++t) {
    out += std::to_string(t);
    for (NetId n : nets) {
      out += ',';
      out += level_char(waveform.value_at(n, t));
    }
    out += "\n";
  }
  return out;
}

namespace {

std::vector<LogicLevel> domain_for(bool ternary) {
  if (ternary) return {LogicLevel::Low, LogicLevel::Half, LogicLevel::High};
  return {LogicLevel::Low, LogicLevel::High};
}

}  // namespace

TruthTable extract_truth_table(const FlatNetlist& netlist,
                               const TruthTableOptions& options) {
  TruthTable table;

  NetId clock = 0;
  bool have_clock = false;
  if (options.mode == TableMode::Clocked) {
    clock = netlist.net(options.clock_port);
    if (!netlist.net_is_input[clock]) {
      throw ConfigError("clock net '" + options.clock_port + "' is not an input");
    }
    have_clock = true;
  }

  std::vector<NetId> in_nets;
  for (NetId n : netlist.input_nets) {
    if (have_clock && n == clock) continue;
    in_nets.push_back(n);
    table.input_names.push_back(netlist.net_names[n]);
    table.input_ternary.push_back(netlist.net_ternary[n]);
  }
  for (NetId n : netlist.output_nets) {
    table.output_names.push_back(netlist.net_names[n]);
    table.output_ternary.push_back(netlist.net_ternary[n]);
  }

  std::vector<std::vector<LogicLevel>> domains;
  for (NetId n : in_nets) domains.push_back(domain_for(netlist.net_ternary[n]));

  std::vector<size_t> odo(in_nets.size(), 0);
  bool done = false;
  while (!done) {
    TruthRow row;
    for (size_t i = 0; i < in_nets.size(); ++i) row.inputs.push_back(domains[i][odo[i]]);

    SimState state = initial_state(netlist, options.init);
    for (size_t i = 0; i < in_nets.size(); ++i) state.values[in_nets[i]] = row.inputs[i];

    if (options.mode == TableMode::Clocked) {
      state.values[clock] = LogicLevel::Low;
      for (SimTime t = 0; t < options.phase_ticks; ++t) state = step(netlist, state);
      state.values[clock] = LogicLevel::High;
    }

    SettleResult settled = settle(netlist, state, options.max_settle);
    if (settled.kind == SettleResult::Kind::Stable) {
      for (NetId n : netlist.output_nets) row.outputs.push_back(settled.state.values[n]);
      row.settle_ticks = settled.ticks_used - 1;
    } else {
      row.oscillating = true;
      row.settle_ticks = settled.ticks_used;
    }
    table.rows.push_back(std::move(row));

    done = true;
    for (size_t i = in_nets.size(); i-- > 0;) {
      if (++odo[i] < domains[i].size()) {
        done = false;
        break;
      }
      odo[i] = 0;
    }
    if (in_nets.empty()) break;
  }
  return table;
}

namespace {

std::string level_display(LogicLevel v, bool ternary) {
  if (v == LogicLevel::Unknown) return "X";
  if (ternary) return std::string(1, "012"[trit_of(v)]);
  return std::string(level_name(v));
}

}  // namespace

std::string render_truth_table(const TruthTable& table,
                               std::optional<std::string> clock_display) {
  std::vector<std::string> headers;
  if (clock_display) headers.push_back("CLK");
  headers.insert(headers.end(), table.input_names.begin(), table.input_names.end());
  headers.insert(headers.end(), table.output_names.begin(), table.output_names.end());

  std::vector<std::vector<std::string>> cells;
  for (const TruthRow& row : table.rows) {
    std::vector<std::string> line;
    if (clock_display) line.push_back(*clock_display);
    for (size_t i = 0; i < row.inputs.size(); ++i) {
      line.push_back(level_display(row.inputs[i], table.input_ternary[i]));
    }
    if (row.oscillating) {
      for (size_t i = 0; i < table.output_names.size(); ++i) line.push_back("OSC");
    } else {
      for (size_t i = 0; i < row.outputs.size(); ++i) {
        line.push_back(level_display(row.outputs[i], table.output_ternary[i]));
      }
    }
    cells.push_back(std::move(line));
  }

  std::vector<size_t> widths(headers.size());
  for (size_t c = 0; c < headers.size(); ++c) {
    widths[c] = headers[c].size();
    for (const auto& line : cells) widths[c] = std::max(widths[c], line[c].size());
  }

  std::ostringstream out;
  auto emit = [&](const std::vector<std::string>& line) {
    for (size_t c = 0; c < line.size(); ++c) {
      if (c) out << "  ";
      out << std::setw(static_cast<int>(widths[c])) << std::left << line[c];
    }
    out << "\n";
  };
  emit(headers);
  for (const auto& line : cells) emit(line);
  return out.str();
}

std::string render_truth_csv(const TruthTable& table) {
  std::string out;
  for (size_t i = 0; i < table.input_names.size(); ++i) {
    out += (i ? "," : "") + table.input_names[i];
  }
  for (const std::string& name : table.output_names) out += "," + name;
  out += "\n";
  for (const TruthRow& row : table.rows) {
    for (size_t i = 0; i < row.inputs.size(); ++i) {
      if (i) out += ',';
      out += level_display(row.inputs[i], table.input_ternary[i]);
    }
    for (size_t i = 0; i < table.output_names.size(); ++i) {
      out += ',';
      out += row.oscillating ? "OSC" : level_display(row.outputs[i], table.output_ternary[i]);
    }
    out += "\n";
  }
  return out;
}

}  // namespace tritsim
