#include "tritsim/sim.hpp"

#include <algorithm>
#include <array>
#include <span>
#include <sstream>

namespace tritsim {

LogicLevel Waveform::value_at(NetId net, SimTime t) const {
  const auto& tr = transitions.at(net);
  // Last transition at or before t.
  auto it = std::upper_bound(tr.begin(), tr.end(), t,
                             [](SimTime lhs, const std::pair<SimTime, LogicLevel>& e) {
                               return lhs < e.first;
                             });
  if (it == tr.begin()) return LogicLevel::Unknown;
  return std::prev(it)->second;
}

NetId Waveform::net(std::string_view name) const {
  for (size_t i = 0; i < net_names.size(); ++i) {
    if (net_names[i] == name) return static_cast<NetId>(i);
  }
  throw SimError("waveform has no net named '" + std::string(name) + "'");
}

SimState initial_state(const FlatNetlist& netlist,
                       const std::map<std::string, LogicLevel>& initial) {
  SimState state;
  state.values.assign(netlist.net_count(), LogicLevel::Unknown);
  for (const auto& [name, value] : initial) {
    NetId id = netlist.net(name);
    if (value == LogicLevel::Half && !netlist.net_ternary[id]) {
      throw SimError("initial value drives Half onto binary net '" + name + "'");
    }
    state.values[id] = value;
  }
  return state;
}

namespace {

void check_gate_inputs(const FlatNetlist& netlist, const FlatGate& gate,
                       const std::vector<LogicLevel>& values) {
  if (!gate_binary_only(gate.kind)) return;
  for (NetId in : gate.inputs) {
    if (values[in] == LogicLevel::Half) {
      throw SimError("Half on binary pin: net '" + netlist.net_names[in] + "' feeding '" +
                     gate.path + "' (" + std::string(gate_name(gate.kind)) + ")");
    }
  }
}

void apply_event(const FlatNetlist& netlist, std::vector<LogicLevel>& values, const Event& e) {
  if (e.value == LogicLevel::Half && !netlist.net_ternary[e.net]) {
    throw SimError("stimulus drives Half onto binary net '" + netlist.net_names[e.net] + "'");
  }
  values[e.net] = e.value;
}

}  // namespace

SimState step(const FlatNetlist& netlist, const SimState& state) {
  SimState next;
  next.time = state.time + 1;
  next.values = state.values;  // inputs and undriven nets hold
  next.pending = state.pending;

  std::array<LogicLevel, 8> ins{};
  for (const auto& gate : netlist.gates) {
    check_gate_inputs(netlist, gate, state.values);
    for (size_t i = 0; i < gate.inputs.size(); ++i) ins[i] = state.values[gate.inputs[i]];
    next.values[gate.output] =
        eval_gate(gate.kind, std::span<const LogicLevel>(ins.data(), gate.inputs.size()));
  }

  while (!next.pending.empty() && next.pending.front().at <= next.time) {
    apply_event(netlist, next.values, next.pending.front());
    next.pending.pop_front();
  }
  return next;
}

SettleResult settle(const FlatNetlist& netlist, const SimState& state, SimTime max_ticks) {
  SettleResult result;
  SimState cur = state;
  cur.pending.clear();  // settling holds the inputs

  std::map<std::vector<LogicLevel>, SimTime> seen;
  seen.emplace(cur.values, 0);

  for (SimTime tick = 1; tick <= max_ticks; ++tick) {
    SimState nxt = step(netlist, cur);
    if (nxt.values == cur.values) {
      result.kind = SettleResult::Kind::Stable;
      result.state = std::move(nxt);
      result.ticks_used = tick;
      return result;
    }
    auto [it, fresh] = seen.emplace(nxt.values, tick);
    if (!fresh) {
      result.kind = SettleResult::Kind::Oscillating;
      result.period = tick - it->second;
      result.state = std::move(nxt);
      result.ticks_used = tick;
      return result;
    }
    cur = std::move(nxt);
  }
  result.kind = SettleResult::Kind::BudgetExceeded;
  result.state = std::move(cur);
  result.ticks_used = max_ticks;
  return result;
}

Waveform run(const FlatNetlist& netlist, const Stimulus& stimulus, SimTime until) {
  SimState state = initial_state(netlist, stimulus.initial);

  std::vector<Event> events;
  events.reserve(stimulus.events.size());
  for (const auto& [at, name, value] : stimulus.events) {
    NetId id = netlist.net(name);
    if (at >= until) {
      throw SimError("stimulus event at tick " + std::to_string(at) + " is not before " +
                     std::to_string(until));
    }
    if (at > 0 && !netlist.net_is_input[id]) {
      throw SimError("stimulus drives non-input net '" + name + "' at tick " +
                     std::to_string(at));
    }
    events.push_back({at, id, value});
  }
  std::stable_sort(events.begin(), events.end(),
                   [](const Event& a, const Event& b) { return a.at < b.at; });
  for (const Event& e : events) {
    if (e.at == 0) {
      apply_event(netlist, state.values, e);
    } else {
      state.pending.push_back(e);
    }
  }

  Waveform wave;
  wave.net_names = netlist.net_names;
  wave.net_ternary.assign(netlist.net_ternary.begin(), netlist.net_ternary.end());
  wave.transitions.resize(netlist.net_count());
  wave.duration = until;
  for (NetId n = 0; n < netlist.net_count(); ++n) {
    wave.transitions[n].push_back({0, state.values[n]});
  }

  for (SimTime t = 0; t < until; ++t) {
    SimState next = step(netlist, state);
    for (NetId n = 0; n < netlist.net_count(); ++n) {
      if (next.values[n] != state.values[n]) {
        wave.transitions[n].push_back({next.time, next.values[n]});
      }
    }
    state = std::move(next);
  }
  return wave;
}

namespace {

std::string trim(const std::string& s) {
  size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace

Stimulus parse_stimulus(const std::string& text) {
  Stimulus stim;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;

    std::vector<std::string> fields;
    std::istringstream ls(line);
    std::string f;
    while (std::getline(ls, f, ',')) fields.push_back(trim(f));
    if (fields.size() != 3) {
      throw SimError("stimulus line " + std::to_string(lineno) +
                     ": expected 'time,net,value'");
    }
    if (lineno == 1 && fields[0] == "time" && fields[1] == "net" && fields[2] == "value") {
      continue;  // header
    }
    if (fields[2].size() != 1) {
      throw SimError("stimulus line " + std::to_string(lineno) + ": bad value '" + fields[2] +
                     "' (want one of 0, H, 1, X)");
    }
    LogicLevel value;
    if (!level_from_char(fields[2][0], value)) {
      throw SimError("stimulus line " + std::to_string(lineno) + ": bad value '" + fields[2] +
                     "' (want one of 0, H, 1, X)");
    }
    if (fields[0] == "@init") {
      stim.initial[fields[1]] = value;
      continue;
    }
    SimTime at = 0;
    try {
      size_t used = 0;
      at = std::stoull(fields[0], &used);
      if (used != fields[0].size()) throw std::invalid_argument("");
    } catch (const std::exception&) {
      throw SimError("stimulus line " + std::to_string(lineno) + ": bad time '" + fields[0] +
                     "'");
    }
    stim.events.emplace_back(at, fields[1], value);
  }
  return stim;
}

std::string serialize_stimulus(const Stimulus& stimulus) {
  std::ostringstream out;
  out << "time,net,value\n";
  for (const auto& [name, value] : stimulus.initial) {
    out << "@init," << name << "," << level_char(value) << "\n";
  }
  for (const auto& [at, name, value] : stimulus.events) {
    out << at << "," << name << "," << level_char(value) << "\n";
  }
  return out.str();
}

}  // namespace tritsim
