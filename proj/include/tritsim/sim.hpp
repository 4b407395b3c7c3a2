#pragma once

#include <cstdint>
#include <deque>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "tritsim/netlist.hpp"

namespace tritsim {

// Simulation time in ticks; one tick is one gate propagation delay.
using SimTime = uint64_t;

struct SimError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Event {
  SimTime at = 0;
  NetId net = 0;
  LogicLevel value = LogicLevel::Unknown;
};

struct SimState {
  SimTime time = 0;
  std::vector<LogicLevel> values;  // one entry per net
  std::deque<Event> pending;       // time-sorted future input changes
};

// Stimulus by net name: initial values applied at time 0 (inputs and
// internal state nets both allowed), then timed changes to input nets.
struct Stimulus {
  std::map<std::string, LogicLevel> initial;
  // (time, net, value); applied in time order, file order within a tick.
  std::vector<std::tuple<SimTime, std::string, LogicLevel>> events;
};

// Per-net transition lists. Entry 0 is the value at time 0; consecutive
// entries differ in value and times strictly increase.
struct Waveform {
  std::vector<std::string> net_names;
  std::vector<bool> net_ternary;
  std::vector<std::vector<std::pair<SimTime, LogicLevel>>> transitions;
  SimTime duration = 0;  // values recorded for times 0..duration

  LogicLevel value_at(NetId net, SimTime t) const;
  NetId net(std::string_view name) const;  // throws SimError if absent
};

// Fresh state: every net Unknown, then `initial` overrides by name.
SimState initial_state(const FlatNetlist& netlist,
                       const std::map<std::string, LogicLevel>& initial = {});

// One synchronous step: every gate output is recomputed from the values at
// state.time and committed at state.time + 1; inputs and undriven nets hold;
// pending events due at the new time are then applied. Raises SimError,
// naming the net, if Half reaches a binary-only gate pin.
SimState step(const FlatNetlist& netlist, const SimState& state);

struct SettleResult {
  enum class Kind { Stable, Oscillating, BudgetExceeded };
  Kind kind = Kind::BudgetExceeded;
  SimState state;        // state at classification time
  SimTime ticks_used = 0;
  SimTime period = 0;    // oscillation period (>= 2) when Kind::Oscillating
};

// Steps with inputs held (pending events are not consumed) until the state
// repeats: period 1 is Stable, period >= 2 Oscillating, no repeat within
// max_ticks BudgetExceeded.
SettleResult settle(const FlatNetlist& netlist, const SimState& state, SimTime max_ticks);

// Full run: applies the stimulus, steps tick by tick until `until`, and
// records every transition. Stimulus events must satisfy time < until and
// may only drive input nets (initial values may also seed state nets).
Waveform run(const FlatNetlist& netlist, const Stimulus& stimulus, SimTime until);

// Stimulus CSV: lines `time,net,value` with value in {0, H, 1, X}; initial
// values use `@init` in the time field. '#' starts a comment; an optional
// `time,net,value` header line is skipped. Errors carry 1-based line numbers.
Stimulus parse_stimulus(const std::string& text);
std::string serialize_stimulus(const Stimulus& stimulus);

}  // namespace tritsim
