#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "tritsim/sim.hpp"

namespace tritsim {

// Static-power proxy. Each voltage division (an averager with unequal binary
// inputs) conducts for the whole tick, so the per-tick division count orders
// designs the way their static power compares; no absolute watts here.
struct PowerReport {
  SimTime start = 0;                      // first measured tick
  std::vector<int> per_tick_divisions;    // ticks start .. start+N-1
  std::map<Trit, double> per_hold_value;  // average divisions while holding a value
  std::map<Trit, SimTime> hold_ticks;     // ticks attributed to each held value
  long total_division_ticks = 0;

  SimTime ticks() const { return per_tick_divisions.size(); }
};

// Counts divisions per tick over waveform times [start, duration] and
// classifies each tick by the level on `output_net` (ticks where it is
// Unknown are left unclassified). Throws ConfigError if the net is absent.
PowerReport measure(const FlatNetlist& netlist, const Waveform& waveform,
                    std::string_view output_net, SimTime start = 0);

std::string render_power_table(const PowerReport& report);
std::string render_power_jsonl(const PowerReport& report);

}  // namespace tritsim
