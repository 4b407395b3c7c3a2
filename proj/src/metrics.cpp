#include "tritsim/metrics.hpp"

#include <iomanip>
#include <sstream>

#include "json.hpp"

namespace tritsim {

namespace {

bool is_division(LogicLevel a, LogicLevel b) {
  return (a == LogicLevel::Low && b == LogicLevel::High) ||
         (a == LogicLevel::High && b == LogicLevel::Low);
}

}  // namespace

PowerReport measure(const FlatNetlist& netlist, const Waveform& waveform,
                    std::string_view output_net, SimTime start) {
  const NetId out = [&] {
    for (NetId i = 0; i < waveform.net_names.size(); ++i) {
      if (waveform.net_names[i] == output_net) return i;
    }
    throw ConfigError("unknown output net '" + std::string(output_net) + "'");
  }();

  std::vector<NetId> averager_inputs;
  for (const FlatGate& gate : netlist.gates) {
    if (gate.kind == GateKind::Averager2) {
      averager_inputs.push_back(gate.inputs[0]);
      averager_inputs.push_back(gate.inputs[1]);
    }
  }

  PowerReport report;
  report.start = start;
  std::map<Trit, long> division_sum;
  for (SimTime t = start; t <= waveform.duration; ++t) {
    int divisions = 0;
    for (size_t i = 0; i < averager_inputs.size(); i += 2) {
      if (is_division(waveform.value_at(averager_inputs[i], t),
                      waveform.value_at(averager_inputs[i + 1], t))) {
        ++divisions;
      }
    }
    report.per_tick_divisions.push_back(divisions);
    report.total_division_ticks += divisions;
    const LogicLevel held = waveform.value_at(out, t);
    if (held != LogicLevel::Unknown) {
      report.hold_ticks[trit_of(held)] += 1;
      division_sum[trit_of(held)] += divisions;
    }
  }
  for (const auto& [value, ticks] : report.hold_ticks) {
    report.per_hold_value[value] =
        static_cast<double>(division_sum[value]) / static_cast<double>(ticks);
  }
  return report;
}

std::string render_power_table(const PowerReport& report) {
  std::ostringstream out;
  out << "ticks measured:        " << report.ticks() << " (from tick "
      << report.start << ")\n";
  out << "total division-ticks:  " << report.total_division_ticks << "\n";
  out << "held value  ticks  divisions/tick\n";
  for (const auto& [value, avg] : report.per_hold_value) {
    out << "       '" << static_cast<int>(value) << "'  " << std::setw(5)
        << report.hold_ticks.at(value) << "  " << std::setprecision(4) << avg
        << "\n";
  }
  return out.str();
}

std::string render_power_jsonl(const PowerReport& report) {
  std::ostringstream out;
  for (const auto& [value, avg] : report.per_hold_value) {
    nlohmann::json line;
    line["held"] = static_cast<int>(value);
    line["ticks"] = report.hold_ticks.at(value);
    line["divisions_per_tick"] = avg;
    out << line.dump() << "\n";
  }
  nlohmann::json total;
  total["ticks"] = report.ticks();
  total["start"] = report.start;
  total["total_division_ticks"] = report.total_division_ticks;
  out << total.dump() << "\n";
  return out.str();
}

}  // namespace tritsim
