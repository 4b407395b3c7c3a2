#include "tritsim/conformance.hpp"

#include <random>
#include <sstream>

#include "tritsim/behavior.hpp"
#include "tritsim/export.hpp"
#include "tritsim/metrics.hpp"

namespace tritsim::conformance {

namespace {

constexpr LogicLevel L = LogicLevel::Low;
constexpr LogicLevel M = LogicLevel::Half;
constexpr LogicLevel H = LogicLevel::High;
constexpr LogicLevel U = LogicLevel::Unknown;

constexpr SimTime kHalfPeriod = 6;
constexpr SimTime kPeriod = 12;

}  // namespace

const std::vector<LatchStepRow>& latch_step_rows() {
  static const std::vector<LatchStepRow> rows = {
      {L, L, L, L, {L, L, L}, {L, L, L}},
      {L, L, L, H, {L, L, L}, {L, L, L}},
      {L, L, H, L, {L, L, L}, {H, L, L}},
      {L, L, H, H, {L, L, L}, {H, L, L}},
      {L, H, L, L, {L, L, L}, {H, H, H}},
      {L, H, L, H, {L, L, L}, {H, H, H}},
      {L, H, H, L, {L, L, L}, {H, H, H}},
      {L, H, H, H, {L, L, L}, {H, H, H}},
      {H, L, L, L, {L, L, L}, {L, L, L}},
      {H, L, L, H, {H, L, H}, {L, H, L}},
      {H, L, H, L, {L, H, L}, {H, L, H}},
      {H, L, H, H, {H, H, H}, {H, H, H}},
      {H, H, L, L, {L, H, H}, {H, H, H}},
      {H, H, L, H, {H, H, H}, {H, H, H}},
      {H, H, H, L, {L, H, H}, {H, H, H}},
      {H, H, H, H, {H, H, H}, {H, H, H}},
  };
  return rows;
}

const std::vector<ControlRow>& control_rows() {
  static const std::vector<ControlRow> rows = {
      {L, 0, U, U, L, L}, {L, 1, U, U, L, H}, {L, 2, U, U, H, H},
      {H, -1, L, L, L, L}, {H, -1, L, H, L, H}, {H, -1, H, L, L, H},
      {H, -1, H, H, H, H},
  };
  return rows;
}

const std::vector<LevelRow>& level_truth_rows() {
  static const std::vector<LevelRow> rows = {
      {L, L, 0}, {L, H, 1}, {H, L, 1}, {H, H, 2}};
  return rows;
}

const std::vector<std::array<Trit, 2>>& d_truth_rows() {
  static const std::vector<std::array<Trit, 2>> rows = {{0, 0}, {1, 1}, {2, 2}};
  return rows;
}

namespace {

// Stored trit as the latch node pair.
std::pair<LogicLevel, LogicLevel> pair_of(Trit q) {
  switch (q) {
    case 0: return {L, L};
    case 1: return {L, H};
    default: return {H, H};
  }
}

std::string level_str(LogicLevel v) { return std::string(1, level_char(v)); }

// Data-drive shape of a clocked cell: which input nets are redrawn each
// cycle and the legal value combinations.
struct DriveSpec {
  std::vector<std::string> data_nets;
  std::vector<std::vector<LogicLevel>> combos;
};

DriveSpec drive_spec(StdCell cell) {
  switch (cell) {
    case StdCell::LevelFFF:
      return {{"z1", "z2"}, {{L, L}, {L, H}, {H, L}, {H, H}}};
    case StdCell::EdgeFFF:
      return {{"z1bar", "z2bar"}, {{H, H}, {H, L}, {L, L}}};
    case StdCell::DFFF:
    case StdCell::DFFFWithQbar:
      return {{"d"}, {{L}, {M}, {H}}};
    default:
      return {};
  }
}

FffBehavior replay_step(StdCell cell, FffBehavior beh, LogicLevel clk,
                        const std::vector<LogicLevel>& data) {
  switch (cell) {
    case StdCell::LevelFFF:
      return level_fff_step(beh, clk, data[0], data[1]);
    case StdCell::EdgeFFF:
      return edge_fff_step(beh, clk, data[0], data[1]);
    default:
      return d_fff_step(beh, clk, trit_of(data[0]));
  }
}

// Random clocked stimulus: clk Low/High half-periods, data redrawn at every
// low-phase start from the legal combinations.
Stimulus clocked_stimulus(const DriveSpec& spec, int cycles, std::mt19937_64& rng) {
  Stimulus stim;
  std::uniform_int_distribution<size_t> pick(0, spec.combos.size() - 1);
  stim.initial["clk"] = L;
  for (int k = 0; k < cycles; ++k) {
    const std::vector<LogicLevel>& combo = spec.combos[pick(rng)];
    for (size_t i = 0; i < spec.data_nets.size(); ++i) {
      if (k == 0) {
        stim.initial[spec.data_nets[i]] = combo[i];
      } else {
        stim.events.emplace_back(kPeriod * k, spec.data_nets[i], combo[i]);
      }
    }
    stim.events.emplace_back(kPeriod * k + kHalfPeriod, "clk", H);
    stim.events.emplace_back(kPeriod * (k + 1), "clk", L);
  }
  return stim;
}

SimTime clocked_until(int cycles) { return kPeriod * cycles + kHalfPeriod + 2; }

CheckResult make_result(std::string name, bool pass, std::string detail = "") {
  return CheckResult{std::move(name), pass, std::move(detail)};
}

CheckResult check_latch_table(const FlatNetlist& nl) {
  const NetId s1 = nl.net("s1"), s2 = nl.net("s2");
  const NetId q1 = nl.net("q1"), q2 = nl.net("q2");
  for (size_t r = 0; r < latch_step_rows().size(); ++r) {
    const LatchStepRow& row = latch_step_rows()[r];
    SimState st = initial_state(nl);
    st.values[s1] = row.s1;
    st.values[s2] = row.s2;
    st.values[q1] = row.q1;
    st.values[q2] = row.q2;
    for (int tick = 0; tick < 3; ++tick) {
      st = step(nl, st);
      if (st.values[q1] != row.q1_next[tick] || st.values[q2] != row.q2_next[tick]) {
        std::ostringstream detail;
        detail << "row " << r + 1 << " tick " << tick + 1 << ": node pair ("
               << level_str(st.values[q1]) << "," << level_str(st.values[q2])
               << "), want (" << level_str(row.q1_next[tick]) << ","
               << level_str(row.q2_next[tick]) << ")";
        return make_result("latch-truth-table", false, detail.str());
      }
    }
  }
  return make_result("latch-truth-table", true, "16 rows, 3 ticks each");
}

CheckResult check_latch_stable(const FlatNetlist& nl, bool has_qbar, SimTime max_ticks) {
  struct Case {
    LogicLevel s1, s2, q, qbar;
  };
  const std::vector<Case> cases = {{L, L, L, H}, {L, H, M, M}, {H, H, H, L}};
  for (const Case& c : cases) {
    SimState st = initial_state(nl);
    st.values[nl.net("s1")] = c.s1;
    st.values[nl.net("s2")] = c.s2;
    SettleResult settled = settle(nl, st, max_ticks);
    if (settled.kind != SettleResult::Kind::Stable) {
      return make_result("stable-states", false,
                         "did not settle for s1=" + level_str(c.s1) + " s2=" +
                             level_str(c.s2));
    }
    const LogicLevel q = settled.state.values[nl.net("q")];
    if (q != c.q) {
      return make_result("stable-states", false,
                         "s1=" + level_str(c.s1) + " s2=" + level_str(c.s2) + ": q=" +
                             level_str(q) + ", want " + level_str(c.q));
    }
    if (has_qbar) {
      const LogicLevel qb = settled.state.values[nl.net("qbar")];
      if (qb != c.qbar) {
        return make_result("stable-states", false,
                           "s1=" + level_str(c.s1) + " s2=" + level_str(c.s2) +
                               ": qbar=" + level_str(qb) + ", want " + level_str(c.qbar));
      }
    }
  }
  return make_result("stable-states", true, "holds '0', '1', '2' from power-up");
}

CheckResult check_latch_oscillation(const FlatNetlist& nl, SimTime max_ticks) {
  SimState st = initial_state(nl);
  st.values[nl.net("s1")] = H;
  st.values[nl.net("s2")] = L;
  st.values[nl.net("q1")] = L;
  st.values[nl.net("q2")] = H;
  SettleResult settled = settle(nl, st, max_ticks);
  if (settled.kind != SettleResult::Kind::Oscillating) {
    return make_result("oscillation-detected", false,
                       "s1=1 s2=0 from node pair (0,1) did not oscillate");
  }
  if (settled.period != 2) {
    return make_result("oscillation-detected", false,
                       "period " + std::to_string(settled.period) + ", want 2");
  }
  return make_result("oscillation-detected", true, "s1=1 s2=0 oscillates with period 2");
}

CheckResult check_averager_count(const FlatNetlist& nl, int want) {
  int n = 0;
  for (const FlatGate& g : nl.gates) {
    if (g.kind == GateKind::Averager2) ++n;
  }
  if (n != want) {
    return make_result("averager-count", false,
                       std::to_string(n) + " voltage dividers, want " + std::to_string(want));
  }
  return make_result("averager-count", true, std::to_string(n) + " voltage divider(s)");
}

CheckResult check_control_table() {
  for (size_t r = 0; r < control_rows().size(); ++r) {
    const ControlRow& row = control_rows()[r];
    const std::vector<Trit> qs = row.q < 0 ? std::vector<Trit>{0, 1, 2}
                                           : std::vector<Trit>{static_cast<Trit>(row.q)};
    const std::vector<LogicLevel> zs = row.z1 == U ? std::vector<LogicLevel>{L, H}
                                                   : std::vector<LogicLevel>{row.z1};
    const std::vector<LogicLevel> zs2 = row.z2 == U ? std::vector<LogicLevel>{L, H}
                                                    : std::vector<LogicLevel>{row.z2};
    for (Trit q : qs) {
      const auto [q1, q2] = pair_of(q);
      for (LogicLevel z1 : zs) {
        for (LogicLevel z2 : zs2) {
          const auto [s1, s2] = control_eqs(row.clk, q1, q2, z1, z2, false);
          if (s1 != row.s1 || s2 != row.s2) {
            std::ostringstream detail;
            detail << "row " << r + 1 << ": control pair (" << level_str(s1) << ","
                   << level_str(s2) << "), want (" << level_str(row.s1) << ","
                   << level_str(row.s2) << ")";
            return make_result("control-table", false, detail.str());
          }
          // The structural gates must realize the same functions through
          // the complemented node and data inputs.
          const LogicLevel nq1 = q1 == H ? L : H, nq2 = q2 == H ? L : H;
          const LogicLevel nz1 = z1 == H ? L : H, nz2 = z2 == H ? L : H;
          const LogicLevel ins[5] = {row.clk, nq1, nq2, nz1, nz2};
          const LogicLevel gs1 = eval_gate(GateKind::AoiS1Wide, ins);
          const LogicLevel gs2 = eval_gate(GateKind::AoiS2Wide, ins);
          if (gs1 != row.s1 || gs2 != row.s2) {
            std::ostringstream detail;
            detail << "row " << r + 1 << ": gate pair (" << level_str(gs1) << ","
                   << level_str(gs2) << "), want (" << level_str(row.s1) << ","
                   << level_str(row.s2) << ")";
            return make_result("control-table", false, detail.str());
          }
        }
      }
    }
  }
  return make_result("control-table", true, "7 rows, equations and gates agree");
}

CheckResult check_level_truth(const FlatNetlist& nl, SimTime max_ticks) {
  TruthTableOptions opts;
  opts.mode = TableMode::Clocked;
  opts.max_settle = max_ticks;
  TruthTable table = extract_truth_table(nl, opts);
  if (table.rows.size() != 4) {
    return make_result("truth-table", false,
                       std::to_string(table.rows.size()) + " rows, want 4");
  }
  for (size_t r = 0; r < 4; ++r) {
    const LevelRow& want = level_truth_rows()[r];
    const TruthRow& got = table.rows[r];
    if (got.inputs[0] != want.z1 || got.inputs[1] != want.z2) {
      return make_result("truth-table", false, "row order drifted");
    }
    if (got.oscillating || got.outputs[0] != level_of(want.q)) {
      return make_result("truth-table", false,
                         "z1=" + level_str(want.z1) + " z2=" + level_str(want.z2) +
                             ": want q='" + std::to_string(want.q) + "'");
    }
    if (got.settle_ticks > 4) {
      return make_result("truth-table", false,
                         "row " + std::to_string(r + 1) + " took " +
                             std::to_string(got.settle_ticks) + " ticks to settle");
    }
  }
  return make_result("truth-table", true, "4 rows, all settled within 4 ticks");
}

CheckResult check_level_hold(const FlatNetlist& nl, SimTime max_ticks) {
  const NetId clk = nl.net("clk"), z1 = nl.net("z1"), z2 = nl.net("z2");
  const NetId q = nl.net("q");
  for (const LevelRow& write : level_truth_rows()) {
    SimState st = initial_state(nl);
    st.values[clk] = H;
    st.values[z1] = write.z1;
    st.values[z2] = write.z2;
    SettleResult settled = settle(nl, st, max_ticks);
    if (settled.kind != SettleResult::Kind::Stable ||
        settled.state.values[q] != level_of(write.q)) {
      return make_result("hold-property", false, "transparent write failed");
    }
    st = settled.state;
    st.values[clk] = L;
    st = settle(nl, st, max_ticks).state;
    for (const LevelRow& other : level_truth_rows()) {
      SimState probe = st;
      probe.values[z1] = other.z1;
      probe.values[z2] = other.z2;
      for (int t = 0; t < 8; ++t) {
        probe = step(nl, probe);
        if (probe.values[q] != level_of(write.q)) {
          return make_result("hold-property", false,
                             "q moved while clock Low (stored '" +
                                 std::to_string(write.q) + "')");
        }
      }
    }
  }
  return make_result("hold-property", true, "clock Low masks every data change");
}

CheckResult check_edge_truth(const FlatNetlist& nl, SimTime max_ticks) {
  TruthTableOptions opts;
  opts.mode = TableMode::Clocked;
  opts.max_settle = max_ticks;
  TruthTable table = extract_truth_table(nl, opts);
  // Inputs enumerate as (z1bar, z2bar): LL, LH, HL, HH. LH is the
  // combination the decoder and master can never hand over; it carries no
  // target value.
  struct Want {
    size_t row;
    Trit q;
  };
  const std::vector<Want> wants = {{0, 2}, {2, 1}, {3, 0}};
  for (const Want& w : wants) {
    const TruthRow& got = table.rows[w.row];
    if (got.oscillating || got.outputs[0] != level_of(w.q)) {
      return make_result("truth-table", false,
                         "complemented inputs (" + level_str(got.inputs[0]) + "," +
                             level_str(got.inputs[1]) + "): want q='" +
                             std::to_string(w.q) + "'");
    }
    if (got.settle_ticks > 4) {
      return make_result("truth-table", false,
                         "row " + std::to_string(w.row + 1) + " took " +
                             std::to_string(got.settle_ticks) + " ticks to settle");
    }
  }
  return make_result("truth-table", true, "3 reachable rows settled within 4 ticks");
}

CheckResult check_d_truth(const FlatNetlist& nl, bool has_qbar, SimTime max_ticks) {
  // The complement output sits one averager behind the taps, so it needs
  // one tick beyond the plain cell's four.
  const SimTime budget = has_qbar ? 5 : 4;
  TruthTableOptions opts;
  opts.mode = TableMode::Clocked;
  opts.max_settle = max_ticks;
  TruthTable table = extract_truth_table(nl, opts);
  if (table.rows.size() != 3) {
    return make_result("truth-table", false,
                       std::to_string(table.rows.size()) + " rows, want 3");
  }
  for (const auto& [d, q] : d_truth_rows()) {
    const TruthRow& got = table.rows[d];
    if (got.inputs[0] != level_of(d)) {
      return make_result("truth-table", false, "row order drifted");
    }
    if (got.oscillating || got.outputs[0] != level_of(q)) {
      return make_result("truth-table", false,
                         "d='" + std::to_string(d) + "': want q='" + std::to_string(q) +
                             "'");
    }
    if (has_qbar && got.outputs[1] != level_of(static_cast<Trit>(2 - q))) {
      return make_result("truth-table", false,
                         "d='" + std::to_string(d) + "': want qbar='" +
                             std::to_string(2 - q) + "'");
    }
    if (got.settle_ticks > budget) {
      return make_result("truth-table", false,
                         "d='" + std::to_string(d) + "' took " +
                             std::to_string(got.settle_ticks) + " ticks to settle");
    }
  }
  return make_result("truth-table", true,
                     "3 rows settled within " + std::to_string(budget) + " ticks");
}

Waveform clocked_sample_run(StdCell cell, const FlatNetlist& nl, uint64_t seed,
                            int cycles) {
  std::mt19937_64 rng(seed);
  Stimulus stim = clocked_stimulus(drive_spec(cell), cycles, rng);
  return run(nl, stim, clocked_until(cycles));
}

CheckResult check_edge_property(const Waveform& wave) {
  const NetId q = wave.net("q");
  for (size_t i = 1; i < wave.transitions[q].size(); ++i) {
    const SimTime at = wave.transitions[q][i].first;
    // Rising edges land at kHalfPeriod + kPeriod * k; q may move only
    // during the four ticks that follow one.
    const SimTime offset = (at + kPeriod - 1 - kHalfPeriod) % kPeriod;
    if (at <= kHalfPeriod || offset > 3) {
      return make_result("edge-property", false,
                         "q changed at tick " + std::to_string(at) +
                             ", outside every rising-edge window");
    }
  }
  return make_result("edge-property",
                     true, "q moves only within 4 ticks after a rising edge");
}

CheckResult check_unreachable(const Waveform& wave,
                              const std::vector<std::pair<std::string, std::string>>& pairs) {
  for (const auto& [a, b] : pairs) {
    const NetId na = wave.net(a), nb = wave.net(b);
    for (SimTime t = 0; t <= wave.duration; ++t) {
      if (wave.value_at(na, t) == H && wave.value_at(nb, t) == L) {
        return make_result("unstable-unreachable", false,
                           "(" + a + "," + b + ") hit (1,0) at tick " + std::to_string(t));
      }
    }
  }
  return make_result("unstable-unreachable", true,
                     "no internal pair ever reached (1,0)");
}

CheckResult check_power_proxy(const FlatNetlist& nl, int dividers_when_holding_one) {
  for (Trit value : {Trit{0}, Trit{1}, Trit{2}}) {
    Stimulus stim;
    stim.initial["clk"] = L;
    stim.initial["d"] = level_of(value);
    stim.events.emplace_back(kHalfPeriod, "clk", H);
    stim.events.emplace_back(kPeriod, "clk", L);
    const SimTime until = 48;
    Waveform wave = run(nl, stim, until);
    PowerReport report = measure(nl, wave, "q", kPeriod + 4);
    const double want = value == 1 ? dividers_when_holding_one : 0;
    const auto it = report.per_hold_value.find(value);
    if (it == report.per_hold_value.end() || it->second != want) {
      std::ostringstream detail;
      detail << "holding '" << int(value) << "': ";
      if (it == report.per_hold_value.end()) {
        detail << "no settled hold window";
      } else {
        detail << it->second << " divisions/tick, want " << want;
      }
      return make_result("power-proxy", false, detail.str());
    }
  }
  return make_result("power-proxy", true,
                     "holding '1' costs " + std::to_string(dividers_when_holding_one) +
                         " division(s)/tick, '0' and '2' cost none");
}

CheckResult check_equivalence(StdCell cell, const CheckOptions& options) {
  EquivalenceStats stats =
      behavioral_equivalence(cell, options.sequences, options.cycles, options.seed);
  if (stats.mismatches != 0) {
    return make_result("behavioral-equivalence", false,
                       std::to_string(stats.mismatches) + " mismatched samples over " +
                           std::to_string(stats.cycles) + " cycles; first: " +
                           stats.first_mismatch);
  }
  return make_result("behavioral-equivalence", true,
                     std::to_string(stats.cycles) + " random cycles match the reference model");
}

}  // namespace

EquivalenceStats behavioral_equivalence(StdCell cell, int sequences, int cycles_per_sequence,
                                        uint64_t seed) {
  const FlatNetlist nl = elaborate(build_standard_cell(cell));
  const DriveSpec spec = drive_spec(cell);
  const bool has_qbar = cell == StdCell::DFFFWithQbar;

  EquivalenceStats stats;
  for (int s = 0; s < sequences; ++s) {
    std::mt19937_64 rng(seed + static_cast<uint64_t>(s));
    Stimulus stim = clocked_stimulus(spec, cycles_per_sequence, rng);
    const SimTime until = clocked_until(cycles_per_sequence);
    Waveform wave = run(nl, stim, until);

    const NetId clk = wave.net("clk");
    const NetId q = wave.net("q");
    std::vector<NetId> data_ids;
    for (const std::string& name : spec.data_nets) data_ids.push_back(wave.net(name));

    FffBehavior beh;
    std::vector<LogicLevel> data(data_ids.size());
    for (SimTime t = 0; t <= until; ++t) {
      for (size_t i = 0; i < data_ids.size(); ++i) data[i] = wave.value_at(data_ids[i], t);
      beh = replay_step(cell, beh, wave.value_at(clk, t), data);

      // Sample near the end of each high phase and again inside the
      // following low phase.
      const SimTime phase = t % kPeriod;
      const bool sample = t > kHalfPeriod && (phase == kPeriod - 1 || phase == 5);
      if (!sample) continue;
      const LogicLevel want = level_of(beh.stored);
      bool bad = wave.value_at(q, t) != want;
      if (!bad && has_qbar) {
        bad = wave.value_at(wave.net("qbar"), t) !=
              level_of(static_cast<Trit>(2 - beh.stored));
      }
      if (bad) {
        ++stats.mismatches;
        if (stats.first_mismatch.empty()) {
          std::ostringstream detail;
          detail << std_cell_name(cell) << " seq " << s << " tick " << t << ": q="
                 << level_char(wave.value_at(q, t)) << ", want " << level_char(want);
          stats.first_mismatch = detail.str();
        }
      }
    }
    stats.cycles += cycles_per_sequence;
  }
  return stats;
}

std::vector<CheckResult> run_cell_checks(StdCell cell, const CheckOptions& options) {
  const FlatNetlist nl = elaborate(build_standard_cell(cell));
  std::vector<CheckResult> results;

  switch (cell) {
    case StdCell::TLatch:
    case StdCell::TLatchNoQbar: {
      const bool has_qbar = cell == StdCell::TLatch;
      results.push_back(check_latch_table(nl));
      results.push_back(check_latch_stable(nl, has_qbar, options.max_ticks));
      results.push_back(check_latch_oscillation(nl, options.max_ticks));
      results.push_back(check_averager_count(nl, has_qbar ? 2 : 1));
      break;
    }
    case StdCell::LevelFFF: {
      results.push_back(check_control_table());
      results.push_back(check_level_truth(nl, options.max_ticks));
      results.push_back(check_level_hold(nl, options.max_ticks));
      results.push_back(check_equivalence(cell, options));
      Waveform wave = clocked_sample_run(cell, nl, options.seed, 32);
      results.push_back(check_unreachable(wave, {{"s1", "s2"}, {"lat/q1", "lat/q2"}}));
      results.push_back(check_averager_count(nl, 1));
      break;
    }
    case StdCell::EdgeFFF: {
      results.push_back(check_edge_truth(nl, options.max_ticks));
      results.push_back(check_equivalence(cell, options));
      Waveform wave = clocked_sample_run(cell, nl, options.seed, 32);
      results.push_back(check_edge_property(wave));
      results.push_back(check_unreachable(wave,
                                          {{"s1m", "s2m"},
                                           {"s1s", "s2s"},
                                           {"master/q1", "master/q2"},
                                           {"slave/q1", "slave/q2"}}));
      results.push_back(check_averager_count(nl, 1));
      break;
    }
    case StdCell::DFFF:
    case StdCell::DFFFWithQbar: {
      const bool has_qbar = cell == StdCell::DFFFWithQbar;
      results.push_back(check_d_truth(nl, has_qbar, options.max_ticks));
      results.push_back(check_equivalence(cell, options));
      Waveform wave = clocked_sample_run(cell, nl, options.seed, 32);
      results.push_back(check_edge_property(wave));
      results.push_back(check_unreachable(wave,
                                          {{"ff/s1m", "ff/s2m"},
                                           {"ff/s1s", "ff/s2s"},
                                           {"ff/master/q1", "ff/master/q2"},
                                           {"ff/slave/q1", "ff/slave/q2"}}));
      results.push_back(check_power_proxy(nl, has_qbar ? 2 : 1));
      results.push_back(check_averager_count(nl, has_qbar ? 2 : 1));
      break;
    }
  }
  return results;
}

}  // namespace tritsim::conformance
