// Acceptance gate: one test per criterion, one verdict line per criterion.

#include <gtest/gtest.h>
#include <sys/wait.h>

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "tritsim/behavior.hpp"
#include "tritsim/conformance.hpp"
#include "tritsim/export.hpp"
#include "tritsim/metrics.hpp"
#include "tritsim/netlist.hpp"
#include "tritsim/parser.hpp"
#include "tritsim/sim.hpp"
#include "tritsim/stdcells.hpp"

namespace tritsim {
namespace {

constexpr LogicLevel L = LogicLevel::Low;
constexpr LogicLevel M = LogicLevel::Half;
constexpr LogicLevel H = LogicLevel::High;

class Acceptance : public ::testing::Test {
 protected:
  void criterion(int number, std::string title) {
    number_ = number;
    title_ = std::move(title);
  }

  void TearDown() override {
    std::cout << "criterion " << number_ << ": " << (HasFailure() ? "FAIL" : "PASS")
              << " - " << title_ << std::endl;
  }

 private:
  int number_ = 0;
  std::string title_;
};

// The cross-coupled AND/OR pair on its own.
FlatNetlist bare_latch() {
  CellDef def;
  def.name = "core";
  def.ports = {Port{"s1", PortDir::In, false}, Port{"s2", PortDir::In, false},
               Port{"q1", PortDir::Out, false}, Port{"q2", PortDir::Out, false}};
  def.instances = {
      CellInstance{"g_and", GateKind::And2, {"s1", "q2"}, {"q1"}},
      CellInstance{"g_or", GateKind::Or2, {"s2", "q1"}, {"q2"}},
  };
  Circuit circuit;
  circuit.defs = {def};
  circuit.top = "core";
  return elaborate(circuit);
}

SimState seeded(const FlatNetlist& nl, LogicLevel s1, LogicLevel s2, LogicLevel q1,
                LogicLevel q2) {
  SimState st = initial_state(nl);
  st.values[nl.net("s1")] = s1;
  st.values[nl.net("s2")] = s2;
  st.values[nl.net("q1")] = q1;
  st.values[nl.net("q2")] = q2;
  return st;
}

int transitions_at_or_after(const Waveform& wave, const char* net, SimTime t0) {
  int n = 0;
  for (const auto& [at, value] : wave.transitions[wave.net(net)]) {
    if (at >= t0) ++n;
  }
  return n;
}

TEST_F(Acceptance, Criterion1LatchStepTable) {
  criterion(1, "bare latch replays all 16 seeded step rows tick-for-tick in under a second");
  const auto t0 = std::chrono::steady_clock::now();

  FlatNetlist nl = bare_latch();
  const NetId q1 = nl.net("q1"), q2 = nl.net("q2");
  for (const conformance::LatchStepRow& row : conformance::latch_step_rows()) {
    SimState st = seeded(nl, row.s1, row.s2, row.q1, row.q2);
    for (int k = 0; k < 3; ++k) {
      st = step(nl, st);
      EXPECT_EQ(st.values[q1], row.q1_next[k])
          << "row (" << level_char(row.s1) << level_char(row.s2) << level_char(row.q1)
          << level_char(row.q2) << ") tick " << k + 1;
      EXPECT_EQ(st.values[q2], row.q2_next[k])
          << "row (" << level_char(row.s1) << level_char(row.s2) << level_char(row.q1)
          << level_char(row.q2) << ") tick " << k + 1;
    }
  }

  const double seconds = std::chrono::duration<double>(
      std::chrono::steady_clock::now() - t0).count();
  EXPECT_LT(seconds, 1.0);
}

TEST_F(Acceptance, Criterion2UnstableDriveOscillates) {
  criterion(2, "(High,Low) drive: mixed node pairs oscillate with period 2, uniform pairs settle in place");
  FlatNetlist nl = bare_latch();

  for (auto [q1v, q2v] : {std::pair{L, H}, std::pair{H, L}}) {
    SettleResult r = settle(nl, seeded(nl, H, L, q1v, q2v), 64);
    EXPECT_EQ(r.kind, SettleResult::Kind::Oscillating);
    EXPECT_EQ(r.period, 2u);
  }
  for (auto [q1v, q2v] : {std::pair{L, L}, std::pair{H, H}}) {
    SettleResult r = settle(nl, seeded(nl, H, L, q1v, q2v), 64);
    ASSERT_EQ(r.kind, SettleResult::Kind::Stable);
    EXPECT_EQ(r.state.values[nl.net("q1")], q1v);
    EXPECT_EQ(r.state.values[nl.net("q2")], q2v);
  }
}

TEST_F(Acceptance, Criterion3ControlEquationTable) {
  criterion(3, "control equations reproduce the seven-row drive table over every wildcard expansion");
  const std::vector<std::pair<LogicLevel, LogicLevel>> stored_pairs = {{L, L}, {L, H}, {H, H}};
  const std::vector<std::pair<LogicLevel, LogicLevel>> all_z = {{L, L}, {L, H}, {H, L}, {H, H}};

  int checked = 0;
  for (const conformance::ControlRow& row : conformance::control_rows()) {
    std::vector<std::pair<LogicLevel, LogicLevel>> qs;
    if (row.q < 0) {
      qs = stored_pairs;
    } else {
      qs = {stored_pairs[row.q]};
    }
    std::vector<std::pair<LogicLevel, LogicLevel>> zs;
    if (row.z1 == LogicLevel::Unknown) {
      zs = all_z;
    } else {
      zs = {{row.z1, row.z2}};
    }
    for (auto [q1, q2] : qs) {
      for (auto [z1, z2] : zs) {
        auto [s1, s2] = control_eqs(row.clk, q1, q2, z1, z2, false);
        EXPECT_EQ(s1, row.s1) << "clk " << level_char(row.clk) << " q " << row.q << " z "
                              << level_char(z1) << level_char(z2);
        EXPECT_EQ(s2, row.s2) << "clk " << level_char(row.clk) << " q " << row.q << " z "
                              << level_char(z1) << level_char(z2);

        // The wide complex gates, fed the complemented taps, are the same
        // functions in gate form.
        std::array<LogicLevel, 5> pins = {row.clk, q1 == H ? L : H, q2 == H ? L : H,
                                          z1 == H ? L : H, z2 == H ? L : H};
        EXPECT_EQ(eval_gate(GateKind::AoiS1Wide, pins), row.s1);
        EXPECT_EQ(eval_gate(GateKind::AoiS2Wide, pins), row.s2);
        ++checked;
      }
    }
  }
  EXPECT_EQ(checked, 24);
}

TEST_F(Acceptance, Criterion4ClockedTruthTables) {
  criterion(4, "clocked extraction: level cell 4-row table and D cell 3-row table, each row settling within 4 ticks");

  TruthTableOptions options;
  options.mode = TableMode::Clocked;

  TruthTable level = extract_truth_table(elaborate(build_standard_cell(StdCell::LevelFFF)),
                                         options);
  ASSERT_EQ(level.rows.size(), 4u);
  for (const TruthRow& row : level.rows) {
    ASSERT_FALSE(row.oscillating);
    bool found = false;
    for (const conformance::LevelRow& g : conformance::level_truth_rows()) {
      if (g.z1 == row.inputs[0] && g.z2 == row.inputs[1]) {
        EXPECT_EQ(row.outputs[0], level_of(g.q));
        found = true;
      }
    }
    EXPECT_TRUE(found);
    EXPECT_LE(row.settle_ticks, 4u);
  }

  TruthTable dtab = extract_truth_table(elaborate(build_standard_cell(StdCell::DFFF)),
                                        options);
  ASSERT_EQ(dtab.rows.size(), 3u);
  for (const TruthRow& row : dtab.rows) {
    ASSERT_FALSE(row.oscillating);
    EXPECT_EQ(row.outputs[0], row.inputs[0]);  // q captures d
    EXPECT_LE(row.settle_ticks, 4u);
  }
}

TEST_F(Acceptance, Criterion5SimplificationSoundness) {
  criterion(5, "single-literal control form is exact off the excluded (High,Low) pair; edge cell matches the behavioral model on 1000x100 random cycles");

  bool excluded_pair_differs = false;
  for (LogicLevel clk : {L, H}) {
    for (LogicLevel q1 : {L, H}) {
      for (LogicLevel q2 : {L, H}) {
        for (LogicLevel z1 : {L, H}) {
          for (LogicLevel z2 : {L, H}) {
            auto full = control_eqs(clk, q1, q2, z1, z2, false);
            auto simple = control_eqs(clk, q1, q2, z1, z2, true);
            if (z1 == H && z2 == L) {
              if (full != simple) excluded_pair_differs = true;
            } else {
              EXPECT_EQ(full, simple)
                  << level_char(clk) << level_char(q1) << level_char(q2) << level_char(z1)
                  << level_char(z2);
            }
          }
        }
      }
    }
  }
  EXPECT_TRUE(excluded_pair_differs);  // the simplification is not an identity

  conformance::EquivalenceStats stats =
      conformance::behavioral_equivalence(StdCell::EdgeFFF, 1000, 100, 42);
  EXPECT_EQ(stats.cycles, 1000L * 100L);
  EXPECT_EQ(stats.mismatches, 0) << stats.first_mismatch;
}

TEST_F(Acceptance, Criterion6EdgeProperty) {
  criterion(6, "a constant clock ignores 1000 data perturbations at either level; falling edges leave q unchanged");
  FlatNetlist nl = elaborate(build_standard_cell(StdCell::DFFF));
  std::mt19937_64 rng(2026);
  auto random_level = [&rng] { return level_of(static_cast<Trit>(rng() % 3)); };

  // Clock parked Low after loading '1'.
  Stimulus low;
  low.initial = {{"clk", L}, {"d", L}};
  low.events = {{6, "clk", H}, {12, "clk", L}, {12, "d", M}, {18, "clk", H}, {24, "clk", L}};
  for (int k = 0; k < 1000; ++k) low.events.emplace_back(30 + 2 * k, "d", random_level());
  Waveform wl = run(nl, low, 2048);
  EXPECT_EQ(transitions_at_or_after(wl, "q", 28), 0);
  EXPECT_EQ(wl.value_at(wl.net("q"), 2048), M);

  // Clock parked High after loading '1'.
  Stimulus high;
  high.initial = {{"clk", L}, {"d", L}};
  high.events = {{6, "clk", H}, {12, "clk", L}, {12, "d", M}, {18, "clk", H}};
  for (int k = 0; k < 1000; ++k) high.events.emplace_back(26 + 2 * k, "d", random_level());
  Waveform wh = run(nl, high, 2048);
  EXPECT_EQ(transitions_at_or_after(wh, "q", 24), 0);
  EXPECT_EQ(wh.value_at(wh.net("q"), 2048), M);

  // Free-running clock, data flipped mid-high-phase: every q transition
  // falls inside (rise, rise+4], so no falling edge moves q.
  Stimulus pulses;
  pulses.initial = {{"clk", L}, {"d", L}};
  for (int k = 0; k < 20; ++k) {
    pulses.events.emplace_back(12 * k + 6, "clk", H);
    pulses.events.emplace_back(12 * k + 12, "clk", L);
    pulses.events.emplace_back(12 * k + 9, "d", random_level());
  }
  Waveform wp = run(nl, pulses, 258);
  const auto& q_transitions = wp.transitions[wp.net("q")];
  EXPECT_GT(q_transitions.size(), 1u);
  for (size_t i = 1; i < q_transitions.size(); ++i) {  // entry 0 is the t=0 value
    const SimTime phase = q_transitions[i].first % 12;
    EXPECT_GE(phase, 7u) << "q moved at tick " << q_transitions[i].first;
    EXPECT_LE(phase, 10u) << "q moved at tick " << q_transitions[i].first;
  }
}

TEST_F(Acceptance, Criterion7PowerProxyOrdering) {
  criterion(7, "divisions per tick while holding 0/1/2 come out 0/1/0, and 2 on '1' with the complement output");

  auto measure_holding = [](StdCell cell, Trit value) {
    FlatNetlist nl = elaborate(build_standard_cell(cell));
    Stimulus stim;
    stim.initial = {{"clk", L}, {"d", level_of(value)}};
    stim.events = {{6, "clk", H}, {12, "clk", L}};
    Waveform wave = run(nl, stim, 48);
    return measure(nl, wave, "q", 16);
  };

  for (Trit value : {Trit{0}, Trit{1}, Trit{2}}) {
    PowerReport report = measure_holding(StdCell::DFFF, value);
    ASSERT_EQ(report.hold_ticks.count(value), 1u) << int(value);
    EXPECT_EQ(report.hold_ticks.at(value), 33u);
    EXPECT_DOUBLE_EQ(report.per_hold_value.at(value), value == 1 ? 1.0 : 0.0);
  }

  PowerReport qbar = measure_holding(StdCell::DFFFWithQbar, 1);
  EXPECT_DOUBLE_EQ(qbar.per_hold_value.at(1), 2.0);
}

Circuit random_circuit(std::mt19937_64& rng) {
  auto pick = [&rng](size_t n) { return std::uniform_int_distribution<size_t>(0, n - 1)(rng); };
  Circuit circuit;
  size_t cell_count = 1 + pick(3);
  for (size_t ci = 0; ci < cell_count; ++ci) {
    CellDef def;
    def.name = "cell" + std::to_string(ci);
    std::vector<std::string> driven;
    size_t ins = 1 + pick(3);
    for (size_t i = 0; i < ins; ++i) {
      def.ports.push_back(Port{"i" + std::to_string(i), PortDir::In, pick(4) == 0});
      driven.push_back(def.ports.back().name);
    }
    size_t outs = 1 + pick(2);
    for (size_t i = 0; i < outs; ++i) {
      def.ports.push_back(Port{"o" + std::to_string(i), PortDir::Out, pick(4) == 0});
    }
    int fresh = 0;
    size_t body = 1 + pick(5);
    for (size_t g = 0; g < body; ++g) {
      const GateKind kinds[] = {GateKind::Not, GateKind::And2, GateKind::Or2,
                                GateKind::Averager2, GateKind::Nand2, GateKind::Nor2};
      GateKind kind = kinds[pick(6)];
      std::vector<std::string> srcs;
      for (int p = 0; p < gate_arity(kind); ++p) srcs.push_back(driven[pick(driven.size())]);
      std::string out = "n" + std::to_string(fresh++);
      def.instances.push_back(
          CellInstance{"g" + std::to_string(g), kind, std::move(srcs), {out}});
      driven.push_back(out);
    }
    if (ci > 0 && pick(2) == 0) {
      const CellDef& inner = circuit.defs[pick(ci)];
      std::vector<std::string> srcs;
      for (size_t i = 0; i < inner.input_port_names().size(); ++i) {
        srcs.push_back(driven[pick(driven.size())]);
      }
      std::vector<std::string> sub_outs;
      for (size_t i = 0; i < inner.output_port_names().size(); ++i) {
        sub_outs.push_back("n" + std::to_string(fresh++));
        driven.push_back(sub_outs.back());
      }
      def.instances.push_back(
          CellInstance{"sub", std::string(inner.name), std::move(srcs), std::move(sub_outs)});
    }
    for (size_t i = 0; i < outs; ++i) {
      def.instances.push_back(CellInstance{"drv" + std::to_string(i), GateKind::Buf,
                                           {driven[pick(driven.size())]},
                                           {"o" + std::to_string(i)}});
    }
    circuit.defs.push_back(std::move(def));
  }
  circuit.top = circuit.defs.back().name;
  return circuit;
}

TEST_F(Acceptance, Criterion8ParserRoundTripAndShippedCells) {
  criterion(8, "500 generated circuits round-trip; shipped cell files equal their builders; bad fixtures report source spans");

  std::mt19937_64 rng(500);
  for (int i = 0; i < 500; ++i) {
    Circuit original = random_circuit(rng);
    ParseResult r = parse(serialize(original));
    ASSERT_TRUE(r.ok()) << "circuit " << i << ": " << format_error(r.errors.front());
    ASSERT_TRUE(circuits_equal(original, r.circuit)) << "circuit " << i;
  }

  for (StdCell cell : all_std_cells()) {
    const std::string path =
        std::string(TRITSIM_CELL_DIR) + "/" + std::string(std_cell_name(cell)) + ".tnl";
    std::ifstream in(path);
    ASSERT_TRUE(in.good()) << "missing " << path;
    std::stringstream buffer;
    buffer << in.rdbuf();
    ParseResult r = parse(buffer.str());
    ASSERT_TRUE(r.ok()) << path << ": " << format_error(r.errors.front());
    EXPECT_TRUE(circuits_equal(r.circuit, build_standard_cell(cell))) << path;
    EXPECT_NO_THROW(elaborate(r.circuit)) << path;
  }

  // The parsed D cell drives the same table as the built one, tying the
  // shipped files to the functional criteria above.
  {
    const std::string path = std::string(TRITSIM_CELL_DIR) + "/dfff.tnl";
    std::ifstream in(path);
    ASSERT_TRUE(in.good());
    std::stringstream buffer;
    buffer << in.rdbuf();
    ParseResult r = parse(buffer.str());
    ASSERT_TRUE(r.ok());
    TruthTableOptions options;
    options.mode = TableMode::Clocked;
    TruthTable table = extract_truth_table(elaborate(r.circuit), options);
    ASSERT_EQ(table.rows.size(), 3u);
    for (const TruthRow& row : table.rows) EXPECT_EQ(row.outputs[0], row.inputs[0]);
  }

  ParseResult multi = parse(
      "cell c {\n"
      "  input a;\n"
      "  output y;\n"
      "  inst g1: not(a) -> n;\n"
      "  inst g2: not(a) -> n;\n"
      "  inst g3: or2(n, a) -> y;\n"
      "}\n");
  ASSERT_EQ(multi.errors.size(), 1u);
  EXPECT_NE(multi.errors[0].message.find("multiple drivers"), std::string::npos);
  EXPECT_EQ(multi.errors[0].span.line, 5);
  EXPECT_EQ(multi.errors[0].span.column, 22);

  ParseResult dangling = parse(
      "cell c {\n"
      "  output y;\n"
      "  inst g: not(phantom) -> y;\n"
      "}\n");
  ASSERT_EQ(dangling.errors.size(), 1u);
  EXPECT_NE(dangling.errors[0].message.find("no driver"), std::string::npos);
  EXPECT_EQ(dangling.errors[0].span.line, 3);
  EXPECT_EQ(dangling.errors[0].span.column, 15);
  EXPECT_EQ(dangling.errors[0].span.length, 7);
}

struct CliResult {
  int exit_code = -1;
  std::string output;
};

CliResult run_cli(const std::string& args) {
  CliResult result;
  const std::string cmd = std::string(TRITSIM_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return result;
  char buf[4096];
  size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) result.output.append(buf, n);
  int status = pclose(pipe);
  if (WIFEXITED(status)) result.exit_code = WEXITSTATUS(status);
  return result;
}

TEST_F(Acceptance, Criterion9Determinism) {
  criterion(9, "repeated check and simulate invocations produce byte-identical output");

  CliResult check1 = run_cli("check dfff");
  CliResult check2 = run_cli("check dfff");
  ASSERT_EQ(check1.exit_code, 0) << check1.output;
  EXPECT_EQ(check1.output, check2.output);
  EXPECT_FALSE(check1.output.empty());

  const auto stim_path = std::filesystem::temp_directory_path() / "tritsim_accept_stim.csv";
  {
    std::ofstream out(stim_path);
    out << "time,net,value\n@init,clk,0\n@init,d,0\n6,clk,1\n12,clk,0\n12,d,H\n18,clk,1\n";
  }
  const std::string sim_args =
      "simulate dfff --stimulus " + stim_path.string() + " --until 40 --format vcd";
  CliResult sim1 = run_cli(sim_args);
  CliResult sim2 = run_cli(sim_args);
  ASSERT_EQ(sim1.exit_code, 0) << sim1.output;
  EXPECT_EQ(sim1.output, sim2.output);
  EXPECT_NE(sim1.output.find("$enddefinitions"), std::string::npos);

  const std::string csv_args =
      "simulate dfff --stimulus " + stim_path.string() + " --until 40 --format csv";
  CliResult csv1 = run_cli(csv_args);
  CliResult csv2 = run_cli(csv_args);
  ASSERT_EQ(csv1.exit_code, 0) << csv1.output;
  EXPECT_EQ(csv1.output, csv2.output);
  std::filesystem::remove(stim_path);
}

}  // namespace
}  // namespace tritsim
