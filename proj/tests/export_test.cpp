#include "tritsim/export.hpp"

#include <gtest/gtest.h>

#include "tritsim/netlist.hpp"
#include "tritsim/sim.hpp"
#include "tritsim/stdcells.hpp"

namespace tritsim {
namespace {

constexpr LogicLevel L = LogicLevel::Low;
constexpr LogicLevel M = LogicLevel::Half;
constexpr LogicLevel H = LogicLevel::High;
constexpr LogicLevel U = LogicLevel::Unknown;

Waveform tiny_waveform() {
  Waveform w;
  w.net_names = {"a", "q"};
  w.net_ternary = {false, true};
  w.transitions = {
      {{0, L}, {2, H}},
      {{0, U}, {1, M}, {3, H}},
  };
  w.duration = 4;
  return w;
}

TEST(Glob, Matching) {
  EXPECT_TRUE(glob_match("*", "anything"));
  EXPECT_TRUE(glob_match("*", ""));
  EXPECT_TRUE(glob_match("q*", "q1bar"));
  EXPECT_TRUE(glob_match("*bar", "q1bar"));
  EXPECT_TRUE(glob_match("ff/*/q1", "ff/master/q1"));
  EXPECT_TRUE(glob_match("clk", "clk"));
  EXPECT_FALSE(glob_match("clk", "clkn"));
  EXPECT_FALSE(glob_match("q*", "dq"));
  EXPECT_FALSE(glob_match("", "x"));
}

TEST(Vcd, GoldenBytes) {
  const std::string expected =
      "$version tritsim $end\n"
      "$timescale 1ns $end\n"
      "$scope module top $end\n"
      "$var wire 1 ! a $end\n"
      "$var wire 2 \" q $end\n"
      "$var real 64 # q__level $end\n"
      "$upscope $end\n"
      "$enddefinitions $end\n"
      "$dumpvars\n"
      "0!\n"
      "bxx \"\n"
      "r-1 #\n"
      "$end\n"
      "#1\n"
      "b01 \"\n"
      "r0.5 #\n"
      "#2\n"
      "1!\n"
      "#3\n"
      "b10 \"\n"
      "r1 #\n"
      "#4\n";
  EXPECT_EQ(export_vcd(tiny_waveform()), expected);
}

TEST(Vcd, DeterministicAcrossRuns) {
  FlatNetlist nl = elaborate(build_standard_cell(StdCell::DFFF));
  Stimulus stim = parse_stimulus(
      "@init,clk,0\n@init,d,H\n6,clk,1\n12,clk,0\n12,d,1\n18,clk,1\n");
  std::string a = export_vcd(run(nl, stim, 30));
  std::string b = export_vcd(run(nl, stim, 30));
  EXPECT_EQ(a, b);
  EXPECT_EQ(a.find("$date"), std::string::npos);
}

TEST(Vcd, SelectionAndWarnings) {
  std::vector<std::string> warnings;
  VcdConfig config;
  config.net_selection = {"q", "zz*"};
  std::string out = export_vcd(tiny_waveform(), config, &warnings);
  EXPECT_EQ(out.find(" a $end"), std::string::npos);
  EXPECT_NE(out.find(" q $end"), std::string::npos);
  ASSERT_EQ(warnings.size(), 1u);
  EXPECT_EQ(warnings[0], "pattern 'zz*' matches no net");
}

TEST(Csv, GoldenBytes) {
  const std::string expected =
      "time,a,q\n"
      "0,0,X\n"
      "1,0,H\n"
      "2,1,H\n"
      "3,1,1\n"
      "4,1,1\n";
  EXPECT_EQ(export_csv(tiny_waveform()), expected);
}

TEST(Csv, SelectionOrderFollowsPatterns) {
  std::string out = export_csv(tiny_waveform(), {"q", "a"});
  EXPECT_EQ(out.substr(0, out.find('\n')), "time,q,a");
}

TEST(TruthTable, CombinationalLatch) {
  FlatNetlist nl = elaborate(build_standard_cell(StdCell::TLatchNoQbar));
  TruthTable table = extract_truth_table(nl);
  ASSERT_EQ(table.rows.size(), 4u);
  EXPECT_EQ(table.input_names, (std::vector<std::string>{"s1", "s2"}));
  EXPECT_EQ(table.output_names, (std::vector<std::string>{"q"}));

  // Row order follows the input odometer: (L,L), (L,H), (H,L), (H,H).
  EXPECT_EQ(table.rows[0].outputs[0], L);
  EXPECT_EQ(table.rows[1].outputs[0], M);
  EXPECT_EQ(table.rows[3].outputs[0], H);
  // From a fully unknown core the unstable pair just stays unknown.
  EXPECT_FALSE(table.rows[2].oscillating);
  EXPECT_EQ(table.rows[2].outputs[0], U);
}

TEST(TruthTable, SeededCoreShowsOscillation) {
  FlatNetlist nl = elaborate(build_standard_cell(StdCell::TLatchNoQbar));
  TruthTableOptions options;
  options.init = {{"q1", L}, {"q2", H}};
  TruthTable table = extract_truth_table(nl, options);
  ASSERT_EQ(table.rows.size(), 4u);
  EXPECT_EQ(table.rows[0].outputs[0], L);
  EXPECT_EQ(table.rows[1].outputs[0], M);
  EXPECT_TRUE(table.rows[2].oscillating);
  EXPECT_EQ(table.rows[3].outputs[0], H);

  std::string rendered = render_truth_table(table);
  EXPECT_NE(rendered.find("OSC"), std::string::npos);
  EXPECT_EQ(rendered.find("CLK"), std::string::npos);
}

TEST(TruthTable, CsvMatchesTableValues) {
  FlatNetlist nl = elaborate(build_standard_cell(StdCell::TLatchNoQbar));
  TruthTableOptions options;
  options.init = {{"q1", L}, {"q2", H}};
  TruthTable table = extract_truth_table(nl, options);
  EXPECT_EQ(render_truth_csv(table),
            "s1,s2,q\n"
            "Low,Low,0\n"
            "Low,High,1\n"
            "High,Low,OSC\n"
            "High,High,2\n");

  FlatNetlist dff = elaborate(build_standard_cell(StdCell::DFFF));
  TruthTableOptions clocked;
  clocked.mode = TableMode::Clocked;
  EXPECT_EQ(render_truth_csv(extract_truth_table(dff, clocked)),
            "d,q\n0,0\n1,1\n2,2\n");
}

TEST(TruthTable, ClockedLevelCell) {
  FlatNetlist nl = elaborate(build_standard_cell(StdCell::LevelFFF));
  TruthTableOptions options;
  options.mode = TableMode::Clocked;
  TruthTable table = extract_truth_table(nl, options);
  ASSERT_EQ(table.rows.size(), 4u);
  EXPECT_EQ(table.input_names, (std::vector<std::string>{"z1", "z2"}));
  const LogicLevel expected[] = {L, M, M, H};
  for (size_t i = 0; i < 4; ++i) {
    EXPECT_FALSE(table.rows[i].oscillating) << i;
    EXPECT_EQ(table.rows[i].outputs[0], expected[i]) << i;
    EXPECT_LE(table.rows[i].settle_ticks, 4u) << i;
  }
}

TEST(TruthTable, ClockedDCell) {
  FlatNetlist nl = elaborate(build_standard_cell(StdCell::DFFF));
  TruthTableOptions options;
  options.mode = TableMode::Clocked;
  TruthTable table = extract_truth_table(nl, options);
  ASSERT_EQ(table.rows.size(), 3u);
  EXPECT_EQ(table.input_names, (std::vector<std::string>{"d"}));
  const LogicLevel expected[] = {L, M, H};
  for (size_t i = 0; i < 3; ++i) {
    EXPECT_EQ(table.rows[i].inputs[0], expected[i]) << i;
    EXPECT_EQ(table.rows[i].outputs[0], expected[i]) << i;
    EXPECT_LE(table.rows[i].settle_ticks, 4u) << i;
  }

  std::string rendered = render_truth_table(table, std::string("^"));
  EXPECT_NE(rendered.find("CLK"), std::string::npos);
  EXPECT_NE(rendered.find("^"), std::string::npos);
}

TEST(TruthTable, ClockedNeedsAnInputClock) {
  FlatNetlist nl = elaborate(build_standard_cell(StdCell::TLatchNoQbar));
  TruthTableOptions options;
  options.mode = TableMode::Clocked;
  options.clock_port = "q";  // exists, but an output
  EXPECT_THROW(extract_truth_table(nl, options), ConfigError);
  options.clock_port = "clk";  // absent
  EXPECT_THROW(extract_truth_table(nl, options), StructuralError);
}

}  // namespace
}  // namespace tritsim
