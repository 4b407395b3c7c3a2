#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "tritsim/sim.hpp"
#include "tritsim/stdcells.hpp"

namespace tritsim::conformance {

// Golden data for the storage cells, frozen here so the checks cannot
// drift with the implementation, plus the named checks shared by the
// command-line `check` verb and the test suite.

// Tick-by-tick latch response: drive (s1, s2) with the node pair seeded to
// (q1, q2) and follow the pair for three ticks.
struct LatchStepRow {
  LogicLevel s1, s2;
  LogicLevel q1, q2;
  std::array<LogicLevel, 3> q1_next;
  std::array<LogicLevel, 3> q2_next;
};
const std::vector<LatchStepRow>& latch_step_rows();  // 16 rows

// Control-gate targets. q is the stored trit (matters while clk is Low,
// -1 = any); z1/z2 are the data inputs (matter while clk is High,
// Unknown = any).
struct ControlRow {
  LogicLevel clk;
  int q;  // -1 for any
  LogicLevel z1, z2;
  LogicLevel s1, s2;
};
const std::vector<ControlRow>& control_rows();  // 7 rows

// Level-triggered response while the clock is High.
struct LevelRow {
  LogicLevel z1, z2;
  Trit q;
};
const std::vector<LevelRow>& level_truth_rows();  // 4 rows

// Edge-triggered D response: the trit captured on a rising edge.
const std::vector<std::array<Trit, 2>>& d_truth_rows();  // 3 rows

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;  // populated on failure (and for informative passes)
};

struct CheckOptions {
  uint64_t seed = 1;
  int sequences = 50;      // randomized-equivalence sequences
  int cycles = 20;         // clock cycles per sequence
  SimTime max_ticks = 64;  // settle budget
};

// Runs every check that applies to the cell. All checks are deterministic
// for a fixed seed.
std::vector<CheckResult> run_cell_checks(StdCell cell, const CheckOptions& options = {});

// Randomized structural-vs-behavioral comparison for the clocked cells.
// Each sequence drives `cycles` clock periods (6 ticks Low, 6 High) with
// data redrawn at every low-phase start; q is sampled late in each high
// phase and again inside the following low phase (the hold check).
struct EquivalenceStats {
  long cycles = 0;
  long mismatches = 0;
  std::string first_mismatch;
};
EquivalenceStats behavioral_equivalence(StdCell cell, int sequences, int cycles_per_sequence,
                                        uint64_t seed);

}  // namespace tritsim::conformance
