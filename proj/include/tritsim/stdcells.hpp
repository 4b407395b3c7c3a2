#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "tritsim/netlist.hpp"

namespace tritsim {

// The built-in storage cells. The latch keeps a trit as the pair of binary
// nodes (q1, q2) averaged onto q; the flip-flap-flops wrap it with clocked
// control gates. Edge-triggered cells take complemented data inputs (z1bar,
// z2bar) because the master hands its inverted outputs straight to the
// slave; the D cell decodes a ternary d into that form with a PTI/NTI pair.
enum class StdCell {
  TLatch,        // s1, s2 -> q, qbar
  TLatchNoQbar,  // s1, s2 -> q
  LevelFFF,      // clk, z1, z2 -> q
  EdgeFFF,       // clk, z1bar, z2bar -> q
  DFFF,          // clk, d -> q
  DFFFWithQbar,  // clk, d -> q, qbar
};

inline constexpr int kStdCellCount = 6;

// Builds the cell plus every sub-cell it instantiates; circuit.top names
// the requested cell.
Circuit build_standard_cell(StdCell which);

std::string_view std_cell_name(StdCell which);
bool std_cell_from_name(std::string_view name, StdCell& out);
std::vector<StdCell> all_std_cells();

}  // namespace tritsim
