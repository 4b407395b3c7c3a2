#pragma once

#include <utility>

#include "tritsim/logic.hpp"

namespace tritsim {

// Behavioral (golden) models of the storage cells, kept deliberately tiny:
// the structural netlists are tested against these.

struct UnstableInput : DomainError {
  using DomainError::DomainError;
};

// Settled binary node pair of the latch. (High, Low) is the unstable control
// combination and is not representable as a settled state.
struct LatchBehavior {
  LatchBehavior(LogicLevel q1_init, LogicLevel q2_init);
  LogicLevel q1;
  LogicLevel q2;
  Trit value() const;  // (q1 + q2) / 2
};

// One stored trit plus the previous clock level for edge detection.
struct FffBehavior {
  Trit stored = 0;
  LogicLevel last_clk = LogicLevel::Low;
};

// Settled latch output for a held (s1, s2): (Low,Low) -> 0, (Low,High) -> 1,
// (High,High) -> 2. Throws UnstableInput on (High,Low).
Trit latch_settled(LogicLevel s1, LogicLevel s2);

// Value selected by a (z1, z2) pair while the clock is High: equal inputs
// store 0 or 2, mixed inputs store 1.
Trit decode_z(LogicLevel z1, LogicLevel z2);

// Same through complemented inputs, as the edge cell receives them:
// (High,High) -> 0, (High,Low) -> 1, (Low,Low) -> 2. (Low,High) is the
// combination the master stage can never produce; throws UnstableInput.
Trit decode_zbar(LogicLevel z1bar, LogicLevel z2bar);

// Level-triggered: transparent while clk is High, holds while Low.
FffBehavior level_fff_step(FffBehavior state, LogicLevel clk, LogicLevel z1, LogicLevel z2);

// Edge-triggered core: captures decode_zbar(z1bar, z2bar) on a Low->High
// clock transition, otherwise holds.
FffBehavior edge_fff_step(FffBehavior state, LogicLevel clk, LogicLevel z1bar,
                          LogicLevel z2bar);

// D cell: captures d on a rising edge, otherwise holds.
FffBehavior d_fff_step(FffBehavior state, LogicLevel clk, Trit d);

// The control equations, evaluated literally over binary levels. The full
// form drives s1 from z1*z2 and s2 from z1+z2; the simplified form uses the
// single literals z1 and z2, valid when (z1, z2) = (High, Low) cannot occur.
std::pair<LogicLevel, LogicLevel> control_eqs(LogicLevel clk, LogicLevel q1, LogicLevel q2,
                                              LogicLevel z1, LogicLevel z2, bool simplified);

}  // namespace tritsim
