#include "tritsim/behavior.hpp"

#include <string>

namespace tritsim {

namespace {

bool to_bool(LogicLevel v, const char* what) {
  if (v == LogicLevel::Low) return false;
  if (v == LogicLevel::High) return true;
  throw DomainError(std::string(what) + " must be binary, got " + std::string(level_name(v)));
}

LogicLevel of_bool(bool v) { return v ? LogicLevel::High : LogicLevel::Low; }

}  // namespace

LatchBehavior::LatchBehavior(LogicLevel q1_init, LogicLevel q2_init)
    : q1(q1_init), q2(q2_init) {
  to_bool(q1, "q1");
  to_bool(q2, "q2");
  if (q1 == LogicLevel::High && q2 == LogicLevel::Low) {
    throw UnstableInput("(q1, q2) = (High, Low) is not a settled latch state");
  }
}

Trit LatchBehavior::value() const {
  return static_cast<Trit>((trit_of(q1) + trit_of(q2)) / 2);
}

Trit latch_settled(LogicLevel s1, LogicLevel s2) {
  bool b1 = to_bool(s1, "s1");
  bool b2 = to_bool(s2, "s2");
  if (b1 && !b2) {
    throw UnstableInput("(s1, s2) = (High, Low) drives the latch into oscillation");
  }
  if (!b1 && !b2) return 0;
  if (!b1 && b2) return 1;
  return 2;
}

Trit decode_z(LogicLevel z1, LogicLevel z2) {
  bool b1 = to_bool(z1, "z1");
  bool b2 = to_bool(z2, "z2");
  if (b1 != b2) return 1;
  return b1 ? 2 : 0;
}

Trit decode_zbar(LogicLevel z1bar, LogicLevel z2bar) {
  bool b1 = to_bool(z1bar, "z1bar");
  bool b2 = to_bool(z2bar, "z2bar");
  if (!b1 && b2) {
    throw UnstableInput("(z1bar, z2bar) = (Low, High) cannot be produced by the master");
  }
  if (b1 && b2) return 0;
  if (b1 && !b2) return 1;
  return 2;
}

FffBehavior level_fff_step(FffBehavior state, LogicLevel clk, LogicLevel z1, LogicLevel z2) {
  if (to_bool(clk, "clk")) state.stored = decode_z(z1, z2);
  state.last_clk = clk;
  return state;
}

FffBehavior edge_fff_step(FffBehavior state, LogicLevel clk, LogicLevel z1bar,
                          LogicLevel z2bar) {
  bool rising = state.last_clk == LogicLevel::Low && clk == LogicLevel::High;
  to_bool(clk, "clk");
  if (rising) state.stored = decode_zbar(z1bar, z2bar);
  state.last_clk = clk;
  return state;
}

FffBehavior d_fff_step(FffBehavior state, LogicLevel clk, Trit d) {
  to_bool(clk, "clk");
  if (state.last_clk == LogicLevel::Low && clk == LogicLevel::High) state.stored = d;
  state.last_clk = clk;
  return state;
}

std::pair<LogicLevel, LogicLevel> control_eqs(LogicLevel clk, LogicLevel q1, LogicLevel q2,
                                              LogicLevel z1, LogicLevel z2, bool simplified) {
  bool c = to_bool(clk, "clk");
  bool b1 = to_bool(q1, "q1");
  bool b2 = to_bool(q2, "q2");
  bool x1 = to_bool(z1, "z1");
  bool x2 = to_bool(z2, "z2");
  bool s1, s2;
  if (simplified) {
    s1 = (!c && b1 && b2) || (c && x1);
    s2 = (!c && (b1 || b2)) || (c && x2);
  } else {
    s1 = (!c && b1 && b2) || (c && x1 && x2);
    s2 = (!c && (b1 || b2)) || (c && (x1 || x2));
  }
  return {of_bool(s1), of_bool(s2)};
}

}  // namespace tritsim
