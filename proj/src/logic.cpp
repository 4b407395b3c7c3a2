#include "tritsim/logic.hpp"

#include <array>
#include <vector>

namespace tritsim {

namespace {

struct GateInfo {
  GateKind kind;
  std::string_view name;
  int arity;
  bool binary_only;
};

constexpr std::array<GateInfo, kGateKindCount> kGateTable = {{
    {GateKind::And2, "and2", 2, true},
    {GateKind::Or2, "or2", 2, true},
    {GateKind::Not, "not", 1, true},
    {GateKind::Nand2, "nand2", 2, true},
    {GateKind::Nor2, "nor2", 2, true},
    {GateKind::AoiS1, "aoi_s1", 4, true},
    {GateKind::AoiS2, "aoi_s2", 4, true},
    {GateKind::AoiS1Wide, "aoi_s1w", 5, true},
    {GateKind::AoiS2Wide, "aoi_s2w", 5, true},
    {GateKind::Pti, "pti", 1, false},
    {GateKind::Nti, "nti", 1, false},
    // The averager bridges two binary nodes; its inputs themselves are binary.
    {GateKind::Averager2, "avg2", 2, true},
    {GateKind::Buf, "buf", 1, false},
}};

const GateInfo& info(GateKind kind) { return kGateTable[static_cast<size_t>(kind)]; }

bool b(LogicLevel v) { return v == LogicLevel::High; }
LogicLevel of_bool(bool v) { return v ? LogicLevel::High : LogicLevel::Low; }

// Evaluates a gate whose inputs are all concrete (no Unknown).
LogicLevel eval_concrete(GateKind kind, std::span<const LogicLevel> in) {
  switch (kind) {
    case GateKind::And2:
      return of_bool(b(in[0]) && b(in[1]));
    case GateKind::Or2:
      return of_bool(b(in[0]) || b(in[1]));
    case GateKind::Not:
      return of_bool(!b(in[0]));
    case GateKind::Nand2:
      return of_bool(!(b(in[0]) && b(in[1])));
    case GateKind::Nor2:
      return of_bool(!(b(in[0]) || b(in[1])));
    case GateKind::AoiS1: {
      bool c = b(in[0]), a = b(in[1]), q = b(in[2]), z = b(in[3]);
      return of_bool(!((c || a || q) && (!c || z)));
    }
    case GateKind::AoiS2: {
      bool c = b(in[0]), a = b(in[1]), q = b(in[2]), z = b(in[3]);
      return of_bool(!((c || (a && q)) && (!c || z)));
    }
    case GateKind::AoiS1Wide: {
      bool c = b(in[0]), a = b(in[1]), q = b(in[2]), z1 = b(in[3]), z2 = b(in[4]);
      return of_bool(!((c || a || q) && (!c || z1 || z2)));
    }
    case GateKind::AoiS2Wide: {
      bool c = b(in[0]), a = b(in[1]), q = b(in[2]), z1 = b(in[3]), z2 = b(in[4]);
      return of_bool(!((c || (a && q)) && (!c || (z1 && z2))));
    }
    case GateKind::Pti:
      // High for inputs below the upper threshold; Low only for High.
      return in[0] == LogicLevel::High ? LogicLevel::Low : LogicLevel::High;
    case GateKind::Nti:
      // Low for inputs above the lower threshold; High only for Low.
      return in[0] == LogicLevel::Low ? LogicLevel::High : LogicLevel::Low;
    case GateKind::Averager2: {
      if (in[0] == in[1]) return in[0];
      return LogicLevel::Half;
    }
    case GateKind::Buf:
      return in[0];
  }
  throw StructuralError("eval_gate: bad gate kind");
}

}  // namespace

int gate_arity(GateKind kind) { return info(kind).arity; }
bool gate_binary_only(GateKind kind) { return info(kind).binary_only; }
std::string_view gate_name(GateKind kind) { return info(kind).name; }

bool gate_kind_from_name(std::string_view name, GateKind& out) {
  for (const auto& g : kGateTable) {
    if (g.name == name) {
      out = g.kind;
      return true;
    }
  }
  return false;
}

LogicLevel eval_gate(GateKind kind, std::span<const LogicLevel> inputs) {
  const GateInfo& g = info(kind);
  if (static_cast<int>(inputs.size()) != g.arity) {
    throw StructuralError("eval_gate: " + std::string(g.name) + " expects " +
                          std::to_string(g.arity) + " inputs, got " +
                          std::to_string(inputs.size()));
  }
  int unknown_count = 0;
  for (LogicLevel v : inputs) {
    if (g.binary_only && v == LogicLevel::Half) {
      throw DomainError("eval_gate: Half on binary-only input of " + std::string(g.name));
    }
    if (v == LogicLevel::Unknown) ++unknown_count;
  }
  if (unknown_count == 0) return eval_concrete(kind, inputs);

  // Resolve Unknowns by enumerating their concrete substitutions. The output
  // is concrete exactly when every substitution agrees.
  std::vector<LogicLevel> scratch(inputs.begin(), inputs.end());
  std::vector<size_t> slots;
  for (size_t i = 0; i < scratch.size(); ++i) {
    if (scratch[i] == LogicLevel::Unknown) slots.push_back(i);
  }
  const bool ternary_fill = !g.binary_only;
  const int radix = ternary_fill ? 3 : 2;
  long combos = 1;
  for (size_t i = 0; i < slots.size(); ++i) combos *= radix;

  LogicLevel merged = LogicLevel::Unknown;
  for (long c = 0; c < combos; ++c) {
    long rest = c;
    for (size_t slot : slots) {
      int digit = static_cast<int>(rest % radix);
      rest /= radix;
      scratch[slot] = ternary_fill ? level_of(static_cast<Trit>(digit))
                                   : (digit ? LogicLevel::High : LogicLevel::Low);
    }
    LogicLevel v = eval_concrete(kind, scratch);
    if (c == 0) {
      merged = v;
    } else if (v != merged) {
      return LogicLevel::Unknown;
    }
  }
  return merged;
}

Trit trit_of(LogicLevel level) {
  switch (level) {
    case LogicLevel::Low:
      return 0;
    case LogicLevel::Half:
      return 1;
    case LogicLevel::High:
      return 2;
    case LogicLevel::Unknown:
      break;
  }
  throw DomainError("trit_of: Unknown has no trit value");
}

LogicLevel level_of(Trit trit) {
  switch (trit) {
    case 0:
      return LogicLevel::Low;
    case 1:
      return LogicLevel::Half;
    case 2:
      return LogicLevel::High;
    default:
      throw DomainError("level_of: trit out of range");
  }
}

char level_char(LogicLevel level) {
  switch (level) {
    case LogicLevel::Low:
      return '0';
    case LogicLevel::Half:
      return 'H';
    case LogicLevel::High:
      return '1';
    case LogicLevel::Unknown:
      break;
  }
  return 'X';
}

bool level_from_char(char c, LogicLevel& out) {
  switch (c) {
    case '0':
      out = LogicLevel::Low;
      return true;
    case 'H':
    case 'h':
      out = LogicLevel::Half;
      return true;
    case '1':
      out = LogicLevel::High;
      return true;
    case 'X':
    case 'x':
      out = LogicLevel::Unknown;
      return true;
    default:
      return false;
  }
}

std::string_view level_name(LogicLevel level) {
  switch (level) {
    case LogicLevel::Low:
      return "Low";
    case LogicLevel::Half:
      return "Half";
    case LogicLevel::High:
      return "High";
    case LogicLevel::Unknown:
      break;
  }
  return "Unknown";
}

}  // namespace tritsim
