#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>

namespace tritsim {

// A node voltage. Half is the divided level between Low and High;
// Unknown models uninitialized or conflicting state.
enum class LogicLevel : uint8_t { Low = 0, Half = 1, High = 2, Unknown = 3 };

// A ternary digit. Maps onto LogicLevel by 0<->Low, 1<->Half, 2<->High.
using Trit = uint8_t;

enum class GateKind : uint8_t {
  And2,
  Or2,
  Not,
  Nand2,
  Nor2,
  // Complex control gates. AoiS1/AoiS2 take (c, a, b, z) and compute
  //   AoiS1: !((c + a + b) * (!c + z))
  //   AoiS2: !((c + a*b)   * (!c + z))
  // The wide variants take (c, a, b, z1, z2) and replace the z literal with
  // a two-literal term (z1 + z2 for S1, z1 * z2 for S2). The control pin c
  // is complemented internally for the second factor.
  AoiS1,
  AoiS2,
  AoiS1Wide,
  AoiS2Wide,
  // Ternary-input inverters with positive/negative switching thresholds.
  Pti,
  Nti,
  // Output averager: the voltage divider that produces the Half level.
  Averager2,
  Buf,
};

inline constexpr int kGateKindCount = 13;

struct DomainError : std::logic_error {
  using std::logic_error::logic_error;
};

struct StructuralError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Bad caller-supplied configuration (unknown net or cell names, bad options).
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Number of input pins of a gate kind.
int gate_arity(GateKind kind);

// True if every input pin of the kind must stay binary (Low/High/Unknown).
// Half on such a pin is a wiring bug, not a representable electrical state.
bool gate_binary_only(GateKind kind);

// Netlist-format name of a gate kind ("and2", "aoi_s1w", ...).
std::string_view gate_name(GateKind kind);

// Reverse lookup; returns false if the name is not a primitive.
bool gate_kind_from_name(std::string_view name, GateKind& out);

// Evaluates one gate. Unknown inputs resolve to a concrete output only when
// every concrete substitution of the unknowns agrees; otherwise the output
// is Unknown. Throws StructuralError on arity mismatch and DomainError when
// Half reaches a binary-only pin.
LogicLevel eval_gate(GateKind kind, std::span<const LogicLevel> inputs);

// Level/trit conversion. trit_of throws DomainError on Unknown.
Trit trit_of(LogicLevel level);
LogicLevel level_of(Trit trit);

// One-character display form: Low '0', Half 'H', High '1', Unknown 'X'.
char level_char(LogicLevel level);
bool level_from_char(char c, LogicLevel& out);

std::string_view level_name(LogicLevel level);  // "Low", "Half", ...

}  // namespace tritsim
