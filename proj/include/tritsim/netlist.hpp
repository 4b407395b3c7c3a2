#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <variant>
#include <vector>

#include "tritsim/logic.hpp"

namespace tritsim {

enum class PortDir : uint8_t { In, Out };

struct Port {
  std::string name;
  PortDir dir = PortDir::In;
  bool ternary = false;  // unmarked ports are binary and reject Half
};

// One gate or sub-cell instance. Pins are positional: inputs bind to the
// target's input ports in declaration order, outputs likewise.
struct CellInstance {
  std::string name;
  std::variant<GateKind, std::string> target;  // primitive or cell name
  std::vector<std::string> inputs;
  std::vector<std::string> outputs;
};

struct CellDef {
  std::string name;
  std::vector<Port> ports;
  std::vector<CellInstance> instances;

  const Port* find_port(std::string_view port_name) const;
  std::vector<std::string> input_port_names() const;
  std::vector<std::string> output_port_names() const;
};

struct Circuit {
  std::vector<CellDef> defs;
  std::string top;

  const CellDef* find_def(std::string_view name) const;
  const CellDef& top_def() const;
};

using NetId = uint32_t;

struct FlatGate {
  GateKind kind;
  std::vector<NetId> inputs;
  NetId output;
  std::string path;  // hierarchical instance path, '/'-separated
};

// Primitive-only gate graph with qualified net names. Immutable after
// elaboration; simulation runs share it freely.
struct FlatNetlist {
  std::vector<std::string> net_names;
  std::unordered_map<std::string, NetId> net_ids;
  std::vector<FlatGate> gates;
  std::vector<NetId> input_nets;   // top-level In ports, declaration order
  std::vector<NetId> output_nets;  // top-level Out ports
  std::vector<bool> net_is_input;  // primary-input flag per net
  std::vector<bool> net_ternary;   // net may legally carry Half

  size_t net_count() const { return net_names.size(); }
  std::optional<NetId> find_net(std::string_view name) const;
  NetId net(std::string_view name) const;  // throws StructuralError if absent
  size_t count_gates(GateKind kind) const;
};

// Flattens the hierarchy below circuit.top into primitive gates. Net names
// inside an instance `m` become `m/<name>`; nets bound to parent nets keep
// the parent name. Verifies driver uniqueness, reference resolution, pin
// arity and hierarchy acyclicity; throws StructuralError with the offending
// net or instance path.
FlatNetlist elaborate(const Circuit& circuit);

// Structural equality of circuits (names, ports, instances, order).
bool circuits_equal(const Circuit& a, const Circuit& b);

}  // namespace tritsim
