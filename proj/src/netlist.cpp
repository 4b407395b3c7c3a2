#include "tritsim/netlist.hpp"

#include <algorithm>
#include <set>

namespace tritsim {

const Port* CellDef::find_port(std::string_view port_name) const {
  for (const auto& p : ports) {
    if (p.name == port_name) return &p;
  }
  return nullptr;
}

std::vector<std::string> CellDef::input_port_names() const {
  std::vector<std::string> out;
  for (const auto& p : ports) {
    if (p.dir == PortDir::In) out.push_back(p.name);
  }
  return out;
}

std::vector<std::string> CellDef::output_port_names() const {
  std::vector<std::string> out;
  for (const auto& p : ports) {
    if (p.dir == PortDir::Out) out.push_back(p.name);
  }
  return out;
}

const CellDef* Circuit::find_def(std::string_view name) const {
  for (const auto& d : defs) {
    if (d.name == name) return &d;
  }
  return nullptr;
}

const CellDef& Circuit::top_def() const {
  const CellDef* d = find_def(top);
  if (!d) throw StructuralError("circuit has no top cell '" + top + "'");
  return *d;
}

std::optional<NetId> FlatNetlist::find_net(std::string_view name) const {
  auto it = net_ids.find(std::string(name));
  if (it == net_ids.end()) return std::nullopt;
  return it->second;
}

NetId FlatNetlist::net(std::string_view name) const {
  auto id = find_net(name);
  if (!id) throw StructuralError("no net named '" + std::string(name) + "'");
  return *id;
}

size_t FlatNetlist::count_gates(GateKind kind) const {
  return static_cast<size_t>(
      std::count_if(gates.begin(), gates.end(),
                    [kind](const FlatGate& g) { return g.kind == kind; }));
}

namespace {

struct Flattener {
  const Circuit& circuit;
  FlatNetlist out;
  std::vector<std::string> def_stack;  // for cycle detection

  explicit Flattener(const Circuit& c) : circuit(c) {}

  NetId intern(const std::string& name) {
    auto it = out.net_ids.find(name);
    if (it != out.net_ids.end()) return it->second;
    NetId id = static_cast<NetId>(out.net_names.size());
    out.net_names.push_back(name);
    out.net_ids.emplace(name, id);
    return id;
  }

  // Maps a local net name to a flat NetId: port nets resolve through the
  // binding map, everything else gets the instance path prefix.
  NetId resolve(const std::unordered_map<std::string, NetId>& bindings,
                const std::string& prefix, const std::string& local) {
    auto it = bindings.find(local);
    if (it != bindings.end()) return it->second;
    return intern(prefix.empty() ? local : prefix + "/" + local);
  }

  void expand(const CellDef& def, const std::string& prefix,
              const std::unordered_map<std::string, NetId>& bindings) {
    for (const auto& n : def_stack) {
      if (n == def.name) {
        throw StructuralError("cell '" + def.name + "' instantiates itself transitively");
      }
    }
    def_stack.push_back(def.name);

    for (const auto& inst : def.instances) {
      const std::string inst_path = prefix.empty() ? inst.name : prefix + "/" + inst.name;
      if (std::holds_alternative<GateKind>(inst.target)) {
        GateKind kind = std::get<GateKind>(inst.target);
        if (static_cast<int>(inst.inputs.size()) != gate_arity(kind)) {
          throw StructuralError("instance '" + inst_path + "': " +
                                std::string(gate_name(kind)) + " expects " +
                                std::to_string(gate_arity(kind)) + " inputs, got " +
                                std::to_string(inst.inputs.size()));
        }
        if (inst.outputs.size() != 1) {
          throw StructuralError("instance '" + inst_path + "': primitive gates drive exactly one net");
        }
        FlatGate g;
        g.kind = kind;
        for (const auto& in : inst.inputs) g.inputs.push_back(resolve(bindings, prefix, in));
        g.output = resolve(bindings, prefix, inst.outputs[0]);
        g.path = inst_path;
        out.gates.push_back(std::move(g));
      } else {
        const std::string& target_name = std::get<std::string>(inst.target);
        const CellDef* target = circuit.find_def(target_name);
        if (!target) {
          throw StructuralError("instance '" + inst_path + "' references undefined cell '" +
                                target_name + "'");
        }
        auto in_ports = target->input_port_names();
        auto out_ports = target->output_port_names();
        if (inst.inputs.size() != in_ports.size() || inst.outputs.size() != out_ports.size()) {
          throw StructuralError("instance '" + inst_path + "': cell '" + target_name +
                                "' expects " + std::to_string(in_ports.size()) + " inputs and " +
                                std::to_string(out_ports.size()) + " outputs");
        }
        std::unordered_map<std::string, NetId> sub_bindings;
        for (size_t i = 0; i < in_ports.size(); ++i) {
          sub_bindings[in_ports[i]] = resolve(bindings, prefix, inst.inputs[i]);
        }
        for (size_t i = 0; i < out_ports.size(); ++i) {
          sub_bindings[out_ports[i]] = resolve(bindings, prefix, inst.outputs[i]);
        }
        expand(*target, inst_path, sub_bindings);
      }
    }
    def_stack.pop_back();
  }
};

}  // namespace

FlatNetlist elaborate(const Circuit& circuit) {
  const CellDef& top = circuit.top_def();
  Flattener fl(circuit);

  // Top-level port nets come first so their ids are stable and readable.
  std::unordered_map<std::string, NetId> top_bindings;
  for (const auto& p : top.ports) {
    top_bindings[p.name] = fl.intern(p.name);
  }
  fl.expand(top, "", top_bindings);

  FlatNetlist net = std::move(fl.out);
  net.net_is_input.assign(net.net_count(), false);
  net.net_ternary.assign(net.net_count(), false);

  for (const auto& p : top.ports) {
    NetId id = net.net_ids.at(p.name);
    if (p.dir == PortDir::In) {
      net.input_nets.push_back(id);
      net.net_is_input[id] = true;
    } else {
      net.output_nets.push_back(id);
    }
    if (p.ternary) net.net_ternary[id] = true;
  }

  // Driver uniqueness, re-verified on the flat graph.
  std::vector<int> drivers(net.net_count(), 0);
  std::vector<std::string> driver_desc(net.net_count());
  for (NetId id : net.input_nets) {
    drivers[id]++;
    driver_desc[id] = "top-level input";
  }
  for (const auto& g : net.gates) {
    if (++drivers[g.output] > 1) {
      throw StructuralError("net '" + net.net_names[g.output] + "' has multiple drivers ('" +
                            g.path + "' and " + driver_desc[g.output] + ")");
    }
    driver_desc[g.output] = "'" + g.path + "'";
  }

  // Dangling pins: every net a gate reads, and every top-level output,
  // needs a driver.
  for (const auto& g : net.gates) {
    for (NetId in : g.inputs) {
      if (drivers[in] == 0) {
        throw StructuralError("net '" + net.net_names[in] + "' read by '" + g.path +
                              "' has no driver");
      }
    }
  }
  for (NetId id : net.output_nets) {
    if (drivers[id] == 0) {
      throw StructuralError("output net '" + net.net_names[id] + "' has no driver");
    }
  }

  // Ternary marking: averager outputs and ternary-inverter inputs may carry
  // Half; Buf passes the property through.
  for (const auto& g : net.gates) {
    if (g.kind == GateKind::Averager2) net.net_ternary[g.output] = true;
    if (g.kind == GateKind::Pti || g.kind == GateKind::Nti) {
      net.net_ternary[g.inputs[0]] = true;
    }
  }
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& g : net.gates) {
      if (g.kind == GateKind::Buf && net.net_ternary[g.inputs[0]] && !net.net_ternary[g.output]) {
        net.net_ternary[g.output] = true;
        changed = true;
      }
    }
  }
  return net;
}

bool circuits_equal(const Circuit& a, const Circuit& b) {
  if (a.top != b.top || a.defs.size() != b.defs.size()) return false;
  for (size_t i = 0; i < a.defs.size(); ++i) {
    const CellDef& da = a.defs[i];
    const CellDef& db = b.defs[i];
    if (da.name != db.name || da.ports.size() != db.ports.size() ||
        da.instances.size() != db.instances.size()) {
      return false;
    }
    for (size_t j = 0; j < da.ports.size(); ++j) {
      const Port& pa = da.ports[j];
      const Port& pb = db.ports[j];
      if (pa.name != pb.name || pa.dir != pb.dir || pa.ternary != pb.ternary) return false;
    }
    for (size_t j = 0; j < da.instances.size(); ++j) {
      const CellInstance& ia = da.instances[j];
      const CellInstance& ib = db.instances[j];
      if (ia.name != ib.name || ia.target != ib.target || ia.inputs != ib.inputs ||
          ia.outputs != ib.outputs) {
        return false;
      }
    }
  }
  return true;
}

}  // namespace tritsim
