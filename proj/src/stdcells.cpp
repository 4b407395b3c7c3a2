#include "tritsim/stdcells.hpp"

namespace tritsim {

namespace {

Port in(std::string name) { return Port{std::move(name), PortDir::In, false}; }
Port in_t(std::string name) { return Port{std::move(name), PortDir::In, true}; }
Port out(std::string name) { return Port{std::move(name), PortDir::Out, false}; }
Port out_t(std::string name) { return Port{std::move(name), PortDir::Out, true}; }

CellInstance gate(std::string name, GateKind kind, std::vector<std::string> ins,
                  std::string output) {
  return CellInstance{std::move(name), kind, std::move(ins), {std::move(output)}};
}

CellInstance sub(std::string name, std::string cell, std::vector<std::string> ins,
                 std::vector<std::string> outs) {
  return CellInstance{std::move(name), std::move(cell), std::move(ins), std::move(outs)};
}

// Cross-coupled AND/OR pair: q1 = s1 * q2, q2 = s2 + q1, one gate delay each.
void latch_pair(CellDef& def) {
  def.instances.push_back(gate("g_and", GateKind::And2, {"s1", "q2"}, "q1"));
  def.instances.push_back(gate("g_or", GateKind::Or2, {"s2", "q1"}, "q2"));
}

void tap_pair(CellDef& def) {
  def.instances.push_back(gate("g_inv1", GateKind::Not, {"q1"}, "q1bar"));
  def.instances.push_back(gate("g_inv2", GateKind::Not, {"q2"}, "q2bar"));
}

// Full latch: both averaged outputs, inverted taps internal.
CellDef tlatch() {
  CellDef def;
  def.name = "tlatch";
  def.ports = {in("s1"), in("s2"), out_t("q"), out_t("qbar")};
  latch_pair(def);
  tap_pair(def);
  def.instances.push_back(gate("g_avg", GateKind::Averager2, {"q1", "q2"}, "q"));
  def.instances.push_back(gate("g_avgbar", GateKind::Averager2, {"q1bar", "q2bar"}, "qbar"));
  return def;
}

CellDef tlatch_noqbar() {
  CellDef def;
  def.name = "tlatch_noqbar";
  def.ports = {in("s1"), in("s2"), out_t("q")};
  latch_pair(def);
  def.instances.push_back(gate("g_avg", GateKind::Averager2, {"q1", "q2"}, "q"));
  return def;
}

// Latch with the inverted taps exposed; used as the slave stage, where the
// control gates consume q1bar/q2bar.
CellDef tlatch_tapped() {
  CellDef def;
  def.name = "tlatch_tapped";
  def.ports = {in("s1"), in("s2"), out_t("q"), out("q1bar"), out("q2bar")};
  latch_pair(def);
  tap_pair(def);
  def.instances.push_back(gate("g_avg", GateKind::Averager2, {"q1", "q2"}, "q"));
  return def;
}

CellDef tlatch_tapped_qbar() {
  CellDef def;
  def.name = "tlatch_tapped_qbar";
  def.ports = {in("s1"), in("s2"), out_t("q"), out_t("qbar"), out("q1bar"), out("q2bar")};
  latch_pair(def);
  tap_pair(def);
  def.instances.push_back(gate("g_avg", GateKind::Averager2, {"q1", "q2"}, "q"));
  def.instances.push_back(gate("g_avgbar", GateKind::Averager2, {"q1bar", "q2bar"}, "qbar"));
  return def;
}

// Master stage: no averager (its division would be superfluous, the slave
// takes the binary taps directly).
CellDef tlatch_master() {
  CellDef def;
  def.name = "tlatch_master";
  def.ports = {in("s1"), in("s2"), out("q1bar"), out("q2bar")};
  latch_pair(def);
  tap_pair(def);
  return def;
}

// Level-triggered FFF: full-form control with the wide complex gates, true
// z1/z2 inputs complemented at the boundary.
CellDef level_fff() {
  CellDef def;
  def.name = "level_fff";
  def.ports = {in("clk"), in("z1"), in("z2"), out_t("q")};
  def.instances.push_back(gate("g_invz1", GateKind::Not, {"z1"}, "z1bar"));
  def.instances.push_back(gate("g_invz2", GateKind::Not, {"z2"}, "z2bar"));
  def.instances.push_back(gate("g_s1", GateKind::AoiS1Wide,
                               {"clk", "q1bar", "q2bar", "z1bar", "z2bar"}, "s1"));
  def.instances.push_back(gate("g_s2", GateKind::AoiS2Wide,
                               {"clk", "q1bar", "q2bar", "z1bar", "z2bar"}, "s2"));
  def.instances.push_back(sub("lat", "tlatch_tapped", {"s1", "s2"}, {"q", "q1bar", "q2bar"}));
  return def;
}

// Master-slave edge-triggered FFF. The master runs on the complemented
// clock and forwards its inverted node pair as the slave's complemented
// data inputs.
CellDef edge_fff_body(const std::string& name, bool with_qbar) {
  CellDef def;
  def.name = name;
  def.ports = {in("clk"), in("z1bar"), in("z2bar")};
  def.ports.push_back(out_t("q"));
  if (with_qbar) def.ports.push_back(out_t("qbar"));

  def.instances.push_back(gate("g_invclk", GateKind::Not, {"clk"}, "clkn"));
  def.instances.push_back(
      gate("g_s1m", GateKind::AoiS1, {"clkn", "q1mbar", "q2mbar", "z1bar"}, "s1m"));
  def.instances.push_back(
      gate("g_s2m", GateKind::AoiS2, {"clkn", "q1mbar", "q2mbar", "z2bar"}, "s2m"));
  def.instances.push_back(sub("master", "tlatch_master", {"s1m", "s2m"}, {"q1mbar", "q2mbar"}));

  def.instances.push_back(
      gate("g_s1s", GateKind::AoiS1, {"clk", "q1sbar", "q2sbar", "q1mbar"}, "s1s"));
  def.instances.push_back(
      gate("g_s2s", GateKind::AoiS2, {"clk", "q1sbar", "q2sbar", "q2mbar"}, "s2s"));
  if (with_qbar) {
    def.instances.push_back(sub("slave", "tlatch_tapped_qbar", {"s1s", "s2s"},
                                {"q", "qbar", "q1sbar", "q2sbar"}));
  } else {
    def.instances.push_back(
        sub("slave", "tlatch_tapped", {"s1s", "s2s"}, {"q", "q1sbar", "q2sbar"}));
  }
  return def;
}

// D FFF: PTI/NTI decoder feeding the edge-triggered core.
CellDef dfff_body(const std::string& name, const std::string& edge_cell, bool with_qbar) {
  CellDef def;
  def.name = name;
  def.ports = {in("clk"), in_t("d"), out_t("q")};
  if (with_qbar) def.ports.push_back(out_t("qbar"));
  def.instances.push_back(gate("g_pti", GateKind::Pti, {"d"}, "dbar_p"));
  def.instances.push_back(gate("g_nti", GateKind::Nti, {"d"}, "dbar_m"));
  std::vector<std::string> outs = {"q"};
  if (with_qbar) outs.push_back("qbar");
  def.instances.push_back(sub("ff", edge_cell, {"clk", "dbar_p", "dbar_m"}, outs));
  return def;
}

}  // namespace

Circuit build_standard_cell(StdCell which) {
  Circuit c;
  switch (which) {
    case StdCell::TLatch:
      c.defs = {tlatch()};
      c.top = "tlatch";
      break;
    case StdCell::TLatchNoQbar:
      c.defs = {tlatch_noqbar()};
      c.top = "tlatch_noqbar";
      break;
    case StdCell::LevelFFF:
      c.defs = {tlatch_tapped(), level_fff()};
      c.top = "level_fff";
      break;
    case StdCell::EdgeFFF:
      c.defs = {tlatch_master(), tlatch_tapped(), edge_fff_body("edge_fff", false)};
      c.top = "edge_fff";
      break;
    case StdCell::DFFF:
      c.defs = {tlatch_master(), tlatch_tapped(), edge_fff_body("edge_fff", false),
                dfff_body("dfff", "edge_fff", false)};
      c.top = "dfff";
      break;
    case StdCell::DFFFWithQbar:
      c.defs = {tlatch_master(), tlatch_tapped_qbar(), edge_fff_body("edge_fff_qbar", true),
                dfff_body("dfff_qbar", "edge_fff_qbar", true)};
      c.top = "dfff_qbar";
      break;
  }
  return c;
}

std::string_view std_cell_name(StdCell which) {
  switch (which) {
    case StdCell::TLatch:
      return "tlatch";
    case StdCell::TLatchNoQbar:
      return "tlatch_noqbar";
    case StdCell::LevelFFF:
      return "level_fff";
    case StdCell::EdgeFFF:
      return "edge_fff";
    case StdCell::DFFF:
      return "dfff";
    case StdCell::DFFFWithQbar:
      return "dfff_qbar";
  }
  return "";
}

bool std_cell_from_name(std::string_view name, StdCell& out) {
  for (StdCell c : all_std_cells()) {
    if (std_cell_name(c) == name) {
      out = c;
      return true;
    }
  }
  return false;
}

std::vector<StdCell> all_std_cells() {
  return {StdCell::TLatch,  StdCell::TLatchNoQbar, StdCell::LevelFFF,
          StdCell::EdgeFFF, StdCell::DFFF,         StdCell::DFFFWithQbar};
}

}  // namespace tritsim
