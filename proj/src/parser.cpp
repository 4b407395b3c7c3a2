#include "tritsim/parser.hpp"

#include <cctype>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

namespace tritsim {

namespace {

enum class Tok : uint8_t {
  Ident,
  LBrace,
  RBrace,
  LParen,
  RParen,
  Comma,
  Semi,
  Colon,
  Arrow,
  End,
};

struct Token {
  Tok kind = Tok::End;
  std::string text;
  SourceSpan span;
};

struct Lexer {
  const std::string& src;
  size_t pos = 0;
  int line = 1;
  int col = 1;
  std::vector<ParseError>& errors;

  Lexer(const std::string& s, std::vector<ParseError>& errs) : src(s), errors(errs) {}

  void advance() {
    if (pos < src.size() && src[pos] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
    ++pos;
  }

  Token next() {
    for (;;) {
      while (pos < src.size() && (std::isspace(static_cast<unsigned char>(src[pos])) ||
                                  src[pos] == '\r')) {
        advance();
      }
      if (pos < src.size() && src[pos] == '#') {
        while (pos < src.size() && src[pos] != '\n') advance();
        continue;
      }
      break;
    }
    Token t;
    t.span = {line, col, 1};
    if (pos >= src.size()) {
      t.kind = Tok::End;
      return t;
    }
    char c = src[pos];
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      size_t start = pos;
      while (pos < src.size() && (std::isalnum(static_cast<unsigned char>(src[pos])) ||
                                  src[pos] == '_')) {
        advance();
      }
      t.kind = Tok::Ident;
      t.text = src.substr(start, pos - start);
      t.span.length = static_cast<int>(t.text.size());
      return t;
    }
    switch (c) {
      case '{':
        t.kind = Tok::LBrace;
        advance();
        return t;
      case '}':
        t.kind = Tok::RBrace;
        advance();
        return t;
      case '(':
        t.kind = Tok::LParen;
        advance();
        return t;
      case ')':
        t.kind = Tok::RParen;
        advance();
        return t;
      case ',':
        t.kind = Tok::Comma;
        advance();
        return t;
      case ';':
        t.kind = Tok::Semi;
        advance();
        return t;
      case ':':
        t.kind = Tok::Colon;
        advance();
        return t;
      case '-':
        if (pos + 1 < src.size() && src[pos + 1] == '>') {
          t.kind = Tok::Arrow;
          t.span.length = 2;
          advance();
          advance();
          return t;
        }
        break;
      default:
        break;
    }
    errors.push_back({t.span, std::string("unexpected character '") + c + "'",
                      ParseErrorKind::Lex});
    advance();
    return next();
  }
};

const char* tok_desc(Tok k) {
  switch (k) {
    case Tok::Ident:
      return "identifier";
    case Tok::LBrace:
      return "'{'";
    case Tok::RBrace:
      return "'}'";
    case Tok::LParen:
      return "'('";
    case Tok::RParen:
      return "')'";
    case Tok::Comma:
      return "','";
    case Tok::Semi:
      return "';'";
    case Tok::Colon:
      return "':'";
    case Tok::Arrow:
      return "'->'";
    case Tok::End:
      return "end of input";
  }
  return "?";
}

struct Parser {
  Lexer lex;
  Token cur;
  std::vector<ParseError>& errors;
  Circuit circuit;
  // Spans for semantic checks, parallel to circuit contents.
  struct InstSpans {
    SourceSpan target;
    std::vector<SourceSpan> inputs;
    std::vector<SourceSpan> outputs;
  };
  std::unordered_map<std::string, std::vector<InstSpans>> inst_spans;  // per cell
  std::unordered_map<std::string, std::vector<SourceSpan>> port_spans;
  std::unordered_map<std::string, SourceSpan> cell_spans;

  Parser(const std::string& text, std::vector<ParseError>& errs)
      : lex(text, errs), errors(errs) {
    cur = lex.next();
  }

  void bump() { cur = lex.next(); }

  bool at_ident(std::string_view word) { return cur.kind == Tok::Ident && cur.text == word; }

  void error_here(std::string message, ParseErrorKind kind = ParseErrorKind::Syntax) {
    errors.push_back({cur.span, std::move(message), kind});
  }

  bool expect(Tok kind, const char* what) {
    if (cur.kind == kind) return true;
    error_here(std::string("expected ") + what + ", found " +
               (cur.kind == Tok::Ident ? "'" + cur.text + "'" : tok_desc(cur.kind)));
    return false;
  }

  bool eat(Tok kind, const char* what) {
    if (!expect(kind, what)) return false;
    bump();
    return true;
  }

  // Skips to the next statement boundary inside a cell body.
  void recover_in_cell() {
    while (cur.kind != Tok::End && cur.kind != Tok::Semi && cur.kind != Tok::RBrace) bump();
    if (cur.kind == Tok::Semi) bump();
  }

  void recover_to_cell() {
    while (cur.kind != Tok::End && !at_ident("cell")) bump();
  }

  void parse_file() {
    while (cur.kind != Tok::End) {
      if (at_ident("cell")) {
        parse_cell();
      } else {
        error_here("expected 'cell'");
        bump();
        recover_to_cell();
      }
    }
    if (!circuit.defs.empty()) circuit.top = circuit.defs.back().name;
    check_semantics();
  }

  void parse_cell() {
    bump();  // 'cell'
    CellDef def;
    SourceSpan name_span = cur.span;
    if (!expect(Tok::Ident, "cell name")) {
      recover_to_cell();
      return;
    }
    def.name = cur.text;
    bump();
    if (!eat(Tok::LBrace, "'{'")) {
      recover_to_cell();
      return;
    }
    while (cur.kind != Tok::RBrace && cur.kind != Tok::End) {
      if (at_ident("input") || at_ident("output")) {
        parse_port(def);
      } else if (at_ident("inst")) {
        parse_inst(def);
      } else {
        error_here("expected 'input', 'output' or 'inst'");
        recover_in_cell();
      }
    }
    eat(Tok::RBrace, "'}'");

    if (cell_spans.count(def.name)) {
      errors.push_back({name_span, "duplicate cell '" + def.name + "'",
                        ParseErrorKind::Semantic});
      return;
    }
    cell_spans[def.name] = name_span;
    circuit.defs.push_back(std::move(def));
  }

  void parse_port(CellDef& def) {
    Port port;
    port.dir = at_ident("input") ? PortDir::In : PortDir::Out;
    bump();
    SourceSpan span = cur.span;
    if (!expect(Tok::Ident, "port name")) {
      recover_in_cell();
      return;
    }
    port.name = cur.text;
    bump();
    if (at_ident("ternary")) {
      port.ternary = true;
      bump();
    }
    if (!eat(Tok::Semi, "';'")) {
      recover_in_cell();
      return;
    }
    def.ports.push_back(std::move(port));
    port_spans[def.name].push_back(span);
  }

  void parse_inst(CellDef& def) {
    bump();  // 'inst'
    CellInstance inst;
    InstSpans spans;
    if (!expect(Tok::Ident, "instance name")) {
      recover_in_cell();
      return;
    }
    inst.name = cur.text;
    bump();
    if (!eat(Tok::Colon, "':'")) {
      recover_in_cell();
      return;
    }
    spans.target = cur.span;
    if (!expect(Tok::Ident, "gate or cell name")) {
      recover_in_cell();
      return;
    }
    std::string target_name = cur.text;
    bump();
    if (!eat(Tok::LParen, "'('")) {
      recover_in_cell();
      return;
    }
    for (;;) {
      if (!expect(Tok::Ident, "net name")) {
        recover_in_cell();
        return;
      }
      inst.inputs.push_back(cur.text);
      spans.inputs.push_back(cur.span);
      bump();
      if (cur.kind == Tok::Comma) {
        bump();
        continue;
      }
      break;
    }
    if (!eat(Tok::RParen, "')'") || !eat(Tok::Arrow, "'->'")) {
      recover_in_cell();
      return;
    }
    for (;;) {
      if (!expect(Tok::Ident, "net name")) {
        recover_in_cell();
        return;
      }
      inst.outputs.push_back(cur.text);
      spans.outputs.push_back(cur.span);
      bump();
      if (cur.kind == Tok::Comma) {
        bump();
        continue;
      }
      break;
    }
    if (!eat(Tok::Semi, "';'")) {
      recover_in_cell();
      return;
    }
    GateKind kind;
    if (gate_kind_from_name(target_name, kind)) {
      inst.target = kind;
    } else {
      inst.target = target_name;
    }
    def.instances.push_back(std::move(inst));
    inst_spans[def.name].push_back(std::move(spans));
  }

  void semantic_error(SourceSpan span, std::string message) {
    errors.push_back({span, std::move(message), ParseErrorKind::Semantic});
  }

  void check_semantics() {
    for (const auto& def : circuit.defs) {
      check_cell(def);
    }
    check_hierarchy_cycles();
  }

  void check_cell(const CellDef& def) {
    const auto& pspans = port_spans[def.name];
    std::unordered_set<std::string> port_names;
    for (size_t i = 0; i < def.ports.size(); ++i) {
      if (!port_names.insert(def.ports[i].name).second) {
        semantic_error(pspans[i], "duplicate port '" + def.ports[i].name + "' in cell '" +
                                      def.name + "'");
      }
    }

    // One driver per net: input ports and instance outputs drive.
    std::unordered_map<std::string, std::string> driver;
    for (const auto& p : def.ports) {
      if (p.dir == PortDir::In) driver[p.name] = "input port";
    }
    const auto& ispans = inst_spans[def.name];
    std::unordered_set<std::string> inst_names;
    for (size_t i = 0; i < def.instances.size(); ++i) {
      const CellInstance& inst = def.instances[i];
      const InstSpans& spans = ispans[i];
      if (!inst_names.insert(inst.name).second) {
        semantic_error(spans.target, "duplicate instance '" + inst.name + "' in cell '" +
                                         def.name + "'");
      }

      size_t want_in = 0;
      size_t want_out = 0;
      bool target_known = true;
      if (std::holds_alternative<GateKind>(inst.target)) {
        want_in = static_cast<size_t>(gate_arity(std::get<GateKind>(inst.target)));
        want_out = 1;
      } else {
        const std::string& name = std::get<std::string>(inst.target);
        const CellDef* sub = circuit.find_def(name);
        if (!sub) {
          semantic_error(spans.target, "unknown gate or cell '" + name + "'");
          target_known = false;
        } else {
          want_in = sub->input_port_names().size();
          want_out = sub->output_port_names().size();
        }
      }
      if (target_known &&
          (inst.inputs.size() != want_in || inst.outputs.size() != want_out)) {
        semantic_error(spans.target,
                       "instance '" + inst.name + "' expects " + std::to_string(want_in) +
                           " inputs and " + std::to_string(want_out) + " outputs, got " +
                           std::to_string(inst.inputs.size()) + " and " +
                           std::to_string(inst.outputs.size()));
      }
      for (size_t j = 0; j < inst.outputs.size(); ++j) {
        auto [it, fresh] = driver.emplace(inst.outputs[j], "instance '" + inst.name + "'");
        if (!fresh) {
          semantic_error(spans.outputs[j], "multiple drivers on net '" + inst.outputs[j] +
                                               "' (already driven by " + it->second + ")");
        }
      }
    }

    // Dangling pins: every net an instance reads, and every output port,
    // needs a driver somewhere in the cell (feedback counts, so this runs
    // after all drivers are collected).
    for (size_t i = 0; i < def.instances.size(); ++i) {
      const CellInstance& inst = def.instances[i];
      for (size_t j = 0; j < inst.inputs.size(); ++j) {
        if (!driver.count(inst.inputs[j])) {
          semantic_error(ispans[i].inputs[j],
                         "net '" + inst.inputs[j] + "' read by instance '" + inst.name +
                             "' has no driver");
        }
      }
    }
    for (size_t i = 0; i < def.ports.size(); ++i) {
      if (def.ports[i].dir == PortDir::Out && !driver.count(def.ports[i].name)) {
        semantic_error(pspans[i], "output port '" + def.ports[i].name + "' is never driven");
      }
    }
  }

  void check_hierarchy_cycles() {
    // Colors: 0 new, 1 on stack, 2 done.
    std::unordered_map<std::string, int> color;
    for (const auto& def : circuit.defs) {
      if (visit_for_cycle(def.name, color)) break;  // one report is enough
    }
  }

  bool visit_for_cycle(const std::string& name, std::unordered_map<std::string, int>& color) {
    int& c = color[name];
    if (c == 2) return false;
    if (c == 1) {
      semantic_error(cell_spans[name], "cell '" + name + "' instantiates itself transitively");
      c = 2;
      return true;
    }
    c = 1;
    const CellDef* def = circuit.find_def(name);
    if (def) {
      for (const auto& inst : def->instances) {
        if (std::holds_alternative<std::string>(inst.target)) {
          if (visit_for_cycle(std::get<std::string>(inst.target), color)) return true;
        }
      }
    }
    color[name] = 2;
    return false;
  }
};

}  // namespace

ParseResult parse(const std::string& text) {
  ParseResult result;
  Parser p(text, result.errors);
  p.parse_file();
  if (result.ok()) result.circuit = std::move(p.circuit);
  return result;
}

std::string serialize(const Circuit& circuit) {
  std::ostringstream out;
  out << "# tritsim netlist\n";

  auto emit = [&out](const CellDef& def) {
    out << "cell " << def.name << " {\n";
    for (const auto& p : def.ports) {
      out << "  " << (p.dir == PortDir::In ? "input" : "output") << " " << p.name;
      if (p.ternary) out << " ternary";
      out << ";\n";
    }
    for (const auto& inst : def.instances) {
      out << "  inst " << inst.name << ": ";
      if (std::holds_alternative<GateKind>(inst.target)) {
        out << gate_name(std::get<GateKind>(inst.target));
      } else {
        out << std::get<std::string>(inst.target);
      }
      out << "(";
      for (size_t i = 0; i < inst.inputs.size(); ++i) {
        if (i) out << ", ";
        out << inst.inputs[i];
      }
      out << ") -> ";
      for (size_t i = 0; i < inst.outputs.size(); ++i) {
        if (i) out << ", ";
        out << inst.outputs[i];
      }
      out << ";\n";
    }
    out << "}\n";
  };

  // The top cell goes last; parse() recovers it from that position.
  for (const auto& def : circuit.defs) {
    if (def.name != circuit.top) {
      emit(def);
      out << "\n";
    }
  }
  if (const CellDef* top = circuit.find_def(circuit.top)) emit(*top);
  return out.str();
}

std::string format_error(const ParseError& error) {
  std::ostringstream out;
  out << error.span.line << ":" << error.span.column << ": ";
  switch (error.kind) {
    case ParseErrorKind::Lex:
      out << "lex error: ";
      break;
    case ParseErrorKind::Syntax:
      out << "syntax error: ";
      break;
    case ParseErrorKind::Semantic:
      out << "error: ";
      break;
  }
  out << error.message;
  return out.str();
}

}  // namespace tritsim
