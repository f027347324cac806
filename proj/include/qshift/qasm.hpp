#pragma once

// OpenQASM text export and import.
//
// Version 3.0 (default): registers are declared by role as
//   qubit[m] p; qubit[1] coin; qubit[1] a; qubit[k] c;
// and gates are spelled with stdgates.inc names. Controls beyond the base
// gate use `ctrl @` / `negctrl @` modifiers, one run of equal polarity per
// modifier, outermost modifier first, in ascending qubit order. Export then
// import gives back the identical gate list.
//
// Version 2.0: `qreg` declarations and qelib1.inc names (u1/cu1 for phases).
// Negative controls are emitted as X-conjugated positive controls, and MCX
// with more than two controls is rejected; lower it first.
//
// Angles are printed with 17 significant digits; the importer also accepts
// arithmetic on `pi`.

#include <cctype>
#include <cstdio>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "qshift/circuit.hpp"
#include "qshift/passes.hpp"

namespace qshift {

class QasmError : public std::runtime_error {
 public:
  explicit QasmError(const std::string& message) : std::runtime_error(message) {}
};

enum class QasmVersion : std::uint8_t { v2, v3 };

struct ExportOptions {
  QasmVersion version = QasmVersion::v3;
  /// v3 only; v2 always expands negative controls.
  bool expand_negative_controls = false;
};

namespace detail {

struct RegisterRef {
  std::string name;
  std::uint32_t offset;
  std::uint32_t size;
};

inline std::vector<RegisterRef> registers_of(const RegisterLayout& layout) {
  std::vector<RegisterRef> regs;
  if (layout.position_count() > 0) regs.push_back({"p", 0, layout.position_count()});
  regs.push_back({"coin", layout.coin().index, 1});
  if (auto a = layout.parallel_ancilla()) regs.push_back({"a", a->index, 1});
  if (layout.decomposition_count() > 0)
    regs.push_back({"c", layout.decomposition_ancilla(0).index, layout.decomposition_count()});
  return regs;
}

inline std::string qubit_name(const RegisterLayout& layout, QubitId q) {
  for (const auto& r : registers_of(layout))
    if (q.index >= r.offset && q.index < r.offset + r.size)
      return r.name + "[" + std::to_string(q.index - r.offset) + "]";
  throw QasmError("qubit " + std::to_string(q.index) + " outside layout");
}

inline std::string format_angle(double angle) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", angle);
  return buf;
}

inline std::string modifier(Polarity p, std::size_t n) {
  std::string m = p == Polarity::positive ? "ctrl" : "negctrl";
  if (n > 1) m += "(" + std::to_string(n) + ")";
  return m + " @ ";
}

inline std::string gate_line(const Gate& g, const RegisterLayout& layout, QasmVersion v) {
  std::string head;
  std::vector<QubitId> args;
  const auto& ctl = g.controls();
  const bool all_positive = !g.has_negative_control();

  auto with_modifiers = [&](std::string base) {
    std::string mods;
    for (std::size_t i = 0; i < ctl.size();) {
      std::size_t j = i;
      while (j < ctl.size() && ctl[j].polarity == ctl[i].polarity) ++j;
      mods += modifier(ctl[i].polarity, j - i);
      i = j;
    }
    for (const auto& c : ctl) args.push_back(c.qubit);
    return mods + base;
  };

  switch (g.kind()) {
    case GateKind::X: head = "x"; break;
    case GateKind::H: head = "h"; break;
    case GateKind::SX: head = "sx"; break;
    case GateKind::RZ: head = "rz(" + format_angle(g.angle()) + ")"; break;
    case GateKind::Phase:
      head = (v == QasmVersion::v2 ? "u1(" : "p(") + format_angle(g.angle()) + ")";
      break;
    case GateKind::Swap: head = "swap"; break;
    case GateKind::MCX:
      if (all_positive && ctl.size() <= 2) {
        head = ctl.size() == 1 ? "cx" : "ccx";
        for (const auto& c : ctl) args.push_back(c.qubit);
      } else if (v == QasmVersion::v2) {
        throw QasmError("OpenQASM 2.0 export: " + census_name({g.kind(), ctl.size()}) +
                        " has no native spelling; lower it first");
      } else {
        head = with_modifiers("x");
      }
      break;
    case GateKind::CPhase:
      if (all_positive) {
        head = (v == QasmVersion::v2 ? "cu1(" : "cp(") + format_angle(g.angle()) + ")";
        args.push_back(ctl[0].qubit);
      } else {
        head = with_modifiers("p(" + format_angle(g.angle()) + ")");
      }
      break;
  }
  for (const auto& t : g.targets()) args.push_back(t);
  std::string line = head + " ";
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (i) line += v == QasmVersion::v2 ? "," : ", ";
    line += qubit_name(layout, args[i]);
  }
  return line + ";\n";
}

}  // namespace detail

inline std::string export_text(const Circuit& circuit, const ExportOptions& options = {}) {
  const auto v = options.version;
  const Circuit& body =
      (v == QasmVersion::v2 || options.expand_negative_controls)
          ? lower_negative_controls(circuit)
          : circuit;
  std::ostringstream out;
  if (v == QasmVersion::v3) {
    out << "OPENQASM 3.0;\ninclude \"stdgates.inc\";\n";
  } else {
    out << "OPENQASM 2.0;\ninclude \"qelib1.inc\";\n";
  }
  for (const auto& r : detail::registers_of(circuit.layout())) {
    if (v == QasmVersion::v3) {
      out << "qubit[" << r.size << "] " << r.name << ";\n";
    } else {
      out << "qreg " << r.name << "[" << r.size << "];\n";
    }
  }
  for (const auto& g : body) out << detail::gate_line(g, circuit.layout(), v);
  return out.str();
}

namespace detail {

// Recursive-descent evaluator for angle expressions: numbers, pi, + - * / ().
class AngleParser {
 public:
  explicit AngleParser(std::string_view s) : s_(s) {}

  double parse() {
    const double v = sum();
    skip_ws();
    if (i_ != s_.size()) fail();
    return v;
  }

 private:
  double sum() {
    double v = product();
    for (;;) {
      skip_ws();
      if (eat('+')) v += product();
      else if (eat('-')) v -= product();
      else return v;
    }
  }
  double product() {
    double v = unary();
    for (;;) {
      skip_ws();
      if (eat('*')) v *= unary();
      else if (eat('/')) v /= unary();
      else return v;
    }
  }
  double unary() {
    skip_ws();
    if (eat('-')) return -unary();
    if (eat('+')) return unary();
    if (eat('(')) {
      const double v = sum();
      skip_ws();
      if (!eat(')')) fail();
      return v;
    }
    if (s_.substr(i_, 2) == "pi") {
      i_ += 2;
      return std::numbers::pi;
    }
    const std::size_t start = i_;
    while (i_ < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[i_])) ||
                              s_[i_] == '.' || s_[i_] == 'e' || s_[i_] == 'E' ||
                              ((s_[i_] == '-' || s_[i_] == '+') && i_ > start &&
                               (s_[i_ - 1] == 'e' || s_[i_ - 1] == 'E'))))
      ++i_;
    if (i_ == start) fail();
    const std::string tok(s_.substr(start, i_ - start));
    std::size_t used = 0;
    double v = 0;
    try {
      v = std::stod(tok, &used);
    } catch (const std::exception&) {
      fail();
    }
    if (used != tok.size()) fail();
    return v;
  }
  void skip_ws() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }
  bool eat(char c) {
    if (i_ < s_.size() && s_[i_] == c) {
      ++i_;
      return true;
    }
    return false;
  }
  [[noreturn]] void fail() const {
    throw QasmError("bad angle expression '" + std::string(s_) + "'");
  }

  std::string_view s_;
  std::size_t i_ = 0;
};

inline std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

inline bool starts_with_word(const std::string& s, std::string_view w) {
  return s.rfind(w, 0) == 0 &&
         (s.size() == w.size() || std::isspace(static_cast<unsigned char>(s[w.size()])) ||
          s[w.size()] == '[');
}

}  // namespace detail

/// Parses text produced by export_text (either version), plus hand-written
/// files that use the same register names. A file declaring a single
/// register `q` is read as a plain register whose top qubit is the coin.
inline Circuit import_text(std::string_view text) {
  using detail::trim;
  // strip comments
  std::string clean;
  std::vector<int> line_of;  // line number per character of `clean`
  {
    int line = 1;
    for (std::size_t i = 0; i < text.size(); ++i) {
      if (text[i] == '/' && i + 1 < text.size() && text[i + 1] == '/') {
        while (i < text.size() && text[i] != '\n') ++i;
        if (i == text.size()) break;
      } else if (text[i] == '/' && i + 1 < text.size() && text[i + 1] == '*') {
        const auto end = text.find("*/", i + 2);
        if (end == std::string_view::npos)
          throw QasmError("line " + std::to_string(line) + ": unterminated comment");
        // keep newlines so line numbers stay right
        for (; i < end + 2; ++i)
          if (text[i] == '\n') {
            clean.push_back('\n');
            line_of.push_back(line++);
          }
        clean.push_back(' ');
        line_of.push_back(line);
        --i;
        continue;
      }
      clean.push_back(text[i]);
      line_of.push_back(line);
      if (text[i] == '\n') ++line;
    }
  }

  struct Statement {
    std::string text;
    int line;
  };
  std::vector<Statement> statements;
  {
    std::size_t start = 0;
    for (std::size_t i = 0; i <= clean.size(); ++i) {
      if (i < clean.size() && clean[i] != ';') continue;
      auto s = trim(std::string_view(clean).substr(start, i - start));
      if (!s.empty()) {
        std::size_t first = start;
        while (std::isspace(static_cast<unsigned char>(clean[first]))) ++first;
        if (i == clean.size())
          throw QasmError("line " + std::to_string(line_of[first]) + ": missing ';'");
        statements.push_back({s, line_of[first]});
      }
      start = i + 1;
    }
  }

  auto error = [](const Statement& st, const std::string& msg) {
    return QasmError("line " + std::to_string(st.line) + ": " + msg);
  };

  std::map<std::string, std::uint32_t> sizes;
  std::vector<const Statement*> gate_statements;
  bool saw_header = false;
  for (const auto& st : statements) {
    const auto& s = st.text;
    if (detail::starts_with_word(s, "OPENQASM")) {
      const auto ver = trim(s.substr(8));
      if (ver != "3.0" && ver != "3" && ver != "2.0")
        throw error(st, "unsupported OpenQASM version '" + ver + "'");
      saw_header = true;
    } else if (detail::starts_with_word(s, "include")) {
      continue;
    } else if (s.rfind("qubit[", 0) == 0) {
      const auto close = s.find(']');
      if (close == std::string::npos) throw error(st, "malformed qubit declaration");
      const auto name = trim(s.substr(close + 1));
      const auto n = std::stoul(s.substr(6, close - 6));
      if (!sizes.emplace(name, static_cast<std::uint32_t>(n)).second)
        throw error(st, "register '" + name + "' declared twice");
    } else if (detail::starts_with_word(s, "qreg")) {
      const auto body = trim(s.substr(4));
      const auto open = body.find('[');
      const auto close = body.find(']');
      if (open == std::string::npos || close == std::string::npos)
        throw error(st, "malformed qreg declaration");
      const auto name = trim(body.substr(0, open));
      const auto n = std::stoul(body.substr(open + 1, close - open - 1));
      if (!sizes.emplace(name, static_cast<std::uint32_t>(n)).second)
        throw error(st, "register '" + name + "' declared twice");
    } else {
      gate_statements.push_back(&st);
    }
  }
  if (!saw_header) throw QasmError("missing OPENQASM header");

  RegisterLayout layout;
  std::map<std::string, std::uint32_t> offsets;
  if (sizes.size() == 1 && sizes.count("q")) {
    layout = RegisterLayout::plain(sizes["q"]);
    offsets["q"] = 0;
  } else {
    for (const auto& [name, n] : sizes)
      if (name != "p" && name != "coin" && name != "a" && name != "c")
        throw QasmError("unknown register '" + name + "' (expected p, coin, a, c)");
    if (!sizes.count("coin") || sizes["coin"] != 1)
      throw QasmError("a one-qubit 'coin' register is required");
    if (sizes.count("a") && sizes["a"] != 1)
      throw QasmError("register 'a' must have one qubit");
    const std::uint32_t m = sizes.count("p") ? sizes["p"] : 0;
    layout = RegisterLayout(m, sizes.count("a") > 0, sizes.count("c") ? sizes["c"] : 0);
    for (const auto& r : detail::registers_of(layout)) offsets[r.name] = r.offset;
  }

  Circuit circuit(layout);
  for (const auto* stp : gate_statements) {
    const auto& st = *stp;
    std::string s = st.text;

    // modifiers
    std::vector<Polarity> modifier_controls;
    for (;;) {
      const auto at = s.find('@');
      if (at == std::string::npos) break;
      const auto mod = trim(s.substr(0, at));
      Polarity p;
      std::string rest;
      if (mod.rfind("negctrl", 0) == 0) {
        p = Polarity::negative;
        rest = trim(mod.substr(7));
      } else if (mod.rfind("ctrl", 0) == 0) {
        p = Polarity::positive;
        rest = trim(mod.substr(4));
      } else {
        throw error(st, "unsupported modifier '" + mod + "'");
      }
      std::size_t n = 1;
      if (!rest.empty()) {
        if (rest.front() != '(' || rest.back() != ')')
          throw error(st, "malformed modifier '" + mod + "'");
        n = std::stoul(rest.substr(1, rest.size() - 2));
      }
      modifier_controls.insert(modifier_controls.end(), n, p);
      s = trim(s.substr(at + 1));
    }

    // name, optional parameter, arguments
    std::size_t i = 0;
    while (i < s.size() && (std::isalnum(static_cast<unsigned char>(s[i])) || s[i] == '_')) ++i;
    const std::string name = s.substr(0, i);
    std::optional<double> angle;
    std::string rest = trim(s.substr(i));
    if (!rest.empty() && rest.front() == '(') {
      int depth = 0;
      std::size_t j = 0;
      for (; j < rest.size(); ++j) {
        if (rest[j] == '(') ++depth;
        if (rest[j] == ')' && --depth == 0) break;
      }
      if (j == rest.size()) throw error(st, "unbalanced parentheses");
      angle = detail::AngleParser(rest.substr(1, j - 1)).parse();
      rest = trim(rest.substr(j + 1));
    }
    std::vector<std::uint32_t> qubits;
    {
      std::stringstream ss(rest);
      std::string arg;
      while (std::getline(ss, arg, ',')) {
        arg = trim(arg);
        const auto open = arg.find('[');
        std::string reg = trim(arg.substr(0, open));
        std::uint32_t idx = 0;
        if (open != std::string::npos) {
          const auto close = arg.find(']', open);
          if (close == std::string::npos) throw error(st, "malformed operand '" + arg + "'");
          idx = static_cast<std::uint32_t>(std::stoul(arg.substr(open + 1, close - open - 1)));
        } else if (!sizes.count(reg) || sizes[reg] != 1) {
          throw error(st, "operand '" + arg + "' needs an index");
        }
        if (!offsets.count(reg)) throw error(st, "undeclared register '" + reg + "'");
        if (idx >= sizes[reg]) throw error(st, "index out of range in '" + arg + "'");
        qubits.push_back(offsets[reg] + idx);
      }
    }

    std::vector<Polarity> pol = modifier_controls;
    std::string base = name;
    if (name == "cx") {
      pol.push_back(Polarity::positive);
      base = "x";
    } else if (name == "ccx") {
      pol.insert(pol.end(), 2, Polarity::positive);
      base = "x";
    } else if (name == "cp" || name == "cu1") {
      pol.push_back(Polarity::positive);
      base = "p";
    } else if (name == "u1") {
      base = "p";
    }
    const std::size_t expected_targets = base == "swap" ? 2 : 1;
    if (qubits.size() != pol.size() + expected_targets)
      throw error(st, "'" + name + "' expects " + std::to_string(pol.size() + expected_targets) +
                          " operands, got " + std::to_string(qubits.size()));
    std::vector<Control> controls;
    for (std::size_t k = 0; k < pol.size(); ++k) controls.push_back({QubitId{qubits[k]}, pol[k]});
    const auto t = qubits[pol.size()];
    const bool needs_angle = base == "rz" || base == "p";
    if (needs_angle != angle.has_value())
      throw error(st, needs_angle ? "'" + name + "' needs an angle"
                                  : "'" + name + "' takes no angle");

    try {
      if (base == "x") {
        circuit.append(Gate::mcx(std::move(controls), t));
      } else if (base == "p") {
        if (controls.empty()) circuit.append(Gate::phase(t, *angle));
        else if (controls.size() == 1) circuit.append(Gate::cphase(controls[0], t, *angle));
        else throw error(st, "multi-controlled phase is not supported");
      } else if (!controls.empty()) {
        throw error(st, "controls on '" + base + "' are not supported");
      } else if (base == "h") {
        circuit.append(Gate::h(t));
      } else if (base == "sx") {
        circuit.append(Gate::sx(t));
      } else if (base == "rz") {
        circuit.append(Gate::rz(t, *angle));
      } else if (base == "swap") {
        circuit.append(Gate::swap(t, qubits[1]));
      } else {
        throw error(st, "unknown gate '" + name + "'");
      }
    } catch (const CircuitError& e) {
      throw error(st, e.what());
    }
  }
  return circuit;
}

}  // namespace qshift
