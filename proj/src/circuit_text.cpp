// SPDX-FileCopyrightText: 2026 qsprep contributors
// SPDX-License-Identifier: Apache-2.0
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "qsprep/circuit.hpp"
#include "qsprep/error.hpp"
#include "qsprep/format.hpp"

namespace qsprep {

namespace {

const char* ket_name(const Vec2& v) {
  if (v == kets::plus()) return "plus";
  if (v == kets::minus()) return "minus";
  if (v == kets::zero()) return "zero";
  if (v == kets::one()) return "one";
  return nullptr;
}

std::string qname(unsigned q) { return "q" + std::to_string(q); }

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

unsigned parse_qubit(std::string_view tok) {
  if (tok.size() < 2 || tok[0] != 'q') throw ValidationError("expected qubit token, got '" + std::string(tok) + "'");
  unsigned v = 0;
  for (char ch : tok.substr(1)) {
    if (ch < '0' || ch > '9') throw ValidationError("bad qubit token '" + std::string(tok) + "'");
    v = v * 10 + static_cast<unsigned>(ch - '0');
  }
  return v;
}

unsigned parse_count(std::string_view tok) {
  unsigned v = 0;
  if (tok.empty()) throw ValidationError("expected a count");
  for (char ch : tok) {
    if (ch < '0' || ch > '9') throw ValidationError("bad count '" + std::string(tok) + "'");
    v = v * 10 + static_cast<unsigned>(ch - '0');
  }
  return v;
}

}  // namespace

std::string emit(const Circuit& c) {
  const DecompositionConstants& k = decomposition_constants();
  std::ostringstream out;
  out << "# qsprep circuit v1\n";
  out << "# decomposition cswap depth " << k.cswap_depth << " cnots " << k.cswap_cnots
      << "; ccswap depth " << k.ccswap_depth << " cnots " << k.ccswap_cnots << "\n";
  out << "qubits " << c.num_qubits() << "\n";
  out << "depth " << c.depth() << "\n";
  bool first = true;
  for (const auto& layer : c.layers()) {
    if (!first) out << "---\n";
    first = false;
    for (const Gate& g : layer) {
      switch (g.kind) {
        case GateKind::u1q:
          out << "u " << qname(g.q[0]);
          for (const cplx& e : g.matrix) out << ' ' << format_double(e.real()) << ' ' << format_double(e.imag());
          break;
        case GateKind::cnot:
          out << "cx " << qname(g.q[0]) << ' ' << qname(g.q[1]);
          break;
        case GateKind::cswap:
          out << "cswap " << qname(g.q[0]) << ' ' << qname(g.q[1]) << ' ' << qname(g.q[2]);
          break;
        case GateKind::ccswap:
          out << "ccswap " << qname(g.q[0]) << ' ' << qname(g.q[1]) << ' ' << (g.polarity[0] ? '1' : '0')
              << (g.polarity[1] ? '1' : '0') << ' ' << qname(g.q[2]) << ' ' << qname(g.q[3]);
          break;
        case GateKind::project:
          out << "proj " << qname(g.q[0]);
          if (const char* name = ket_name(g.onto)) {
            out << ' ' << name;
          } else {
            for (const cplx& e : g.onto) out << ' ' << format_double(e.real()) << ' ' << format_double(e.imag());
          }
          break;
      }
      out << "\n";
    }
  }
  return out.str();
}

Circuit parse_circuit(std::string_view text) {
  std::optional<unsigned> qubits, depth;
  std::optional<Circuit> c;
  std::vector<Gate> layer;
  std::size_t line_no = 0;
  auto fail = [&](const std::string& msg) {
    throw ValidationError("circuit line " + std::to_string(line_no) + ": " + msg);
  };
  while (!text.empty()) {
    const std::size_t eol = text.find('\n');
    const std::string_view line = text.substr(0, eol);
    text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);
    ++line_no;
    const auto tok = split_ws(line);
    if (tok.empty() || tok[0].front() == '#') continue;
    try {
      if (tok[0] == "qubits" && tok.size() == 2 && !qubits) {
        qubits = parse_count(tok[1]);
        continue;
      }
      if (tok[0] == "depth" && tok.size() == 2 && !depth) {
        depth = parse_count(tok[1]);
        continue;
      }
      if (!qubits || !depth) fail("header must give qubits and depth first");
      if (!c) c.emplace(*qubits);
      if (tok[0] == "---") {
        if (tok.size() != 1 || layer.empty()) fail("empty layer");
        c->append_layer(std::move(layer));
        layer.clear();
        continue;
      }
      Gate g;
      if (tok[0] == "u" && tok.size() == 10) {
        Mat2 m;
        for (int k = 0; k < 4; ++k) m[k] = {parse_double(tok[2 + 2 * k]), parse_double(tok[3 + 2 * k])};
        g = Gate::u1q(parse_qubit(tok[1]), m);
      } else if (tok[0] == "cx" && tok.size() == 3) {
        g = Gate::cnot(parse_qubit(tok[1]), parse_qubit(tok[2]));
      } else if (tok[0] == "cswap" && tok.size() == 4) {
        g = Gate::cswap(parse_qubit(tok[1]), parse_qubit(tok[2]), parse_qubit(tok[3]));
      } else if (tok[0] == "ccswap" && tok.size() == 6) {
        const std::string_view pol = tok[3];
        if (pol.size() != 2 || (pol[0] != '0' && pol[0] != '1') || (pol[1] != '0' && pol[1] != '1'))
          fail("polarity must be two bits");
        g = Gate::ccswap(parse_qubit(tok[1]), parse_qubit(tok[2]), pol[0] == '1', pol[1] == '1',
                         parse_qubit(tok[4]), parse_qubit(tok[5]));
      } else if (tok[0] == "proj" && tok.size() == 3) {
        Vec2 v;
        if (tok[2] == "plus") v = kets::plus();
        else if (tok[2] == "minus") v = kets::minus();
        else if (tok[2] == "zero") v = kets::zero();
        else if (tok[2] == "one") v = kets::one();
        else fail("unknown projection target '" + std::string(tok[2]) + "'");
        g = Gate::project(parse_qubit(tok[1]), v);
      } else if (tok[0] == "proj" && tok.size() == 6) {
        g = Gate::project(parse_qubit(tok[1]), {cplx(parse_double(tok[2]), parse_double(tok[3])),
                                                cplx(parse_double(tok[4]), parse_double(tok[5]))});
      } else {
        fail("unrecognized statement '" + std::string(tok[0]) + "'");
      }
      layer.push_back(g);
    } catch (const ValidationError& e) {
      const std::string what = e.what();
      if (what.rfind("circuit line", 0) == 0) throw;
      fail(what);
    }
  }
  if (!qubits || !depth) throw ValidationError("circuit header missing");
  if (!c) c.emplace(*qubits);
  if (!layer.empty()) c->append_layer(std::move(layer));
  if (c->depth() != *depth) throw ValidationError("depth header does not match the layer count");
  return *c;
}

}  // namespace qsprep
