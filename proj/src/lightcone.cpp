// SPDX-FileCopyrightText: 2026 qsprep contributors
// SPDX-License-Identifier: Apache-2.0
#include "qsprep/lightcone.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "qsprep/error.hpp"

namespace qsprep {

GroupingSchedule::GroupingSchedule(unsigned num_qubits, std::vector<std::vector<std::vector<unsigned>>> layers)
    : num_qubits_(num_qubits) {
  if (num_qubits == 0) throw ValidationError("schedule needs at least one qubit");
  constexpr unsigned none = std::numeric_limits<unsigned>::max();
  for (auto& layer : layers) {
    std::vector<unsigned> of(num_qubits, none);
    std::vector<std::vector<unsigned>> groups;
    for (auto& g : layer) {
      if (g.empty()) continue;
      for (unsigned q : g) {
        if (q >= num_qubits) throw ValidationError("schedule qubit out of range");
        if (of[q] != none) throw ValidationError("qubit " + std::to_string(q) + " in two groups of one layer");
        of[q] = static_cast<unsigned>(groups.size());
      }
      std::sort(g.begin(), g.end());
      groups.push_back(std::move(g));
    }
    for (unsigned q = 0; q < num_qubits; ++q)
      if (of[q] == none) {
        of[q] = static_cast<unsigned>(groups.size());
        groups.push_back({q});
      }
    groups_.push_back(std::move(groups));
    group_of_.push_back(std::move(of));
  }
}

unsigned GroupingSchedule::max_group() const {
  std::size_t k = 1;
  for (const auto& layer : groups_)
    for (const auto& g : layer) k = std::max(k, g.size());
  return static_cast<unsigned>(k);
}

GroupingSchedule GroupingSchedule::parse(std::string_view text) {
  std::vector<std::vector<std::vector<unsigned>>> layers;
  unsigned width = 0, max_q = 0;
  bool fixed = false, any = false;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream probe(line);
    std::string first;
    if (!(probe >> first)) continue;
    if (first == "qubits") {
      if (!(probe >> width) || width == 0) throw ValidationError("line " + std::to_string(lineno) + ": bad qubits line");
      fixed = true;
      continue;
    }
    std::vector<std::vector<unsigned>> layer;
    std::stringstream groups(line);
    std::string g;
    while (std::getline(groups, g, ';')) {
      std::istringstream gs(g);
      std::vector<unsigned> members;
      std::string tok;
      while (gs >> tok) {
        unsigned q = 0;
        auto [end, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), q);
        if (ec != std::errc{} || end != tok.data() + tok.size())
          throw ValidationError("line " + std::to_string(lineno) + ": bad qubit '" + tok + "'");
        members.push_back(q);
        max_q = std::max(max_q, q);
        any = true;
      }
      if (!members.empty()) layer.push_back(std::move(members));
    }
    layers.push_back(std::move(layer));
  }
  if (!fixed) width = any ? max_q + 1 : 1;
  return GroupingSchedule(width, std::move(layers));
}

GroupingSchedule GroupingSchedule::read(const std::filesystem::path& path) {
  std::ifstream f(path);
  if (!f) throw IoError("cannot read " + path.string());
  std::stringstream ss;
  ss << f.rdbuf();
  return parse(ss.str());
}

std::string format_schedule(const GroupingSchedule& s) {
  std::string out = "qubits " + std::to_string(s.num_qubits()) + "\n";
  for (std::size_t l = 0; l < s.depth(); ++l) {
    bool first_group = true;
    for (const auto& g : s.layer(l)) {
      if (g.size() < 2) continue;
      if (!first_group) out += "; ";
      first_group = false;
      for (std::size_t i = 0; i < g.size(); ++i) out += (i ? " " : "") + std::to_string(g[i]);
    }
    out += "\n";
  }
  return out;
}

GroupingSchedule schedule_from_circuit(const Circuit& c) {
  std::vector<std::vector<std::vector<unsigned>>> layers;
  for (const auto& layer : c.layers()) {
    std::vector<std::vector<unsigned>> groups;
    for (const Gate& g : layer) groups.emplace_back(g.support().begin(), g.support().end());
    layers.push_back(std::move(groups));
  }
  return GroupingSchedule(std::max(1u, c.num_qubits()), std::move(layers));
}

std::vector<unsigned> light_cone(const GroupingSchedule& s, unsigned j) {
  if (j >= s.num_qubits()) throw ValidationError("qubit out of range");
  std::vector<char> in(s.num_qubits(), 0), next(s.num_qubits(), 0);
  in[j] = 1;
  for (std::size_t l = s.depth(); l-- > 0;) {
    std::fill(next.begin(), next.end(), 0);
    for (unsigned q = 0; q < s.num_qubits(); ++q)
      if (in[q])
        for (unsigned p : s.group(l, q)) next[p] = 1;
    in.swap(next);
  }
  std::vector<unsigned> cone;
  for (unsigned q = 0; q < s.num_qubits(); ++q)
    if (in[q]) cone.push_back(q);
  return cone;
}

double depth_lower_bound(std::size_t entries, unsigned k) {
  if (k < 2) throw ValidationError("k must be >= 2");
  if (entries < 1) throw ValidationError("N must be positive");
  return std::log2(static_cast<double>(entries)) * std::log(2.0) / std::log(static_cast<double>(k));
}

LightconeCheck check_network(const Circuit& c, const std::vector<unsigned>& qubits, std::size_t entries) {
  const GroupingSchedule s = schedule_from_circuit(c);
  LightconeCheck r;
  r.layers = s.depth();
  r.k = std::max(2u, s.max_group());
  r.bound = depth_lower_bound(entries, r.k);
  r.min_cone = std::numeric_limits<std::size_t>::max();
  for (unsigned j : qubits) r.min_cone = std::min(r.min_cone, light_cone(s, j).size());
  if (qubits.empty()) r.min_cone = 0;
  r.covers = !qubits.empty() && r.min_cone >= entries;
  r.consistent = !r.covers || static_cast<double>(r.layers) >= r.bound;
  return r;
}

}  // namespace qsprep
