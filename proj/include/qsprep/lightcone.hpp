// SPDX-FileCopyrightText: 2026 qsprep contributors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "qsprep/circuit.hpp"

namespace qsprep {

// Per layer a partition of the qubits into groups. group_of[l][q] indexes
// groups[l].
class GroupingSchedule {
 public:
  GroupingSchedule(unsigned num_qubits, std::vector<std::vector<std::vector<unsigned>>> layers);

  // One layer per line, groups separated by ';', qubits by spaces or commas.
  // '#' starts a comment. An optional "qubits <k>" line fixes the width;
  // qubits missing from a layer become singletons.
  static GroupingSchedule parse(std::string_view text);
  static GroupingSchedule read(const std::filesystem::path& path);

  unsigned num_qubits() const { return num_qubits_; }
  std::size_t depth() const { return groups_.size(); }
  unsigned max_group() const;  // k
  const std::vector<unsigned>& group(std::size_t layer, unsigned q) const {
    return groups_[layer][group_of_[layer][q]];
  }
  const std::vector<std::vector<unsigned>>& layer(std::size_t l) const { return groups_[l]; }

 private:
  unsigned num_qubits_;
  std::vector<std::vector<std::vector<unsigned>>> groups_;
  std::vector<std::vector<unsigned>> group_of_;
};

std::string format_schedule(const GroupingSchedule& s);

// Gate supports per layer, singletons elsewhere.
GroupingSchedule schedule_from_circuit(const Circuit& c);

// Input qubits causally connected to output qubit j, sorted.
std::vector<unsigned> light_cone(const GroupingSchedule& s, unsigned j);

// n log 2 / log k with n = log2 N.
double depth_lower_bound(std::size_t entries, unsigned k);

struct LightconeCheck {
  std::size_t layers = 0;
  unsigned k = 0;
  double bound = 0.0;
  std::size_t min_cone = 0;   // smallest cone over the checked qubits
  bool covers = false;        // every checked cone has >= N qubits
  bool consistent = true;     // covers implies layers >= bound
};

LightconeCheck check_network(const Circuit& c, const std::vector<unsigned>& qubits, std::size_t entries);

}  // namespace qsprep
