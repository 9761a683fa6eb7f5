#pragma once

#include <string>
#include <utility>
#include <vector>

namespace cohest {

// Device connectivity: undirected edges between qubit indices < n. A disconnected
// graph is legal (warned about at configuration time, not rejected).
struct Topology {
  int n = 0;
  std::vector<std::pair<int, int>> edges;  // normalized a < b, sorted, deduplicated

  static Topology star(int n);              // hub is qubit 0
  static Topology line(int n);
  static Topology grid(int rows, int cols);  // row-major indices
  // Presets: "star5", "line_<n>", "grid20" (4x5 lattice).
  static Topology from_preset(const std::string& name);

  // Subgraph on the given qubits, relabeled 0..k-1 in the listed order.
  Topology induced(const std::vector<int>& qubits) const;

  bool has_edge(int a, int b) const;
  bool connected() const;
  void validate() const;
};

}  // namespace cohest
