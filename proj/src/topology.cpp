#include "cohest/topology.hpp"

#include <algorithm>
#include <set>

#include "cohest/errors.hpp"

namespace cohest {

namespace {

std::vector<std::pair<int, int>> normalize(std::vector<std::pair<int, int>> edges) {
  for (auto& e : edges) {
    if (e.first > e.second) std::swap(e.first, e.second);
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  return edges;
}

}  // namespace

Topology Topology::star(int n) {
  Topology t;
  t.n = n;
  for (int q = 1; q < n; ++q) t.edges.push_back({0, q});
  return t;
}

Topology Topology::line(int n) {
  Topology t;
  t.n = n;
  for (int q = 0; q + 1 < n; ++q) t.edges.push_back({q, q + 1});
  return t;
}

Topology Topology::grid(int rows, int cols) {
  Topology t;
  t.n = rows * cols;
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      const int q = r * cols + c;
      if (c + 1 < cols) t.edges.push_back({q, q + 1});
      if (r + 1 < rows) t.edges.push_back({q, q + cols});
    }
  }
  return t;
}

Topology Topology::from_preset(const std::string& name) {
  if (name == "star5") return star(5);
  if (name == "grid20") return grid(4, 5);
  if (name.rfind("line_", 0) == 0) {
    const int n = std::stoi(name.substr(5));
    if (n < 1 || n > 26) throw ConfigError("topology preset: line size out of range");
    return line(n);
  }
  throw ConfigError("unknown topology preset: " + name);
}

Topology Topology::induced(const std::vector<int>& qubits) const {
  std::vector<int> relabel(n, -1);
  for (size_t i = 0; i < qubits.size(); ++i) {
    const int q = qubits[i];
    if (q < 0 || q >= n) throw ConfigError("qubit subset: index outside topology");
    if (relabel[q] != -1) throw ConfigError("qubit subset: duplicate qubit");
    relabel[q] = static_cast<int>(i);
  }
  Topology t;
  t.n = static_cast<int>(qubits.size());
  for (const auto& e : edges) {
    if (relabel[e.first] != -1 && relabel[e.second] != -1) {
      t.edges.push_back({relabel[e.first], relabel[e.second]});
    }
  }
  t.edges = normalize(t.edges);
  return t;
}

bool Topology::has_edge(int a, int b) const {
  if (a > b) std::swap(a, b);
  return std::binary_search(edges.begin(), edges.end(), std::make_pair(a, b));
}

bool Topology::connected() const {
  if (n <= 1) return true;
  std::vector<std::vector<int>> adj(n);
  for (const auto& e : edges) {
    adj[e.first].push_back(e.second);
    adj[e.second].push_back(e.first);
  }
  std::vector<bool> seen(n, false);
  std::vector<int> stack{0};
  seen[0] = true;
  int visited = 1;
  while (!stack.empty()) {
    const int q = stack.back();
    stack.pop_back();
    for (int next : adj[q]) {
      if (!seen[next]) {
        seen[next] = true;
        ++visited;
        stack.push_back(next);
      }
    }
  }
  return visited == n;
}

void Topology::validate() const {
  if (n < 1) throw ConfigError("topology: needs at least one qubit");
  auto sorted = normalize(edges);
  if (sorted != edges) throw ConfigError("topology: edges must be normalized");
  for (const auto& e : edges) {
    if (e.first == e.second) throw ConfigError("topology: self-loop");
    if (e.first < 0 || e.second >= n) throw ConfigError("topology: edge index out of range");
  }
}

}  // namespace cohest
