#pragma once

#include <algorithm>
#include <queue>
#include <vector>

#include "elnet/network.hpp"
#include "elnet/types.hpp"

namespace elnet {

/// One edge traversal inside a cycle: `unit` crossed tail→head when
/// `forward`, head→tail otherwise.
struct CycleStep {
  Index unit = -1;
  bool forward = true;
};

using Cycle = std::vector<CycleStep>;

template <typename Scalar>
struct CycleBasis {
  /// parent[v] in the breadth-first spanning tree (root 0, parent[0] == -1).
  std::vector<VertexId> parent;
  /// Unit connecting v to parent[v] (-1 at the root).
  std::vector<Index> parent_unit;
  std::vector<Index> depth;
  /// Indices of non-tree, non-loop units, in unit order.
  std::vector<Index> chords;
  /// cycles[k]: chord k traversed forward, then the tree path closing it.
  std::vector<Cycle> cycles;
};

/// Breadth-first spanning tree plus one fundamental cycle per chord. Loop
/// units are skipped: their gain is pinned to one so they never decide
/// reversibility, and they carry no current.
template <typename Scalar>
[[nodiscard]] CycleBasis<Scalar> cycle_basis(const Network<Scalar>& net) {
  const Index n = net.n_vertices();
  const auto& units = net.units();

  CycleBasis<Scalar> basis;
  basis.parent.assign(static_cast<size_t>(n), -1);
  basis.parent_unit.assign(static_cast<size_t>(n), -1);
  basis.depth.assign(static_cast<size_t>(n), 0);

  std::vector<std::vector<Index>> incident(static_cast<size_t>(n));
  for (Index j = 0; j < static_cast<Index>(units.size()); ++j) {
    const auto& u = units[static_cast<size_t>(j)];
    if (u.tail == u.head) continue;
    incident[static_cast<size_t>(u.tail)].push_back(j);
    incident[static_cast<size_t>(u.head)].push_back(j);
  }

  std::vector<char> seen(static_cast<size_t>(n), 0);
  std::vector<char> in_tree(units.size(), 0);
  std::queue<VertexId> frontier;
  seen[0] = 1;
  frontier.push(0);
  while (!frontier.empty()) {
    const VertexId v = frontier.front();
    frontier.pop();
    for (Index j : incident[static_cast<size_t>(v)]) {
      const auto& u = units[static_cast<size_t>(j)];
      const VertexId other = (u.tail == v) ? u.head : u.tail;
      if (seen[static_cast<size_t>(other)]) continue;
      seen[static_cast<size_t>(other)] = 1;
      in_tree[static_cast<size_t>(j)] = 1;
      basis.parent[static_cast<size_t>(other)] = v;
      basis.parent_unit[static_cast<size_t>(other)] = j;
      basis.depth[static_cast<size_t>(other)] = basis.depth[static_cast<size_t>(v)] + 1;
      frontier.push(other);
    }
  }

  // Step from v one level up the tree.
  const auto up_step = [&](VertexId v) -> CycleStep {
    const Index j = basis.parent_unit[static_cast<size_t>(v)];
    const auto& u = units[static_cast<size_t>(j)];
    return CycleStep{j, u.tail == v};  // forward iff we leave through the tail
  };

  for (Index j = 0; j < static_cast<Index>(units.size()); ++j) {
    const auto& u = units[static_cast<size_t>(j)];
    if (u.tail == u.head || in_tree[static_cast<size_t>(j)]) continue;
    basis.chords.push_back(j);

    Cycle cycle{CycleStep{j, true}};  // tail → head across the chord
    std::vector<CycleStep> down;      // later reversed: tree path onto the tail
    VertexId a = u.head;
    VertexId b = u.tail;
    while (basis.depth[static_cast<size_t>(a)] > basis.depth[static_cast<size_t>(b)]) {
      cycle.push_back(up_step(a));
      a = basis.parent[static_cast<size_t>(a)];
    }
    while (basis.depth[static_cast<size_t>(b)] > basis.depth[static_cast<size_t>(a)]) {
      const CycleStep s = up_step(b);
      down.push_back(CycleStep{s.unit, !s.forward});
      b = basis.parent[static_cast<size_t>(b)];
    }
    while (a != b) {
      cycle.push_back(up_step(a));
      a = basis.parent[static_cast<size_t>(a)];
      const CycleStep s = up_step(b);
      down.push_back(CycleStep{s.unit, !s.forward});
      b = basis.parent[static_cast<size_t>(b)];
    }
    cycle.insert(cycle.end(), down.rbegin(), down.rend());
    basis.cycles.push_back(std::move(cycle));
  }
  return basis;
}

/// Product of the gains picked up along a cycle; one for every cycle iff
/// the network is reversible.
template <typename Scalar>
[[nodiscard]] Scalar cycle_gain_product(const Network<Scalar>& net, const Cycle& cycle) {
  Scalar product = Scalar(1);
  for (const CycleStep& step : cycle) {
    const auto& u = net.units()[static_cast<size_t>(step.unit)];
    product *= step.forward ? u.gain : Scalar(1) / u.gain;
  }
  return product;
}

/// Vertex sequence visited by a cycle, starting (and ending) at the tail of
/// its first step.
template <typename Scalar>
[[nodiscard]] std::vector<VertexId> cycle_vertices(const Network<Scalar>& net,
                                                   const Cycle& cycle) {
  std::vector<VertexId> path;
  if (cycle.empty()) return path;
  const auto& first = net.units()[static_cast<size_t>(cycle.front().unit)];
  VertexId at = cycle.front().forward ? first.tail : first.head;
  path.push_back(at);
  for (const CycleStep& step : cycle) {
    const auto& u = net.units()[static_cast<size_t>(step.unit)];
    at = step.forward ? u.head : u.tail;
    path.push_back(at);
  }
  return path;
}

}  // namespace elnet
