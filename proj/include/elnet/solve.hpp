#pragma once

#include <map>
#include <string>
#include <vector>

#include <Eigen/LU>

#include "elnet/network.hpp"
#include "elnet/types.hpp"

namespace elnet {

/// Fixed potentials on the boundary set; every vertex not listed is free.
template <typename Scalar>
using BoundaryCondition = std::map<VertexId, Scalar>;

template <typename Scalar>
struct BoundarySolution {
  VectorX<Scalar> potentials;         // one per vertex
  VectorX<Scalar> unit_currents;      // one per unit, positive tail→head
  VectorX<Scalar> external_currents;  // per vertex; zero at free vertices
};

/// Exact solve under boundary potentials: Kirchhoff's current law at every
/// free vertex, assembled as one dense linear system in the free potentials
/// and eliminated with row pivoting. The system matrix is an irreducibly
/// column-dominant M-matrix for any connected network with a non-empty
/// boundary, so a failed solve signals a bug or degenerate input.
template <typename Scalar>
[[nodiscard]] BoundarySolution<Scalar> solve(const Network<Scalar>& net,
                                             const BoundaryCondition<Scalar>& boundary) {
  const Index n = net.n_vertices();
  if (boundary.empty()) raise(Errc::empty_boundary, "boundary set must be non-empty");
  for (const auto& [v, pot] : boundary) {
    (void)pot;
    if (v < 0 || v >= n)
      raise(Errc::vertex_out_of_range, "boundary vertex " + std::to_string(v));
  }

  std::vector<Index> free_index(static_cast<size_t>(n), -1);
  std::vector<VertexId> free_vertices;
  for (VertexId v = 0; v < n; ++v) {
    if (!boundary.count(v)) {
      free_index[static_cast<size_t>(v)] = static_cast<Index>(free_vertices.size());
      free_vertices.push_back(v);
    }
  }
  const Index nf = static_cast<Index>(free_vertices.size());

  const MatrixX<Scalar> w = net.directed_weights();
  VectorX<Scalar> u = VectorX<Scalar>::Zero(n);
  for (const auto& [v, pot] : boundary) u(v) = pot;

  if (nf > 0) {
    MatrixX<Scalar> a = MatrixX<Scalar>::Zero(nf, nf);
    VectorX<Scalar> rhs = VectorX<Scalar>::Zero(nf);
    for (Index k = 0; k < nf; ++k) {
      const VertexId x = free_vertices[static_cast<size_t>(k)];
      Scalar diag = Scalar(0);
      for (VertexId y = 0; y < n; ++y) {
        if (y == x) continue;  // loops carry no current
        diag += w(y, x);
        const Index fy = free_index[static_cast<size_t>(y)];
        if (fy >= 0) {
          a(k, fy) = -w(x, y);
        } else {
          rhs(k) += w(x, y) * u(y);
        }
      }
      a(k, k) += diag;
    }
    Eigen::PartialPivLU<MatrixX<Scalar>> lu(a);
    VectorX<Scalar> uf = lu.solve(rhs);
    const Scalar scale = a.template lpNorm<Eigen::Infinity>() *
                             uf.template lpNorm<Eigen::Infinity>() +
                         rhs.template lpNorm<Eigen::Infinity>();
    const Scalar residual = (a * uf - rhs).template lpNorm<Eigen::Infinity>();
    if (!uf.allFinite() || residual > Scalar(1e-8) * std::max(Scalar(1), scale))
      raise(Errc::singular_system, "free-vertex system could not be solved");
    for (Index k = 0; k < nf; ++k) u(free_vertices[static_cast<size_t>(k)]) = uf(k);
  }

  BoundarySolution<Scalar> sol;
  sol.potentials = u;
  sol.unit_currents. resize(net.n_units());
  sol.external_currents = VectorX<Scalar>::Zero(n);
  Index j = 0;
  for (const auto& unit : net.units()) {
    const Scalar i = unit_current(unit, u(unit.tail), u(unit.head));
    sol.unit_currents(j++) = i;
    sol.external_currents(unit.tail) += i;
    sol.external_currents(unit.head) -= i;
  }
  return sol;
}

template <typename Scalar>
[[nodiscard]] Scalar external_current(const BoundarySolution<Scalar>& sol, VertexId vertex) {
  if (vertex < 0 || vertex >= sol.external_currents.size())
    raise(Errc::vertex_out_of_range, "vertex " + std::to_string(vertex));
  return sol.external_currents(vertex);
}

/// Total external current pumped into the network through the given set.
template <typename Scalar>
[[nodiscard]] Scalar set_current(const BoundarySolution<Scalar>& sol,
                                 const std::vector<VertexId>& set) {
  Scalar total = Scalar(0);
  for (VertexId v : set) total += external_current(sol, v);
  return total;
}

template <typename Scalar>
struct MarkovianReport {
  bool markovian = false;
  /// Per-vertex balance defect: outgoing minus incoming directed weight.
  VectorX<Scalar> residuals;
  /// Per-vertex comparison scale: total symmetric coupling at the vertex.
  VectorX<Scalar> scales;
  /// Edge currents with vertex 0 pinned at potential 1. For a Markovian
  /// network all potentials equal 1 and these are the divergence-free
  /// circular currents.
  VectorX<Scalar> circulation;
};

/// A network is Markovian when every vertex balances its directed weights;
/// then every constant potential is a valid free solution (up to
/// circulation) and the network corresponds to a Markov chain.
template <typename Scalar>
[[nodiscard]] MarkovianReport<Scalar> check_markovian(const Network<Scalar>& net,
                                                      Scalar tol = Scalar(1e-9)) {
  const MatrixX<Scalar> w = net.directed_weights();
  MarkovianReport<Scalar> report;
  report.residuals = w.rowwise().sum() - w.colwise().sum().transpose();

  report.scales = VectorX<Scalar>::Zero(net.n_vertices());
  for (const auto& u : net.units()) {
    const Scalar d = u.coupling();
    report.scales(u.tail) += d;
    if (u.head != u.tail) report.scales(u.head) += d;
  }
  report.markovian = true;
  for (Index x = 0; x < net.n_vertices(); ++x) {
    if (std::abs(report.residuals(x)) > tol * report.scales(x)) {
      report.markovian = false;
      break;
    }
  }
  report.circulation = solve(net, BoundaryCondition<Scalar>{{0, Scalar(1)}}).unit_currents;
  return report;
}

}  // namespace elnet
