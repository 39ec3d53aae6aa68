#pragma once

#include <cmath>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/LU>

#include "elnet/cycle_basis.hpp"
#include "elnet/network.hpp"
#include "elnet/solve.hpp"
#include "elnet/types.hpp"

namespace elnet {

/// Irreducible finite Markov chain with symmetric support: whenever x can
/// step to y directly, y can step back. The stationary distribution is
/// computed once at construction.
template <typename Scalar = double>
class MarkovChain {
 public:
  explicit MarkovChain(MatrixX<Scalar> transition) : p_(std::move(transition)) {
    validate_and_normalize();
    compute_stationary();
  }

  [[nodiscard]] Index n_states() const { return p_.rows(); }
  [[nodiscard]] const MatrixX<Scalar>& transition() const { return p_; }
  [[nodiscard]] const VectorX<Scalar>& stationary() const { return stationary_; }

 private:
  void validate_and_normalize() {
    const Index n = p_.rows();
    if (n == 0 || p_.cols() != n)
      raise(Errc::not_stochastic, "transition matrix must be square and non-empty");
    if (!p_.allFinite()) raise(Errc::not_stochastic, "transition matrix has non-finite entries");
    if ((p_.array() < Scalar(0)).any())
      raise(Errc::not_stochastic, "transition probabilities must be non-negative");
    for (Index x = 0; x < n; ++x) {
      const Scalar row_sum = p_.row(x).sum();
      if (std::abs(row_sum - Scalar(1)) > Scalar(1e-9))
        raise(Errc::not_stochastic, "row " + std::to_string(x) + " sums to " +
                                        std::to_string(static_cast<double>(row_sum)),
              static_cast<double>(row_sum));
      p_.row(x) /= row_sum;
    }
    for (Index x = 0; x < n; ++x)
      for (Index y = x + 1; y < n; ++y)
        if ((p_(x, y) > Scalar(0)) != (p_(y, x) > Scalar(0)))
          raise(Errc::asymmetric_edge, "support must be symmetric: states " +
                                           std::to_string(x) + " and " + std::to_string(y));
    // Symmetric support makes the support graph undirected, so one sweep
    // settles irreducibility.
    std::vector<char> seen(static_cast<size_t>(n), 0);
    std::vector<Index> stack{0};
    seen[0] = 1;
    Index reached = 1;
    while (!stack.empty()) {
      const Index x = stack.back();
      stack.pop_back();
      for (Index y = 0; y < n; ++y) {
        if (y == x || p_(x, y) <= Scalar(0) || seen[static_cast<size_t>(y)]) continue;
        seen[static_cast<size_t>(y)] = 1;
        ++reached;
        stack.push_back(y);
      }
    }
    if (reached != n) raise(Errc::not_irreducible, "support graph is not connected");
  }

  void compute_stationary() {
    const Index n = p_.rows();
    // mu' P = mu' with the normalization sum(mu) = 1 spliced into row 0.
    MatrixX<Scalar> a = p_.transpose() - MatrixX<Scalar>::Identity(n, n);
    a.row(0) = VectorX<Scalar>::Ones(n).transpose();
    VectorX<Scalar> b = VectorX<Scalar>::Zero(n);
    b(0) = Scalar(1);
    stationary_ = Eigen::PartialPivLU<MatrixX<Scalar>>(a).solve(b);
    const Scalar residual =
        (p_.transpose() * stationary_ - stationary_).template lpNorm<Eigen::Infinity>();
    if (!stationary_.allFinite() || residual > Scalar(1e-12) ||
        (stationary_.array() <= Scalar(0)).any())
      raise(Errc::singular_system, "stationary distribution solve failed",
            static_cast<double>(residual));
  }

  MatrixX<Scalar> p_;
  VectorX<Scalar> stationary_;
};

using MarkovChaind = MarkovChain<double>;

/// Electric network carrying the chain: one unit per symmetric pair of
/// transitions, sized so the ordered directed weights reproduce the edge
/// measure w_xy = mu_x P_xy, plus one neutral loop per self-transition.
template <typename Scalar>
[[nodiscard]] Network<Scalar> to_network(const MarkovChain<Scalar>& chain) {
  const Index n = chain.n_states();
  const auto& p = chain.transition();
  const auto& mu = chain.stationary();
  std::vector<Unit<Scalar>> units;
  for (Index x = 0; x < n; ++x) {
    if (p(x, x) > Scalar(0))
      units.push_back(Unit<Scalar>{x, x, Scalar(1) / (mu(x) * p(x, x)), Scalar(1)});
    for (Index y = x + 1; y < n; ++y) {
      if (p(x, y) <= Scalar(0)) continue;
      const Scalar w_xy = mu(x) * p(x, y);
      const Scalar w_yx = mu(y) * p(y, x);
      units.push_back(Unit<Scalar>{x, y, Scalar(2) / (w_xy + w_yx), w_yx / w_xy});
    }
  }
  return Network<Scalar>(n, std::move(units));
}

/// Inverse of to_network for Markovian networks without parallel units:
/// transition probabilities are the directed weights normalized per row,
/// and the stationary weight of a vertex is its total outgoing weight.
template <typename Scalar>
[[nodiscard]] MarkovChain<Scalar> to_chain(const Network<Scalar>& net,
                                           Scalar tol = Scalar(1e-9)) {
  std::map<std::pair<VertexId, VertexId>, int> pair_count;
  for (const auto& u : net.units()) {
    const auto key = std::minmax(u.tail, u.head);
    if (++pair_count[key] > 1)
      raise(Errc::parallel_units_present, "parallel units between vertices " +
                                              std::to_string(key.first) + " and " +
                                              std::to_string(key.second));
  }
  const auto report = check_markovian(net, tol);
  if (!report.markovian) {
    double worst = 0;
    for (Index x = 0; x < net.n_vertices(); ++x)
      if (report.scales(x) > Scalar(0))
        worst = std::max(worst, static_cast<double>(std::abs(report.residuals(x)) /
                                                    report.scales(x)));
    raise(Errc::not_markovian, "vertex weights do not balance", worst);
  }
  const MatrixX<Scalar> w = net.directed_weights();
  MatrixX<Scalar> p = w.array().colwise() / w.rowwise().sum().array();
  return MarkovChain<Scalar>(std::move(p));
}

/// Time reversal: run the chain backwards in stationarity.
template <typename Scalar>
[[nodiscard]] MarkovChain<Scalar> reverse(const MarkovChain<Scalar>& chain) {
  const auto& p = chain.transition();
  const auto& mu = chain.stationary();
  MatrixX<Scalar> r = (p.transpose().array().colwise() * (Scalar(1) / mu.array())).matrix();
  r = r.array().rowwise() * mu.transpose().array();
  return MarkovChain<Scalar>(std::move(r));
}

template <typename Scalar>
struct ReversibilityReport {
  bool reversible = true;
  /// Gain product of the worst cycle (farthest from one on the log scale).
  Scalar worst_product = Scalar(1);
  /// Vertex sequence of that cycle, first vertex repeated at the end;
  /// empty when the network is reversible.
  std::vector<VertexId> witness;
};

/// A network is reversible exactly when every cycle's gain product is one;
/// it suffices to test one fundamental cycle per non-tree unit.
template <typename Scalar>
[[nodiscard]] ReversibilityReport<Scalar> is_reversible(const Network<Scalar>& net,
                                                        Scalar tol = Scalar(1e-10)) {
  const auto basis = cycle_basis(net);
  ReversibilityReport<Scalar> report;
  Scalar worst_log = Scalar(0);
  const Cycle* worst_cycle = nullptr;
  for (const Cycle& cycle : basis.cycles) {
    const Scalar product = cycle_gain_product(net, cycle);
    const Scalar dist = std::abs(std::log(product));
    if (dist > worst_log) {
      worst_log = dist;
      report.worst_product = product;
      worst_cycle = &cycle;
    }
  }
  if (worst_cycle != nullptr && std::abs(report.worst_product - Scalar(1)) > tol) {
    report.reversible = false;
    report.witness = cycle_vertices(net, *worst_cycle);
  }
  return report;
}

template <typename Scalar>
[[nodiscard]] ReversibilityReport<Scalar> is_reversible(const MarkovChain<Scalar>& chain,
                                                        Scalar tol = Scalar(1e-10)) {
  return is_reversible(to_network(chain), tol);
}

}  // namespace elnet
