#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "elnet/types.hpp"

namespace elnet {

inline constexpr double kMinGain = 1e-12;
inline constexpr double kMaxGain = 1e12;

/// One edge device: a resistor of the given total resistance with a voltage
/// amplifier in the middle. `gain` is the factor applied to the tail-side
/// potential when traversing tail→head; the head→tail traversal uses 1/gain.
template <typename Scalar = double>
struct Unit {
  VertexId tail = 0;
  VertexId head = 0;
  Scalar resistance = Scalar(1);
  Scalar gain = Scalar(1);

  [[nodiscard]] Scalar conductance() const { return Scalar(1) / resistance; }

  /// Directed edge weights: `fwd` belongs to the ordered pair (tail, head),
  /// `rev` to (head, tail). The current tail→head under potentials (u_t, u_h)
  /// is rev*u_t − fwd*u_h, and the symmetric coupling is sqrt(fwd*rev).
  struct Weights {
    Scalar fwd;
    Scalar rev;
  };
  [[nodiscard]] Weights weights() const {
    const Scalar two_c = Scalar(2) * conductance();
    return {two_c / (Scalar(1) + gain), two_c * gain / (Scalar(1) + gain)};
  }

  /// Symmetric coupling coefficient (the geometric mean of the two directed
  /// weights); identical from either orientation.
  [[nodiscard]] Scalar coupling() const {
    const auto w = weights();
    return std::sqrt(w.fwd * w.rev);
  }

  /// Same electrical object with the canonical orientation flipped.
  [[nodiscard]] Unit flipped() const { return {head, tail, resistance, Scalar(1) / gain}; }
};

/// Signed current through the unit, positive in the tail→head direction.
template <typename Scalar>
[[nodiscard]] Scalar unit_current(const Unit<Scalar>& u, Scalar u_tail, Scalar u_head) {
  const auto w = u.weights();
  return w.rev * u_tail - w.fwd * u_head;
}

/// One-resistor-one-amplifier equivalents of a unit, for its tail→head
/// traversal. In the primer form the resistor precedes the amplifier, in the
/// secunder form it follows; both resistances depend on the orientation.
template <typename Scalar>
struct AlternativeForms {
  Scalar primer_resistance;
  Scalar secunder_resistance;
  Scalar gain;
};

template <typename Scalar>
[[nodiscard]] AlternativeForms<Scalar> alternative_forms(const Unit<Scalar>& u) {
  const Scalar g = u.gain;
  return {u.resistance * (g + Scalar(1)) / (Scalar(2) * g),
          u.resistance * (g + Scalar(1)) / Scalar(2), g};
}

/// Finite connected multigraph of units. Vertex ids are dense 0..n−1.
/// Parallel units and gain-1 loops are allowed; a disconnected vertex set is
/// rejected at construction.
template <typename Scalar = double>
class Network {
 public:
  Network(Index n_vertices, std::vector<Unit<Scalar>> units)
      : n_(n_vertices), units_(std::move(units)) {
    validate();
  }

  [[nodiscard]] Index n_vertices() const { return n_; }
  [[nodiscard]] const std::vector<Unit<Scalar>>& units() const { return units_; }
  [[nodiscard]] Index n_units() const { return static_cast<Index>(units_.size()); }

  /// Dense matrix of directed edge weights, parallel units summed;
  /// W(x,y) carries the ordered pair (x,y), loops land on the diagonal.
  [[nodiscard]] MatrixX<Scalar> directed_weights() const {
    MatrixX<Scalar> w = MatrixX<Scalar>::Zero(n_, n_);
    for (const auto& u : units_) {
      const auto uw = u.weights();
      if (u.tail == u.head) {
        w(u.tail, u.tail) += uw.fwd;  // the ordered pair (x,x) appears once
      } else {
        w(u.tail, u.head) += uw.fwd;
        w(u.head, u.tail) += uw.rev;
      }
    }
    return w;
  }

 private:
  void validate() const {
    if (n_ <= 0) raise(Errc::invalid_unit, "network needs at least one vertex");
    for (const auto& u : units_) {
      if (u.tail < 0 || u.tail >= n_ || u.head < 0 || u.head >= n_)
        raise(Errc::vertex_out_of_range,
              "unit endpoint outside 0.." + std::to_string(n_ - 1));
      if (!(u.resistance > Scalar(0)) || !std::isfinite(double(u.resistance)))
        raise(Errc::invalid_unit, "resistance must be positive and finite");
      if (!(u.gain >= Scalar(kMinGain)) || !(u.gain <= Scalar(kMaxGain)))
        raise(Errc::invalid_unit, "gain outside [1e-12, 1e12]");
      if (u.tail == u.head && u.gain != Scalar(1))
        raise(Errc::invalid_unit, "loop units must have gain 1");
    }
    // connectivity of the underlying undirected multigraph
    std::vector<char> seen(static_cast<size_t>(n_), 0);
    std::vector<VertexId> stack{0};
    seen[0] = 1;
    Index count = 1;
    std::vector<std::vector<VertexId>> adj(static_cast<size_t>(n_));
    for (const auto& u : units_) {
      adj[static_cast<size_t>(u.tail)].push_back(u.head);
      adj[static_cast<size_t>(u.head)].push_back(u.tail);
    }
    while (!stack.empty()) {
      const VertexId v = stack.back();
      stack.pop_back();
      for (VertexId t : adj[static_cast<size_t>(v)]) {
        if (!seen[static_cast<size_t>(t)]) {
          seen[static_cast<size_t>(t)] = 1;
          ++count;
          stack.push_back(t);
        }
      }
    }
    if (count != n_) raise(Errc::disconnected, "network graph is not connected");
  }

  Index n_;
  std::vector<Unit<Scalar>> units_;
};

/// The reversed network: identical resistances, every amplifier gain
/// inverted. Stored by flipping each unit's orientation, which makes double
/// reversal restore the original representation bit for bit.
template <typename Scalar>
[[nodiscard]] Network<Scalar> reverse(const Network<Scalar>& net) {
  std::vector<Unit<Scalar>> units = net.units();
  for (auto& u : units) std::swap(u.tail, u.head);
  return Network<Scalar>(net.n_vertices(), std::move(units));
}

template <typename Scalar>
[[nodiscard]] Network<Scalar> scale_resistances(const Network<Scalar>& net, Scalar factor) {
  if (!(factor > Scalar(0)) || !std::isfinite(double(factor)))
    raise(Errc::non_positive_scale, "scale factor must be positive");
  std::vector<Unit<Scalar>> units = net.units();
  for (auto& u : units) u.resistance *= factor;
  return Network<Scalar>(net.n_vertices(), std::move(units));
}

using Unitd = Unit<double>;
using Networkd = Network<double>;

}  // namespace elnet
