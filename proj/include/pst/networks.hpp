#pragma once

#include <vector>

#include <Eigen/Dense>

#include "pst/chain.hpp"
#include "pst/kernels.hpp"
#include "pst/spectral.hpp"

namespace pst {

// Single-excitation operator on a graph. Each edge sets H(u,v) = w and
// H(v,u) = conj(w); an edge listed in both directions must agree.
struct NetworkEdge {
  int u = 0;
  int v = 0;
  cplx w{0.0, 0.0};
};

struct NetworkSpec {
  int vertices = 0;
  std::vector<NetworkEdge> edges;
  std::vector<double> potentials;
  std::vector<int> inputs;
  std::vector<int> outputs;
};

void validate(const NetworkSpec& net);
Eigen::MatrixXcd network_matrix(const NetworkSpec& net);
kernels::Csr network_csr(const NetworkSpec& net);
NetworkSpec chain_network(const ChainSpec& chain);
Eigen::VectorXcd evolve_network(const NetworkSpec& net, const Eigen::VectorXcd& state, double t);
// |<to| exp(-i H t) |from>|^2
double network_fidelity(const NetworkSpec& net, int from, int to, double t);

// Vertex (i, j) at i * M + j. Both chains must be perfect with zero fields
// and equal t0.
struct ProductNetwork {
  NetworkSpec net;
  double t0 = 0.0;
};
ProductNetwork product_network(const ChainSpec& a, const ChainSpec& b);

// 2^d vertices, weight 1/2 between labels differing in one bit; transfer time pi.
NetworkSpec hypercube(int d);

// Hub is branch site 1; branch a occupies vertices 1 + a(N-1) .. a(N-1) + N - 1
// for branch sites 2..N. Outputs are the branch ends.
struct StarNetwork {
  NetworkSpec net;
  double t0 = 0.0;
  Eigen::MatrixXd symmetric_projector;  // columns |~n>, n = 1..N
};
StarNetwork star_network(const ChainSpec& branch, int M);

// Odd perfect chain of length 2N+1 with the two couplings next to the centre
// scaled by sqrt2 cos(theta) and sqrt2 sin(theta).
struct ThetaEntangler {
  ChainSpec chain;
  double theta = 0.0;
  double t0 = 0.0;
  cplx phase{1.0, 0.0};  // arrival phase of the unmodified chain
  cplx first{0.0, 0.0};  // <1| exp(-i H t0) |1> / phase
  cplx last{0.0, 0.0};   // <2N+1| exp(-i H t0) |1> / phase
  double max_deviation = 0.0;  // from cos 2theta, sin 2theta, componentwise
};
ThetaEntangler theta_entangler(const ChainSpec& chain, double theta);

}  // namespace pst
