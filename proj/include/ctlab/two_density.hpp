// m_2(H) = max over subgraphs with >= 2 edges of (e-1)/(v-2), exact.
#pragma once

#include <vector>

#include "ctlab/graph.hpp"
#include "ctlab/rat.hpp"

namespace ctlab {

struct TwoDensityResult {
  Rat value;
  std::vector<int> witness;  // vertex set inducing a maximizing subgraph
};

// Brute force over all vertex subsets; v(g) <= cap (default 16).
TwoDensityResult two_density_exact(const Graph& g, int cap = 16);

// Same value by min-cut decisions: per candidate ratio a/b, the test
// "exists S containing a forced edge with e(S)-lambda|S| > 1-2lambda"
// is a densest-subgraph cut. Small blocks bisect the candidate fraction
// lattice; large blocks run an ascending exact pass.
TwoDensityResult two_density_flow(const Graph& g);

}  // namespace ctlab
