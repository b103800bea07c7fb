#pragma once

#include <cstdint>
#include <set>
#include <vector>

#include "qge/density.hpp"

namespace qge {

// Boolean oracle f: [N] -> {0,1} given by its marked set. An empty set is
// the all-zeros oracle used as the analysis baseline.
struct Oracle {
  std::size_t n = 0;
  std::set<std::size_t> marked;

  Oracle(std::size_t domain, std::set<std::size_t> marked_set);
  bool value(std::size_t x) const { return marked.count(x) > 0; }

  static Oracle all_zero(std::size_t domain) { return Oracle(domain, {}); }
  static Oracle single(std::size_t domain, std::size_t z) { return Oracle(domain, {z}); }
};

// k-query circuit over index register [N] plus one XOR answer qubit
// (answer fastest-varying: joint index = 2x + b). Blocks U_0..U_k act on
// the joint space; a query |x>|b> -> |x>|b xor f(x)> runs between
// consecutive blocks. Initial state: first basis index, answer 0.
class QueryAlgorithm {
 public:
  QueryAlgorithm(std::size_t n, std::vector<CMat> blocks);

  std::size_t domain() const { return n_; }
  std::size_t queries() const { return blocks_.size() - 1; }
  const std::vector<CMat>& blocks() const { return blocks_; }

 private:
  std::size_t n_;
  std::vector<CMat> blocks_;
};

// Final joint state (unit norm) of the circuit run against the oracle.
CVec simulate(const QueryAlgorithm& alg, const Oracle& oracle);

// Joint states immediately before each query (k entries) for the given run.
std::vector<CVec> pre_query_states(const QueryAlgorithm& alg, const Oracle& oracle);

// Probability of measuring the index register inside `marked`.
double measure_probability(const CVec& state, const std::set<std::size_t>& marked);

// Per-index total squared amplitude across the k query steps of the
// all-zeros run; sums to k over the domain.
std::vector<double> query_magnitudes(const QueryAlgorithm& alg);

// Two distinct indices with magnitude <= (k+1)/N. Existence is a counting
// fact for k <= N-2; failure to find one is a bug, not an input condition.
std::pair<std::size_t, std::size_t> find_low_magnitude_pair(
    const std::vector<double>& magnitudes, std::size_t k, std::size_t n);

struct HybridRecord {
  std::size_t z = 0;
  double magnitude = 0.0;          // sum_t |alpha_{z,t}|^2 in the baseline run
  bool magnitude_ok = false;       // magnitude <= (k+1)/N
  double lhs = 0.0;                // || phi_h - phi_g ||
  double rhs_accumulated = 0.0;    // sqrt(2) * sum_t |alpha_{z,t}|
  double rhs_counting = 0.0;        // (k+1) sqrt(2/N)
};

// Deviation between the all-zeros run and the run against the single-marked
// oracle at z, with both amplitude-accumulation and counting-form bounds.
HybridRecord hybrid_check(const QueryAlgorithm& alg, std::size_t z);

struct PairRecord {
  HybridRecord first;
  HybridRecord second;
  double pair_lhs = 0.0;            // || phi_{g1} - phi_{g2} ||
  double pair_rhs = 0.0;            // 2 (k+1) sqrt(2/N)
  double distinguisher_optimal = 0.0;  // best single-measurement success prob
  double distinguisher_bound = 0.0;    // 1/2 + pair_lhs / 2
};

// hybrid_check for both indices of the low-magnitude pair plus the final
// pairwise distance and the distinguishability accounting.
PairRecord pairwise_check(const QueryAlgorithm& alg);

// Search circuit with `iterations` oracle-diffusion rounds. Each round
// costs two queries (compute the mark into the answer qubit, phase it,
// uncompute), so the answer qubit is back in |0> at every query time and
// queries() == 2 * iterations. Success probability after measuring the
// index register is sin^2((2*iterations + 1) * asin(sqrt(|marked|/N))).
QueryAlgorithm grover(std::size_t n, int iterations, const std::set<std::size_t>& marked);

// Circuit of seeded random two-level rotations acting on the index
// register only (k queries). The answer qubit stays |0> in the all-zeros
// run, which keeps the per-query deviation at sqrt(2)|alpha_{z,t}|.
QueryAlgorithm random_circuit(std::size_t n, std::size_t k, std::uint64_t seed);

}  // namespace qge
