#include "qge/query.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qge {

Oracle::Oracle(std::size_t domain, std::set<std::size_t> marked_set)
    : n(domain), marked(std::move(marked_set)) {
  if (n < 2) throw std::invalid_argument("oracle: domain must have at least 2 points");
  if (!marked.empty() && *marked.rbegin() >= n) {
    throw std::invalid_argument("oracle: marked index out of domain");
  }
}

QueryAlgorithm::QueryAlgorithm(std::size_t n, std::vector<CMat> blocks)
    : n_(n), blocks_(std::move(blocks)) {
  if (n_ < 2) throw std::invalid_argument("query algorithm: domain too small");
  if (n_ > 256) throw std::invalid_argument("query algorithm: domain capped at 256");
  if (blocks_.empty()) throw std::invalid_argument("query algorithm: no unitary blocks");
  if (blocks_.size() > 33) {
    throw std::invalid_argument("query algorithm: at most 32 queries");
  }
  const auto d = static_cast<Eigen::Index>(2 * n_);
  for (const auto& u : blocks_) {
    if (u.rows() != d || u.cols() != d) {
      throw std::invalid_argument("query algorithm: block shape != 2N");
    }
    if ((u.adjoint() * u - CMat::Identity(d, d)).cwiseAbs().maxCoeff() > tol::kUnitary) {
      throw std::invalid_argument("query algorithm: non-unitary block");
    }
  }
}

namespace {

void apply_query(CVec& state, const Oracle& oracle) {
  for (std::size_t x : oracle.marked) {
    std::swap(state(static_cast<Eigen::Index>(2 * x)),
              state(static_cast<Eigen::Index>(2 * x + 1)));
  }
}

CVec initial_state(std::size_t n) {
  CVec state = CVec::Zero(static_cast<Eigen::Index>(2 * n));
  state(0) = 1.0;  // first domain index, answer 0
  return state;
}

}  // namespace

CVec simulate(const QueryAlgorithm& alg, const Oracle& oracle) {
  if (oracle.n != alg.domain()) throw std::invalid_argument("simulate: domain mismatch");
  CVec state = initial_state(alg.domain());
  state = alg.blocks().front() * state;
  for (std::size_t t = 1; t < alg.blocks().size(); ++t) {
    apply_query(state, oracle);
    state = alg.blocks()[t] * state;
  }
  return state;
}

std::vector<CVec> pre_query_states(const QueryAlgorithm& alg, const Oracle& oracle) {
  if (oracle.n != alg.domain()) throw std::invalid_argument("pre_query_states: domain mismatch");
  std::vector<CVec> out;
  CVec state = initial_state(alg.domain());
  state = alg.blocks().front() * state;
  for (std::size_t t = 1; t < alg.blocks().size(); ++t) {
    out.push_back(state);
    apply_query(state, oracle);
    state = alg.blocks()[t] * state;
  }
  return out;
}

double measure_probability(const CVec& state, const std::set<std::size_t>& marked) {
  double p = 0.0;
  for (std::size_t x : marked) {
    p += std::norm(state(static_cast<Eigen::Index>(2 * x))) +
         std::norm(state(static_cast<Eigen::Index>(2 * x + 1)));
  }
  return p;
}

std::vector<double> query_magnitudes(const QueryAlgorithm& alg) {
  const std::size_t n = alg.domain();
  std::vector<double> mags(n, 0.0);
  for (const CVec& state : pre_query_states(alg, Oracle::all_zero(n))) {
    for (std::size_t y = 0; y < n; ++y) {
      mags[y] += std::norm(state(static_cast<Eigen::Index>(2 * y))) +
                 std::norm(state(static_cast<Eigen::Index>(2 * y + 1)));
    }
  }
  return mags;
}

std::pair<std::size_t, std::size_t> find_low_magnitude_pair(
    const std::vector<double>& magnitudes, std::size_t k, std::size_t n) {
  if (magnitudes.size() != n) {
    throw std::invalid_argument("find_low_magnitude_pair: magnitude vector size");
  }
  if (k + 2 > n) {
    throw std::invalid_argument("find_low_magnitude_pair: requires k <= N - 2");
  }
  std::size_t best = 0, second = 1;
  if (magnitudes[second] < magnitudes[best]) std::swap(best, second);
  for (std::size_t y = 2; y < n; ++y) {
    if (magnitudes[y] < magnitudes[best]) {
      second = best;
      best = y;
    } else if (magnitudes[y] < magnitudes[second]) {
      second = y;
    }
  }
  const double cap = static_cast<double>(k + 1) / static_cast<double>(n);
  if (magnitudes[best] > cap || magnitudes[second] > cap) {
    throw std::runtime_error(
        "find_low_magnitude_pair: counting bound violated (implementation bug)");
  }
  return {best, second};
}

HybridRecord hybrid_check(const QueryAlgorithm& alg, std::size_t z) {
  const std::size_t n = alg.domain();
  const std::size_t k = alg.queries();
  if (z >= n) throw std::invalid_argument("hybrid_check: index out of domain");

  HybridRecord rec;
  rec.z = z;
  double amp_sum = 0.0;
  for (const CVec& state : pre_query_states(alg, Oracle::all_zero(n))) {
    double mass = std::norm(state(static_cast<Eigen::Index>(2 * z))) +
                  std::norm(state(static_cast<Eigen::Index>(2 * z + 1)));
    rec.magnitude += mass;
    amp_sum += std::sqrt(mass);
  }
  rec.magnitude_ok =
      rec.magnitude <= static_cast<double>(k + 1) / static_cast<double>(n) + 1e-12;

  CVec phi_h = simulate(alg, Oracle::all_zero(n));
  CVec phi_g = simulate(alg, Oracle::single(n, z));
  rec.lhs = (phi_h - phi_g).norm();
  rec.rhs_accumulated = std::sqrt(2.0) * amp_sum;
  rec.rhs_counting =
      static_cast<double>(k + 1) * std::sqrt(2.0 / static_cast<double>(n));
  return rec;
}

PairRecord pairwise_check(const QueryAlgorithm& alg) {
  const std::size_t n = alg.domain();
  const std::size_t k = alg.queries();
  auto mags = query_magnitudes(alg);
  auto [z1, z2] = find_low_magnitude_pair(mags, k, n);

  PairRecord rec;
  rec.first = hybrid_check(alg, z1);
  rec.second = hybrid_check(alg, z2);

  CVec phi1 = simulate(alg, Oracle::single(n, z1));
  CVec phi2 = simulate(alg, Oracle::single(n, z2));
  rec.pair_lhs = (phi1 - phi2).norm();
  rec.pair_rhs = 2.0 * static_cast<double>(k + 1) * std::sqrt(2.0 / static_cast<double>(n));

  // Helstrom success probability for equiprobable pure states; the
  // orthogonal-component norm computes sqrt(1 - |<phi1|phi2>|^2) without
  // the cancellation that 1 - |c|^2 suffers near unit overlap
  Cplx overlap = phi2.dot(phi1);
  double orthogonal = (phi1 - overlap * phi2).norm();
  rec.distinguisher_optimal = 0.5 * (1.0 + std::min(orthogonal, 1.0));
  rec.distinguisher_bound = 0.5 + rec.pair_lhs / 2.0;
  return rec;
}

QueryAlgorithm grover(std::size_t n, int iterations, const std::set<std::size_t>& marked) {
  if (marked.empty()) throw std::invalid_argument("grover: marked set must be nonempty");
  if (iterations < 0) throw std::invalid_argument("grover: negative iteration count");
  const auto d = static_cast<Eigen::Index>(n);

  // uniform preparation: Householder reflection mapping |0> to the uniform
  // superposition (any unitary with that column works)
  CVec uniform = CVec::Constant(d, Cplx(1.0 / std::sqrt(static_cast<double>(n)), 0.0));
  CVec e0 = CVec::Zero(d);
  e0(0) = 1.0;
  CVec w = uniform - e0;
  CMat prep = CMat::Identity(d, d);
  double wn = w.norm();
  if (wn > 1e-12) prep -= (2.0 / (wn * wn)) * (w * w.adjoint());

  // diffusion about the uniform state
  CMat diffusion = 2.0 * (uniform * uniform.adjoint()) - CMat::Identity(d, d);

  CMat id2 = CMat::Identity(2, 2);
  CMat z_gate = id2;
  z_gate(1, 1) = -1.0;

  std::vector<CMat> blocks;
  blocks.push_back(kron(prep, id2));
  for (int it = 0; it < iterations; ++it) {
    // query computes the mark; Z phases it; query uncomputes; then diffuse
    blocks.push_back(kron(CMat::Identity(d, d), z_gate));
    blocks.push_back(kron(diffusion, id2));
  }
  return QueryAlgorithm(n, std::move(blocks));
}

QueryAlgorithm random_circuit(std::size_t n, std::size_t k, std::uint64_t seed) {
  Rng rng(seed);
  const auto d = static_cast<Eigen::Index>(n);
  CMat id2 = CMat::Identity(2, 2);

  auto random_block = [&]() {
    CMat u = CMat::Identity(d, d);
    const std::size_t rotations = 3 * n;
    for (std::size_t r = 0; r < rotations; ++r) {
      auto a = static_cast<Eigen::Index>(rng.next_below(n));
      auto b = static_cast<Eigen::Index>(rng.next_below(n));
      if (a == b) b = (b + 1) % d;
      double theta = rng.uniform(0.0, 2.0 * std::numbers::pi);
      double phase_a = rng.uniform(0.0, 2.0 * std::numbers::pi);
      double phase_b = rng.uniform(0.0, 2.0 * std::numbers::pi);
      Cplx ea = std::polar(1.0, phase_a);
      Cplx eb = std::polar(1.0, phase_b);
      // two-level rotation on rows a and b
      Eigen::Matrix2cd g;
      g << std::cos(theta) * ea, std::sin(theta) * eb,
          -std::sin(theta) * std::conj(eb), std::cos(theta) * std::conj(ea);
      CMat rows(2, d);
      rows.row(0) = u.row(a);
      rows.row(1) = u.row(b);
      CMat rotated = g * rows;
      u.row(a) = rotated.row(0);
      u.row(b) = rotated.row(1);
    }
    return kron(u, id2);
  };

  std::vector<CMat> blocks;
  for (std::size_t t = 0; t <= k; ++t) blocks.push_back(random_block());
  return QueryAlgorithm(n, std::move(blocks));
}

}  // namespace qge
