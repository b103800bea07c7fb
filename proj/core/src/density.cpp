#include "qge/density.hpp"

#include <cmath>
#include <stdexcept>

namespace qge {

namespace {

std::size_t dims_product(const std::vector<int>& dims) {
  std::size_t d = 1;
  for (int m : dims) {
    if (m <= 0) throw std::invalid_argument("dims: nonpositive local dimension");
    d *= static_cast<std::size_t>(m);
  }
  return d;
}

CMat random_gaussian_matrix(Eigen::Index rows, Eigen::Index cols, Rng& rng) {
  CMat g(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    for (Eigen::Index c = 0; c < cols; ++c) {
      g(r, c) = Cplx(rng.normal(), rng.normal());
    }
  }
  return g;
}

}  // namespace

CMat kron(const CMat& a, const CMat& b) {
  CMat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

CMat embed_local(const std::vector<int>& dims, int player, const CMat& op) {
  if (player < 0 || player >= static_cast<int>(dims.size())) {
    throw std::invalid_argument("embed_local: invalid player index");
  }
  if (op.rows() != dims[static_cast<std::size_t>(player)] || op.rows() != op.cols()) {
    throw std::invalid_argument("embed_local: operator does not match local dimension");
  }
  std::size_t pre = 1, post = 1;
  for (int j = 0; j < player; ++j) pre *= static_cast<std::size_t>(dims[static_cast<std::size_t>(j)]);
  for (std::size_t j = static_cast<std::size_t>(player) + 1; j < dims.size(); ++j) {
    post *= static_cast<std::size_t>(dims[j]);
  }
  CMat id_pre = CMat::Identity(static_cast<Eigen::Index>(pre), static_cast<Eigen::Index>(pre));
  CMat id_post = CMat::Identity(static_cast<Eigen::Index>(post), static_cast<Eigen::Index>(post));
  return kron(kron(id_pre, op), id_post);
}

PureState::PureState(std::vector<int> dims, CVec amplitudes)
    : dims_(std::move(dims)), amps_(std::move(amplitudes)) {
  if (static_cast<std::size_t>(amps_.size()) != dims_product(dims_)) {
    throw std::invalid_argument("pure state: amplitude count != product of dims");
  }
  if (std::abs(amps_.norm() - 1.0) > 1e-10) {
    throw std::invalid_argument("pure state: not normalized");
  }
}

DensityMatrix::DensityMatrix(std::vector<int> dims, CMat entries)
    : dims_(std::move(dims)), m_(std::move(entries)) {
  const auto d = static_cast<Eigen::Index>(dims_product(dims_));
  if (m_.rows() != d || m_.cols() != d) {
    throw std::invalid_argument("density matrix: shape does not match dims");
  }
  if ((m_ - m_.adjoint()).cwiseAbs().maxCoeff() > tol::kHermitian) {
    throw std::invalid_argument("density matrix: not Hermitian");
  }
  if (std::abs(m_.trace().real() - 1.0) > tol::kTrace ||
      std::abs(m_.trace().imag()) > tol::kTrace) {
    throw std::invalid_argument("density matrix: trace != 1");
  }
  Eigen::SelfAdjointEigenSolver<CMat> eig(m_, Eigen::EigenvaluesOnly);
  if (eig.eigenvalues().minCoeff() < tol::kPsd) {
    throw std::invalid_argument("density matrix: not positive semidefinite");
  }
}

DensityMatrix::DensityMatrix(const PureState& psi)
    : DensityMatrix(psi.dims(), psi.amplitudes() * psi.amplitudes().adjoint()) {}

double DensityMatrix::min_eigenvalue() const {
  Eigen::SelfAdjointEigenSolver<CMat> eig(m_, Eigen::EigenvaluesOnly);
  return eig.eigenvalues().minCoeff();
}

KrausChannel::KrausChannel(int player, std::vector<CMat> operators)
    : player_(player), ops_(std::move(operators)) {
  if (player_ < 0) throw std::invalid_argument("kraus channel: negative player index");
  if (ops_.empty()) throw std::invalid_argument("kraus channel: no operators");
  const Eigen::Index d = ops_.front().rows();
  CMat sum = CMat::Zero(d, d);
  for (const auto& a : ops_) {
    if (a.rows() != d || a.cols() != d) {
      throw std::invalid_argument("kraus channel: operator shape mismatch");
    }
    sum += a.adjoint() * a;
  }
  if ((sum - CMat::Identity(d, d)).cwiseAbs().maxCoeff() > tol::kKraus) {
    throw std::invalid_argument("kraus channel: sum A^dagger A != I");
  }
}

KrausChannel KrausChannel::identity(int player, int local_dim) {
  return KrausChannel(player, {CMat::Identity(local_dim, local_dim)});
}

KrausChannel KrausChannel::unitary(int player, const CMat& u) {
  if ((u.adjoint() * u - CMat::Identity(u.rows(), u.cols())).cwiseAbs().maxCoeff() >
      tol::kUnitary) {
    throw std::invalid_argument("kraus channel: matrix is not unitary");
  }
  return KrausChannel(player, {u});
}

DensityMatrix lift_diagonal(const JointDistribution& p, const std::vector<int>& dims) {
  const std::size_t d = dims_product(dims);
  p.validate_dims(d);
  CMat m = CMat::Zero(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
  for (std::size_t s = 0; s < d; ++s) {
    m(static_cast<Eigen::Index>(s), static_cast<Eigen::Index>(s)) = p.p[s];
  }
  return DensityMatrix(dims, std::move(m));
}

PureState lift_pure(const JointDistribution& p, const std::vector<int>& dims) {
  const std::size_t d = dims_product(dims);
  p.validate_dims(d);
  CVec amps(static_cast<Eigen::Index>(d));
  for (std::size_t s = 0; s < d; ++s) {
    amps(static_cast<Eigen::Index>(s)) = std::sqrt(p.p[s]);
  }
  amps.normalize();  // remove rounding dust in sum sqrt(p)^2
  return PureState(dims, std::move(amps));
}

DensityMatrix correlation_lift(const JointDistribution& p, const std::vector<int>& dims,
                               const CMat& correlation) {
  const std::size_t d = dims_product(dims);
  p.validate_dims(d);
  if (correlation.rows() != static_cast<Eigen::Index>(d) ||
      correlation.cols() != static_cast<Eigen::Index>(d)) {
    throw std::invalid_argument("correlation_lift: correlation shape mismatch");
  }
  CMat m = correlation;
  for (std::size_t r = 0; r < d; ++r) {
    for (std::size_t c = 0; c < d; ++c) {
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) *=
          std::sqrt(p.p[r]) * std::sqrt(p.p[c]);
    }
    // pin the diagonal to p exactly, including the unit-diagonal contract on C
    m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(r)) = p.p[r];
  }
  return DensityMatrix(dims, std::move(m));
}

DensityMatrix random_lift(const JointDistribution& p, const std::vector<int>& dims,
                          std::uint64_t seed) {
  const std::size_t d = dims_product(dims);
  p.validate_dims(d);
  Rng rng(seed);
  CMat g = random_gaussian_matrix(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d), rng);
  for (Eigen::Index r = 0; r < g.rows(); ++r) g.row(r).normalize();
  CMat correlation = g * g.adjoint();  // unit-diagonal PSD Gram matrix
  return correlation_lift(p, dims, correlation);
}

JointDistribution induced_distribution(const DensityMatrix& rho) {
  JointDistribution p;
  p.p.resize(rho.dim());
  double total = 0.0;
  for (std::size_t s = 0; s < rho.dim(); ++s) {
    double v = rho.entries()(static_cast<Eigen::Index>(s), static_cast<Eigen::Index>(s)).real();
    if (v < tol::kPsd) throw std::invalid_argument("induced_distribution: negative diagonal");
    p.p[s] = std::max(0.0, v);
    total += p.p[s];
  }
  if (std::abs(total - 1.0) > tol::kTrace) {
    throw std::invalid_argument("induced_distribution: trace violation");
  }
  for (double& v : p.p) v /= total;
  return p;
}

DensityMatrix apply_channel(const DensityMatrix& rho, const KrausChannel& channel) {
  if (channel.player() >= rho.num_players()) {
    throw std::invalid_argument("apply_channel: player index out of range");
  }
  if (channel.local_dim() != rho.dims()[static_cast<std::size_t>(channel.player())]) {
    throw std::invalid_argument("apply_channel: operator dimension mismatch");
  }
  CMat out = CMat::Zero(static_cast<Eigen::Index>(rho.dim()),
                        static_cast<Eigen::Index>(rho.dim()));
  for (const auto& a : channel.operators()) {
    CMat full = embed_local(rho.dims(), channel.player(), a);
    out += full * rho.entries() * full.adjoint();
  }
  return DensityMatrix(rho.dims(), std::move(out));
}

KrausChannel swap_channel(const std::vector<int>& dims, int player, int from, int to) {
  if (player < 0 || player >= static_cast<int>(dims.size())) {
    throw std::invalid_argument("swap_channel: invalid player index");
  }
  const int m = dims[static_cast<std::size_t>(player)];
  if (from < 0 || from >= m || to < 0 || to >= m) {
    throw std::invalid_argument("swap_channel: strategy index out of range");
  }
  if (from == to) throw std::invalid_argument("swap_channel: equal strategy indices");

  CMat swap = CMat::Identity(m, m);
  swap(from, from) = 0.0;
  swap(to, to) = 0.0;
  swap(from, to) = 1.0;
  swap(to, from) = 1.0;

  std::vector<CMat> ops;
  for (int t = 0; t < m; ++t) {
    if (t == from) continue;
    CMat proj = CMat::Zero(m, m);
    proj(t, t) = 1.0;
    ops.push_back(std::move(proj));
  }
  CMat reroute = CMat::Zero(m, m);
  reroute(to, from) = 1.0;  // SWAP(from,to) * P_from
  ops.push_back(std::move(reroute));
  return KrausChannel(player, std::move(ops));
}

CMat marginal(const DensityMatrix& rho, int player) {
  if (player < 0 || player >= rho.num_players()) {
    throw std::invalid_argument("marginal: invalid player index");
  }
  const auto& dims = rho.dims();
  const int m = dims[static_cast<std::size_t>(player)];
  std::size_t pre = 1, post = 1;
  for (int j = 0; j < player; ++j) pre *= static_cast<std::size_t>(dims[static_cast<std::size_t>(j)]);
  for (std::size_t j = static_cast<std::size_t>(player) + 1; j < dims.size(); ++j) {
    post *= static_cast<std::size_t>(dims[j]);
  }
  CMat out = CMat::Zero(m, m);
  for (int a = 0; a < m; ++a) {
    for (int b = 0; b < m; ++b) {
      Cplx sum = 0.0;
      for (std::size_t x = 0; x < pre; ++x) {
        for (std::size_t y = 0; y < post; ++y) {
          std::size_t row = (x * static_cast<std::size_t>(m) + static_cast<std::size_t>(a)) * post + y;
          std::size_t col = (x * static_cast<std::size_t>(m) + static_cast<std::size_t>(b)) * post + y;
          sum += rho.entries()(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col));
        }
      }
      out(a, b) = sum;
    }
  }
  return out;
}

double product_distance(const DensityMatrix& rho) {
  CMat prod = marginal(rho, 0);
  for (int i = 1; i < rho.num_players(); ++i) {
    prod = kron(prod, marginal(rho, i));
  }
  return (rho.entries() - prod).norm();
}

DensityMatrix random_density(const std::vector<int>& dims, std::uint64_t seed) {
  const std::size_t d = dims_product(dims);
  Rng rng(seed);
  CMat g = random_gaussian_matrix(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d), rng);
  CMat m = g * g.adjoint();
  m /= m.trace().real();
  m = (m + m.adjoint()).eval() / 2.0;
  return DensityMatrix(dims, std::move(m));
}

KrausChannel random_unitary_channel(int player, int local_dim, Rng& rng) {
  CMat g = random_gaussian_matrix(local_dim, local_dim, rng);
  Eigen::HouseholderQR<CMat> qr(g);
  CMat q = qr.householderQ();
  CMat r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < local_dim; ++j) {
    Cplx diag = r(j, j);
    if (std::abs(diag) > 0.0) q.col(j) *= diag / std::abs(diag);
  }
  return KrausChannel::unitary(player, q);
}

KrausChannel random_kraus_channel(int player, int local_dim, int rank, Rng& rng) {
  if (rank < 1) throw std::invalid_argument("random_kraus_channel: rank must be positive");
  std::vector<CMat> ops;
  CMat total = CMat::Zero(local_dim, local_dim);
  for (int j = 0; j < rank; ++j) {
    ops.push_back(random_gaussian_matrix(local_dim, local_dim, rng));
    total += ops.back().adjoint() * ops.back();
  }
  // whiten: A_j <- A_j T^{-1/2} so that sum A^dagger A = I
  Eigen::SelfAdjointEigenSolver<CMat> eig(total);
  CMat inv_sqrt = eig.eigenvectors() *
                  eig.eigenvalues().cwiseSqrt().cwiseInverse().asDiagonal() *
                  eig.eigenvectors().adjoint();
  for (auto& a : ops) a = a * inv_sqrt;
  return KrausChannel(player, std::move(ops));
}

}  // namespace qge
