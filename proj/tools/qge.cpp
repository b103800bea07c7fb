// qge: quantum game equilibria toolbox.
//
// Subcommands: verify, solve, lift, qregret, reduce, querysim, repro.
// Exit codes: 0 = pass, 1 = semantic failure (no equilibrium / bound
// violated), 2 = input error (parse failure, dimension mismatch, caps).

#include <cstdlib>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "qge/deviation.hpp"
#include "qge/eol.hpp"
#include "qge/io.hpp"
#include "qge/query.hpp"
#include "qge/repro.hpp"
#include "qge/sampling.hpp"
#include "qge/solve.hpp"

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitInput = 2;

std::uint64_t resolve_seed(std::optional<std::uint64_t> seed) {
  if (seed) return *seed;
  if (const char* env = std::getenv("QGE_SEED")) {
    return std::strtoull(env, nullptr, 10);
  }
  return 1;
}

int run_verify(const std::string& game_path, const std::string& input_path,
               const std::string& mode, double eps, bool json_out) {
  qge::Game game = qge::io::load_game(game_path);
  std::vector<qge::io::RegretRecord> records;
  bool pass = true;

  if (mode == "classical-nash") {
    qge::MixedProfile p = qge::io::load_profile(input_path);
    p.validate(game);
    auto joint = qge::to_joint(game, p);
    for (int i = 0; i < game.num_players(); ++i) {
      qge::io::RegretRecord rec;
      rec.player = i;
      rec.mu = qge::expected_utility(game, joint, i);
      rec.regret = qge::nash_regret(game, p, i);
      rec.best_deviation = rec.mu + rec.regret;
      rec.verdict = rec.regret <= eps ? "ok" : "improvable";
      pass = pass && rec.regret <= eps;
      records.push_back(rec);
    }
  } else if (mode == "classical-ce") {
    qge::JointDistribution p = qge::io::load_distribution(input_path);
    p.validate(game);
    for (int i = 0; i < game.num_players(); ++i) {
      qge::io::RegretRecord rec;
      rec.player = i;
      rec.mu = qge::expected_utility(game, p, i);
      rec.regret = qge::correlated_regret(game, p, i);
      rec.best_deviation = rec.mu + rec.regret;
      rec.verdict = rec.regret <= eps ? "ok" : "improvable";
      pass = pass && rec.regret <= eps;
      records.push_back(rec);
    }
  } else if (mode == "quantum-ce" || mode == "quantum-nash") {
    qge::DensityMatrix rho = qge::io::load_density(input_path);
    if (rho.dims() != game.strategy_counts()) {
      throw std::runtime_error("state dims do not match game strategy counts");
    }
    for (int i = 0; i < game.num_players(); ++i) {
      auto cert = qge::best_quantum_deviation(game, rho, i);
      qge::io::RegretRecord rec;
      rec.player = i;
      rec.mu = qge::quantum_utility(game, rho, i);
      rec.best_deviation = cert.primal_value;
      rec.gap = cert.gap();
      rec.regret = std::max(0.0, cert.primal_value - rec.mu);
      rec.verdict = rec.regret <= eps ? "ok" : "improvable";
      pass = pass && rec.regret <= eps;
      records.push_back(rec);
    }
    if (mode == "quantum-nash") {
      double dist = qge::product_distance(rho);
      qge::io::RegretRecord rec;
      rec.player = -1;
      rec.mu = dist;
      rec.verdict = dist <= qge::tol::kProductState ? "product" : "not-product";
      pass = pass && dist <= qge::tol::kProductState;
      records.push_back(rec);
    }
  } else {
    throw std::runtime_error("unknown mode: " + mode);
  }

  if (json_out) {
    std::cout << qge::io::regret_records_to_json(records);
  } else {
    for (const auto& rec : records) {
      if (rec.player < 0) {
        std::cout << "product distance " << rec.mu << " -> " << rec.verdict << "\n";
        continue;
      }
      std::cout << "player " << rec.player << ": value " << rec.mu << ", regret "
                << rec.regret << " (" << rec.verdict << ")\n";
    }
    std::cout << (pass ? "equilibrium at eps=" : "NOT an equilibrium at eps=") << eps
              << "\n";
  }
  return pass ? kExitPass : kExitFail;
}

int run_solve(const std::string& game_path, const std::string& method, bool json_out) {
  qge::Game game = qge::io::load_game(game_path);
  if (method == "support-enum") {
    auto set = qge::support_enumeration_bimatrix(game);
    for (const auto& eq : set.equilibria) {
      std::cout << qge::io::profile_to_text(eq.profile);
    }
    if (!json_out) {
      std::cout << "# " << set.equilibria.size() << " equilibria, max regret bound 1e-8\n";
    }
    return kExitPass;
  }
  if (method == "ce-lp") {
    std::vector<double> welfare(game.joint_count(), 0.0);
    for (std::size_t s = 0; s < game.joint_count(); ++s) {
      for (int i = 0; i < game.num_players(); ++i) welfare[s] += game.utility(i, s);
    }
    auto dist = qge::correlated_eq_lp(game, welfare);
    std::cout << qge::io::distribution_to_text(dist);
    return kExitPass;
  }
  throw std::runtime_error("unknown solve method: " + method);
}

int run_lift(const std::string& dist_path, const std::string& kind,
             const std::vector<int>& dims, std::uint64_t seed,
             const std::string& out_path) {
  qge::JointDistribution p = qge::io::load_distribution(dist_path);
  qge::DensityMatrix rho = [&] {
    if (kind == "diagonal") return qge::lift_diagonal(p, dims);
    if (kind == "pure") return qge::DensityMatrix(qge::lift_pure(p, dims));
    if (kind == "random") return qge::random_lift(p, dims, seed);
    throw std::runtime_error("unknown lift kind: " + kind);
  }();
  std::string text = qge::io::density_to_text(rho);
  if (out_path.empty()) {
    std::cout << text;
  } else {
    qge::io::write_file(out_path, text);
  }
  return kExitPass;
}

int run_qregret(const std::string& game_path, const std::string& state_path,
                bool json_out) {
  qge::Game game = qge::io::load_game(game_path);
  qge::DensityMatrix rho = qge::io::load_density(state_path);
  if (rho.dims() != game.strategy_counts()) {
    throw std::runtime_error("state dims do not match game strategy counts");
  }
  std::vector<qge::io::RegretRecord> records;
  for (int i = 0; i < game.num_players(); ++i) {
    auto cert = qge::best_quantum_deviation(game, rho, i);
    qge::io::RegretRecord rec;
    rec.player = i;
    rec.mu = qge::quantum_utility(game, rho, i);
    rec.best_deviation = cert.primal_value;
    rec.gap = cert.gap();
    rec.regret = std::max(0.0, cert.primal_value - rec.mu);
    rec.verdict = rec.regret <= 1e-6 ? "ok" : "improvable";
    records.push_back(rec);
  }
  if (json_out) {
    std::cout << qge::io::regret_records_to_json(records);
  } else {
    for (const auto& rec : records) {
      std::cout << "player " << rec.player << ": mu " << rec.mu << ", best deviation "
                << rec.best_deviation << " (gap " << rec.gap << "), regret "
                << rec.regret << "\n";
    }
  }
  return kExitPass;
}

int run_reduce(const std::string& game_path, double eps, std::uint64_t seed,
               bool practical, bool json_out, const std::string& csv_path) {
  qge::Game game = qge::io::load_game(game_path);
  auto mode =
      practical ? qge::SampleCountMode::kPractical : qge::SampleCountMode::kFidelity;
  auto report = qge::reduce_to_approx_nash(game, eps, seed, mode);
  if (!csv_path.empty()) {
    qge::io::write_file(csv_path, qge::io::reduction_report_to_csv(report));
  }
  if (json_out) {
    std::cout << qge::io::reduction_report_to_json(report);
  } else {
    std::cout << "k=" << report.k << " samples, regret " << report.regret
              << ", l1 distances";
    for (double d : report.l1_distances) std::cout << " " << d;
    std::cout << (report.l1_within_eps ? " (within eps)" : " (outside eps)") << "\n";
  }
  return report.regret <= 2.0 * eps ? kExitPass : kExitFail;
}

int run_querysim(std::size_t n, std::size_t k, const std::string& algorithm,
                 std::uint64_t seed, bool json_out, const std::string& csv_path) {
  if (n < 2 || n > 256) throw std::runtime_error("querysim: N must be in [2,256]");
  if (k > 32) throw std::runtime_error("querysim: k must be at most 32");
  qge::QueryAlgorithm alg = [&] {
    if (algorithm == "grover") {
      if (2 * k > n - 2) {
        throw std::runtime_error("querysim: grover needs 2*iterations <= N-2");
      }
      return qge::grover(n, static_cast<int>(k), {0});
    }
    if (algorithm == "random") {
      if (k > n - 2) throw std::runtime_error("querysim: requires k <= N-2");
      return qge::random_circuit(n, k, seed);
    }
    throw std::runtime_error("unknown querysim algorithm: " + algorithm);
  }();

  auto mags = qge::query_magnitudes(alg);
  double mag_sum = 0.0;
  for (double m : mags) mag_sum += m;
  auto rec = qge::pairwise_check(alg);

  bool pass = std::abs(mag_sum - static_cast<double>(alg.queries())) <= 1e-9 &&
              rec.first.lhs <= rec.first.rhs_accumulated + 1e-9 &&
              rec.second.lhs <= rec.second.rhs_accumulated + 1e-9 &&
              (!rec.first.magnitude_ok || rec.first.lhs <= rec.first.rhs_counting + 1e-9) &&
              (!rec.second.magnitude_ok || rec.second.lhs <= rec.second.rhs_counting + 1e-9) &&
              rec.pair_lhs <= rec.pair_rhs + 1e-9 &&
              rec.distinguisher_optimal <= rec.distinguisher_bound + 1e-9;

  std::ostringstream csv;
  csv.precision(17);
  csv << "quantity,value\n";
  csv << "queries," << alg.queries() << "\n";
  csv << "magnitude_sum," << mag_sum << "\n";
  csv << "z1," << rec.first.z << "\n";
  csv << "z2," << rec.second.z << "\n";
  csv << "lhs_z1," << rec.first.lhs << "\n";
  csv << "rhs_accumulated_z1," << rec.first.rhs_accumulated << "\n";
  csv << "rhs_counting_z1," << rec.first.rhs_counting << "\n";
  csv << "lhs_z2," << rec.second.lhs << "\n";
  csv << "rhs_accumulated_z2," << rec.second.rhs_accumulated << "\n";
  csv << "rhs_counting_z2," << rec.second.rhs_counting << "\n";
  csv << "pair_lhs," << rec.pair_lhs << "\n";
  csv << "pair_rhs," << rec.pair_rhs << "\n";
  csv << "distinguisher_optimal," << rec.distinguisher_optimal << "\n";
  csv << "distinguisher_bound," << rec.distinguisher_bound << "\n";
  if (!csv_path.empty()) qge::io::write_file(csv_path, csv.str());

  if (json_out) {
    std::ostringstream out;
    out.precision(17);
    out << "{\n  \"queries\": " << alg.queries() << ",\n  \"magnitude_sum\": " << mag_sum
        << ",\n  \"lhs\": [" << rec.first.lhs << ", " << rec.second.lhs
        << "],\n  \"rhs_accumulated\": [" << rec.first.rhs_accumulated << ", "
        << rec.second.rhs_accumulated << "],\n  \"rhs_counting\": [" << rec.first.rhs_counting
        << ", " << rec.second.rhs_counting << "],\n  \"pair_lhs\": " << rec.pair_lhs
        << ",\n  \"pair_rhs\": " << rec.pair_rhs << ",\n  \"pass\": "
        << (pass ? "true" : "false") << "\n}\n";
    std::cout << out.str();
  } else {
    std::cout << csv.str();
    std::cout << (pass ? "all bounds hold" : "BOUND VIOLATION") << "\n";
  }
  return pass ? kExitPass : kExitFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"quantum game equilibria toolbox"};
  app.require_subcommand(1);

  std::string game_path, input_path, out_path, csv_path;
  std::string mode = "classical-nash";
  std::string method = "support-enum";
  std::string kind = "diagonal";
  std::string algorithm = "grover";
  std::vector<int> dims;
  double eps = 1e-6;
  std::size_t domain = 16, queries = 2;
  bool json_out = false, practical = false;
  std::optional<std::uint64_t> seed;

  auto* verify = app.add_subcommand("verify", "check an equilibrium certificate");
  verify->add_option("--game", game_path, "game file")->required();
  verify->add_option("--in", input_path, "profile / distribution / state file")->required();
  verify->add_option("--mode", mode,
                     "classical-nash | classical-ce | quantum-ce | quantum-nash");
  verify->add_option("--eps", eps, "regret threshold");
  verify->add_flag("--json", json_out, "machine-readable output");

  auto* solve = app.add_subcommand("solve", "compute classical equilibria");
  solve->add_option("--game", game_path, "game file")->required();
  solve->add_option("--method", method, "support-enum | ce-lp");
  solve->add_flag("--json", json_out, "machine-readable output");

  auto* lift = app.add_subcommand("lift", "map a distribution to a quantum state");
  lift->add_option("--dist", input_path, "joint distribution file")->required();
  lift->add_option("--kind", kind, "diagonal | pure | random");
  lift->add_option("--dims", dims, "per-player dimensions")->required();
  lift->add_option("--seed", seed, "random lift seed");
  lift->add_option("--out", out_path, "output density file (stdout otherwise)");

  auto* qregret = app.add_subcommand("qregret", "certified best-deviation report");
  qregret->add_option("--game", game_path, "game file")->required();
  qregret->add_option("--state", input_path, "density matrix file")->required();
  qregret->add_flag("--json", json_out, "machine-readable output");

  auto* reduce = app.add_subcommand("reduce", "sampling reduction to an approximate equilibrium");
  reduce->add_option("--game", game_path, "positively normalized game file")->required();
  reduce->add_option("--eps", eps, "target accuracy")->required();
  reduce->add_option("--seed", seed, "sampling seed");
  reduce->add_flag("--practical", practical, "sequential stopping instead of fixed constants");
  reduce->add_flag("--json", json_out, "machine-readable output");
  reduce->add_option("--csv", csv_path, "write per-player distances as CSV");

  auto* querysim = app.add_subcommand("querysim", "oracle-model deviation bounds");
  querysim->add_option("--N", domain, "domain size (<= 256)")->required();
  querysim->add_option("--k", queries, "queries (random) or iterations (grover), <= 32")
      ->required();
  querysim->add_option("--algorithm", algorithm, "grover | random");
  querysim->add_option("--seed", seed, "circuit seed");
  querysim->add_flag("--json", json_out, "machine-readable output");
  querysim->add_option("--csv", csv_path, "write the inequality sides as CSV");

  auto* repro = app.add_subcommand("repro", "recompute the built-in reference numbers");
  repro->add_flag("--json", json_out, "machine-readable output");
  repro->add_option("--seed", seed, "seed for the randomized claims");
  int sampling_trials = 100;
  repro->add_option("--trials", sampling_trials, "trials for the sampling success-rate claim");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitPass : kExitInput;
  }

  try {
    if (*verify) return run_verify(game_path, input_path, mode, eps, json_out);
    if (*solve) return run_solve(game_path, method, json_out);
    if (*lift) return run_lift(input_path, kind, dims, resolve_seed(seed), out_path);
    if (*qregret) return run_qregret(game_path, input_path, json_out);
    if (*reduce)
      return run_reduce(game_path, eps, resolve_seed(seed), practical, json_out, csv_path);
    if (*querysim)
      return run_querysim(domain, queries, algorithm, resolve_seed(seed), json_out, csv_path);
    if (*repro) {
      qge::ReproOptions options;
      options.seed = resolve_seed(seed);
      options.sampling_trials = sampling_trials;
      auto report = qge::run_repro(options);
      std::cout << (json_out ? qge::repro_report_to_json(report)
                             : qge::repro_report_to_text(report));
      return report.all_pass() ? kExitPass : kExitFail;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }
  return kExitInput;
}
