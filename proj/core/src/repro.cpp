#include "qge/repro.hpp"

#include <cmath>
#include <sstream>

#include <json.hpp>

#include "qge/deviation.hpp"
#include "qge/sampling.hpp"
#include "qge/solve.hpp"

namespace qge {

namespace refcases {

Game common_interest_game() {
  std::vector<double> u = {270.0, 126.0, 0.0, 270.0};
  return Game({2, 2}, {u, u});
}

Game coordination_game() {
  std::vector<double> u = {2.0, 1.0, 1.0, 2.0};
  return Game({2, 2}, {u, u});
}

JointDistribution c1_distribution() {
  return JointDistribution{{1.0 / 3.0, 1.0 / 6.0, 1.0 / 6.0, 1.0 / 3.0}};
}

PureState c1_pure_state() { return lift_pure(c1_distribution(), {2, 2}); }

CMat c1_unitary() {
  CMat g(2, 2);
  g << std::sqrt(2.0 / 3.0), std::sqrt(1.0 / 3.0), std::sqrt(1.0 / 3.0),
      -std::sqrt(2.0 / 3.0);
  return g;
}

DensityMatrix d1_state(double cos2) {
  double c = std::sqrt(cos2);
  double s = std::sqrt(1.0 - cos2);
  CMat plus(2, 2), minus(2, 2);
  plus << c * c, c * s, c * s, s * s;
  minus << s * s, -c * s, -c * s, c * c;
  CMat ket0 = CMat::Zero(2, 2), ket1 = CMat::Zero(2, 2);
  ket0(0, 0) = 1.0;
  ket1(1, 1) = 1.0;
  CMat rho = 0.5 * kron(plus, ket0) + 0.5 * kron(minus, ket1);
  return DensityMatrix({2, 2}, std::move(rho));
}

DensityMatrix d2_state(double cos2) {
  double c = std::sqrt(cos2);
  double s = std::sqrt(1.0 - cos2);
  CVec chi(4);
  chi << c, s, s, -c;
  chi /= std::sqrt(2.0);
  return DensityMatrix(PureState({2, 2}, chi));
}

DensityMatrix d3_state() {
  CVec phi(4);
  phi << 0.5, 0.5, 0.5, -0.5;
  return DensityMatrix(PureState({2, 2}, phi));
}

CMat d_unitary(double cos2) {
  double c = std::sqrt(cos2);
  double s = std::sqrt(1.0 - cos2);
  CMat g(2, 2);
  g << c, s, s, -c;
  return g;
}

CMat hadamard() {
  CMat h(2, 2);
  double r = 1.0 / std::sqrt(2.0);
  h << r, r, r, -r;
  return h;
}

JointDistribution e_distribution() { return JointDistribution{{0.5, 0.0, 0.0, 0.5}}; }

}  // namespace refcases

bool ReproReport::all_pass() const {
  for (const auto& c : claims) {
    if (!c.pass) return false;
  }
  return true;
}

namespace {

void add_claim(ReproReport& report, std::string id, std::string location, double expected,
               double computed, double tolerance) {
  ReproClaim claim;
  claim.id = std::move(id);
  claim.location = std::move(location);
  claim.expected = expected;
  claim.computed = computed;
  claim.abs_error = std::abs(expected - computed);
  claim.tolerance = tolerance;
  claim.pass = claim.abs_error <= tolerance;
  report.claims.push_back(std::move(claim));
}

// pass iff computed >= threshold (reported as a one-sided claim)
void add_bound_claim(ReproReport& report, std::string id, std::string location,
                     double threshold, double computed) {
  ReproClaim claim;
  claim.id = std::move(id);
  claim.location = std::move(location);
  claim.expected = threshold;
  claim.computed = computed;
  claim.abs_error = std::max(0.0, threshold - computed);
  claim.tolerance = 0.0;
  claim.pass = computed >= threshold;
  report.claims.push_back(std::move(claim));
}

}  // namespace

ReproReport run_repro(const ReproOptions& options) {
  ReproReport report;
  const std::vector<int> dims = {2, 2};

  // --- case C.1: common-interest game, amplitude lift of the correlated
  // distribution, and the explicit improving rotation
  {
    Game game = refcases::common_interest_game();
    if (options.tamper_c1 != 0.0) {
      auto u = game.utility_tensor(0);
      u[0] += options.tamper_c1;
      game = Game(game.strategy_counts(), {u, game.utility_tensor(1)});
    }
    JointDistribution p = refcases::c1_distribution();
    for (int i = 0; i < 2; ++i) {
      add_claim(report, "c1.classical-ce-p" + std::to_string(i), "case C.1", 0.0,
                correlated_regret(game, p, i), 1e-9);
    }
    DensityMatrix rho(refcases::c1_pure_state());
    add_claim(report, "c1.mu", "case C.1", 201.0, quantum_utility(game, rho, 0), 1e-9);

    DensityMatrix deviated =
        apply_channel(rho, KrausChannel::unitary(0, refcases::c1_unitary()));
    add_claim(report, "c1.mu-deviated", "case C.1", 206.0,
              quantum_utility(game, deviated, 0), 1e-9);

    DeviationCertificate cert = best_quantum_deviation(game, rho, 0);
    add_bound_claim(report, "c1.best-deviation", "case C.1", 206.0 - 1e-6,
                    cert.primal_value);
    add_claim(report, "c1.certificate-gap", "case C.1", 0.0, cert.gap(), 1e-6);
  }

  // --- case D: coordination game, three diagonal-preserving states that a
  // local rotation improves to the ceiling value 2
  {
    Game game = refcases::coordination_game();
    for (double cos2 : {0.5, 0.7, 0.9}) {
      std::ostringstream tag;
      tag << "@" << cos2;
      DensityMatrix rho = refcases::d1_state(cos2);
      add_claim(report, "d1.mu" + tag.str(), "case D.1", 1.0 + cos2,
                quantum_utility(game, rho, 0), 1e-9);
      KrausChannel rot = KrausChannel::unitary(0, refcases::d_unitary(cos2));
      add_claim(report, "d1.mu-deviated" + tag.str(), "case D.1", 2.0,
                quantum_utility(game, apply_channel(rho, rot), 0), 1e-9);
      JointDistribution p = induced_distribution(rho);
      double worst = 0.0;
      for (int i = 0; i < 2; ++i) worst = std::max(worst, correlated_regret(game, p, i));
      add_claim(report, "d1.classical-ce" + tag.str(), "case D.1", 0.0, worst, 1e-9);

      DensityMatrix entangled = refcases::d2_state(cos2);
      add_claim(report, "d2.mu-deviated" + tag.str(), "case D.2", 2.0,
                quantum_utility(game, apply_channel(entangled, rot), 0), 1e-9);
    }
    DensityMatrix rho3 = refcases::d3_state();
    add_claim(report, "d3.mu", "case D.3", 1.5, quantum_utility(game, rho3, 0), 1e-9);
    KrausChannel h = KrausChannel::unitary(0, refcases::hadamard());
    add_claim(report, "d3.mu-deviated", "case D.3", 2.0,
              quantum_utility(game, apply_channel(rho3, h), 0), 1e-9);
  }

  // --- case E: every state over diag(1/2,1/2) is capped at value 2
  {
    Game game = refcases::coordination_game();
    JointDistribution p = refcases::e_distribution();
    double worst_value = 2.0;
    double worst_regret = 0.0;
    Rng rng(options.seed);
    for (int trial = 0; trial < options.lift_trials; ++trial) {
      DensityMatrix rho = random_lift(p, dims, rng.next_u64());
      DeviationCertificate cert = best_quantum_deviation(game, rho, 0);
      worst_value = std::max(worst_value, std::abs(cert.primal_value - 2.0) + 2.0);
      worst_regret =
          std::max(worst_regret, cert.primal_value - quantum_utility(game, rho, 0));
    }
    add_claim(report, "e.ceiling", "case E", 2.0, worst_value, 1e-6);
    add_claim(report, "e.regret", "case E", 0.0, std::max(0.0, worst_regret), 1e-6);
  }

  // --- sampling constants and the l1 concentration event
  {
    add_claim(report, "sampling.k-constant", "sampling reduction", 1600000.0,
              static_cast<double>(fidelity_sample_count(2, 0.1)), 0.0);

    Game game = refcases::coordination_game().normalized_to_unit();
    MixedProfile uniform{{{0.5, 0.5}, {0.5, 0.5}}};
    const double eps = 0.1;
    const std::uint64_t k = fidelity_sample_count(2, eps);
    int good = 0;
    for (int trial = 0; trial < options.sampling_trials; ++trial) {
      SampleNashOracle oracle(game, uniform,
                              Rng(options.seed).fork(1000 + static_cast<std::uint64_t>(trial))
                                  .next_u64());
      MixedProfile q = empirical_profile(oracle, k);
      bool ok = true;
      for (int i = 0; i < 2; ++i) {
        double dist = 0.0;
        for (std::size_t t = 0; t < 2; ++t) {
          dist += std::abs(q.probs[static_cast<std::size_t>(i)][t] - 0.5);
        }
        ok = ok && dist <= eps;
      }
      if (ok) ++good;
    }
    // 0.99 target minus 3 sigma binomial slack at n trials
    double n = static_cast<double>(options.sampling_trials);
    double threshold = std::floor(0.99 * n - 3.0 * std::sqrt(n * 0.99 * 0.01));
    add_bound_claim(report, "sampling.l1-success-rate", "sampling reduction", threshold,
                    static_cast<double>(good));
  }

  return report;
}

std::string repro_report_to_json(const ReproReport& report) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& c : report.claims) {
    nlohmann::ordered_json rec;
    rec["id"] = c.id;
    rec["location"] = c.location;
    rec["expected"] = c.expected;
    rec["computed"] = c.computed;
    rec["abs_error"] = c.abs_error;
    rec["tolerance"] = c.tolerance;
    rec["pass"] = c.pass;
    arr.push_back(rec);
  }
  nlohmann::ordered_json doc;
  doc["claims"] = arr;
  doc["all_pass"] = report.all_pass();
  return doc.dump(2) + "\n";
}

std::string repro_report_to_text(const ReproReport& report) {
  std::ostringstream out;
  out.precision(12);
  for (const auto& c : report.claims) {
    out << (c.pass ? "pass" : "FAIL") << "  " << c.id << " (" << c.location
        << "): expected " << c.expected << ", computed " << c.computed << ", |err| "
        << c.abs_error << "\n";
  }
  out << (report.all_pass() ? "all claims pass" : "some claims FAILED") << "\n";
  return out.str();
}

}  // namespace qge
