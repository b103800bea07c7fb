#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qge/density.hpp"
#include "qge/game.hpp"

namespace qge {

// Built-in reference cases: the worked 2x2 examples whose numbers the
// repro suite recomputes end to end.
namespace refcases {

// common-interest game, both players paid by [[270,126],[0,270]]
Game common_interest_game();
// symmetric coordination game, both players paid by [[2,1],[1,2]]
Game coordination_game();

// correlated distribution [[1/3,1/6],[1/6,1/3]] as a flat joint vector
JointDistribution c1_distribution();
// its amplitude lift (sqrt(1/3), sqrt(1/6), sqrt(1/6), sqrt(1/3))
PureState c1_pure_state();
// deviation unitary [[sqrt(2/3), sqrt(1/3)], [sqrt(1/3), -sqrt(2/3)]]
CMat c1_unitary();

// mixed product state with diagonal (c^2/2, s^2/2, s^2/2, c^2/2)
DensityMatrix d1_state(double cos2);
// entangled pure state with the same diagonal
DensityMatrix d2_state(double cos2);
// rank-one state with uniform diagonal and alternating signs
DensityMatrix d3_state();
// rotation [[c, s], [s, -c]] that concentrates mass on the diagonal cells
CMat d_unitary(double cos2);
CMat hadamard();

// diag(1/2, 1/2) joint distribution [1/2, 0, 0, 1/2]
JointDistribution e_distribution();

}  // namespace refcases

struct ReproClaim {
  std::string id;
  std::string location;
  double expected = 0.0;
  double computed = 0.0;
  double abs_error = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

struct ReproReport {
  std::vector<ReproClaim> claims;

  bool all_pass() const;
};

struct ReproOptions {
  std::uint64_t seed = 1;
  int sampling_trials = 100;      // trials behind the l1 success-rate claim
  int lift_trials = 10;           // random diagonal-preserving lifts per ceiling check
  double tamper_c1 = 0.0;         // test hook: offset added to one utility entry
};

// Recompute every reference number and compare at its tolerance.
ReproReport run_repro(const ReproOptions& options = {});

std::string repro_report_to_json(const ReproReport& report);
std::string repro_report_to_text(const ReproReport& report);

}  // namespace qge
