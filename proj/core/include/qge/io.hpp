#pragma once

#include <string>
#include <vector>

#include "qge/density.hpp"
#include "qge/deviation.hpp"
#include "qge/game.hpp"
#include "qge/query.hpp"
#include "qge/sampling.hpp"

namespace qge::io {

// Structured-text (JSON) formats. Real values may be written as numbers
// or as exact fraction strings "a/b"; fractions are converted on load.

Game load_game(const std::string& path);
Game parse_game(const std::string& text);
std::string game_to_text(const Game& game);

MixedProfile load_profile(const std::string& path);
MixedProfile parse_profile(const std::string& text);
std::string profile_to_text(const MixedProfile& profile);

JointDistribution load_distribution(const std::string& path);
JointDistribution parse_distribution(const std::string& text);
std::string distribution_to_text(const JointDistribution& dist);

DensityMatrix load_density(const std::string& path);
DensityMatrix parse_density(const std::string& text);
std::string density_to_text(const DensityMatrix& rho);

QueryAlgorithm load_circuit(const std::string& path);
QueryAlgorithm parse_circuit(const std::string& text);
std::string circuit_to_text(const QueryAlgorithm& alg);

void write_file(const std::string& path, const std::string& text);
std::string read_file(const std::string& path);

// "a/b" or plain decimal
double parse_real(const std::string& token);

// Per-player deviation record for the verify/qregret reports.
struct RegretRecord {
  int player = 0;
  double mu = 0.0;
  double best_deviation = 0.0;
  double gap = 0.0;
  double regret = 0.0;
  std::string verdict;
};

std::string regret_records_to_json(const std::vector<RegretRecord>& records);
std::string reduction_report_to_json(const ReductionReport& report);
std::string reduction_report_to_csv(const ReductionReport& report);

}  // namespace qge::io
