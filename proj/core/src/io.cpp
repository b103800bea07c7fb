#include "qge/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace qge::io {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

double real_from_json(const json& v) {
  if (v.is_string()) return parse_real(v.get<std::string>());
  if (v.is_number()) return v.get<double>();
  throw std::runtime_error("expected a number or an \"a/b\" string");
}

ordered_json fraction_or_number(double v) { return ordered_json(v); }

}  // namespace

double parse_real(const std::string& token) {
  try {
    auto slash = token.find('/');
    if (slash == std::string::npos) {
      std::size_t pos = 0;
      double v = std::stod(token, &pos);
      if (pos != token.size()) throw std::runtime_error("bad numeric token: " + token);
      return v;
    }
    double a = std::stod(token.substr(0, slash));
    double b = std::stod(token.substr(slash + 1));
    if (b == 0.0) throw std::runtime_error("fraction with zero denominator: " + token);
    return a / b;
  } catch (const std::logic_error&) {
    throw std::runtime_error("bad numeric token: " + token);
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write file: " + path);
  out << text;
}

Game parse_game(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw std::runtime_error(std::string("game file: ") + e.what());
  }
  if (!doc.contains("players") || !doc.contains("strategy_counts") ||
      !doc.contains("utilities")) {
    throw std::runtime_error("game file: requires players, strategy_counts, utilities");
  }
  int players = doc["players"].get<int>();
  std::vector<int> counts = doc["strategy_counts"].get<std::vector<int>>();
  if (static_cast<int>(counts.size()) != players) {
    throw std::runtime_error("game file: strategy_counts length != players");
  }
  std::vector<std::vector<double>> utils;
  for (const auto& tensor : doc["utilities"]) {
    std::vector<double> u;
    for (const auto& v : tensor) u.push_back(real_from_json(v));
    utils.push_back(std::move(u));
  }
  bool normalized = doc.value("positively_normalized", false);
  try {
    return Game(counts, utils, normalized);
  } catch (const std::invalid_argument& e) {
    throw std::runtime_error(std::string("game file: ") + e.what());
  }
}

Game load_game(const std::string& path) { return parse_game(read_file(path)); }

std::string game_to_text(const Game& game) {
  ordered_json doc;
  doc["players"] = game.num_players();
  doc["strategy_counts"] = game.strategy_counts();
  ordered_json utils = ordered_json::array();
  for (int i = 0; i < game.num_players(); ++i) {
    ordered_json tensor = ordered_json::array();
    for (double v : game.utility_tensor(i)) tensor.push_back(fraction_or_number(v));
    utils.push_back(tensor);
  }
  doc["utilities"] = utils;
  if (game.positively_normalized()) doc["positively_normalized"] = true;
  return doc.dump(2) + "\n";
}

MixedProfile parse_profile(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw std::runtime_error(std::string("profile file: ") + e.what());
  }
  if (!doc.contains("profile")) throw std::runtime_error("profile file: missing profile");
  MixedProfile p;
  for (const auto& player : doc["profile"]) {
    std::vector<double> probs;
    for (const auto& v : player) probs.push_back(real_from_json(v));
    p.probs.push_back(std::move(probs));
  }
  return p;
}

MixedProfile load_profile(const std::string& path) { return parse_profile(read_file(path)); }

std::string profile_to_text(const MixedProfile& profile) {
  ordered_json doc;
  doc["profile"] = profile.probs;
  return doc.dump(2) + "\n";
}

JointDistribution parse_distribution(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw std::runtime_error(std::string("distribution file: ") + e.what());
  }
  if (!doc.contains("distribution")) {
    throw std::runtime_error("distribution file: missing distribution");
  }
  JointDistribution d;
  for (const auto& v : doc["distribution"]) d.p.push_back(real_from_json(v));
  return d;
}

JointDistribution load_distribution(const std::string& path) {
  return parse_distribution(read_file(path));
}

std::string distribution_to_text(const JointDistribution& dist) {
  ordered_json doc;
  doc["distribution"] = dist.p;
  return doc.dump(2) + "\n";
}

DensityMatrix parse_density(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw std::runtime_error(std::string("density file: ") + e.what());
  }
  if (!doc.contains("dims") || !doc.contains("entries")) {
    throw std::runtime_error("density file: requires dims and entries");
  }
  std::vector<int> dims = doc["dims"].get<std::vector<int>>();
  std::size_t d = 1;
  for (int m : dims) d *= static_cast<std::size_t>(m);
  const auto& entries = doc["entries"];
  if (entries.size() != d * d) {
    throw std::runtime_error("density file: entry count != dim^2");
  }
  CMat m(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
  std::size_t idx = 0;
  for (const auto& pair : entries) {
    if (!pair.is_array() || pair.size() != 2) {
      throw std::runtime_error("density file: entries must be [re, im] pairs");
    }
    double re = real_from_json(pair[0]);
    double im = real_from_json(pair[1]);
    m(static_cast<Eigen::Index>(idx / d), static_cast<Eigen::Index>(idx % d)) = Cplx(re, im);
    ++idx;
  }
  try {
    return DensityMatrix(dims, std::move(m));
  } catch (const std::invalid_argument& e) {
    throw std::runtime_error(std::string("density file: ") + e.what());
  }
}

DensityMatrix load_density(const std::string& path) { return parse_density(read_file(path)); }

std::string density_to_text(const DensityMatrix& rho) {
  ordered_json doc;
  doc["dims"] = rho.dims();
  ordered_json entries = ordered_json::array();
  for (std::size_t r = 0; r < rho.dim(); ++r) {
    for (std::size_t c = 0; c < rho.dim(); ++c) {
      Cplx v = rho.entries()(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
      entries.push_back(ordered_json::array({v.real(), v.imag()}));
    }
  }
  doc["entries"] = entries;
  return doc.dump() + "\n";
}

QueryAlgorithm parse_circuit(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw std::runtime_error(std::string("circuit file: ") + e.what());
  }
  if (!doc.contains("domain") || !doc.contains("blocks")) {
    throw std::runtime_error("circuit file: requires domain and blocks");
  }
  std::size_t n = doc["domain"].get<std::size_t>();
  const std::size_t d = 2 * n;
  std::vector<CMat> blocks;
  bool expect_unitary = true;
  for (const auto& item : doc["blocks"]) {
    if (item.is_string()) {
      if (item.get<std::string>() != "query" || expect_unitary) {
        throw std::runtime_error("circuit file: misplaced token");
      }
      expect_unitary = true;
      continue;
    }
    if (!expect_unitary) {
      throw std::runtime_error("circuit file: missing query token between blocks");
    }
    if (item.size() != d * d) throw std::runtime_error("circuit file: block size != (2N)^2");
    CMat u(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
    std::size_t idx = 0;
    for (const auto& pair : item) {
      u(static_cast<Eigen::Index>(idx / d), static_cast<Eigen::Index>(idx % d)) =
          Cplx(real_from_json(pair[0]), real_from_json(pair[1]));
      ++idx;
    }
    blocks.push_back(std::move(u));
    expect_unitary = false;
  }
  try {
    return QueryAlgorithm(n, std::move(blocks));
  } catch (const std::invalid_argument& e) {
    throw std::runtime_error(std::string("circuit file: ") + e.what());
  }
}

QueryAlgorithm load_circuit(const std::string& path) { return parse_circuit(read_file(path)); }

std::string circuit_to_text(const QueryAlgorithm& alg) {
  ordered_json doc;
  doc["domain"] = alg.domain();
  ordered_json blocks = ordered_json::array();
  bool first = true;
  for (const auto& u : alg.blocks()) {
    if (!first) blocks.push_back("query");
    first = false;
    ordered_json flat = ordered_json::array();
    for (Eigen::Index r = 0; r < u.rows(); ++r) {
      for (Eigen::Index c = 0; c < u.cols(); ++c) {
        flat.push_back(ordered_json::array({u(r, c).real(), u(r, c).imag()}));
      }
    }
    blocks.push_back(flat);
  }
  doc["blocks"] = blocks;
  return doc.dump() + "\n";
}

std::string regret_records_to_json(const std::vector<RegretRecord>& records) {
  ordered_json arr = ordered_json::array();
  for (const auto& r : records) {
    ordered_json rec;
    rec["player"] = r.player;
    rec["mu"] = r.mu;
    rec["best_deviation"] = r.best_deviation;
    rec["gap"] = r.gap;
    rec["regret"] = r.regret;
    rec["verdict"] = r.verdict;
    arr.push_back(rec);
  }
  return arr.dump(2) + "\n";
}

std::string reduction_report_to_json(const ReductionReport& report) {
  ordered_json doc;
  doc["m"] = report.m;
  doc["eps"] = report.eps;
  doc["k"] = report.k;
  doc["q"] = report.q.probs;
  doc["l1_distances"] = report.l1_distances;
  doc["regret"] = report.regret;
  doc["l1_within_eps"] = report.l1_within_eps;
  return doc.dump(2) + "\n";
}

std::string reduction_report_to_csv(const ReductionReport& report) {
  std::ostringstream out;
  out.precision(17);
  out << "player,l1_distance\n";
  for (std::size_t i = 0; i < report.l1_distances.size(); ++i) {
    out << i << "," << report.l1_distances[i] << "\n";
  }
  return out.str();
}

}  // namespace qge::io
