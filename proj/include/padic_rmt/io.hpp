#pragma once

#include <ostream>
#include <string>

#include <json.hpp>

#include "padic_rmt/ensembles.hpp"
#include "padic_rmt/hall_littlewood.hpp"
#include "padic_rmt/harness.hpp"
#include "padic_rmt/padic_matrix.hpp"
#include "padic_rmt/processes.hpp"

namespace padic {

// Thrown for malformed JSON documents and configs.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string rational_string(const mpq_class& q);
mpq_class parse_rational(const std::string& text);

// {"p":2,"precision":64,"shift":0,"entries":[["1","0"],["0","1"]]}. Entries
// are decimal strings (rationals allowed); "0" is an exact zero.
nlohmann::json matrix_to_json(const PadicMatrix& a);
PadicMatrix matrix_from_json(const nlohmann::json& j);

// {"p":2,"n":2,"precision_base":32,"kind":{"type":"FixedSN","lambda":[1,0]}}
nlohmann::json spec_to_json(const EnsembleSpec& spec);
EnsembleSpec spec_from_json(const nlohmann::json& j);

// {"spec":{...},"k_max":..,"trials":..,"seed":..,"jobs":..,"tolerances":{...}}
nlohmann::json config_to_json(const ExperimentConfig& config);
ExperimentConfig config_from_json(const nlohmann::json& j);

// [{"signature":[1,0],"prob":"1/3"}, ...]
nlohmann::json distribution_to_json(const SignatureDistribution& d);
SignatureDistribution distribution_from_json(const nlohmann::json& j);

nlohmann::json signature_to_json(const Signature& s);

// A "# padic-rmt trajectory csv vN" line, then columns k, lambda_1..n,
// v_1..n, w_1..n, margin_1..n-1, sn_last, lyapunov_1..n (lambda_i/k); with
// interpolation, also interp_j_i for j, i = 1..n. Row k holds the margin at
// index k-1, the first one that involves A_k.
void write_trajectory_csv(const Trajectory& traj, std::ostream& out);

inline constexpr int kTrajectoryCsvVersion = 1;

}  // namespace padic
