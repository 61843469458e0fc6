#ifndef NAKANO_EXPERIMENT_HPP
#define NAKANO_EXPERIMENT_HPP

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "nakano/direct_image.hpp"
#include "nakano/oracles.hpp"

namespace nakano::expt {

inline constexpr const char* kVersion = "1.0.0";

// Exit codes shared by the library runner and the CLI.
inline constexpr int kExitPass = 0;
inline constexpr int kExitConfigError = 2;
inline constexpr int kExitNumericalFailure = 3;
inline constexpr int kExitInsufficientResolution = 4;
inline constexpr int kExitAssertionFailure = 5;

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Tolerances {
  double pd_margin = 1e-6;       // relative margin for positivity verdicts
  double positivity_min = 1e-3;  // required lambda_min for ample configs
  double nef = 1e-4;             // allowed dip below zero for nef configs
  double residual = 1e-6;        // decomposition residual ratio, unperturbed
  double harmonicity = 1e-8;     // harmonicity sup, unperturbed at xi = 0
  double eig_rel = 1e-3;         // relative tolerance versus exact spectra
};

struct ExperimentConfig {
  std::string command;  // check | scan-k | nef-limit | decompose | harmonicity |
                        // cohomology | oracle-compare
  std::string base = "P1";
  std::vector<std::vector<int>> degrees;
  std::vector<std::string> perturbations;  // per summand; "" means none
  int k = 0;
  std::optional<std::pair<int, int>> k_range;
  std::vector<linalg::Complex> xi;  // defaults to the origin
  geom::Stencil stencil{1e-3, 2};
  std::size_t radial_order = 64;
  std::size_t angular_order = 0;  // 0 = automatic max(16, 4k+8)
  Tolerances tol;
  int lambda_bound = 4;
  std::string out;      // report path; empty = stdout only
  std::string csv_out;  // scan table; empty = none

  static ExperimentConfig from_json(const nlohmann::json& j);
  nlohmann::ordered_json echo() const;
};

struct RunResult {
  int exit_code = kExitPass;
  nlohmann::ordered_json report;
};

// Tiny perturbation grammar: sums of c*Re(z^p), c*Im(z^p), c*Abs2(z^p)
// (= |z|^{2p}) and c*Log(z) (= log(1+|z|^2)); variables z (alias z1) and z2.
geom::RealField parse_perturbation(const std::string& formula, std::size_t arity);

bundles::BundleSpec build_bundle(const ExperimentConfig& cfg);

// Dispatches on cfg.command. Config problems throw ConfigError; everything
// else is reported through the exit code and the JSON report.
RunResult run(const ExperimentConfig& cfg);

}  // namespace nakano::expt

#endif
