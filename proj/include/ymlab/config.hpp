#pragma once

#include <array>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "ymlab/errors.hpp"

namespace ymlab {

// Plain-text scenario configuration: one `key = value` per line, `#` comments.
// Key set documented in the README; round-trips losslessly through save().
struct ScenarioConfig {
  std::string algebra_family = "su";
  int algebra_n = 2;
  std::array<int, 4> extents{8, 8, 8, 8};
  double spacing = 1.0;

  std::string background_kind = "constant_abelian";
  std::optional<int> flux_k;        // quantized strength 2 pi k / (a^2 Lmu Lnu)
  double strength = 0.0;            // used when flux_k is absent
  int plane_mu = 1, plane_nu = 2;
  std::vector<double> color_dir;    // empty = last Cartan axis convention (0,..,0,1)
  std::uint64_t background_seed = 7;
  double amplitude = 0.05;

  std::string trace_method = "stochastic";  // or "exact"
  int probes = 128;
  std::uint64_t trace_seed = 20240901;

  std::optional<std::array<double, 2>> fit_window;  // override; default per module rule

  std::optional<double> mu_split;              // default: fit-window ceiling
  std::vector<double> epsilons{1e-3, 1e-4, 1e-5};

  double rg_g2_ren = 0.5;
  std::optional<double> rg_mu;                 // default: mu_split
  bool rg_use_extracted_beta = true;

  std::filesystem::path output_dir;  // empty: $YMLAB_OUTPUT_DIR or ./out
  int workers = 0;                   // 0 = all available

  static ScenarioConfig load(const std::filesystem::path& path);
  static ScenarioConfig parse(const std::string& text);
  std::string serialize() const;
  void save(const std::filesystem::path& path) const;

  // cross-field validation (exact-trace size gate, eps < mu, plane sanity...)
  void validate() const;
};

}  // namespace ymlab
