#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

namespace gl2lab::cli {

using nlohmann::ordered_json;

/// Bad command-line input or an unsupported parameter combination (exit status 2).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Parameters shared by every campaign. Unset optionals select the default sweep.
struct CampaignConfig {
  std::string command;
  std::optional<int> p, r, n, m;
  std::optional<long long> q;
  /// Lower congruence level for verify-bc-unit.
  std::optional<int> k;
  std::optional<int> depth;
  std::optional<int> precision;
  std::optional<int> samples;
  std::optional<std::string> gamma;
  std::optional<long long> unit_root;
  bool supersingular = false;
  bool deformed = false;
  std::string format = "json";
  std::uint64_t seed = 20240601;

  ordered_json to_json() const;
};

struct Check {
  std::string name;
  ordered_json inputs;
  ordered_json expected;
  ordered_json actual;
  bool pass = false;
};

class VerdictReport {
 public:
  static constexpr int schema_version = 1;

  VerdictReport(std::string campaign, ordered_json config);

  const std::string& campaign() const { return campaign_; }
  const std::vector<Check>& checks() const { return checks_; }
  /// Extra tables attached to the report (character tables, census rows).
  ordered_json& data() { return data_; }
  const ordered_json& data() const { return data_; }

  void add(std::string name, ordered_json inputs, ordered_json expected, ordered_json actual);
  /// Adds a check whose expected value is `true`.
  void require(std::string name, ordered_json inputs, bool actual);
  void append(const VerdictReport& other);

  long long failures() const;
  bool pass() const { return failures() == 0; }
  ordered_json to_json() const;

 private:
  std::string campaign_;
  ordered_json config_;
  std::vector<Check> checks_;
  ordered_json data_ = ordered_json::object();
};

VerdictReport run_eval_phi(const CampaignConfig& c);
VerdictReport run_tree_orbital(const CampaignConfig& c);
VerdictReport run_tree_fixed_set(const CampaignConfig& c);
VerdictReport run_char_table(const CampaignConfig& c);
VerdictReport run_ss_trace(const CampaignConfig& c);
VerdictReport run_verify_norm(const CampaignConfig& c);
VerdictReport run_verify_exact_seq(const CampaignConfig& c);
VerdictReport run_verify_bc_unit(const CampaignConfig& c);
VerdictReport run_verify_tower(const CampaignConfig& c);
VerdictReport run_verify_central(const CampaignConfig& c);
VerdictReport run_verify_orbital(const CampaignConfig& c);
VerdictReport run_verify_cr(const CampaignConfig& c);
VerdictReport run_census(const CampaignConfig& c);
VerdictReport run_boundary(const CampaignConfig& c);
VerdictReport run_report_all(const CampaignConfig& c);

/// Dispatches on c.command. ConfigError for unknown commands.
VerdictReport run(const CampaignConfig& c);

/// One row per isomorphism class: coefficients, trace, |Aut|, level-m count, per-point ss-trace.
std::string census_csv(const VerdictReport& census_report);

/// The acceptance criteria in order, each with the command that reproduces it.
struct Criterion {
  int id;
  std::string title;
  std::string command;
};
const std::vector<Criterion>& acceptance_criteria();
/// Runs criterion `id` (1-based) with default parameters.
VerdictReport run_criterion(int id, std::uint64_t seed = CampaignConfig{}.seed);

}  // namespace gl2lab::cli
