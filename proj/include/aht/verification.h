#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace aht {

struct CriterionResult {
  int id = 0;
  std::string title;
  bool pass = false;
  std::string detail;  // measured values; no timings, so reports are stable
};

/// Checks 1 through 9. Random draws derive from `seed`.
CriterionResult verify_projector_laws(std::uint64_t seed);
CriterionResult verify_whh4_dipolar();
CriterionResult verify_magnus_scaling(std::uint64_t seed);
CriterionResult verify_ns3_identity(std::uint64_t seed);
CriterionResult verify_dfs2x2_identity(std::uint64_t seed);
CriterionResult verify_encoded_selectivity(std::uint64_t seed);
CriterionResult verify_pulse_table();
CriterionResult verify_universality(std::uint64_t seed);
CriterionResult verify_encoded_suppression(std::uint64_t seed);

CriterionResult verify_criterion(int id, std::uint64_t seed);
std::vector<CriterionResult> run_verification(std::uint64_t seed);

/// One line per criterion: "[PASS] 3  title: detail".
std::string format_report(const std::vector<CriterionResult>& results,
                          std::uint64_t seed);

}  // namespace aht
