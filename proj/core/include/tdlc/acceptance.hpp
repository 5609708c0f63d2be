#ifndef TDLC_ACCEPTANCE_HPP
#define TDLC_ACCEPTANCE_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace tdlc {

struct AcceptanceConfig {
  std::uint64_t order_bound = 10000000;
  std::string cache_dir;
};

struct CriterionResult {
  int id = 0;
  std::string name;
  std::string status;  // pass | fail | skip
  std::string detail;
  double seconds = 0.0;
};

std::vector<CriterionResult> run_acceptance(const AcceptanceConfig& cfg = {});

bool acceptance_passed(const std::vector<CriterionResult>& results);
std::string render_acceptance_text(const std::vector<CriterionResult>& results);
std::string render_acceptance_json(const std::vector<CriterionResult>& results);

}  // namespace tdlc

#endif  // TDLC_ACCEPTANCE_HPP
