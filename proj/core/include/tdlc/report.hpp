#ifndef TDLC_REPORT_HPP
#define TDLC_REPORT_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tdlc/models.hpp"

namespace tdlc {

struct RunConfig {
  std::string spec_text;  // group-spec JSON document
  int radius = 4;
  int depth = 2;          // exhaustion depth for the local content
  std::uint64_t order_bound = 10000000;
  std::string format = "text";  // text | json
  std::string cache_dir;        // empty: no ball cache
  int scale_window = 3;
  int scale_length = 1;   // translation length for the scale command
  int arc_word_length = 2;
};

struct ReportResult {
  int exit_code = 0;  // 0 ok, 1 computation error, 2 invalid input
  std::string text;
  std::string json;
};

// One lower bound on the minimal Cayley--Abels degree, tagged by the method
// that produced it.
struct DegreeBound {
  std::string method;
  int value = 0;
  bool available = false;
  std::string note;
};

struct MdBoundsReport {
  std::vector<DegreeBound> lower_bounds;
  int upper_bound = 0;  // canonical graph degree
  int best_lower = 0;
  std::optional<int> verdict;            // md when the bounds meet
  std::optional<int> reference_value;    // known value recorded as metadata
};

MdBoundsReport compute_md_bounds(const GroupModel& m, const RunConfig& cfg);

// Runs one of: md-bounds, modular, scale, lsc, propertyz, quotient.
ReportResult run_report(const RunConfig& cfg, const std::string& command);

// Advisory ball cache under cache_dir, keyed by the model spec and radius
// with a content hash; corrupt entries are rebuilt silently.
BallGraph cached_canonical_ball(const GroupModel& m, int radius,
                                const std::string& cache_dir);

}  // namespace tdlc

#endif  // TDLC_REPORT_HPP
