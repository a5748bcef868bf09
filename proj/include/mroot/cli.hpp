#pragma once

// Batch front door: validate | report | verify | classify | export.
//
// Exit codes: 0 ok, 1 property or dichotomy failure, 2 input error,
// 3 degenerate metric at the requested point, 4 sampling starved.

#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "mroot/analysis.hpp"
#include "mroot/tensor_core.hpp"

namespace mroot {

inline constexpr const char* kSchema = "mroot-report/1";

enum ExitCode : int {
  kExitOk = 0,
  kExitCheckFailed = 1,
  kExitInput = 2,
  kExitDegenerate = 3,
  kExitStarved = 4,
};

/// Every tensor, scalar and residual at one point. Fractional-power fields are null
/// when A <= 0. Throws DegenerateMetric when A_ij is singular.
nlohmann::ordered_json curvature_report(const MetricSpec& spec, const EvalPoint& p);

struct CheckResult {
  std::string name;
  double max_residual;
};

/// Identity suite, spray oracle agreement, homogeneity degrees and y-contractions,
/// each reduced to its worst residual over the sampled directions.
std::vector<CheckResult> verify_metric(const MetricSpec& spec, const Vec& x,
                                       const SamplePlan& plan);

struct Classification {
  nlohmann::ordered_json doc;
  bool forbidden = false;
};

Classification classify_metric(const MetricSpec& spec, const Vec& x, const SamplePlan& plan);

/// Runs one subcommand; `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace mroot
