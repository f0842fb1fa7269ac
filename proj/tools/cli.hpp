#pragma once

#include <string>
#include <utility>
#include <vector>

namespace hyperseries::cli {

enum ExitCode { kOk = 0, kInputError = 1, kNotConverged = 2 };

struct RunResult {
  int exit_code = kOk;
  std::string out;
  std::string err;
};

/// One evaluation, serialized as a flat JSON object or a CSV row.
struct OutputRecord {
  std::string command;
  std::vector<std::pair<std::string, std::string>> inputs;  // flag name -> canonical value text
  double value_re = 0.0;
  double value_im = 0.0;
  double error_estimate = 0.0;
  long long terms_used = 0;
  bool converged = true;
  std::vector<std::string> warnings;
};

/// %.17g, or "null" for non-finite values.
std::string format_number(double v);

std::string to_json(const OutputRecord& r);

/// Runs the command line `args` (without the program name).
RunResult run(const std::vector<std::string>& args);

}  // namespace hyperseries::cli
