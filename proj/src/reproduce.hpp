#pragma once

#include <cstdint>
#include <functional>
#include <ostream>
#include <string>
#include <vector>

#include "parallel.hpp"

namespace hyperwave {

struct CriterionResult {
  int id;
  std::string name;
  bool pass;
  std::string detail;  // key=value pairs separated by ';'
};

struct ReproduceOptions {
  std::string profile = "desk";  // "desk" runs the full-size checks, "quick" a reduced smoke version
  std::uint64_t seed = 42;
  std::vector<int> only;         // empty runs every criterion
  Executor executor;
  std::function<void(const CriterionResult&, double seconds)> on_result;
};

std::vector<CriterionResult> reproduce(const ReproduceOptions& opt);
CriterionResult run_criterion(int id, const ReproduceOptions& opt);

void write_report_csv(std::ostream& os, const std::vector<CriterionResult>& rows);

}  // namespace hyperwave
