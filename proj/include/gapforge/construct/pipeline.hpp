#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace gapforge {

struct PlanStage {
  std::string name;
  std::uint64_t input_variables = 0;
  std::uint64_t output_variables = 0;
  bool moments_checked = false;
  std::vector<std::string> realizability_issues;
  std::vector<std::string> notes;
};

struct PipelinePlan {
  int vectors = 0;       // m
  int coordinates = 0;   // n
  long bound = 0;        // B
  std::vector<PlanStage> stages;
  std::vector<std::string> assumptions;

  // Each stage consumes what the previous one produced.
  bool consistent() const;
  bool realizable() const;
};

// Dry run of core -> gadgets -> enforce -> unary -> pad -> balance -> merge. Moment checks run on the
// variables of representative rows (the remaining rows are images of these under the gadget symmetry).
PipelinePlan plan_pipeline(int representative_rows = 3);

}  // namespace gapforge
