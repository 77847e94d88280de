#include "gapforge/construct/pipeline.hpp"

#include <algorithm>

#include "gapforge/construct/core.hpp"
#include "gapforge/construct/gadget.hpp"
#include "gapforge/construct/unary.hpp"
#include "gapforge/error.hpp"

namespace gapforge {

bool PipelinePlan::consistent() const {
  for (std::size_t s = 1; s < stages.size(); ++s)
    if (stages[s].input_variables != stages[s - 1].output_variables) return false;
  return !stages.empty();
}

bool PipelinePlan::realizable() const {
  return std::all_of(stages.begin(), stages.end(), [](const PlanStage& s) { return s.realizability_issues.empty(); });
}

namespace {

std::uint64_t next_power_of_two(std::uint64_t x) {
  std::uint64_t p = 1;
  while (p < x) p <<= 1;
  return p;
}

std::pair<long, long> range_of(const ChainVar& v, long bound) {
  switch (v.kind) {
    case ChainVar::Kind::Vector:
      return {-bound, bound};
    case ChainVar::Kind::Indicator:
      return {0, 1};
    default:
      return {-2 * bound, 2 * bound};
  }
}

}  // namespace

PipelinePlan plan_pipeline(int representative_rows) {
  if (representative_rows < 1) throw InvalidArgument("need at least one representative row");
  const Core core = core_instance();
  PipelinePlan plan;
  plan.vectors = static_cast<int>(core.vectors.size());
  plan.coordinates = core.arity();
  long bound = 0;
  for (const auto& v : core.vectors)
    for (long x : v) bound = std::max(bound, std::abs(x));
  plan.bound = bound;
  const std::uint64_t m = static_cast<std::uint64_t>(plan.vectors), n = static_cast<std::uint64_t>(plan.coordinates);

  PlanStage core_stage{"core", n, n, true, {}, {}};
  const CoreReport report = verify_core(core);
  if (!report.pass()) core_stage.realizability_issues.push_back("core verification failed");
  core_stage.notes.push_back(std::to_string(core.vectors.size()) + " solution vectors, " +
                             std::to_string(core.forms.size()) + " forms");
  plan.stages.push_back(core_stage);

  std::vector<Rational> base_mean(n, core.mean);
  std::vector<std::vector<Rational>> base_second(n, std::vector<Rational>(n, core.cross));
  for (std::size_t k = 0; k < n; ++k) base_second[k][k] = core.square;
  const GadgetMoments gm(core.vectors, bound, base_mean, base_second);

  // Representative chain variables: rows and indicator columns restricted to the first few indices.
  const int rows = std::min(representative_rows, plan.vectors);
  std::vector<ChainVar> reps;
  for (const auto& v : gm.variables())
    if (v.i < rows && v.j < rows) reps.push_back(v);
  MomentSpec chain;
  for (const auto& v : reps) chain.add(v.name(), gm.mean(v), gm.pair(v, v));
  for (std::size_t a = 0; a < reps.size(); ++a)
    for (std::size_t b = a + 1; b < reps.size(); ++b) chain.cross[{a, b}] = gm.pair(reps[a], reps[b]);

  const std::uint64_t chain_count = gm.variable_count();
  PlanStage gadget_stage{"gadgets", n, chain_count, true, chain.realizability_issues(), {}};
  gadget_stage.notes.push_back("three gadgets, m=" + std::to_string(m) + " n=" + std::to_string(n) +
                               " B=" + std::to_string(bound));
  gadget_stage.notes.push_back("the core coordinates become row 1 of the last gadget output");
  gadget_stage.notes.push_back("moments checked on " + std::to_string(reps.size()) + " representative variables");
  gadget_stage.notes.push_back("vector mean a_k = " + to_string(gm.vector_mean()[0]));
  plan.stages.push_back(gadget_stage);

  const std::uint64_t equalities = 3 * (2 * m + 2 * m * m * n) + m * n;
  PlanStage enforce_stage{"enforce", chain_count, chain_count, false, {}, {}};
  enforce_stage.notes.push_back(std::to_string(equalities) + " equalities folded into the two forms");
  plan.stages.push_back(enforce_stage);

  std::uint64_t digits = 0;
  for (const auto& v : gm.variables()) {
    const auto [lo, hi] = range_of(v, bound);
    digits += static_cast<std::uint64_t>(hi - lo);
  }
  std::vector<IntegerVarSpec> specs;
  for (const auto& v : reps) {
    const auto [lo, hi] = range_of(v, bound);
    specs.push_back({v.name(), lo, hi});
  }
  PlanStage unary_stage{"unary", chain_count, digits + 1, true, {}, {}};
  {
    const UnaryMoments um(specs, chain);
    // Two digits per representative variable expose both same-variable and cross-variable moments.
    MomentSpec out;
    const std::size_t one = out.add("x_one", 1, 1);
    std::vector<std::vector<std::size_t>> slots(specs.size());
    for (std::size_t i = 0; i < specs.size(); ++i) {
      const Rational mu = um.digit_mean(i);
      const long count = std::min<long>(2, specs[i].digits());
      for (long d = 0; d < count; ++d) {
        const auto s = out.add("y" + specs[i].name + "_" + std::to_string(d + 1), mu, 1);
        out.set_cross(one, s, mu);
        slots[i].push_back(s);
      }
      if (slots[i].size() == 2) out.set_cross(slots[i][0], slots[i][1], um.same_pair(i));
    }
    for (std::size_t i = 0; i < specs.size(); ++i)
      for (std::size_t j = i + 1; j < specs.size(); ++j) {
        const Rational c = um.cross_pair(i, j);
        for (auto a : slots[i])
          for (auto b : slots[j]) out.set_cross(a, b, c);
      }
    unary_stage.realizability_issues = out.realizability_issues(true);
    unary_stage.notes.push_back("x_one plus " + std::to_string(digits) + " digits");
  }
  plan.stages.push_back(unary_stage);

  const std::uint64_t padded = next_power_of_two(digits + 1);
  PlanStage pad_stage{"pad", digits + 1, padded, false, {}, {}};
  pad_stage.notes.push_back(std::to_string(padded - digits - 1) + " dummy variables on the lowest weight rung");
  plan.stages.push_back(pad_stage);

  PlanStage balance_stage{"balance", padded, 2 * padded, false, {}, {}};
  balance_stage.notes.push_back("mirror variables y_i = -x_i");
  plan.stages.push_back(balance_stage);

  const std::uint64_t merged = 2 * padded <= (std::uint64_t{1} << 31) ? (2 * padded) * (2 * padded) : 0;
  if (merged == 0) throw CapExceeded("merged arity overflows 64 bits");
  PlanStage merge_stage{"merge", 2 * padded, merged, false, {}, {}};
  merge_stage.notes.push_back("single form on the k x k grid");
  plan.stages.push_back(merge_stage);

  plan.assumptions.push_back(
      "dummy padding variables are treated symmetrically with the permuted core coordinates; the construction "
      "does not state how they interact with the symmetry between forms");
  plan.assumptions.push_back("gadget inputs are pinned integer variables counted among the chain variables");
  return plan;
}

}  // namespace gapforge
