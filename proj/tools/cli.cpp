#include "cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <bit>
#include <chrono>
#include <cstdlib>
#include <functional>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>

#include "gapforge/construct/balance.hpp"
#include "gapforge/construct/core.hpp"
#include "gapforge/construct/gadget.hpp"
#include "gapforge/construct/pipeline.hpp"
#include "gapforge/construct/unary.hpp"
#include "gapforge/error.hpp"
#include "gapforge/gapverify/gapverify.hpp"
#include "gapforge/io/json.hpp"
#include "gapforge/io/report.hpp"
#include "gapforge/parallel.hpp"
#include "gapforge/predicate/fourier.hpp"
#include "gapforge/rounding/almost_monarchy.hpp"
#include "gapforge/rounding/hypergraph.hpp"
#include "gapforge/rounding/monarchy.hpp"

namespace gapforge {
namespace {

struct GlobalOptions {
  std::uint64_t seed = 1;
  std::optional<std::uint64_t> samples;
  int max_k = kMaxTableArity;
  unsigned parallelism = 1;
  std::string format = "json";
  bool timing = false;
};

std::vector<Rational> rational_list(const std::vector<std::string>& items) {
  std::vector<Rational> out;
  for (const auto& s : items) {
    try {
      out.push_back(parse_rational(s));
    } catch (const Error& e) {
      throw ParseError("bad number '" + s + "'");
    }
  }
  return out;
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, sep)) out.push_back(item);
  if (!text.empty() && text.back() == sep) out.emplace_back();
  return out;
}

long parse_long(const std::string& s) {
  try {
    std::size_t used = 0;
    const long v = std::stol(s, &used);
    if (used != s.size()) throw ParseError("bad integer '" + s + "'");
    return v;
  } catch (const std::logic_error&) {
    throw ParseError("bad integer '" + s + "'");
  }
}

std::pair<long, long> parse_range(const std::string& text) {
  const auto parts = split(text, ':');
  if (parts.size() != 2) throw ParseError("range must look like lo:hi");
  const long lo = parse_long(parts[0]), hi = parse_long(parts[1]);
  if (lo > hi) throw ParseError("range needs lo <= hi");
  return {lo, hi};
}

void check_arity(int k, const GlobalOptions& g) {
  if (k > g.max_k) throw CapExceeded("arity " + std::to_string(k) + " exceeds --max-k " + std::to_string(g.max_k));
}

Json subset_json(std::uint64_t subset) {
  Json out = Json::array();
  for (int i = 0; i < 64; ++i)
    if ((subset >> i) & 1U) out.push_back(i + 1);
  return out;
}

Json global_subset_json(const GlobalSubset& s) {
  Json out = Json::array();
  for (int i : s) out.push_back(i + 1);
  return out;
}

Predicate load_predicate(const std::string& name, const std::vector<std::string>& weights, const std::string& file) {
  const int given = !name.empty() + !weights.empty() + !file.empty();
  if (given != 1) throw InvalidArgument("give exactly one of --pred, --weights, --file");
  if (!file.empty()) return predicate_from_json(read_json_file(file));
  if (!weights.empty()) return Predicate::from_ltf(LinearForm(rational_list(weights)));
  return Predicate::named(name);
}

LinearForm load_form(const std::string& file, const std::vector<std::string>& weights, const char* which) {
  if (file.empty() == weights.empty())
    throw InvalidArgument(std::string("give exactly one of a file or inline weights for ") + which);
  if (!weights.empty()) return LinearForm(rational_list(weights));
  return linear_form_from_json(read_json_file(file));
}

// Witness for a form that is not perfectly balanced: a zero or the first uneven layer.
Json balance_witness(const LinearForm& form) {
  const int k = static_cast<int>(form.arity());
  const ScaledForm scaled = ScaledForm::from(form);
  std::vector<std::uint64_t> positive(static_cast<std::size_t>(k + 1), 0), total(static_cast<std::size_t>(k + 1), 0);
  for (std::uint64_t x = 0; x < (std::uint64_t{1} << k); ++x) {
    const std::int64_t v = scaled.at_signs(x);
    if (v == 0) return Json{{"zero_at", signs_json(k, x)}};
    const auto layer = static_cast<std::size_t>(std::popcount(x));
    ++total[layer];
    if (v > 0) ++positive[layer];
  }
  for (int t = 1; t < k; ++t) {
    const auto layer = static_cast<std::size_t>(t);
    if (2 * positive[layer] != total[layer])
      return Json{{"layer", t}, {"positive", positive[layer]}, {"size", total[layer]}};
  }
  return "unbalanced";
}

Clause balance_clause(const std::string& name, const LinearForm& form, const GlobalOptions& g) {
  check_arity(static_cast<int>(form.arity()), g);
  bool ok = false;
  try {
    ok = check_perfectly_balanced(form);
  } catch (const ZeroValue&) {
    ok = false;
  }
  return {name, ok, ok ? Json(nullptr) : balance_witness(form)};
}

// ---- commands ----

void cmd_fourier(Report& r, const GlobalOptions& g, const std::string& name, const std::vector<std::string>& weights,
                 const std::string& file, const std::optional<std::string>& subset, const std::string& cls, int k) {
  if (!cls.empty()) {
    if (k <= 0) throw InvalidArgument("--class needs --k");
    const CoefficientClass c = CoefficientClass::parse(cls);
    const Rational closed = fourier_closed_form(k, c);
    r.result = Json{{"k", k}, {"class", c.name()}, {"closed_form", rational_json(closed)}};
    if (k <= g.max_k) {
      const Rational direct = fourier_transform(Predicate::almost_monarchy(k)).coefficient(c.subset());
      r.result["transform"] = rational_json(direct);
      r.add("closed_form_matches_transform", closed == direct,
            Json{{"closed_form", rational_json(closed)}, {"transform", rational_json(direct)}});
    }
    return;
  }
  const Predicate pred = load_predicate(name, weights, file);
  check_arity(pred.arity(), g);
  const FourierTable table = fourier_transform(pred);
  if (subset) {
    std::uint64_t mask = 0;
    if (!subset->empty())
      for (const auto& s : split(*subset, ',')) {
        const long i = parse_long(s);
        if (i < 1 || i > pred.arity()) throw InvalidArgument("subset index out of range");
        mask |= std::uint64_t{1} << (i - 1);
      }
    r.result = Json{{"k", pred.arity()}, {"subset", subset_json(mask)}, {"coefficient", rational_json(table.coefficient(mask))}};
    return;
  }
  Json coeffs = Json::array();
  Rational parseval;
  for (std::uint64_t s = 0; s < table.size(); ++s) {
    if (table.numerator(s) == 0) continue;
    const Rational c = table.coefficient(s);
    parseval += c * c;
    coeffs.push_back(Json{{"subset", subset_json(s)}, {"coefficient", rational_json(c)}});
  }
  r.result = Json{{"k", pred.arity()}, {"coefficients", coeffs}, {"random_sat_prob", rational_json(random_sat_prob(table))}};
  r.add("parseval", parseval == 1, Json{{"sum_of_squares", rational_json(parseval)}});
}

void cmd_balanced(Report& r, const GlobalOptions& g, const std::vector<std::string>& weights, const std::string& constant) {
  if (weights.empty()) throw InvalidArgument("--weights is required");
  const LinearForm form(rational_list(weights), parse_rational(constant));
  r.result = Json{{"form", linear_form_json(form)}};
  r.clauses.push_back(balance_clause("perfectly_balanced", form, g));
}

Json moment_witness(const MomentMismatch& m) {
  return Json{{"constraint", constraint_json(m.constraint)},
              {"i", m.i + 1},
              {"j", m.j < 0 ? Json(nullptr) : Json(m.j + 1)},
              {"expected", rational_json(m.expected)},
              {"actual", rational_json(m.actual)}};
}

void add_vanish(Report& r, const GapInstance& inst, int max_t) {
  const VanishReport v = ktw_vanish_report(inst, max_t);
  auto levels_json = [](const std::vector<VanishLevel>& levels) {
    Json out = Json::array();
    for (const auto& l : levels) {
      Json e{{"t", l.t}, {"vanished", l.vanished}};
      if (!l.vanished) e["atom"] = rationals_json(l.atom), e["residual"] = rational_json(l.residual);
      out.push_back(e);
    }
    return out;
  };
  r.result["vanishing"] = Json{{"permute_then_negate", levels_json(v.levels)},
                               {"negate_then_permute", levels_json(v.alternate_levels)}};
  for (std::size_t i = 0; i < v.levels.size(); ++i) {
    const VanishLevel& a = v.levels[i];
    const VanishLevel& b = v.alternate_levels.at(i);
    Json witness = nullptr;
    if (!a.vanished) witness = Json{{"order", "permute_then_negate"}, {"atom", rationals_json(a.atom)}, {"residual", rational_json(a.residual)}};
    else if (!b.vanished)
      witness = Json{{"order", "negate_then_permute"}, {"atom", rationals_json(b.atom)}, {"residual", rational_json(b.residual)}};
    r.add("vanishing_t" + std::to_string(a.t), a.vanished && b.vanished, witness);
  }
}

void cmd_verify_instance(Report& r, const std::string& file, int vanish_max_t, bool brute_force) {
  const GapInstance inst = instance_from_json(read_json_file(file));
  const GapReport g = verify_perfect_gap(inst);
  r.add("moments", g.moments_ok, g.moment_failure ? moment_witness(*g.moment_failure) : Json(nullptr));
  r.add("support", g.support_ok,
        g.support_failure ? Json{{"constraint", constraint_json(g.support_failure->constraint)},
                                 {"assignment", g.support_failure->assignment}}
                          : Json(nullptr));
  r.add("psd", g.psd_ok,
        g.psd_ok ? Json(nullptr) : Json{{"vector", rationals_json(g.psd_witness)}, {"value", rational_json(g.psd_value)}});
  r.add("constant_sum", g.constant_ok,
        g.nonconstant_subset ? Json{{"subset", global_subset_json(*g.nonconstant_subset)},
                                    {"coefficient", rational_json(g.nonconstant_coefficient)}}
                             : Json(nullptr));
  r.result = Json{{"n", inst.n}, {"constraints", inst.constraints.size()}};
  if (g.constant_ok) r.result["constant"] = rational_json(g.constant);
  if (brute_force) {
    const auto sum = brute_force_constant_sum(inst);
    r.result["brute_force_constant"] = sum ? rational_json(*sum) : Json(nullptr);
    r.add("brute_force_agrees", sum.has_value() == g.constant_ok && (!sum || *sum == g.constant * Rational(inst.constraints.size())),
          Json{{"brute_force", sum ? rational_json(*sum) : Json(nullptr)}});
  }
  if (vanish_max_t > 0) add_vanish(r, inst, vanish_max_t);
}

GapInstance load_instance(const std::string& file, const std::string& builtin) {
  if (file.empty() == builtin.empty()) throw InvalidArgument("give exactly one of a file or --builtin");
  return builtin.empty() ? instance_from_json(read_json_file(file)) : builtin_instance(builtin);
}

void cmd_core_verify(Report& r, const std::string& file) {
  const Core core = file.empty() ? core_instance() : core_from_json(read_json_file(file));
  const CoreReport c = verify_core(core);
  r.add("half_split", c.split_ok,
        c.split_failure ? Json{{"vector", int_vector_json(*c.split_failure)}, {"count", c.split_failure_count}} : Json(nullptr));
  r.add("support", c.support_ok,
        c.support_failure ? Json{{"form", c.support_failure->first + 1}, {"vector", int_vector_json(c.support_failure->second)}}
                          : Json(nullptr));
  r.add("moments", c.moments_ok, c.moment_failure ? Json(*c.moment_failure) : Json(nullptr));
  r.result = Json{{"vectors", core.vectors.size()},
                  {"c_i", rational_json(core.mean)},
                  {"c_ii", rational_json(core.square)},
                  {"c_ij", rational_json(core.cross)}};
}

void cmd_core_solve(Report& r, const std::string& a, const std::string& c, const std::string& b) {
  CoreParameters p;
  try {
    p = solve_core_parameters(parse_rational(a), parse_rational(c), parse_rational(b));
  } catch (const NoSolution& e) {
    r.add("solvable", false, Json(e.what()));
    return;
  }
  const std::vector<Rational> residuals = core_parameter_residuals(p);
  r.result = Json{{"a", rational_json(p.a)},   {"b", rational_json(p.b)},   {"c", rational_json(p.c)},
                  {"d", rational_json(p.d)},   {"e", rational_json(p.e)},   {"p1", rational_json(p.p1)},
                  {"p2", rational_json(p.p2)}, {"p3", rational_json(p.p3)}, {"variance", rational_json(p.variance)},
                  {"residuals", rationals_json(residuals)}};
  const bool ok = std::all_of(residuals.begin(), residuals.end(), [](const Rational& x) { return x == 0; });
  r.add("moment_equations", ok, ok ? Json(nullptr) : rationals_json(residuals));
}

void cmd_gadget_verify(Report& r, int m, const std::string& range, const std::string& vectors) {
  std::vector<IntVector> input;
  long bound = 0;
  if (!vectors.empty()) {
    for (const auto& row : split(vectors, ';')) {
      IntVector v;
      for (const auto& x : split(row, ',')) v.push_back(parse_long(x));
      input.push_back(v);
    }
  } else {
    const auto [lo, hi] = parse_range(range);
    if (m < 1) throw InvalidArgument("--m must be positive");
    for (int i = 0; i < m; ++i) input.push_back({lo + i % (hi - lo + 1)});
  }
  for (const auto& v : input)
    for (long x : v) bound = std::max(bound, std::abs(x));
  if (!range.empty()) {
    const auto [lo, hi] = parse_range(range);
    bound = std::max({bound, std::abs(lo), std::abs(hi)});
  }
  const Gadget gadget = build_gadget(input, bound);
  const GadgetVerification v = verify_gadget(gadget);
  Json patterns = Json::array();
  for (const auto& p : v.output_patterns) patterns.push_back(p);
  Json in = Json::array();
  for (const auto& x : input) in.push_back(int_vector_json(x));
  r.result = Json{{"inputs", in},
                  {"bound", bound},
                  {"variables", gadget.variable_count()},
                  {"equalities", gadget.equalities.size()},
                  {"settings", v.settings},
                  {"satisfying", v.satisfying},
                  {"output_patterns", patterns}};
  r.add("permutations_only", v.permutations_only, v.permutations_only ? Json(nullptr) : patterns);
  r.add("all_permutations_found", v.all_permutations_found, v.all_permutations_found ? Json(nullptr) : patterns);
}

void cmd_encode(Report& r, const std::vector<std::string>& vars, const std::vector<std::string>& cross, bool printed) {
  if (vars.empty()) throw InvalidArgument("at least one --var name:lo:hi:mean:square is required");
  std::vector<IntegerVarSpec> specs;
  MomentSpec moments;
  for (const auto& text : vars) {
    const auto f = split(text, ':');
    if (f.size() != 5) throw ParseError("--var expects name:lo:hi:mean:square");
    specs.push_back({f[0], parse_long(f[1]), parse_long(f[2])});
    moments.add(f[0], parse_rational(f[3]), parse_rational(f[4]));
  }
  for (const auto& text : cross) {
    const auto f = split(text, ':');
    if (f.size() != 3) throw ParseError("--cross expects name:name:value");
    moments.set_cross(moments.index_of(f[0]), moments.index_of(f[1]), parse_rational(f[2]));
  }
  const UnaryFormulas formulas = printed ? UnaryFormulas::Printed : UnaryFormulas::Corrected;
  const MomentSpec out = unary_encode(specs, moments, formulas);
  r.result = Json{{"formulas", printed ? "printed" : "corrected"}, {"digits", out.size() - 1}, {"moments", moment_spec_json(out)}};
  const auto issues = out.realizability_issues(true);
  r.add("realizable", issues.empty(), issues.empty() ? Json(nullptr) : Json(issues));
}

void cmd_balance(Report& r, const GlobalOptions& g, const std::vector<std::string>& weights) {
  if (weights.empty()) throw InvalidArgument("--weights is required");
  const LinearForm form(rational_list(weights));
  const LinearForm doubled = balance_double(form);
  r.result = Json{{"input", linear_form_json(form)}, {"output", linear_form_json(doubled)}};
  r.clauses.push_back(balance_clause("output_perfectly_balanced", doubled, g));
}

void cmd_merge(Report& r, const LinearForm& first, const LinearForm& second, bool verify) {
  const MergeResult m = merge_dual(first, second);
  Json terms = Json::array();
  for (const auto& t : m.terms)
    terms.push_back(Json{{"y", t.y}, {"a", t.a}, {"b", t.b}, {"coefficient", rational_json(t.coefficient)}});
  r.result = Json{{"k", m.k},
                  {"form", linear_form_json(m.form)},
                  {"second", linear_form_json(m.second)},
                  {"second_scale", rational_json(m.second_scale)},
                  {"terms", terms}};
  if (!verify) return;
  const MergeVerification v = verify_merge(first, second, m);
  const Json witness = v.counterexample ? signs_json(static_cast<int>(m.k * m.k), *v.counterexample) : Json(nullptr);
  auto w = [&](bool ok) { return ok ? Json(nullptr) : witness; };
  r.add("nonzero", v.nonzero, w(v.nonzero));
  r.add("row_constant", v.row_constant_ok, w(v.row_constant_ok));
  r.add("column_constant", v.column_constant_ok, w(v.column_constant_ok));
  r.add("column_average", v.column_average_ok, w(v.column_average_ok));
  r.add("row_average", v.row_average_ok, w(v.row_average_ok));
  r.add("balanced", v.balanced, w(v.balanced));
}

void cmd_pipeline_plan(Report& r, int rows) {
  const PipelinePlan plan = plan_pipeline(rows);
  Json stages = Json::array();
  std::vector<std::string> unrealizable;
  for (const auto& s : plan.stages) {
    stages.push_back(Json{{"name", s.name},
                          {"input_variables", s.input_variables},
                          {"output_variables", s.output_variables},
                          {"moments_checked", s.moments_checked},
                          {"realizability_issues", s.realizability_issues},
                          {"notes", s.notes}});
    for (const auto& issue : s.realizability_issues) unrealizable.push_back(s.name + ": " + issue);
  }
  r.result = Json{{"vectors", plan.vectors},
                  {"coordinates", plan.coordinates},
                  {"bound", plan.bound},
                  {"stages", stages},
                  {"assumptions", plan.assumptions}};
  r.add("stage_counts_consistent", plan.consistent(), plan.consistent() ? Json(nullptr) : stages);
  r.add("moments_realizable", plan.realizable(), plan.realizable() ? Json(nullptr) : Json(unrealizable));
}

void cmd_round_monarchy(Report& r, const GlobalOptions& g, int k) {
  const std::uint64_t mixtures = g.samples.value_or(1000);
  r.seed = g.seed;
  const MonarchySweep s = monarchy_sweep(k, mixtures, g.seed);
  r.result = Json{{"k", k},
                  {"coefficients", monarchy_json(s.coeffs)},
                  {"vertices_checked", s.vertices_checked},
                  {"mixtures_checked", s.mixtures_checked},
                  {"floor", rational_json(s.coeffs.citizen)}};
  r.add("sign_preconditions", s.coeffs.signs_ok,
        Json{{"3C", rational_json(s.coeffs.three_citizens)}, {"P+2C", rational_json(s.coeffs.president_pair)}});
  if (!s.coeffs.signs_ok) return;
  r.result["worst_margin"] = rational_json(s.worst_margin);
  r.result["worst"] = mixture_json(s.worst);
  const Json witness{{"margin", rational_json(s.worst_margin)}, {"mixture", mixture_json(s.worst)}};
  r.add("vertices_above_floor", s.vertex_failures == 0, witness);
  r.add("mixtures_above_floor", s.mixture_failures == 0, witness);
  for (auto& c : r.clauses)
    if (c.pass) c.witness = nullptr;
}

void cmd_round_almost(Report& r, const GlobalOptions& g, int k_min, int k_max, std::uint64_t mixtures) {
  ThresholdSettings s;
  s.k_min = k_min;
  s.k_max = k_max;
  s.vertex_samples = g.samples.value_or(s.vertex_samples);
  s.mixtures = mixtures;
  s.seed = g.seed;
  r.seed = g.seed;
  const ThresholdReport t = almost_monarchy_threshold(s);
  Json levels = Json::array();
  std::uint64_t floor_failures = 0;
  for (const auto& l : t.levels) {
    floor_failures += l.floor_failures;
    levels.push_back(Json{{"k", l.k},
                          {"vertices_checked", l.vertices_checked},
                          {"vertex_failures", l.vertex_failures},
                          {"floor_failures", l.floor_failures},
                          {"mixtures_checked", l.mixtures_checked},
                          {"mixture_failures", l.mixture_failures},
                          {"worst_advantage", rational_json(l.worst_advantage)},
                          {"worst_vertex", signs_json(l.k, l.worst_vertex)},
                          {"worst_dissenters", l.worst_dissenters},
                          {"passed", l.passed}});
  }
  r.result = Json{{"k_min", k_min},
                  {"k_max", k_max},
                  {"vertex_samples", s.vertex_samples},
                  {"mixtures", s.mixtures},
                  {"levels", levels},
                  {"threshold", t.threshold ? Json(*t.threshold) : Json(nullptr)}};
  r.add("threshold_found", t.threshold.has_value(), Json{{"offending", t.offending}});
  r.add("delta_floor", floor_failures == 0, Json{{"failures", floor_failures}});
  for (auto& c : r.clauses)
    if (c.pass) c.witness = nullptr;
}

BiasProfile random_bias(int k, std::mt19937_64& rng) {
  std::uniform_int_distribution<long> den(1, 4);
  auto draw = [&] {
    const long d = den(rng);
    return make_rational(std::uniform_int_distribution<long>(-d, d)(rng), d);
  };
  BiasProfile b(k);
  for (int i = 0; i < k; ++i) b.set_single(i, draw());
  for (int i = 0; i < k; ++i)
    for (int j = i + 1; j < k; ++j) b.set_pair(i, j, draw());
  return b;
}

void cmd_identities(Report& r, const GlobalOptions& g, int k, int trials) {
  if (k < 2) throw InvalidArgument("--k must be at least 2");
  if (trials < 1) throw InvalidArgument("--trials must be positive");
  r.seed = g.seed;
  std::mt19937_64 rng(g.seed);
  const auto& specs = inclusion_exclusion_identities();
  std::vector<int> aggregate_ok(specs.size(), 0), printed_ok(specs.size(), 0);
  std::vector<Json> first_failure(specs.size());
  for (int t = 0; t < trials; ++t) {
    const BiasProfile bias = random_bias(k, rng);
    for (std::size_t i = 0; i < specs.size(); ++i) {
      const IdentityOutcome o = check_identity(specs[i], bias);
      aggregate_ok[i] += o.aggregate_matches;
      printed_ok[i] += o.printed_matches;
      if (!o.aggregate_matches && first_failure[i].is_null())
        first_failure[i] = Json{{"trial", t}, {"bias", bias_json(bias)}, {"direct", rational_json(o.direct)},
                                {"aggregate", rational_json(o.aggregate)}};
    }
  }
  Json list = Json::array();
  for (std::size_t i = 0; i < specs.size(); ++i) {
    list.push_back(Json{{"index", specs[i].index},
                        {"lhs", specs[i].lhs.to_string()},
                        {"multiplier", specs[i].multiplier},
                        {"aggregate_matches", aggregate_ok[i]},
                        {"printed_matches", printed_ok[i]}});
    r.add("identity_" + std::to_string(specs[i].index), aggregate_ok[i] == trials, first_failure[i]);
  }
  r.result = Json{{"k", k}, {"trials", trials}, {"identities", list}};
}

// Raw object for builtin; returns false for unknown names.
bool builtin_object(const std::string& name, Json& out) {
  if (name == "three_xor" || name == "glst") {
    out = instance_json(builtin_instance(name));
    return true;
  }
  if (name == "core") {
    out = core_json(core_instance());
    return true;
  }
  const std::string am = "almost-monarchy-", mo = "monarchy-";
  if (name.rfind(am, 0) == 0) {
    out = almost_monarchy_json(almost_monarchy_coefficients(static_cast<int>(parse_long(name.substr(am.size())))));
    return true;
  }
  if (name.rfind(mo, 0) == 0) {
    out = monarchy_json(monarchy_coefficients(static_cast<int>(parse_long(name.substr(mo.size())))));
    return true;
  }
  return false;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"gapforge: exact certificates for integrality gaps and rounding schemes", "gapforge"};
  app.require_subcommand(1);
  app.fallthrough();
  GlobalOptions g;
  std::uint64_t samples = 0;
  app.add_option("--seed", g.seed, "Seed for every stochastic step");
  auto* samples_opt = app.add_option("--samples", samples, "Monte Carlo or sampling budget");
  app.add_option("--max-k", g.max_k, "Largest arity enumerated exhaustively")->check(CLI::Range(1, 62));
  app.add_option("--parallelism", g.parallelism, "Worker threads")->check(CLI::Range(1U, 256U));
  app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"json"}));
  app.add_flag("--timing", g.timing, "Include wall-clock seconds in the report");

  std::function<void(Report&)> action;
  std::string command;
  auto bind = [&](CLI::App* sub, std::string name, std::function<void(Report&)> fn) {
    sub->callback([&, name, fn] {
      command = name;
      action = fn;
    });
  };

  // fourier
  std::string pred_name, pred_file, cls;
  std::vector<std::string> weights;
  std::optional<std::string> subset;
  int class_k = 0;
  auto* fourier = app.add_subcommand("fourier", "Fourier coefficients of a predicate");
  fourier->add_option("--pred", pred_name, "Named predicate (xor3, monarchy-7, almost-monarchy-9, glst, ...)");
  fourier->add_option("--weights", weights, "LTF weights")->delimiter(',');
  fourier->add_option("--file", pred_file, "Predicate JSON");
  fourier->add_option("--subset", subset, "1-based indices, comma separated");
  fourier->add_option("--class", cls, "Almost-monarchy class such as P, 3C, P+2C (closed form)");
  fourier->add_option("--k", class_k, "Arity for --class");
  bind(fourier, "fourier", [&](Report& r) { cmd_fourier(r, g, pred_name, weights, pred_file, subset, cls, class_k); });

  // balanced
  std::string constant = "0";
  auto* balanced = app.add_subcommand("balanced", "Perfect balance test of an LTF");
  balanced->add_option("--weights", weights, "Weights")->delimiter(',')->required();
  balanced->add_option("--constant", constant, "Constant term");
  bind(balanced, "balanced", [&](Report& r) { cmd_balanced(r, g, weights, constant); });

  // verify-instance / vanish
  std::string instance_file, builtin_name;
  int vanish_t = 0;
  bool brute = false;
  auto* verify = app.add_subcommand("verify-instance", "Check the four clauses of a perfect gap instance");
  verify->add_option("file", instance_file, "Instance JSON")->required();
  verify->add_option("--vanish-max-t", vanish_t, "Also run the vanishing check up to this level");
  verify->add_flag("--brute-force", brute, "Cross-check the constant sum by enumerating assignments");
  bind(verify, "verify-instance", [&](Report& r) { cmd_verify_instance(r, instance_file, vanish_t, brute); });

  int max_t = 3;
  auto* vanish = app.add_subcommand("vanish", "Vanishing-measure check level by level");
  vanish->add_option("file", instance_file, "Instance JSON");
  vanish->add_option("--builtin", builtin_name, "three_xor or glst");
  vanish->add_option("--max-t", max_t, "Highest level")->check(CLI::Range(1, kMaxVanishArity));
  bind(vanish, "vanish", [&](Report& r) {
    const GapInstance inst = load_instance(instance_file, builtin_name);
    r.result = Json{{"n", inst.n}};
    add_vanish(r, inst, max_t);
  });

  // core
  std::string core_file, a_text = "1", c_text = "2", b_text = "7";
  auto* core = app.add_subcommand("core", "Core certificate");
  core->require_subcommand(1);
  auto* core_verify = core->add_subcommand("verify", "Verify the core vectors, forms and distributions");
  core_verify->add_option("--file", core_file, "Core JSON (default: builtin)");
  bind(core_verify, "core verify", [&](Report& r) { cmd_core_verify(r, core_file); });
  auto* core_solve = core->add_subcommand("solve", "Solve the parametric core family");
  core_solve->add_option("--a", a_text);
  core_solve->add_option("--c", c_text);
  core_solve->add_option("--b", b_text);
  bind(core_solve, "core solve", [&](Report& r) { cmd_core_solve(r, a_text, c_text, b_text); });

  // gadget
  int gadget_m = 2;
  std::string gadget_range, gadget_vectors;
  auto* gadget = app.add_subcommand("gadget", "Permutation gadgets");
  gadget->require_subcommand(1);
  auto* gadget_verify = gadget->add_subcommand("verify", "Exhaustive satisfiability check of one gadget");
  gadget_verify->add_option("--m", gadget_m, "Number of scalar inputs");
  gadget_verify->add_option("--range", gadget_range, "Value range lo:hi");
  gadget_verify->add_option("--vectors", gadget_vectors, "Explicit inputs, e.g. 0,1;2,-1");
  bind(gadget_verify, "gadget verify", [&](Report& r) {
    if (gadget_range.empty() && gadget_vectors.empty()) throw InvalidArgument("give --range or --vectors");
    cmd_gadget_verify(r, gadget_m, gadget_range, gadget_vectors);
  });

  // encode
  std::vector<std::string> vars, cross;
  bool printed = false;
  auto* encode = app.add_subcommand("encode", "Unary encoding of bounded integer variables");
  encode->add_option("--var", vars, "name:lo:hi:mean:square (repeatable)");
  encode->add_option("--cross", cross, "name:name:value pairwise moment (repeatable)");
  encode->add_flag("--printed", printed, "Use the uncorrected digit formulas");
  bind(encode, "encode", [&](Report& r) { cmd_encode(r, vars, cross, printed); });

  // balance
  auto* balance = app.add_subcommand("balance", "Double a balanced LTF into a perfectly balanced one");
  balance->add_option("--weights", weights, "Weights")->delimiter(',')->required();
  bind(balance, "balance", [&](Report& r) { cmd_balance(r, g, weights); });

  // merge
  std::string l1_file, l2_file;
  std::vector<std::string> w1, w2;
  bool merge_verify = false;
  auto* merge = app.add_subcommand("merge", "Merge two perfectly balanced LTFs");
  merge->add_option("--l1", l1_file, "First form (ltf JSON)");
  merge->add_option("--l2", l2_file, "Second form (ltf JSON)");
  merge->add_option("--w1", w1, "First form weights")->delimiter(',');
  merge->add_option("--w2", w2, "Second form weights")->delimiter(',');
  merge->add_flag("--verify", merge_verify, "Exhaustively check the merge properties");
  bind(merge, "merge", [&](Report& r) {
    cmd_merge(r, load_form(l1_file, w1, "--l1"), load_form(l2_file, w2, "--l2"), merge_verify);
  });

  // pipeline
  int rows = 3;
  auto* pipeline = app.add_subcommand("pipeline", "Construction pipeline");
  pipeline->require_subcommand(1);
  auto* plan = pipeline->add_subcommand("plan", "Dry-run sizing report");
  plan->add_option("--rows", rows, "Representative rows checked for moments")->check(CLI::Range(1, 64));
  bind(plan, "pipeline plan", [&](Report& r) { cmd_pipeline_plan(r, rows); });

  // round
  int round_k = 7, k_min = 15, k_max = 60;
  std::uint64_t mixtures = 1000;
  auto* round = app.add_subcommand("round", "Rounding scheme checks");
  round->require_subcommand(1);
  auto* monarchy = round->add_subcommand("monarchy", "Advantage floor on all vertices and random mixtures");
  monarchy->add_option("--k", round_k, "Arity")->check(CLI::Range(5, 24));
  bind(monarchy, "round monarchy", [&](Report& r) { cmd_round_monarchy(r, g, round_k); });
  auto* almost = round->add_subcommand("almost-monarchy", "Positivity threshold search");
  almost->add_option("--k-min", k_min)->check(CLI::Range(kMinAlmostMonarchyArity, 60));
  almost->add_option("--k-max", k_max)->check(CLI::Range(kMinAlmostMonarchyArity, 60));
  almost->add_option("--mixtures", mixtures, "Mixtures per passing level");
  bind(almost, "round almost-monarchy", [&](Report& r) { cmd_round_almost(r, g, k_min, k_max, mixtures); });

  // identities
  int id_k = 8, trials = 100;
  auto* identities = app.add_subcommand("identities", "Inclusion/exclusion identities on random bias profiles");
  identities->add_option("--k", id_k, "Number of variables");
  identities->add_option("--trials", trials, "Random profiles");
  bind(identities, "identities", [&](Report& r) { cmd_identities(r, g, id_k, trials); });

  // builtin
  std::string object_name;
  auto* builtin = app.add_subcommand("builtin", "Print a builtin object as canonical JSON");
  builtin->add_option("name", object_name, "three_xor, glst, core, monarchy-K, almost-monarchy-K")->required();
  bind(builtin, "builtin", [](Report&) {});

  Report report;
  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    err << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp& e) {
    err << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n" << app.help();
    report.command = args.empty() ? "" : args.front();
    report.error = e.what();
    out << canonical_dump(report.to_json());
    return 2;
  }
  if (samples_opt->count() > 0) g.samples = samples;
  set_parallelism(g.parallelism);
  report.command = command;

  const auto start = std::chrono::steady_clock::now();
  try {
    if (command == "builtin") {
      Json object;
      if (!builtin_object(object_name, object)) throw InvalidArgument("unknown builtin '" + object_name + "'");
      out << canonical_dump(object);
      return 0;
    }
    action(report);
  } catch (const Error& e) {
    report.error = e.what();
    err << "error: " << e.what() << "\n";
  } catch (const std::exception& e) {
    report.error = e.what();
    err << "error: " << e.what() << "\n";
  }
  if (g.timing)
    report.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  out << canonical_dump(report.to_json());
  return report.exit_code();
}

}  // namespace gapforge
