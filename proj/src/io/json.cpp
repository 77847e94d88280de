#include "gapforge/io/json.hpp"

#include <fstream>
#include <sstream>

#include "gapforge/error.hpp"

namespace gapforge {
namespace {

const Json& field(const Json& obj, const char* key) {
  if (!obj.is_object() || !obj.contains(key)) throw ParseError(std::string("missing field \"") + key + "\"");
  return obj.at(key);
}

long integer_field(const Json& value, const char* what) {
  if (!value.is_number_integer()) throw ParseError(std::string(what) + " must be an integer");
  return value.get<long>();
}

std::vector<int> one_based(const Json& value, const char* what) {
  if (!value.is_array()) throw ParseError(std::string(what) + " must be an array");
  std::vector<int> out;
  for (const auto& v : value) out.push_back(static_cast<int>(integer_field(v, what)) - 1);
  return out;
}

Json one_based_json(const std::vector<int>& indices) {
  Json out = Json::array();
  for (int i : indices) out.push_back(i + 1);
  return out;
}

}  // namespace

std::string canonical_dump(const Json& value) { return value.dump(2) + "\n"; }

Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_json(ss.str());
}

Json rational_json(const Rational& r) { return to_string(r); }

Rational rational_from_json(const Json& value) {
  if (value.is_number_integer()) return Rational(value.get<long>());
  if (!value.is_string()) throw ParseError("rational must be a string \"p/q\"");
  try {
    return parse_rational(value.get<std::string>());
  } catch (const Error& e) {
    throw ParseError(e.what());
  }
}

Json rationals_json(const std::vector<Rational>& values) {
  Json out = Json::array();
  for (const auto& v : values) out.push_back(rational_json(v));
  return out;
}

std::vector<Rational> rationals_from_json(const Json& value) {
  if (!value.is_array()) throw ParseError("expected an array of rationals");
  std::vector<Rational> out;
  for (const auto& v : value) out.push_back(rational_from_json(v));
  return out;
}

Json linear_form_json(const LinearForm& form) {
  return Json{{"kind", "ltf"}, {"weights", rationals_json(form.weights)}, {"constant", rational_json(form.constant)}};
}

LinearForm linear_form_from_json(const Json& value) {
  if (field(value, "kind") != "ltf") throw ParseError("expected an ltf");
  const Rational constant = value.contains("constant") ? rational_from_json(value.at("constant")) : Rational(0);
  LinearForm form(rationals_from_json(field(value, "weights")), constant);
  if (form.arity() == 0) throw ParseError("ltf needs at least one weight");
  return form;
}

Json predicate_json(const Predicate& pred) {
  if (pred.form()) return linear_form_json(*pred.form());
  return Json{{"kind", "table"}, {"k", pred.arity()}, {"plus_set", pred.plus_set()}};
}

Predicate predicate_from_json(const Json& value) {
  const Json& kind = field(value, "kind");
  if (kind == "ltf") return Predicate::from_ltf(linear_form_from_json(value));
  if (kind != "table") throw ParseError("predicate kind must be \"ltf\" or \"table\"");
  const long k = integer_field(field(value, "k"), "k");
  if (k < 1 || k > kMaxTableArity) throw ParseError("table arity out of range");
  std::vector<std::uint64_t> plus;
  for (const auto& a : field(value, "plus_set")) {
    if (!a.is_number_unsigned() && !(a.is_number_integer() && a.get<long>() >= 0))
      throw ParseError("plus_set entries must be nonnegative integers");
    plus.push_back(a.get<std::uint64_t>());
  }
  return Predicate::from_plus_set(static_cast<int>(k), plus);
}

Json constraint_json(const Constraint& c) {
  return Json{{"pred", c.predicate}, {"phi", one_based_json(c.phi)}, {"signs", c.signs}};
}

Constraint constraint_from_json(const Json& value) {
  Constraint c;
  c.predicate = static_cast<int>(integer_field(field(value, "pred"), "pred"));
  c.phi = one_based(field(value, "phi"), "phi");
  const Json& signs = field(value, "signs");
  if (!signs.is_array()) throw ParseError("signs must be an array");
  for (const auto& z : signs) c.signs.push_back(static_cast<int>(integer_field(z, "sign")));
  return c;
}

Json bias_json(const BiasProfile& bias) {
  Json b = Json::array();
  for (int i = 0; i < bias.n(); ++i) b.push_back(rational_json(bias.single(i)));
  Json pairs = Json::array();
  for (int i = 0; i < bias.n(); ++i)
    for (int j = i + 1; j < bias.n(); ++j)
      if (bias.pair(i, j) != 0) pairs.push_back(Json::array({i + 1, j + 1, rational_json(bias.pair(i, j))}));
  return Json{{"n", bias.n()}, {"b", b}, {"bij", pairs}};
}

BiasProfile bias_from_json(const Json& value) {
  const long n = integer_field(field(value, "n"), "n");
  if (n < 0) throw ParseError("n must be nonnegative");
  BiasProfile bias(static_cast<int>(n));
  const std::vector<Rational> b = rationals_from_json(field(value, "b"));
  if (static_cast<long>(b.size()) != n) throw ParseError("b must have n entries");
  for (int i = 0; i < n; ++i) bias.set_single(i, b[static_cast<std::size_t>(i)]);
  if (value.contains("bij"))
    for (const auto& e : value.at("bij")) {
      if (!e.is_array() || e.size() != 3) throw ParseError("bij entries are [i, j, value]");
      const long i = integer_field(e[0], "pair index") - 1, j = integer_field(e[1], "pair index") - 1;
      if (i < 0 || j < 0 || i >= n || j >= n || i == j) throw ParseError("pair index out of range");
      bias.set_pair(static_cast<int>(i), static_cast<int>(j), rational_from_json(e[2]));
    }
  return bias;
}

Json distribution_json(const Distribution& dist) {
  Json out = Json::array();
  for (const auto& [bits, p] : dist) out.push_back(Json::array({bits, rational_json(p)}));
  return out;
}

Distribution distribution_from_json(const Json& value) {
  if (!value.is_array()) throw ParseError("distribution must be an array");
  Distribution out;
  for (const auto& e : value) {
    if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() || e[0].get<long>() < 0)
      throw ParseError("distribution entries are [bits, probability]");
    out.emplace_back(e[0].get<std::uint64_t>(), rational_from_json(e[1]));
  }
  return out;
}

Json instance_json(const GapInstance& inst) {
  Json preds = Json::array(), cons = Json::array(), dists = Json::array();
  for (const auto& p : inst.predicates) preds.push_back(predicate_json(p));
  for (const auto& c : inst.constraints) cons.push_back(constraint_json(c));
  for (const auto& d : inst.dists) dists.push_back(distribution_json(d));
  return Json{{"n", inst.n}, {"predicates", preds}, {"constraints", cons}, {"bias", bias_json(inst.bias)},
              {"distributions", dists}};
}

GapInstance instance_from_json(const Json& value) {
  GapInstance inst;
  inst.n = static_cast<int>(integer_field(field(value, "n"), "n"));
  for (const auto& p : field(value, "predicates")) inst.predicates.push_back(predicate_from_json(p));
  for (const auto& c : field(value, "constraints")) inst.constraints.push_back(constraint_from_json(c));
  inst.bias = bias_from_json(field(value, "bias"));
  for (const auto& d : field(value, "distributions")) inst.dists.push_back(distribution_from_json(d));
  try {
    inst.validate();
  } catch (const Error& e) {
    throw ParseError(std::string("invalid instance: ") + e.what());
  }
  return inst;
}

Json int_vector_json(const IntVector& v) { return Json(v); }

Json core_json(const Core& core) {
  Json forms = Json::array(), vectors = Json::array(), dists = Json::array();
  for (const auto& f : core.forms) forms.push_back(linear_form_json(f));
  for (const auto& v : core.vectors) vectors.push_back(int_vector_json(v));
  for (const auto& d : core.dists) dists.push_back(rationals_json(d));
  return Json{{"forms", forms},
              {"vectors", vectors},
              {"c_i", rational_json(core.mean)},
              {"c_ii", rational_json(core.square)},
              {"c_ij", rational_json(core.cross)},
              {"distributions", dists}};
}

Core core_from_json(const Json& value) {
  Core core;
  for (const auto& f : field(value, "forms")) core.forms.push_back(linear_form_from_json(f));
  for (const auto& v : field(value, "vectors")) {
    IntVector vec;
    for (const auto& x : v) vec.push_back(integer_field(x, "vector entry"));
    core.vectors.push_back(vec);
  }
  core.mean = rational_from_json(field(value, "c_i"));
  core.square = rational_from_json(field(value, "c_ii"));
  core.cross = rational_from_json(field(value, "c_ij"));
  for (const auto& d : field(value, "distributions")) {
    core.dists.push_back(rationals_from_json(d));
    if (core.dists.back().size() != core.vectors.size()) throw ParseError("distribution length mismatch");
  }
  return core;
}

Json moment_spec_json(const MomentSpec& spec) {
  Json vars = Json::array(), cross = Json::array();
  for (std::size_t i = 0; i < spec.size(); ++i)
    vars.push_back(Json{{"name", spec.names[i]}, {"mean", rational_json(spec.mean[i])},
                        {"square", rational_json(spec.square[i])}});
  for (const auto& [key, v] : spec.cross)
    cross.push_back(Json::array({spec.names[key.first], spec.names[key.second], rational_json(v)}));
  return Json{{"variables", vars}, {"cross", cross}};
}

Json signs_json(int k, std::uint64_t bits) {
  Json out = Json::array();
  for (int i = 0; i < k; ++i) out.push_back(((bits >> i) & 1U) ? 1 : -1);
  return out;
}

Json mixture_json(const VertexMixture& mixture) {
  Json terms = Json::array();
  for (const auto& [bits, w] : mixture.vertices)
    terms.push_back(Json{{"vertex", signs_json(mixture.k, bits)}, {"weight", rational_json(w)}});
  return Json{{"k", mixture.k}, {"terms", terms}};
}

Json monarchy_json(const MonarchyCoefficients& c) {
  Json out{{"k", c.k},
           {"predicate", predicate_json(Predicate::monarchy(c.k))},
           {"coefficients",
            {{"P", rational_json(c.president)},
             {"C", rational_json(c.citizen)},
             {"3C", rational_json(c.three_citizens)},
             {"P+2C", rational_json(c.president_pair)}}},
           {"signs_ok", c.signs_ok}};
  if (c.signs_ok) out["scale"] = rational_json(c.scale);
  return out;
}

Json almost_monarchy_json(const AlmostMonarchyCoefficients& c) {
  Json coeffs{{"P", rational_json(c.president)}, {"C", rational_json(c.citizen)}};
  for (int d = 0; d < 3; ++d) {
    coeffs[std::to_string(2 * d + 3) + "C"] = rational_json(c.citizens[static_cast<std::size_t>(d)]);
    coeffs["P+" + std::to_string(2 * d + 2) + "C"] = rational_json(c.with_president[static_cast<std::size_t>(d)]);
  }
  return Json{{"k", c.k},
              {"predicate", predicate_json(Predicate::almost_monarchy(c.k))},
              {"coefficients", coeffs},
              {"pair_target", rational_json(c.pair_target)},
              {"scale", rational_json(c.scale)},
              {"weights", rationals_json({c.weights.begin(), c.weights.end()})}};
}

}  // namespace gapforge
