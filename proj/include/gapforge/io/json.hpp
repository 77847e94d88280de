#pragma once

#include <json.hpp>
#include <string>

#include "gapforge/construct/core.hpp"
#include "gapforge/construct/moments.hpp"
#include "gapforge/exactnum/rational.hpp"
#include "gapforge/gapverify/gapverify.hpp"
#include "gapforge/polytope/polytope.hpp"
#include "gapforge/predicate/constraint.hpp"
#include "gapforge/predicate/linear_form.hpp"
#include "gapforge/predicate/predicate.hpp"
#include "gapforge/rounding/almost_monarchy.hpp"
#include "gapforge/rounding/mixture.hpp"
#include "gapforge/rounding/monarchy.hpp"

namespace gapforge {

// Object keys are kept sorted by std::map, so dump() is canonical.
using Json = nlohmann::json;

// Two-space indentation and a trailing newline.
std::string canonical_dump(const Json& value);
// Throws ParseError on malformed text.
Json parse_json(const std::string& text);
Json read_json_file(const std::string& path);

// Rationals are strings "p/q" ("p" when q = 1). Integers are also accepted on input.
Json rational_json(const Rational& r);
Rational rational_from_json(const Json& value);
Json rationals_json(const std::vector<Rational>& values);
std::vector<Rational> rationals_from_json(const Json& value);

// {"kind":"ltf","weights":[...],"constant":"c"}
Json linear_form_json(const LinearForm& form);
LinearForm linear_form_from_json(const Json& value);

// LTF predicates keep their form; others become {"kind":"table","k":k,"plus_set":[bitmasks]}.
Json predicate_json(const Predicate& pred);
Predicate predicate_from_json(const Json& value);

// {"pred":id,"phi":[...],"signs":[...]}; phi is 1-based.
Json constraint_json(const Constraint& c);
Constraint constraint_from_json(const Json& value);

// {"n":n,"b":[...],"bij":[[i,j,"v"],...]}; 1-based, nonzero pairs in lexicographic order.
Json bias_json(const BiasProfile& bias);
BiasProfile bias_from_json(const Json& value);

// Local assignments as bitmasks: [[bits,"p"],...].
Json distribution_json(const Distribution& dist);
Distribution distribution_from_json(const Json& value);

// {"n","predicates","constraints","bias","distributions"}
Json instance_json(const GapInstance& inst);
GapInstance instance_from_json(const Json& value);

Json int_vector_json(const IntVector& v);
Json core_json(const Core& core);
Core core_from_json(const Json& value);

Json moment_spec_json(const MomentSpec& spec);

Json mixture_json(const VertexMixture& mixture);

// Predicate and Fourier data behind the two rounding schemes.
Json monarchy_json(const MonarchyCoefficients& coeffs);
Json almost_monarchy_json(const AlmostMonarchyCoefficients& coeffs);

// Assignment bits as a +-1 vector.
Json signs_json(int k, std::uint64_t bits);

}  // namespace gapforge
