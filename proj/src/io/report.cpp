#include "gapforge/io/report.hpp"

#include <algorithm>

namespace gapforge {

void Report::add(std::string name, bool pass, Json witness) {
  if (!pass && witness.is_null()) witness = "unspecified";
  clauses.push_back({std::move(name), pass, std::move(witness)});
}

std::string Report::status() const {
  if (error) return "error";
  return std::all_of(clauses.begin(), clauses.end(), [](const Clause& c) { return c.pass; }) ? "pass" : "fail";
}

int Report::exit_code() const {
  const std::string s = status();
  return s == "pass" ? 0 : s == "fail" ? 1 : 2;
}

Json Report::to_json() const {
  Json list = Json::array();
  for (const auto& c : clauses) {
    Json entry{{"name", c.name}, {"status", c.pass ? "pass" : "fail"}};
    if (!c.witness.is_null()) entry["witness"] = c.witness;
    list.push_back(entry);
  }
  Json out{{"command", command}, {"status", status()}, {"clauses", list}, {"result", result}};
  if (seed) out["seed"] = *seed;
  if (seconds) out["timing"] = Json{{"seconds", *seconds}};
  if (error) out["error"] = *error;
  return out;
}

}  // namespace gapforge
