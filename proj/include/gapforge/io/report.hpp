#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gapforge/io/json.hpp"

namespace gapforge {

struct Clause {
  std::string name;
  bool pass = true;
  Json witness;  // required when pass is false
};

// Machine-readable outcome of one command.
struct Report {
  std::string command;
  std::vector<Clause> clauses;
  Json result = Json::object();
  std::optional<std::uint64_t> seed;
  std::optional<double> seconds;
  std::optional<std::string> error;

  void add(std::string name, bool pass, Json witness = nullptr);
  // "error" if an error was recorded, else "pass" iff every clause passes.
  std::string status() const;
  // 0 pass, 1 fail, 2 error.
  int exit_code() const;
  Json to_json() const;
};

}  // namespace gapforge
