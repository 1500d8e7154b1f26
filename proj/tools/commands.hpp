#pragma once

#include "document.hpp"

#include <optional>
#include <string>
#include <vector>

namespace kapcli {

struct CommandOptions {
  std::optional<int> max_arity;
  std::optional<int> degree;
};

struct CommandResult {
  Json doc;
  bool passed = true;
};

const std::vector<std::string>& command_names();

// Runs one command on a built instance. Checks are recorded in doc["checks"],
// computed data in doc["results"].
CommandResult run_command(const std::string& command, const Instance& in, const CommandOptions& opt);

Json report_json(const kap::Report& r);

}  // namespace kapcli
