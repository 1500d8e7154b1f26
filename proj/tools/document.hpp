#pragma once

#include "kapranov/builders.hpp"

#include <json.hpp>

#include <optional>
#include <stdexcept>
#include <string>

namespace kapcli {

using Json = nlohmann::ordered_json;

// Semantic problem in an otherwise well-formed document.
struct DocumentError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Instance {
  std::string name;
  std::string kind;  // lie_algebra, lie_pair, linear_map_object or raw
  int max_arity = 5;

  // Structural checks collected while building; later fields are only set
  // when everything they depend on is valid.
  std::vector<kap::Report> structural;

  kap::CdgaPtr algebra;
  kap::ModulePtr omega;
  kap::ModulePtr B;
  std::optional<kap::Derivation> delta;
  std::optional<kap::Derivation> delta2;  // second derivation for the homotopy command
  std::optional<kap::Derivation> homotopy;
  std::vector<kap::Connection> connections;  // on B along delta; the first is the default

  std::optional<kap::LinearMapObject> lm_object;
  std::optional<kap::LinearMapSetup> lm_setup;
  std::optional<kap::Connection> coadjoint;

  bool valid() const;
};

// Reads and builds an instance. Throws nlohmann::json::parse_error on syntax
// errors and DocumentError on semantic ones.
Instance load_instance(const std::string& path);
Instance build_instance(const Json& doc);

}  // namespace kapcli
