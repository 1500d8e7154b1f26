#pragma once

#include <string>
#include <vector>

namespace kap {

struct Witness {
  std::string location;
  std::string value;
};

// Result of one verification. Only the first few witnesses are kept.
struct Report {
  static constexpr size_t kMaxWitnesses = 16;

  std::string check;
  size_t cases = 0;
  size_t failed = 0;
  std::vector<Witness> witnesses;

  Report() = default;
  explicit Report(std::string name) : check(std::move(name)) {}

  bool passed() const { return failed == 0; }
  void fail(std::string location, std::string value);
  void absorb(const Report& other);
};

}  // namespace kap
