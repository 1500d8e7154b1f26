#include "kapranov/report.hpp"

namespace kap {

void Report::fail(std::string location, std::string value) {
  ++failed;
  if (witnesses.size() < kMaxWitnesses) witnesses.push_back({std::move(location), std::move(value)});
}

void Report::absorb(const Report& other) {
  cases += other.cases;
  failed += other.failed;
  for (const auto& w : other.witnesses) {
    if (witnesses.size() >= kMaxWitnesses) break;
    witnesses.push_back(w);
  }
}

}  // namespace kap
