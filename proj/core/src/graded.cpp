#include "kapranov/graded.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

namespace kap {

GradedBasis::GradedBasis(std::vector<BasisEntry> entries) : entries_(std::move(entries)) {
  for (size_t i = 0; i < entries_.size(); ++i)
    for (size_t j = 0; j < i; ++j)
      if (entries_[i].name == entries_[j].name)
        throw std::invalid_argument("duplicate basis name '" + entries_[i].name + "'");
}

int GradedBasis::index_of(const std::string& name) const {
  for (size_t i = 0; i < entries_.size(); ++i)
    if (entries_[i].name == name) return static_cast<int>(i);
  return -1;
}

void Element::add(int index, const Scalar& c) {
  if (c == 0) return;
  auto it = coeffs.find(index);
  if (it == coeffs.end()) {
    coeffs.emplace(index, c);
    return;
  }
  it->second += c;
  if (it->second == 0) coeffs.erase(it);
}

Element& Element::operator+=(const Element& o) {
  for (const auto& [i, c] : o.coeffs) add(i, c);
  return *this;
}

Element Element::scaled(const Scalar& c) const {
  Element out;
  if (c == 0) return out;
  for (const auto& [i, v] : coeffs) out.coeffs.emplace(i, v * c);
  return out;
}

std::optional<int> element_degree(const GradedBasis& basis, const Element& v) {
  std::optional<int> deg;
  for (const auto& [i, c] : v.coeffs) {
    int d = basis.degree(i);
    if (deg && *deg != d) return std::nullopt;
    deg = d;
  }
  return deg;
}

int koszul_sign(const std::vector<int>& sigma, const std::vector<int>& degs) {
  if (sigma.size() != degs.size())
    throw std::invalid_argument("koszul_sign: permutation and degree list differ in length");
  const size_t n = sigma.size();
  std::vector<bool> seen(n, false);
  for (int s : sigma) {
    if (s < 0 || static_cast<size_t>(s) >= n || seen[s])
      throw std::invalid_argument("koszul_sign: not a permutation");
    seen[s] = true;
  }
  long e = 0;
  for (size_t i = 0; i < n; ++i)
    for (size_t j = i + 1; j < n; ++j)
      if (sigma[i] > sigma[j]) e += static_cast<long>(degs[sigma[i]]) * degs[sigma[j]];
  return parity_sign(e);
}

std::vector<std::vector<int>> shuffles(int p, int q) {
  if (p < 0 || q < 0) throw std::invalid_argument("shuffles: negative block size");
  std::vector<std::vector<int>> out;
  const int n = p + q;
  std::vector<int> first;
  std::function<void(int)> rec = [&](int start) {
    if (static_cast<int>(first.size()) == p) {
      std::vector<int> sigma(first);
      std::vector<bool> used(n, false);
      for (int x : first) used[x] = true;
      for (int x = 0; x < n; ++x)
        if (!used[x]) sigma.push_back(x);
      out.push_back(std::move(sigma));
      return;
    }
    for (int x = start; x < n; ++x) {
      first.push_back(x);
      rec(x + 1);
      first.pop_back();
    }
  };
  rec(0);
  return out;
}

std::vector<std::vector<std::vector<int>>> ordered_partitions(int n, int q) {
  std::vector<std::vector<std::vector<int>>> out;
  if (q <= 0 || q > n) return out;
  // Assign each element a block label; blocks ordered by their maxima.
  std::vector<int> label(n, 0);
  std::function<void(int)> rec = [&](int pos) {
    if (pos == n) {
      std::vector<std::vector<int>> blocks(q);
      for (int i = 0; i < n; ++i) blocks[label[i]].push_back(i);
      for (const auto& b : blocks)
        if (b.empty()) return;
      for (int j = 0; j + 1 < q; ++j)
        if (blocks[j].back() > blocks[j + 1].back()) return;
      out.push_back(std::move(blocks));
      return;
    }
    for (int b = 0; b < q; ++b) {
      label[pos] = b;
      rec(pos + 1);
    }
  };
  rec(0);
  std::sort(out.begin(), out.end());
  return out;
}

int partition_sign(const std::vector<std::vector<int>>& blocks, const std::vector<int>& degs) {
  std::vector<int> sigma;
  for (const auto& b : blocks) sigma.insert(sigma.end(), b.begin(), b.end());
  return koszul_sign(sigma, degs);
}

Element eval_multilinear(const MultilinearMap& m, const std::vector<Element>& args) {
  if (static_cast<int>(args.size()) != m.arity)
    throw std::invalid_argument("eval_multilinear: expected " + std::to_string(m.arity) +
                                " arguments, got " + std::to_string(args.size()));
  Element out;
  std::vector<int> idx(args.size());
  std::function<void(size_t, const Scalar&)> rec = [&](size_t slot, const Scalar& c) {
    if (slot == args.size()) {
      auto it = m.table.find(idx);
      if (it != m.table.end()) out += it->second.scaled(c);
      return;
    }
    for (const auto& [i, v] : args[slot].coeffs) {
      idx[slot] = i;
      rec(slot + 1, c * v);
    }
  };
  rec(0, Scalar(1));
  return out;
}

long binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  long r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace kap
