#include "sphcontract/partitions.hpp"

#include <algorithm>
#include <cstdlib>
#include <sstream>
#include <stdexcept>

namespace sphc {

namespace {

bool ordering_holds(const std::vector<int>& e, int group_size) {
  const int m = static_cast<int>(e.size());
  if (m == 0) return true;
  for (int i = 0; i + 1 < m - 1; ++i)
    if (e[i] < e[i + 1]) return false;
  if (group_size % 2 == 0) {
    // lambda_1 >= ... >= lambda_{M-1} >= |lambda_M|
    if (m >= 2 && e[m - 2] < std::abs(e[m - 1])) return false;
  } else {
    // lambda_1 >= ... >= lambda_M >= 0
    if (m >= 2 && e[m - 2] < e[m - 1]) return false;
    if (e[m - 1] < 0) return false;
  }
  return true;
}

}  // namespace

Partition::Partition(std::vector<int> entries, int group_size)
    : entries_(std::move(entries)), n_(group_size) {
  if (!validate_partition(entries_, n_))
    throw std::invalid_argument("Partition: entries violate the SO(" +
                                std::to_string(n_) + ") ordering conditions");
}

int Partition::entry(int i) const {
  if (i < 0) throw std::invalid_argument("Partition::entry: negative index");
  return i < rank() ? entries_[i] : 0;
}

bool Partition::operator==(const Partition& o) const {
  return n_ == o.n_ && entries_ == o.entries_;
}

bool Partition::operator<(const Partition& o) const {
  if (n_ != o.n_)
    throw std::invalid_argument("Partition::operator<: mixed group sizes");
  return std::lexicographical_compare(entries_.begin(), entries_.end(),
                                      o.entries_.begin(), o.entries_.end());
}

std::string Partition::to_string() const {
  std::ostringstream os;
  os << '(';
  for (int i = 0; i < rank(); ++i) {
    if (i) os << ',';
    os << entries_[i];
  }
  os << ')';
  return os.str();
}

bool validate_partition(const std::vector<int>& entries, int group_size) {
  if (group_size < 1)
    throw std::invalid_argument("validate_partition: group size must be >= 1");
  if (static_cast<int>(entries.size()) != group_size / 2)
    throw std::invalid_argument(
        "validate_partition: expected floor(N/2) = " +
        std::to_string(group_size / 2) + " entries, got " +
        std::to_string(entries.size()));
  return ordering_holds(entries, group_size);
}

std::vector<Partition> branch(const Partition& p) {
  const int n = p.group_size();
  if (n < 2)
    throw std::invalid_argument("branch: no group below SO(1)");
  if (n == 2)  // SO(2) -> SO(1): only the empty label
    return {Partition({}, 1)};

  const std::vector<int>& lam = p.entries();
  const int m = p.rank();

  // Per-slot ranges of the interlacing chain.
  std::vector<std::pair<int, int>> range;  // [lo, hi] inclusive
  if (n % 2 == 1) {
    // odd -> even: result keeps m entries, last one signed:
    // lam_1 >= mu_1 >= lam_2 >= ... >= mu_{m-1} >= lam_m >= |mu_m|
    for (int i = 0; i + 1 < m; ++i) range.emplace_back(lam[i + 1], lam[i]);
    range.emplace_back(-lam[m - 1], lam[m - 1]);
  } else {
    // even -> odd: result drops to m-1 entries, all >= 0:
    // lam_1 >= mu_1 >= lam_2 >= ... >= mu_{m-1} >= |lam_m|
    for (int i = 0; i + 1 < m - 1; ++i) range.emplace_back(lam[i + 1], lam[i]);
    if (m >= 2) range.emplace_back(std::abs(lam[m - 1]), lam[m - 2]);
  }

  std::vector<Partition> out;
  std::vector<int> cur(range.size(), 0);
  // Odometer over the product of ranges; every combination interlaces.
  auto emit = [&](auto&& self, size_t slot) -> void {
    if (slot == range.size()) {
      out.emplace_back(cur, n - 1);
      return;
    }
    for (int v = range[slot].first; v <= range[slot].second; ++v) {
      cur[slot] = v;
      self(self, slot + 1);
    }
  };
  emit(emit, 0);
  std::sort(out.begin(), out.end());
  return out;
}

int multiplicity(const Partition& tau, const Partition& pi) {
  if (tau.group_size() + 1 != pi.group_size())
    throw std::invalid_argument(
        "multiplicity: tau must label SO(N-1) for pi labelling SO(N)");
  const auto down = branch(pi);
  return std::binary_search(down.begin(), down.end(), tau) ? 1 : 0;
}

Partition contracting_label(const Partition& sigma, int ell) {
  if (ell < sigma.first())
    throw std::domain_error(
        "contracting_label: sequence index below range (ell < sigma_1 gives "
        "a trivial representation)");
  const int target = sigma.group_size() + 2;  // SO(n+1) for sigma in SO(n-1)
  std::vector<int> e;
  e.reserve(target / 2);
  e.push_back(ell);
  for (int v : sigma.entries()) e.push_back(v);
  while (static_cast<int>(e.size()) < target / 2) e.push_back(0);
  return Partition(e, target);
}

int min_contracting_index(const Partition& tau) {
  if (tau.rank() == 0) return 0;
  // For N = 2 the single entry is signed and the containment bound is |m|;
  // for N >= 3 the first entry already dominates.
  return std::max(tau.first(), std::abs(tau.entries().back()));
}

bool commutativity_check(int n, const Partition& tau, int max_sigma) {
  if (n != 2 && n != 3)
    throw std::invalid_argument("commutativity_check: n must be 2 or 3");
  if (tau.group_size() != n)
    throw std::invalid_argument("commutativity_check: tau must label SO(n)");
  const auto down = branch(tau);
  auto count_of = [&](const Partition& s) {
    return std::count(down.begin(), down.end(), s);
  };
  if (n == 2) {
    return count_of(Partition({}, 1)) <= 1;
  }
  for (int s = -max_sigma; s <= max_sigma; ++s)
    if (count_of(Partition({s}, 2)) > 1) return false;
  return true;
}

}  // namespace sphc
