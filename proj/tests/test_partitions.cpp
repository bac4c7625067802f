#include "doctest.h"

#include <algorithm>
#include <set>
#include <vector>

#include "sphcontract/partitions.hpp"

using namespace sphc;

namespace {

// Independent interlacing oracle used to cross-check branch(): enumerate
// all candidate labels in a box and keep those satisfying the chain.
std::vector<std::vector<int>> brute_branch(const std::vector<int>& lam, int N) {
  const int m = static_cast<int>(lam.size());
  const int out_len = (N - 1) / 2;
  const int bound = lam.empty() ? 0 : *std::max_element(lam.begin(), lam.end());
  std::vector<std::vector<int>> all, cur{{}};
  for (int slot = 0; slot < out_len; ++slot) {
    std::vector<std::vector<int>> next;
    for (const auto& prefix : cur)
      for (int v = -bound; v <= bound; ++v) {
        auto ext = prefix;
        ext.push_back(v);
        next.push_back(ext);
      }
    cur = next;
  }
  for (const auto& mu : cur) {
    bool ok = true;
    if (N % 2 == 1) {
      // odd -> even: lam_1 >= mu_1 >= lam_2 >= ... >= lam_m >= |mu_m|
      for (int i = 0; i + 1 < m && ok; ++i)
        if (!(lam[i] >= mu[i] && mu[i] >= lam[i + 1])) ok = false;
      if (ok && !(lam[m - 1] >= std::abs(mu[m - 1]))) ok = false;
    } else {
      // even -> odd: lam_1 >= mu_1 >= lam_2 >= ... >= mu_{m-1} >= |lam_m|
      for (int i = 0; i + 2 < m && ok; ++i)
        if (!(lam[i] >= mu[i] && mu[i] >= lam[i + 1])) ok = false;
      if (ok && m >= 2 &&
          !(lam[m - 2] >= mu[m - 2] && mu[m - 2] >= std::abs(lam[m - 1])))
        ok = false;
    }
    if (ok) all.push_back(mu);
  }
  std::sort(all.begin(), all.end());
  all.erase(std::unique(all.begin(), all.end()), all.end());
  return all;
}

int so3_dim(int j) { return 2 * j + 1; }
int so4_dim(int l1, int l2) { return (l1 + l2 + 1) * (l1 - l2 + 1); }

}  // namespace

TEST_CASE("validate_partition examples") {
  CHECK(validate_partition({2, 1}, 4));
  CHECK_FALSE(validate_partition({1, -2}, 4));
  CHECK_FALSE(validate_partition({2, -1}, 5));
  CHECK(validate_partition({2, -1}, 4));
  CHECK(validate_partition({}, 1));
  CHECK(validate_partition({-3}, 2));
  CHECK_FALSE(validate_partition({-1}, 3));
  CHECK_THROWS_AS(validate_partition({1, 2, 3}, 4), std::invalid_argument);
  CHECK_THROWS_AS(validate_partition({}, 4), std::invalid_argument);
  CHECK_THROWS_AS(validate_partition({1}, 0), std::invalid_argument);
}

TEST_CASE("branch frozen examples") {
  const auto b30 = branch(Partition({3, 0}, 4));
  REQUIRE(b30.size() == 4);
  for (int j = 0; j <= 3; ++j) CHECK(b30[j] == Partition({j}, 3));

  const auto b21 = branch(Partition({2, 1}, 5));
  const std::vector<Partition> expect = {
      Partition({1, -1}, 4), Partition({1, 0}, 4), Partition({1, 1}, 4),
      Partition({2, -1}, 4), Partition({2, 0}, 4), Partition({2, 1}, 4)};
  REQUIRE(b21.size() == 6);
  for (size_t i = 0; i < expect.size(); ++i) CHECK(b21[i] == expect[i]);

  // Trivial label restricts trivially.
  CHECK(branch(Partition({0, 0}, 5)) ==
        std::vector<Partition>{Partition({0, 0}, 4)});
  CHECK(branch(Partition({0, 0}, 4)) == std::vector<Partition>{Partition({0}, 3)});

  // SO(2) has no SO(1) content beyond the empty label.
  CHECK(branch(Partition({7}, 2)) == std::vector<Partition>{Partition({}, 1)});
}

TEST_CASE("branch agrees with the brute-force interlacing oracle") {
  for (int N : {3, 4, 5}) {
    const int m = N / 2;
    std::vector<std::vector<int>> cur{{}};
    for (int slot = 0; slot < m; ++slot) {
      std::vector<std::vector<int>> next;
      for (const auto& prefix : cur)
        for (int v = -4; v <= 4; ++v) {
          auto ext = prefix;
          ext.push_back(v);
          next.push_back(ext);
        }
      cur = next;
    }
    for (const auto& lam : cur) {
      if (!validate_partition(lam, N)) continue;
      const auto got = branch(Partition(lam, N));
      const auto want = brute_branch(lam, N);
      REQUIRE(got.size() == want.size());
      for (size_t i = 0; i < got.size(); ++i) {
        CHECK(got[i].entries() == want[i]);
        CHECK(validate_partition(got[i].entries(), N - 1));
      }
    }
  }
}

TEST_CASE("multiplicity") {
  CHECK(multiplicity(Partition({1}, 3), Partition({2, 0}, 4)) == 1);
  CHECK(multiplicity(Partition({3}, 3), Partition({2, 0}, 4)) == 0);
  CHECK(multiplicity(Partition({}, 1), Partition({0}, 2)) == 1);
  CHECK_THROWS_AS(multiplicity(Partition({1}, 2), Partition({2, 0}, 4)),
                  std::invalid_argument);
}

TEST_CASE("multiplicity-free branching, exhaustive small labels") {
  for (int N : {3, 4, 5}) {
    const int m = N / 2;
    std::vector<std::vector<int>> cur{{}};
    for (int slot = 0; slot < m; ++slot) {
      std::vector<std::vector<int>> next;
      for (const auto& prefix : cur)
        for (int v = -5; v <= 5; ++v) {
          auto ext = prefix;
          ext.push_back(v);
          next.push_back(ext);
        }
      cur = next;
    }
    for (const auto& lam : cur) {
      bool valid = true;
      try {
        valid = validate_partition(lam, N);
      } catch (...) {
        valid = false;
      }
      if (!valid || lam[0] > 5) continue;
      const Partition pi(lam, N);
      const auto down = branch(pi);
      std::set<std::vector<int>> seen;
      for (const auto& tau : down) {
        CHECK(validate_partition(tau.entries(), N - 1));
        CHECK(seen.insert(tau.entries()).second);  // duplicate-free
        CHECK(multiplicity(tau, pi) == 1);
      }
    }
  }
}

TEST_CASE("SO(4) -> SO(3) dimension bookkeeping") {
  // sum of (2 j + 1) over the restriction equals the Clebsch-Gordan
  // dimension (l1 + l2 + 1)(l1 - l2 + 1), exhaustively for l1 <= 5.
  for (int l1 = 0; l1 <= 5; ++l1)
    for (int l2 = -l1; l2 <= l1; ++l2) {
      const Partition pi({l1, l2}, 4);
      int total = 0;
      for (const auto& tau : branch(pi)) total += so3_dim(tau.first());
      CHECK(total == so4_dim(l1, std::abs(l2)));
    }
}

TEST_CASE("contracting_label") {
  CHECK(contracting_label(Partition({}, 1), 5) == Partition({5}, 3));
  CHECK(contracting_label(Partition({2}, 2), 4) == Partition({4, 2}, 4));
  CHECK_THROWS_AS(contracting_label(Partition({2}, 2), 1), std::domain_error);
  // ell >= sigma_1 but below |last entry| is not a valid partition either.
  CHECK_THROWS_AS(contracting_label(Partition({-2}, 2), 1),
                  std::invalid_argument);
}

TEST_CASE("min_contracting_index") {
  CHECK(min_contracting_index(Partition({3}, 3)) == 3);
  CHECK(min_contracting_index(Partition({0, 0}, 4)) == 0);
  CHECK(min_contracting_index(Partition({4, 1}, 4)) == 4);
  CHECK(min_contracting_index(Partition({-3}, 2)) == 3);
}

TEST_CASE("containment above the minimal index (exhaustive)") {
  // For n in {2,3}: whenever sigma interlaces tau and
  // ell >= min_contracting_index(tau), tau sits inside (ell, sigma).
  for (int n : {2, 3}) {
    std::vector<Partition> taus;
    if (n == 2)
      for (int t = -4; t <= 4; ++t) taus.push_back(Partition({t}, 2));
    else
      for (int t = 0; t <= 4; ++t) taus.push_back(Partition({t}, 3));
    for (const auto& tau : taus) {
      for (const auto& sigma : branch(tau)) {
        for (int ell = 0; ell <= 8; ++ell) {
          if (ell < sigma.first()) continue;
          Partition label({}, 1);
          bool constructible = true;
          try {
            label = contracting_label(sigma, ell);
          } catch (...) {
            constructible = false;
          }
          if (!constructible) continue;
          const int mult = multiplicity(tau, label);
          if (ell >= min_contracting_index(tau))
            CHECK(mult == 1);
        }
      }
    }
  }
}

TEST_CASE("commutativity_check") {
  CHECK(commutativity_check(3, Partition({2}, 3), 10));
  CHECK(commutativity_check(2, Partition({1}, 2), 10));
  CHECK(commutativity_check(3, Partition({0}, 3), 10));
}
