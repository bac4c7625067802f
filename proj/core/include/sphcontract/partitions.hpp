#pragma once

#include <string>
#include <vector>

namespace sphc {

/// Integer highest-weight label of an SO(N) irreducible representation,
/// stored padded to exact length floor(N/2).  For even N the last entry
/// carries a sign; for odd N all entries are non-negative.  Half-integer
/// labels are not representable by construction.
class Partition {
public:
  /// Throws std::invalid_argument on wrong length or violated ordering.
  Partition(std::vector<int> entries, int group_size);

  int group_size() const { return n_; }
  int rank() const { return static_cast<int>(entries_.size()); }
  const std::vector<int>& entries() const { return entries_; }

  /// Entry by index, 0 beyond the stored rank.
  int entry(int i) const;
  /// First entry (0 for the empty partition of SO(1)).
  int first() const { return entry(0); }

  bool operator==(const Partition& o) const;
  bool operator!=(const Partition& o) const { return !(*this == o); }
  /// Lexicographic order on entries; group sizes must match.
  bool operator<(const Partition& o) const;

  std::string to_string() const;  // e.g. "(2,1)" or "()"

private:
  std::vector<int> entries_;
  int n_;
};

/// Parity-appropriate ordering/sign conditions for an SO(N) label.
/// Wrong length or N < 1 is a structural error (throws); an order or
/// sign violation returns false.
bool validate_partition(const std::vector<int>& entries, int group_size);

/// Restriction SO(N) -> SO(N-1): all labels interlacing p, sorted
/// ascending lexicographically, duplicate-free.  For N = 2 the result is
/// the single empty partition of SO(1).
std::vector<Partition> branch(const Partition& p);

/// 1 if tau interlaces pi (branching is multiplicity-free), else 0.
/// Throws if tau.group_size() + 1 != pi.group_size().
int multiplicity(const Partition& tau, const Partition& pi);

/// The SO(n+1) label (ell, sigma_1, ..., sigma_{m-1}, 0, ...) attached to
/// sigma in SO(n-1) at sequence index ell.  Throws std::domain_error when
/// ell < sigma_1 ("sequence index below range").
Partition contracting_label(const Partition& sigma, int ell);

/// Smallest ell such that tau is contained in the representation with
/// label contracting_label(sigma, ell) for every sigma contained in tau.
int min_contracting_index(const Partition& tau);

/// True iff every SO(n-1) label sigma with |sigma_1| <= max_sigma occurs
/// in the restriction of tau at most once.  n must be 2 or 3.
bool commutativity_check(int n, const Partition& tau, int max_sigma);

}  // namespace sphc
