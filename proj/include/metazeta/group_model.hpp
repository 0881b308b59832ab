#pragma once

// Parameter model for the split metacyclic p-groups
//   G(p,m,n,k) = < a, b | a^(p^m) = b^(p^n) = 1, b a b^-1 = a^k >
// with H = <a> of order p^m and K = <b> of order p^n.

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "json.hpp"
#include "metazeta/bigint.hpp"
#include "metazeta/config.hpp"

namespace metazeta {

// The (p, m, n) triple shared by a family of presentations.
struct GroupBase {
  std::uint64_t p = 2;
  unsigned m = 1;
  unsigned n = 1;

  // Validates p prime, m, n >= 1 and that p^m, p^n fit in 64 bits.
  static GroupBase make(std::uint64_t p, unsigned m, unsigned n);

  std::uint64_t normal_order() const;    // p^m = |H|
  std::uint64_t quotient_order() const;  // p^n = |K|
  std::string to_string() const;

  friend bool operator==(const GroupBase&, const GroupBase&) = default;
};

class GroupParams {
 public:
  // k may be any integer; it is stored as its residue in [0, p^m).
  static GroupParams make(std::uint64_t p, unsigned m, unsigned n, const BigInt& k);
  static GroupParams make(const GroupBase& base, const BigInt& k);

  const GroupBase& base() const { return base_; }
  std::uint64_t p() const { return base_.p; }
  unsigned m() const { return base_.m; }
  unsigned n() const { return base_.n; }
  std::uint64_t k() const { return k_; }
  std::string to_string() const;

  friend bool operator==(const GroupParams&, const GroupParams&) = default;

 private:
  GroupBase base_;
  std::uint64_t k_ = 1;
};

// k^(p^n) == 1 (mod p^m).
bool is_valid(const GroupParams& params);

// Throws InvalidArgument naming the parameters when they are not valid.
void require_valid(const GroupParams& params);

// Ascending list of valid k in [0, p^m). ResourceLimit when p^m > limits.max_residues.
std::vector<std::uint64_t> valid_k_set(const GroupBase& base, const Limits& limits = {});

// k2 == k1^v (mod p^m) for some unit v modulo p^n, by orbit enumeration.
bool is_isomorphic(const GroupParams& a, const GroupParams& b);

// Same relation via <k1> == <k2> as cyclic subgroups of (Z/p^m)^x.
bool is_isomorphic_by_cyclic_subgroups(const GroupParams& a, const GroupParams& b);

// Sorted orbit {k^v mod p^m : v in [1, p^n), p does not divide v}.
std::vector<std::uint64_t> isomorphism_orbit(const GroupParams& params);

enum class PartitionKind { isomorphism, zeta, lattice };
std::string to_string(PartitionKind kind);

// A partition of the valid k set. Blocks are ascending and ordered by minimum.
struct KPartition {
  GroupBase base;
  PartitionKind kind = PartitionKind::isomorphism;
  std::vector<std::vector<std::uint64_t>> blocks;

  // Index of the block holding k; throws InvalidArgument if k is absent.
  std::size_t block_of(std::uint64_t k) const;
  std::vector<std::uint64_t> representatives() const;
  // True when every block of `finer` lies inside a single block of *this.
  bool is_coarsening_of(const KPartition& finer) const;

  nlohmann::json to_json() const;
};

// Sorts each block and the block list by minimum element.
void normalize(KPartition& partition);

// Groups ks under an equivalence relation by comparing against block minima.
KPartition partition_by(const GroupBase& base, PartitionKind kind,
                        const std::vector<std::uint64_t>& ks,
                        const std::function<bool(std::uint64_t, std::uint64_t)>& equivalent);

KPartition iso_classes(const GroupBase& base, const Limits& limits = {});

}  // namespace metazeta
