#include "metazeta/group_model.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <set>
#include <unordered_map>

#include "metazeta/errors.hpp"
#include "metazeta/padic.hpp"

namespace metazeta {

namespace {

std::uint64_t env_or(const char* name, std::uint64_t fallback) {
  const char* raw = std::getenv(name);
  if (raw == nullptr || *raw == '\0') return fallback;
  char* end = nullptr;
  const unsigned long long v = std::strtoull(raw, &end, 10);
  if (end == raw || *end != '\0' || v == 0) {
    throw InvalidArgument(std::string(name) + " must be a positive integer");
  }
  return v;
}

}  // namespace

Limits Limits::from_environment() {
  Limits l;
  l.max_order = env_or("METAZETA_MAX_ORDER", l.max_order);
  l.max_subgroups = env_or("METAZETA_MAX_SUBGROUPS", l.max_subgroups);
  return l;
}

GroupBase GroupBase::make(std::uint64_t p, unsigned m, unsigned n) {
  padic::require_prime(p);
  if (m < 1 || n < 1) throw InvalidArgument("m and n must be at least 1");
  GroupBase b{p, m, n};
  try {
    (void)padic::checked_pow(p, m);
    (void)padic::checked_pow(p, n);
  } catch (const ResourceLimit&) {
    throw InvalidArgument("p^m and p^n must fit in 64 bits");
  }
  return b;
}

std::uint64_t GroupBase::normal_order() const { return padic::checked_pow(p, m); }
std::uint64_t GroupBase::quotient_order() const { return padic::checked_pow(p, n); }

std::string GroupBase::to_string() const {
  return "(" + std::to_string(p) + "," + std::to_string(m) + "," + std::to_string(n) + ")";
}

GroupParams GroupParams::make(std::uint64_t p, unsigned m, unsigned n, const BigInt& k) {
  return make(GroupBase::make(p, m, n), k);
}

GroupParams GroupParams::make(const GroupBase& base, const BigInt& k) {
  GroupParams g;
  g.base_ = GroupBase::make(base.p, base.m, base.n);
  g.k_ = padic::canonical_residue(k, g.base_.normal_order());
  return g;
}

std::string GroupParams::to_string() const {
  return "(" + std::to_string(p()) + "," + std::to_string(m()) + "," + std::to_string(n()) + "," +
         std::to_string(k_) + ")";
}

bool is_valid(const GroupParams& params) {
  const GroupBase& b = params.base();
  const std::uint64_t modulus = b.normal_order();
  if (modulus == 1) return true;
  return padic::mod_pow_u64(params.k(), b.quotient_order(), modulus) == 1 % modulus;
}

void require_valid(const GroupParams& params) {
  if (!is_valid(params)) {
    throw InvalidArgument("G" + params.to_string() + " is not valid: k^(p^n) != 1 mod p^m");
  }
}

std::vector<std::uint64_t> valid_k_set(const GroupBase& base, const Limits& limits) {
  const std::uint64_t modulus = base.normal_order();
  if (modulus > limits.max_residues) {
    throw ResourceLimit("p^m = " + std::to_string(modulus) + " exceeds the residue bound " +
                        std::to_string(limits.max_residues));
  }
  const std::uint64_t e = base.quotient_order();
  std::vector<std::uint64_t> out;
  for (std::uint64_t k = 0; k < modulus; ++k) {
    if (k % base.p == 0) continue;  // non-units never satisfy the congruence
    if (padic::mod_pow_u64(k, e, modulus) == 1) out.push_back(k);
  }
  return out;
}

std::vector<std::uint64_t> isomorphism_orbit(const GroupParams& params) {
  require_valid(params);
  const std::uint64_t modulus = params.base().normal_order();
  const std::uint64_t units = params.base().quotient_order();
  std::set<std::uint64_t> orbit;
  using u128 = unsigned __int128;
  std::uint64_t power = params.k() % modulus;
  for (std::uint64_t v = 1; v < std::max<std::uint64_t>(units, 2); ++v) {
    if (v % params.p() != 0) orbit.insert(power);
    power = static_cast<std::uint64_t>(static_cast<u128>(power) * params.k() % modulus);
  }
  return {orbit.begin(), orbit.end()};
}

namespace {

void require_same_base(const GroupParams& a, const GroupParams& b) {
  if (!(a.base() == b.base())) {
    throw InvalidArgument("parameters " + a.to_string() + " and " + b.to_string() +
                          " have different (p,m,n)");
  }
  require_valid(a);
  require_valid(b);
}

std::vector<std::uint64_t> cyclic_subgroup(std::uint64_t k, std::uint64_t modulus) {
  std::set<std::uint64_t> s;
  using u128 = unsigned __int128;
  std::uint64_t x = 1 % modulus;
  do {
    s.insert(x);
    x = static_cast<std::uint64_t>(static_cast<u128>(x) * k % modulus);
  } while (s.count(x) == 0);
  return {s.begin(), s.end()};
}

}  // namespace

bool is_isomorphic(const GroupParams& a, const GroupParams& b) {
  require_same_base(a, b);
  const auto orbit = isomorphism_orbit(a);
  return std::binary_search(orbit.begin(), orbit.end(), b.k());
}

bool is_isomorphic_by_cyclic_subgroups(const GroupParams& a, const GroupParams& b) {
  require_same_base(a, b);
  const std::uint64_t modulus = a.base().normal_order();
  return cyclic_subgroup(a.k(), modulus) == cyclic_subgroup(b.k(), modulus);
}

std::string to_string(PartitionKind kind) {
  switch (kind) {
    case PartitionKind::isomorphism: return "isomorphism";
    case PartitionKind::zeta: return "zeta";
    case PartitionKind::lattice: return "lattice";
  }
  return "unknown";
}

std::size_t KPartition::block_of(std::uint64_t k) const {
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    if (std::binary_search(blocks[i].begin(), blocks[i].end(), k)) return i;
  }
  throw InvalidArgument("k = " + std::to_string(k) + " is not in the partition");
}

std::vector<std::uint64_t> KPartition::representatives() const {
  std::vector<std::uint64_t> reps;
  reps.reserve(blocks.size());
  for (const auto& b : blocks) reps.push_back(b.front());
  return reps;
}

bool KPartition::is_coarsening_of(const KPartition& finer) const {
  std::unordered_map<std::uint64_t, std::size_t> owner;
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    for (auto k : blocks[i]) owner[k] = i;
  }
  for (const auto& b : finer.blocks) {
    auto first = owner.find(b.front());
    if (first == owner.end()) return false;
    for (auto k : b) {
      auto it = owner.find(k);
      if (it == owner.end() || it->second != first->second) return false;
    }
  }
  return true;
}

nlohmann::json KPartition::to_json() const {
  return nlohmann::json{{"p", base.p},
                        {"m", base.m},
                        {"n", base.n},
                        {"kind", metazeta::to_string(kind)},
                        {"blocks", blocks}};
}

void normalize(KPartition& partition) {
  for (auto& b : partition.blocks) std::sort(b.begin(), b.end());
  std::sort(partition.blocks.begin(), partition.blocks.end(),
            [](const auto& x, const auto& y) { return x.front() < y.front(); });
}

KPartition partition_by(const GroupBase& base, PartitionKind kind,
                        const std::vector<std::uint64_t>& ks,
                        const std::function<bool(std::uint64_t, std::uint64_t)>& equivalent) {
  KPartition out{base, kind, {}};
  std::vector<std::uint64_t> sorted = ks;
  std::sort(sorted.begin(), sorted.end());
  for (auto k : sorted) {
    bool placed = false;
    for (auto& block : out.blocks) {
      if (equivalent(block.front(), k)) {
        block.push_back(k);
        placed = true;
        break;
      }
    }
    if (!placed) out.blocks.push_back({k});
  }
  normalize(out);
  return out;
}

KPartition iso_classes(const GroupBase& base, const Limits& limits) {
  const auto ks = valid_k_set(base, limits);
  KPartition out{base, PartitionKind::isomorphism, {}};
  std::set<std::uint64_t> assigned;
  for (auto k : ks) {
    if (assigned.count(k) != 0) continue;
    auto orbit = isomorphism_orbit(GroupParams::make(base, k));
    assigned.insert(orbit.begin(), orbit.end());
    out.blocks.push_back(std::move(orbit));
  }
  normalize(out);
  return out;
}

}  // namespace metazeta
