#pragma once

#include <cstdint>

namespace metazeta {

// Bounds for the brute-force paths. Defaults keep acceptance runs desk-scale.
struct Limits {
  std::uint64_t max_order = 4096;         // largest group the oracle will build
  std::uint64_t max_subgroups = 100000;   // cap on enumerated subgroups
  std::uint64_t max_residues = 1U << 24;  // cap on p^m for valid-k enumeration

  // Defaults overridden by METAZETA_MAX_ORDER / METAZETA_MAX_SUBGROUPS when set.
  static Limits from_environment();
};

}  // namespace metazeta
