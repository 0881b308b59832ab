#pragma once

// End-to-end classification of G(p,m,n,k) over k, and exhaustive sweeps that
// cross-check the closed formulas against the subgroup-enumeration oracle.

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "metazeta/config.hpp"
#include "metazeta/group_model.hpp"
#include "metazeta/zeta.hpp"

namespace metazeta {

struct CrossCheck {
  std::string name;
  bool passed = true;
  std::string detail;
};

struct ClassifyOptions {
  bool lattice = false;
  bool verify = false;
  Limits limits;
};

struct ClassificationReport {
  GroupBase base;
  std::vector<std::uint64_t> valid_k;
  KPartition iso;
  KPartition zeta;
  std::optional<KPartition> lattice;
  std::vector<CrossCheck> cross_checks;
  bool partial = false;  // a requested stage hit a resource limit
  std::string partial_reason;

  // Blocks of `partition` restricted to the isomorphism-class representatives.
  std::vector<std::vector<std::uint64_t>> representative_sets(const KPartition& partition) const;
  bool all_checks_passed() const;

  nlohmann::json to_json() const;
  std::string to_text() const;
  // One row per k: k, iso_rep, zeta_rep, lattice_rep (empty when absent).
  std::string to_csv() const;
};

ClassificationReport classify(const GroupBase& base, const ClassifyOptions& options = {});

// Zeta partition from the valuation criterion alone.
KPartition zeta_classes_by_theorem(const GroupBase& base, const Limits& limits = {});
// Zeta partition from explicit coefficient vectors.
KPartition zeta_classes_by_coefficients(const GroupBase& base, const Limits& limits = {});

struct CheckResult {
  CheckResult() = default;
  explicit CheckResult(std::string check_name) : name(std::move(check_name)) {}

  std::string name;
  bool passed = true;
  std::size_t cases = 0;
  std::string counterexample;  // first failure, empty when passed

  void fail(std::string what) {
    if (passed) counterexample = std::move(what);
    passed = false;
  }
};

// Valuation-criterion verdict vs coefficient equality over all valid pairs of one base.
CheckResult check_theorem_vs_coefficients(const GroupBase& base, const Limits& limits = {});

struct SweepOptions {
  std::uint64_t p = 2;
  std::uint64_t max_order = 256;  // sweep every (m, n) with p^(m+n) <= max_order
  Limits limits;
  bool lattice_checks = true;
  std::size_t multiplicativity_samples = 5;
  std::uint64_t cofactor = 3;  // coprime cyclic factor for the multiplicativity check
  // Replaces the closed-form kernel sizes on the formula side (fault injection).
  std::optional<KernelLogFn> kernel_override;
};

struct SweepRow {
  GroupBase base;
  std::size_t groups = 0;
  std::vector<CheckResult> checks;
};

struct SweepSummary {
  std::uint64_t p = 2;
  std::uint64_t max_order = 0;
  std::vector<SweepRow> rows;
  std::vector<CheckResult> global_checks;

  bool passed() const;
  // First failing check across rows and global checks, or nullptr.
  const CheckResult* first_failure() const;
  nlohmann::json to_json() const;
  std::string to_text() const;
};

SweepSummary sweep_verify(const SweepOptions& options);

}  // namespace metazeta
