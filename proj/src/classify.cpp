#include "metazeta/classify.hpp"

#include <algorithm>
#include <iomanip>
#include <map>
#include <numeric>
#include <sstream>

#include "metazeta/errors.hpp"
#include "metazeta/lattice.hpp"
#include "metazeta/oracle.hpp"

namespace metazeta {

namespace {

std::string join(const std::vector<std::uint64_t>& v, const char* sep = ",") {
  std::ostringstream os;
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? sep : "") << v[i];
  return os.str();
}

std::string join_big(const std::vector<BigInt>& v) {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
  os << "]";
  return os.str();
}

bool within_oracle(const GroupBase& base, const Limits& limits) {
  std::uint64_t order = 1;
  for (unsigned i = 0; i < base.m + base.n; ++i) {
    if (order > limits.max_order / base.p) return false;
    order *= base.p;
  }
  return order <= limits.max_order;
}

// First order index where two count vectors differ, as a readable message.
std::string count_mismatch(const GroupParams& g, const std::vector<BigInt>& formula,
                           const std::vector<BigInt>& oracle) {
  if (formula.size() != oracle.size()) {
    return "G" + g.to_string() + ": length " + std::to_string(formula.size()) + " vs " +
           std::to_string(oracle.size());
  }
  for (std::size_t t = 0; t < formula.size(); ++t) {
    if (formula[t] != oracle[t]) {
      return "G" + g.to_string() + " t=" + std::to_string(t) + ": formula " + formula[t].str() +
             ", oracle " + oracle[t].str();
    }
  }
  return {};
}

std::string census_mismatch(const GroupParams& g, const CocycleCensus& census,
                            const KernelLogFn& kernel) {
  for (unsigned i = 0; i <= g.m(); ++i) {
    for (unsigned j = 0; j <= g.n(); ++j) {
      const auto it = census.find({i, j});
      const std::uint64_t seen = it == census.end() ? 0 : it->second;
      const std::uint64_t expect = padic::checked_pow(g.p(), kernel(g, i, j));
      if (seen != expect) {
        return "G" + g.to_string() + " (i,j)=(" + std::to_string(i) + "," + std::to_string(j) +
               "): census " + std::to_string(seen) + ", p^kernel_log " + std::to_string(expect);
      }
    }
  }
  return {};
}

KernelLogFn default_kernel() {
  return [](const GroupParams& g, unsigned i, unsigned j) { return kernel_log(g, i, j); };
}

}  // namespace

// ------------------------------------------------------------------ classify

KPartition zeta_classes_by_theorem(const GroupBase& base, const Limits& limits) {
  return partition_by(base, PartitionKind::zeta, valid_k_set(base, limits),
                      [&](std::uint64_t a, std::uint64_t b) {
                        return zeta_equal_by_theorem(GroupParams::make(base, a),
                                                     GroupParams::make(base, b));
                      });
}

KPartition zeta_classes_by_coefficients(const GroupBase& base, const Limits& limits) {
  const auto ks = valid_k_set(base, limits);
  std::map<std::uint64_t, std::vector<BigInt>> counts;
  for (auto k : ks) counts[k] = coefficients(GroupParams::make(base, k)).counts;
  return partition_by(base, PartitionKind::zeta, ks, [&](std::uint64_t a, std::uint64_t b) {
    return counts[a] == counts[b];
  });
}

CheckResult check_theorem_vs_coefficients(const GroupBase& base, const Limits& limits) {
  CheckResult r{"theorem-vs-coefficients"};
  const auto ks = valid_k_set(base, limits);
  std::vector<std::vector<BigInt>> counts;
  counts.reserve(ks.size());
  for (auto k : ks) counts.push_back(coefficients(GroupParams::make(base, k)).counts);
  for (std::size_t a = 0; a < ks.size(); ++a) {
    for (std::size_t b = 0; b < ks.size(); ++b) {
      ++r.cases;
      const bool by_theorem =
          zeta_equal_by_theorem(GroupParams::make(base, ks[a]), GroupParams::make(base, ks[b]));
      if (by_theorem != (counts[a] == counts[b])) {
        r.fail("G(" + std::to_string(base.p) + "," + std::to_string(base.m) + "," +
               std::to_string(base.n) + ") k1=" + std::to_string(ks[a]) +
               " k2=" + std::to_string(ks[b]) + ": theorem says " + (by_theorem ? "equal" : "different"));
      }
    }
  }
  return r;
}

ClassificationReport classify(const GroupBase& base, const ClassifyOptions& options) {
  ClassificationReport report;
  report.base = base;
  report.valid_k = valid_k_set(base, options.limits);
  report.iso = iso_classes(base, options.limits);
  report.zeta = zeta_classes_by_theorem(base, options.limits);

  const bool oracle_ok = within_oracle(base, options.limits);
  if (options.lattice) {
    if (!oracle_ok) {
      report.partial = true;
      report.partial_reason = "lattice stage skipped: p^(m+n) exceeds the oracle bound " +
                              std::to_string(options.limits.max_order);
    } else {
      try {
        report.lattice = lattice_classes(base, options.limits);
      } catch (const ResourceLimit& e) {
        report.partial = true;
        report.partial_reason = std::string("lattice stage: ") + e.what();
      }
    }
  }

  report.cross_checks.push_back({"iso-within-zeta", report.zeta.is_coarsening_of(report.iso),
                                 "every isomorphism class lies in one zeta class"});
  if (report.lattice) {
    report.cross_checks.push_back({"lattice-within-zeta",
                                   report.zeta.is_coarsening_of(*report.lattice),
                                   "every lattice class lies in one zeta class"});
  }

  if (options.verify) {
    const KPartition by_counts = zeta_classes_by_coefficients(base, options.limits);
    const bool same = by_counts.blocks == report.zeta.blocks;
    report.cross_checks.push_back(
        {"theorem-vs-coefficients", same,
         same ? "valuation criterion matches coefficient equality"
              : "criterion partition differs from coefficient partition"});

    CrossCheck formula{"formula-vs-oracle", true, ""};
    CrossCheck census{"cocycle-census", true, ""};
    if (!oracle_ok) {
      formula.detail = census.detail = "skipped: p^(m+n) exceeds the oracle bound";
    } else {
      try {
        for (const auto k : report.iso.representatives()) {
          const GroupParams g = GroupParams::make(base, k);
          const ConcreteGroup group = build_group(g, options.limits);
          const SubgroupSet subs = enumerate_subgroups(group, options.limits);
          const std::string diff = count_mismatch(g, coefficients(g).counts, subgroup_counts(group, subs));
          if (!diff.empty() && formula.passed) {
            formula.passed = false;
            formula.detail = diff;
          }
          const std::string cdiff =
              census_mismatch(g, cocycle_subgroup_census(group, subs), default_kernel());
          if (!cdiff.empty() && census.passed) {
            census.passed = false;
            census.detail = cdiff;
          }
        }
        if (formula.passed) formula.detail = "all isomorphism-class representatives agree";
        if (census.passed) census.detail = "census(i,j) = p^kernel_log(i,j) for all representatives";
      } catch (const ResourceLimit& e) {
        report.partial = true;
        report.partial_reason = std::string("oracle stage: ") + e.what();
        formula.detail = census.detail = "incomplete: resource limit";
      }
    }
    report.cross_checks.push_back(formula);
    report.cross_checks.push_back(census);
  }
  return report;
}

std::vector<std::vector<std::uint64_t>> ClassificationReport::representative_sets(
    const KPartition& partition) const {
  const auto reps = iso.representatives();
  std::vector<std::vector<std::uint64_t>> out;
  for (const auto& block : partition.blocks) {
    std::vector<std::uint64_t> r;
    for (auto k : block) {
      if (std::binary_search(reps.begin(), reps.end(), k)) r.push_back(k);
    }
    out.push_back(std::move(r));
  }
  return out;
}

bool ClassificationReport::all_checks_passed() const {
  return std::all_of(cross_checks.begin(), cross_checks.end(),
                     [](const CrossCheck& c) { return c.passed; });
}

nlohmann::json ClassificationReport::to_json() const {
  nlohmann::json checks = nlohmann::json::array();
  for (const auto& c : cross_checks) {
    checks.push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
  }
  nlohmann::json j{{"p", base.p},
                   {"m", base.m},
                   {"n", base.n},
                   {"valid_k", valid_k},
                   {"iso", iso.to_json()},
                   {"zeta", zeta.to_json()},
                   {"zeta_representatives", representative_sets(zeta)},
                   {"lattice", nullptr},
                   {"cross_checks", checks},
                   {"partial", partial}};
  if (lattice) {
    j["lattice"] = lattice->to_json();
    j["lattice_representatives"] = representative_sets(*lattice);
  }
  if (partial) j["partial_reason"] = partial_reason;
  return j;
}

std::string ClassificationReport::to_text() const {
  std::ostringstream os;
  auto braces = [](const std::vector<std::uint64_t>& v) { return "{" + join(v) + "}"; };
  auto section = [&](const std::string& title, const KPartition& part) {
    const auto reps = representative_sets(part);
    std::size_t width = 0;
    for (const auto& b : part.blocks) width = std::max(width, braces(b).size());
    os << title << " (" << part.blocks.size() << "):\n";
    for (std::size_t i = 0; i < part.blocks.size(); ++i) {
      os << "  " << std::left << std::setw(static_cast<int>(width)) << braces(part.blocks[i])
         << "  reps " << braces(reps[i]) << "\n";
    }
  };
  os << "G" << base.to_string() << ": " << valid_k.size() << " valid k\n";
  os << "valid k: " << join(valid_k, " ") << "\n";
  section("isomorphism classes", iso);
  section("zeta classes", zeta);
  if (lattice) section("lattice classes", *lattice);
  os << "cross-checks:\n";
  for (const auto& c : cross_checks) {
    os << "  " << (c.passed ? "PASS" : "FAIL") << "  " << std::left << std::setw(24) << c.name
       << c.detail << "\n";
  }
  if (partial) os << "partial report: " << partial_reason << "\n";
  return os.str();
}

std::string ClassificationReport::to_csv() const {
  std::ostringstream os;
  os << "k,iso_rep,zeta_rep,lattice_rep\n";
  for (const auto k : valid_k) {
    os << k << "," << iso.blocks[iso.block_of(k)].front() << ","
       << zeta.blocks[zeta.block_of(k)].front() << ",";
    if (lattice) os << lattice->blocks[lattice->block_of(k)].front();
    os << "\n";
  }
  return os.str();
}

// --------------------------------------------------------------------- sweep

namespace {

struct GroupData {
  GroupParams params;
  std::vector<BigInt> formula;
  std::vector<BigInt> oracle;
  CocycleCensus census;
  std::optional<SubgroupLattice> lattice;
  std::string error;
};

std::string name_of(const GroupParams& g) { return "G" + g.to_string(); }

}  // namespace

bool SweepSummary::passed() const { return first_failure() == nullptr; }

const CheckResult* SweepSummary::first_failure() const {
  for (const auto& row : rows) {
    for (const auto& c : row.checks) {
      if (!c.passed) return &c;
    }
  }
  for (const auto& c : global_checks) {
    if (!c.passed) return &c;
  }
  return nullptr;
}

nlohmann::json SweepSummary::to_json() const {
  auto check_json = [](const CheckResult& c) {
    return nlohmann::json{{"name", c.name},
                          {"passed", c.passed},
                          {"cases", c.cases},
                          {"counterexample", c.counterexample}};
  };
  nlohmann::json jr = nlohmann::json::array();
  for (const auto& row : rows) {
    nlohmann::json checks = nlohmann::json::array();
    for (const auto& c : row.checks) checks.push_back(check_json(c));
    jr.push_back({{"m", row.base.m}, {"n", row.base.n}, {"groups", row.groups}, {"checks", checks}});
  }
  nlohmann::json jg = nlohmann::json::array();
  for (const auto& c : global_checks) jg.push_back(check_json(c));
  return nlohmann::json{{"p", p}, {"max_order", max_order}, {"passed", passed()},
                        {"rows", jr}, {"global_checks", jg}};
}

std::string SweepSummary::to_text() const {
  std::ostringstream os;
  os << "sweep p=" << p << " max-order=" << max_order << "\n";
  auto line = [&](const std::string& where, const CheckResult& c) {
    os << "  " << std::left << std::setw(10) << where << std::setw(26) << c.name
       << (c.passed ? "PASS" : "FAIL") << std::right << std::setw(9) << c.cases;
    if (!c.passed) os << "  " << c.counterexample;
    os << "\n";
  };
  for (const auto& row : rows) {
    const std::string where = "(" + std::to_string(row.base.m) + "," + std::to_string(row.base.n) + ")";
    for (const auto& c : row.checks) line(where, c);
  }
  for (const auto& c : global_checks) line("global", c);
  os << (passed() ? "all checks passed" : "verification FAILED") << "\n";
  return os.str();
}

SweepSummary sweep_verify(const SweepOptions& options) {
  padic::require_prime(options.p);
  SweepSummary summary;
  summary.p = options.p;
  summary.max_order = options.max_order;
  Limits limits = options.limits;
  limits.max_order = std::max(limits.max_order, options.max_order);
  const KernelLogFn kernel = options.kernel_override ? *options.kernel_override : default_kernel();

  std::vector<GroupData> all;  // every swept group, ordered by (m, n, k)
  std::map<std::uint64_t, std::vector<std::size_t>> reps_by_order;

  for (unsigned total = 2;; ++total) {
    const GroupBase probe{options.p, 1, total - 1};
    if (!within_oracle(probe, {options.max_order, limits.max_subgroups, limits.max_residues})) break;
    for (unsigned m = 1; m < total; ++m) {
      const GroupBase base = GroupBase::make(options.p, m, total - m);
      const auto ks = valid_k_set(base, limits);
      const KPartition iso = iso_classes(base, limits);
      const auto reps = iso.representatives();

      std::vector<GroupData> data(ks.size());
      const auto count = static_cast<std::ptrdiff_t>(ks.size());
#pragma omp parallel for schedule(dynamic)
      for (std::ptrdiff_t i = 0; i < count; ++i) {
        auto& d = data[static_cast<std::size_t>(i)];
        try {
          d.params = GroupParams::make(base, ks[static_cast<std::size_t>(i)]);
          d.formula = coefficients(d.params, kernel).counts;
          const ConcreteGroup group = build_group(d.params, limits);
          const SubgroupSet subs = enumerate_subgroups_serial(group, limits);
          d.oracle = subgroup_counts(group, subs);
          d.census = cocycle_subgroup_census(group, subs);
          if (options.lattice_checks &&
              std::binary_search(reps.begin(), reps.end(), d.params.k())) {
            d.lattice = build_lattice(subs);
          }
        } catch (const std::exception& e) {
          d.error = e.what();
        }
      }
      for (const auto& d : data) {
        if (!d.error.empty()) throw ResourceLimit(d.error);
      }

      SweepRow row{base, ks.size(), {}};
      CheckResult formula{"formula-vs-oracle"};
      CheckResult census{"cocycle-census"};
      CheckResult iso_zeta{"iso-implies-zeta"};
      for (const auto& d : data) {
        ++formula.cases;
        ++census.cases;
        if (auto diff = count_mismatch(d.params, d.formula, d.oracle); !diff.empty()) formula.fail(diff);
        if (auto diff = census_mismatch(d.params, d.census, kernel); !diff.empty()) census.fail(diff);
      }
      for (const auto& block : iso.blocks) {
        for (const auto k : block) {
          ++iso_zeta.cases;
          const auto& a = data[static_cast<std::size_t>(
              std::lower_bound(ks.begin(), ks.end(), block.front()) - ks.begin())];
          const auto& b = data[static_cast<std::size_t>(std::lower_bound(ks.begin(), ks.end(), k) - ks.begin())];
          if (a.oracle != b.oracle) {
            iso_zeta.fail(name_of(a.params) + " ~ " + name_of(b.params) + " but counts differ");
          }
        }
      }
      row.checks = {formula, census, iso_zeta};

      if (options.p == 2) {
        row.checks.push_back(check_theorem_vs_coefficients(base, limits));
      } else {
        CheckResult inv{"odd-p-invariance"};
        const auto expected = quasiregular_counts(options.p, base.m + base.n, std::max(base.m, base.n));
        for (const auto& d : data) {
          ++inv.cases;
          if (d.formula != data.front().formula) {
            inv.fail(name_of(d.params) + " differs from " + name_of(data.front().params));
          } else if (d.formula != expected) {
            inv.fail(name_of(d.params) + " " + join_big(d.formula) + " vs quasi-regular " +
                     join_big(expected));
          }
        }
        row.checks.push_back(inv);
      }
      summary.rows.push_back(std::move(row));

      for (auto& d : data) {
        all.push_back(std::move(d));
        if (all.back().lattice) reps_by_order[base.m + base.n].push_back(all.size() - 1);
      }
    }
  }

  if (options.lattice_checks) {
    CheckResult lemma{"lattice-lemma"};
    for (const auto& [t, idx] : reps_by_order) {
      for (std::size_t a = 0; a < idx.size(); ++a) {
        for (std::size_t b = a + 1; b < idx.size(); ++b) {
          const GroupData& x = all[idx[a]];
          const GroupData& y = all[idx[b]];
          const auto witness = find_lattice_isomorphism(*x.lattice, *y.lattice);
          if (!witness) continue;
          ++lemma.cases;
          if (x.oracle != y.oracle) {
            lemma.fail(name_of(x.params) + " and " + name_of(y.params) +
                       " have isomorphic lattices but different counts");
          }
          for (NodeId v = 0; v < witness->size(); ++v) {
            if (x.lattice->orders[v] != y.lattice->orders[(*witness)[v]]) {
              lemma.fail("isomorphism " + name_of(x.params) + " -> " + name_of(y.params) +
                         " does not preserve subgroup orders");
              break;
            }
          }
        }
      }
    }
    summary.global_checks.push_back(lemma);
  }

  if (options.multiplicativity_samples > 0 && !all.empty()) {
    std::uint64_t q = options.cofactor;
    if (std::gcd(q, options.p) != 1) q = options.p == 2 ? 3 : 2;
    CheckResult mult{"multiplicativity"};
    const ConcreteGroup cyc = build_cyclic(q, q, limits);
    const DirichletSeries cofactor_series = subgroup_series(enumerate_subgroups(cyc, limits));
    const std::size_t samples = std::min(options.multiplicativity_samples, all.size());
    for (std::size_t s = 0; s < samples; ++s) {
      const GroupData& d = all[s * all.size() / samples];
      Limits product_limits = limits;
      product_limits.max_order = std::max(limits.max_order, limits.max_order * q);
      const ConcreteGroup product = direct_product(build_group(d.params, product_limits), q, product_limits);
      const DirichletSeries lhs = subgroup_series(enumerate_subgroups(product, product_limits));
      const DirichletSeries rhs = dirichlet_multiply(to_series(options.p, d.oracle), cofactor_series);
      ++mult.cases;
      if (lhs != rhs) mult.fail(name_of(d.params) + " x Z" + std::to_string(q) + " is not multiplicative");
    }
    summary.global_checks.push_back(mult);
  }
  return summary;
}

}  // namespace metazeta
