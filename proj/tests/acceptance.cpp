// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <string>

#include "metazeta/classify.hpp"
#include "metazeta/lattice.hpp"
#include "metazeta/oracle.hpp"
#include "metazeta/padic.hpp"

using namespace metazeta;
using boost::multiprecision::pow;

namespace {

// Wall-clock budgets, seconds.
constexpr double kExampleBudget = 120.0;
constexpr double kOracleSweepBudget = 600.0;
constexpr int kLteInstances = 1000;
constexpr std::uint64_t kLteSeed = 0x5eed1e7e;

using Blocks = std::vector<std::vector<std::uint64_t>>;

struct Outcome {
  bool passed = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok && passed) {
      passed = false;
      detail = what;
    }
  }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

int failures = 0;

void report(int id, const std::string& title, const std::function<Outcome()>& body) {
  auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o.passed = false;
    o.detail = std::string("exception: ") + e.what();
  }
  if (!o.passed) ++failures;
  std::printf("AC%d %s  %s  [%.2fs]%s%s\n", id, o.passed ? "PASS" : "FAIL", title.c_str(),
              seconds_since(t0), o.detail.empty() ? "" : "  ", o.detail.c_str());
  std::fflush(stdout);
}

// Collects a named check over all sweep rows and global checks.
Outcome sweep_check(const std::vector<const SweepSummary*>& sweeps, const std::string& name) {
  Outcome o;
  std::size_t cases = 0, found = 0;
  for (const auto* s : sweeps) {
    auto take = [&](const CheckResult& c) {
      if (c.name != name) return;
      ++found;
      cases += c.cases;
      o.require(c.passed, "p=" + std::to_string(s->p) + ": " + c.counterexample);
    };
    for (const auto& row : s->rows)
      for (const auto& c : row.checks) take(c);
    for (const auto& c : s->global_checks) take(c);
  }
  o.require(found > 0, "check " + name + " never ran");
  if (o.passed) o.detail = std::to_string(cases) + " cases";
  return o;
}

SweepOptions sweep_options(std::uint64_t p, std::uint64_t max_order) {
  SweepOptions o;
  o.p = p;
  o.max_order = max_order;
  return o;
}

}  // namespace

int main() {
  report(1, "example (2,5,3) reproduction", [] {
    Outcome o;
    auto t0 = std::chrono::steady_clock::now();
    ClassifyOptions opts;
    opts.lattice = true;
    opts.verify = true;
    auto r = classify(GroupBase::make(2, 5, 3), opts);
    double elapsed = seconds_since(t0);
    std::vector<std::uint64_t> odd;
    for (std::uint64_t k = 1; k < 32; k += 2) odd.push_back(k);
    o.require(r.valid_k == odd, "valid_k is not the 16 odd residues");
    o.require(r.iso.blocks == Blocks{{1}, {3, 11, 19, 27}, {5, 13, 21, 29}, {7, 23}, {9, 25},
                                     {15}, {17}, {31}},
              "isomorphism partition differs");
    o.require(r.representative_sets(r.zeta) == Blocks{{1, 5, 9, 17}, {3}, {7, 15, 31}},
              "zeta representative sets differ");
    o.require(r.lattice.has_value(), "lattice partition missing");
    if (r.lattice)
      o.require(r.representative_sets(*r.lattice) == Blocks{{1, 5, 9, 17}, {3}, {7}, {15}, {31}},
                "lattice representative sets differ");
    o.require(r.all_checks_passed(), "a cross-check failed");
    o.require(elapsed <= kExampleBudget, "runtime over budget");
    return o;
  });

  auto t0 = std::chrono::steady_clock::now();
  auto two = sweep_verify(sweep_options(2, 256));
  auto three = sweep_verify(sweep_options(3, 243));
  auto five = sweep_verify(sweep_options(5, 125));
  double sweep_seconds = seconds_since(t0);
  std::vector<const SweepSummary*> all = {&two, &three, &five};

  report(2, "formula = oracle (p=2 m+n<=8, p=3 m+n<=5, p=5 m+n<=3)", [&] {
    Outcome o = sweep_check(all, "formula-vs-oracle");
    o.require(sweep_seconds <= kOracleSweepBudget, "sweep runtime over budget");
    if (o.passed) o.detail += ", sweeps took " + std::to_string(sweep_seconds) + "s";
    return o;
  });

  report(3, "valuation criterion <=> coefficient equality (p=2, m+n<=12)", [] {
    Outcome o;
    std::size_t cases = 0;
    for (unsigned m = 1; m <= 11; ++m)
      for (unsigned n = 1; m + n <= 12; ++n) {
        auto c = check_theorem_vs_coefficients(GroupBase::make(2, m, n));
        cases += c.cases;
        o.require(c.passed, c.counterexample);
      }
    if (o.passed) o.detail = std::to_string(cases) + " pairs";
    return o;
  });

  report(4, "cocycle census = p^kernel_log", [&] { return sweep_check(all, "cocycle-census"); });

  report(5, "odd-p k-independence and quasi-regular counts", [&] {
    return sweep_check({&three, &five}, "odd-p-invariance");
  });

  report(6, "LTE on random instances vs exact valuation", [] {
    Outcome o;
    std::mt19937_64 rng(kLteSeed);
    std::uniform_int_distribution<std::int64_t> coord(-1000000, 1000000);
    std::uniform_int_distribution<unsigned> exps(1, 80);
    const std::uint64_t primes[] = {2, 3, 5, 7, 11, 13, 101};
    int done = 0;
    while (done < kLteInstances) {
      std::uint64_t p = primes[rng() % std::size(primes)];
      BigInt x = coord(rng), y;
      if (p == 2) {
        x = 2 * x + 1;
        y = 2 * BigInt(coord(rng)) + 1;
      } else {
        y = x - BigInt(p) * (coord(rng) % 1000 + 1);
      }
      if (x % p == 0 || y % p == 0 || x == y) continue;
      unsigned n = exps(rng);
      BigInt d = pow(x, n) - pow(y, n);
      unsigned naive = 0;
      if (d != 0) {
        BigInt q = abs(d);
        while (q % p == 0) {
          q /= p;
          ++naive;
        }
      }
      auto v = padic::lte_valuation(p, x, y, n);
      bool ok = d == 0 ? v.is_infinite() : (!v.is_infinite() && v.value() == naive);
      o.require(ok, "p=" + std::to_string(p) + " x=" + x.str() + " y=" + y.str() +
                        " n=" + std::to_string(n));
      ++done;
    }
    if (o.passed) o.detail = std::to_string(done) + " instances";
    return o;
  });

  report(7, "metacyclic 2-group shape formulas vs oracle", [] {
    Outcome o;
    struct Fixture {
      std::string name;
      ConcreteGroup g;
      std::string shape;
    };
    std::vector<Fixture> fixtures = {
        {"Z16", build_cyclic(2, 16), "cyclic(4)"},
        {"D16", build_group(GroupParams::make(2, 3, 1, 7)), "maximal-class(D,4)"},
        {"Q16", build_metacyclic(2, 3, 1, 2, 7), "maximal-class(Q,4)"},
        {"SD16", build_group(GroupParams::make(2, 3, 1, 3)), "maximal-class(SD,4)"},
        {"Z4xZ4", build_group(GroupParams::make(2, 2, 2, 1)), "R=G(w=2)"},
        {"Z8xZ2", build_group(GroupParams::make(2, 3, 1, 1)), "cyclic-quotient(w=1,c=2)"},
    };
    for (const auto& f : fixtures) {
      auto shape = detect_shape(omega_profile(f.g));
      o.require(shape.has_value(), f.name + ": no shape detected");
      if (!shape) continue;
      o.require(to_string(*shape) == f.shape, f.name + ": detected " + to_string(*shape));
      auto counts = subgroup_counts(f.g);
      o.require(berkovich_counts(*shape) == counts, f.name + ": closed formula differs from oracle");
      if (f.name == "Q16") o.require(counts[1] == 1, "Q16 a_2 != 1");
      if (f.name == "SD16") o.require(counts[1] == 5, "SD16 a_2 != 2^(4-2)+1");
    }
    return o;
  });

  report(8, "lattice isomorphism implies zeta equality; (7) vs (15) is the converse failure", [&] {
    Outcome o = sweep_check({&two}, "lattice-lemma");
    auto a = GroupParams::make(2, 5, 3, 7), b = GroupParams::make(2, 5, 3, 15);
    o.require(coefficients(a) == coefficients(b), "(2,5,3,7) and (2,5,3,15) are not zeta-equal");
    o.require(subgroup_counts(build_group(a)) == subgroup_counts(build_group(b)),
              "oracle counts of (2,5,3,7) and (2,5,3,15) differ");
    o.require(!is_lattice_isomorphic(lattice_of(a), lattice_of(b)),
              "(2,5,3,7) and (2,5,3,15) have isomorphic lattices");
    return o;
  });

  report(9, "multiplicativity with Z3 on five sampled groups", [&] {
    Outcome o = sweep_check({&two}, "multiplicativity");
    for (const auto& c : two.global_checks)
      if (c.name == "multiplicativity") o.require(c.cases == 5, "expected five samples");
    return o;
  });

  return failures == 0 ? 0 : 1;
}
