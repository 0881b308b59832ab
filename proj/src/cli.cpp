#include "metazeta/cli.hpp"

#include <iomanip>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "metazeta/classify.hpp"
#include "metazeta/errors.hpp"
#include "metazeta/lattice.hpp"
#include "metazeta/oracle.hpp"
#include "metazeta/zeta.hpp"

namespace metazeta {

namespace {

struct VerificationFailed : std::runtime_error {
  using std::runtime_error::runtime_error;
};

BigInt parse_integer(const std::string& text) {
  try {
    return BigInt(text);
  } catch (const std::exception&) {
    throw InvalidArgument("not an integer: '" + text + "'");
  }
}

std::string big_vector(const std::vector<BigInt>& v) {
  std::ostringstream os;
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? " " : "") << v[i];
  return os.str();
}

struct Common {
  std::uint64_t p = 2;
  unsigned m = 1;
  unsigned n = 1;
  bool json = false;
};

void add_base(CLI::App* cmd, Common& c) {
  cmd->add_option("p", c.p, "prime")->required();
  cmd->add_option("m", c.m, "log_p |H|")->required();
  cmd->add_option("n", c.n, "log_p |K|")->required();
}

void print_counts_table(std::ostream& out, const GroupParams& g, const std::vector<BigInt>& counts,
                        const std::vector<BigInt>* oracle) {
  out << "  " << std::setw(3) << "t" << std::setw(12) << "order" << std::setw(14) << "a_{p^t}";
  if (oracle) out << std::setw(14) << "oracle";
  out << "\n";
  std::uint64_t order = 1;
  for (std::size_t t = 0; t < counts.size(); ++t) {
    out << "  " << std::setw(3) << t << std::setw(12) << order << std::setw(14) << counts[t];
    if (oracle) out << std::setw(14) << (*oracle)[t];
    out << "\n";
    order *= g.p();
  }
}

int cmd_validate(const Common& c, const std::string& k, std::ostream& out) {
  const GroupParams g = GroupParams::make(c.p, c.m, c.n, parse_integer(k));
  const bool valid = is_valid(g);
  if (c.json) {
    out << nlohmann::json{{"p", c.p}, {"m", c.m}, {"n", c.n}, {"k", g.k()}, {"valid", valid}}.dump()
        << "\n";
  } else {
    out << "G" << g.to_string() << ": " << (valid ? "valid" : "invalid") << "\n";
  }
  return kExitOk;
}

int cmd_zeta(const Common& c, const std::string& k, bool verify, const Limits& limits,
             std::ostream& out) {
  const GroupParams g = GroupParams::make(c.p, c.m, c.n, parse_integer(k));
  const ZetaCoefficients z = coefficients(g);
  std::optional<std::vector<BigInt>> oracle;
  if (verify) oracle = subgroup_counts(build_group(g, limits), limits);
  if (c.json) {
    nlohmann::json j = z.to_json();
    j["k"] = g.k();
    if (oracle) j["oracle_agrees"] = (*oracle == z.counts);
    out << j.dump() << "\n";
  } else {
    out << "G" << g.to_string() << "  |G| = " << c.p << "^" << (c.m + c.n) << "\n";
    print_counts_table(out, g, z.counts, oracle ? &*oracle : nullptr);
  }
  if (oracle && *oracle != z.counts) throw VerificationFailed("formula and oracle disagree");
  return kExitOk;
}

int cmd_classify(const Common& c, bool lattice, bool verify, bool csv, const Limits& limits,
                 std::ostream& out, std::ostream& err) {
  ClassifyOptions opts{lattice, verify, limits};
  const ClassificationReport report = classify(GroupBase::make(c.p, c.m, c.n), opts);
  if (c.json) {
    out << report.to_json().dump() << "\n";
  } else if (csv) {
    out << report.to_csv();
  } else {
    out << report.to_text();
  }
  if (!report.all_checks_passed()) throw VerificationFailed("cross-check failed");
  if (report.partial) {
    err << "partial report: " << report.partial_reason << "\n";
    return kExitResourceLimit;
  }
  return kExitOk;
}

int cmd_oracle(const Common& c, const std::string& k, bool export_lattice, bool export_group,
               const Limits& limits, std::ostream& out) {
  const GroupParams g = GroupParams::make(c.p, c.m, c.n, parse_integer(k));
  const ConcreteGroup group = build_group(g, limits);
  const SubgroupSet subs = enumerate_subgroups(group, limits);
  if (export_group) {
    out << nlohmann::json{{"group", group.to_json()}, {"subgroups", export_subgroups(subs)}}.dump()
        << "\n";
    return kExitOk;
  }
  if (export_lattice) {
    const SubgroupLattice lat = build_lattice(subs);
    if (c.json) {
      out << lat.to_json().dump() << "\n";
    } else {
      out << lat.to_dot("G" + g.to_string());
    }
    return kExitOk;
  }
  const auto counts = subgroup_counts(group, subs);
  const CocycleCensus census = cocycle_subgroup_census(group, subs);
  std::optional<OmegaProfile> omega;
  if (c.p == 2) omega = omega_profile(group);
  if (c.json) {
    std::vector<std::string> decimal;
    for (const auto& v : counts) decimal.push_back(v.str());
    nlohmann::json jc = nlohmann::json::array();
    for (const auto& [ij, cnt] : census) jc.push_back({ij.first, ij.second, cnt});
    nlohmann::json j{{"p", c.p},
                     {"m", c.m},
                     {"n", c.n},
                     {"k", g.k()},
                     {"subgroups", subs.size()},
                     {"counts", decimal},
                     {"census", jc},
                     {"exponent", group.exponent()}};
    if (omega) {
      const auto shape = detect_shape(*omega);
      j["omega"] = {{"sizes", omega->omega_sizes},
                    {"w", omega->w},
                    {"quotient", omega->quotient.to_string()},
                    {"shape", shape ? to_string(*shape) : "none"}};
    }
    out << j.dump() << "\n";
    return kExitOk;
  }
  out << "G" << g.to_string() << ": " << subs.size() << " subgroups, exponent "
      << group.exponent() << "\n";
  out << "counts by order: " << big_vector(counts) << "\n";
  out << "cocycle census (i j count):\n";
  for (const auto& [ij, cnt] : census) {
    out << "  " << ij.first << " " << ij.second << " " << cnt << "\n";
  }
  if (omega) {
    const auto shape = detect_shape(*omega);
    out << "omega sizes:";
    for (auto s : omega->omega_sizes) out << " " << s;
    out << "\nw = " << omega->w << ", G/R = " << omega->quotient.to_string()
        << ", shape = " << (shape ? to_string(*shape) : "none") << "\n";
  }
  return kExitOk;
}

int cmd_compare(const Common& c, const std::string& k1, const std::string& k2,
                const Limits& limits, std::ostream& out) {
  const GroupParams a = GroupParams::make(c.p, c.m, c.n, parse_integer(k1));
  const GroupParams b = GroupParams::make(c.p, c.m, c.n, parse_integer(k2));
  const bool iso = is_isomorphic(a, b);
  const bool zeta = zeta_equal_by_theorem(a, b);
  std::optional<bool> lat;
  try {
    lat = is_lattice_isomorphic(lattice_of(a, limits), lattice_of(b, limits));
  } catch (const ResourceLimit&) {
  }
  if (c.json) {
    nlohmann::json j{{"k1", a.k()}, {"k2", b.k()}, {"isomorphic", iso}, {"zeta_equal", zeta}};
    j["lattice_isomorphic"] = lat ? nlohmann::json(*lat) : nlohmann::json(nullptr);
    out << j.dump() << "\n";
  } else {
    auto yn = [](bool v) { return v ? "yes" : "no"; };
    out << "G" << a.to_string() << " vs G" << b.to_string() << "\n"
        << "  isomorphic:          " << yn(iso) << "\n"
        << "  zeta-equal:          " << yn(zeta) << "\n"
        << "  lattice-isomorphic:  " << (lat ? yn(*lat) : "n/a (above oracle bound)") << "\n";
  }
  return kExitOk;
}

int cmd_sweep(std::uint64_t p, std::uint64_t max_order, bool json, bool no_lattice,
              const Limits& limits, std::ostream& out) {
  SweepOptions opts;
  opts.p = p;
  opts.max_order = max_order;
  opts.limits = limits;
  opts.lattice_checks = !no_lattice;
  const SweepSummary s = sweep_verify(opts);
  if (json) {
    out << s.to_json().dump() << "\n";
  } else {
    out << s.to_text();
  }
  return s.passed() ? kExitOk : kExitVerificationFailed;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"metazeta: subgroup zeta functions of split metacyclic p-groups"};
  app.require_subcommand(1);
  app.fallthrough();

  Limits limits;
  std::optional<std::uint64_t> max_order_flag;
  std::optional<std::uint64_t> max_subgroups_flag;
  app.add_option("--max-order", max_order_flag, "oracle bound on group order");
  app.add_option("--max-subgroups", max_subgroups_flag, "oracle bound on subgroup count");

  Common c;
  std::string k, k1, k2;
  bool verify = false, lattice = false, csv = false, export_lattice = false, export_group = false;
  bool no_lattice = false;
  std::uint64_t sweep_p = 2;
  std::uint64_t sweep_max = 256;

  auto* validate = app.add_subcommand("validate", "check k^(p^n) == 1 mod p^m");
  add_base(validate, c);
  validate->add_option("k", k)->required();
  validate->add_flag("--json", c.json);

  auto* zeta = app.add_subcommand("zeta", "subgroup counts a_{p^t} from the closed formula");
  add_base(zeta, c);
  zeta->add_option("k", k)->required();
  zeta->add_flag("--json", c.json);
  zeta->add_flag("--verify", verify, "compare against the oracle");

  auto* cls = app.add_subcommand("classify", "isomorphism, zeta and lattice classes over k");
  add_base(cls, c);
  cls->add_flag("--lattice", lattice);
  cls->add_flag("--verify", verify);
  auto* json_flag = cls->add_flag("--json", c.json);
  cls->add_flag("--csv", csv)->excludes(json_flag);

  auto* orc = app.add_subcommand("oracle", "brute-force subgroup data for one group");
  add_base(orc, c);
  orc->add_option("k", k)->required();
  orc->add_flag("--json", c.json);
  orc->add_flag("--export-lattice", export_lattice, "print the subgroup lattice (DOT, or JSON with --json)");
  orc->add_flag("--export-group", export_group, "print the Cayley table and subgroups as JSON");

  auto* cmp = app.add_subcommand("compare", "isomorphic? zeta-equal? lattice-isomorphic?");
  add_base(cmp, c);
  cmp->add_option("k1", k1)->required();
  cmp->add_option("k2", k2)->required();
  cmp->add_flag("--json", c.json);

  auto* sweep = app.add_subcommand("sweep", "exhaustive formula/oracle cross-validation");
  sweep->add_option("--p", sweep_p)->required();
  sweep->add_option("--max-order", sweep_max, "sweep all (m,n) with p^(m+n) <= this");
  sweep->add_flag("--json", c.json);
  sweep->add_flag("--no-lattice", no_lattice);

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInvalidArgument;
  }

  try {
    limits = Limits::from_environment();
    if (max_order_flag) limits.max_order = *max_order_flag;
    if (max_subgroups_flag) limits.max_subgroups = *max_subgroups_flag;

    if (*validate) return cmd_validate(c, k, out);
    if (*zeta) return cmd_zeta(c, k, verify, limits, out);
    if (*cls) return cmd_classify(c, lattice, verify, csv, limits, out, err);
    if (*orc) return cmd_oracle(c, k, export_lattice, export_group, limits, out);
    if (*cmp) return cmd_compare(c, k1, k2, limits, out);
    if (*sweep) return cmd_sweep(sweep_p, sweep_max, c.json, no_lattice, limits, out);
  } catch (const InvalidArgument& e) {
    err << "invalid argument: " << e.what() << "\n";
    return kExitInvalidArgument;
  } catch (const ResourceLimit& e) {
    err << "resource limit: " << e.what() << "\n";
    return kExitResourceLimit;
  } catch (const VerificationFailed& e) {
    err << "verification failed: " << e.what() << "\n";
    return kExitVerificationFailed;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitFailure;
}

}  // namespace metazeta
