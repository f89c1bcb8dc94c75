// pegg: convert, verify, search and tabulate Pegg equations.
//
// Exit codes: 0 success, 1 nothing found, 2 usage error, 3 data or cache error.
// Records go to stdout as JSON lines; human-readable text goes to stderr.

#include <cmath>
#include <cstdlib>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "pegg/parse.hpp"
#include "pegg/powerfilter.hpp"
#include "pegg/record_io.hpp"
#include "pegg/residue_tables.hpp"
#include "pegg/search.hpp"
#include "pegg/table_io.hpp"

using namespace pegg;
using nlohmann::json;

namespace {

enum Exit { kOk = 0, kNotFound = 1, kUsage = 2, kData = 3 };

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct DataError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string default_tables_dir() {
  const char* env = std::getenv("PEGG_TABLES_DIR");
  return env ? env : "";
}

std::vector<Permutation> parse_perms(const std::vector<std::string>& names) {
  std::vector<Permutation> out;
  for (const auto& n : names) {
    if (n == "both") {
      out.push_back(Permutation::ax_minus_cz);
      out.push_back(Permutation::cz_minus_ax);
    } else if (n == "all") {
      out = {Permutation::ax_minus_cz, Permutation::cz_minus_ax, Permutation::ax_plus_cz};
    } else {
      try {
        out.push_back(permutation_from_string(n));
      } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
      }
    }
  }
  return out;
}

Natural size_bound(double log2, const std::string& exact) {
  if (!exact.empty()) {
    try {
      return natural_from_string(exact);
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
  }
  if (!(log2 >= 0) || log2 > 4096) throw UsageError("size log2 must lie in [0, 4096]");
  return Natural(1) << static_cast<unsigned>(std::floor(log2));
}

// ------------------------------------------------------------------ convert

struct EquationArgs {
  std::string text;
};

OriginalEquation parse_or_usage(const std::string& text) {
  try {
    return parse_equation(text);
  } catch (const ParseError& e) {
    throw UsageError(std::string("cannot parse equation: ") + e.what());
  }
}

json conversion_json(const OriginalEquation& eq, const ResultantEquation& res) {
  const PeggReport rep = pegg_report(res);
  json j = to_json(eq);
  j.update(to_json(res, rep));
  return j;
}

void print_human(const OriginalEquation& eq, const ResultantEquation& res) {
  const PeggReport rep = pegg_report(res);
  std::cerr << "original   " << render(eq) << "  (" << to_string(eq.perm) << ")\n"
            << "multiplier N = " << res.N << "\n"
            << "resultant  " << render(res) << "\n"
            << "D,E,F      " << res.D << ", " << res.E << ", " << res.F << "\n"
            << std::fixed << std::setprecision(4) << "Pegg Value " << rep.pegg_value << "  Pegg Power "
            << rep.pegg_power << "  log2 size " << std::setprecision(2) << rep.log2_size
            << (rep.stolen ? "  (gcd steals from the coefficient base)" : "") << "\n";
}

int cmd_convert(const EquationArgs& args, bool verify) {
  const OriginalEquation eq = parse_or_usage(args.text);
  const ValidationResult v = validate_original(eq);
  if (!v.ok()) {
    json j = to_json(eq);
    j["violations"] = v.violations;
    std::cout << j.dump() << "\n";
    for (const auto& s : v.violations) std::cerr << "invalid: " << s << "\n";
    return kData;
  }
  ResultantEquation res;
  try {
    res = convert_to_resultant(eq);
  } catch (const NoSolution& e) {
    std::cerr << "no multiplier: " << e.what() << "\n";
    return kData;
  }
  // every printed resultant is re-verified exactly
  if (!resultant_consistent(res)) {
    std::cerr << "internal error: resultant does not verify\n";
    return kData;
  }
  json j = conversion_json(eq, res);
  if (verify) {
    j["verified"] = true;
    j["multiplier_minimal"] = res.N == smallest_multiplier(eq);
  }
  std::cout << j.dump() << "\n";
  print_human(eq, res);
  return kOk;
}

// ------------------------------------------------------------------- search

struct SearchArgs {
  std::string exps = "3,3,4";
  double smin_log2 = 0;
  double smax_log2 = -1;
  std::string smin_exact, smax_exact;
  Word min_pegg = 2;
  std::string tables_dir = default_tables_dir();
  int workers = 0;
  std::vector<Word> coeffs;
  std::vector<std::string> perms{"all"};
  std::string profile = "auto";
  bool build_tables = false;
  double budget_gib = 4;
  bool all = false;
  bool three_four_five = false;
  bool gcd_before_power = false;
};

SearchConfig make_config(const SearchArgs& a, bool need_smax) {
  SearchConfig cfg;
  try {
    cfg.exps = exponents_from_string(a.exps);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  if (need_smax && a.smax_log2 < 0 && a.smax_exact.empty()) throw UsageError("--smax-log2 or --smax-exact is required");
  cfg.s_min = a.smin_log2 > 0 || !a.smin_exact.empty() ? size_bound(a.smin_log2, a.smin_exact) : Natural(1);
  cfg.s_max = size_bound(a.smax_log2, a.smax_exact);
  cfg.V = a.min_pegg;
  cfg.workers = a.workers;
  if (!a.coeffs.empty()) cfg.coeffs = a.coeffs;
  cfg.perms = parse_perms(a.perms);
  cfg.three_four_five_cases = a.three_four_five;
  cfg.gcd_before_power = a.gcd_before_power;
  try {
    validate_config(cfg);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  return cfg;
}

TableOptions make_table_options(const SearchArgs& a) {
  TableOptions o;
  try {
    o.profile = table_profile_from_string(a.profile);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  o.dir = a.tables_dir;
  o.build_missing = a.build_tables;
  o.save_built = a.build_tables && !a.tables_dir.empty();
  o.budget_bytes = static_cast<std::uint64_t>(a.budget_gib * static_cast<double>(kGiB));
  return o;
}

void print_row(const SearchRecord& r) {
  std::cerr << std::fixed << std::setprecision(2) << std::setw(8) << r.report.log2_size << std::setw(10)
            << r.report.pegg_value << std::setprecision(4) << std::setw(9) << r.report.pegg_power << "   "
            << render(r.original) << "\n";
}

int cmd_search(const SearchArgs& a) {
  const SearchConfig cfg = make_config(a, true);
  TableSet tables(make_table_options(a));
  if (a.all) {
    const auto recs = search_all_permutations(cfg, tables);
    for (const auto& r : recs) {
      std::cout << to_json_line(r) << "\n";
      print_row(r);
    }
    std::cerr << recs.size() << " record(s)\n";
    return recs.empty() ? kNotFound : kOk;
  }
  const auto r = search_once_permutations(cfg, tables);
  if (!r) {
    std::cout << json{{"exhausted", true}}.dump() << "\n";
    std::cerr << "exhausted: no equation with Pegg Value >= " << cfg.V << " in range\n";
    return kNotFound;
  }
  std::cout << to_json_line(*r) << "\n";
  print_row(*r);
  return kOk;
}

int cmd_ladder(const SearchArgs& a) {
  const SearchConfig cfg = make_config(a, true);
  TableSet tables(make_table_options(a));
  const auto rows = ladder(cfg, tables);
  std::cerr << "   log2     Pegg     Pegg\n   size    Value    Power   original equation\n";
  for (const auto& r : rows) {
    std::cout << to_json_line(r) << "\n";
    print_row(r);
  }
  return kOk;
}

// ------------------------------------------------------------------- tables

struct TablesArgs {
  std::string exps = "3,3,4";
  std::string perm = "both";
  std::string profile = "standard";
  Word single_coeff = 0;
  double budget_gib = 4;
  std::string tables_dir = default_tables_dir();
  bool dry_run = false;
};

std::vector<TableSpec> table_specs(const TablesArgs& a) {
  ExponentTriple e;
  try {
    e = exponents_from_string(a.exps);
  } catch (const std::invalid_argument& ex) {
    throw UsageError(ex.what());
  }
  std::vector<TableSpec> out;
  for (Permutation p : parse_perms({a.perm})) {
    if (p == Permutation::ax_plus_cz) throw UsageError("tables exist for ax_minus_cz and cz_minus_ax only");
    TableSpec s;
    try {
      if (a.single_coeff)
        s = single_coefficient_spec(e, p, a.single_coeff);
      else if (a.profile == "compact")
        s = compact_spec(e, p);
      else if (a.profile == "standard")
        s = default_spec(e, p);
      else
        throw UsageError("tables profile must be standard or compact");
    } catch (const std::invalid_argument& ex) {
      throw UsageError(ex.what());
    }
    s.budget_bytes = static_cast<std::uint64_t>(a.budget_gib * static_cast<double>(kGiB));
    out.push_back(s);
  }
  return out;
}

std::string gib(std::uint64_t bytes) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(2) << static_cast<double>(bytes) / static_cast<double>(kGiB) << " GiB";
  return os.str();
}

int cmd_tables(const TablesArgs& a, bool build) {
  for (const TableSpec& s : table_specs(a)) {
    const std::uint64_t projected = projected_skip_bytes(s);
    json j{{"spec", describe(s)},
           {"skip_modulus", s.skip_modulus()},
           {"elim_modulus", s.elim_modulus_or_zero()},
           {"projected_skip_bytes", projected},
           {"budget_bytes", s.budget_bytes}};
    if (!a.tables_dir.empty()) {
      const auto sp = skipahead_file(a.tables_dir, s);
      const auto ep = elimination_file(a.tables_dir, s);
      j["skip_file"] = sp.string();
      j["skip_cached"] = std::filesystem::exists(sp);
      j["elim_file"] = ep.string();
      j["elim_cached"] = std::filesystem::exists(ep);
    }
    std::cerr << describe(s) << ": skipahead projected " << gib(projected) << "\n";
    if (build) {
      if (projected > s.budget_bytes) {
        j["error"] = "budget exceeded";
        std::cout << j.dump() << "\n";
        std::cerr << "projected skipahead size " << gib(projected) << " exceeds the budget of " << gib(s.budget_bytes)
                  << "\n";
        return kData;
      }
      if (!a.dry_run) {
        const auto elim = build_elimination_table(s);
        const auto skip = build_skipahead_table(s);
        j["skip_bytes"] = skip->delta_bytes();
        j["entry_width"] = skip->entry_width;
        j["elim_cotables"] = elim.cotables.size();
        if (!a.tables_dir.empty()) {
          save_table(*skip, skipahead_file(a.tables_dir, s));
          save_table(elim, elimination_file(a.tables_dir, s));
        }
        std::cerr << "  built " << gib(skip->delta_bytes()) << " of " << int(skip->entry_width) << "-byte gaps, "
                  << elim.cotables.size() << " elimination co-table(s)"
                  << (a.tables_dir.empty() ? " (not saved: no --tables-dir)" : "") << "\n";
      }
    } else if (!a.tables_dir.empty() && j["skip_cached"].get<bool>()) {
      const auto t = load_skipahead(skipahead_file(a.tables_dir, s), s);
      j["skip_bytes"] = t->delta_bytes();
      j["entry_width"] = t->entry_width;
    }
    std::cout << j.dump() << "\n";
  }
  return kOk;
}

// -------------------------------------------------------------------- rates

struct RatesArgs {
  std::string exps = "3,3,4";
  std::string perm = "both";
  Word f_limit = 100000;
  bool all_residues = false;
};

int cmd_rates(const RatesArgs& a) {
  TablesArgs ta;
  ta.exps = a.exps;
  ta.perm = a.perm;
  for (const TableSpec& s : table_specs(ta)) {
    const Rates r = measure_rates(s, a.f_limit, a.all_residues ? RateWeighting::all_residues
                                                                : RateWeighting::z_free_coefficients);
    json j{{"exponents", {s.exps.x, s.exps.y, s.exps.z}},
           {"permutation", to_string(s.perm)},
           {"f_limit", a.f_limit},
           {"elimination", r.elimination},
           {"skipahead", r.skipahead},
           {"combined", r.combined}};
    std::cout << j.dump() << "\n";
    std::cerr << std::fixed << std::setprecision(3) << to_string(s.exps) << ' ' << to_string(s.perm)
              << ": elimination " << r.elimination << "%  skipahead " << r.skipahead << "%  combined " << r.combined
              << "%\n";
  }
  return kOk;
}

// ----------------------------------------------------------------- identity

struct IdentityArgs {
  Word V = 0;
  Word x = 3;
};

int cmd_identity(const IdentityArgs& a) {
  if (a.V < 2) throw UsageError("--pegg must be >= 2");
  if (a.x < 3) throw UsageError("--x must be >= 3");
  const ResultantEquation res = generate_identity(a.V, a.x);
  if (!resultant_consistent(res)) {
    std::cerr << "internal error: identity does not verify\n";
    return kData;
  }
  const PeggReport rep = pegg_report(res);
  const Natural W = pow_word(a.V, a.x + 2) - 1;
  json j = to_json(res, rep);
  j["exponents"] = {res.exps.x, res.exps.y, res.exps.z};
  j["W"] = W.get_str();
  j["original"] = "1^" + std::to_string(a.x) + " + " + W.get_str() + "*1^" + std::to_string(a.x + 1) + " = " +
                  std::to_string(a.V) + "^" + std::to_string(a.x + 2);
  std::cout << j.dump() << "\n";
  std::cerr << "W = " << W << "\n"
            << "(W^" << a.x + 2 << ")^" << a.x << " + (W^" << a.x + 1 << ")^" << a.x + 1 << " = (W^" << a.x << "*"
            << a.V << ")^" << a.x + 2 << "\n"
            << std::fixed << std::setprecision(2) << "Pegg Value " << rep.pegg_value << "  log2 size "
            << rep.log2_size << "\n";
  return kOk;
}

void add_search_flags(CLI::App* sc, SearchArgs& a, bool with_pegg) {
  sc->add_option("--exps", a.exps, "exponents x,y,z (z carries the coefficient)");
  sc->add_option("--smin-log2", a.smin_log2, "minimum resultant size, log2 (floored)");
  sc->add_option("--smax-log2", a.smax_log2, "maximum resultant size, log2 (floored)");
  sc->add_option("--smin-exact", a.smin_exact, "exact minimum size (decimal)");
  sc->add_option("--smax-exact", a.smax_exact, "exact maximum size (decimal)");
  if (with_pegg)
    sc->add_option("--min-pegg", a.min_pegg, "minimum desired Pegg Value")->check(CLI::PositiveNumber);
  else
    sc->add_option("--min-pegg", a.min_pegg, "start above this Pegg Value minus one")->check(CLI::PositiveNumber);
  sc->add_option("--tables-dir", a.tables_dir, "table cache directory (default $PEGG_TABLES_DIR)");
  sc->add_option("--workers", a.workers, "OpenMP threads (0: default)");
  sc->add_option("--coeffs", a.coeffs, "only these coefficients")->delimiter(',');
  sc->add_option("--permutations", a.perms, "ax_minus_cz, cz_minus_ax, ax_plus_cz, both or all")->delimiter(',');
  sc->add_option("--table-profile", a.profile, "standard, compact, auto or none");
  sc->add_flag("--build-tables", a.build_tables, "build (and cache) missing standard tables");
  sc->add_option("--budget-gib", a.budget_gib, "skipahead table budget");
  sc->add_flag("--three-four-five", a.three_four_five, "{3,4,5}: only the three single-coefficient cases");
  sc->add_flag("--gcd-before-power", a.gcd_before_power, "test coprimality before the power test");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Pegg Value search for A^x + B^y = C^z"};
  app.require_subcommand(1);

  EquationArgs conv, ver;
  auto* c_convert = app.add_subcommand("convert", "convert an original equation to resultant form");
  c_convert->add_option("equation", conv.text, "e.g. \"23^3 + 9*14^4 = 71^3\"")->required();
  auto* c_verify = app.add_subcommand("verify", "check an original equation and its conversion exactly");
  c_verify->add_option("equation", ver.text)->required();

  SearchArgs sa, la;
  auto* c_search = app.add_subcommand("search", "find an equation with at least the given Pegg Value");
  add_search_flags(c_search, sa, true);
  c_search->add_flag("--all", sa.all, "report every qualifying equation instead of the first");
  auto* c_ladder = app.add_subcommand("ladder", "smallest equations with strictly increasing Pegg Value");
  add_search_flags(c_ladder, la, false);

  TablesArgs ta;
  auto* c_tables = app.add_subcommand("tables", "build or inspect lookup tables");
  c_tables->require_subcommand(1);
  auto* c_build = c_tables->add_subcommand("build", "build tables and write them to --tables-dir");
  auto* c_info = c_tables->add_subcommand("info", "show table specs, projected sizes and cache state");
  for (auto* sc : {c_build, c_info}) {
    sc->add_option("--exps", ta.exps);
    sc->add_option("--perm", ta.perm, "ax_minus_cz, cz_minus_ax or both");
    sc->add_option("--profile", ta.profile, "standard or compact");
    sc->add_option("--single-coeff", ta.single_coeff, "single-coefficient table for this f");
    sc->add_option("--budget-gib", ta.budget_gib);
    sc->add_option("--tables-dir", ta.tables_dir);
  }
  c_build->add_flag("--dry-run", ta.dry_run, "check the budget only");

  RatesArgs ra;
  auto* c_rates = app.add_subcommand("rates", "measure elimination percentages");
  c_rates->add_option("--exps", ra.exps);
  c_rates->add_option("--perm", ra.perm);
  c_rates->add_option("--f-limit", ra.f_limit);
  c_rates->add_flag("--all-residues", ra.all_residues, "weight every coefficient residue equally");

  IdentityArgs ia;
  auto* c_identity = app.add_subcommand("identity", "equation with exponents {x,x+1,x+2} and Pegg Value V");
  c_identity->add_option("--pegg", ia.V)->required();
  c_identity->add_option("--x", ia.x);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  try {
    if (*c_convert) return cmd_convert(conv, false);
    if (*c_verify) return cmd_convert(ver, true);
    if (*c_search) return cmd_search(sa);
    if (*c_ladder) return cmd_ladder(la);
    if (*c_build) return cmd_tables(ta, true);
    if (*c_info) return cmd_tables(ta, false);
    if (*c_rates) return cmd_rates(ra);
    if (*c_identity) return cmd_identity(ia);
  } catch (const UsageError& e) {
    std::cerr << "usage: " << e.what() << "\n";
    return kUsage;
  } catch (const BudgetExceeded& e) {
    std::cerr << e.what() << "\n";
    return kData;
  } catch (const TableError& e) {
    std::cerr << "table cache: " << e.what() << "\n";
    return kData;
  } catch (const MissingTable& e) {
    std::cerr << e.what() << "\n";
    return kData;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kData;
  }
  return kUsage;
}
