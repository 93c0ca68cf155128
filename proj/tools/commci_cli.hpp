#ifndef COMMCI_TOOLS_CLI_HPP
#define COMMCI_TOOLS_CLI_HPP

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "commci/cidecide.hpp"
#include "commci/groebner.hpp"
#include "commci/groupmat.hpp"
#include "commci/koszul.hpp"
#include "commci/report.hpp"

namespace commci::cli {

enum ExitCode : int { kVerdict = 0, kUsage = 1, kIncomplete = 2 };

namespace detail {

struct Common {
  std::string group = "un";
  int n = 3;
  int genus = 1;
  std::string field = "auto";
  std::uint64_t order_seed = 0;
  int degree_cap = Limits{}.degree_cap;
  double timeout = Limits{}.timeout_seconds;
  std::string out;
  CLI::Option* timeout_opt = nullptr;
};

inline void add_group_options(CLI::App* sub, Common& c) {
  sub->add_option("--group", c.group, "un or bn")->check(CLI::IsMember({"un", "bn"}));
  sub->add_option("--n", c.n, "matrix size")->check(CLI::Range(2, 64));
  sub->add_option("--genus", c.genus, "surface genus")->check(CLI::Range(1, 16));
}

inline void add_run_options(CLI::App* sub, Common& c) {
  sub->add_option("--field", c.field, "q, gf:p or auto");
  sub->add_option("--order-seed", c.order_seed, "variable permutation seed (0 = identity)");
  sub->add_option("--degree-cap", c.degree_cap, "S-polynomial degree cap")->check(CLI::PositiveNumber);
  c.timeout_opt = sub->add_option("--timeout", c.timeout, "wall-clock limit in seconds")->check(CLI::PositiveNumber);
  sub->add_option("--out", c.out, "write the JSON document here instead of stdout");
}

// --timeout beats COMMUTING_CI_TIMEOUT, which beats the default.
inline Limits limits_of(const Common& c) {
  Limits l;
  l.degree_cap = c.degree_cap;
  l.timeout_seconds = c.timeout;
  if (c.timeout_opt && c.timeout_opt->count() == 0) {
    if (const char* env = std::getenv("COMMUTING_CI_TIMEOUT")) {
      char* end = nullptr;
      double v = std::strtod(env, &end);
      if (end == env || *end != '\0' || !(v > 0)) throw std::invalid_argument("COMMUTING_CI_TIMEOUT must be a positive number");
      l.timeout_seconds = v;
    }
  }
  return l;
}

inline void emit(const json& doc, const std::string& path, std::ostream& out) {
  if (path.empty()) {
    out << doc.dump(2) << "\n";
    return;
  }
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot write " + path);
  f << doc.dump(2) << "\n";
}

inline std::string cell(const std::optional<long>& v) { return v ? std::to_string(*v) : "-"; }

inline void print_table(const std::vector<CIReport>& rows, std::ostream& out) {
  out << std::left << std::setw(6) << "group" << std::setw(4) << "n" << std::setw(6) << "genus" << std::setw(10)
      << "field" << std::setw(11) << "verdict" << std::setw(5) << "dim" << std::setw(7) << "codim" << std::setw(6)
      << "r+u" << std::setw(22) << "certificate" << "seconds\n";
  for (const auto& r : rows) {
    std::string verdict = verdict_name(r.verdict) + (r.conjectural ? "?" : "");
    out << std::left << std::setw(6) << group_name(r.group) << std::setw(4) << r.n << std::setw(6) << r.genus
        << std::setw(10) << r.field << std::setw(11) << verdict << std::setw(5) << cell(r.dim) << std::setw(7)
        << cell(r.codim) << std::setw(6) << (r.generators + r.unit_relations) << std::setw(22)
        << (r.certificate.empty() ? "-" : r.certificate) << std::setprecision(3) << r.wall_seconds << "\n";
  }
}

template <class F>
int run_koszul(const F& field, const Common& c, int min_i, int max_i, long max_weight, std::size_t slice_cap,
               std::ostream& out) {
  auto sys = commutator_word(field, parse_group(c.group), c.n, c.genus);
  auto build = build_complex(sys);
  Limits lim = limits_of(c);
  lim.slice_cap = slice_cap;
  json rows = json::array();
  json first = nullptr;
  bool complete = true;
  for (int i = min_i; i <= max_i; ++i)
    for (long w = 0; w <= max_weight; ++w) {
      auto rep = build.complex.homology_slice(i, w, lim);
      complete = complete && rep.complete;
      if (rep.complete && rep.h_dim != 0 && i >= 1 && first.is_null())
        first = json{{"i", i}, {"w", w}, {"h_dim", rep.h_dim}};
      rows.push_back(rep);
    }
  json zeros = json::array();
  for (const auto& p : build.zero_positions) zeros.push_back(p);
  json doc{{"group", c.group},
           {"n", c.n},
           {"genus", c.genus},
           {"field", field.name()},
           {"generators", build.complex.length()},
           {"exterior_factors", build.exterior_factors},
           {"zero_positions", zeros},
           {"first_nonzero", first},
           {"rows", rows}};
  emit(doc, c.out, out);
  return complete ? kVerdict : kIncomplete;
}

template <class F>
int run_dump(const F& field, const Common& c, bool basis, const std::string& stats_path, std::ostream& out,
             std::ostream& err) {
  auto sys = commutator_word(field, parse_group(c.group), c.n, c.genus);
  if (!basis) {
    out << dump_generators(sys);
    return kVerdict;
  }
  auto gens = sys.generator_polys();
  gens.insert(gens.end(), sys.unit_relations.begin(), sys.unit_relations.end());
  auto order = MonomialOrder::from_seed(sys.ring->nvars(), c.order_seed);
  auto gb = buchberger(gens, sys.ring, order, limits_of(c));
  json stats = gb.stats;
  if (stats_path.empty())
    err << stats.dump() << "\n";
  else
    emit(stats, stats_path, out);
  if (!gb.complete) {
    err << "incomplete: " << gb.incomplete_reason << "\n";
    return kIncomplete;
  }
  out << dump_basis(gb);
  return kVerdict;
}

inline std::size_t nvars_of(const Common& c) { return group_nvars(parse_group(c.group), c.n, c.genus); }

}  // namespace detail

/// Runs the command line; args excludes the program name.
inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  using namespace detail;
  CLI::App app{"Complete-intersection decisions for commuting varieties of U_n and B_n"};
  app.require_subcommand(1);

  Common decide_c;
  bool certify = false;
  auto* decide = app.add_subcommand("decide", "decide whether the variety is a complete intersection");
  add_group_options(decide, decide_c);
  add_run_options(decide, decide_c);
  decide->add_flag("--certify", certify, "also run the basis route where the witness already decides");

  Common wit_c;
  wit_c.n = 6;
  wit_c.field = "q";
  auto* witness = app.add_subcommand("witness-u6", "check the U6 non-regularity witness");
  witness->add_option("--n", wit_c.n, "ambient size (the U6 block is embedded when n > 6)")->check(CLI::Range(6, 64));
  add_run_options(witness, wit_c);

  Common kos_c;
  int min_i = 1, max_i = 1;
  long max_weight = 6;
  std::size_t slice_cap = Limits{}.slice_cap;
  auto* koszul = app.add_subcommand("koszul", "Koszul homology slices of the unipotent generators");
  add_group_options(koszul, kos_c);
  add_run_options(koszul, kos_c);
  koszul->add_option("--max-weight", max_weight, "largest internal weight")->check(CLI::NonNegativeNumber);
  koszul->add_option("--min-i", min_i, "smallest homological degree")->check(CLI::NonNegativeNumber);
  koszul->add_option("--max-i", max_i, "largest homological degree")->check(CLI::NonNegativeNumber);
  koszul->add_option("--slice-cap", slice_cap, "abandon slices with more basis elements")->check(CLI::PositiveNumber);

  Common dump_c;
  bool basis = false;
  std::string stats_path;
  auto* dump = app.add_subcommand("dump", "print generators, or the reduced basis with --basis");
  add_group_options(dump, dump_c);
  add_run_options(dump, dump_c);
  dump->add_flag("--basis", basis, "print the reduced Groebner basis instead");
  dump->add_option("--stats", stats_path, "write basis statistics JSON here (default: stderr)");

  Common tab_c;
  tab_c.n = 6;
  unsigned jobs = 0;
  bool as_json = false;
  auto* table = app.add_subcommand("table", "classify a family for n = 2..max-n");
  table->add_option("--family", tab_c.group, "un or bn")->check(CLI::IsMember({"un", "bn"}));
  table->add_option("--max-n", tab_c.n, "largest n")->check(CLI::Range(2, 64));
  table->add_option("--genus", tab_c.genus, "surface genus")->check(CLI::Range(1, 16));
  table->add_option("--jobs", jobs, "worker threads (0 = hardware)");
  table->add_flag("--json", as_json, "print the JSON array instead of the text table");
  add_run_options(table, tab_c);

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kVerdict;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kVerdict;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }

  try {
    if (*decide) {
      DecideOptions opt;
      opt.order_seed = decide_c.order_seed;
      opt.limits = limits_of(decide_c);
      opt.certify_with_groebner = certify;
      auto r = decide_ci(parse_group(decide_c.group), decide_c.n, decide_c.genus, FieldSpec::parse(decide_c.field), opt);
      emit(json(r), decide_c.out, out);
      return r.verdict == Verdict::Incomplete ? kIncomplete : kVerdict;
    }
    if (*witness) {
      auto w = u6_witness(FieldSpec::parse(wit_c.field), wit_c.order_seed, wit_c.n, limits_of(wit_c));
      emit(json(w), wit_c.out, out);
      return w.conclusion == "NotCI" ? kVerdict : kIncomplete;
    }
    if (*koszul) {
      if (parse_group(kos_c.group) != GroupKind::Unipotent) {
        err << "error: koszul slices need --group un\n";
        return kUsage;
      }
      if (min_i > max_i) {
        err << "error: --min-i exceeds --max-i\n";
        return kUsage;
      }
      FieldSpec f = FieldSpec::parse(kos_c.field).resolve(nvars_of(kos_c));
      if (f.kind == FieldSpec::Kind::Rationals) return run_koszul(RationalField{}, kos_c, min_i, max_i, max_weight, slice_cap, out);
      return run_koszul(PrimeField(f.prime), kos_c, min_i, max_i, max_weight, slice_cap, out);
    }
    if (*dump) {
      FieldSpec f = FieldSpec::parse(dump_c.field).resolve(nvars_of(dump_c));
      if (f.kind == FieldSpec::Kind::Rationals) return run_dump(RationalField{}, dump_c, basis, stats_path, out, err);
      return run_dump(PrimeField(f.prime), dump_c, basis, stats_path, out, err);
    }
    if (*table) {
      DecideOptions opt;
      opt.order_seed = tab_c.order_seed;
      opt.limits = limits_of(tab_c);
      auto rows = classify_table(parse_group(tab_c.group), tab_c.n, tab_c.genus, FieldSpec::parse(tab_c.field), opt, jobs);
      json doc = rows;
      if (!tab_c.out.empty()) emit(doc, tab_c.out, out);
      if (as_json)
        out << doc.dump(2) << "\n";
      else
        print_table(rows, out);
      for (const auto& r : rows)
        if (r.verdict == Verdict::Incomplete) return kIncomplete;
      return kVerdict;
    }
  } catch (const IncompleteComputation& e) {
    err << "incomplete: " << e.what() << "\n";
    return kIncomplete;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}

}  // namespace commci::cli

#endif
