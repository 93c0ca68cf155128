#ifndef COMMCI_CIDECIDE_HPP
#define COMMCI_CIDECIDE_HPP

#include <algorithm>
#include <atomic>
#include <chrono>
#include <future>
#include <optional>
#include <string>
#include <thread>
#include <variant>
#include <vector>

#include "commci/groebner.hpp"
#include "commci/groupmat.hpp"
#include "commci/polynomial.hpp"

namespace commci {

enum class Verdict { CI, NotCI, Incomplete };

inline std::string verdict_name(Verdict v) {
  switch (v) {
    case Verdict::CI: return "CI";
    case Verdict::NotCI: return "NotCI";
    default: return "Incomplete";
  }
}
inline Verdict parse_verdict(const std::string& s) {
  if (s == "CI") return Verdict::CI;
  if (s == "NotCI") return Verdict::NotCI;
  if (s == "Incomplete") return Verdict::Incomplete;
  throw std::invalid_argument("unknown verdict " + s);
}

/// Coefficient field selection: rationals, GF(p), or size-based automatic.
struct FieldSpec {
  enum class Kind { Auto, Rationals, Prime };
  Kind kind = Kind::Auto;
  std::uint32_t prime = kDefaultPrime;

  static FieldSpec rationals() { return {Kind::Rationals, 0}; }
  static FieldSpec gf(std::uint32_t p) { return {Kind::Prime, p}; }

  /// "q", "gf:p" or "auto".
  static FieldSpec parse(const std::string& s) {
    if (s == "q" || s == "Q") return rationals();
    if (s == "auto") return {};
    if (s.rfind("gf:", 0) == 0) {
      std::size_t used = 0;
      unsigned long p = 0;
      try {
        p = std::stoul(s.substr(3), &used);
      } catch (const std::exception&) {
        throw std::invalid_argument("bad field '" + s + "'");
      }
      if (used != s.size() - 3 || p >= (1ul << 31) || !is_prime(p))
        throw std::invalid_argument("field '" + s + "': modulus must be a prime below 2^31");
      return gf(static_cast<std::uint32_t>(p));
    }
    throw std::invalid_argument("bad field '" + s + "' (expected q, gf:p or auto)");
  }

  /// Rationals up to 12 variables (U_2..U_4, B_2, U_3 at genus 2), GF(32003) beyond.
  FieldSpec resolve(std::size_t nvars) const {
    if (kind != Kind::Auto) return *this;
    return nvars <= 12 ? rationals() : gf(kDefaultPrime);
  }
  std::string name() const {
    switch (kind) {
      case Kind::Rationals: return "q";
      case Kind::Prime: return "gf:" + std::to_string(prime);
      default: return "auto";
    }
  }
};

inline std::size_t group_nvars(GroupKind kind, int n, int genus) {
  std::size_t per = kind == GroupKind::Unipotent ? n * (n - 1) / 2 : n * (n + 1) / 2 + n;
  return 2 * static_cast<std::size_t>(genus) * per;
}

struct PatternCheck {
  Position pos;
  std::string expected;
  std::string actual;
  bool ok = false;
  bool operator==(const PatternCheck&) const = default;
};

struct MembershipCheck {
  Position pos;
  bool member = false;
  bool operator==(const MembershipCheck&) const = default;
};

/// Record of the non-regularity certificate for the 7-entry subsequence of
/// the U_6 generators.
struct WitnessReport {
  int n = 6;  // ambient matrix size; > 6 means the 6x6 block is embedded
  std::string field;
  std::string order;
  std::vector<std::string> substitution;  // variables set to 0
  std::vector<std::string> surviving;     // the two polynomials left at (1,4), (3,6)
  std::vector<PatternCheck> pattern;
  std::vector<MembershipCheck> memberships;
  std::size_t bounding_generators = 0;
  std::optional<long> bounding_codim;  // computed codim of the bounding ideal
  long subsequence_length = 7;
  std::string conclusion;  // NotCI | Inconclusive
  std::string failure;
  bool operator==(const WitnessReport&) const = default;
};

struct CIReport {
  GroupKind group = GroupKind::Unipotent;
  int n = 0;
  int genus = 1;
  std::string field;
  std::string order = "grevlex";
  std::size_t nvars = 0;
  std::size_t generators = 0;
  std::size_t unit_relations = 0;
  std::optional<long> dim;
  std::optional<long> codim;
  Verdict verdict = Verdict::Incomplete;
  int exterior_factors = 0;
  std::string structure;    // set on unipotent CI verdicts
  std::string certificate;  // codimension | u6-witness | embedded-u6-witness
  bool conjectural = false;
  std::string source;  // published-classification | tool-derived
  std::string note;
  std::optional<WitnessReport> witness;
  GroebnerStats stats;
  double wall_seconds = 0.0;
};

inline bool operator==(const GroebnerStats& a, const GroebnerStats& b) {
  return a.pairs == b.pairs && a.zero_reductions == b.zero_reductions && a.max_degree == b.max_degree &&
         a.seconds == b.seconds;
}
inline bool operator==(const CIReport& a, const CIReport& b) {
  return a.group == b.group && a.n == b.n && a.genus == b.genus && a.field == b.field && a.order == b.order &&
         a.nvars == b.nvars && a.generators == b.generators && a.unit_relations == b.unit_relations &&
         a.dim == b.dim && a.codim == b.codim && a.verdict == b.verdict &&
         a.exterior_factors == b.exterior_factors && a.structure == b.structure &&
         a.certificate == b.certificate && a.conjectural == b.conjectural && a.source == b.source &&
         a.note == b.note && a.witness == b.witness && a.stats == b.stats && a.wall_seconds == b.wall_seconds;
}

/// The cases covered by the published classification at genus 1.
inline bool is_published_case(GroupKind kind, int n, int genus) {
  if (genus != 1) return false;
  return kind == GroupKind::Unipotent ? (n >= 2 && n <= 6) : (n == 2 || n == 3);
}

namespace detail {

// Positions of the 7-element subsequence and the variables killed by the
// substitution, in the 1-based indices of the 6x6 block.
inline const std::vector<Position>& witness_positions() {
  static const std::vector<Position> p{{1, 3}, {1, 4}, {2, 4}, {2, 5}, {3, 5}, {3, 6}, {4, 6}};
  return p;
}

inline std::vector<std::string> witness_killed() {
  return {entry_name(MatrixRole::X, 1, 2, 3), entry_name(MatrixRole::X, 1, 4, 5),
          entry_name(MatrixRole::Y, 1, 2, 3), entry_name(MatrixRole::Y, 1, 4, 5)};
}

inline std::string expected_pattern(Position p) {
  if (p == Position{1, 4}) return "x_1_1_2*y_1_2_4 + x_1_1_3*y_1_3_4 - x_1_3_4*y_1_1_3 - x_1_2_4*y_1_1_2";
  if (p == Position{3, 6}) return "x_1_3_4*y_1_4_6 + x_1_3_5*y_1_5_6 - x_1_5_6*y_1_3_5 - x_1_4_6*y_1_3_4";
  return "0";
}

}  // namespace detail

/// Checks the substitution pattern of the U_6 commutator and the membership
/// of the seven unsubstituted generators in the 6-generated bounding ideal.
/// With n > 6 the same block is checked inside U_n.
template <class F>
WitnessReport u6_witness(const F& field, const MonomialOrder& order_spec, int n = 6, const Limits& limits = {}) {
  if (n < 6) throw std::invalid_argument("the witness needs n >= 6");
  WitnessReport rep;
  rep.n = n;
  rep.field = field.name();
  auto sys = commutator_word(field, GroupKind::Unipotent, n, 1);
  const auto& ring = sys.ring;
  MonomialOrder order = order_spec.permutation.size() == ring->nvars()
                            ? order_spec
                            : MonomialOrder::from_seed(ring->nvars(), order_spec.seed);
  rep.order = order.describe();

  std::map<std::string, Polynomial<F>> subst;
  for (const auto& v : detail::witness_killed()) {
    rep.substitution.push_back(v);
    subst.emplace(v, Polynomial<F>(ring));
  }

  bool pattern_ok = true;
  std::vector<Polynomial<F>> bounding;
  for (const auto& v : detail::witness_killed()) bounding.push_back(Polynomial<F>::variable(ring, v));
  for (const auto& pos : detail::witness_positions()) {
    auto image = substitute(sys.generator_at(pos), subst);
    auto expected = parse_polynomial(ring, detail::expected_pattern(pos));
    PatternCheck pc{pos, to_string(expected), to_string(image), image == expected};
    if (!pc.ok && pattern_ok) {
      pattern_ok = false;
      rep.failure = "pattern mismatch at (" + std::to_string(pos.i) + "," + std::to_string(pos.j) + ")";
    }
    rep.pattern.push_back(pc);
    if (!image.is_zero()) {
      rep.surviving.push_back(to_string(image));
      bounding.push_back(image);
    }
  }
  rep.bounding_generators = bounding.size();

  auto bound_ordered = in_order(bounding, ring, order);
  auto gb = buchberger(bound_ordered, order.apply(ring), limits);
  bool members_ok = gb.complete;
  if (!gb.complete) {
    rep.failure = rep.failure.empty() ? "bounding ideal basis incomplete: " + gb.incomplete_reason : rep.failure;
  } else {
    rep.bounding_codim = krull_dimension(gb).codim;
    for (const auto& pos : detail::witness_positions()) {
      auto f = change_ring(sys.generator_at(pos), gb.ring);
      bool member = normal_form(f, gb.basis).is_zero();
      rep.memberships.push_back({pos, member});
      if (!member && members_ok) {
        members_ok = false;
        if (rep.failure.empty())
          rep.failure = "f at (" + std::to_string(pos.i) + "," + std::to_string(pos.j) + ") not in bounding ideal";
      }
    }
  }
  bool bound_ok = rep.bounding_generators < static_cast<std::size_t>(rep.subsequence_length);
  if (!bound_ok && rep.failure.empty()) rep.failure = "bounding ideal has too many generators";
  rep.conclusion = pattern_ok && members_ok && bound_ok ? "NotCI" : "Inconclusive";
  return rep;
}

struct DecideOptions {
  std::uint64_t order_seed = 0;
  Limits limits;
  // Also run the Groebner route where the witness already decides (n >= 6).
  bool certify_with_groebner = false;
};

template <class F>
CIReport decide_ci(GroupKind kind, int n, int genus, const F& field, const DecideOptions& opt = {}) {
  using Clock = std::chrono::steady_clock;
  const auto start = Clock::now();
  if (n < 2) throw std::invalid_argument("n must be at least 2");
  if (genus < 1) throw std::invalid_argument("genus must be at least 1");

  CIReport rep;
  rep.group = kind;
  rep.n = n;
  rep.genus = genus;
  rep.field = field.name();
  rep.exterior_factors = kind == GroupKind::Unipotent ? n - 1 : n;
  rep.source = is_published_case(kind, n, genus) ? "published-classification" : "tool-derived";

  auto sys = commutator_word(field, kind, n, genus);
  MonomialOrder order = MonomialOrder::from_seed(sys.ring->nvars(), opt.order_seed);
  rep.order = order.describe();
  rep.nvars = sys.ring->nvars();
  rep.generators = sys.generators.size();
  rep.unit_relations = sys.unit_relations.size();
  const long target = static_cast<long>(rep.generators + rep.unit_relations);

  auto finish = [&] {
    rep.wall_seconds = std::chrono::duration<double>(Clock::now() - start).count();
    return rep;
  };

  const bool witness_route = kind == GroupKind::Unipotent && genus == 1 && n >= 6;
  if (witness_route) {
    rep.witness = u6_witness(field, order, n, opt.limits);
    rep.certificate = n == 6 ? "u6-witness" : "embedded-u6-witness";
    if (rep.witness->conclusion == "NotCI") {
      rep.verdict = Verdict::NotCI;
      rep.conjectural = n > 6;
      rep.note = n > 6 ? "conjectural: U6 block embedded in U" + std::to_string(n) +
                             "; not certified by a completed basis run"
                       : "7-entry subsequence lies in a 6-generated ideal, so codim <= 6 < 7";
    } else {
      rep.verdict = Verdict::Incomplete;
      rep.note = "witness inconclusive: " + rep.witness->failure;
    }
    if (!opt.certify_with_groebner) return finish();
  }

  std::vector<Polynomial<F>> gens = sys.generator_polys();
  gens.insert(gens.end(), sys.unit_relations.begin(), sys.unit_relations.end());
  auto gb = buchberger(gens, sys.ring, order, opt.limits);
  rep.stats = gb.stats;
  if (!gb.complete) {
    if (!witness_route) {
      rep.verdict = Verdict::Incomplete;
      rep.note = gb.incomplete_reason;
    }
    return finish();
  }
  auto st = krull_dimension(gb);
  rep.dim = st.dim;
  rep.codim = st.codim;
  if (st.codim > target)
    throw std::logic_error("codimension exceeds generator count: Krull bound violated");
  rep.verdict = st.codim == target ? Verdict::CI : Verdict::NotCI;
  rep.certificate = "codimension";
  rep.conjectural = false;
  if (rep.verdict == Verdict::CI) {
    rep.note.clear();
    if (kind == GroupKind::Unipotent)
      rep.structure = "HR_*(Sigma_" + std::to_string(genus) + ", U_" + std::to_string(n) +
                      ") = HR_0 (x) exterior factor on " + std::to_string(n - 1) + " degree-1 generators";
  } else {
    rep.note = "codim " + std::to_string(st.codim) + " < " + std::to_string(target);
  }
  return finish();
}

/// Field dispatch for decide_ci.
inline CIReport decide_ci(GroupKind kind, int n, int genus, const FieldSpec& spec, const DecideOptions& opt = {}) {
  FieldSpec f = spec.resolve(group_nvars(kind, n, genus));
  if (f.kind == FieldSpec::Kind::Rationals) return decide_ci(kind, n, genus, RationalField{}, opt);
  return decide_ci(kind, n, genus, PrimeField(f.prime), opt);
}

inline WitnessReport u6_witness(const FieldSpec& spec, std::uint64_t order_seed, int n = 6, const Limits& limits = {}) {
  MonomialOrder order;
  order.seed = order_seed;
  FieldSpec f = spec.kind == FieldSpec::Kind::Auto ? FieldSpec::rationals() : spec;
  if (f.kind == FieldSpec::Kind::Rationals) return u6_witness(RationalField{}, order, n, limits);
  return u6_witness(PrimeField(f.prime), order, n, limits);
}

/// decide_ci for n = 2..max_n on one family, fanned out over `jobs` workers.
inline std::vector<CIReport> classify_table(GroupKind family, int max_n, int genus, const FieldSpec& field,
                                            const DecideOptions& opt = {}, unsigned jobs = 0) {
  if (max_n < 2) throw std::invalid_argument("max n must be at least 2");
  if (jobs == 0) jobs = std::max(1u, std::thread::hardware_concurrency());
  const std::size_t count = static_cast<std::size_t>(max_n - 1);
  std::vector<CIReport> out(count);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k = next++; k < count; k = next++)
      out[k] = decide_ci(family, static_cast<int>(k) + 2, genus, field, opt);
  };
  std::vector<std::future<void>> pool;
  for (unsigned t = 0; t < std::min<std::size_t>(jobs, count); ++t) pool.push_back(std::async(std::launch::async, worker));
  for (auto& f : pool) f.get();
  return out;
}

/// Whether GF(p) and Q give the same leading-term ideal. A mismatch flags an
/// unlucky prime.
struct ModularComparison {
  bool both_complete = false;
  bool agree = false;
  std::vector<std::string> rational_lt;
  std::vector<std::string> modular_lt;
};

inline ModularComparison compare_modular(const std::vector<Polynomial<RationalField>>& gens,
                                         const RingPtr<RationalField>& ring, std::uint32_t p,
                                         const MonomialOrder& order = {}, const Limits& limits = {}) {
  MonomialOrder o = order.permutation.size() == ring->nvars() ? order : MonomialOrder::from_seed(ring->nvars(), order.seed);
  auto mod_ring = Ring<PrimeField>::make(PrimeField(p), ring->variables());
  std::vector<Polynomial<PrimeField>> reduced;
  for (const auto& g : gens) reduced.push_back(change_ring(g, mod_ring));
  auto q = buchberger(gens, ring, o, limits);
  auto m = buchberger(reduced, mod_ring, o, limits);
  ModularComparison c;
  c.both_complete = q.complete && m.complete;
  if (!c.both_complete) return c;
  c.rational_lt = leading_ideal_signature(q);
  c.modular_lt = leading_ideal_signature(m);
  c.agree = c.rational_lt == c.modular_lt;
  return c;
}

/// compare_modular on a commutator system's generators plus unit relations.
inline ModularComparison compare_modular(GroupKind kind, int n, int genus, std::uint32_t p,
                                         const MonomialOrder& order = {}, const Limits& limits = {}) {
  auto sys = commutator_word(RationalField{}, kind, n, genus);
  auto gens = sys.generator_polys();
  gens.insert(gens.end(), sys.unit_relations.begin(), sys.unit_relations.end());
  return compare_modular(gens, sys.ring, p, order, limits);
}

}  // namespace commci

#endif
