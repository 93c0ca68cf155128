#include <random>

#include <gtest/gtest.h>

#include "commci/cidecide.hpp"
#include "commci/groebner.hpp"
#include "commci/groupmat.hpp"
#include "oracles.hpp"
#include "test_support.hpp"

using namespace commci;
using Q = RationalField;
using PQ = Polynomial<Q>;
using oracle::brute_force_dimension;
using oracle::fixture_gens;

namespace {

RingPtr<Q> xyz() { return Ring<Q>::make({}, {{"x", 1}, {"y", 1}, {"z", 1}}); }

// Independent checks of the basis invariants: every S-polynomial reduces to
// zero, elements are monic, and no term of any element is divisible by the
// leading monomial of another.
template <class F>
void expect_reduced_groebner(const GroebnerBasis<F>& gb) {
  ASSERT_TRUE(gb.complete);
  const auto& b = gb.basis;
  for (std::size_t i = 0; i < b.size(); ++i) {
    EXPECT_TRUE(b[i].field().is_one(b[i].leading_coeff()));
    for (std::size_t j = 0; j < b.size(); ++j) {
      if (i == j) continue;
      Monomial lm = b[j].leading_monomial();
      for (std::size_t k = 0; k < b[i].size(); ++k) EXPECT_FALSE(lm.divides(b[i].term_monomial(k)));
    }
    for (std::size_t j = i + 1; j < b.size(); ++j)
      EXPECT_TRUE(normal_form(s_polynomial(b[i], b[j]), b).is_zero()) << "S(" << i << "," << j << ")";
  }
  for (std::size_t k = 1; k < b.size(); ++k)
    EXPECT_LT(compare_grevlex(b[k - 1].exponents(0), b[k].exponents(0)), 0);
}

struct Fixture {
  GroupKind kind;
  int n;
  int genus;
  bool rational;
  long expected_codim;
};

const std::vector<Fixture>& fixtures() {
  static const std::vector<Fixture> f{
      {GroupKind::Unipotent, 2, 1, true, 0}, {GroupKind::Unipotent, 3, 1, true, 1},
      {GroupKind::Unipotent, 4, 1, true, 3}, {GroupKind::Unipotent, 5, 1, false, 6},
      {GroupKind::Borel, 2, 1, true, 5},     {GroupKind::Borel, 3, 1, false, 9},
      {GroupKind::Unipotent, 3, 2, true, 1}, {GroupKind::Unipotent, 4, 2, false, 3},
  };
  return f;
}

template <class F>
long fixture_codim(const F& field, const Fixture& fx, std::uint64_t seed) {
  auto sys = commutator_word(field, fx.kind, fx.n, fx.genus);
  auto gb = buchberger(fixture_gens(sys), sys.ring, MonomialOrder::from_seed(sys.ring->nvars(), seed));
  EXPECT_TRUE(gb.complete);
  return krull_dimension(gb).codim;
}

}  // namespace

TEST(NormalForm, Examples) {
  auto r = xyz();
  auto g = parse_polynomial(r, "x*y - z^2 + 3");
  EXPECT_TRUE(normal_form(g, {g}).is_zero());
  auto x = PQ::variable(r, "x");
  EXPECT_TRUE(normal_form(x * x, {x}).is_zero());
  // x^2*y + y  ->  x*(xy) -> x*1 -> x + y
  auto two = Ring<Q>::make({}, {{"x", 1}, {"y", 1}});
  EXPECT_EQ(normal_form(parse_polynomial(two, "x^2*y + y"), {parse_polynomial(two, "x*y - 1")}),
            parse_polynomial(two, "x + y"));
  EXPECT_EQ(normal_form(PQ(r), {g}), PQ(r));
}

TEST(Buchberger, TrivialBases) {
  auto sys = commutator_word(Q{}, GroupKind::Unipotent, 3, 1);
  auto gb = buchberger(sys.generator_polys(), sys.ring);
  ASSERT_TRUE(gb.complete);
  ASSERT_EQ(gb.basis.size(), 1u);
  EXPECT_EQ(gb.basis[0], sys.generators[0].second.monic());

  auto r = Ring<Q>::make({}, {{"x", 1}, {"y", 1}});
  auto xy = buchberger(std::vector<PQ>{PQ::variable(r, "x"), PQ::variable(r, "y")}, r);
  ASSERT_EQ(xy.basis.size(), 2u);
  EXPECT_EQ(to_string(xy.basis[0]), "y");
  EXPECT_EQ(to_string(xy.basis[1]), "x");
  auto st = krull_dimension(xy);
  EXPECT_EQ(st.dim, 0);
  EXPECT_EQ(st.codim, 2);
}

TEST(Buchberger, ZeroGeneratorsAreDropped) {
  auto r = xyz();
  auto gb = buchberger(std::vector<PQ>{PQ(r), PQ::variable(r, "z"), PQ(r)}, r);
  ASSERT_EQ(gb.basis.size(), 1u);
  EXPECT_EQ(krull_dimension(gb).dim, 2);
}

TEST(Buchberger, UnitIdeal) {
  auto r = xyz();
  auto gb = buchberger(std::vector<PQ>{parse_polynomial(r, "x*y - 1"), PQ::variable(r, "x")}, r);
  EXPECT_TRUE(gb.is_unit_ideal());
  EXPECT_EQ(krull_dimension(gb).dim, -1);
}

TEST(Buchberger, UnipotentFiveDimension) {
  auto sys = commutator_word(Q{}, GroupKind::Unipotent, 5, 1);
  auto gb = buchberger(sys.generator_polys(), sys.ring);
  ASSERT_TRUE(gb.complete);
  auto st = krull_dimension(gb);
  EXPECT_EQ(st.nvars, 20u);
  EXPECT_EQ(st.dim, 14);
  EXPECT_EQ(st.codim, 6);
}

TEST(Buchberger, LimitsReportIncomplete) {
  auto sys = commutator_word(PrimeField{}, GroupKind::Borel, 3, 1);
  Limits tight;
  tight.degree_cap = 2;
  auto gb = buchberger(fixture_gens(sys), sys.ring, tight);
  EXPECT_FALSE(gb.complete);
  EXPECT_FALSE(gb.incomplete_reason.empty());
  EXPECT_THROW(krull_dimension(gb), IncompleteComputation);

  Limits instant;
  instant.timeout_seconds = 1e-9;
  auto gb2 = buchberger(fixture_gens(sys), sys.ring, instant);
  EXPECT_FALSE(gb2.complete);
}

TEST(KrullDimension, EmptyBasisAndUnipotentThree) {
  auto r = Ring<Q>::make({}, {{"a", 1}, {"b", 1}, {"c", 1}, {"d", 1}, {"e", 1}, {"f", 1}});
  auto zero = buchberger(std::vector<PQ>{}, r);
  EXPECT_EQ(krull_dimension(zero).dim, 6);
  EXPECT_EQ(krull_dimension(zero).codim, 0);

  auto sys = commutator_word(Q{}, GroupKind::Unipotent, 3, 1);
  auto gb = buchberger(sys.generator_polys(), sys.ring);
  EXPECT_EQ(krull_dimension(gb).dim, 5);
  EXPECT_EQ(brute_force_dimension(6, gb.leading_monomials()), 5);
}

TEST(KrullDimension, AgreesWithSubsetEnumeration) {
  auto g = testutil::rng(11);
  std::uniform_int_distribution<int> nv(1, 12), ng(0, 6), ex(0, 2);
  for (int trial = 0; trial < 20; ++trial) {
    std::size_t n = static_cast<std::size_t>(nv(g));
    std::vector<Monomial> monos;
    int count = ng(g);
    for (int k = 0; k < count; ++k) {
      Monomial m(n);
      std::bernoulli_distribution pick(2.0 / static_cast<double>(n));
      for (std::size_t v = 0; v < n; ++v)
        if (pick(g)) m[v] = static_cast<exp_t>(1 + ex(g));
      monos.push_back(m);
    }
    auto st = monomial_ideal_dimension(n, monos);
    EXPECT_EQ(st.dim, brute_force_dimension(n, monos)) << "trial " << trial;
    EXPECT_EQ(st.codim, static_cast<long>(n) - st.dim);
  }
}

TEST(KrullDimension, FixtureLeadingIdealsAgreeWithSubsetEnumeration) {
  for (const auto& fx : fixtures()) {
    auto sys = commutator_word(Q{}, fx.kind, fx.n, fx.genus);
    if (sys.ring->nvars() > 12) continue;
    auto gb = buchberger(fixture_gens(sys), sys.ring);
    EXPECT_EQ(krull_dimension(gb).dim, brute_force_dimension(sys.ring->nvars(), gb.leading_monomials()));
  }
}

TEST(Membership, Examples) {
  auto sys = commutator_word(Q{}, GroupKind::Unipotent, 3, 1);
  auto gens = sys.generator_polys();
  EXPECT_TRUE(ideal_membership(PQ(sys.ring), gens));
  EXPECT_FALSE(ideal_membership(PQ::variable(sys.ring, "x_1_1_2"), gens));
  EXPECT_EQ(normal_form(PQ::variable(sys.ring, "x_1_1_2"), buchberger(gens, sys.ring).basis),
            PQ::variable(sys.ring, "x_1_1_2"));
}

TEST(Membership, ConstructedMembers) {
  auto r = xyz();
  auto g1 = parse_polynomial(r, "x^2 - y*z");
  auto g2 = parse_polynomial(r, "x*y - z^2");
  auto g = testutil::rng(12);
  std::uniform_int_distribution<int> c(-5, 5), e(0, 2);
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<std::pair<mpq_class, Monomial>> terms;
    for (int k = 0; k < 4; ++k) {
      Monomial m(3);
      for (std::size_t v = 0; v < 3; ++v) m[v] = static_cast<exp_t>(e(g));
      terms.emplace_back(c(g), m);
    }
    auto q = PQ::from_terms(r, terms);
    EXPECT_TRUE(ideal_membership(g1 * q + g2, {g1, g2}));
    EXPECT_FALSE(ideal_membership(g1 * q + g2 + PQ::variable(r, "z"), {g1, g2}));
  }
}

TEST(Membership, UnipotentSixBoundingIdeal) {
  auto sys = commutator_word(PrimeField{}, GroupKind::Unipotent, 6, 1);
  using P = Polynomial<PrimeField>;
  std::vector<P> j;
  std::map<std::string, P> kill;
  for (const char* v : {"x_1_2_3", "x_1_4_5", "y_1_2_3", "y_1_4_5"}) {
    j.push_back(P::variable(sys.ring, v));
    kill.emplace(v, P(sys.ring));
  }
  j.push_back(substitute(sys.generator_at({1, 4}), kill));
  j.push_back(substitute(sys.generator_at({3, 6}), kill));
  auto gb = buchberger(j, sys.ring);
  ASSERT_TRUE(gb.complete);
  EXPECT_TRUE(normal_form(sys.generator_at({1, 4}), gb.basis).is_zero());
  EXPECT_TRUE(normal_form(sys.generator_at({1, 3}), gb.basis).is_zero());
  EXPECT_FALSE(normal_form(sys.generator_at({1, 5}), gb.basis).is_zero());
}

TEST(Buchberger, FixtureBasesAreReducedAndClosedUnderSPairs) {
  for (const auto& fx : fixtures()) {
    SCOPED_TRACE(group_name(fx.kind) + std::to_string(fx.n) + " g=" + std::to_string(fx.genus));
    if (fx.rational) {
      auto sys = commutator_word(Q{}, fx.kind, fx.n, fx.genus);
      auto gb = buchberger(fixture_gens(sys), sys.ring);
      if (gb.basis.size() <= 40) expect_reduced_groebner(gb);
      EXPECT_EQ(count_nonreducing_spairs(gb.basis), 0u);
    } else {
      auto sys = commutator_word(PrimeField{}, fx.kind, fx.n, fx.genus);
      auto gb = buchberger(fixture_gens(sys), sys.ring);
      if (gb.basis.size() <= 40) expect_reduced_groebner(gb);
      EXPECT_EQ(count_nonreducing_spairs(gb.basis), 0u);
    }
  }
}

TEST(Buchberger, CodimensionIsOrderIndependent) {
  auto g = testutil::rng(13);
  std::uniform_int_distribution<std::uint64_t> seeds(1, 1u << 30);
  for (const auto& fx : fixtures()) {
    std::uint64_t s1 = seeds(g), s2 = seeds(g);
    SCOPED_TRACE(group_name(fx.kind) + std::to_string(fx.n) + " g=" + std::to_string(fx.genus));
    if (fx.rational) {
      EXPECT_EQ(fixture_codim(Q{}, fx, 0), fx.expected_codim);
      EXPECT_EQ(fixture_codim(Q{}, fx, s1), fx.expected_codim);
      EXPECT_EQ(fixture_codim(Q{}, fx, s2), fx.expected_codim);
    } else {
      EXPECT_EQ(fixture_codim(PrimeField{}, fx, 0), fx.expected_codim);
      EXPECT_EQ(fixture_codim(PrimeField{}, fx, s1), fx.expected_codim);
      EXPECT_EQ(fixture_codim(PrimeField{}, fx, s2), fx.expected_codim);
    }
  }
}

TEST(Buchberger, KrullPrincipalIdealBound) {
  for (const auto& fx : fixtures()) {
    auto sys = commutator_word(PrimeField{}, fx.kind, fx.n, fx.genus);
    long r = static_cast<long>(sys.generators.size() + sys.unit_relations.size());
    EXPECT_LE(fixture_codim(PrimeField{}, fx, 0), r);
  }
}

TEST(Modular, RationalFixturesAgreeModP) {
  for (const auto& fx : fixtures()) {
    if (!fx.rational) continue;
    auto c = compare_modular(fx.kind, fx.n, fx.genus, kDefaultPrime);
    ASSERT_TRUE(c.both_complete);
    EXPECT_TRUE(c.agree) << group_name(fx.kind) << fx.n;
    auto d = compare_modular(fx.kind, fx.n, fx.genus, kDefaultPrime, MonomialOrder{{}, 7});
    EXPECT_TRUE(d.agree);
  }
}

TEST(Modular, UnluckyPrimeIsFlagged) {
  auto r = Ring<Q>::make({}, {{"x", 1}, {"y", 1}});
  std::vector<PQ> gens{parse_polynomial(r, "7*x^2 + y^2"), parse_polynomial(r, "x*y")};
  auto bad = compare_modular(gens, r, 7);
  ASSERT_TRUE(bad.both_complete);
  EXPECT_FALSE(bad.agree);
  auto good = compare_modular(gens, r, 32003);
  EXPECT_TRUE(good.agree);
}

TEST(Stats, AreRecorded) {
  auto sys = commutator_word(Q{}, GroupKind::Unipotent, 4, 1);
  auto gb = buchberger(sys.generator_polys(), sys.ring);
  EXPECT_GE(gb.stats.max_degree, 2);
  EXPECT_GE(gb.stats.seconds, 0.0);
  std::string dump = dump_basis(gb);
  EXPECT_EQ(static_cast<std::size_t>(std::count(dump.begin(), dump.end(), '\n')), gb.basis.size());
}
