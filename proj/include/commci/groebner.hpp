#ifndef COMMCI_GROEBNER_HPP
#define COMMCI_GROEBNER_HPP

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "commci/polynomial.hpp"

namespace commci {

/// Resource limits for a basis computation. Hitting either makes the result
/// incomplete; an incomplete basis never yields a verdict.
struct Limits {
  int degree_cap = 30;
  double timeout_seconds = 3600.0;
  std::size_t slice_cap = 2'000'000;  // Koszul slice basis size
};

class IncompleteComputation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Graded reverse lexicographic order on a permutation of the ring variables.
/// Position k of the permuted ring holds original variable permutation[k].
struct MonomialOrder {
  std::vector<std::size_t> permutation;
  std::uint64_t seed = 0;

  static MonomialOrder identity(std::size_t n) {
    MonomialOrder o;
    o.permutation.resize(n);
    std::iota(o.permutation.begin(), o.permutation.end(), 0);
    return o;
  }
  /// Seed 0 is the identity order.
  static MonomialOrder from_seed(std::size_t n, std::uint64_t seed) {
    MonomialOrder o = identity(n);
    o.seed = seed;
    if (seed != 0) {
      std::mt19937_64 rng(seed);
      std::shuffle(o.permutation.begin(), o.permutation.end(), rng);
    }
    return o;
  }
  std::string describe() const { return seed == 0 ? "grevlex" : "grevlex:seed=" + std::to_string(seed); }

  template <class F>
  RingPtr<F> apply(const RingPtr<F>& ring) const {
    return seed == 0 && is_identity_() ? ring : ring->permuted(permutation);
  }

 private:
  bool is_identity_() const {
    for (std::size_t k = 0; k < permutation.size(); ++k)
      if (permutation[k] != k) return false;
    return true;
  }
};

/// Moves every polynomial into `order`'s permuted ring.
template <class F>
std::vector<Polynomial<F>> in_order(const std::vector<Polynomial<F>>& polys, const RingPtr<F>& ring,
                                    const MonomialOrder& order) {
  auto target = order.apply(ring);
  if (target == ring) return polys;
  std::vector<Polynomial<F>> out;
  out.reserve(polys.size());
  for (const auto& p : polys) out.push_back(change_ring(p, target));
  return out;
}

namespace detail {

inline std::uint64_t support_mask(const exp_t* raw, std::size_t stride) {
  std::uint64_t m = 0;
  for (std::size_t v = 1; v < stride; ++v)
    if (raw[v]) m |= std::uint64_t{1} << ((v - 1) & 63);
  return m;
}

inline bool divides_raw(const exp_t* a, const exp_t* b, std::size_t stride) {
  if (a[0] > b[0]) return false;
  for (std::size_t v = 1; v < stride; ++v)
    if (a[v] > b[v]) return false;
  return true;
}

inline void lcm_raw(const exp_t* a, const exp_t* b, exp_t* out, std::size_t stride) {
  long d = 0;
  for (std::size_t v = 1; v < stride; ++v) {
    out[v] = std::max(a[v], b[v]);
    d += out[v];
  }
  out[0] = static_cast<exp_t>(d);
}

inline void quotient_raw(const exp_t* num, const exp_t* den, exp_t* out, std::size_t stride) {
  for (std::size_t v = 0; v < stride; ++v) out[v] = static_cast<exp_t>(num[v] - den[v]);
}

inline bool coprime_raw(const exp_t* a, const exp_t* b, std::size_t stride) {
  for (std::size_t v = 1; v < stride; ++v)
    if (a[v] && b[v]) return false;
  return true;
}

/// Division by a list of polynomials, tried in list order.
template <class F>
class Reducer {
 public:
  void add(const Polynomial<F>* p) {
    if (p->is_zero()) return;
    divisors_.push_back(p);
    masks_.push_back(support_mask(p->raw_term(0), p->stride()));
  }
  void clear() {
    divisors_.clear();
    masks_.clear();
  }

  const Polynomial<F>* find(const exp_t* t, std::size_t stride) const {
    std::uint64_t m = support_mask(t, stride);
    for (std::size_t k = 0; k < divisors_.size(); ++k) {
      if (masks_[k] & ~m) continue;
      if (divides_raw(divisors_[k]->raw_term(0), t, stride)) return divisors_[k];
    }
    return nullptr;
  }

  /// Full reduction (every term) unless `top_only`.
  Polynomial<F> reduce(Polynomial<F> p, bool top_only = false) const {
    const std::size_t s = p.stride();
    const F& fld = p.field();
    std::vector<exp_t> q(s);
    std::size_t head = 0;  // terms [0, head) are irreducible
    while (head < p.size()) {
      const exp_t* t = p.raw_term(head);
      const Polynomial<F>* g = find(t, s);
      if (!g) {
        if (top_only) break;
        ++head;
        continue;
      }
      quotient_raw(t, g->raw_term(0), q.data(), s);
      auto c = fld.neg(fld.div(p.coeff(head), g->leading_coeff()));
      p = Polynomial<F>::axpy(p, c, q.data(), *g);
    }
    return p;
  }

 private:
  std::vector<const Polynomial<F>*> divisors_;
  std::vector<std::uint64_t> masks_;
};

}  // namespace detail

/// Remainder of multivariate division of p by G (divisors tried in order).
template <class F>
Polynomial<F> normal_form(const Polynomial<F>& p, const std::vector<Polynomial<F>>& divisors) {
  detail::Reducer<F> red;
  for (const auto& g : divisors) {
    p.check_ring_(g);
    red.add(&g);
  }
  return red.reduce(p);
}

struct GroebnerStats {
  std::size_t pairs = 0;
  std::size_t zero_reductions = 0;
  long max_degree = 0;
  double seconds = 0.0;
};

template <class F>
struct GroebnerBasis {
  RingPtr<F> ring;
  std::vector<Polynomial<F>> basis;  // reduced, monic, sorted by leading monomial ascending
  GroebnerStats stats;
  bool complete = false;
  std::string incomplete_reason;

  bool is_unit_ideal() const {
    return basis.size() == 1 && basis.front().is_constant() && !basis.front().is_zero();
  }
  std::vector<Monomial> leading_monomials() const {
    std::vector<Monomial> out;
    for (const auto& g : basis) out.push_back(g.leading_monomial());
    return out;
  }
};

/// Buchberger's algorithm with the normal selection strategy and the
/// Gebauer-Moeller installation of the product and chain criteria.
template <class F>
GroebnerBasis<F> buchberger(const std::vector<Polynomial<F>>& gens, const RingPtr<F>& ring,
                            const Limits& limits = {}) {
  using Clock = std::chrono::steady_clock;
  const auto start = Clock::now();
  const std::size_t s = ring->nvars() + 1;

  GroebnerBasis<F> out;
  out.ring = ring;

  std::vector<Polynomial<F>> store;  // every basis element ever added
  std::vector<bool> active;
  detail::Reducer<F> reducer;
  struct Pair {
    std::size_t i, j;
    std::vector<exp_t> lcm;
  };
  std::vector<Pair> pairs;

  auto elapsed = [&] { return std::chrono::duration<double>(Clock::now() - start).count(); };
  auto lm = [&](std::size_t k) { return store[k].raw_term(0); };

  auto rebuild_reducer = [&] {
    reducer.clear();
    for (std::size_t k = 0; k < store.size(); ++k)
      if (active[k]) reducer.add(&store[k]);
  };

  auto insert = [&](Polynomial<F> h) {
    const std::size_t hi = store.size();
    store.push_back(std::move(h));
    active.push_back(false);
    const exp_t* lh = lm(hi);
    std::vector<exp_t> tmp(s);

    // candidate pairs (g, h)
    std::vector<std::size_t> cand;
    std::vector<std::vector<exp_t>> cand_lcm;
    for (std::size_t g = 0; g < hi; ++g) {
      if (!active[g]) continue;
      cand.push_back(g);
      detail::lcm_raw(lm(g), lh, tmp.data(), s);
      cand_lcm.push_back(tmp);
    }
    std::vector<std::size_t> kept;  // indices into cand
    for (std::size_t a = 0; a < cand.size(); ++a) {
      bool keep = detail::coprime_raw(lm(cand[a]), lh, s);
      if (!keep) {
        keep = true;
        for (std::size_t b = a + 1; b < cand.size() && keep; ++b)
          if (detail::divides_raw(cand_lcm[b].data(), cand_lcm[a].data(), s)) keep = false;
        for (std::size_t b : kept)
          if (keep && detail::divides_raw(cand_lcm[b].data(), cand_lcm[a].data(), s)) keep = false;
      }
      if (keep) kept.push_back(a);
    }
    // chain criterion on old pairs
    std::vector<Pair> next;
    next.reserve(pairs.size() + kept.size());
    for (auto& p : pairs) {
      bool drop = false;
      if (detail::divides_raw(lh, p.lcm.data(), s)) {
        detail::lcm_raw(lm(p.i), lh, tmp.data(), s);
        bool ne1 = compare_grevlex(tmp.data(), p.lcm.data(), s) != 0;
        detail::lcm_raw(lm(p.j), lh, tmp.data(), s);
        bool ne2 = compare_grevlex(tmp.data(), p.lcm.data(), s) != 0;
        drop = ne1 && ne2;
      }
      if (!drop) next.push_back(std::move(p));
    }
    for (std::size_t a : kept)
      if (!detail::coprime_raw(lm(cand[a]), lh, s)) next.push_back({cand[a], hi, cand_lcm[a]});
    pairs = std::move(next);

    for (std::size_t g = 0; g < hi; ++g)
      if (active[g] && detail::divides_raw(lh, lm(g), s)) active[g] = false;
    active[hi] = true;
    rebuild_reducer();
  };

  // seed with the (inter-reduced as we go) generators, smallest first
  std::vector<Polynomial<F>> input;
  for (const auto& g : gens) {
    if (!same_ring(g.ring(), ring)) throw RingMismatch();
    if (!g.is_zero()) input.push_back(g);
  }
  std::sort(input.begin(), input.end(), [&](const auto& a, const auto& b) {
    return compare_grevlex(a.raw_term(0), b.raw_term(0), s) < 0;
  });
  for (auto& g : input) {
    auto h = reducer.reduce(g);
    if (h.is_zero()) continue;
    out.stats.max_degree = std::max(out.stats.max_degree, h.total_degree());
    insert(h.monic());
  }

  while (!pairs.empty()) {
    if (elapsed() > limits.timeout_seconds) {
      out.incomplete_reason = "timeout after " + std::to_string(limits.timeout_seconds) + "s";
      out.stats.seconds = elapsed();
      return out;
    }
    std::size_t best = 0;
    for (std::size_t k = 1; k < pairs.size(); ++k) {
      int c = compare_grevlex(pairs[k].lcm.data(), pairs[best].lcm.data(), s);
      if (c < 0 || (c == 0 && std::tie(pairs[k].j, pairs[k].i) < std::tie(pairs[best].j, pairs[best].i)))
        best = k;
    }
    Pair p = std::move(pairs[best]);
    pairs.erase(pairs.begin() + static_cast<std::ptrdiff_t>(best));
    if (p.lcm[0] > limits.degree_cap) {
      out.incomplete_reason = "degree cap " + std::to_string(limits.degree_cap) + " exceeded";
      out.stats.seconds = elapsed();
      return out;
    }
    ++out.stats.pairs;
    out.stats.max_degree = std::max<long>(out.stats.max_degree, p.lcm[0]);

    std::vector<exp_t> qi(s), qj(s);
    detail::quotient_raw(p.lcm.data(), lm(p.i), qi.data(), s);
    detail::quotient_raw(p.lcm.data(), lm(p.j), qj.data(), s);
    const F& fld = ring->field();
    auto spoly = Polynomial<F>::axpy(store[p.i].mul_term(fld.one(), qi.data()), fld.neg(fld.one()), qj.data(),
                                     store[p.j]);
    auto h = reducer.reduce(std::move(spoly));
    if (h.is_zero()) {
      ++out.stats.zero_reductions;
      continue;
    }
    insert(h.monic());
  }

  // minimal basis, then inter-reduce
  std::vector<Polynomial<F>> minimal;
  for (std::size_t k = 0; k < store.size(); ++k)
    if (active[k]) minimal.push_back(store[k]);
  std::vector<Polynomial<F>> reduced;
  for (std::size_t k = 0; k < minimal.size(); ++k) {
    detail::Reducer<F> others;
    for (std::size_t l = 0; l < minimal.size(); ++l)
      if (l != k) others.add(&minimal[l]);
    Polynomial<F> lead = Polynomial<F>::monomial(ring, minimal[k].leading_coeff(), minimal[k].leading_monomial());
    auto rest = others.reduce(minimal[k].tail());
    reduced.push_back((lead + rest).monic());
  }
  std::sort(reduced.begin(), reduced.end(), [&](const auto& a, const auto& b) {
    return compare_grevlex(a.raw_term(0), b.raw_term(0), s) < 0;
  });
  out.basis = std::move(reduced);
  out.complete = true;
  out.stats.seconds = elapsed();
  return out;
}

template <class F>
GroebnerBasis<F> buchberger(const std::vector<Polynomial<F>>& gens, const RingPtr<F>& ring,
                            const MonomialOrder& order, const Limits& limits = {}) {
  return buchberger(in_order(gens, ring, order), order.apply(ring), limits);
}

/// S-polynomial of two basis elements.
template <class F>
Polynomial<F> s_polynomial(const Polynomial<F>& f, const Polynomial<F>& g) {
  const std::size_t s = f.stride();
  std::vector<exp_t> l(s), qf(s), qg(s);
  detail::lcm_raw(f.raw_term(0), g.raw_term(0), l.data(), s);
  detail::quotient_raw(l.data(), f.raw_term(0), qf.data(), s);
  detail::quotient_raw(l.data(), g.raw_term(0), qg.data(), s);
  const F& fld = f.field();
  return Polynomial<F>::axpy(f.mul_term(fld.inv(f.leading_coeff()), qf.data()),
                             fld.neg(fld.inv(g.leading_coeff())), qg.data(), g);
}

/// Number of basis pairs whose S-polynomial does not reduce to zero.
template <class F>
std::size_t count_nonreducing_spairs(const std::vector<Polynomial<F>>& basis) {
  std::size_t bad = 0;
  for (std::size_t i = 0; i < basis.size(); ++i)
    for (std::size_t j = i + 1; j < basis.size(); ++j)
      if (!normal_form(s_polynomial(basis[i], basis[j]), basis).is_zero()) ++bad;
  return bad;
}

// ---------------------------------------------------------------------------
// Dimension

struct IdealStats {
  std::size_t nvars = 0;
  long dim = 0;    // Krull dimension of the quotient, -1 for the unit ideal
  long codim = 0;  // nvars - dim
};

namespace detail {

struct HittingSetSearch {
  std::vector<std::vector<std::size_t>> sets;
  std::vector<int> state;  // 0 free, 1 chosen, -1 excluded
  std::size_t best;

  bool hit(const std::vector<std::size_t>& set) const {
    for (std::size_t v : set)
      if (state[v] == 1) return true;
    return false;
  }

  void run(std::size_t chosen) {
    if (chosen >= best) return;
    // smallest unhit set, counting only free variables
    const std::vector<std::size_t>* pick = nullptr;
    std::size_t pick_free = 0;
    for (const auto& set : sets) {
      if (hit(set)) continue;
      std::size_t free = 0;
      for (std::size_t v : set) free += state[v] == 0;
      if (free == 0) return;  // dead branch
      if (!pick || free < pick_free) {
        pick = &set;
        pick_free = free;
      }
    }
    if (!pick) {
      best = chosen;
      return;
    }
    if (chosen + 1 >= best) return;
    // lower bound: greedily packed disjoint unhit sets
    {
      std::vector<char> used(state.size(), 0);
      std::size_t lb = 0;
      for (const auto& set : sets) {
        if (hit(set)) continue;
        bool disjoint = true;
        for (std::size_t v : set)
          if (state[v] == 0 && used[v]) disjoint = false;
        if (!disjoint) continue;
        ++lb;
        for (std::size_t v : set)
          if (state[v] == 0) used[v] = 1;
      }
      if (chosen + lb >= best) return;
    }
    std::vector<std::size_t> excluded;
    for (std::size_t v : *pick) {
      if (state[v] != 0) continue;
      state[v] = 1;
      run(chosen + 1);
      state[v] = -1;
      excluded.push_back(v);
    }
    for (std::size_t v : excluded) state[v] = 0;
  }
};

}  // namespace detail

/// Krull dimension of k[x]/(monomials): the largest variable set containing
/// no monomial's support, computed as nvars minus a minimum hitting set.
inline IdealStats monomial_ideal_dimension(std::size_t nvars, const std::vector<Monomial>& monomials) {
  std::vector<std::vector<std::size_t>> supports;
  for (const auto& m : monomials) {
    std::vector<std::size_t> s;
    for (std::size_t v = 0; v < m.size(); ++v)
      if (m[v]) s.push_back(v);
    if (s.empty()) return {nvars, -1, static_cast<long>(nvars) + 1};
    supports.push_back(std::move(s));
  }
  // keep inclusion-minimal supports
  std::sort(supports.begin(), supports.end(), [](const auto& a, const auto& b) { return a.size() < b.size(); });
  std::vector<std::vector<std::size_t>> minimal;
  for (const auto& s : supports) {
    bool redundant = false;
    for (const auto& m : minimal)
      if (std::includes(s.begin(), s.end(), m.begin(), m.end())) {
        redundant = true;
        break;
      }
    if (!redundant) minimal.push_back(s);
  }
  detail::HittingSetSearch search{std::move(minimal), std::vector<int>(nvars, 0), nvars + 1};
  search.run(0);
  long codim = static_cast<long>(search.best);
  return {nvars, static_cast<long>(nvars) - codim, codim};
}

template <class F>
IdealStats krull_dimension(const GroebnerBasis<F>& g) {
  if (!g.complete) throw IncompleteComputation("dimension of an incomplete basis: " + g.incomplete_reason);
  return monomial_ideal_dimension(g.ring->nvars(), g.leading_monomials());
}

/// p in (gens)? Throws IncompleteComputation when the basis run hits a limit.
template <class F>
bool ideal_membership(const Polynomial<F>& p, const std::vector<Polynomial<F>>& gens, const Limits& limits = {}) {
  if (p.is_zero()) return true;
  auto g = buchberger(gens, p.ring(), limits);
  if (!g.complete) throw IncompleteComputation("membership undecided: " + g.incomplete_reason);
  return normal_form(p, g.basis).is_zero();
}

/// Leading monomials rendered by variable name, sorted; comparable across
/// fields as long as the variable order agrees.
template <class F>
std::vector<std::string> leading_ideal_signature(const GroebnerBasis<F>& g) {
  std::vector<std::string> out;
  for (const auto& p : g.basis) out.push_back(monomial_string(*g.ring, p.exponents(0)));
  std::sort(out.begin(), out.end());
  return out;
}

/// Basis dump: one polynomial per line, leading monomial ascending.
template <class F>
std::string dump_basis(const GroebnerBasis<F>& g) {
  std::string out;
  for (const auto& p : g.basis) out += to_string(p) + "\n";
  return out;
}

}  // namespace commci

#endif
