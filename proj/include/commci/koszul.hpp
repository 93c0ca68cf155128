#ifndef COMMCI_KOSZUL_HPP
#define COMMCI_KOSZUL_HPP

#include <cstdint>
#include <cstring>
#include <map>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "commci/groebner.hpp"
#include "commci/groupmat.hpp"
#include "commci/linalg.hpp"
#include "commci/polynomial.hpp"

namespace commci {

/// Dimensions around H_i at internal weight w.
/// chain_dims = {dim C_{i-1}, dim C_i, dim C_{i+1}} at that weight.
struct KoszulSliceReport {
  int i = 0;
  long w = 0;
  std::vector<std::size_t> chain_dims;
  long h_dim = 0;
  bool complete = true;
  std::string status = "complete";

  bool operator==(const KoszulSliceReport&) const = default;
};

/// Koszul complex K(f_1..f_r) over a positively weighted ring. Exterior
/// generator t_k sits in homological degree 1 and internal weight w_k, and
/// d(t_k) = f_k.
template <class F>
class KoszulComplex {
 public:
  struct Generator {
    Polynomial<F> poly;
    int weight;
  };

  KoszulComplex(RingPtr<F> ring, std::vector<Generator> gens) : ring_(std::move(ring)), gens_(std::move(gens)) {
    if (!ring_->positively_weighted())
      throw std::invalid_argument("Koszul slices need a positively weighted ring");
    if (gens_.size() > 63) throw std::invalid_argument("at most 63 Koszul generators");
    for (const auto& g : gens_) {
      if (!same_ring(g.poly.ring(), ring_)) throw RingMismatch();
      if (g.weight < 1) throw std::invalid_argument("generator weight must be positive");
      Weight w = weight_of(g.poly);
      if (!(w.is_bottom() || w == Weight::of(g.weight)))
        throw std::invalid_argument("generator is not homogeneous of its declared weight");
    }
    init_fine_grading_();
  }

  const RingPtr<F>& ring() const { return ring_; }
  const std::vector<Generator>& generators() const { return gens_; }
  std::size_t length() const { return gens_.size(); }
  bool uses_fine_grading() const { return fine_; }

  /// Same complex with `count` zero generators of the given weight appended.
  KoszulComplex with_zero_generators(std::size_t count, int weight = 1) const {
    auto g = gens_;
    for (std::size_t k = 0; k < count; ++k) g.push_back({Polynomial<F>(ring_), weight});
    return KoszulComplex(ring_, std::move(g));
  }

  /// Monomials of internal weight w, in enumeration order.
  std::vector<Monomial> monomials_of_weight(long w) const {
    std::vector<Monomial> out;
    if (w < 0) return out;
    Monomial cur(ring_->nvars());
    enumerate_(0, w, cur, out);
    return out;
  }

  /// dim H_i at internal weight w by exact ranks of d_i and d_{i+1}.
  KoszulSliceReport homology_slice(int i, long w, const Limits& limits = {}) const {
    if (i < 0 || w < 0) throw std::invalid_argument("homological degree and weight must be nonnegative");
    KoszulSliceReport rep;
    rep.i = i;
    rep.w = w;
    Slice lower = chain_slice_(i - 1, w), mid = chain_slice_(i, w), upper = chain_slice_(i + 1, w);
    rep.chain_dims = {lower.size(), mid.size(), upper.size()};
    if (lower.size() + mid.size() + upper.size() > limits.slice_cap) {
      rep.complete = false;
      rep.status = "incomplete: slice basis exceeds cap " + std::to_string(limits.slice_cap);
      return rep;
    }
    std::size_t r_in = differential_rank_(mid, lower);
    std::size_t r_out = differential_rank_(upper, mid);
    rep.h_dim = static_cast<long>(mid.size()) - static_cast<long>(r_in) - static_cast<long>(r_out);
    return rep;
  }

  /// Matrices of d_i (rows: C_i basis, columns: C_{i-1} basis) and
  /// d_{i+1} at weight w, for checking d o d = 0.
  std::pair<SparseMatrix<F>, SparseMatrix<F>> differential_pair(int i, long w) const {
    Slice lower = chain_slice_(i - 1, w), mid = chain_slice_(i, w), upper = chain_slice_(i + 1, w);
    return {flat_matrix_(mid, lower), flat_matrix_(upper, mid)};
  }

  std::size_t chain_dim(int i, long w) const { return chain_slice_(i, w).size(); }

 private:
  using Key = std::vector<int>;  // fine degree
  struct Element {
    std::uint64_t subset;
    Monomial mono;
  };
  struct Slice {
    std::map<Key, std::vector<Element>> parts;
    std::size_t size() const {
      std::size_t n = 0;
      for (const auto& [k, v] : parts) n += v.size();
      return n;
    }
  };

  void init_fine_grading_() {
    fine_ = ring_->fine_rank() > 0;
    gen_fine_.clear();
    for (const auto& g : gens_) {
      if (!fine_) break;
      if (g.poly.is_zero()) {
        fine_ = false;
        break;
      }
      Key k0 = fine_of_(g.poly.exponents(0));
      for (std::size_t t = 1; t < g.poly.size(); ++t)
        if (fine_of_(g.poly.exponents(t)) != k0) fine_ = false;
      gen_fine_.push_back(k0);
    }
  }

  Key fine_of_(std::span<const exp_t> e) const {
    Key k(ring_->fine_rank(), 0);
    if (k.empty()) return k;
    for (std::size_t v = 0; v < e.size(); ++v)
      if (e[v])
        for (std::size_t c = 0; c < k.size(); ++c) k[c] += e[v] * ring_->variable(v).fine_degree[c];
    return k;
  }

  void enumerate_(std::size_t v, long remaining, Monomial& cur, std::vector<Monomial>& out) const {
    if (remaining == 0) {
      out.push_back(cur);
      return;
    }
    if (v == ring_->nvars()) return;
    const long wv = ring_->variable(v).weight;
    for (long e = 0; e * wv <= remaining; ++e) {
      cur[v] = static_cast<exp_t>(e);
      enumerate_(v + 1, remaining - e * wv, cur, out);
    }
    cur[v] = 0;
  }

  Slice chain_slice_(int i, long w) const {
    Slice s;
    const std::size_t r = gens_.size();
    if (i < 0 || static_cast<std::size_t>(i) > r) return s;
    std::map<long, std::vector<Monomial>> by_weight;
    // iterate i-subsets of {0..r-1} as bitmasks in increasing order
    std::vector<std::size_t> idx(i);
    for (int k = 0; k < i; ++k) idx[k] = k;
    while (true) {
      std::uint64_t mask = 0;
      long sw = 0;
      Key sk(fine_ ? ring_->fine_rank() : 0, 0);
      for (auto k : idx) {
        mask |= std::uint64_t{1} << k;
        sw += gens_[k].weight;
        if (fine_)
          for (std::size_t c = 0; c < sk.size(); ++c) sk[c] += gen_fine_[k][c];
      }
      if (sw <= w) {
        auto it = by_weight.find(w - sw);
        if (it == by_weight.end()) it = by_weight.emplace(w - sw, monomials_of_weight(w - sw)).first;
        for (const auto& m : it->second) {
          Key key;
          if (fine_) {
            key = fine_of_(m.exponents());
            for (std::size_t c = 0; c < key.size(); ++c) key[c] += sk[c];
          }
          s.parts[key].push_back({mask, m});
        }
      }
      // next combination
      int k = i - 1;
      while (k >= 0 && idx[k] == r - i + k) --k;
      if (k < 0) break;
      ++idx[k];
      for (int l = k + 1; l < i; ++l) idx[l] = idx[l - 1] + 1;
    }
    return s;
  }

  static std::string element_key_(std::uint64_t subset, std::span<const exp_t> e) {
    std::string key(sizeof(subset) + e.size() * sizeof(exp_t), '\0');
    std::memcpy(key.data(), &subset, sizeof(subset));
    std::memcpy(key.data() + sizeof(subset), e.data(), e.size() * sizeof(exp_t));
    return key;
  }

  // Rows of d restricted to one component: each source element maps to a
  // combination of target elements.
  SparseMatrix<F> component_matrix_(const std::vector<Element>& src, const std::vector<Element>& dst) const {
    const F& fld = ring_->field();
    SparseMatrix<F> m(src.size(), dst.size());
    std::unordered_map<std::string, std::uint32_t> index;
    index.reserve(dst.size() * 2);
    for (std::size_t k = 0; k < dst.size(); ++k)
      index.emplace(element_key_(dst[k].subset, dst[k].mono.exponents()), static_cast<std::uint32_t>(k));
    const std::size_t n = ring_->nvars();
    std::vector<exp_t> prod(n);
    for (std::size_t row = 0; row < src.size(); ++row) {
      const auto& el = src[row];
      std::map<std::uint32_t, typename F::value_type> acc;
      int position = 0;
      for (std::size_t k = 0; k < gens_.size(); ++k) {
        if (!(el.subset >> k & 1u)) continue;
        const auto sign_neg = (position++ % 2) == 1;
        const auto& f = gens_[k].poly;
        std::uint64_t rest = el.subset & ~(std::uint64_t{1} << k);
        for (std::size_t t = 0; t < f.size(); ++t) {
          auto e = f.exponents(t);
          for (std::size_t v = 0; v < n; ++v) prod[v] = static_cast<exp_t>(e[v] + el.mono[v]);
          auto it = index.find(element_key_(rest, prod));
          if (it == index.end()) throw std::logic_error("Koszul differential left its slice");
          auto c = sign_neg ? fld.neg(f.coeff(t)) : f.coeff(t);
          auto [slot, fresh] = acc.emplace(it->second, c);
          if (!fresh) slot->second = fld.add(slot->second, c);
        }
      }
      for (auto& [col, v] : acc)
        if (!fld.is_zero(v)) m.rows[row].emplace_back(col, std::move(v));
    }
    return m;
  }

  std::size_t differential_rank_(const Slice& src, const Slice& dst) const {
    std::size_t total = 0;
    for (const auto& [key, elems] : src.parts) {
      auto it = dst.parts.find(key);
      if (it == dst.parts.end()) continue;
      auto m = component_matrix_(elems, it->second);
      total += rank(m, ring_->field());
    }
    return total;
  }

  SparseMatrix<F> flat_matrix_(const Slice& src, const Slice& dst) const {
    std::vector<Element> s, d;
    for (const auto& [k, v] : src.parts) s.insert(s.end(), v.begin(), v.end());
    for (const auto& [k, v] : dst.parts) d.insert(d.end(), v.begin(), v.end());
    return component_matrix_(s, d);
  }

  RingPtr<F> ring_;
  std::vector<Generator> gens_;
  bool fine_ = false;
  std::vector<Key> gen_fine_;
};

/// Complex on the nonzero commutator generators plus the count of
/// identically vanishing entries that contribute the exterior factor.
template <class F>
struct KoszulBuild {
  KoszulComplex<F> complex;
  int exterior_factors;
  std::vector<Position> zero_positions;
};

template <class F>
KoszulBuild<F> build_complex(const CommutatorSystem<F>& sys) {
  if (sys.kind != GroupKind::Unipotent)
    throw std::invalid_argument("Koszul slices are only defined for unipotent systems (Borel rings have weight-0 variables)");
  std::vector<typename KoszulComplex<F>::Generator> gens;
  std::vector<Position> zeros = sys.zero_positions;
  for (const auto& [pos, f] : sys.generators)
    if (!f.is_zero()) gens.push_back({f, pos.j - pos.i});
  return {KoszulComplex<F>(sys.ring, std::move(gens)), static_cast<int>(zeros.size()), zeros};
}

struct KunnethRow {
  int i;
  long w;
  long extended;  // dim H_i^{(w)} of the extended complex
  long predicted;  // from the tensor formula
};

struct KunnethResult {
  bool ok = true;
  std::vector<KunnethRow> rows;
};

inline long binomial(long n, long k) {
  if (k < 0 || k > n) return 0;
  long r = 1;
  for (long t = 1; t <= k; ++t) r = r * (n - k + t) / t;
  return r;
}

/// Appends `zeros` zero generators of weight 1 and checks, for every weight
/// up to max_weight and every homological degree, that
///   dim H_i^{(w)}(K + zeros) = sum_j C(zeros, j) dim H_{i-j}^{(w-j)}(K).
template <class F>
KunnethResult kunneth_zero_check(const KoszulComplex<F>& k, std::size_t zeros, long max_weight,
                                 const Limits& limits = {}) {
  KunnethResult res;
  auto ext = k.with_zero_generators(zeros, 1);
  const int top = static_cast<int>(k.length());
  std::map<std::pair<int, long>, long> base;
  auto base_h = [&](int i, long w) -> long {
    if (i < 0 || i > top || w < 0) return 0;
    auto key = std::make_pair(i, w);
    auto it = base.find(key);
    if (it != base.end()) return it->second;
    auto rep = k.homology_slice(i, w, limits);
    if (!rep.complete) throw IncompleteComputation(rep.status);
    return base[key] = rep.h_dim;
  };
  for (long w = 0; w <= max_weight; ++w)
    for (int i = 0; i <= top + static_cast<int>(zeros); ++i) {
      auto rep = ext.homology_slice(i, w, limits);
      if (!rep.complete) throw IncompleteComputation(rep.status);
      long predicted = 0;
      for (long j = 0; j <= static_cast<long>(zeros); ++j)
        predicted += binomial(static_cast<long>(zeros), j) * base_h(i - static_cast<int>(j), w - j);
      res.rows.push_back({i, w, rep.h_dim, predicted});
      if (rep.h_dim != predicted) res.ok = false;
    }
  return res;
}

/// Number of standard monomials of weight w for a complete basis of a
/// weight-homogeneous ideal, i.e. dim (R/I)_w.
template <class F>
std::size_t standard_monomials_of_weight(const GroebnerBasis<F>& g, const KoszulComplex<F>& k, long w) {
  std::size_t count = 0;
  auto lms = g.leading_monomials();
  for (const auto& m : k.monomials_of_weight(w)) {
    bool standard = true;
    for (const auto& l : lms)
      if (l.divides(m)) {
        standard = false;
        break;
      }
    count += standard;
  }
  return count;
}

}  // namespace commci

#endif
