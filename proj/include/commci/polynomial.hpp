#ifndef COMMCI_POLYNOMIAL_HPP
#define COMMCI_POLYNOMIAL_HPP

#include <algorithm>
#include <cctype>
#include <cstring>
#include <limits>
#include <map>
#include <numeric>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "commci/field.hpp"
#include "commci/ring.hpp"

namespace commci {

/// Sparse polynomial over a Ring<F>. Terms are kept in canonical form:
/// strictly descending in grevlex, no zero coefficients.
template <class F>
class Polynomial {
 public:
  using field_type = F;
  using Coeff = typename F::value_type;

  Polynomial() = default;
  explicit Polynomial(RingPtr<F> ring) : ring_(std::move(ring)), stride_(ring_->nvars() + 1) {}

  static Polynomial constant(RingPtr<F> ring, const Coeff& c) {
    Polynomial p(std::move(ring));
    if (!p.field().is_zero(c)) p.push_term_(c, nullptr);
    return p;
  }
  static Polynomial integer(RingPtr<F> ring, long c) {
    Coeff v = ring->field().from_int(c);
    return constant(std::move(ring), v);
  }
  static Polynomial variable(RingPtr<F> ring, std::size_t i) {
    if (i >= ring->nvars()) throw std::out_of_range("variable index out of range");
    Polynomial p(std::move(ring));
    std::vector<exp_t> e(p.stride_, 0);
    e[0] = 1;
    e[i + 1] = 1;
    p.push_term_(p.field().one(), e.data());
    return p;
  }
  static Polynomial variable(RingPtr<F> ring, std::string_view name) {
    std::size_t i = ring->index(name);
    return variable(std::move(ring), i);
  }
  static Polynomial monomial(RingPtr<F> ring, const Coeff& c, const Monomial& m) {
    return from_terms(std::move(ring), {{c, m}});
  }
  /// Builds the canonical form of an arbitrary (unsorted, possibly repeated) term list.
  static Polynomial from_terms(RingPtr<F> ring, const std::vector<std::pair<Coeff, Monomial>>& terms) {
    Polynomial raw(std::move(ring));
    std::vector<exp_t> e(raw.stride_);
    for (const auto& [c, m] : terms) {
      if (m.size() != raw.ring_->nvars()) throw std::invalid_argument("monomial length mismatch");
      long d = 0;
      for (std::size_t i = 0; i < m.size(); ++i) {
        e[i + 1] = m[i];
        d += m[i];
      }
      e[0] = checked_exp_(d);
      raw.coeffs_.push_back(c);
      raw.exps_.insert(raw.exps_.end(), e.begin(), e.end());
    }
    raw.canonicalize_();
    return raw;
  }

  const RingPtr<F>& ring() const { return ring_; }
  const F& field() const { return ring_->field(); }
  std::size_t nvars() const { return stride_ - 1; }
  std::size_t size() const { return coeffs_.size(); }
  bool is_zero() const { return coeffs_.empty(); }
  bool is_constant() const { return is_zero() || (size() == 1 && term_degree(0) == 0); }

  const Coeff& coeff(std::size_t k) const { return coeffs_[k]; }
  std::span<const exp_t> exponents(std::size_t k) const {
    return {exps_.data() + k * stride_ + 1, stride_ - 1};
  }
  long term_degree(std::size_t k) const { return exps_[k * stride_]; }
  Monomial term_monomial(std::size_t k) const { return Monomial(exponents(k)); }
  long term_weight(std::size_t k) const {
    long w = 0;
    auto e = exponents(k);
    for (std::size_t i = 0; i < e.size(); ++i) w += static_cast<long>(e[i]) * ring_->variable(i).weight;
    return w;
  }

  const Coeff& leading_coeff() const { return coeffs_.front(); }
  Monomial leading_monomial() const { return term_monomial(0); }
  long total_degree() const {
    long d = -1;
    for (std::size_t k = 0; k < size(); ++k) d = std::max(d, term_degree(k));
    return d;
  }

  // Raw [degree, e_0..e_{n-1}] block of term k.
  const exp_t* raw_term(std::size_t k) const { return exps_.data() + k * stride_; }
  std::size_t stride() const { return stride_; }

  Polynomial operator-() const {
    Polynomial r = *this;
    for (auto& c : r.coeffs_) c = field().neg(c);
    return r;
  }
  Polynomial operator+(const Polynomial& o) const { return axpy(*this, field().one(), nullptr, o); }
  Polynomial operator-(const Polynomial& o) const {
    return axpy(*this, field().neg(field().one()), nullptr, o);
  }
  Polynomial operator*(const Polynomial& o) const;
  Polynomial& operator+=(const Polynomial& o) { return *this = *this + o; }
  Polynomial& operator-=(const Polynomial& o) { return *this = *this - o; }
  Polynomial& operator*=(const Polynomial& o) { return *this = *this * o; }

  Polynomial scaled(const Coeff& c) const {
    if (field().is_zero(c)) return Polynomial(ring_);
    Polynomial r = *this;
    for (auto& x : r.coeffs_) x = field().mul(x, c);
    return r;
  }
  Polynomial monic() const {
    if (is_zero()) return *this;
    return scaled(field().inv(leading_coeff()));
  }

  /// a + c * m * b, where m is a raw term block (nullptr means 1). Linear merge.
  static Polynomial axpy(const Polynomial& a, const Coeff& c, const exp_t* m, const Polynomial& b) {
    a.check_ring_(b);
    const F& fld = a.field();
    Polynomial r(a.ring_);
    if (fld.is_zero(c) || b.is_zero()) {
      r = a;
      return r;
    }
    const std::size_t s = a.stride_;
    r.coeffs_.reserve(a.size() + b.size());
    r.exps_.reserve((a.size() + b.size()) * s);
    std::vector<exp_t> shifted(s);
    std::size_t i = 0, j = 0;
    auto load_b = [&](std::size_t jj) {
      const exp_t* bt = b.raw_term(jj);
      if (m == nullptr) {
        std::copy(bt, bt + s, shifted.begin());
      } else {
        for (std::size_t k = 0; k < s; ++k) shifted[k] = checked_exp_(long(bt[k]) + m[k]);
      }
    };
    if (j < b.size()) load_b(j);
    while (i < a.size() || j < b.size()) {
      int cmp;
      if (i == a.size())
        cmp = -1;
      else if (j == b.size())
        cmp = 1;
      else
        cmp = compare_grevlex(a.raw_term(i), shifted.data(), s);
      if (cmp > 0) {
        r.coeffs_.push_back(a.coeffs_[i]);
        r.exps_.insert(r.exps_.end(), a.raw_term(i), a.raw_term(i) + s);
        ++i;
      } else if (cmp < 0) {
        r.coeffs_.push_back(fld.mul(c, b.coeffs_[j]));
        r.exps_.insert(r.exps_.end(), shifted.begin(), shifted.end());
        if (++j < b.size()) load_b(j);
      } else {
        Coeff v = fld.add(a.coeffs_[i], fld.mul(c, b.coeffs_[j]));
        if (!fld.is_zero(v)) {
          r.coeffs_.push_back(std::move(v));
          r.exps_.insert(r.exps_.end(), shifted.begin(), shifted.end());
        }
        ++i;
        if (++j < b.size()) load_b(j);
      }
    }
    return r;
  }

  /// c * m * this for a raw term block m.
  Polynomial mul_term(const Coeff& c, const exp_t* m) const {
    Polynomial r(ring_);
    if (field().is_zero(c)) return r;
    r.coeffs_.reserve(size());
    r.exps_.resize(exps_.size());
    for (std::size_t k = 0; k < size(); ++k) {
      r.coeffs_.push_back(field().mul(c, coeffs_[k]));
      for (std::size_t t = 0; t < stride_; ++t)
        r.exps_[k * stride_ + t] = checked_exp_(long(exps_[k * stride_ + t]) + m[t]);
    }
    return r;
  }

  /// Drops leading terms [0, k).
  Polynomial tail(std::size_t k = 1) const {
    Polynomial r(ring_);
    if (k >= size()) return r;
    r.coeffs_.assign(coeffs_.begin() + k, coeffs_.end());
    r.exps_.assign(exps_.begin() + k * stride_, exps_.end());
    return r;
  }

  bool operator==(const Polynomial& o) const {
    return same_ring(ring_, o.ring_) && coeffs_ == o.coeffs_ && exps_ == o.exps_;
  }
  bool operator!=(const Polynomial& o) const { return !(*this == o); }

  /// Re-sorts and merges terms; the result is canonical. Exposed for tests of
  /// the fixed-point property.
  Polynomial renormalized() const {
    Polynomial r = *this;
    r.canonicalize_();
    return r;
  }

  /// Appends a term that must be strictly smaller than the current last term.
  void push_back_term(const Coeff& c, const exp_t* raw) {
    if (field().is_zero(c)) return;
    if (!is_zero() && compare_grevlex(raw_term(size() - 1), raw, stride_) <= 0)
      throw std::logic_error("push_back_term out of order");
    push_term_(c, raw);
  }

  void check_ring_(const Polynomial& o) const {
    if (!same_ring(ring_, o.ring_)) throw RingMismatch();
  }

  static exp_t checked_exp_(long v) {
    if (v < 0 || v > std::numeric_limits<exp_t>::max())
      throw std::overflow_error("exponent out of range");
    return static_cast<exp_t>(v);
  }

 private:
  void push_term_(const Coeff& c, const exp_t* raw) {
    coeffs_.push_back(c);
    if (raw)
      exps_.insert(exps_.end(), raw, raw + stride_);
    else
      exps_.insert(exps_.end(), stride_, 0);
  }

  void canonicalize_() {
    const std::size_t n = coeffs_.size();
    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    const std::size_t s = stride_;
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
      return compare_grevlex(exps_.data() + a * s, exps_.data() + b * s, s) > 0;
    });
    std::vector<Coeff> nc;
    std::vector<exp_t> ne;
    nc.reserve(n);
    ne.reserve(n * s);
    const F& fld = field();
    for (std::size_t k = 0; k < n;) {
      const exp_t* e = exps_.data() + idx[k] * s;
      Coeff acc = coeffs_[idx[k]];
      std::size_t l = k + 1;
      while (l < n && compare_grevlex(exps_.data() + idx[l] * s, e, s) == 0) {
        acc = fld.add(acc, coeffs_[idx[l]]);
        ++l;
      }
      if (!fld.is_zero(acc)) {
        nc.push_back(std::move(acc));
        ne.insert(ne.end(), e, e + s);
      }
      k = l;
    }
    coeffs_ = std::move(nc);
    exps_ = std::move(ne);
  }

  template <class G>
  friend Polynomial<G> mul(const Polynomial<G>&, const Polynomial<G>&);

  RingPtr<F> ring_;
  std::size_t stride_ = 1;
  std::vector<Coeff> coeffs_;
  std::vector<exp_t> exps_;
};

template <class F>
Polynomial<F> add(const Polynomial<F>& p, const Polynomial<F>& q) {
  return p + q;
}

template <class F>
Polynomial<F> mul(const Polynomial<F>& p, const Polynomial<F>& q) {
  p.check_ring_(q);
  Polynomial<F> r(p.ring());
  if (p.is_zero() || q.is_zero()) return r;
  if (q.size() == 1) return p.mul_term(q.coeff(0), q.raw_term(0));
  if (p.size() == 1) return q.mul_term(p.coeff(0), p.raw_term(0));
  const std::size_t s = p.stride();
  const F& fld = p.field();
  r.coeffs_.reserve(p.size() * q.size());
  r.exps_.resize(p.size() * q.size() * s);
  std::size_t k = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const exp_t* a = p.raw_term(i);
    for (std::size_t j = 0; j < q.size(); ++j, ++k) {
      const exp_t* b = q.raw_term(j);
      exp_t* out = r.exps_.data() + k * s;
      for (std::size_t t = 0; t < s; ++t) out[t] = Polynomial<F>::checked_exp_(long(a[t]) + b[t]);
      r.coeffs_.push_back(fld.mul(p.coeff(i), q.coeff(j)));
    }
  }
  r.canonicalize_();
  return r;
}

template <class F>
Polynomial<F> Polynomial<F>::operator*(const Polynomial& o) const {
  return mul(*this, o);
}

template <class F>
Polynomial<F> pow(const Polynomial<F>& p, unsigned e) {
  Polynomial<F> r = Polynomial<F>::constant(p.ring(), 1);
  Polynomial<F> b = p;
  while (e) {
    if (e & 1u) r = r * b;
    e >>= 1u;
    if (e) b = b * b;
  }
  return r;
}

/// Result of weight_of. The zero polynomial has the bottom weight.
struct Weight {
  enum class Kind { Bottom, Homogeneous, NotHomogeneous };
  Kind kind = Kind::Bottom;
  long value = 0;

  static Weight bottom() { return {Kind::Bottom, 0}; }
  static Weight of(long w) { return {Kind::Homogeneous, w}; }
  static Weight mixed() { return {Kind::NotHomogeneous, 0}; }

  bool is_bottom() const { return kind == Kind::Bottom; }
  bool is_homogeneous() const { return kind == Kind::Homogeneous; }
  bool operator==(const Weight&) const = default;
};

template <class F>
Weight weight_of(const Polynomial<F>& p) {
  if (p.is_zero()) return Weight::bottom();
  long w = p.term_weight(0);
  for (std::size_t k = 1; k < p.size(); ++k)
    if (p.term_weight(k) != w) return Weight::mixed();
  return Weight::of(w);
}

/// Simultaneous substitution. Variables absent from the map are left alone.
template <class F>
Polynomial<F> substitute(const Polynomial<F>& p, const std::map<std::size_t, Polynomial<F>>& assignment) {
  for (const auto& [v, q] : assignment) {
    if (v >= p.nvars()) throw std::out_of_range("substitution variable out of range");
    p.check_ring_(q);
  }
  if (assignment.empty()) return p;
  const auto& ring = p.ring();
  // powers[v][e] = assignment[v]^e, grown lazily
  std::map<std::size_t, std::vector<Polynomial<F>>> powers;
  auto power = [&](std::size_t v, exp_t e) -> const Polynomial<F>& {
    auto& cache = powers[v];
    if (cache.empty()) cache.push_back(Polynomial<F>::integer(ring, 1));
    while (cache.size() <= e) cache.push_back(cache.back() * assignment.at(v));
    return cache[e];
  };
  std::vector<std::pair<typename F::value_type, Monomial>> kept;
  Polynomial<F> acc(ring);
  for (std::size_t k = 0; k < p.size(); ++k) {
    auto e = p.exponents(k);
    Monomial rest(p.nvars());
    Polynomial<F> term = Polynomial<F>::constant(ring, p.coeff(k));
    bool substituted = false;
    for (std::size_t v = 0; v < e.size(); ++v) {
      if (e[v] == 0) continue;
      if (assignment.count(v)) {
        term = term * power(v, e[v]);
        substituted = true;
        if (term.is_zero()) break;
      } else {
        rest[v] = e[v];
      }
    }
    if (!substituted) {
      kept.emplace_back(p.coeff(k), rest);
      continue;
    }
    if (term.is_zero()) continue;
    acc += term * Polynomial<F>::monomial(ring, p.field().one(), rest);
  }
  return acc + Polynomial<F>::from_terms(ring, kept);
}

template <class F>
Polynomial<F> substitute(const Polynomial<F>& p, const std::map<std::string, Polynomial<F>>& assignment) {
  std::map<std::size_t, Polynomial<F>> by_index;
  for (const auto& [name, q] : assignment) by_index.emplace(p.ring()->index(name), q);
  return substitute(p, by_index);
}

// ---------------------------------------------------------------------------
// Text format

template <class F>
std::string monomial_string(const Ring<F>& ring, std::span<const exp_t> e) {
  std::string s;
  for (std::size_t v = 0; v < e.size(); ++v) {
    if (e[v] == 0) continue;
    if (!s.empty()) s += '*';
    s += ring.variable(v).name;
    if (e[v] > 1) s += '^' + std::to_string(e[v]);
  }
  return s;
}

template <class F>
std::string to_string(const Polynomial<F>& p) {
  if (p.is_zero()) return "0";
  const F& fld = p.field();
  std::string out;
  for (std::size_t k = 0; k < p.size(); ++k) {
    bool neg = fld.is_negative(p.coeff(k));
    if (k == 0)
      out += neg ? "-" : "";
    else
      out += neg ? " - " : " + ";
    std::string mag = fld.magnitude_string(p.coeff(k));
    std::string mono = monomial_string(*p.ring(), p.exponents(k));
    if (mono.empty())
      out += mag;
    else if (mag == "1")
      out += mono;
    else
      out += mag + "*" + mono;
  }
  return out;
}

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

template <class F>
class PolyParser {
 public:
  PolyParser(RingPtr<F> ring, std::string_view text) : ring_(std::move(ring)), s_(text) {}

  Polynomial<F> parse() {
    std::vector<std::pair<typename F::value_type, Monomial>> terms;
    skip_ws();
    if (pos_ == s_.size()) fail("empty input");
    bool first = true;
    while (true) {
      skip_ws();
      if (pos_ == s_.size()) break;
      int sign = 1;
      if (peek() == '+' || peek() == '-') {
        sign = get() == '-' ? -1 : 1;
      } else if (!first) {
        fail("expected '+' or '-'");
      }
      first = false;
      auto [q, m] = term();
      if (sign < 0) q = -q;
      terms.emplace_back(ring_->field().from_rational(q), std::move(m));
    }
    return Polynomial<F>::from_terms(ring_, terms);
  }

 private:
  std::pair<mpq_class, Monomial> term() {
    mpq_class q(1);
    Monomial m(ring_->nvars());
    while (true) {
      skip_ws();
      if (pos_ == s_.size()) fail("unexpected end of input");
      char c = peek();
      if (std::isdigit(static_cast<unsigned char>(c))) {
        mpz_class num(digits());
        mpz_class den(1);
        skip_ws();
        if (pos_ < s_.size() && peek() == '/') {
          ++pos_;
          skip_ws();
          den = mpz_class(digits());
          if (den == 0) fail("zero denominator");
        }
        mpq_class f(num, den);
        f.canonicalize();
        q *= f;
      } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        std::size_t start = pos_;
        while (pos_ < s_.size() &&
               (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
          ++pos_;
        std::string name(s_.substr(start, pos_ - start));
        auto v = ring_->find(name);
        if (!v) fail("unknown variable '" + name + "'");
        long e = 1;
        skip_ws();
        if (pos_ < s_.size() && peek() == '^') {
          ++pos_;
          skip_ws();
          e = std::stol(digits());
        }
        m[*v] = Polynomial<F>::checked_exp_(long(m[*v]) + e);
      } else {
        fail(std::string("unexpected character '") + c + "'");
      }
      skip_ws();
      if (pos_ < s_.size() && peek() == '*') {
        ++pos_;
        continue;
      }
      return {q, m};
    }
  }

  std::string digits() {
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected digits");
    return std::string(s_.substr(start, pos_ - start));
  }
  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  char peek() const { return s_[pos_]; }
  char get() { return s_[pos_++]; }
  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError("polynomial parse error at offset " + std::to_string(pos_) + ": " + msg);
  }

  RingPtr<F> ring_;
  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace detail

/// Parses the textual format produced by to_string. Factors inside a term may
/// appear in any order; coefficients are integers or a/b.
template <class F>
Polynomial<F> parse_polynomial(const RingPtr<F>& ring, std::string_view text) {
  return detail::PolyParser<F>(ring, text).parse();
}

// ---------------------------------------------------------------------------
// Moving between rings

inline mpq_class coefficient_to(const RationalField&, const mpq_class& c, const RationalField&) { return c; }
inline PrimeField::value_type coefficient_to(const RationalField&, const mpq_class& c, const PrimeField& f) {
  return f.from_rational(c);
}
inline PrimeField::value_type coefficient_to(const PrimeField& from, PrimeField::value_type c,
                                             const PrimeField& to) {
  if (!(from == to)) throw std::invalid_argument("cannot map between different prime fields");
  return c;
}

/// Maps p into `target`, matching variables by name and converting
/// coefficients (identity, or reduction Q -> GF(p)).
template <class G, class F>
Polynomial<G> change_ring(const Polynomial<F>& p, const RingPtr<G>& target) {
  std::vector<std::size_t> map(p.nvars());
  for (std::size_t v = 0; v < p.nvars(); ++v) map[v] = target->index(p.ring()->variable(v).name);
  std::vector<std::pair<typename G::value_type, Monomial>> terms;
  terms.reserve(p.size());
  for (std::size_t k = 0; k < p.size(); ++k) {
    Monomial m(target->nvars());
    auto e = p.exponents(k);
    for (std::size_t v = 0; v < e.size(); ++v) m[map[v]] = e[v];
    terms.emplace_back(coefficient_to(p.field(), p.coeff(k), target->field()), std::move(m));
  }
  return Polynomial<G>::from_terms(target, terms);
}

}  // namespace commci

#endif
