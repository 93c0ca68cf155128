#ifndef COMMCI_RING_HPP
#define COMMCI_RING_HPP

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <numeric>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "commci/field.hpp"

namespace commci {

using exp_t = std::uint16_t;

class RingMismatch : public std::invalid_argument {
 public:
  RingMismatch() : std::invalid_argument("operands live in different polynomial rings") {}
};

/// A ring variable. `weight` is the internal grading; `fine_degree` is an
/// optional finer multigrading (all variables of a ring carry one or none).
struct Variable {
  std::string name;
  int weight = 1;
  std::vector<int> fine_degree;

  bool operator==(const Variable&) const = default;
};

/// Polynomial ring descriptor: coefficient field plus an ordered variable list.
/// The variable order is also the monomial order's variable order (grevlex,
/// variable 0 largest).
template <class F>
class Ring {
 public:
  using field_type = F;

  Ring(F field, std::vector<Variable> vars) : field_(std::move(field)), vars_(std::move(vars)) {
    for (std::size_t i = 0; i < vars_.size(); ++i) {
      if (vars_[i].weight < 0)
        throw std::invalid_argument("negative weight on variable " + vars_[i].name);
      if (!index_.emplace(vars_[i].name, i).second)
        throw std::invalid_argument("duplicate variable name " + vars_[i].name);
    }
    if (!vars_.empty()) {
      std::size_t r = vars_.front().fine_degree.size();
      for (const auto& v : vars_)
        if (v.fine_degree.size() != r)
          throw std::invalid_argument("fine grading must be given for all variables or none");
    }
  }

  static std::shared_ptr<const Ring> make(F field, std::vector<Variable> vars) {
    return std::make_shared<const Ring>(std::move(field), std::move(vars));
  }

  const F& field() const { return field_; }
  std::size_t nvars() const { return vars_.size(); }
  const Variable& variable(std::size_t i) const { return vars_.at(i); }
  const std::vector<Variable>& variables() const { return vars_; }

  std::optional<std::size_t> find(std::string_view name) const {
    auto it = index_.find(std::string(name));
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }
  std::size_t index(std::string_view name) const {
    auto i = find(name);
    if (!i) throw std::out_of_range("unknown variable " + std::string(name));
    return *i;
  }

  bool positively_weighted() const {
    return std::all_of(vars_.begin(), vars_.end(), [](const Variable& v) { return v.weight >= 1; });
  }
  std::size_t fine_rank() const { return vars_.empty() ? 0 : vars_.front().fine_degree.size(); }

  /// Same variables re-ordered: new variable k is old variable perm[k].
  std::shared_ptr<const Ring> permuted(const std::vector<std::size_t>& perm) const {
    if (perm.size() != vars_.size()) throw std::invalid_argument("permutation size mismatch");
    std::vector<Variable> v;
    v.reserve(perm.size());
    std::vector<bool> seen(perm.size(), false);
    for (std::size_t p : perm) {
      if (p >= vars_.size() || seen[p]) throw std::invalid_argument("not a permutation");
      seen[p] = true;
      v.push_back(vars_[p]);
    }
    return make(field_, std::move(v));
  }

  bool operator==(const Ring& o) const { return field_ == o.field_ && vars_ == o.vars_; }

 private:
  F field_;
  std::vector<Variable> vars_;
  std::unordered_map<std::string, std::size_t> index_;
};

template <class F>
using RingPtr = std::shared_ptr<const Ring<F>>;

template <class F>
bool same_ring(const RingPtr<F>& a, const RingPtr<F>& b) {
  return a == b || (a && b && *a == *b);
}

/// Exponent vector, one entry per ring variable.
class Monomial {
 public:
  Monomial() = default;
  explicit Monomial(std::size_t nvars) : e_(nvars, 0) {}
  explicit Monomial(std::vector<exp_t> e) : e_(std::move(e)) {}
  explicit Monomial(std::span<const exp_t> e) : e_(e.begin(), e.end()) {}

  std::size_t size() const { return e_.size(); }
  exp_t operator[](std::size_t i) const { return e_[i]; }
  exp_t& operator[](std::size_t i) { return e_[i]; }
  std::span<const exp_t> exponents() const { return e_; }

  long degree() const { return std::accumulate(e_.begin(), e_.end(), 0L); }
  template <class F>
  long weight(const Ring<F>& r) const {
    long w = 0;
    for (std::size_t i = 0; i < e_.size(); ++i) w += static_cast<long>(e_[i]) * r.variable(i).weight;
    return w;
  }

  bool divides(const Monomial& o) const {
    for (std::size_t i = 0; i < e_.size(); ++i)
      if (e_[i] > o.e_[i]) return false;
    return true;
  }

  bool operator==(const Monomial&) const = default;

 private:
  std::vector<exp_t> e_;
};

// Terms are stored as [degree, e_0, ..., e_{n-1}] so that the graded part of
// the comparison is a single load.
inline int compare_grevlex(const exp_t* a, const exp_t* b, std::size_t stride) {
  if (a[0] != b[0]) return a[0] < b[0] ? -1 : 1;
  for (std::size_t k = stride - 1; k >= 1; --k)
    if (a[k] != b[k]) return a[k] > b[k] ? -1 : 1;
  return 0;
}

/// Graded reverse lexicographic comparison of two exponent vectors.
inline int compare_grevlex(std::span<const exp_t> a, std::span<const exp_t> b) {
  long da = std::accumulate(a.begin(), a.end(), 0L);
  long db = std::accumulate(b.begin(), b.end(), 0L);
  if (da != db) return da < db ? -1 : 1;
  for (std::size_t k = a.size(); k-- > 0;)
    if (a[k] != b[k]) return a[k] > b[k] ? -1 : 1;
  return 0;
}

}  // namespace commci

#endif
