#ifndef COMMCI_GROUPMAT_HPP
#define COMMCI_GROUPMAT_HPP

#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "commci/polynomial.hpp"

namespace commci {

enum class GroupKind { Unipotent, Borel };
enum class MatrixRole { X, Y };

inline std::string group_name(GroupKind k) { return k == GroupKind::Unipotent ? "un" : "bn"; }
inline GroupKind parse_group(const std::string& s) {
  if (s == "un" || s == "U" || s == "unipotent") return GroupKind::Unipotent;
  if (s == "bn" || s == "B" || s == "borel") return GroupKind::Borel;
  throw std::invalid_argument("unknown group '" + s + "' (expected un or bn)");
}

/// 1-based matrix position.
struct Position {
  int i = 0;
  int j = 0;
  bool operator==(const Position&) const = default;
  auto operator<=>(const Position&) const = default;
};

/// Pairing of a diagonal variable with its registered inverse: the rewrite
/// var * inverse -> 1.
struct UnitRule {
  std::size_t var;
  std::size_t inverse;
};

/// Cancels every occurrence of var*inverse in every term.
template <class F>
Polynomial<F> apply_unit_rules(const Polynomial<F>& p, std::span<const UnitRule> rules) {
  if (rules.empty() || p.is_zero()) return p;
  bool touched = false;
  for (std::size_t k = 0; k < p.size() && !touched; ++k) {
    auto e = p.exponents(k);
    for (const auto& r : rules)
      if (e[r.var] && e[r.inverse]) {
        touched = true;
        break;
      }
  }
  if (!touched) return p;
  std::vector<std::pair<typename F::value_type, Monomial>> terms;
  terms.reserve(p.size());
  for (std::size_t k = 0; k < p.size(); ++k) {
    Monomial m = p.term_monomial(k);
    for (const auto& r : rules) {
      exp_t c = std::min(m[r.var], m[r.inverse]);
      m[r.var] -= c;
      m[r.inverse] -= c;
    }
    terms.emplace_back(p.coeff(k), std::move(m));
  }
  return Polynomial<F>::from_terms(p.ring(), terms);
}

/// Square matrix of polynomials over one ring.
template <class F>
class PolyMatrix {
 public:
  PolyMatrix(RingPtr<F> ring, int n) : ring_(std::move(ring)), n_(n) {
    if (n < 1) throw std::invalid_argument("matrix size must be positive");
    entries_.assign(static_cast<std::size_t>(n) * n, Polynomial<F>(ring_));
  }

  static PolyMatrix identity(RingPtr<F> ring, int n) {
    PolyMatrix m(ring, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = Polynomial<F>::integer(ring, 1);
    return m;
  }

  int size() const { return n_; }
  const RingPtr<F>& ring() const { return ring_; }

  // 0-based access
  Polynomial<F>& at(int i, int j) { return entries_[static_cast<std::size_t>(i) * n_ + j]; }
  const Polynomial<F>& at(int i, int j) const { return entries_[static_cast<std::size_t>(i) * n_ + j]; }
  // 1-based access, matching the usual matrix notation
  const Polynomial<F>& operator()(Position p) const { return at(p.i - 1, p.j - 1); }

  PolyMatrix multiply(const PolyMatrix& o, std::span<const UnitRule> rules = {}) const {
    if (o.n_ != n_) throw std::invalid_argument("matrix size mismatch");
    PolyMatrix r(ring_, n_);
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < n_; ++j) {
        Polynomial<F> acc(ring_);
        for (int k = 0; k < n_; ++k) {
          if (at(i, k).is_zero() || o.at(k, j).is_zero()) continue;
          acc += at(i, k) * o.at(k, j);
        }
        r.at(i, j) = apply_unit_rules(acc, rules);
      }
    return r;
  }
  PolyMatrix operator*(const PolyMatrix& o) const { return multiply(o); }
  PolyMatrix operator-(const PolyMatrix& o) const {
    PolyMatrix r(ring_, n_);
    for (std::size_t k = 0; k < entries_.size(); ++k) r.entries_[k] = entries_[k] - o.entries_[k];
    return r;
  }
  PolyMatrix operator+(const PolyMatrix& o) const {
    PolyMatrix r(ring_, n_);
    for (std::size_t k = 0; k < entries_.size(); ++k) r.entries_[k] = entries_[k] + o.entries_[k];
    return r;
  }
  PolyMatrix negated() const {
    PolyMatrix r(ring_, n_);
    for (std::size_t k = 0; k < entries_.size(); ++k) r.entries_[k] = -entries_[k];
    return r;
  }

  bool is_identity() const { return *this == identity(ring_, n_); }
  bool operator==(const PolyMatrix& o) const { return n_ == o.n_ && entries_ == o.entries_; }

 private:
  RingPtr<F> ring_;
  int n_;
  std::vector<Polynomial<F>> entries_;
};

// ---------------------------------------------------------------------------
// Variable naming and ring construction

inline std::string entry_name(MatrixRole role, int copy, int i, int j) {
  return std::string(role == MatrixRole::X ? "x_" : "y_") + std::to_string(copy) + "_" +
         std::to_string(i) + "_" + std::to_string(j);
}
inline std::string inverse_name(MatrixRole role, int copy, int i) {
  return std::string(role == MatrixRole::X ? "dx_" : "dy_") + std::to_string(copy) + "_" +
         std::to_string(i);
}

/// Variables of one coordinate matrix, row-major over its free entries,
/// followed by the diagonal inverses for Borel. Weight of entry (i,j) is j-i;
/// the fine degree is the sum of simple roots e_i + ... + e_{j-1}.
inline std::vector<Variable> matrix_variables(GroupKind kind, int n, int copy, MatrixRole role) {
  std::vector<Variable> vars;
  for (int i = 1; i <= n; ++i)
    for (int j = (kind == GroupKind::Unipotent ? i + 1 : i); j <= n; ++j) {
      std::vector<int> fine(n - 1, 0);
      for (int k = i; k < j; ++k) fine[k - 1] = 1;
      vars.push_back({entry_name(role, copy, i, j), j - i, std::move(fine)});
    }
  if (kind == GroupKind::Borel)
    for (int i = 1; i <= n; ++i) vars.push_back({inverse_name(role, copy, i), 0, std::vector<int>(n - 1, 0)});
  return vars;
}

/// Ring of O(G^{2g}): blocks x_1, y_1, x_2, y_2, ... each followed by its
/// inverse variables in the Borel case.
template <class F>
RingPtr<F> group_ring(const F& field, GroupKind kind, int n, int genus) {
  if (n < 2) throw std::invalid_argument("matrix size must be at least 2");
  if (genus < 1) throw std::invalid_argument("genus must be at least 1");
  std::vector<Variable> vars;
  for (int t = 1; t <= genus; ++t)
    for (MatrixRole role : {MatrixRole::X, MatrixRole::Y}) {
      auto block = matrix_variables(kind, n, t, role);
      vars.insert(vars.end(), block.begin(), block.end());
    }
  return Ring<F>::make(field, std::move(vars));
}

/// Unit rules for every Borel diagonal variable present in the ring.
template <class F>
std::vector<UnitRule> unit_rules(const Ring<F>& ring, GroupKind kind, int n, int genus) {
  std::vector<UnitRule> rules;
  if (kind != GroupKind::Borel) return rules;
  for (int t = 1; t <= genus; ++t)
    for (MatrixRole role : {MatrixRole::X, MatrixRole::Y})
      for (int i = 1; i <= n; ++i)
        rules.push_back({ring.index(entry_name(role, t, i, i)), ring.index(inverse_name(role, t, i))});
  return rules;
}

/// The generic coordinate matrix of copy `copy` (unit diagonal for U_n).
template <class F>
PolyMatrix<F> coordinate_matrix(const RingPtr<F>& ring, GroupKind kind, int n, int copy, MatrixRole role) {
  if (n < 2) throw std::invalid_argument("matrix size must be at least 2");
  PolyMatrix<F> m(ring, n);
  for (int i = 1; i <= n; ++i) {
    if (kind == GroupKind::Unipotent) m.at(i - 1, i - 1) = Polynomial<F>::integer(ring, 1);
    for (int j = (kind == GroupKind::Unipotent ? i + 1 : i); j <= n; ++j)
      m.at(i - 1, j - 1) = Polynomial<F>::variable(ring, entry_name(role, copy, i, j));
  }
  return m;
}

/// Standalone form: builds a ring holding just this matrix's variables.
template <class F>
PolyMatrix<F> coordinate_matrix(const F& field, GroupKind kind, int n, int copy, MatrixRole role) {
  if (n < 2) throw std::invalid_argument("matrix size must be at least 2");
  auto ring = Ring<F>::make(field, matrix_variables(kind, n, copy, role));
  return coordinate_matrix(ring, kind, n, copy, role);
}

class ShapeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Exact two-sided inverse of an upper-triangular coordinate-shaped matrix.
/// Unipotent: sum of (-N)^k with N the strict upper part. Borel: with
/// D^{-1} = diag(inverse variables), sum of (-D^{-1}N)^k D^{-1}, all entries
/// reduced by the unit rules.
template <class F>
PolyMatrix<F> inverse(const PolyMatrix<F>& m, GroupKind kind, std::span<const UnitRule> rules = {}) {
  const int n = m.size();
  const auto& ring = m.ring();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < i; ++j)
      if (!m.at(i, j).is_zero()) throw ShapeError("matrix is not upper triangular");

  PolyMatrix<F> dinv = PolyMatrix<F>::identity(ring, n);
  if (kind == GroupKind::Unipotent) {
    for (int i = 0; i < n; ++i)
      if (m.at(i, i) != Polynomial<F>::integer(ring, 1)) throw ShapeError("unipotent matrix needs unit diagonal");
  } else {
    for (int i = 0; i < n; ++i) {
      const auto& d = m.at(i, i);
      if (d.size() != 1 || d.term_degree(0) != 1 || !d.field().is_one(d.coeff(0)))
        throw ShapeError("Borel diagonal entries must be single variables");
      auto e = d.exponents(0);
      std::size_t v = 0;
      while (e[v] == 0) ++v;
      std::optional<std::size_t> inv;
      for (const auto& r : rules)
        if (r.var == v) inv = r.inverse;
      if (!inv) throw ShapeError("no inverse variable registered for " + ring->variable(v).name);
      dinv.at(i, i) = Polynomial<F>::variable(ring, *inv);
    }
  }

  PolyMatrix<F> strict(ring, n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) strict.at(i, j) = m.at(i, j);
  // step = -D^{-1} N
  PolyMatrix<F> step = dinv.multiply(strict, rules).negated();
  PolyMatrix<F> sum = PolyMatrix<F>::identity(ring, n);
  PolyMatrix<F> power = sum;
  for (int k = 1; k < n; ++k) {
    power = power.multiply(step, rules);
    sum = sum + power;
  }
  return sum.multiply(dinv, rules);
}

// ---------------------------------------------------------------------------
// Commutator words

class VanishingPatternError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

template <class F>
struct CommutatorSystem {
  GroupKind kind;
  int n;
  int genus;
  RingPtr<F> ring;
  std::vector<UnitRule> rules;
  PolyMatrix<F> word;  // product of commutators, minus I for Borel
  std::vector<std::pair<Position, Polynomial<F>>> generators;
  std::vector<Polynomial<F>> unit_relations;
  std::vector<Position> zero_positions;

  std::vector<Polynomial<F>> generator_polys() const {
    std::vector<Polynomial<F>> out;
    for (const auto& [pos, f] : generators) out.push_back(f);
    return out;
  }
  const Polynomial<F>& generator_at(Position p) const {
    for (const auto& [pos, f] : generators)
      if (pos == p) return f;
    throw std::out_of_range("no generator at position (" + std::to_string(p.i) + "," + std::to_string(p.j) + ")");
  }
  int exterior_factor_count() const { return kind == GroupKind::Unipotent ? n - 1 : n; }
};

/// [X_1,Y_1]...[X_g,Y_g] (minus I for Borel) with [X,Y] = X Y X^{-1} Y^{-1}.
/// Throws VanishingPatternError if the entries that must vanish do not.
template <class F>
CommutatorSystem<F> commutator_word(const F& field, GroupKind kind, int n, int genus) {
  auto ring = group_ring(field, kind, n, genus);
  auto rules = unit_rules(*ring, kind, n, genus);

  PolyMatrix<F> word = PolyMatrix<F>::identity(ring, n);
  for (int t = 1; t <= genus; ++t) {
    auto x = coordinate_matrix(ring, kind, n, t, MatrixRole::X);
    auto y = coordinate_matrix(ring, kind, n, t, MatrixRole::Y);
    auto xi = inverse(x, kind, rules);
    auto yi = inverse(y, kind, rules);
    auto c = x.multiply(y, rules).multiply(xi, rules).multiply(yi, rules);
    word = word.multiply(c, rules);
  }
  if (kind == GroupKind::Borel) word = word - PolyMatrix<F>::identity(ring, n);

  CommutatorSystem<F> sys{kind, n, genus, ring, rules, word, {}, {}, {}};
  auto fail = [&](const std::string& what, int i, int j) {
    throw VanishingPatternError(group_name(kind) + " n=" + std::to_string(n) + " g=" + std::to_string(genus) +
                                ": " + what + " at (" + std::to_string(i) + "," + std::to_string(j) + ")");
  };
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j) {
      const auto& e = word.at(i - 1, j - 1);
      if (j < i) {
        if (!e.is_zero()) fail("nonzero lower-triangular entry", i, j);
        continue;
      }
      if (kind == GroupKind::Unipotent && j == i) {
        if (e != Polynomial<F>::integer(ring, 1)) fail("diagonal entry is not 1", i, j);
        continue;
      }
      bool must_vanish = kind == GroupKind::Unipotent ? j == i + 1 : j == i;
      if (must_vanish) {
        if (!e.is_zero()) fail("entry expected to vanish identically", i, j);
        sys.zero_positions.push_back({i, j});
        continue;
      }
      Weight w = weight_of(e);
      if (!(w.is_bottom() || w == Weight::of(j - i))) fail("generator not homogeneous of weight j-i", i, j);
      if (e.is_zero()) sys.zero_positions.push_back({i, j});
      sys.generators.push_back({{i, j}, e});
    }
  for (const auto& r : rules)
    sys.unit_relations.push_back(Polynomial<F>::variable(ring, r.var) * Polynomial<F>::variable(ring, r.inverse) -
                                 Polynomial<F>::integer(ring, 1));
  return sys;
}

/// One line per generator: "f[i][j]: <polynomial>".
template <class F>
std::string dump_generators(const CommutatorSystem<F>& sys) {
  std::string out;
  for (const auto& [pos, f] : sys.generators)
    out += "f[" + std::to_string(pos.i) + "][" + std::to_string(pos.j) + "]: " + to_string(f) + "\n";
  return out;
}

}  // namespace commci

#endif
