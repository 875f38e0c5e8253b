#pragma once

// Normal ordering on lattices of Weyl-type generators.
//
// A lattice fixes n generators g_1..g_n with an integer antisymmetric matrix S:
//
//     g_i g_j = q^{2 S_ij} g_j g_i.
//
// Elements are finite sums of normal-ordered monomials g_1^{a_1} ... g_n^{a_n}
// (Laurent exponents allowed) with QScalar coefficients.
//
// The cyclic algebra C_q has generators w1..w4 with S_{n,n+1} = -1 cyclically,
// i.e. w_n w_{n+1} = q^{-2} w_{n+1} w_n. This is the orientation produced by
// w_n = exp(b p_n) with [p_n, p_{n+1}] = -2 pi i.

#include <algorithm>
#include <array>
#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "mdq/scalar.hpp"

namespace mdq {

inline constexpr std::size_t kMaxGenerators = 16;

/// Exponent vector; entries past the lattice size are zero.
struct Monomial {
  std::array<int, kMaxGenerators> exps{};

  int& operator[](std::size_t i) { return exps[i]; }
  int operator[](std::size_t i) const { return exps[i]; }

  bool is_identity() const {
    return std::all_of(exps.begin(), exps.end(), [](int e) { return e == 0; });
  }

  friend Monomial operator+(Monomial a, const Monomial& b) {
    for (std::size_t i = 0; i < kMaxGenerators; ++i) a.exps[i] += b.exps[i];
    return a;
  }
  friend Monomial operator-(const Monomial& a) {
    Monomial r;
    for (std::size_t i = 0; i < kMaxGenerators; ++i) r.exps[i] = -a.exps[i];
    return r;
  }
  auto operator<=>(const Monomial&) const = default;
};

class Lattice;
using LatticePtr = std::shared_ptr<const Lattice>;

/// Generator names plus skew form; optionally a tensor power of a base lattice.
class Lattice {
 public:
  Lattice(std::vector<std::string> names, std::vector<int> skew)
      : names_(std::move(names)), skew_(std::move(skew)) {
    const std::size_t n = names_.size();
    if (n == 0 || n > kMaxGenerators) throw std::invalid_argument("Lattice: generator count out of range");
    if (skew_.size() != n * n) throw std::invalid_argument("Lattice: skew matrix has wrong size");
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (skew_[i * n + j] != -skew_[j * n + i]) throw std::invalid_argument("Lattice: skew form not antisymmetric");
      }
    }
  }

  std::size_t size() const { return names_.size(); }
  int skew(std::size_t i, std::size_t j) const { return skew_[i * size() + j]; }
  const std::string& name(std::size_t i) const { return names_[i]; }
  const std::vector<int>& skew_matrix() const { return skew_; }

  /// Number of tensor slots (1 for a base lattice).
  std::size_t arity() const { return base_ ? arity_ : 1; }
  /// Generators per slot.
  std::size_t block_size() const { return base_ ? base_->size() : size(); }
  /// The base lattice of a tensor power (the lattice itself when arity is 1).
  const Lattice& base() const { return base_ ? *base_ : *this; }
  LatticePtr base_ptr() const { return base_; }

  friend bool operator==(const Lattice& a, const Lattice& b) {
    return a.names_ == b.names_ && a.skew_ == b.skew_;
  }

  /// C_q: w1..w4, w_n w_{n+1} = q^{-2} w_{n+1} w_n (indices mod 4), others commute.
  static LatticePtr cyclic() {
    static const LatticePtr lat = [] {
      std::vector<int> s(16, 0);
      for (std::size_t n = 0; n < 4; ++n) {
        const std::size_t m = (n + 1) % 4;
        s[n * 4 + m] = -1;
        s[m * 4 + n] = 1;
      }
      return std::make_shared<const Lattice>(std::vector<std::string>{"w1", "w2", "w3", "w4"}, std::move(s));
    }();
    return lat;
  }

  /// Two generators u, v with u v = q^{2 power} v u.
  static LatticePtr weyl_pair(int power = 1) {
    return std::make_shared<const Lattice>(std::vector<std::string>{"u", "v"}, std::vector<int>{0, power, -power, 0});
  }

  /// One commuting generator w.
  static LatticePtr single() {
    static const LatticePtr lat = std::make_shared<const Lattice>(std::vector<std::string>{"w"}, std::vector<int>{0});
    return lat;
  }

  /// Block-diagonal tensor power of a base lattice; slot s generators are named "<g>(s)".
  static LatticePtr tensor(const LatticePtr& base, std::size_t arity) {
    if (arity == 1) return base;
    if (base->base_) throw std::invalid_argument("Lattice::tensor: base must not itself be a tensor power");
    const std::size_t b = base->size();
    const std::size_t n = b * arity;
    if (n > kMaxGenerators) throw std::invalid_argument("Lattice::tensor: too many generators");
    std::vector<std::string> names;
    std::vector<int> s(n * n, 0);
    for (std::size_t slot = 0; slot < arity; ++slot) {
      for (std::size_t i = 0; i < b; ++i) {
        names.push_back(base->name(i) + "(" + std::to_string(slot + 1) + ")");
        for (std::size_t j = 0; j < b; ++j) s[(slot * b + i) * n + slot * b + j] = base->skew(i, j);
      }
    }
    auto lat = std::make_shared<Lattice>(std::move(names), std::move(s));
    lat->base_ = base;
    lat->arity_ = arity;
    return lat;
  }

 private:
  std::vector<std::string> names_;
  std::vector<int> skew_;
  LatticePtr base_;
  std::size_t arity_ = 1;
};

/// Integer weights per generator; a monomial's degree in each component is
/// the weighted exponent sum. Truncation drops monomials exceeding the bound
/// in any component.
struct Grading {
  std::vector<std::vector<int>> weights;

  static Grading uniform(std::size_t n, int w = 1) { return Grading{{std::vector<int>(n, w)}}; }

  std::vector<long> degree(const Monomial& m) const {
    std::vector<long> d;
    d.reserve(weights.size());
    for (const auto& w : weights) {
      long s = 0;
      for (std::size_t i = 0; i < w.size(); ++i) s += static_cast<long>(w[i]) * m[i];
      d.push_back(s);
    }
    return d;
  }

  bool within(const Monomial& m, long bound) const {
    for (const auto& w : weights) {
      long s = 0;
      for (std::size_t i = 0; i < w.size(); ++i) s += static_cast<long>(w[i]) * m[i];
      if (s > bound) return false;
    }
    return true;
  }

  long total(const Monomial& m) const {
    long s = 0;
    for (long d : degree(m)) s += d;
    return s;
  }
};

class WeylElement {
 public:
  using Terms = std::map<Monomial, QScalar>;

  explicit WeylElement(LatticePtr lat) : lat_(std::move(lat)) {}
  WeylElement(LatticePtr lat, const QScalar& c) : lat_(std::move(lat)) {
    if (!c.is_zero()) terms_.emplace(Monomial{}, c);
  }

  static WeylElement monomial(LatticePtr lat, const Monomial& m, const QScalar& c = QScalar(1)) {
    WeylElement r(std::move(lat));
    if (!c.is_zero()) r.terms_.emplace(m, c);
    return r;
  }

  static WeylElement generator(const LatticePtr& lat, std::size_t i, int power = 1) {
    if (i >= lat->size()) throw std::out_of_range("WeylElement::generator: index out of range");
    Monomial m;
    m[i] = power;
    return monomial(lat, m);
  }

  static WeylElement one(LatticePtr lat) { return {std::move(lat), QScalar(1)}; }

  const LatticePtr& lattice() const { return lat_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  QScalar coefficient(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? QScalar() : it->second;
  }

  /// Adds c * m in place.
  void add_term(const Monomial& m, const QScalar& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.emplace(m, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  WeylElement operator-() const {
    WeylElement r(lat_);
    for (const auto& [m, c] : terms_) r.terms_.emplace_hint(r.terms_.end(), m, -c);
    return r;
  }

  WeylElement& operator+=(const WeylElement& o) {
    require_same(o);
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
  }
  WeylElement& operator-=(const WeylElement& o) {
    require_same(o);
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
  }
  WeylElement& operator*=(const QScalar& s) {
    if (s.is_zero()) {
      terms_.clear();
      return *this;
    }
    for (auto& [m, c] : terms_) c *= s;
    return *this;
  }

  friend WeylElement operator+(WeylElement a, const WeylElement& b) { return a += b; }
  friend WeylElement operator-(WeylElement a, const WeylElement& b) { return a -= b; }
  friend WeylElement operator*(WeylElement a, const QScalar& s) { return a *= s; }
  friend WeylElement operator*(const QScalar& s, WeylElement a) { return a *= s; }
  friend WeylElement operator*(const WeylElement& a, const WeylElement& b);

  friend bool operator==(const WeylElement& a, const WeylElement& b) {
    return *a.lat_ == *b.lat_ && a.terms_ == b.terms_;
  }

  std::string monomial_str(const Monomial& m) const {
    std::string s;
    for (std::size_t i = 0; i < lat_->size(); ++i) {
      if (m[i] == 0) continue;
      if (!s.empty()) s += "*";
      s += lat_->name(i);
      if (m[i] != 1) s += "^" + std::to_string(m[i]);
    }
    return s.empty() ? "1" : s;
  }

  std::string str() const {
    if (terms_.empty()) return "0";
    std::string out;
    for (const auto& [m, c] : terms_) {
      if (!out.empty()) out += " + ";
      out += "[" + c.str() + "]";
      if (!m.is_identity()) out += "*" + monomial_str(m);
    }
    return out;
  }

  void require_same(const WeylElement& o) const {
    if (lat_ != o.lat_ && !(*lat_ == *o.lat_)) throw std::invalid_argument("WeylElement: lattice mismatch");
  }

 private:
  LatticePtr lat_;
  Terms terms_;
};

/// Exponent of q picked up by reordering g^x g^y into g^{x+y}:
/// sum over i > j of 2 S_ij x_i y_j.
inline long reorder_phase(const Lattice& lat, const Monomial& x, const Monomial& y) {
  const std::size_t n = lat.size();
  long phase = 0;
  for (std::size_t i = 1; i < n; ++i) {
    if (x[i] == 0) continue;
    for (std::size_t j = 0; j < i; ++j) {
      if (y[j] == 0) continue;
      phase += 2L * lat.skew(i, j) * x[i] * y[j];
    }
  }
  return phase;
}

namespace detail {

/// Sums fractions grouped by exact denominator; one canonical reduction per group.
class FractionAccumulator {
 public:
  void add(QScalar::Poly num, const QScalar::Poly* den) {
    for (auto& g : groups_) {
      if (g.den == den || *g.den == *den) {
        g.num += num;
        return;
      }
    }
    groups_.push_back({den, std::move(num)});
  }

  QScalar result() const {
    QScalar total;
    for (const auto& g : groups_) {
      if (g.num.is_zero()) continue;
      total += QScalar::from_fraction(g.num, *g.den);
    }
    return total;
  }

 private:
  struct Group {
    const QScalar::Poly* den;
    QScalar::Poly num;
  };
  std::vector<Group> groups_;
};

}  // namespace detail

namespace detail {

/// Normal-ordered product restricted to result monomials accepted by `keep`.
/// Each monomial pair contributes c_a c_b q^{phase}; coefficients with
/// identical denominators are summed before reduction.
template <class Keep>
WeylElement filtered_product(const WeylElement& a, const WeylElement& b, Keep keep) {
  a.require_same(b);
  const Lattice& lat = *a.lattice();
  WeylElement out(a.lattice());
  if (a.is_zero() || b.is_zero()) return out;

  // distinct denominator products, indexed by (den of a term, den of b term)
  std::vector<QScalar::Poly> dens_a, dens_b;
  auto index_of = [](std::vector<QScalar::Poly>& dens, const QScalar::Poly& d) {
    for (std::size_t k = 0; k < dens.size(); ++k) {
      if (dens[k] == d) return k;
    }
    dens.push_back(d);
    return dens.size() - 1;
  };
  std::vector<std::size_t> ia, ib;
  for (const auto& [m, c] : a.terms()) ia.push_back(index_of(dens_a, c.den()));
  for (const auto& [m, c] : b.terms()) ib.push_back(index_of(dens_b, c.den()));
  std::vector<QScalar::Poly> den_products(dens_a.size() * dens_b.size());
  for (std::size_t i = 0; i < dens_a.size(); ++i) {
    for (std::size_t j = 0; j < dens_b.size(); ++j) den_products[i * dens_b.size() + j] = dens_a[i] * dens_b[j];
  }

  std::map<Monomial, detail::FractionAccumulator> acc;
  const std::size_t n = lat.size();
  std::size_t ka = 0;
  for (const auto& [x, cx] : a.terms()) {
    // v_j = sum_{i>j} 2 S_ij x_i, so the phase for y is v . y
    std::array<long, kMaxGenerators> v{};
    for (std::size_t j = 0; j < n; ++j) {
      long s = 0;
      for (std::size_t i = j + 1; i < n; ++i) s += 2L * lat.skew(i, j) * x[i];
      v[j] = s;
    }
    std::size_t kb = 0;
    for (const auto& [y, cy] : b.terms()) {
      const Monomial xy = x + y;
      if (!keep(xy)) {
        ++kb;
        continue;
      }
      long phase = 0;
      for (std::size_t j = 0; j < n; ++j) phase += v[j] * y[j];
      QScalar::Poly num = (cx.num() * cy.num()).shifted(static_cast<int>(phase));
      acc[xy].add(std::move(num), &den_products[ia[ka] * dens_b.size() + ib[kb]]);
      ++kb;
    }
    ++ka;
  }
  for (auto& [m, a_m] : acc) {
    QScalar c = a_m.result();
    if (!c.is_zero()) out.add_term(m, c);
  }
  return out;
}

}  // namespace detail

inline WeylElement operator*(const WeylElement& a, const WeylElement& b) {
  return detail::filtered_product(a, b, [](const Monomial&) { return true; });
}

inline WeylElement normal_product(const WeylElement& a, const WeylElement& b) { return a * b; }

/// Slow reference product: expands each monomial into a word of single
/// generators and sorts it by adjacent transpositions, one phase per swap.
inline WeylElement transposition_product(const WeylElement& a, const WeylElement& b) {
  a.require_same(b);
  const Lattice& lat = *a.lattice();
  WeylElement out(a.lattice());
  for (const auto& [x, cx] : a.terms()) {
    for (const auto& [y, cy] : b.terms()) {
      // word of (generator, +-1) letters
      std::vector<std::pair<std::size_t, int>> word;
      for (const Monomial* m : {&x, &y}) {
        for (std::size_t i = 0; i < lat.size(); ++i) {
          const int e = (*m)[i];
          for (int k = 0; k < std::abs(e); ++k) word.emplace_back(i, e > 0 ? 1 : -1);
        }
      }
      long phase = 0;
      bool swapped = true;
      while (swapped) {
        swapped = false;
        for (std::size_t k = 0; k + 1 < word.size(); ++k) {
          auto [gi, si] = word[k];
          auto [gj, sj] = word[k + 1];
          if (gi > gj) {
            // g_i^si g_j^sj = q^{2 S_ij si sj} g_j^sj g_i^si
            phase += 2L * lat.skew(gi, gj) * si * sj;
            std::swap(word[k], word[k + 1]);
            swapped = true;
          }
        }
      }
      out.add_term(x + y, (cx * cy).times_q_pow(static_cast<int>(phase)));
    }
  }
  return out;
}

/// Coefficient of the identity monomial.
inline QScalar trace(const WeylElement& a) { return a.coefficient(Monomial{}); }

inline WeylElement commutator(const WeylElement& a, const WeylElement& b) { return a * b - b * a; }

/// Integer power (negative powers only for single monomials).
inline WeylElement power(const WeylElement& a, int k) {
  if (k < 0) {
    if (a.size() != 1) throw std::invalid_argument("power: negative power of a non-monomial");
    const auto& [m, c] = *a.terms().begin();
    // (c g^m)^{-1} = c^{-1} q^{-phase(m,-m)} g^{-m}
    const long ph = reorder_phase(*a.lattice(), m, -m);
    WeylElement inv = WeylElement::monomial(a.lattice(), -m, (QScalar(1) / c).times_q_pow(static_cast<int>(-ph)));
    return power(inv, -k);
  }
  WeylElement r = WeylElement::one(a.lattice());
  for (int i = 0; i < k; ++i) r = r * a;
  return r;
}

/// Drops monomials whose graded degree exceeds the bound in any component.
inline WeylElement truncate(const WeylElement& a, const Grading& grading, long bound) {
  if (bound < 0) throw std::invalid_argument("truncate: negative bound");
  WeylElement r(a.lattice());
  for (const auto& [m, c] : a.terms()) {
    if (grading.within(m, bound)) r.add_term(m, c);
  }
  return r;
}

/// truncate(a * b), without accumulating the discarded monomials.
inline WeylElement truncated_product(const WeylElement& a, const WeylElement& b, const Grading& grading, long bound) {
  if (bound < 0) throw std::invalid_argument("truncate: negative bound");
  return detail::filtered_product(a, b, [&](const Monomial& m) { return grading.within(m, bound); });
}

/// Places an element of an r-fold tensor lattice into slots `slots` of an
/// `arity`-fold tensor power of the same base. Other slots carry the identity.
inline WeylElement tensor_embed(const WeylElement& a, const std::vector<std::size_t>& slots, std::size_t arity) {
  const Lattice& src = *a.lattice();
  if (slots.size() != src.arity()) throw std::invalid_argument("tensor_embed: slot list does not match source arity");
  LatticePtr base = src.arity() == 1 ? a.lattice() : src.base_ptr();
  for (std::size_t s : slots) {
    if (s >= arity) throw std::invalid_argument("tensor_embed: slot out of range");
  }
  LatticePtr target = Lattice::tensor(base, arity);
  const std::size_t b = base->size();
  WeylElement r(target);
  for (const auto& [m, c] : a.terms()) {
    Monomial t;
    for (std::size_t k = 0; k < slots.size(); ++k) {
      for (std::size_t i = 0; i < b; ++i) t[slots[k] * b + i] = m[k * b + i];
    }
    r.add_term(t, c);
  }
  return r;
}

inline WeylElement tensor_embed(const WeylElement& a, std::size_t slot, std::size_t arity) {
  return tensor_embed(a, std::vector<std::size_t>{slot}, arity);
}

/// a (x) b on the two-fold tensor lattice.
inline WeylElement tensor(const WeylElement& a, const WeylElement& b) {
  return tensor_embed(a, 0, 2) * tensor_embed(b, 1, 2);
}

/// Permutes tensor slots: the content of slot s moves to slot perm[s].
inline WeylElement permute_slots(const WeylElement& a, const std::vector<std::size_t>& perm) {
  const Lattice& lat = *a.lattice();
  const std::size_t r = lat.arity();
  if (perm.size() != r) throw std::invalid_argument("permute_slots: permutation size mismatch");
  const std::size_t b = lat.block_size();
  WeylElement out(a.lattice());
  for (const auto& [m, c] : a.terms()) {
    Monomial t;
    for (std::size_t s = 0; s < r; ++s) {
      for (std::size_t i = 0; i < b; ++i) t[perm[s] * b + i] = m[s * b + i];
    }
    // slots commute with each other, so no reordering phase
    out.add_term(t, c);
  }
  return out;
}

/// sigma(a (x) b) = b (x) a
inline WeylElement flip(const WeylElement& a) { return permute_slots(a, {1, 0}); }

/// exp(b m.p) written in normal order: q^{-sum_{i<j} m_i m_j S_ij} g^m.
inline WeylElement weyl_exponential(const LatticePtr& lat, const Monomial& m) {
  long ph = 0;
  for (std::size_t i = 0; i < lat->size(); ++i) {
    for (std::size_t j = i + 1; j < lat->size(); ++j) ph += static_cast<long>(m[i]) * m[j] * lat->skew(i, j);
  }
  return WeylElement::monomial(lat, m, QScalar::q_pow(static_cast<int>(-ph)));
}

// ---------------------------------------------------------------------------
// Cartan twist on tensor powers of C_q.
//
// For slot pairs i < j the twist is conjugation by exp(k_ij/(2 pi i) X_i Y_j)
// with X = p2 + p3 and Y = p1 + p4 in the respective slots. On a monomial u
// with X-charge n_s and Y-charge n'_s per slot ([X_s, u] = 2 pi i b n_s u):
//
//   u -> q^{2 sum k_ij n_i n'_j} u exp(b sum k_ij (n'_j X_i + n_i Y_j))
// ---------------------------------------------------------------------------

/// Linear forms of the Cartan elements on the C_q p-basis: K = exp(b X), K' = exp(b Y).
inline Monomial cartan_form_x() {
  Monomial m;
  m[1] = 1;
  m[2] = 1;
  return m;
}
inline Monomial cartan_form_y() {
  Monomial m;
  m[0] = 1;
  m[3] = 1;
  return m;
}

/// Integer adjoint eigenvalue of `form` (a linear combination of p's in one
/// C_q block starting at `offset`) on the monomial m: sum_ij form_i S_ij m_j.
inline long adjoint_charge(const Lattice& lat, const Monomial& form, std::size_t offset, const Monomial& m) {
  const std::size_t b = lat.block_size();
  long n = 0;
  for (std::size_t i = 0; i < b; ++i) {
    if (form[i] == 0) continue;
    for (std::size_t j = 0; j < b; ++j) n += static_cast<long>(form[i]) * lat.skew(offset + i, offset + j) * m[offset + j];
  }
  return n;
}

/// Integer twist exponents k_ij for slot pairs i < j.
class TwistExponents {
 public:
  TwistExponents() = default;
  explicit TwistExponents(std::size_t arity) : arity_(arity), k_(arity * arity, 0) {}

  static TwistExponents pair(std::size_t arity, std::size_t i, std::size_t j, int k) {
    TwistExponents t(arity);
    t.set(i, j, k);
    return t;
  }

  std::size_t arity() const { return arity_; }
  int at(std::size_t i, std::size_t j) const { return k_[i * arity_ + j]; }
  void set(std::size_t i, std::size_t j, int k) {
    if (i >= j || j >= arity_) throw std::invalid_argument("TwistExponents: need i < j < arity");
    k_[i * arity_ + j] = k;
  }
  bool is_zero() const {
    return std::all_of(k_.begin(), k_.end(), [](int k) { return k == 0; });
  }

  TwistExponents operator+(const TwistExponents& o) const {
    check(o);
    TwistExponents r = *this;
    for (std::size_t i = 0; i < k_.size(); ++i) r.k_[i] += o.k_[i];
    return r;
  }
  TwistExponents operator-() const {
    TwistExponents r = *this;
    for (auto& k : r.k_) k = -k;
    return r;
  }
  friend bool operator==(const TwistExponents&, const TwistExponents&) = default;

 private:
  void check(const TwistExponents& o) const {
    if (o.arity_ != arity_) throw std::invalid_argument("TwistExponents: arity mismatch");
  }
  std::size_t arity_ = 0;
  std::vector<int> k_;
};

/// Applies the Cartan twist to every monomial (an algebra automorphism).
inline WeylElement cartan_twist(const WeylElement& a, const TwistExponents& t) {
  const LatticePtr& latp = a.lattice();
  const Lattice& lat = *latp;
  const std::size_t r = lat.arity();
  if (t.arity() != r) throw std::invalid_argument("cartan_twist: twist arity does not match lattice");
  if (lat.block_size() != 4) throw std::invalid_argument("cartan_twist: lattice is not a tensor power of C_q");
  if (t.is_zero()) return a;
  const Monomial fx = cartan_form_x();
  const Monomial fy = cartan_form_y();
  WeylElement out(latp);
  for (const auto& [m, c] : a.terms()) {
    std::vector<long> nx(r), ny(r);
    for (std::size_t s = 0; s < r; ++s) {
      nx[s] = adjoint_charge(lat, fx, 4 * s, m);
      ny[s] = adjoint_charge(lat, fy, 4 * s, m);
    }
    long phase = 0;
    Monomial form;  // linear form in units of b
    for (std::size_t i = 0; i < r; ++i) {
      for (std::size_t j = i + 1; j < r; ++j) {
        const long k = t.at(i, j);
        if (k == 0) continue;
        phase += 2 * k * nx[i] * ny[j];
        for (std::size_t g = 0; g < 4; ++g) {
          form[4 * i + g] += static_cast<int>(k * ny[j] * fx[g]);
          form[4 * j + g] += static_cast<int>(k * nx[i] * fy[g]);
        }
      }
    }
    if (form.is_identity()) {
      out.add_term(m, c.times_q_pow(static_cast<int>(phase)));
      continue;
    }
    WeylElement factor = weyl_exponential(latp, form);
    const auto& [fm, fc] = *factor.terms().begin();
    const long ph = reorder_phase(lat, m, fm);
    out.add_term(m + fm, (c * fc).times_q_pow(static_cast<int>(phase + ph)));
  }
  return out;
}

/// Two-slot twist with exponent k.
inline WeylElement cartan_twist(const WeylElement& a, int k) {
  return cartan_twist(a, TwistExponents::pair(2, 0, 1, k));
}

/// Grading by the X-charge of one slot, scaled by `sign`; generators in other slots weigh 0.
inline std::vector<int> slot_charge_weights(const Lattice& lat, std::size_t slot, int sign = 1) {
  std::vector<int> w(lat.size(), 0);
  const Monomial fx = cartan_form_x();
  for (std::size_t g = 0; g < lat.block_size(); ++g) {
    Monomial m;
    m[slot * lat.block_size() + g] = 1;
    w[slot * lat.block_size() + g] = sign * static_cast<int>(adjoint_charge(lat, fx, slot * lat.block_size(), m));
  }
  return w;
}

/// Solves the stacked system target[p] = sum_k x_k basis[k][p] (p indexes
/// independent equations) exactly. Returns nullopt when inconsistent; free
/// variables of a dependent basis are set to zero.
inline std::optional<std::vector<QScalar>> solve_in_span(const std::vector<WeylElement>& target,
                                                         const std::vector<std::vector<WeylElement>>& basis) {
  using Row = std::pair<std::size_t, Monomial>;
  std::map<Row, std::size_t> rows;
  auto row_of = [&](std::size_t part, const Monomial& m) {
    auto [it, inserted] = rows.emplace(Row{part, m}, rows.size());
    return it->second;
  };
  for (const auto& b : basis) {
    if (b.size() != target.size()) throw std::invalid_argument("solve_in_span: equation count mismatch");
    for (std::size_t p = 0; p < b.size(); ++p) {
      target[p].require_same(b[p]);
      for (const auto& [m, c] : b[p].terms()) row_of(p, m);
    }
  }
  for (std::size_t p = 0; p < target.size(); ++p) {
    for (const auto& [m, c] : target[p].terms()) row_of(p, m);
  }
  const std::size_t nr = rows.size();
  const std::size_t nc = basis.size();
  std::vector<std::vector<QScalar>> mat(nr, std::vector<QScalar>(nc + 1));
  for (std::size_t k = 0; k < nc; ++k) {
    for (std::size_t p = 0; p < target.size(); ++p) {
      for (const auto& [m, c] : basis[k][p].terms()) mat[row_of(p, m)][k] = c;
    }
  }
  for (std::size_t p = 0; p < target.size(); ++p) {
    for (const auto& [m, c] : target[p].terms()) mat[row_of(p, m)][nc] = c;
  }

  std::vector<std::size_t> pivot_col;
  std::size_t rank = 0;
  for (std::size_t col = 0; col < nc && rank < nr; ++col) {
    std::size_t piv = rank;
    while (piv < nr && mat[piv][col].is_zero()) ++piv;
    if (piv == nr) continue;
    std::swap(mat[piv], mat[rank]);
    const QScalar inv = QScalar(1) / mat[rank][col];
    for (auto& v : mat[rank]) v *= inv;
    for (std::size_t i = 0; i < nr; ++i) {
      if (i == rank || mat[i][col].is_zero()) continue;
      const QScalar f = mat[i][col];
      for (std::size_t j = col; j <= nc; ++j) mat[i][j] -= f * mat[rank][j];
    }
    pivot_col.push_back(col);
    ++rank;
  }
  for (std::size_t i = rank; i < nr; ++i) {
    if (!mat[i][nc].is_zero()) return std::nullopt;
  }
  std::vector<QScalar> x(nc);
  for (std::size_t i = 0; i < rank; ++i) x[pivot_col[i]] = mat[i][nc];
  return x;
}

/// Single-equation form of solve_in_span.
inline std::optional<std::vector<QScalar>> solve_in_span(const WeylElement& target, const std::vector<WeylElement>& basis) {
  std::vector<std::vector<WeylElement>> stacked;
  stacked.reserve(basis.size());
  for (const auto& b : basis) stacked.push_back({b});
  return solve_in_span(std::vector<WeylElement>{target}, stacked);
}

}  // namespace mdq
