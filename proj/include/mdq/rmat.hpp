#pragma once

// Truncated universal R-matrix on C_q (x) C_q as a Cartan twist times four
// q-exponent factors, with coproduct candidates, intertwining and Yang-Baxter.
//
// A TwistedSeries (T, S) stands for Phi_T S, where Phi_T is the formal Cartan
// factor and conjugation by Phi_T is cartan_twist(., T). Hence
//   (T1, S1)(T2, S2) = (T1 + T2, twist(S1, -T2) S2).

#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "mdq/check.hpp"
#include "mdq/chevalley.hpp"
#include "mdq/qseries.hpp"
#include "mdq/weyl.hpp"

namespace mdq {

struct TwistedSeries {
  TwistExponents twist;
  WeylElement series;
  long bound = 0;
  Grading grading;
};

inline TwistedSeries multiply(const TwistedSeries& a, const TwistedSeries& b) {
  if (a.bound != b.bound) throw std::invalid_argument("multiply: truncation bounds differ");
  WeylElement s = truncated_product(cartan_twist(a.series, -b.twist), b.series, a.grading, a.bound);
  return {a.twist + b.twist, std::move(s), a.bound, a.grading};
}

// ---------------------------------------------------------------------------
// Coproduct candidates: Delta K = K (x) K, Delta K' = K' (x) K',
// Delta e = e (x) A + B (x) e, Delta f = f (x) C + D (x) f with A..D group-like.
// ---------------------------------------------------------------------------

enum class GroupLike { One, K, Kp };

inline const char* to_string(GroupLike g) {
  switch (g) {
    case GroupLike::One: return "1";
    case GroupLike::K: return "K";
    case GroupLike::Kp: return "K'";
  }
  return "?";
}

struct CoproductConvention {
  GroupLike e_right, e_left, f_right, f_left;

  std::string delta_e() const {
    return std::string("e(x)") + to_string(e_right) + " + " + to_string(e_left) + "(x)e";
  }
  std::string delta_f() const {
    return std::string("f(x)") + to_string(f_right) + " + " + to_string(f_left) + "(x)f";
  }
  std::string id() const { return "De=" + delta_e() + "; Df=" + delta_f(); }
  friend bool operator==(const CoproductConvention&, const CoproductConvention&) = default;
};

/// The enumerated candidates: Delta e in {e(x)1 + K(x)e, e(x)K' + 1(x)e},
/// Delta f in {f(x)K' + 1(x)f, f(x)1 + K(x)f}.
inline std::vector<CoproductConvention> coproduct_candidates() {
  using G = GroupLike;
  const std::array<std::pair<G, G>, 2> es{{{G::One, G::K}, {G::Kp, G::One}}};
  const std::array<std::pair<G, G>, 2> fs{{{G::Kp, G::One}, {G::One, G::K}}};
  std::vector<CoproductConvention> out;
  for (const auto& [er, el] : es)
    for (const auto& [fr, fl] : fs) out.push_back({er, el, fr, fl});
  return out;
}

struct CoproductTable {
  CoproductConvention convention;
  GeneratorSet images;  // on the 8-generator tensor lattice
  std::vector<SymbolicCheck> homomorphism;
  bool is_homomorphism() const {
    for (const auto& c : homomorphism)
      if (!c.passed()) return false;
    return true;
  }
};

namespace detail {

inline const WeylElement& pick(const GeneratorSet& g, GroupLike x, const WeylElement& one) {
  switch (x) {
    case GroupLike::K: return g.K;
    case GroupLike::Kp: return g.Kp;
    case GroupLike::One: break;
  }
  return one;
}

}  // namespace detail

/// Images of the generators under the convention, with the seven relations
/// re-checked in the tensor square. Does not throw on failure; see coproduct().
inline CoproductTable coproduct_table(const CoproductConvention& c) {
  const GeneratorSet g = embed();
  const WeylElement one = WeylElement::one(g.e.lattice());
  auto t = [](const WeylElement& a, const WeylElement& b) { return tensor(a, b); };
  GeneratorSet d{t(g.e, detail::pick(g, c.e_right, one)) + t(detail::pick(g, c.e_left, one), g.e),
                 t(g.f, detail::pick(g, c.f_right, one)) + t(detail::pick(g, c.f_left, one), g.f),
                 t(g.K, g.K),
                 t(g.Kp, g.Kp),
                 t(g.K_inv, g.K_inv),
                 t(g.Kp_inv, g.Kp_inv)};
  CoproductTable table{c, d, verify_uq(d)};
  for (auto& chk : table.homomorphism) chk.id = "Delta:" + chk.id;
  return table;
}

/// Throws std::invalid_argument when the convention is not an algebra homomorphism.
inline CoproductTable coproduct(const CoproductConvention& c) {
  CoproductTable t = coproduct_table(c);
  if (!t.is_homomorphism()) throw std::invalid_argument("coproduct: " + c.id() + " is not a homomorphism");
  return t;
}

// ---------------------------------------------------------------------------
// R-matrix
// ---------------------------------------------------------------------------

/// Arguments of the four q-exponent factors, (i, j) meaning w_i (x) w_j.
using FactorOrder = std::array<std::pair<int, int>, 4>;

/// Order as printed: s(w1 w3) s(w1 w4) s(w2 w3) s(w2 w4).
inline constexpr FactorOrder kPrintedOrder{{{1, 3}, {1, 4}, {2, 3}, {2, 4}}};
/// Order in which each factor pair meets the Schutzenberger condition under
/// the adopted relation direction (the reverse of the printed order).
inline constexpr FactorOrder kAdoptedOrder{{{2, 4}, {2, 3}, {1, 4}, {1, 3}}};

inline std::string to_string(const FactorOrder& o) {
  std::string s;
  for (const auto& [i, j] : o) s += "s(w" + std::to_string(i) + "w" + std::to_string(j) + ")";
  return s;
}

/// Grading on C_q (x) C_q by the X-charge of slot 1: w1, w2 weigh +1, w3, w4 weigh -1.
inline Grading slot1_grading() {
  const LatticePtr lat = Lattice::tensor(Lattice::cyclic(), 2);
  return Grading{{slot_charge_weights(*lat, 0)}};
}

inline WeylElement pair_generator(int i, int j) {
  const LatticePtr c = Lattice::cyclic();
  return tensor(WeylElement::generator(c, static_cast<std::size_t>(i - 1)),
                WeylElement::generator(c, static_cast<std::size_t>(j - 1)));
}

/// Ordered product of the four truncated factors.
inline WeylElement four_factor_product(long bound, const FactorOrder& order, const Grading& gr) {
  std::optional<WeylElement> acc;
  for (const auto& [i, j] : order) {
    WeylElement s = sq(pair_generator(i, j), bound, SqForm::Sum, gr).body;
    acc = acc ? truncated_product(*acc, s, gr, bound) : std::move(s);
  }
  return *acc;
}

/// R = Phi_k s s s s truncated at slot-1 degree N.
inline TwistedSeries build_R(long bound, int k, const FactorOrder& order = kAdoptedOrder) {
  if (bound < 0) throw std::invalid_argument("build_R: negative truncation bound");
  const Grading gr = slot1_grading();
  return {TwistExponents::pair(2, 0, 1, k), four_factor_product(bound, order, gr), bound, gr};
}

/// s_q((w1+w2)(x)(w3+w4)) minus the ordered four-factor product.
inline SymbolicCheck check_factorization(long bound, const FactorOrder& order = kAdoptedOrder) {
  const Grading gr = slot1_grading();
  const WeylElement arg = pair_generator(1, 3) + pair_generator(1, 4) + pair_generator(2, 3) + pair_generator(2, 4);
  const WeylElement whole = sq(arg, bound, SqForm::Sum, gr).body;
  const bool adopted = order == kAdoptedOrder;
  return SymbolicCheck{adopted ? "four-factor-split" : "four-factor-split:" + to_string(order),
                       "s_q((w1+w2)(x)(w3+w4)) = s s s s", bound, {four_factor_product(bound, order, gr) - whole},
                       adopted};
}

struct IntertwiningResult {
  CoproductConvention convention;
  bool homomorphism = false;
  int k = 0;
  std::vector<SymbolicCheck> residuals;  // x = K, K', e, f
  bool passed() const {
    for (const auto& c : residuals)
      if (!c.is_zero()) return false;
    return true;
  }
};

/// Residuals S Delta(x) - twist(sigma Delta(x), -k) S for x in {K, K', e, f},
/// i.e. R Delta(x) R^-1 - sigma Delta(x) with R = Phi_k S. A term of Delta(x)
/// with slot-1 charge c is exact up to degree N + c, so each residual is
/// truncated at N + min(0, min c).
inline IntertwiningResult intertwining_residuals(const CoproductTable& table, const TwistedSeries& R) {
  const Grading& gr = R.grading;
  IntertwiningResult res{table.convention, table.is_homomorphism(), R.twist.at(0, 1), {}};
  const std::pair<const char*, const WeylElement*> xs[] = {
      {"K", &table.images.K}, {"K'", &table.images.Kp}, {"e", &table.images.e}, {"f", &table.images.f}};
  for (const auto& [name, dx] : xs) {
    long min_charge = 0;
    for (const auto& [m, c] : dx->terms()) min_charge = std::min(min_charge, gr.degree(m)[0]);
    const long bound = R.bound + min_charge;
    const WeylElement flipped = cartan_twist(flip(*dx), -R.twist);
    const WeylElement r = truncated_product(R.series, *dx, gr, bound) - truncated_product(flipped, R.series, gr, bound);
    res.residuals.push_back(SymbolicCheck{std::string("intertwining:") + name, "\\sigma \\circ \\triangle = R \\triangle R^{-1}",
                                          bound, {r}, true});
  }
  return res;
}

struct IntertwiningReport {
  std::vector<IntertwiningResult> results;  // every candidate x k
  std::vector<std::size_t> passing;         // indices into results
  std::optional<IntertwiningResult> control;  // k = 0 with the first homomorphic candidate
};

/// Runs every candidate convention against k = -1, +1, and a k = 0 control.
inline IntertwiningReport check_intertwining(long bound, const std::vector<CoproductConvention>& candidates = coproduct_candidates(),
                                             const FactorOrder& order = kAdoptedOrder) {
  if (bound < 2) throw std::invalid_argument("check_intertwining: need N >= 2");
  IntertwiningReport rep;
  std::vector<CoproductTable> tables;
  for (const auto& c : candidates) tables.push_back(coproduct_table(c));
  for (int k : {-1, 1}) {
    const TwistedSeries R = build_R(bound, k, order);
    for (const auto& t : tables) {
      rep.results.push_back(intertwining_residuals(t, R));
      if (rep.results.back().passed() && t.is_homomorphism()) rep.passing.push_back(rep.results.size() - 1);
    }
  }
  for (const auto& t : tables) {
    if (!t.is_homomorphism()) continue;
    rep.control = intertwining_residuals(t, build_R(bound, 0, order));
    break;
  }
  return rep;
}

/// The unique passing (k, convention) of a report. Throws ConventionError when
/// no pair passes or when several do.
inline const IntertwiningResult& select_convention(const IntertwiningReport& rep) {
  if (rep.passing.empty()) throw ConventionError("check_intertwining: no (k, coproduct) pair intertwines");
  if (rep.passing.size() > 1) throw ConventionError("check_intertwining: more than one (k, coproduct) pair intertwines");
  return rep.results[rep.passing.front()];
}

/// All 81 conventions of the general group-like shape (A, B, C, D).
inline std::vector<CoproductConvention> all_grouplike_shapes() {
  const GroupLike gs[] = {GroupLike::One, GroupLike::K, GroupLike::Kp};
  std::vector<CoproductConvention> out;
  for (GroupLike a : gs)
    for (GroupLike b : gs)
      for (GroupLike c : gs)
        for (GroupLike d : gs) out.push_back({a, b, c, d});
  return out;
}

/// Homomorphic group-like conventions and twists in [k_min, k_max] that intertwine.
struct ScanHit {
  CoproductConvention convention;
  int k = 0;
};

inline std::vector<ScanHit> scan_intertwining(long bound, int k_min, int k_max) {
  std::vector<CoproductTable> tables;
  for (const auto& c : all_grouplike_shapes()) {
    CoproductTable t = coproduct_table(c);
    if (t.is_homomorphism()) tables.push_back(std::move(t));
  }
  std::vector<ScanHit> hits;
  for (int k = k_min; k <= k_max; ++k) {
    const TwistedSeries R = build_R(bound, k);
    for (const auto& t : tables)
      if (intertwining_residuals(t, R).passed()) hits.push_back({t.convention, k});
  }
  return hits;
}

/// Delta e = e(x)K + 1(x)e, Delta f = f(x)1 + K'(x)f: the opposite of the first
/// enumerated candidate, found by scan_intertwining.
inline CoproductConvention opposite_convention() { return {GroupLike::K, GroupLike::One, GroupLike::One, GroupLike::Kp}; }

// ---------------------------------------------------------------------------
// Yang-Baxter on C_q^(x)3
// ---------------------------------------------------------------------------

/// Two-component grading on the triple tensor: slot-1 X-charge and minus the
/// slot-3 X-charge. R12 terms have degree (1,0), R13 (1,1), R23 (0,1).
inline Grading triple_grading() {
  const LatticePtr lat = Lattice::tensor(Lattice::cyclic(), 3);
  return Grading{{slot_charge_weights(*lat, 0), slot_charge_weights(*lat, 2, -1)}};
}

/// R_ij on the triple tensor, truncated with the box bound N on the triple grading.
inline TwistedSeries embed_R(const TwistedSeries& R, std::size_t i, std::size_t j, long bound) {
  const Grading gr = triple_grading();
  WeylElement s = truncate(tensor_embed(R.series, {i, j}, 3), gr, bound);
  return {TwistExponents::pair(3, i, j, R.twist.at(0, 1)), std::move(s), bound, gr};
}

/// Residual of R12 R13 R23 = R23 R13 R12. With `scrambled`, the right-hand
/// side is R13 R23 R12 instead (negative control).
inline SymbolicCheck check_yang_baxter(long bound, int k, bool scrambled = false,
                                       const FactorOrder& order = kAdoptedOrder) {
  if (bound < 2) throw std::invalid_argument("check_yang_baxter: need N >= 2");
  const TwistedSeries R = build_R(bound, k, order);
  const TwistedSeries r12 = embed_R(R, 0, 1, bound);
  const TwistedSeries r13 = embed_R(R, 0, 2, bound);
  const TwistedSeries r23 = embed_R(R, 1, 2, bound);
  const TwistedSeries lhs = multiply(multiply(r12, r13), r23);
  const TwistedSeries rhs = scrambled ? multiply(multiply(r13, r23), r12) : multiply(multiply(r23, r13), r12);
  if (!(lhs.twist == rhs.twist)) throw std::logic_error("check_yang_baxter: twist exponents differ");
  return SymbolicCheck{scrambled ? "yang-baxter-control-scrambled" : "yang-baxter",
                       "R_{12} R_{13} R_{23} = R_{23} R_{13} R_{12}", bound, {lhs.series - rhs.series}, !scrambled};
}

}  // namespace mdq
