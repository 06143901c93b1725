#pragma once

#include <bit>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "dualbraid/poset.hpp"

namespace dualbraid {

class NotBalancedError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// The pre-monoid of divisors of a balanced element g in a generated group:
/// simples are the divisors, the product of two simples is their group
/// product when lengths add and the result still divides g, Delta is g and
/// the atoms are the generators.
///
/// Immutable after construction apart from the explicit fault-injection hook
/// used by the Garside verifier's negative controls.
class PreMonoidView {
public:
  PreMonoidView(const GroupContext& ctx, GenKind kind, const GroupElement& delta,
                size_t cap = 100000)
      : poset_(ctx, kind, delta, cap), kind_(kind) {
    if (kind == GenKind::Simple) check_balanced();
    const GroupContext& g = context();
    num_atoms_ = kind == GenKind::Simple ? g.rank() : g.num_reflections();
    atom_id_.assign(num_atoms_, -1);
    atom_ordinal_.assign(size(), -1);
    for (int a = 0; a < num_atoms_; ++a) {
      atom_id_[a] = poset_.index_of(generator(a));
      if (atom_id_[a] >= 0) atom_ordinal_[atom_id_[a]] = a;
    }
    rebuild_divisibility_bits();
    rcomp_.resize(size());
    lcomp_.resize(size());
    delta_conj_.resize(size());
    const bool small = size() <= kComplementCap;
    delta_conj_inv_.assign(size(), small ? -1 : kLazy);
    for (int x = 0; x < static_cast<int>(size()); ++x) {
      rcomp_[x] = small ? poset_.index_of(poset_.complement(x)) : kLazy;
      lcomp_[x] = small ? compute_left_complement(x) : kLazy;
      delta_conj_[x] = small ? compute_delta_conj(x) : kLazy;
    }
    if (small)
      for (int x = 0; x < static_cast<int>(size()); ++x)
        if (delta_conj_[x] >= 0) delta_conj_inv_[delta_conj_[x]] = x;
  }

  const GroupContext& context() const { return poset_.context(); }
  const DivisibilityPoset& poset() const { return poset_; }
  GenKind kind() const { return kind_; }
  size_t size() const { return poset_.size(); }
  int unit() const { return 0; }
  int delta() const { return poset_.top(); }
  int length(int x) const { return poset_.rank(x); }
  const GroupElement& element(int x) const { return poset_.element(x); }
  int index_of(const GroupElement& e) const { return poset_.index_of(e); }

  int num_atoms() const { return num_atoms_; }
  /// Simple id of atom a, or -1 when the generator does not divide Delta.
  int atom(int a) const { return atom_id_[a]; }
  const GroupElement& generator(int a) const {
    return kind_ == GenKind::Simple ? context().simple_reflection(a) : context().reflection(a);
  }

  /// Partial product: defined iff lengths add and the result divides Delta.
  std::optional<int> product(int a, int b) const {
    if (withheld_.count({a, b})) return std::nullopt;
    if (a == 0) return b;
    if (b == 0) return a;
    int j = poset_.index_of(context().multiply(element(a), element(b)));
    if (j < 0 || poset_.rank(j) != length(a) + length(b)) return std::nullopt;
    return j;
  }

  /// Exists r with a r = b (in-premonoid left divisibility).
  bool left_divides(int a, int b) const {
    int q = left_quotient(a, b);
    return q >= 0;
  }
  /// Exists r with r a = b.
  bool right_divides(int a, int b) const {
    int q = right_quotient(a, b);
    return q >= 0;
  }

  /// The r with a r = b, or -1.
  int left_quotient(int a, int b) const {
    if (length(a) > length(b)) return -1;
    int q = poset_.index_of(
        context().multiply(poset_.inverse_element(a), element(b)));
    if (q < 0 || length(a) + length(q) != length(b)) return -1;
    if (!withheld_.empty() && !product(a, q).has_value()) return -1;
    return q;
  }
  /// The r with r a = b, or -1.
  int right_quotient(int a, int b) const {
    if (length(a) > length(b)) return -1;
    int q = poset_.index_of(
        context().multiply(element(b), poset_.inverse_element(a)));
    if (q < 0 || length(a) + length(q) != length(b)) return -1;
    if (!withheld_.empty() && !product(q, a).has_value()) return -1;
    return q;
  }

  /// x^{-1} Delta.
  int right_complement(int x) const {
    if (rcomp_[x] != kLazy) return rcomp_[x];
    return poset_.index_of(poset_.complement(x));
  }
  /// Delta x^{-1}.
  int left_complement(int x) const {
    if (lcomp_[x] != kLazy) return lcomp_[x];
    return compute_left_complement(x);
  }
  /// tau(x) = Delta^{-1} x Delta; -1 if the conjugate is not a simple.
  int delta_conjugate(int x) const {
    if (delta_conj_[x] != kLazy) return delta_conj_[x];
    return compute_delta_conj(x);
  }
  /// tau^{-1}(x) = Delta x Delta^{-1}; -1 if not a simple.
  int delta_conjugate_inv(int x) const {
    if (delta_conj_inv_[x] != kLazy) return delta_conj_inv_[x];
    int y = poset_.index_of(context().multiply(
        context().multiply(element(delta()), element(x)), poset_.inverse_element(delta())));
    return y;
  }

  /// Bitmask over atoms a with atom(a) left-dividing x.
  const std::vector<std::uint64_t>& atoms_dividing_left(int x) const { return left_bits_[x]; }
  const std::vector<std::uint64_t>& atoms_dividing_right(int x) const { return right_bits_[x]; }

  bool lattice_verified() const { return lattice_verified_; }
  void mark_lattice_verified(bool v) { lattice_verified_ = v; }

  /// Common-divisor computations. Verified views strip common atoms (the
  /// greedy route the lattice property licenses); unverified views fall back
  /// to an exhaustive scan whose uniqueness is checked, not assumed.
  int left_gcd(int x, int y) const {
    if (!lattice_verified_) return searched_gcd(x, y, /*left=*/true);
    int d = 0;
    while (true) {
      int a = first_common_atom(atoms_dividing_left(x), atoms_dividing_left(y));
      if (a < 0) return d;
      int t = atom_id_[a];
      d = *product(d, t);
      x = left_quotient(t, x);
      y = left_quotient(t, y);
    }
  }
  int right_gcd(int x, int y) const {
    if (!lattice_verified_) return searched_gcd(x, y, /*left=*/false);
    int d = 0;
    while (true) {
      int a = first_common_atom(atoms_dividing_right(x), atoms_dividing_right(y));
      if (a < 0) return d;
      int t = atom_id_[a];
      d = *product(t, d);
      x = right_quotient(t, x);
      y = right_quotient(t, y);
    }
  }

  /// Least common right multiple of two simples among the simples
  /// (z with x ≺ z, y ≺ z); throws LatticeViolation if none or not unique.
  int right_lcm(int x, int y) const { return searched_lcm(x, y, /*left_div=*/true); }
  /// Least common left multiple (z with z ≻ x, z ≻ y).
  int left_lcm(int x, int y) const { return searched_lcm(x, y, /*left_div=*/false); }

  /// Fault injection for the verifier's negative control: withdraw one entry
  /// from the product table. Intended for small test views only.
  void withhold_product_for_testing(int a, int b) {
    withheld_.insert({a, b});
    rebuild_divisibility_bits();
  }

private:
  static constexpr int kLazy = -2;
  static constexpr size_t kComplementCap = 30000;

  void check_balanced() {
    // Mirror BFS over right divisors of Delta; the two divisor sets must
    // coincide elementwise.
    const GroupContext& ctx = context();
    const GroupElement& top = poset_.element(poset_.top());
    int top_len = poset_.height();
    ElemKeyMap<int> right_set;
    std::vector<GroupElement> layer{ctx.identity()}, rests{top};
    right_set.emplace(ctx.key(layer[0]), 0);
    std::vector<GroupElement> next_layer, next_rests;
    auto len = [&](const GroupElement& e) {
      return kind_ == GenKind::Simple ? ctx.s_length(e) : ctx.reflection_length(e);
    };
    int num_gens = kind_ == GenKind::Simple ? ctx.rank() : ctx.num_reflections();
    for (int k = 0; k < top_len; ++k) {
      next_layer.clear();
      next_rests.clear();
      for (size_t i = 0; i < layer.size(); ++i) {
        for (int g = 0; g < num_gens; ++g) {
          const GroupElement& gen =
              kind_ == GenKind::Simple ? ctx.simple_reflection(g) : ctx.reflection(g);
          GroupElement h = ctx.multiply(gen, layer[i]);
          if (len(h) != k + 1) continue;
          GroupElement r = ctx.multiply(rests[i], gen);
          if (len(r) != top_len - k - 1) continue;
          if (right_set.emplace(ctx.key(h), k + 1).second) {
            next_layer.push_back(std::move(h));
            next_rests.push_back(std::move(r));
          }
        }
      }
      layer.swap(next_layer);
      rests.swap(next_rests);
    }
    for (const auto& [key, rank] : right_set)
      if (poset_.index_of_key(key) < 0)
        throw NotBalancedError("element of rank " + std::to_string(rank) +
                               " right-divides Delta but does not left-divide it");
    if (right_set.size() != poset_.size())
      throw NotBalancedError("left divisor set larger than right divisor set: " +
                             std::to_string(poset_.size()) + " vs " +
                             std::to_string(right_set.size()));
  }

  void rebuild_divisibility_bits() {
    size_t words = (num_atoms_ + 63) / 64;
    left_bits_.assign(size(), std::vector<std::uint64_t>(words, 0));
    right_bits_.assign(size(), std::vector<std::uint64_t>(words, 0));
    for (int x = 0; x < static_cast<int>(size()); ++x) {
      for (int a = 0; a < num_atoms_; ++a) {
        if (atom_id_[a] < 0) continue;
        if (left_divides(atom_id_[a], x)) left_bits_[x][a >> 6] |= 1ull << (a & 63);
        if (right_divides(atom_id_[a], x)) right_bits_[x][a >> 6] |= 1ull << (a & 63);
      }
    }
  }

  static int first_common_atom(const std::vector<std::uint64_t>& xs,
                               const std::vector<std::uint64_t>& ys) {
    for (size_t w = 0; w < xs.size(); ++w) {
      std::uint64_t bits = xs[w] & ys[w];
      if (bits) return static_cast<int>((w << 6) + std::countr_zero(bits));
    }
    return -1;
  }

  int compute_left_complement(int x) const {
    return poset_.index_of(
        context().multiply(element(delta()), poset_.inverse_element(x)));
  }
  int compute_delta_conj(int x) const {
    return poset_.index_of(context().multiply(
        context().multiply(poset_.inverse_element(delta()), element(x)), element(delta())));
  }

  int searched_gcd(int x, int y, bool left) const {
    std::vector<int> common;
    for (int z = 0; z < static_cast<int>(size()); ++z) {
      bool div = left ? (left_divides(z, x) && left_divides(z, y))
                      : (right_divides(z, x) && right_divides(z, y));
      if (div) common.push_back(z);
    }
    int best = common.front();  // the unit always divides
    for (int z : common)
      if (length(z) > length(best)) best = z;
    for (int z : common) {
      bool div = left ? left_divides(z, best) : right_divides(z, best);
      if (!div)
        throw LatticeViolation("gcd of simples " + std::to_string(x) + "," + std::to_string(y) +
                               ": common divisor " + std::to_string(z) +
                               " does not divide the maximal one");
    }
    return best;
  }

  int searched_lcm(int x, int y, bool left_div) const {
    std::vector<int> common;
    int ax = atom_ordinal_[x], ay = atom_ordinal_[y];
    if (ax >= 0 && ay >= 0) {
      // Atom pair: candidate multiples read off the divisibility bitsets.
      for (int z = 0; z < static_cast<int>(size()); ++z) {
        const auto& bits = left_div ? atoms_dividing_left(z) : atoms_dividing_right(z);
        if ((bits[ax >> 6] >> (ax & 63)) & (bits[ay >> 6] >> (ay & 63)) & 1ull)
          common.push_back(z);
      }
    } else {
      for (int z = 0; z < static_cast<int>(size()); ++z) {
        bool mult = left_div ? (left_divides(x, z) && left_divides(y, z))
                             : (right_divides(x, z) && right_divides(y, z));
        if (mult) common.push_back(z);
      }
    }
    if (common.empty())
      throw LatticeViolation("simples " + std::to_string(x) + "," + std::to_string(y) +
                             " have no common multiple among the simples");
    int best = common.front();
    for (int z : common)
      if (length(z) < length(best)) best = z;
    for (int z : common) {
      bool div = left_div ? left_divides(best, z) : right_divides(best, z);
      if (!div)
        throw LatticeViolation("lcm of simples " + std::to_string(x) + "," + std::to_string(y) +
                               ": minimal bound does not divide bound " + std::to_string(z));
    }
    return best;
  }

  DivisibilityPoset poset_;
  GenKind kind_;
  int num_atoms_ = 0;
  std::vector<int> atom_id_;
  std::vector<int> atom_ordinal_;  // simple id -> atom ordinal or -1
  std::vector<int> rcomp_, lcomp_, delta_conj_, delta_conj_inv_;
  std::vector<std::vector<std::uint64_t>> left_bits_, right_bits_;
  std::set<std::pair<int, int>> withheld_;
  bool lattice_verified_ = false;
};

/// Spec-facing constructor name.
inline PreMonoidView divisor_premonoid(const GroupContext& ctx, GenKind kind,
                                       const GroupElement& balanced, size_t cap = 100000) {
  return PreMonoidView(ctx, kind, balanced, cap);
}

struct GarsideCondition {
  std::string name;
  bool passed = false;
  long long instances = 0;
  std::vector<std::string> failures;
};

struct GarsideReport {
  std::vector<GarsideCondition> conditions;
  bool passed() const {
    for (const auto& c : conditions)
      if (!c.passed) return false;
    return true;
  }
  const GarsideCondition* find(const std::string& name) const {
    for (const auto& c : conditions)
      if (c.name == name) return &c;
    return nullptr;
  }
};

/// Checks the hypotheses and conclusions that make the divisor pre-monoid of
/// a balanced element a Garside pre-monoid: atoms among the simples, left and
/// right lcms for every atom pair, strict additivity of the length, Delta
/// balanced at the simple level, plus sampled associativity, unit laws and
/// M-cancellativity. On success the view is marked lattice-verified, which
/// unlocks the greedy gcd path used by normal forms.
inline GarsideReport verify_garside(PreMonoidView& view, int samples = 2000,
                                    unsigned long long seed = 20030221) {
  GarsideReport report;
  auto& conditions = report.conditions;

  {
    GarsideCondition c{"atoms-in-simples", true, 0, {}};
    for (int a = 0; a < view.num_atoms(); ++a) {
      ++c.instances;
      if (view.atom(a) < 0) {
        c.passed = false;
        c.failures.push_back("generator " + std::to_string(a) + " is not a simple");
      } else if (view.length(view.atom(a)) != 1) {
        c.passed = false;
        c.failures.push_back("generator " + std::to_string(a) + " has length != 1");
      }
    }
    conditions.push_back(std::move(c));
  }

  {
    GarsideCondition c{"atom-pair-lcms", true, 0, {}};
    for (int a = 0; a < view.num_atoms() && c.failures.size() < 20; ++a) {
      for (int b = a + 1; b < view.num_atoms() && c.failures.size() < 20; ++b) {
        if (view.atom(a) < 0 || view.atom(b) < 0) continue;
        ++c.instances;
        try {
          view.right_lcm(view.atom(a), view.atom(b));
        } catch (const LatticeViolation& e) {
          c.passed = false;
          c.failures.push_back("right lcm of atoms (" + std::to_string(a) + "," +
                               std::to_string(b) + "): " + e.what());
        }
        try {
          view.left_lcm(view.atom(a), view.atom(b));
        } catch (const LatticeViolation& e) {
          c.passed = false;
          c.failures.push_back("left lcm of atoms (" + std::to_string(a) + "," +
                               std::to_string(b) + "): " + e.what());
        }
      }
    }
    conditions.push_back(std::move(c));
  }

  {
    GarsideCondition c{"delta-balanced", true, 0, {}};
    for (int x = 0; x < static_cast<int>(view.size()); ++x) {
      ++c.instances;
      int r = view.right_complement(x), l = view.left_complement(x);
      if (r < 0 || !view.product(x, r) || *view.product(x, r) != view.delta()) {
        c.passed = false;
        c.failures.push_back("simple " + std::to_string(x) + " has no right complement");
      }
      if (l < 0 || !view.product(l, x) || *view.product(l, x) != view.delta()) {
        c.passed = false;
        c.failures.push_back("simple " + std::to_string(x) + " has no left complement");
      }
      if (c.failures.size() >= 20) break;
    }
    conditions.push_back(std::move(c));
  }

  std::mt19937_64 rng(seed);
  auto random_simple = [&] { return static_cast<int>(rng() % view.size()); };

  {
    // Atomicity: the length function is strictly additive on defined
    // products and positive on non-units.
    GarsideCondition c{"atomicity", true, 0, {}};
    for (int x = 0; x < static_cast<int>(view.size()); ++x) {
      ++c.instances;
      if ((view.length(x) == 0) != (x == view.unit())) {
        c.passed = false;
        c.failures.push_back("length sign defect at simple " + std::to_string(x));
      }
    }
    for (int i = 0; i < samples; ++i) {
      int a = random_simple(), b = random_simple();
      ++c.instances;
      if (auto p = view.product(a, b); p && view.length(*p) != view.length(a) + view.length(b)) {
        c.passed = false;
        c.failures.push_back("non-additive product " + std::to_string(a) + "*" +
                             std::to_string(b));
      }
    }
    conditions.push_back(std::move(c));
  }

  {
    GarsideCondition c{"unit-laws", true, 0, {}};
    for (int x = 0; x < static_cast<int>(view.size()); ++x) {
      ++c.instances;
      if (view.product(view.unit(), x) != x || view.product(x, view.unit()) != x) {
        c.passed = false;
        c.failures.push_back("unit law fails at simple " + std::to_string(x));
      }
    }
    conditions.push_back(std::move(c));
  }

  {
    GarsideCondition c{"associativity-sampled", true, 0, {}};
    for (int i = 0; i < samples; ++i) {
      int a = random_simple(), b = random_simple(), d = random_simple();
      ++c.instances;
      auto ab = view.product(a, b);
      auto bc = view.product(b, d);
      auto ab_c = ab ? view.product(*ab, d) : std::nullopt;
      auto a_bc = bc ? view.product(a, *bc) : std::nullopt;
      if (ab_c.has_value() != a_bc.has_value() || (ab_c && *ab_c != *a_bc)) {
        c.passed = false;
        c.failures.push_back("associativity defect at (" + std::to_string(a) + "," +
                             std::to_string(b) + "," + std::to_string(d) + ")");
      }
    }
    conditions.push_back(std::move(c));
  }

  {
    GarsideCondition c{"m-cancellativity-sampled", true, 0, {}};
    for (int i = 0; i < samples; ++i) {
      int p = random_simple(), q = random_simple(), m = random_simple();
      ++c.instances;
      auto pm = view.product(p, m), qm = view.product(q, m);
      if (pm && qm && *pm == *qm && p != q) {
        c.passed = false;
        c.failures.push_back("right cancellation fails at (" + std::to_string(p) + "," +
                             std::to_string(q) + ")*" + std::to_string(m));
      }
      auto mp = view.product(m, p), mq = view.product(m, q);
      if (mp && mq && *mp == *mq && p != q) {
        c.passed = false;
        c.failures.push_back("left cancellation fails at " + std::to_string(m) + "*(" +
                             std::to_string(p) + "," + std::to_string(q) + ")");
      }
    }
    conditions.push_back(std::move(c));
  }

  {
    // Conjugation by Delta restricts to a bijection of the simples.
    GarsideCondition c{"delta-conjugation-closed", true, 0, {}};
    std::vector<int> seen(view.size(), 0);
    for (int x = 0; x < static_cast<int>(view.size()); ++x) {
      ++c.instances;
      int y = view.delta_conjugate(x);
      if (y < 0 || seen[y]++) {
        c.passed = false;
        c.failures.push_back("Delta conjugate of simple " + std::to_string(x) +
                             " is not a fresh simple");
        if (c.failures.size() >= 20) break;
      }
    }
    conditions.push_back(std::move(c));
  }

  view.mark_lattice_verified(report.passed());
  return report;
}

}  // namespace dualbraid
