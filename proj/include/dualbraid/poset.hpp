#pragma once

#include <algorithm>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "dualbraid/group.hpp"

namespace dualbraid {

enum class GenKind { Simple, Reflection };

class PosetCapError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class LatticeViolation : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

struct LatticeReport {
  std::string strategy;
  long long pairs_checked = 0;
  std::vector<std::string> failures;
  bool passed() const { return failures.empty(); }
};

/// The divisor poset of a balanced element: (P_c, ≺_T) for a Coxeter element,
/// or the weak order (W, ≺_S) below w_0. Elements are stored rank layer by
/// rank layer in BFS discovery order, so the layout is deterministic.
class DivisibilityPoset {
public:
  /// BFS from the identity, extending by generators whose product still
  /// divides `top`; children are generated in generator-index order and
  /// deduplicated by exact element equality.
  DivisibilityPoset(const GroupContext& ctx, GenKind kind, const GroupElement& top,
                    size_t cap = 100000)
      : ctx_(&ctx), kind_(kind) {
    const int n = ctx.rank();
    const int top_len = length_of(top);
    const int num_gens = kind == GenKind::Simple ? ctx.rank() : ctx.num_reflections();

    elems_.push_back(ctx.identity());
    complements_.push_back(top);
    rank_of_.push_back(0);
    index_.emplace(ctx.key(elems_[0]), 0);
    layer_begin_ = {0, 1};

    GroupElement x, q;
    for (int k = 0; k < top_len; ++k) {
      size_t lo = layer_begin_[k], hi = layer_begin_[k + 1];
      for (size_t i = lo; i < hi; ++i) {
        for (int g = 0; g < num_gens; ++g) {
          const GroupElement& gen =
              kind == GenKind::Simple ? ctx.simple_reflection(g) : ctx.reflection(g);
          ctx.multiply_into(x, elems_[i], gen);
          if (kind == GenKind::Reflection) {
            if (ctx.dim_fixed(x) != n - (k + 1)) continue;  // went down, not up
            ctx.multiply_into(q, gen, complements_[i]);     // (x)^{-1} top = g . q_i
            if (ctx.dim_fixed(q) != n - (top_len - k - 1)) continue;
          } else {
            if (ctx.s_length(x) != k + 1) continue;
            ctx.multiply_into(q, gen, complements_[i]);
            if (ctx.s_length(q) != top_len - k - 1) continue;
          }
          ElemKey key = ctx.key(x);
          if (index_.emplace(std::move(key), static_cast<int>(elems_.size())).second) {
            elems_.push_back(x);
            complements_.push_back(q);
            rank_of_.push_back(k + 1);
            parent_.push_back(static_cast<int>(i));
            parent_gen_.push_back(g);
            if (elems_.size() > cap)
              throw PosetCapError("divisor poset exceeds cap " + std::to_string(cap));
          }
        }
      }
      layer_begin_.push_back(elems_.size());
      if (layer_begin_[k + 2] == layer_begin_[k + 1]) break;  // no growth (identity top)
    }
    if (rank_of_.back() != top_len || layer_begin_.back() - layer_begin_[top_len] != 1)
      throw std::logic_error("divisor poset: top layer is not the single element");
    inverses_.reserve(elems_.size());
    for (const auto& e : elems_) inverses_.push_back(ctx.inverse(e));
  }

  const GroupContext& context() const { return *ctx_; }
  GenKind kind() const { return kind_; }
  size_t size() const { return elems_.size(); }
  int height() const { return rank_of_.back(); }
  int top() const { return static_cast<int>(elems_.size()) - 1; }
  const GroupElement& element(int i) const { return elems_[i]; }
  const GroupElement& complement(int i) const { return complements_[i]; }
  int rank(int i) const { return rank_of_[i]; }
  size_t layer_begin(int k) const { return layer_begin_[k]; }
  size_t layer_end(int k) const { return layer_begin_[k + 1]; }
  int layer_size(int k) const { return static_cast<int>(layer_end(k) - layer_begin(k)); }

  int index_of(const GroupElement& e) const { return index_of_key(ctx_->key(e)); }

  int index_of_key(const ElemKey& k) const {
    auto it = index_.find(k);
    return it == index_.end() ? -1 : it->second;
  }

  const GroupElement& inverse_element(int i) const { return inverses_[i]; }

  /// Generator word along the BFS tree (a reduced T- resp. S-word).
  std::vector<int> word_of(int i) const {
    std::vector<int> w;
    while (i != 0) {
      w.push_back(parent_gen_[i - 1]);
      i = parent_[i - 1];
    }
    std::reverse(w.begin(), w.end());
    return w;
  }

  /// Divisibility inside the poset order (x_i ≺ x_j).
  bool divides(int i, int j) const {
    if (rank_of_[i] > rank_of_[j]) return false;
    if (i == j) return true;
    GroupElement z = ctx_->multiply(inverses_[i], elems_[j]);
    return length_of(z) == rank_of_[j] - rank_of_[i];
  }

  /// All covering pairs (lower, upper); rank-adjacent divisibility.
  std::vector<std::pair<int, int>> compute_covers() const {
    std::vector<std::pair<int, int>> covers;
    for (int k = 0; k + 1 <= height(); ++k)
      for (size_t i = layer_begin(k); i < layer_end(k); ++i)
        for (size_t j = layer_begin(k + 1); j < layer_end(k + 1); ++j)
          if (divides(static_cast<int>(i), static_cast<int>(j)))
            covers.emplace_back(static_cast<int>(i), static_cast<int>(j));
    return covers;
  }

  /// Coefficient k = number of rank-k elements.
  std::vector<long long> rank_polynomial() const {
    std::vector<long long> coeff(height() + 1, 0);
    for (int r : rank_of_) ++coeff[r];
    return coeff;
  }

  /// Greatest lower bound; throws LatticeViolation if none or not unique.
  int meet(int i, int j) const { return bound(i, j, /*lower=*/true); }
  /// Least upper bound; throws LatticeViolation if none or not unique.
  int join(int i, int j) const { return bound(i, j, /*lower=*/false); }

  /// Up-set bitsets for single elements (used by the atom-pair strategy).
  std::vector<std::uint64_t> up_set_bits(int i) const {
    std::vector<std::uint64_t> bits((size() + 63) / 64, 0);
    for (size_t j = 0; j < size(); ++j)
      if (divides(i, static_cast<int>(j))) bits[j >> 6] |= 1ull << (j & 63);
    return bits;
  }

  /// Lattice verification. Fast strategy: every pair of atoms must have a
  /// unique minimal common upper bound (the reduction of Theorem BDM brings
  /// the whole lattice property down to this). Oracle strategy (small
  /// posets): every pair of elements has a unique meet and join.
  LatticeReport lattice_check(size_t exhaustive_limit = 200) const {
    LatticeReport report;
    report.strategy = "atom-pair-lcm";
    size_t na = height() >= 1 ? layer_end(1) - layer_begin(1) : 0;
    std::vector<std::vector<std::uint64_t>> up;
    up.reserve(na);
    for (size_t a = 0; a < na; ++a)
      up.push_back(up_set_bits(static_cast<int>(layer_begin(1) + a)));
    for (size_t a = 0; a < na; ++a) {
      for (size_t b = a + 1; b < na; ++b) {
        ++report.pairs_checked;
        std::vector<int> common;
        for (size_t w = 0; w < up[a].size(); ++w) {
          std::uint64_t bits = up[a][w] & up[b][w];
          while (bits) {
            int j = static_cast<int>((w << 6) + std::countr_zero(bits));
            bits &= bits - 1;
            common.push_back(j);
          }
        }
        std::string fail = unique_minimum(common);
        if (!fail.empty())
          report.failures.push_back("atoms (" + std::to_string(layer_begin(1) + a) + "," +
                                    std::to_string(layer_begin(1) + b) + "): " + fail);
      }
    }
    if (size() <= exhaustive_limit) {
      report.strategy += "+exhaustive-meet-join";
      for (size_t i = 0; i < size(); ++i)
        for (size_t j = i; j < size(); ++j) {
          ++report.pairs_checked;
          try {
            meet(static_cast<int>(i), static_cast<int>(j));
            join(static_cast<int>(i), static_cast<int>(j));
          } catch (const LatticeViolation& e) {
            report.failures.push_back("pair (" + std::to_string(i) + "," + std::to_string(j) +
                                      "): " + e.what());
          }
        }
    }
    return report;
  }

private:
  int length_of(const GroupElement& e) const {
    return kind_ == GenKind::Simple ? ctx_->s_length(e) : ctx_->reflection_length(e);
  }

  /// Common lower/upper bounds of (i, j), then the unique extreme one.
  int bound(int i, int j, bool lower) const {
    ensure_closure();
    std::vector<int> candidates;
    if (closure()) {
      const auto& sets = lower ? closure()->down : closure()->up;
      size_t words = sets[i].size();
      for (size_t w = 0; w < words; ++w) {
        std::uint64_t bits = sets[i][w] & sets[j][w];
        while (bits) {
          candidates.push_back(static_cast<int>((w << 6) + std::countr_zero(bits)));
          bits &= bits - 1;
        }
      }
    } else {
      for (size_t z = 0; z < size(); ++z) {
        int zi = static_cast<int>(z);
        bool ok = lower ? (divides(zi, i) && divides(zi, j)) : (divides(i, zi) && divides(j, zi));
        if (ok) candidates.push_back(zi);
      }
    }
    // For meets flip the order so "minimal" below means "maximal".
    std::string fail = lower ? unique_maximum(candidates) : unique_minimum(candidates);
    if (!fail.empty())
      throw LatticeViolation((lower ? "meet" : "join") + std::string(" of ") + std::to_string(i) +
                             "," + std::to_string(j) + ": " + fail);
    return lower ? *std::max_element(candidates.begin(), candidates.end(),
                                     [&](int x, int y) { return rank_of_[x] < rank_of_[y]; })
                 : *std::min_element(candidates.begin(), candidates.end(),
                                     [&](int x, int y) { return rank_of_[x] < rank_of_[y]; });
  }

  /// Empty string when `candidates` has a unique minimum that divides all of
  /// them; otherwise a description of the violation.
  std::string unique_minimum(const std::vector<int>& candidates) const {
    if (candidates.empty()) return "no common bound";
    int best = candidates[0];
    for (int z : candidates)
      if (rank_of_[z] < rank_of_[best]) best = z;
    int ties = 0;
    for (int z : candidates) ties += rank_of_[z] == rank_of_[best];
    if (ties > 1) return "two bounds of minimal rank " + std::to_string(rank_of_[best]);
    for (int z : candidates)
      if (!divides(best, z))
        return "minimal bound " + std::to_string(best) + " does not divide bound " +
               std::to_string(z);
    return {};
  }

  std::string unique_maximum(const std::vector<int>& candidates) const {
    if (candidates.empty()) return "no common bound";
    int best = candidates[0];
    for (int z : candidates)
      if (rank_of_[z] > rank_of_[best]) best = z;
    int ties = 0;
    for (int z : candidates) ties += rank_of_[z] == rank_of_[best];
    if (ties > 1) return "two bounds of maximal rank " + std::to_string(rank_of_[best]);
    for (int z : candidates)
      if (!divides(z, best))
        return "maximal bound " + std::to_string(best) + " not divisible by bound " +
               std::to_string(z);
    return {};
  }

  struct Closure {
    std::vector<std::vector<std::uint64_t>> down, up;
  };

  struct LazyClosure {
    std::once_flag once;
    std::unique_ptr<Closure> data;
  };

  /// Down/up-set bitsets, built from covers on first use (posets above the
  /// cap answer bound queries by scanning). call_once keeps the observable
  /// behaviour pure. The flag lives on the heap so the poset stays movable.
  void ensure_closure() const {
    std::call_once(lazy_->once, [this] {
      if (size() > kClosureCap) return;
      auto closure = std::make_unique<Closure>();
      size_t words = (size() + 63) / 64;
      closure->down.assign(size(), std::vector<std::uint64_t>(words, 0));
      closure->up.assign(size(), std::vector<std::uint64_t>(words, 0));
      for (size_t i = 0; i < size(); ++i) {
        closure->down[i][i >> 6] |= 1ull << (i & 63);
        closure->up[i][i >> 6] |= 1ull << (i & 63);
      }
      auto covers = compute_covers();
      // Down-sets accumulate upward in rank; up-sets mirror it.
      std::stable_sort(covers.begin(), covers.end(),
                       [&](const auto& a, const auto& b) { return rank_of_[a.second] < rank_of_[b.second]; });
      for (const auto& [lo, hi] : covers)
        for (size_t w = 0; w < words; ++w) closure->down[hi][w] |= closure->down[lo][w];
      std::stable_sort(covers.begin(), covers.end(),
                       [&](const auto& a, const auto& b) { return rank_of_[a.first] > rank_of_[b.first]; });
      for (const auto& [lo, hi] : covers)
        for (size_t w = 0; w < words; ++w) closure->up[lo][w] |= closure->up[hi][w];
      lazy_->data = std::move(closure);
    });
  }

  const Closure* closure() const { return lazy_->data.get(); }

  static constexpr size_t kClosureCap = 3000;

  const GroupContext* ctx_;
  GenKind kind_;
  std::vector<GroupElement> elems_, complements_, inverses_;
  std::vector<int> rank_of_;
  std::vector<int> parent_, parent_gen_;  // indexed from element 1
  std::vector<size_t> layer_begin_;
  ElemKeyMap<int> index_;
  mutable std::unique_ptr<LazyClosure> lazy_ = std::make_unique<LazyClosure>();
};

/// The poset (P_c, ≺_T) of divisors of a Coxeter element.
inline DivisibilityPoset enumerate_pc(const GroupContext& ctx, const GroupElement& c,
                                      size_t cap = 100000) {
  return DivisibilityPoset(ctx, GenKind::Reflection, c, cap);
}

/// Poincaré polynomial of W for l_T: prod_i (1 + (d_i - 1) q).
inline std::vector<long long> lt_poincare_polynomial(const GroupContext& ctx) {
  std::vector<long long> poly{1};
  for (int d : ctx.degrees()) {
    std::vector<long long> next(poly.size() + 1, 0);
    for (size_t i = 0; i < poly.size(); ++i) {
      next[i] += poly[i];
      next[i + 1] += poly[i] * (d - 1);
    }
    poly = std::move(next);
  }
  return poly;
}

/// Histogram of l_T over all of W, by full enumeration (the independent
/// route against Solomon's product formula).
inline std::vector<long long> lt_length_histogram(const GroupContext& ctx, size_t cap = 200000) {
  std::vector<long long> hist(ctx.rank() + 1, 0);
  for (const auto& w : ctx.enumerate_group(cap)) ++hist[ctx.reflection_length(w)];
  return hist;
}

struct FixedSpaceReport {
  long long pairs_checked = 0;
  std::vector<std::string> failures;
  bool passed() const { return failures.empty(); }
};

/// Divisibility in P_c must coincide with reverse containment of fixed
/// spaces, and w -> fix(w) must be injective on P_c.
inline FixedSpaceReport fixed_space_poset_check(const DivisibilityPoset& pc) {
  FixedSpaceReport report;
  const GroupContext& ctx = pc.context();
  size_t n = pc.size();
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = 0; j < n; ++j) {
      ++report.pairs_checked;
      bool div = pc.divides(static_cast<int>(i), static_cast<int>(j));
      bool contains = ctx.fixed_space_contains(pc.element(i), pc.element(j));
      if (div != contains)
        report.failures.push_back("pair (" + std::to_string(i) + "," + std::to_string(j) +
                                  "): divides=" + std::to_string(div) +
                                  " fixed-space-contains=" + std::to_string(contains));
      if (i < j && contains && ctx.fixed_space_contains(pc.element(j), pc.element(i)))
        report.failures.push_back("elements " + std::to_string(i) + "," + std::to_string(j) +
                                  " share a fixed space");
    }
  }
  return report;
}

}  // namespace dualbraid
