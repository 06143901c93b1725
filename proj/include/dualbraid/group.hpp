#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "dualbraid/golden.hpp"
#include "dualbraid/linalg.hpp"
#include "dualbraid/types.hpp"

namespace dualbraid {

using RootId = std::uint16_t;

/// Group element, stored as the permutation it induces on the root list.
/// Two elements agreeing on the simple roots are equal, so hashing and
/// comparison only touch those images.
struct GroupElement {
  std::vector<RootId> image;
};

/// Hashable fingerprint: images of the simple roots.
using ElemKey = std::vector<RootId>;

struct ElemKeyHash {
  size_t operator()(const ElemKey& k) const {
    size_t h = 1469598103934665603ull;
    for (RootId r : k) {
      h ^= r;
      h *= 1099511628211ull;
    }
    return h;
  }
};

template <typename T>
using ElemKeyMap = std::unordered_map<ElemKey, T, ElemKeyHash>;

struct ChromaticPair {
  std::vector<int> left, right;  // simple-reflection indices, ascending
  GroupElement s_left, s_right, coxeter;
};

class GroupCapError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// A finite real reflection group with exact root data.
///
/// Crystallographic factors live over Z, H3/H4 over Z[phi]; I2(m) uses a
/// closed-form dihedral backend on 2m abstract rays instead of coordinates.
/// Immutable once built; every operation is a pure function of its inputs.
class GroupContext {
public:
  explicit GroupContext(const TypeDescriptor& desc) : desc_(desc) {
    for (const auto& f : desc.factors) f.validate();
    if (2 * desc.num_reflections() >= 65535)
      throw InvalidTypeError("type too large for this build: " + desc.str());
    for (const auto& f : desc.factors) {
      if (f.family == Family::I)
        build_dihedral_factor(f);
      else
        build_linear_factor(f);
    }
    build_reflections();
    build_coxeter_matrix();
  }

  const TypeDescriptor& type() const { return desc_; }
  int rank() const { return static_cast<int>(simple_root_pos_.size()); }
  int num_reflections() const { return num_pos_; }
  int num_roots() const { return static_cast<int>(negation_.size()); }
  long long group_order() const { return desc_.group_order(); }
  long long coxeter_number() const { return desc_.coxeter_element_order(); }
  std::vector<int> degrees() const { return desc_.degrees(); }

  // ---- element arithmetic ------------------------------------------------

  GroupElement identity() const {
    GroupElement e;
    e.image.resize(negation_.size());
    for (size_t r = 0; r < e.image.size(); ++r) e.image[r] = static_cast<RootId>(r);
    return e;
  }

  /// (uv)(x) = u(v(x)).
  GroupElement multiply(const GroupElement& u, const GroupElement& v) const {
    GroupElement w;
    multiply_into(w, u, v);
    return w;
  }

  /// Allocation-free variant for enumeration loops; `out` must not alias.
  void multiply_into(GroupElement& out, const GroupElement& u, const GroupElement& v) const {
    out.image.resize(v.image.size());
    for (size_t r = 0; r < v.image.size(); ++r) out.image[r] = u.image[v.image[r]];
  }

  GroupElement inverse(const GroupElement& u) const {
    GroupElement w;
    w.image.resize(u.image.size());
    for (size_t r = 0; r < u.image.size(); ++r) w.image[u.image[r]] = static_cast<RootId>(r);
    return w;
  }

  /// w t w^{-1}.
  GroupElement conjugate(const GroupElement& w, const GroupElement& t) const {
    return multiply(multiply(w, t), inverse(w));
  }

  bool equal(const GroupElement& u, const GroupElement& v) const {
    for (int p : simple_root_pos_)
      if (u.image[p] != v.image[p]) return false;
    return true;
  }

  bool is_identity(const GroupElement& u) const {
    for (int p : simple_root_pos_)
      if (u.image[p] != static_cast<RootId>(p)) return false;
    return true;
  }

  ElemKey key(const GroupElement& u) const {
    ElemKey k(simple_root_pos_.size());
    for (size_t i = 0; i < simple_root_pos_.size(); ++i) k[i] = u.image[simple_root_pos_[i]];
    return k;
  }

  int order(const GroupElement& u) const {
    GroupElement w = u;
    int k = 1;
    while (!is_identity(w)) {
      w = multiply(w, u);
      ++k;
      if (k > (1 << 24)) throw std::logic_error("order: runaway iteration");
    }
    return k;
  }

  // ---- generators and reflections ----------------------------------------

  const GroupElement& simple_reflection(int i) const { return simple_refl_.at(i); }
  const GroupElement& reflection(int t) const { return refl_perm_.at(t); }

  /// Reflection index of w, if w is a reflection.
  int reflection_index(const GroupElement& w) const {
    int t = candidate_reflection(w);
    if (t >= 0 && equal(w, refl_perm_[t])) return t;
    return -1;
  }

  /// w t w^{-1} as a reflection index; O(1) via the root image.
  int conjugate_reflection(const GroupElement& w, int t) const {
    RootId r = w.image[refl_root_[t]];
    return refl_of_root_[is_negative_root(r) ? negation_[r] : r];
  }

  int simple_index_of_reflection(int t) const { return refl_simple_index_.at(t); }
  int reflection_index_of_simple(int s) const { return simple_refl_index_.at(s); }

  // ---- length functions (the two sides of the story) ---------------------

  /// Number of positive roots sent negative: the Coxeter length l_S.
  int s_length(const GroupElement& w) const {
    int count = 0;
    for (int r = 0; r < num_pos_; ++r)
      if (is_negative_root(w.image[pos_root_global_[r]])) ++count;
    return count;
  }

  /// Dimension of the fixed space of w, summed over factors; exact.
  int dim_fixed(const GroupElement& w) const {
    int d = 0;
    for (const auto& f : factors_) d += dim_fixed_in_factor(f, w);
    return d;
  }

  /// Reflection length l_T(w) = rank - dim fix(w).
  int reflection_length(const GroupElement& w) const { return rank() - dim_fixed(w); }

  /// u left-divides w in the absolute order: l_T(u) + l_T(u^{-1}w) = l_T(w).
  bool absolute_divides(const GroupElement& u, const GroupElement& w) const {
    return reflection_length(u) + reflection_length(multiply(inverse(u), w)) ==
           reflection_length(w);
  }

  /// w = z u with l_T additive (the right-hand order).
  bool absolute_right_divides(const GroupElement& u, const GroupElement& w) const {
    return reflection_length(multiply(w, inverse(u))) + reflection_length(u) ==
           reflection_length(w);
  }

  /// fix(u) contains fix(w)?
  bool fixed_space_contains(const GroupElement& u, const GroupElement& w) const {
    for (size_t fi = 0; fi < factors_.size(); ++fi)
      if (!fixed_space_contains_in_factor(factors_[fi], u, w)) return false;
    return true;
  }

  // ---- Coxeter elements ---------------------------------------------------

  /// Deterministic 2-colouring of the Coxeter graph, factor by factor, BFS
  /// from the lowest-indexed node; that node's colour is "left".
  ChromaticPair canonical_chromatic_pair() const {
    ChromaticPair cp;
    int n = rank();
    std::vector<int> colour(n, -1);
    for (const auto& f : factors_) {
      for (int i = f.simple_offset; i < f.simple_offset + f.rank; ++i) {
        if (colour[i] != -1) continue;
        colour[i] = 0;
        std::vector<int> queue{i};
        while (!queue.empty()) {
          int u = queue.back();
          queue.pop_back();
          for (int v = f.simple_offset; v < f.simple_offset + f.rank; ++v) {
            if (coxeter_matrix_[u][v] < 3) continue;
            if (colour[v] == -1) {
              colour[v] = 1 - colour[u];
              queue.push_back(v);
            } else if (colour[v] == colour[u]) {
              throw std::logic_error("Coxeter graph not bipartite");
            }
          }
        }
      }
    }
    for (int i = 0; i < n; ++i) (colour[i] == 0 ? cp.left : cp.right).push_back(i);
    cp.s_left = product_of_simples(cp.left);
    cp.s_right = product_of_simples(cp.right);
    cp.coxeter = multiply(cp.s_left, cp.s_right);
    return cp;
  }

  GroupElement canonical_coxeter_element() const { return canonical_chromatic_pair().coxeter; }

  /// Orbits of t -> c t c^{-1} on T, in discovery order from t_1.
  /// Flags a violation of the size dichotomy (h with two simples, or h/2 with
  /// one) — that would mean an engine bug, not interesting mathematics.
  std::vector<std::vector<int>> coxeter_conjugation_orbits(const GroupElement& c,
                                                           std::string* violation = nullptr) const {
    std::vector<std::vector<int>> orbits;
    std::vector<char> seen(num_pos_, 0);
    for (int t0 = 0; t0 < num_pos_; ++t0) {
      if (seen[t0]) continue;
      std::vector<int> orbit;
      int t = t0;
      do {
        seen[t] = 1;
        orbit.push_back(t);
        t = conjugate_reflection(c, t);
      } while (t != t0);
      orbits.push_back(std::move(orbit));
    }
    if (violation) {
      *violation = check_orbit_dichotomy(orbits);
    }
    return orbits;
  }

  /// Coxeter matrix entry m_{s,t} (order of s_i s_j).
  int coxeter_matrix(int i, int j) const { return coxeter_matrix_[i][j]; }

  /// The longest element: the unique element with maximal l_S.
  GroupElement longest_element() const {
    GroupElement w = identity();
    bool moved = true;
    while (moved) {
      moved = false;
      for (int i = 0; i < rank(); ++i) {
        GroupElement ws = multiply(w, simple_refl_[i]);
        if (s_length(ws) > s_length(w)) {
          w = std::move(ws);
          moved = true;
          break;
        }
      }
    }
    return w;
  }

  /// Full enumeration of W by BFS over the simple generators.
  /// Throws GroupCapError beyond `cap` elements.
  std::vector<GroupElement> enumerate_group(size_t cap = 200000) const {
    std::vector<GroupElement> elems{identity()};
    ElemKeyMap<int> seen;
    seen.emplace(key(elems[0]), 0);
    for (size_t i = 0; i < elems.size(); ++i) {
      for (int s = 0; s < rank(); ++s) {
        GroupElement w = multiply(elems[i], simple_refl_[s]);
        ElemKey k = key(w);
        if (seen.emplace(std::move(k), static_cast<int>(elems.size())).second) {
          elems.push_back(std::move(w));
          if (elems.size() > cap)
            throw GroupCapError("group enumeration exceeds cap " + std::to_string(cap));
        }
      }
    }
    return elems;
  }

  // ---- words --------------------------------------------------------------

  /// Deterministic reduced S-word: repeatedly strip the smallest left descent.
  std::vector<int> canonical_s_word(GroupElement w) const {
    std::vector<int> word;
    int guard = 4 * num_pos_ + 4;
    while (!is_identity(w)) {
      int s = -1;
      for (int i = 0; i < rank(); ++i) {
        GroupElement sw = multiply(simple_refl_[i], w);
        if (s_length(sw) < s_length(w)) {
          s = i;
          w = std::move(sw);
          break;
        }
      }
      if (s < 0 || --guard < 0) throw std::logic_error("canonical_s_word: no descent");
      word.push_back(s);
    }
    return word;
  }

  /// Deterministic reduced T-word: strip the smallest reflection divisor.
  std::vector<int> canonical_t_word(GroupElement w) const {
    std::vector<int> word;
    int len = reflection_length(w);
    while (len > 0) {
      bool found = false;
      for (int t = 0; t < num_pos_; ++t) {
        GroupElement tw = multiply(refl_perm_[t], w);
        if (reflection_length(tw) == len - 1) {
          word.push_back(t);
          w = std::move(tw);
          --len;
          found = true;
          break;
        }
      }
      if (!found) throw std::logic_error("canonical_t_word: no divisor");
    }
    return word;
  }

  GroupElement evaluate_t_word(const std::vector<int>& word) const {
    GroupElement w = identity();
    for (int t : word) w = multiply(w, refl_perm_.at(t));
    return w;
  }

  GroupElement evaluate_s_word(const std::vector<int>& word) const {
    GroupElement w = identity();
    for (int s : word) w = multiply(w, simple_refl_.at(s));
    return w;
  }

  bool is_negative_root(RootId r) const { return negative_flag_[r]; }
  RootId negation_of(RootId r) const { return negation_[r]; }
  int root_of_reflection(int t) const { return refl_root_[t]; }
  int reflection_of_positive_root(int global_root) const { return refl_of_root_[global_root]; }

  /// Exact coordinates of a positive root in the simple-root basis of its
  /// factor; empty for dihedral factors.
  std::vector<GoldenInt> root_coordinates(int t) const {
    for (const auto& f : factors_) {
      int g = refl_root_[t];
      if (g >= f.root_offset && g < f.root_offset + 2 * f.num_pos) {
        if (f.dihedral) return {};
        return f.root_coords[g - f.root_offset];
      }
    }
    return {};
  }

  size_t num_factors() const { return factors_.size(); }
  const IrreducibleType& factor_type(size_t i) const { return factors_[i].type; }
  int factor_rank(size_t i) const { return factors_[i].rank; }
  int factor_simple_offset(size_t i) const { return factors_[i].simple_offset; }
  int factor_reflection_offset(size_t i) const { return factors_[i].refl_offset; }
  int factor_num_reflections(size_t i) const { return factors_[i].num_pos; }

private:
  struct Factor {
    IrreducibleType type;
    bool dihedral = false;
    int rank = 0;        // n_f
    int num_pos = 0;     // N_f = number of positive roots / reflections
    int root_offset = 0; // global index of first root of this factor
    int simple_offset = 0;
    int refl_offset = 0;
    int m_bond = 0;                                   // dihedral
    std::vector<std::vector<GoldenInt>> root_coords;  // positive then negative
    std::vector<GoldenInt> cartan;                    // rank x rank row-major
    const GoldenInt& cartan_at(int i, int j) const { return cartan[size_t(i) * rank + j]; }
  };

  // Cartan entries A_ij with s_i(a_j) = a_j - A_ij a_i.
  static std::vector<GoldenInt> make_cartan(const IrreducibleType& t) {
    int n = t.rank;
    std::vector<GoldenInt> a(size_t(n) * n, GoldenInt(0));
    auto at = [&](int i, int j) -> GoldenInt& { return a[size_t(i) * n + j]; };
    for (int i = 0; i < n; ++i) at(i, i) = GoldenInt(2);
    auto bond3 = [&](int i, int j) { at(i, j) = GoldenInt(-1), at(j, i) = GoldenInt(-1); };
    switch (t.family) {
      case Family::A:
        for (int i = 0; i + 1 < n; ++i) bond3(i, i + 1);
        break;
      case Family::B:
        for (int i = 0; i + 2 < n; ++i) bond3(i, i + 1);
        // a_{n-1} long, a_n short: <a_n, a_{n-1}^v> = -1, <a_{n-1}, a_n^v> = -2
        at(n - 2, n - 1) = GoldenInt(-1);
        at(n - 1, n - 2) = GoldenInt(-2);
        break;
      case Family::D:
        for (int i = 0; i + 1 < n - 2; ++i) bond3(i, i + 1);
        bond3(n - 3, n - 2);
        bond3(n - 3, n - 1);
        break;
      case Family::E:
        // Bourbaki numbering: chain 1-3-4-5-...-n, node 2 attached to 4.
        bond3(0, 2);
        for (int i = 2; i + 1 < n; ++i) bond3(i, i + 1);
        bond3(1, 3);
        break;
      case Family::F:
        bond3(0, 1);
        at(1, 2) = GoldenInt(-1);
        at(2, 1) = GoldenInt(-2);
        bond3(2, 3);
        break;
      case Family::H:
        // 2 cos(pi/5) = phi
        at(0, 1) = GoldenInt(0, -1);
        at(1, 0) = GoldenInt(0, -1);
        for (int i = 1; i + 1 < n; ++i) bond3(i, i + 1);
        break;
      case Family::I:
        throw std::logic_error("I2 has no coordinate Cartan matrix here");
    }
    return a;
  }

  void build_linear_factor(const IrreducibleType& t) {
    Factor f;
    f.type = t;
    f.rank = t.rank;
    f.num_pos = t.num_reflections();
    f.root_offset = static_cast<int>(negation_.size());
    f.simple_offset = static_cast<int>(simple_root_pos_.size());
    f.refl_offset = num_pos_;
    f.cartan = make_cartan(t);
    int n = f.rank;

    // Close {±e_i} under the simple reflections.
    std::map<std::vector<std::pair<long long, long long>>, int> index;
    std::vector<std::vector<GoldenInt>> roots;
    auto encode = [](const std::vector<GoldenInt>& v) {
      std::vector<std::pair<long long, long long>> e;
      e.reserve(v.size());
      for (const auto& x : v) e.emplace_back(x.unit_part(), x.phi_part());
      return e;
    };
    auto add = [&](const std::vector<GoldenInt>& v) {
      auto [it, fresh] = index.emplace(encode(v), static_cast<int>(roots.size()));
      if (fresh) roots.push_back(v);
      return it->second;
    };
    for (int i = 0; i < n; ++i) {
      std::vector<GoldenInt> e(n, GoldenInt(0)), me(n, GoldenInt(0));
      e[i] = GoldenInt(1);
      me[i] = GoldenInt(-1);
      add(e);
      add(me);
    }
    auto apply_gen = [&](int i, const std::vector<GoldenInt>& v) {
      GoldenInt coeff(0);
      for (int j = 0; j < n; ++j) coeff += f.cartan_at(i, j) * v[j];
      std::vector<GoldenInt> w = v;
      w[i] -= coeff;
      return w;
    };
    for (size_t head = 0; head < roots.size(); ++head) {
      for (int i = 0; i < n; ++i) add(apply_gen(i, roots[head]));
      if (roots.size() > size_t(4) * f.num_pos)
        throw std::logic_error("root closure runaway for " + t.str());
    }
    // Split by sign and order positives by (height, then lexicographically
    // larger coordinates first) — this ordering is part of the CLI contract.
    std::vector<std::vector<GoldenInt>> positives;
    for (const auto& v : roots) {
      int sign = 0;
      for (const auto& x : v)
        if (x.sign() != 0) {
          sign = x.sign();
          break;
        }
      if (sign > 0) positives.push_back(v);
    }
    if (static_cast<int>(positives.size()) != f.num_pos)
      throw std::logic_error("positive-root count mismatch for " + t.str());
    std::sort(positives.begin(), positives.end(),
              [](const std::vector<GoldenInt>& u, const std::vector<GoldenInt>& v) {
                GoldenInt hu(0), hv(0);
                for (const auto& x : u) hu += x;
                for (const auto& x : v) hv += x;
                int c = (hu - hv).sign();
                if (c != 0) return c < 0;
                for (size_t k = 0; k < u.size(); ++k) {
                  int d = (u[k] - v[k]).sign();
                  if (d != 0) return d > 0;
                }
                return false;
              });

    f.root_coords = positives;
    for (const auto& v : positives) {
      std::vector<GoldenInt> neg(v.size());
      for (size_t k = 0; k < v.size(); ++k) neg[k] = -v[k];
      f.root_coords.push_back(neg);
    }
    // Re-index and extend the global tables.
    std::map<std::vector<std::pair<long long, long long>>, int> final_index;
    for (size_t k = 0; k < f.root_coords.size(); ++k)
      final_index.emplace(encode(f.root_coords[k]), static_cast<int>(k));
    for (int i = 0; i < n; ++i) {
      std::vector<GoldenInt> e(n, GoldenInt(0));
      e[i] = GoldenInt(1);
      int local = final_index.at(encode(e));
      if (local != i) throw std::logic_error("simple roots not leading for " + t.str());
      simple_root_pos_.push_back(f.root_offset + local);
    }
    for (int k = 0; k < f.num_pos; ++k) {
      negative_flag_.push_back(false);
      pos_root_global_.push_back(f.root_offset + k);
    }
    for (int k = 0; k < f.num_pos; ++k) negative_flag_.push_back(true);
    for (int k = 0; k < 2 * f.num_pos; ++k)
      negation_.push_back(static_cast<RootId>(f.root_offset + (k + f.num_pos) % (2 * f.num_pos)));

    // Generator action on this factor's roots.
    factor_gen_images_.emplace_back();
    auto& gens = factor_gen_images_.back();
    gens.assign(n, std::vector<RootId>(2 * f.num_pos));
    for (int i = 0; i < n; ++i)
      for (int k = 0; k < 2 * f.num_pos; ++k)
        gens[i][k] = static_cast<RootId>(final_index.at(encode(apply_gen(i, f.root_coords[k]))));

    num_pos_ += f.num_pos;
    factors_.push_back(std::move(f));
  }

  void build_dihedral_factor(const IrreducibleType& t) {
    Factor f;
    f.type = t;
    f.dihedral = true;
    f.rank = 2;
    f.m_bond = t.bond;
    f.num_pos = t.bond;
    f.root_offset = static_cast<int>(negation_.size());
    f.simple_offset = static_cast<int>(simple_root_pos_.size());
    f.refl_offset = num_pos_;
    int m = f.m_bond;
    // Rays 0..2m-1; reflection with root ray k maps j to 2k+m-j (mod 2m).
    // Positive rays are 0..m-1; simple system = rays 0 and m-1.
    simple_root_pos_.push_back(f.root_offset + 0);
    simple_root_pos_.push_back(f.root_offset + (m - 1));
    for (int k = 0; k < m; ++k) {
      negative_flag_.push_back(false);
      pos_root_global_.push_back(f.root_offset + k);
    }
    for (int k = 0; k < m; ++k) negative_flag_.push_back(true);
    for (int k = 0; k < 2 * m; ++k)
      negation_.push_back(static_cast<RootId>(f.root_offset + (k + m) % (2 * m)));

    factor_gen_images_.emplace_back();
    auto& gens = factor_gen_images_.back();
    gens.assign(2, std::vector<RootId>(2 * m));
    for (int which = 0; which < 2; ++which) {
      int k = which == 0 ? 0 : m - 1;
      for (int j = 0; j < 2 * m; ++j)
        gens[which][j] = static_cast<RootId>(((2 * k + m - j) % (2 * m) + 2 * m) % (2 * m));
    }
    num_pos_ += f.num_pos;
    factors_.push_back(std::move(f));
  }

  void build_reflections() {
    // Assemble global simple-reflection permutations.
    size_t total = negation_.size();
    for (size_t fi = 0; fi < factors_.size(); ++fi) {
      const Factor& f = factors_[fi];
      for (int i = 0; i < f.rank; ++i) {
        GroupElement g = identity();
        for (size_t k = 0; k < factor_gen_images_[fi][i].size(); ++k)
          g.image[f.root_offset + k] =
              static_cast<RootId>(f.root_offset + factor_gen_images_[fi][i][k]);
        simple_refl_.push_back(std::move(g));
      }
    }
    factor_gen_images_.clear();
    factor_gen_images_.shrink_to_fit();

    // Close the simples under conjugation; each conjugate is the reflection
    // of the image root, which identifies its index.
    refl_perm_.assign(num_pos_, GroupElement{});
    refl_root_.assign(num_pos_, -1);
    refl_of_root_.assign(total, -1);
    refl_simple_index_.assign(num_pos_, -1);
    std::vector<int> t_order_of_pos_root(total, -1);
    int next = 0;
    for (const Factor& f : factors_) {
      if (f.dihedral) {
        // T order: the two simples first, then middle rays ascending.
        std::vector<int> rays{0, f.m_bond - 1};
        for (int k = 1; k + 1 < f.m_bond; ++k) rays.push_back(k);
        for (int k : rays) t_order_of_pos_root[f.root_offset + k] = next++;
      } else {
        for (int k = 0; k < f.num_pos; ++k) t_order_of_pos_root[f.root_offset + k] = next++;
      }
    }
    std::vector<char> have(num_pos_, 0);
    std::vector<GroupElement> pending;
    auto root_negated_by = [&](const GroupElement& g) {
      int found = -1;
      for (int r : pos_root_global_) {
        if (g.image[r] == negation_[r]) {
          if (found >= 0) throw std::logic_error("reflection negating two positive roots");
          found = r;
        }
      }
      if (found < 0) throw std::logic_error("conjugate of reflection is not a reflection");
      return found;
    };
    for (size_t i = 0; i < simple_refl_.size(); ++i) pending.push_back(simple_refl_[i]);
    size_t head = 0;
    int placed = 0;
    while (head < pending.size()) {
      GroupElement g = pending[head++];
      int root = root_negated_by(g);
      int t = t_order_of_pos_root[root];
      if (have[t]) continue;
      have[t] = 1;
      ++placed;
      refl_root_[t] = root;
      refl_of_root_[root] = t;
      refl_perm_[t] = g;
      for (const auto& s : simple_refl_) pending.push_back(multiply(multiply(s, g), s));
    }
    if (placed != num_pos_)
      throw std::logic_error("reflection closure found " + std::to_string(placed) +
                             " of " + std::to_string(num_pos_));
    for (size_t i = 0; i < simple_refl_.size(); ++i) {
      int t = reflection_of_root(simple_root_pos_[i]);
      refl_simple_index_[t] = static_cast<int>(i);
      simple_refl_index_.push_back(t);
    }
  }

  int reflection_of_root(int global_root) const { return refl_of_root_[global_root]; }

  void build_coxeter_matrix() {
    int n = rank();
    coxeter_matrix_.assign(n, std::vector<int>(n, 1));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        coxeter_matrix_[i][j] =
            i == j ? 1 : order(multiply(simple_refl_[i], simple_refl_[j]));
  }

  GroupElement product_of_simples(const std::vector<int>& idx) const {
    GroupElement w = identity();
    for (int i : idx) w = multiply(w, simple_refl_[i]);
    return w;
  }

  int dim_fixed_in_factor(const Factor& f, const GroupElement& w) const {
    if (f.dihedral) {
      int m = f.m_bond;
      int i0 = w.image[f.root_offset] - f.root_offset;
      int i1 = w.image[f.root_offset + 1] - f.root_offset;
      bool rotation = (i1 - i0 + 2 * m) % (2 * m) == 1;
      if (rotation) return i0 == 0 ? 2 : 0;
      return 1;
    }
    GoldenMatrix m = action_matrix_minus_identity(f, w);
    return f.rank - bareiss_rank(std::move(m));
  }

  /// Matrix of w restricted to the factor, minus the identity, in the
  /// simple-root basis (column j = coords of w(alpha_j) - alpha_j).
  GoldenMatrix action_matrix_minus_identity(const Factor& f, const GroupElement& w) const {
    GoldenMatrix m(f.rank, f.rank);
    for (int j = 0; j < f.rank; ++j) {
      RootId img = w.image[simple_root_pos_[f.simple_offset + j]];
      const auto& coords = f.root_coords[img - f.root_offset];
      for (int i = 0; i < f.rank; ++i) m.at(i, j) = coords[i];
      m.at(j, j) -= GoldenInt(1);
    }
    return m;
  }

  bool fixed_space_contains_in_factor(const Factor& f, const GroupElement& u,
                                      const GroupElement& w) const {
    if (f.dihedral) {
      int du = dim_fixed_in_factor(f, u), dw = dim_fixed_in_factor(f, w);
      if (du == 2 || dw == 0) return true;
      if (du < dw) return false;
      if (du == 1 && dw == 1) {
        // Same mirror line iff same reflection.
        for (int k = 0; k < 2 * f.m_bond; ++k)
          if (u.image[f.root_offset + k] != w.image[f.root_offset + k]) return false;
        return true;
      }
      return false;  // du == 0 && dw >= 1, or du == 1 && dw == 2
    }
    GoldenMatrix a = action_matrix_minus_identity(f, w);
    GoldenMatrix b = action_matrix_minus_identity(f, u);
    // fix(u) >= fix(w)  <=>  ker(w-1) <= ker(u-1)
    return kernel_included(a, b);
  }

  std::string check_orbit_dichotomy(const std::vector<std::vector<int>>& orbits) const {
    std::vector<char> simple_flag(num_pos_, 0);
    for (int t : simple_refl_index_) simple_flag[t] = 1;
    for (const auto& orbit : orbits) {
      const Factor* f = nullptr;
      for (const auto& fac : factors_)
        if (orbit[0] >= fac.refl_offset && orbit[0] < fac.refl_offset + fac.num_pos) f = &fac;
      if (!f) return "orbit outside factor blocks";
      long long h = f->type.coxeter_number();
      int in_s = 0;
      for (int t : orbit) in_s += simple_flag[t];
      long long size = static_cast<long long>(orbit.size());
      bool ok = (size == h && in_s == 2) || (2 * size == h && in_s == 1);
      if (!ok)
        return "orbit of size " + std::to_string(size) + " meets S " + std::to_string(in_s) +
               " times (h=" + std::to_string(h) + ")";
    }
    return {};
  }

  /// Cheap candidate: a reflection negates exactly its own positive root.
  int candidate_reflection(const GroupElement& w) const {
    for (int r : pos_root_global_)
      if (w.image[r] == negation_[r]) return refl_of_root_[r];
    return -1;
  }

  TypeDescriptor desc_;
  std::vector<Factor> factors_;
  std::vector<std::vector<std::vector<RootId>>> factor_gen_images_;  // build scratch
  std::vector<RootId> negation_;
  std::vector<char> negative_flag_;
  std::vector<int> pos_root_global_;
  std::vector<int> simple_root_pos_;
  std::vector<GroupElement> simple_refl_;
  std::vector<GroupElement> refl_perm_;   // canonical T order
  std::vector<int> refl_root_;            // t -> global positive root
  std::vector<int> refl_of_root_;         // global positive root -> t
  std::vector<int> refl_simple_index_;    // t -> simple index or -1
  std::vector<int> simple_refl_index_;    // simple index -> t
  std::vector<std::vector<int>> coxeter_matrix_;
  int num_pos_ = 0;
};

}  // namespace dualbraid
