#pragma once

#include <algorithm>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "dualbraid/group.hpp"

namespace dualbraid {

/// An ordered tuple of reflections (by canonical T index) multiplying to a
/// fixed target; reduced when its length is l_T of the target.
struct TFactorization {
  std::vector<int> refl;

  friend bool operator==(const TFactorization&, const TFactorization&) = default;
  friend bool operator<(const TFactorization& a, const TFactorization& b) {
    return a.refl < b.refl;
  }
};

class RedTCapError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// All reduced T-decompositions of w, lexicographically sorted.
/// Enumeration is exponential; capped by reflection length.
inline std::vector<TFactorization> reduced_decompositions(const GroupContext& ctx,
                                                          const GroupElement& w,
                                                          int cap = 8) {
  int len = ctx.reflection_length(w);
  if (len > cap)
    throw RedTCapError("Red_T enumeration capped at length " + std::to_string(cap) +
                       ", element has length " + std::to_string(len));
  std::vector<TFactorization> out;
  std::vector<int> prefix;
  auto dfs = [&](auto&& self, const GroupElement& rest, int remaining) -> void {
    if (remaining == 0) {
      out.push_back(TFactorization{prefix});
      return;
    }
    for (int t = 0; t < ctx.num_reflections(); ++t) {
      GroupElement next = ctx.multiply(ctx.reflection(t), rest);
      if (ctx.reflection_length(next) == remaining - 1) {
        prefix.push_back(t);
        self(self, next, remaining - 1);
        prefix.pop_back();
      }
    }
  };
  dfs(dfs, w, len);
  return out;
}

/// Braid generator sigma_i acting on factorization tuples: positions are
/// 1-based, sigma_i replaces (a_i, a_{i+1}) by (a_i a_{i+1} a_i^{-1}, a_i);
/// the inverse generator undoes it. The tuple product is unchanged.
inline TFactorization hurwitz_apply(const GroupContext& ctx, int position, int sign,
                                    const TFactorization& f) {
  int k = static_cast<int>(f.refl.size());
  if (position < 1 || position > k - 1)
    throw std::out_of_range("hurwitz_apply: position " + std::to_string(position) +
                            " out of range for tuple of length " + std::to_string(k));
  TFactorization g = f;
  int a = f.refl[position - 1], b = f.refl[position];
  if (sign >= 0) {
    g.refl[position - 1] = ctx.conjugate_reflection(ctx.reflection(a), b);
    g.refl[position] = a;
  } else {
    g.refl[position - 1] = b;
    g.refl[position] = ctx.conjugate_reflection(ctx.reflection(b), a);
  }
  return g;
}

/// Orbit partition of Red_T(w) under the Hurwitz action, as sorted orbit
/// sizes (descending); the underlying orbits come back through `orbits`.
inline std::vector<int> hurwitz_orbits(const GroupContext& ctx, const GroupElement& w,
                                       std::vector<std::vector<TFactorization>>* orbits = nullptr,
                                       int cap = 8) {
  std::vector<TFactorization> all = reduced_decompositions(ctx, w, cap);
  std::map<TFactorization, int> orbit_of;
  std::vector<std::vector<TFactorization>> parts;
  for (const auto& start : all) {
    if (orbit_of.count(start)) continue;
    int id = static_cast<int>(parts.size());
    parts.emplace_back();
    std::vector<TFactorization> queue{start};
    orbit_of[start] = id;
    while (!queue.empty()) {
      TFactorization f = std::move(queue.back());
      queue.pop_back();
      parts[id].push_back(f);
      int k = static_cast<int>(f.refl.size());
      for (int i = 1; i <= k - 1; ++i) {
        for (int sign : {+1, -1}) {
          TFactorization g = hurwitz_apply(ctx, i, sign, f);
          if (orbit_of.emplace(g, id).second) queue.push_back(std::move(g));
        }
      }
    }
  }
  std::vector<int> sizes;
  for (const auto& p : parts) sizes.push_back(static_cast<int>(p.size()));
  std::sort(sizes.rbegin(), sizes.rend());
  if (orbits) *orbits = std::move(parts);
  return sizes;
}

}  // namespace dualbraid
