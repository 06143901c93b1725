#pragma once

#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "dualbraid/poset.hpp"

namespace dualbraid {

/// A set partition of {0, .., points-1}, the points sitting on a circle in
/// that cyclic order. Blocks are sorted internally and by least element.
struct SetPartition {
  int points = 0;
  std::vector<std::vector<int>> blocks;

  friend bool operator==(const SetPartition&, const SetPartition&) = default;

  std::vector<int> block_of() const {
    std::vector<int> owner(points, -1);
    for (size_t b = 0; b < blocks.size(); ++b)
      for (int x : blocks[b]) owner[x] = static_cast<int>(b);
    return owner;
  }

  /// Every block of *this contained in a block of `coarser`.
  bool refines(const SetPartition& coarser) const {
    auto owner = coarser.block_of();
    for (const auto& block : blocks)
      for (size_t i = 1; i < block.size(); ++i)
        if (owner[block[i]] != owner[block[0]]) return false;
    return true;
  }

  /// Purely combinatorial crossing predicate: two blocks cross iff their
  /// restriction to the circle has at least four maximal runs.
  bool noncrossing() const {
    auto owner = block_of();
    for (size_t b1 = 0; b1 < blocks.size(); ++b1)
      for (size_t b2 = b1 + 1; b2 < blocks.size(); ++b2) {
        int runs = 0, prev = -1;
        for (int x = 0; x < points; ++x) {
          int o = owner[x];
          if (o != int(b1) && o != int(b2)) continue;
          if (o != prev) ++runs;
          prev = o;
        }
        if (runs >= 4) return false;
      }
    return true;
  }

  /// Invariant under the half-turn x -> x + points/2 (blocks permuted).
  bool half_turn_symmetric() const {
    int half = points / 2;
    auto owner = block_of();
    for (const auto& block : blocks) {
      int image_owner = owner[(block[0] + half) % points];
      for (int x : block)
        if (owner[(x + half) % points] != image_owner) return false;
      if (int(blocks[image_owner].size()) != int(block.size())) return false;
    }
    return true;
  }

  /// The permutation sending each point to the next one of its block in
  /// increasing circular order.
  std::vector<int> cycle_successor() const {
    std::vector<int> sigma(points);
    for (const auto& block : blocks)
      for (size_t i = 0; i < block.size(); ++i)
        sigma[block[i]] = block[(i + 1) % block.size()];
    return sigma;
  }

  int num_blocks() const { return static_cast<int>(blocks.size()); }
};

/// All set partitions of m points via restricted growth strings, filtered by
/// `keep`.
template <typename Pred>
std::vector<SetPartition> filtered_partitions(int m, Pred keep) {
  std::vector<SetPartition> out;
  std::vector<int> rgs(m, 0);
  auto emit = [&] {
    SetPartition p;
    p.points = m;
    int nb = 0;
    for (int x : rgs) nb = std::max(nb, x + 1);
    p.blocks.assign(nb, {});
    for (int x = 0; x < m; ++x) p.blocks[rgs[x]].push_back(x);
    if (keep(p)) out.push_back(std::move(p));
  };
  auto rec = [&](auto&& self, int pos, int maxv) -> void {
    if (pos == m) {
      emit();
      return;
    }
    for (int v = 0; v <= maxv + 1; ++v) {
      rgs[pos] = v;
      self(self, pos + 1, std::max(maxv, v));
    }
  };
  if (m == 0) return out;
  rec(rec, 1, 0);  // rgs[0] = 0 always
  return out;
}

inline std::vector<SetPartition> noncrossing_partitions(int m) {
  return filtered_partitions(m, [](const SetPartition& p) { return p.noncrossing(); });
}

inline std::vector<SetPartition> symmetric_noncrossing_partitions(int m) {
  return filtered_partitions(
      m, [](const SetPartition& p) { return p.noncrossing() && p.half_turn_symmetric(); });
}

/// Covers of the refinement order, computed without any grading assumption:
/// lower covers of each element are the maximal elements strictly below it.
inline std::vector<std::pair<int, int>> refinement_covers(const std::vector<SetPartition>& ps) {
  size_t n = ps.size();
  std::vector<std::vector<int>> strictly_below(n);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j)
      if (i != j && ps[i].refines(ps[j]) && !(ps[i] == ps[j]))
        strictly_below[j].push_back(static_cast<int>(i));
  std::vector<std::pair<int, int>> covers;
  for (size_t j = 0; j < n; ++j) {
    for (int i : strictly_below[j]) {
      bool maximal = true;
      for (int k : strictly_below[j])
        if (k != i && ps[i].refines(ps[k])) {
          maximal = false;
          break;
        }
      if (maximal) covers.emplace_back(i, static_cast<int>(j));
    }
  }
  return covers;
}

/// Signed monomial map e_k -> eps_k e_{l.at(k)}, embedded into the context's
/// root permutation representation through the standard coordinates
/// (types A and B only: alpha_i = e_i - e_{i+1}, plus alpha_n = e_n for B).
class MonomialEmbedding {
public:
  explicit MonomialEmbedding(const GroupContext& ctx) : ctx_(&ctx) {
    const TypeDescriptor& t = ctx.type();
    if (t.factors.size() != 1 ||
        (t.factors[0].family != Family::A && t.factors[0].family != Family::B))
      throw std::invalid_argument("monomial embedding needs an irreducible A or B context");
    family_ = t.factors[0].family;
    rank_ = t.factors[0].rank;
    dim_ = family_ == Family::A ? rank_ + 1 : rank_;
    for (int r = 0; r < ctx.num_roots(); ++r) {
      auto e = root_euclid(r);
      index_.emplace(std::move(e), static_cast<RootId>(r));
    }
  }

  int euclid_dim() const { return dim_; }

  /// l and eps have euclid_dim() entries; for type A all eps must be +1.
  GroupElement element(const std::vector<int>& l, const std::vector<int>& eps) const {
    GroupElement w;
    w.image.resize(ctx_->num_roots());
    for (int r = 0; r < ctx_->num_roots(); ++r) {
      auto coords = root_euclid(r);
      std::vector<long long> out(dim_, 0);
      for (int k = 0; k < dim_; ++k) out[l[k]] += eps[k] * coords[k];
      auto it = index_.find(out);
      if (it == index_.end())
        throw std::invalid_argument("monomial map does not permute the roots");
      w.image[r] = it->second;
    }
    return w;
  }

private:
  std::vector<long long> root_euclid(int global_root) const {
    // simple-basis coordinates of the root, then each alpha_i expanded in e_k;
    // for type B the last simple root is e_n itself, all others are chain steps.
    int t = global_root % ctx_->num_reflections();
    bool neg = global_root >= ctx_->num_reflections();
    auto simple = ctx_->root_coordinates(t);
    std::vector<long long> e(dim_, 0);
    for (int i = 0; i < rank_; ++i) {
      long long ci = simple[i].unit_part() * (neg ? -1 : 1);
      e[i] += ci;
      bool chain_step = family_ == Family::A || i + 1 < rank_;
      if (chain_step) e[i + 1] -= ci;
    }
    return e;
  }

  const GroupContext* ctx_;
  Family family_;
  int rank_, dim_;
  std::map<std::vector<long long>, RootId> index_;
};

struct NcpReport {
  std::string model;
  long long partitions = 0;
  long long covers_checked = 0;
  std::vector<std::string> failures;
  bool passed() const { return failures.empty(); }
};

/// The noncrossing-partition model and its witness isomorphism onto P_c.
struct NcpModel {
  std::shared_ptr<GroupContext> ctx;
  std::vector<SetPartition> partitions;
  std::vector<std::pair<int, int>> covers;  // refinement covers
  GroupElement model_coxeter;               // image of the one-block partition
  DivisibilityPoset pc;                     // P_c for that Coxeter element
  std::vector<int> pc_index;                // partition index -> poset index
};

namespace detail {

inline NcpModel build_ncp_model(std::shared_ptr<GroupContext> ctx,
                                std::vector<SetPartition> partitions, bool type_b) {
  MonomialEmbedding embed(*ctx);
  int dim = embed.euclid_dim();
  int half = type_b ? dim : 0;
  std::vector<GroupElement> images;
  int one_block = -1;
  for (size_t pi = 0; pi < partitions.size(); ++pi) {
    const SetPartition& p = partitions[pi];
    std::vector<int> sigma = p.cycle_successor();
    std::vector<int> l(dim), eps(dim, 1);
    for (int k = 0; k < dim; ++k) {
      int image = sigma[k];
      if (type_b && image >= half) {
        l[k] = image - half;
        eps[k] = -1;
      } else {
        l[k] = image;
      }
    }
    images.push_back(embed.element(l, eps));
    if (p.num_blocks() == 1) one_block = static_cast<int>(pi);
  }
  if (one_block < 0) throw std::logic_error("one-block partition missing");
  GroupElement c = images[one_block];
  if (ctx->order(c) != ctx->coxeter_number() ||
      ctx->reflection_length(c) != ctx->rank())
    throw std::logic_error("one-block image is not a Coxeter element");
  DivisibilityPoset pc = enumerate_pc(*ctx, c);
  std::vector<int> pc_index;
  for (const auto& w : images) pc_index.push_back(pc.index_of(w));
  auto covers = refinement_covers(partitions);
  return NcpModel{std::move(ctx), std::move(partitions), std::move(covers), std::move(c),
                  std::move(pc), std::move(pc_index)};
}

}  // namespace detail

/// Noncrossing partitions of mu_n against P_c of A_{n-1} (so model(n) pairs
/// with descriptor A_{n-1}).
inline NcpModel ncp_model_a(int n) {
  if (n < 2) throw std::invalid_argument("ncp_model_a needs n >= 2");
  auto ctx = std::make_shared<GroupContext>(
      TypeDescriptor{{IrreducibleType{Family::A, n - 1, 0}}});
  return detail::build_ncp_model(std::move(ctx), noncrossing_partitions(n), false);
}

/// Half-turn symmetric noncrossing partitions of mu_{2n} against P_c of B_n.
inline NcpModel ncp_model_b(int n) {
  if (n < 2) throw std::invalid_argument("ncp_model_b needs n >= 2");
  auto ctx = std::make_shared<GroupContext>(
      TypeDescriptor{{IrreducibleType{Family::B, n, 0}}});
  return detail::build_ncp_model(std::move(ctx), symmetric_noncrossing_partitions(2 * n), true);
}

/// Full order-isomorphism audit: bijectivity of the witness map and an
/// edge-by-edge match of covers in both directions.
inline NcpReport ncp_isomorphism_check(const NcpModel& model) {
  NcpReport report;
  report.model = model.ctx->type().str();
  report.partitions = static_cast<long long>(model.partitions.size());
  if (model.partitions.size() != model.pc.size())
    report.failures.push_back("counts differ: " + std::to_string(model.partitions.size()) +
                              " partitions vs |P_c| = " + std::to_string(model.pc.size()));
  std::vector<int> seen(model.pc.size(), 0);
  for (size_t i = 0; i < model.partitions.size(); ++i) {
    int j = model.pc_index[i];
    if (j < 0) {
      report.failures.push_back("partition " + std::to_string(i) + " maps outside P_c");
      continue;
    }
    if (seen[j]++)
      report.failures.push_back("partition " + std::to_string(i) + " maps onto a repeat");
    // discrete partition -> identity, one block -> c
    int nb = model.partitions[i].num_blocks();
    if (nb == model.partitions[i].points && j != 0)
      report.failures.push_back("discrete partition does not map to the identity");
  }
  // covers must transport exactly
  std::set<std::pair<int, int>> pc_covers;
  for (auto [a, b] : model.pc.compute_covers()) pc_covers.emplace(a, b);
  for (auto [a, b] : model.covers) {
    ++report.covers_checked;
    if (!pc_covers.erase({model.pc_index[a], model.pc_index[b]}))
      report.failures.push_back("refinement cover " + std::to_string(a) + "<" + std::to_string(b) +
                                " is not a P_c cover");
  }
  if (!pc_covers.empty())
    report.failures.push_back(std::to_string(pc_covers.size()) +
                              " P_c covers unmatched by refinement covers");
  return report;
}

}  // namespace dualbraid
