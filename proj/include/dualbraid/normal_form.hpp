#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <vector>

#include "dualbraid/premonoid.hpp"

namespace dualbraid {

/// Greedy factorization p_1 ... p_k into non-unit simples, each p_i the left
/// gcd of Delta and the remaining suffix.
using NormalForm = std::vector<int>;

/// One letter of a word in the group of fractions: a simple and a sign.
struct SignedLetter {
  int simple;
  int sign;  // +1 or -1
};
using SignedWord = std::vector<SignedLetter>;

/// Delta^power times a positive normal form not left-divisible by Delta.
struct MixedForm {
  long long delta_power = 0;
  NormalForm factors;
  friend bool operator==(const MixedForm&, const MixedForm&) = default;
};

/// One local rewrite: move the movable part of b across to a.
/// Returns true if the pair changed. b may become the unit.
inline bool normalize_pair(const PreMonoidView& view, int& a, int& b) {
  int d = view.left_gcd(view.right_complement(a), b);
  if (d == view.unit()) return false;
  a = *view.product(a, d);
  b = view.left_quotient(d, b);
  return true;
}

/// Local characterization: every consecutive pair already normal.
inline bool is_normal(const PreMonoidView& view, const NormalForm& word) {
  for (int x : word)
    if (x == view.unit()) return false;
  for (size_t i = 0; i + 1 < word.size(); ++i) {
    int a = word[i], b = word[i + 1];
    if (view.left_gcd(view.right_complement(a), b) != view.unit()) return false;
  }
  return true;
}

/// Greedy normal form by local two-simple rewriting, swept to fixpoint.
inline NormalForm normal_form(const PreMonoidView& view, std::vector<int> word) {
  std::erase(word, view.unit());
  bool changed = true;
  while (changed) {
    changed = false;
    for (size_t i = 0; i + 1 < word.size();) {
      if (normalize_pair(view, word[i], word[i + 1])) {
        changed = true;
        if (word[i + 1] == view.unit()) word.erase(word.begin() + i + 1);
      } else {
        ++i;
      }
    }
  }
  return word;
}

/// Signed word -> canonical mixed form. Inverses are rewritten through the
/// right complement (x^{-1} = complement(x) Delta^{-1}) and the Delta power
/// collected on the left through the inverse diagram automorphism.
inline MixedForm mixed_form(const PreMonoidView& view, const SignedWord& word) {
  MixedForm form;
  auto renormalize = [&] {
    form.factors = normal_form(view, std::move(form.factors));
    size_t lead = 0;
    while (lead < form.factors.size() && form.factors[lead] == view.delta()) ++lead;
    if (lead) {
      form.delta_power += static_cast<long long>(lead);
      form.factors.erase(form.factors.begin(), form.factors.begin() + lead);
    }
  };
  for (const SignedLetter& letter : word) {
    if (letter.simple == view.unit()) continue;
    if (letter.sign >= 0) {
      form.factors.push_back(letter.simple);
    } else {
      // Delta^k w x^{-1} = Delta^{k-1} tau^{-1}(w . complement(x))
      form.factors.push_back(view.right_complement(letter.simple));
      for (int& f : form.factors) {
        f = view.delta_conjugate_inv(f);
        if (f < 0) throw std::logic_error("mixed form: Delta conjugation left the simples");
      }
      form.delta_power -= 1;
    }
    renormalize();
  }
  return form;
}

inline MixedForm mixed_form_of_positive(const PreMonoidView& view, const std::vector<int>& word) {
  SignedWord sw;
  for (int x : word) sw.push_back({x, +1});
  return mixed_form(view, sw);
}

/// The word problem for the group of fractions: two signed words are equal
/// iff their mixed forms coincide.
inline bool word_problem_eq(const PreMonoidView& view, const SignedWord& w1,
                            const SignedWord& w2) {
  return mixed_form(view, w1) == mixed_form(view, w2);
}

struct DeltaConjugationReport {
  std::vector<int> map;     // simple -> Delta^{-1} simple Delta
  int order_on_simples = 0;
  int order_on_atoms = 0;
  std::vector<std::string> failures;
  bool passed() const { return failures.empty(); }
};

/// The diagram automorphism x -> Delta^{-1} x Delta on the simples, with its
/// order and the centrality of Delta^order checked in mixed-form arithmetic.
inline DeltaConjugationReport delta_conjugation(const PreMonoidView& view) {
  DeltaConjugationReport report;
  report.map.resize(view.size());
  for (int x = 0; x < static_cast<int>(view.size()); ++x) {
    int y = view.delta_conjugate(x);
    report.map[x] = y;
    if (y < 0) {
      report.failures.push_back("conjugate of simple " + std::to_string(x) + " is not a simple");
      return report;
    }
  }
  if (report.map[view.unit()] != view.unit())
    report.failures.push_back("unit not fixed by Delta conjugation");
  auto order_of = [&](bool atoms_only) {
    int order = 1;
    std::vector<int> power = report.map;
    auto is_id = [&] {
      for (int x = 0; x < static_cast<int>(view.size()); ++x) {
        if (atoms_only && view.length(x) != 1) continue;
        if (power[x] != x) return false;
      }
      return true;
    };
    while (!is_id()) {
      for (int x = 0; x < static_cast<int>(view.size()); ++x) power[x] = report.map[power[x]];
      ++order;
      if (order > (1 << 20)) throw std::logic_error("diagram automorphism order runaway");
    }
    return order;
  };
  report.order_on_simples = order_of(false);
  report.order_on_atoms = order_of(true);
  if (report.order_on_simples != report.order_on_atoms)
    report.failures.push_back("order differs on atoms vs simples");
  // preserves the partial product on sampled pairs
  for (int a = 0; a < static_cast<int>(view.size()); a += 3)
    for (int b = 0; b < static_cast<int>(view.size()); b += 3) {
      auto p = view.product(a, b);
      auto q = view.product(report.map[a], report.map[b]);
      if (p.has_value() != q.has_value() || (p && report.map[*p] != *q)) {
        report.failures.push_back("conjugation does not preserve the product at (" +
                                  std::to_string(a) + "," + std::to_string(b) + ")");
        return report;
      }
    }
  // Delta^order is central: test on the atoms via mixed forms
  int d = report.order_on_simples;
  for (int a = 0; a < view.num_atoms(); ++a) {
    if (view.atom(a) < 0) continue;
    SignedWord left, right;
    for (int i = 0; i < d; ++i) left.push_back({view.delta(), +1});
    left.push_back({view.atom(a), +1});
    right.push_back({view.atom(a), +1});
    for (int i = 0; i < d; ++i) right.push_back({view.delta(), +1});
    if (!(mixed_form(view, left) == mixed_form(view, right))) {
      report.failures.push_back("Delta^" + std::to_string(d) + " does not commute with atom " +
                                std::to_string(a));
      break;
    }
  }
  return report;
}

class EPosetCapError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// The poset E(m) of reduced P-decompositions of a monoid element, ordered by
/// single-position merges; edges point from finer to coarser.
struct EPoset {
  std::vector<std::vector<int>> vertices;
  std::vector<std::pair<int, int>> merge_edges;
  int dimension = 0;
};

inline EPoset e_poset(const PreMonoidView& view, const std::vector<int>& word, int cap = 6) {
  MixedForm target = mixed_form_of_positive(view, word);
  long long atom_length = target.delta_power * view.length(view.delta());
  for (int f : target.factors) atom_length += view.length(f);
  if (atom_length > cap)
    throw EPosetCapError("E(m) enumeration capped at " + std::to_string(cap) +
                         " atoms, element has length " + std::to_string(atom_length));
  // remaining suffix tracked as a positive word; divisibility decided by the
  // mixed form of x^{-1} . suffix
  EPoset out;
  std::vector<int> prefix;
  std::vector<int> start;
  for (long long i = 0; i < target.delta_power; ++i) start.push_back(view.delta());
  start.insert(start.end(), target.factors.begin(), target.factors.end());
  auto dfs = [&](auto&& self, const std::vector<int>& remaining) -> void {
    if (remaining.empty()) {
      out.vertices.push_back(prefix);
      return;
    }
    for (int x = 1; x < static_cast<int>(view.size()); ++x) {
      SignedWord test{{x, -1}};
      for (int f : remaining) test.push_back({f, +1});
      MixedForm rest = mixed_form(view, test);
      if (rest.delta_power < 0) continue;
      std::vector<int> next;
      for (long long i = 0; i < rest.delta_power; ++i) next.push_back(view.delta());
      next.insert(next.end(), rest.factors.begin(), rest.factors.end());
      prefix.push_back(x);
      self(self, next);
      prefix.pop_back();
    }
  };
  dfs(dfs, start);
  std::sort(out.vertices.begin(), out.vertices.end());
  // single merges
  std::map<std::vector<int>, int> index;
  for (size_t i = 0; i < out.vertices.size(); ++i) index.emplace(out.vertices[i], int(i));
  for (size_t i = 0; i < out.vertices.size(); ++i) {
    const auto& v = out.vertices[i];
    for (size_t pos = 0; pos + 1 < v.size(); ++pos) {
      if (auto p = view.product(v[pos], v[pos + 1])) {
        std::vector<int> merged(v.begin(), v.begin() + pos);
        merged.push_back(*p);
        merged.insert(merged.end(), v.begin() + pos + 2, v.end());
        auto it = index.find(merged);
        if (it == index.end()) throw std::logic_error("E(m): merge left the vertex set");
        out.merge_edges.emplace_back(static_cast<int>(i), it->second);
      }
    }
  }
  // dimension: longest chain in the merge order (edges drop the length by 1,
  // so relaxing in decreasing word length settles every predecessor first)
  std::vector<int> longest(out.vertices.size(), 0);
  std::vector<size_t> by_length(out.vertices.size());
  for (size_t i = 0; i < by_length.size(); ++i) by_length[i] = i;
  std::sort(by_length.begin(), by_length.end(), [&](size_t a, size_t b) {
    return out.vertices[a].size() > out.vertices[b].size();
  });
  for (size_t a : by_length)
    for (auto [from, to] : out.merge_edges)
      if (from == static_cast<int>(a))
        longest[to] = std::max(longest[to], longest[from] + 1);
  for (int l : longest) out.dimension = std::max(out.dimension, l);
  return out;
}

struct ThetaReport {
  std::vector<int> theta, theta_prime;  // maps on simple ids
  std::vector<std::string> failures;
  bool passed() const { return failures.empty(); }
};

/// The two involutive anti-automorphisms of the dual monoid attached to a
/// chromatic pair: on a simple x they act by s_R x^{-1} s_R and by
/// (s_R c) x^{-1} (s_R c)^{-1}; together they generate a dihedral action
/// with a braid relation of length h.
inline ThetaReport theta_antiautomorphisms(const PreMonoidView& dual, const ChromaticPair& cp) {
  ThetaReport report;
  const GroupContext& ctx = dual.context();
  if (ctx.type().factors.size() != 1) {
    report.failures.push_back("theta needs an irreducible type");
    return report;
  }
  GroupElement s_r = cp.s_right;
  GroupElement s_r_c = ctx.multiply(s_r, cp.coxeter);
  auto build = [&](const GroupElement& w, const char* name, std::vector<int>& map) {
    map.assign(dual.size(), -1);
    GroupElement w_inv = ctx.inverse(w);
    for (int x = 0; x < static_cast<int>(dual.size()); ++x) {
      GroupElement image =
          ctx.multiply(ctx.multiply(w, ctx.inverse(dual.element(x))), w_inv);
      map[x] = dual.index_of(image);
      if (map[x] < 0) {
        report.failures.push_back(std::string(name) + " image of simple " + std::to_string(x) +
                                  " is not a simple");
        return;
      }
    }
  };
  build(s_r, "theta", report.theta);
  build(s_r_c, "theta_prime", report.theta_prime);
  if (!report.passed()) return report;

  auto check_involutive_antiauto = [&](const std::vector<int>& map, const char* name) {
    for (int x = 0; x < static_cast<int>(dual.size()); ++x)
      if (map[map[x]] != x) {
        report.failures.push_back(std::string(name) + " is not involutive at " +
                                  std::to_string(x));
        return;
      }
    for (int a = 0; a < static_cast<int>(dual.size()); ++a)
      for (int b = 0; b < static_cast<int>(dual.size()); ++b) {
        auto p = dual.product(a, b);
        auto q = dual.product(map[b], map[a]);
        if (p.has_value() != q.has_value() || (p && map[*p] != *q)) {
          report.failures.push_back(std::string(name) + " does not reverse the product at (" +
                                    std::to_string(a) + "," + std::to_string(b) + ")");
          return;
        }
      }
  };
  check_involutive_antiauto(report.theta, "theta");
  check_involutive_antiauto(report.theta_prime, "theta_prime");
  if (!report.passed()) return report;

  // alternating braid relation of length h between the two maps
  long long h = ctx.coxeter_number();
  std::vector<int> lhs(dual.size()), rhs(dual.size());
  for (size_t x = 0; x < dual.size(); ++x) {
    lhs[x] = static_cast<int>(x);
    rhs[x] = static_cast<int>(x);
  }
  for (long long i = 0; i < h; ++i) {
    const auto& lmap = (i % 2 == 0) ? report.theta : report.theta_prime;
    const auto& rmap = (i % 2 == 0) ? report.theta_prime : report.theta;
    for (size_t x = 0; x < dual.size(); ++x) {
      lhs[x] = lmap[lhs[x]];
      rhs[x] = rmap[rhs[x]];
    }
  }
  if (lhs != rhs)
    report.failures.push_back("braid relation of length " + std::to_string(h) + " fails");
  return report;
}

/// Serialization of the garside-core external interface:
/// simples as dot-separated generator words in brackets, mixed forms as
/// "D^k · [..][..]".
inline std::string simple_to_string(const PreMonoidView& view, int x) {
  const GroupContext& ctx = view.context();
  std::string out = "[";
  std::vector<int> word = view.kind() == GenKind::Simple
                              ? ctx.canonical_s_word(view.element(x))
                              : ctx.canonical_t_word(view.element(x));
  char letter = view.kind() == GenKind::Simple ? 's' : 't';
  for (size_t i = 0; i < word.size(); ++i) {
    if (i) out += '.';
    out += letter + std::to_string(word[i] + 1);
  }
  return out + "]";
}

inline std::string normal_form_to_string(const PreMonoidView& view, const NormalForm& nf) {
  std::string out;
  for (int x : nf) out += simple_to_string(view, x);
  return out;
}

inline std::string mixed_form_to_string(const PreMonoidView& view, const MixedForm& mf) {
  return "D^" + std::to_string(mf.delta_power) + " · " +
         normal_form_to_string(view, mf.factors);
}

}  // namespace dualbraid
