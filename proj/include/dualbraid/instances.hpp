#pragma once

#include <algorithm>
#include <random>
#include <string>
#include <vector>

#include "dualbraid/normal_form.hpp"
#include "dualbraid/report.hpp"

namespace dualbraid {

/// The classical braid monoid as a divisor pre-monoid: simples W, Delta w_0.
inline PreMonoidView classical_monoid(const GroupContext& ctx, size_t cap = 100000) {
  return PreMonoidView(ctx, GenKind::Simple, ctx.longest_element(), cap);
}

/// The dual braid monoid: simples P_c, Delta c.
inline PreMonoidView dual_monoid(const GroupContext& ctx, const GroupElement& c,
                                 size_t cap = 100000) {
  return PreMonoidView(ctx, GenKind::Reflection, c, cap);
}

/// The braid-group lift of a reflection: the S-word c^k s c^{-k} with minimal
/// k >= 0, recorded as (k, s).
struct TLift {
  int t_index = -1;
  int exponent = 0;
  int s_index = -1;
};

struct TLiftTable {
  std::vector<TLift> lift;         // indexed by reflection
  std::vector<int> tm_sequence;    // t index of t_m for m = 1..N
  std::vector<int> coxeter_word;   // ascending S-word of c (left then right)
  CheckReport reconciliation;

  /// lift(t)^{sign} as a signed word over the simple generators.
  SignedWord signed_s_word(int t, int sign, const PreMonoidView& classical) const {
    SignedWord w;
    const TLift& l = lift[t];
    auto push_cox = [&](int s) {
      for (int i : coxeter_word) w.push_back({classical.atom(i), s});
    };
    auto push_cox_inv = [&](int s) {
      for (auto it = coxeter_word.rbegin(); it != coxeter_word.rend(); ++it)
        w.push_back({classical.atom(*it), -s});
    };
    if (sign >= 0) {
      for (int k = 0; k < l.exponent; ++k) push_cox(+1);
      w.push_back({classical.atom(l.s_index), +1});
      for (int k = 0; k < l.exponent; ++k) push_cox_inv(+1);
    } else {
      for (int k = 0; k < l.exponent; ++k) push_cox(+1);
      w.push_back({classical.atom(l.s_index), -1});
      for (int k = 0; k < l.exponent; ++k) push_cox_inv(+1);
    }
    return w;
  }
};

/// Both encodings of the reflections inside the braid group, reconciled:
/// (a) the telescoping products t_m = (s_1..s_m)(s_1..s_{m-1})^{-1} for
/// m = 1..N, which must be distinct and exhaust T; (b) per reflection the
/// minimal conjugating power of c. Ties in (b) cannot occur; a collision or
/// non-exhaustion in (a) is an engine bug and is reported.
inline TLiftTable t_lifts(const GroupContext& ctx, const ChromaticPair& cp) {
  TLiftTable table;
  table.reconciliation.type = ctx.type().str();
  table.reconciliation.check = "t-lifts";
  const int n = ctx.rank();
  const int big_n = ctx.num_reflections();
  for (int i : cp.left) table.coxeter_word.push_back(i);
  for (int i : cp.right) table.coxeter_word.push_back(i);

  // (a) the telescoping sequence
  std::vector<char> hit(big_n, 0);
  GroupElement prefix = ctx.identity();      // s_1 .. s_{m-1}
  for (int m = 1; m <= big_n; ++m) {
    int s = table.coxeter_word[(m - 1) % n];
    GroupElement next = ctx.multiply(prefix, ctx.simple_reflection(s));
    GroupElement tm = ctx.multiply(next, ctx.inverse(prefix));
    int t = ctx.reflection_index(tm);
    ++table.reconciliation.instances;
    if (t < 0) {
      table.reconciliation.fail("t_" + std::to_string(m) + " is not a reflection");
      continue;
    }
    if (hit[t])
      table.reconciliation.fail("t_" + std::to_string(m) + " repeats reflection t" +
                                std::to_string(t + 1));
    hit[t] = 1;
    table.tm_sequence.push_back(t);
    prefix = std::move(next);
  }
  for (int t = 0; t < big_n; ++t)
    if (!hit[t])
      table.reconciliation.fail("reflection t" + std::to_string(t + 1) +
                                " missed by the t_m sequence");

  // (b) minimal conjugating exponents
  table.lift.assign(big_n, TLift{});
  std::vector<int> current(big_n);  // c^k s c^{-k} as reflection indices
  std::vector<int> simple_t;
  for (int i = 0; i < n; ++i) simple_t.push_back(ctx.reflection_index_of_simple(i));
  current = simple_t;
  long long h = ctx.coxeter_number();
  for (int k = 0; k <= h; ++k) {
    std::vector<int> fresh_at_this_k;
    for (int i = 0; i < n; ++i) {
      int t = current[i];
      if (table.lift[t].t_index < 0) {
        table.lift[t] = TLift{t, k, i};
        fresh_at_this_k.push_back(t);
      } else if (table.lift[t].exponent == k &&
                 std::find(fresh_at_this_k.begin(), fresh_at_this_k.end(), t) !=
                     fresh_at_this_k.end()) {
        table.reconciliation.fail("tie at exponent " + std::to_string(k) + " for reflection t" +
                                  std::to_string(t + 1));
      }
    }
    for (int i = 0; i < n; ++i)
      current[i] = ctx.conjugate_reflection(cp.coxeter, current[i]);
  }
  for (int t = 0; t < big_n; ++t) {
    ++table.reconciliation.instances;
    if (table.lift[t].t_index < 0) {
      table.reconciliation.fail("reflection t" + std::to_string(t + 1) +
                                " is not a conjugate of a simple by a power of c");
      continue;
    }
    // evaluate in W: c^k s c^{-k} must equal t
    const TLift& l = table.lift[t];
    GroupElement ck = ctx.identity();
    for (int k = 0; k < l.exponent; ++k) ck = ctx.multiply(ck, cp.coxeter);
    GroupElement val =
        ctx.multiply(ctx.multiply(ck, ctx.simple_reflection(l.s_index)), ctx.inverse(ck));
    if (!ctx.equal(val, ctx.reflection(t)))
      table.reconciliation.fail("lift of t" + std::to_string(t + 1) +
                                " does not evaluate back to it");
  }
  // for m <= |L|, t_m = s_m; and t_{m+n} = c t_m c^{-1}
  for (size_t m = 0; m < cp.left.size() && m < table.tm_sequence.size(); ++m)
    if (table.tm_sequence[m] != ctx.reflection_index_of_simple(table.coxeter_word[m]))
      table.reconciliation.fail("t_" + std::to_string(m + 1) + " is not s_" +
                                std::to_string(m + 1));
  for (size_t m = 0; m + n < table.tm_sequence.size(); ++m)
    if (table.tm_sequence[m + n] !=
        ctx.conjugate_reflection(cp.coxeter, table.tm_sequence[m]))
      table.reconciliation.fail("t_{m+n} != c t_m c^{-1} at m = " + std::to_string(m + 1));
  return table;
}

/// For every ordered pair of reflections with t u dividing c, the dual braid
/// relation t u = u v (v = u t u) must already hold between the lifted words
/// in the Artin group; decided through the classical Garside structure.
inline CheckReport verify_fact_a(const GroupContext& ctx, const ChromaticPair& cp,
                                 const PreMonoidView& classical, const TLiftTable& lifts) {
  CheckReport report;
  report.type = ctx.type().str();
  report.check = "fact-a";
  const int big_n = ctx.num_reflections();
  for (int t = 0; t < big_n; ++t) {
    for (int u = 0; u < big_n; ++u) {
      if (t == u) continue;
      GroupElement tu = ctx.multiply(ctx.reflection(t), ctx.reflection(u));
      if (ctx.reflection_length(tu) != 2 || !ctx.absolute_divides(tu, cp.coxeter)) continue;
      ++report.instances;
      int v = ctx.conjugate_reflection(ctx.reflection(u), t);  // u t u
      SignedWord left = lifts.signed_s_word(t, +1, classical);
      SignedWord right_word = lifts.signed_s_word(u, +1, classical);
      left.insert(left.end(), right_word.begin(), right_word.end());
      SignedWord rhs = lifts.signed_s_word(u, +1, classical);
      SignedWord vw = lifts.signed_s_word(v, +1, classical);
      rhs.insert(rhs.end(), vw.begin(), vw.end());
      if (!word_problem_eq(classical, left, rhs))
        report.fail("dual relation for (t" + std::to_string(t + 1) + ",t" + std::to_string(u + 1) +
                    ") fails in the Artin group");
    }
  }
  return report;
}

/// The duality table: ascending product of the simple generators is c, the
/// reversed product of the t_m lifts is w_0 (in W and as braids), and the
/// atom counts / Delta lengths / orders of p(Delta) swap as (n,N), (N,n),
/// (2,h).
inline CheckReport verify_duality_table(const GroupContext& ctx, const ChromaticPair& cp,
                                        const PreMonoidView& classical,
                                        const PreMonoidView& dual, const TLiftTable& lifts) {
  CheckReport report;
  report.type = ctx.type().str();
  report.check = "duality";
  const int n = ctx.rank();
  const int big_n = ctx.num_reflections();
  const long long h = ctx.coxeter_number();

  GroupElement c = ctx.evaluate_s_word(lifts.coxeter_word);
  ++report.instances;
  if (!ctx.equal(c, cp.coxeter)) report.fail("ascending product of simples is not c");

  // product of the t_m in reverse order, in W
  GroupElement prod = ctx.identity();
  for (int m = big_n - 1; m >= 0; --m)
    prod = ctx.multiply(prod, ctx.reflection(lifts.tm_sequence[m]));
  ++report.instances;
  if (!ctx.equal(prod, ctx.longest_element()))
    report.fail("product of t_{N-m+1} in W is not w_0");

  // the same identity upstairs: the braid product of the lifts is Delta
  SignedWord braid;
  for (int m = big_n - 1; m >= 0; --m) {
    SignedWord piece = lifts.signed_s_word(lifts.tm_sequence[m], +1, classical);
    braid.insert(braid.end(), piece.begin(), piece.end());
  }
  MixedForm mf = mixed_form(classical, braid);
  ++report.instances;
  if (!(mf == MixedForm{1, {}}))
    report.fail("braid product of t lifts is not the classical Delta");
  long long canonical_len = mf.delta_power * classical.length(classical.delta());
  for (int f : mf.factors) canonical_len += classical.length(f);
  ++report.instances;
  if (canonical_len != big_n) report.fail("classical normal form of the t-product has wrong length");

  // table rows
  auto expect = [&](const std::string& key, long long got, long long want) {
    ++report.instances;
    report.note(key, std::to_string(got));
    if (got != want) report.fail(key + ": " + std::to_string(got) + " != " + std::to_string(want));
  };
  expect("classical atoms", classical.num_atoms(), n);
  expect("dual atoms", dual.num_atoms(), big_n);
  expect("classical Delta length", classical.length(classical.delta()), big_n);
  expect("dual Delta length", dual.length(dual.delta()), n);
  expect("order of p(Delta) classical", ctx.order(ctx.longest_element()), 2);
  expect("order of p(Delta) dual", ctx.order(cp.coxeter), h);
  report.note("regular degree classical", std::to_string(h));
  report.note("regular degree dual", "2");
  return report;
}

/// Random signed T-words decided twice: in the dual monoid directly and in
/// the classical monoid after lifting every letter. The two word-problem
/// decisions must agree on every pair. Half of the pairs are planted equal
/// by identity-preserving rewrites.
inline CheckReport cross_word_problem(const GroupContext& ctx, const ChromaticPair& cp,
                                      const PreMonoidView& dual, const PreMonoidView& classical,
                                      const TLiftTable& lifts, int trials,
                                      unsigned long long seed) {
  CheckReport report;
  report.type = ctx.type().str();
  report.check = "cross-word-problem";
  report.note("seed", std::to_string(seed));
  report.note("trials", std::to_string(trials));
  std::mt19937_64 rng(seed);
  const int big_n = ctx.num_reflections();

  auto random_t_word = [&](int len) {
    SignedWord w;
    for (int i = 0; i < len; ++i)
      w.push_back({static_cast<int>(rng() % big_n), rng() % 2 ? +1 : -1});
    return w;
  };
  auto plant_equal = [&](SignedWord w) {
    for (int edit = 0; edit < 3; ++edit) {
      size_t pos = rng() % (w.size() + 1);
      switch (rng() % 3) {
        case 0: {  // cancelling pair
          int t = static_cast<int>(rng() % big_n);
          int sign = rng() % 2 ? +1 : -1;
          w.insert(w.begin() + pos, {SignedLetter{t, sign}, SignedLetter{t, -sign}});
          break;
        }
        case 1: {  // dual braid relation on an adjacent positive pair
          if (pos + 1 < w.size() && w[pos].sign > 0 && w[pos + 1].sign > 0) {
            int t = w[pos].simple, u = w[pos + 1].simple;
            GroupElement tu = ctx.multiply(ctx.reflection(t), ctx.reflection(u));
            if (t != u && ctx.reflection_length(tu) == 2 &&
                ctx.absolute_divides(tu, cp.coxeter)) {
              int v = ctx.conjugate_reflection(ctx.reflection(u), t);  // tu = u(utu)
              w[pos].simple = u;
              w[pos + 1].simple = v;
            }
          }
          break;
        }
        default: {  // conjugation identity through Delta: insert c c^{-1} as letters
          w.insert(w.begin() + pos,
                   {SignedLetter{-1, +1}, SignedLetter{-1, -1}});  // placeholder Delta
          break;
        }
      }
    }
    return w;
  };

  auto dual_letter = [&](SignedLetter l) {
    return SignedLetter{l.simple < 0 ? dual.delta() : dual.atom(l.simple), l.sign};
  };
  auto classical_letters = [&](SignedLetter l) -> SignedWord {
    if (l.simple >= 0) return lifts.signed_s_word(l.simple, l.sign, classical);
    SignedWord w;  // Delta of the dual monoid lifts to the c word
    if (l.sign >= 0)
      for (int i : lifts.coxeter_word) w.push_back({classical.atom(i), +1});
    else
      for (auto it = lifts.coxeter_word.rbegin(); it != lifts.coxeter_word.rend(); ++it)
        w.push_back({classical.atom(*it), -1});
    return w;
  };

  long long agree = 0;
  for (int trial = 0; trial < trials; ++trial) {
    SignedWord w1 = random_t_word(2 + int(rng() % 5));
    SignedWord w2 = trial % 2 ? plant_equal(w1) : random_t_word(2 + int(rng() % 5));
    SignedWord d1, d2, c1, c2;
    for (auto l : w1) {
      d1.push_back(dual_letter(l));
      auto piece = classical_letters(l);
      c1.insert(c1.end(), piece.begin(), piece.end());
    }
    for (auto l : w2) {
      d2.push_back(dual_letter(l));
      auto piece = classical_letters(l);
      c2.insert(c2.end(), piece.begin(), piece.end());
    }
    bool dual_eq = word_problem_eq(dual, d1, d2);
    bool classical_eq = word_problem_eq(classical, c1, c2);
    ++report.instances;
    if (dual_eq == classical_eq) {
      ++agree;
    } else {
      report.fail("trial " + std::to_string(trial) + ": dual says " +
                  (dual_eq ? "equal" : "distinct") + ", classical says " +
                  (classical_eq ? "equal" : "distinct"));
    }
    if (trial % 2 && !dual_eq)
      report.fail("trial " + std::to_string(trial) + ": planted-equal pair decided distinct");
  }
  report.note("agreement", std::to_string(agree) + "/" + std::to_string(report.instances));
  return report;
}

/// Lemma "parallel" at desk scale: the classical braid relation of length
/// m_{s,t} holds in the dual monoid exactly for noncrossing pairs.
inline CheckReport classical_braid_relation_check(const GroupContext& ctx,
                                                  const ChromaticPair& cp,
                                                  const PreMonoidView& dual) {
  CheckReport report;
  report.type = ctx.type().str();
  report.check = "parallel-braid-relations";
  const int big_n = ctx.num_reflections();
  for (int t = 0; t < big_n; ++t) {
    for (int u = t + 1; u < big_n; ++u) {
      ++report.instances;
      GroupElement tu = ctx.multiply(ctx.reflection(t), ctx.reflection(u));
      GroupElement ut = ctx.multiply(ctx.reflection(u), ctx.reflection(t));
      bool noncrossing = ctx.absolute_divides(tu, cp.coxeter) ||
                         ctx.absolute_divides(ut, cp.coxeter);
      int m = ctx.order(tu);
      SignedWord w1, w2;
      for (int i = 0; i < m; ++i) {
        w1.push_back({dual.atom(i % 2 ? u : t), +1});
        w2.push_back({dual.atom(i % 2 ? t : u), +1});
      }
      bool relation = word_problem_eq(dual, w1, w2);
      if (relation != noncrossing)
        report.fail("pair (t" + std::to_string(t + 1) + ",t" + std::to_string(u + 1) +
                    "): braid relation " + (relation ? "holds" : "fails") + " but pair is " +
                    (noncrossing ? "noncrossing" : "crossing"));
    }
  }
  return report;
}

}  // namespace dualbraid
