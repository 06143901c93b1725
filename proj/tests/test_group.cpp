#include <catch2/catch_amalgamated.hpp>

#include <map>
#include <queue>

#include "dualbraid/factorization.hpp"
#include "dualbraid/group.hpp"

using namespace dualbraid;

namespace {

GroupContext make(const char* s) { return GroupContext(TypeDescriptor::parse(s)); }

/// Independent oracle: BFS distance from the identity in the Cayley graph of
/// (W, X) for a generating set X.
ElemKeyMap<int> cayley_distances(const GroupContext& ctx,
                                 const std::vector<GroupElement>& gens) {
  ElemKeyMap<int> dist;
  std::queue<GroupElement> queue;
  dist.emplace(ctx.key(ctx.identity()), 0);
  queue.push(ctx.identity());
  while (!queue.empty()) {
    GroupElement w = std::move(queue.front());
    queue.pop();
    int d = dist.at(ctx.key(w));
    for (const auto& g : gens) {
      GroupElement x = ctx.multiply(w, g);
      if (dist.emplace(ctx.key(x), d + 1).second) queue.push(x);
    }
  }
  return dist;
}

std::vector<GroupElement> all_reflections(const GroupContext& ctx) {
  std::vector<GroupElement> t;
  for (int i = 0; i < ctx.num_reflections(); ++i) t.push_back(ctx.reflection(i));
  return t;
}

std::vector<GroupElement> all_simples(const GroupContext& ctx) {
  std::vector<GroupElement> s;
  for (int i = 0; i < ctx.rank(); ++i) s.push_back(ctx.simple_reflection(i));
  return s;
}

}  // namespace

TEST_CASE("small groups have the classified sizes", "[group]") {
  struct Row {
    const char* type;
    long long order;
    int n_refl;
  };
  for (Row r : {Row{"A1", 2, 1}, Row{"A2", 6, 3}, Row{"B2", 8, 4}, Row{"A3", 24, 6},
                Row{"B3", 48, 9}, Row{"D4", 192, 12}, Row{"H3", 120, 15}, Row{"I2(7)", 14, 7},
                Row{"F4", 1152, 24}, Row{"A2xA1", 12, 4}, Row{"I2(4)", 8, 4}}) {
    GroupContext ctx = make(r.type);
    CAPTURE(r.type);
    REQUIRE(ctx.num_reflections() == r.n_refl);
    REQUIRE(ctx.enumerate_group().size() == size_t(r.order));
  }
}

TEST_CASE("large contexts build with the right reflection counts", "[group]") {
  REQUIRE(make("E8").num_reflections() == 120);
  REQUIRE(make("E7").num_reflections() == 63);
  REQUIRE(make("H4").num_reflections() == 60);
}

TEST_CASE("reflections are involutions closed under conjugation", "[group]") {
  for (const char* s : {"A3", "B3", "H3", "I2(5)", "A2xA1"}) {
    GroupContext ctx = make(s);
    CAPTURE(s);
    for (int t = 0; t < ctx.num_reflections(); ++t) {
      REQUIRE(ctx.order(ctx.reflection(t)) == 2);
      REQUIRE(ctx.reflection_length(ctx.reflection(t)) == 1);
      for (int u = 0; u < ctx.num_reflections(); ++u) {
        int c = ctx.conjugate_reflection(ctx.reflection(u), t);
        REQUIRE(ctx.equal(ctx.reflection(c),
                          ctx.conjugate(ctx.reflection(u), ctx.reflection(t))));
      }
    }
  }
}

TEST_CASE("element arithmetic basics in A2", "[group]") {
  GroupContext ctx = make("A2");
  auto s = ctx.simple_reflection(0), t = ctx.simple_reflection(1);
  REQUIRE(ctx.is_identity(ctx.multiply(s, s)));
  REQUIRE(ctx.order(ctx.multiply(s, t)) == 3);
  REQUIRE(ctx.equal(ctx.inverse(ctx.multiply(s, t)), ctx.multiply(t, s)));
}

TEST_CASE("reflection length equals Cayley distance over T", "[group][oracle]") {
  for (const char* s : {"A1", "A2", "A3", "B2", "B3", "D4", "H3", "I2(6)", "I2(7)", "A2xA1"}) {
    GroupContext ctx = make(s);
    CAPTURE(s);
    auto dist = cayley_distances(ctx, all_reflections(ctx));
    auto elems = ctx.enumerate_group();
    REQUIRE(dist.size() == elems.size());
    for (const auto& w : elems)
      REQUIRE(ctx.reflection_length(w) == dist.at(ctx.key(w)));
  }
}

TEST_CASE("Coxeter length equals Cayley distance over S", "[group][oracle]") {
  for (const char* s : {"A3", "B3", "H3", "I2(5)", "A2xA1"}) {
    GroupContext ctx = make(s);
    CAPTURE(s);
    auto dist = cayley_distances(ctx, all_simples(ctx));
    for (const auto& w : ctx.enumerate_group())
      REQUIRE(ctx.s_length(w) == dist.at(ctx.key(w)));
  }
}

TEST_CASE("longest element has length N and order 2", "[group]") {
  for (const char* s : {"A2", "A3", "B3", "D4", "H3", "I2(9)", "F4"}) {
    GroupContext ctx = make(s);
    CAPTURE(s);
    GroupElement w0 = ctx.longest_element();
    REQUIRE(ctx.s_length(w0) == ctx.num_reflections());
    REQUIRE(ctx.order(w0) <= 2);
  }
  // longest element of A2 has l_S = 3
  REQUIRE(make("A2").s_length(make("A2").longest_element()) == 3);
}

TEST_CASE("canonical chromatic pair", "[group]") {
  GroupContext a2 = make("A2");
  ChromaticPair cp = a2.canonical_chromatic_pair();
  REQUIRE(cp.left == std::vector<int>{0});
  REQUIRE(cp.right == std::vector<int>{1});
  REQUIRE(a2.order(cp.coxeter) == 3);

  for (const char* s : {"A3", "A4", "B3", "B4", "D4", "H3", "H4", "F4", "E6", "I2(8)"}) {
    GroupContext ctx = make(s);
    CAPTURE(s);
    ChromaticPair p = ctx.canonical_chromatic_pair();
    // within each side, generators commute
    for (const auto& side : {p.left, p.right})
      for (int i : side)
        for (int j : side)
          if (i != j) REQUIRE(ctx.coxeter_matrix(i, j) == 2);
    REQUIRE(p.left.size() + p.right.size() == size_t(ctx.rank()));
    REQUIRE(!p.left.empty());
    REQUIRE(p.left.front() == 0);
    // order h, reflection length n
    REQUIRE(ctx.order(p.coxeter) == ctx.coxeter_number());
    REQUIRE(ctx.reflection_length(p.coxeter) == ctx.rank());
    // deterministic: a rebuilt context gives the same element
    GroupContext again = make(s);
    REQUIRE(again.key(again.canonical_chromatic_pair().coxeter) == ctx.key(p.coxeter));
  }
}

TEST_CASE("every reflection divides the Coxeter element", "[group]") {
  for (const char* s : {"A3", "B3", "H3", "I2(10)", "D4"}) {
    GroupContext ctx = make(s);
    CAPTURE(s);
    GroupElement c = ctx.canonical_coxeter_element();
    for (int t = 0; t < ctx.num_reflections(); ++t) {
      REQUIRE(ctx.absolute_divides(ctx.reflection(t), c));
      REQUIRE(ctx.absolute_right_divides(ctx.reflection(t), c));
    }
    REQUIRE(ctx.absolute_divides(c, c));
  }
}

TEST_CASE("absolute order: left and right coincide for T", "[group][property]") {
  for (const char* s : {"A3", "B2", "H3"}) {
    GroupContext ctx = make(s);
    CAPTURE(s);
    auto elems = ctx.enumerate_group();
    for (size_t i = 0; i < elems.size(); i += 3)
      for (size_t j = 0; j < elems.size(); j += 3)
        REQUIRE(ctx.absolute_divides(elems[i], elems[j]) ==
                ctx.absolute_right_divides(elems[i], elems[j]));
  }
}

TEST_CASE("B2 reflections: s, t, tst, sts and Red_T(stst)", "[group][paper]") {
  GroupContext ctx = make("B2");
  auto s = ctx.simple_reflection(0), t = ctx.simple_reflection(1);
  GroupElement u = ctx.multiply(ctx.multiply(t, s), t);  // tst
  GroupElement v = ctx.multiply(ctx.multiply(s, t), s);  // sts
  REQUIRE(ctx.reflection_index(u) >= 0);
  REQUIRE(ctx.reflection_index(v) >= 0);
  GroupElement w0 = ctx.evaluate_s_word({0, 1, 0, 1});  // stst
  REQUIRE(ctx.equal(w0, ctx.longest_element()));
  REQUIRE(ctx.reflection_length(w0) == 2);
  REQUIRE(ctx.absolute_divides(s, w0));

  auto red = reduced_decompositions(ctx, w0);
  REQUIRE(red.size() == 4);
  int is = ctx.reflection_index(s), it = ctx.reflection_index(t);
  int iu = ctx.reflection_index(u), iv = ctx.reflection_index(v);
  std::set<std::vector<int>> expect{{is, iu}, {iu, is}, {it, iv}, {iv, it}};
  std::set<std::vector<int>> got;
  for (const auto& f : red) got.insert(f.refl);
  REQUIRE(got == expect);
}

TEST_CASE("identity has empty factorization set", "[factorization]") {
  GroupContext ctx = make("A2");
  auto red = reduced_decompositions(ctx, ctx.identity());
  REQUIRE(red.size() == 1);
  REQUIRE(red[0].refl.empty());
}

TEST_CASE("Coxeter element of A2 has three factorizations", "[factorization][paper]") {
  GroupContext ctx = make("A2");
  GroupElement c = ctx.canonical_coxeter_element();
  auto red = reduced_decompositions(ctx, c);
  REQUIRE(red.size() == 3);  // st = tu = us
}

TEST_CASE("Hurwitz moves: inverses, product preservation, full twist", "[factorization]") {
  GroupContext ctx = make("A3");
  GroupElement c = ctx.canonical_coxeter_element();
  auto red = reduced_decompositions(ctx, c);
  for (const auto& f : red) {
    for (int i = 1; i < int(f.refl.size()); ++i) {
      TFactorization g = hurwitz_apply(ctx, i, +1, f);
      REQUIRE(ctx.equal(ctx.evaluate_t_word(g.refl), c));
      REQUIRE(hurwitz_apply(ctx, i, -1, g) == f);
    }
  }
  // (sigma_{k-1} ... sigma_1)^k conjugates every entry by the product
  TFactorization f = red.front();
  int k = static_cast<int>(f.refl.size());
  TFactorization g = f;
  for (int rep = 0; rep < k; ++rep)
    for (int i = k - 1; i >= 1; --i) g = hurwitz_apply(ctx, i, +1, g);
  for (int i = 0; i < k; ++i)
    REQUIRE(g.refl[i] == ctx.conjugate_reflection(c, f.refl[i]));
  REQUIRE_THROWS_AS(hurwitz_apply(ctx, k, +1, f), std::out_of_range);
}

TEST_CASE("sigma_1 on ((12),(23)) gives ((13),(12))", "[factorization][derived]") {
  // In A2, s=(12), t=(23): sigma_1 (s,t) = (sts, s) = ((13),(12)).
  GroupContext ctx = make("A2");
  int is = ctx.reflection_index(ctx.simple_reflection(0));
  int it = ctx.reflection_index(ctx.simple_reflection(1));
  GroupElement u = ctx.conjugate(ctx.simple_reflection(0), ctx.simple_reflection(1));
  int iu = ctx.reflection_index(u);
  TFactorization f{{is, it}};
  TFactorization g = hurwitz_apply(ctx, 1, +1, f);
  REQUIRE(g.refl == std::vector<int>{iu, is});
}

TEST_CASE("Hurwitz orbits: B2 longest element splits, divisors of c do not", "[factorization][paper]") {
  GroupContext b2 = make("B2");
  auto sizes = hurwitz_orbits(b2, b2.longest_element());
  REQUIRE(sizes == std::vector<int>{2, 2});

  for (const char* s : {"A3", "B3", "I2(7)"}) {
    GroupContext ctx = make(s);
    CAPTURE(s);
    GroupElement c = ctx.canonical_coxeter_element();
    REQUIRE(hurwitz_orbits(ctx, c).size() == 1);
    for (int t = 0; t < ctx.num_reflections(); ++t)
      REQUIRE(hurwitz_orbits(ctx, ctx.reflection(t)) == std::vector<int>{1});
  }
}

TEST_CASE("conjugation orbits of the Coxeter element", "[group][paper]") {
  GroupContext a2 = make("A2");
  std::string violation;
  auto orbits = a2.coxeter_conjugation_orbits(a2.canonical_coxeter_element(), &violation);
  REQUIRE(violation.empty());
  REQUIRE(orbits.size() == 1);
  REQUIRE(orbits[0].size() == 3);

  GroupContext b2 = make("B2");
  orbits = b2.coxeter_conjugation_orbits(b2.canonical_coxeter_element(), &violation);
  REQUIRE(violation.empty());
  REQUIRE(orbits.size() == 2);
  for (const auto& o : orbits) REQUIRE(o.size() == 2);

  for (const char* s : {"A3", "A4", "B3", "D4", "H3", "F4", "I2(9)", "I2(10)", "E6"}) {
    GroupContext ctx = make(s);
    CAPTURE(s);
    auto os = ctx.coxeter_conjugation_orbits(ctx.canonical_coxeter_element(), &violation);
    REQUIRE(violation.empty());
    size_t total = 0;
    for (const auto& o : os) total += o.size();
    REQUIRE(total == size_t(ctx.num_reflections()));
  }
}

TEST_CASE("reducible contexts behave component-wise", "[group]") {
  GroupContext ctx = make("B2xA1");
  REQUIRE(ctx.rank() == 3);
  REQUIRE(ctx.num_reflections() == 5);
  REQUIRE(ctx.enumerate_group().size() == 16);
  GroupElement c = ctx.canonical_coxeter_element();
  REQUIRE(ctx.order(c) == 4);  // lcm(4, 2)
  REQUIRE(ctx.reflection_length(c) == 3);
}

TEST_CASE("canonical words evaluate back", "[group]") {
  GroupContext ctx = make("B3");
  auto elems = ctx.enumerate_group();
  for (size_t i = 0; i < elems.size(); i += 5) {
    auto sw = ctx.canonical_s_word(elems[i]);
    REQUIRE(int(sw.size()) == ctx.s_length(elems[i]));
    REQUIRE(ctx.equal(ctx.evaluate_s_word(sw), elems[i]));
    auto tw = ctx.canonical_t_word(elems[i]);
    REQUIRE(int(tw.size()) == ctx.reflection_length(elems[i]));
    REQUIRE(ctx.equal(ctx.evaluate_t_word(tw), elems[i]));
  }
}
