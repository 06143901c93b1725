#include <catch2/catch_amalgamated.hpp>

#include <map>
#include <set>

#include "dualbraid/normal_form.hpp"

using namespace dualbraid;

namespace {

GroupContext make(const char* s) { return GroupContext(TypeDescriptor::parse(s)); }

PreMonoidView verified_dual(const GroupContext& ctx) {
  PreMonoidView view(ctx, GenKind::Reflection, ctx.canonical_coxeter_element());
  if (!verify_garside(view).passed()) throw std::logic_error("dual view failed verification");
  return view;
}

PreMonoidView verified_classical(const GroupContext& ctx) {
  PreMonoidView view(ctx, GenKind::Simple, ctx.longest_element());
  if (!verify_garside(view).passed()) throw std::logic_error("classical view failed verification");
  return view;
}

/// Independent oracle for monoid-element equality of positive words: the
/// reflexive-symmetric-transitive closure of single merges and splits.
std::set<std::vector<int>> rewrite_class(const PreMonoidView& view, std::vector<int> start) {
  std::erase(start, view.unit());
  std::set<std::vector<int>> seen{start};
  std::vector<std::vector<int>> queue{start};
  while (!queue.empty()) {
    std::vector<int> w = std::move(queue.back());
    queue.pop_back();
    // merges
    for (size_t i = 0; i + 1 < w.size(); ++i) {
      if (auto p = view.product(w[i], w[i + 1])) {
        std::vector<int> m(w.begin(), w.begin() + i);
        if (*p != view.unit()) m.push_back(*p);
        m.insert(m.end(), w.begin() + i + 2, w.end());
        if (seen.insert(m).second) queue.push_back(m);
      }
    }
    // splits
    for (size_t i = 0; i < w.size(); ++i) {
      for (int a = 1; a < static_cast<int>(view.size()); ++a) {
        int b = view.left_quotient(a, w[i]);
        if (b < 0 || b == view.unit() || a == w[i]) continue;
        std::vector<int> m(w.begin(), w.begin() + i);
        m.push_back(a);
        m.push_back(b);
        m.insert(m.end(), w.begin() + i + 1, w.end());
        if (seen.insert(m).second) queue.push_back(m);
      }
    }
  }
  return seen;
}

}  // namespace

TEST_CASE("dual A2 normal forms from the worked example", "[normalform][derived]") {
  GroupContext ctx = make("A2");
  PreMonoidView view = verified_dual(ctx);
  int s = view.atom(0), t = view.atom(1);
  // (s,t) merges to (c); (t,s) is already normal
  REQUIRE(normal_form(view, {s, t}) == NormalForm{view.delta()});
  REQUIRE(normal_form(view, {t, s}) == NormalForm{t, s});
  REQUIRE(is_normal(view, {t, s}));
  REQUIRE(!is_normal(view, {s, t}));
  REQUIRE(is_normal(view, {}));
  REQUIRE(normal_form(view, {s}) == NormalForm{s});
  // serialization
  REQUIRE(mixed_form_to_string(view, mixed_form_of_positive(view, {s, t})) == "D^1 · ");
  REQUIRE(mixed_form_to_string(view, mixed_form_of_positive(view, {t, s})) == "D^0 · [t2][t1]");
}

TEST_CASE("is_normal iff greedy fixpoint, exhaustively to length 3", "[normalform][oracle]") {
  for (const char* s : {"A2", "A3", "B2"}) {
    GroupContext ctx = make(s);
    CAPTURE(s);
    PreMonoidView view = verified_dual(ctx);
    int n = static_cast<int>(view.size());
    std::vector<std::vector<int>> words{{}};
    for (int len = 1; len <= 3; ++len) {
      std::vector<std::vector<int>> next;
      for (const auto& w : words)
        if (int(w.size()) == len - 1)
          for (int x = 1; x < n; ++x) {
            auto v = w;
            v.push_back(x);
            next.push_back(v);
          }
      for (auto& v : next) {
        CAPTURE(v);
        REQUIRE(is_normal(view, v) == (normal_form(view, v) == v));
      }
      words.insert(words.end(), next.begin(), next.end());
    }
  }
}

TEST_CASE("normal forms are unique per rewriting class", "[normalform][oracle]") {
  for (const char* s : {"A2", "B2", "A3"}) {
    GroupContext ctx = make(s);
    CAPTURE(s);
    PreMonoidView view = verified_dual(ctx);
    int n = static_cast<int>(view.size());
    // all length-2 words; classes decided by merge/split closure
    for (int a = 1; a < n; ++a)
      for (int b = 1; b < n; ++b) {
        auto cls = rewrite_class(view, {a, b});
        NormalForm nf = normal_form(view, {a, b});
        for (const auto& w : cls) {
          REQUIRE(normal_form(view, w) == nf);
          // and W-images agree
          REQUIRE(view.context().equal(
              view.context().multiply(view.element(a), view.element(b)),
              [&] {
                GroupElement e = view.context().identity();
                for (int x : w) e = view.context().multiply(e, view.element(x));
                return e;
              }()));
        }
      }
  }
}

TEST_CASE("mixed forms: identities and inverses", "[normalform]") {
  GroupContext ctx = make("A2");
  PreMonoidView view = verified_dual(ctx);
  int s = view.atom(0), t = view.atom(1), u = view.atom(2);
  REQUIRE(mixed_form(view, {}) == MixedForm{0, {}});
  REQUIRE(mixed_form(view, {{s, +1}, {s, -1}}) == MixedForm{0, {}});
  REQUIRE(mixed_form(view, {{s, -1}, {s, +1}}) == MixedForm{0, {}});
  // st = c = Delta
  REQUIRE(mixed_form(view, {{s, +1}, {t, +1}}) == MixedForm{1, {}});
  // st = tu = us in the monoid
  REQUIRE(word_problem_eq(view, {{s, +1}, {t, +1}}, {{t, +1}, {u, +1}}));
  REQUIRE(word_problem_eq(view, {{s, +1}, {t, +1}}, {{u, +1}, {s, +1}}));
  REQUIRE(!word_problem_eq(view, {{t, +1}, {s, +1}}, {{s, +1}, {t, +1}}));
  REQUIRE(word_problem_eq(view, {{t, +1}}, {{t, +1}}));
  REQUIRE(!word_problem_eq(view, {{s, +1}}, {{t, +1}}));
}

TEST_CASE("mixed forms invert correctly: w * w^{-1} = 1", "[normalform][property]") {
  GroupContext ctx = make("B3");
  PreMonoidView view = verified_dual(ctx);
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    SignedWord w;
    int len = 1 + int(rng() % 6);
    for (int i = 0; i < len; ++i)
      w.push_back({int(rng() % view.size()), rng() % 2 ? +1 : -1});
    SignedWord winv;
    for (auto it = w.rbegin(); it != w.rend(); ++it) winv.push_back({it->simple, -it->sign});
    SignedWord prod = w;
    prod.insert(prod.end(), winv.begin(), winv.end());
    REQUIRE(mixed_form(view, prod) == MixedForm{0, {}});
  }
}

TEST_CASE("mixed-form equality matches the W-image on positive words", "[normalform][property]") {
  // sound quotient check: equal braids must have equal W images (not conversely)
  GroupContext ctx = make("A3");
  PreMonoidView view = verified_dual(ctx);
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<int> w1, w2;
    for (int i = 0; i < 4; ++i) {
      w1.push_back(int(rng() % view.size()));
      w2.push_back(int(rng() % view.size()));
    }
    if (mixed_form_of_positive(view, w1) == mixed_form_of_positive(view, w2)) {
      GroupElement e1 = ctx.identity(), e2 = ctx.identity();
      for (int x : w1) e1 = ctx.multiply(e1, view.element(x));
      for (int x : w2) e2 = ctx.multiply(e2, view.element(x));
      REQUIRE(ctx.equal(e1, e2));
    }
  }
}

TEST_CASE("diagram automorphism: classical has order at most 2, dual matches orbits",
          "[normalform][paper]") {
  for (const char* s : {"A2", "A3", "B2", "B3"}) {
    GroupContext ctx = make(s);
    CAPTURE(s);
    PreMonoidView classical = verified_classical(ctx);
    DeltaConjugationReport rep = delta_conjugation(classical);
    CAPTURE(rep.failures);
    REQUIRE(rep.passed());
    REQUIRE(rep.order_on_simples <= 2);

    PreMonoidView dual = verified_dual(ctx);
    DeltaConjugationReport dual_rep = delta_conjugation(dual);
    CAPTURE(dual_rep.failures);
    REQUIRE(dual_rep.passed());
    // order on atoms = order of conjugation by c on T = lcm of orbit sizes
    auto orbits =
        ctx.coxeter_conjugation_orbits(ctx.canonical_coxeter_element(), nullptr);
    long long lcm = 1;
    for (const auto& o : orbits) lcm = std::lcm(lcm, (long long)o.size());
    REQUIRE(dual_rep.order_on_atoms == lcm);
    REQUIRE(dual_rep.map[dual.unit()] == dual.unit());
  }
}

TEST_CASE("E(m) for a single atom and for Delta in dual A2", "[normalform][derived]") {
  GroupContext ctx = make("A2");
  PreMonoidView view = verified_dual(ctx);
  int s = view.atom(0), t = view.atom(1), u = view.atom(2);
  EPoset single = e_poset(view, {s});
  REQUIRE(single.vertices == std::vector<std::vector<int>>{{s}});
  REQUIRE(single.dimension == 0);

  EPoset full = e_poset(view, {view.delta()});
  std::set<std::vector<int>> verts(full.vertices.begin(), full.vertices.end());
  std::set<std::vector<int>> expect{{view.delta()}, {s, t}, {t, u}, {u, s}};
  REQUIRE(verts == expect);
  REQUIRE(full.dimension == 1);

  REQUIRE_THROWS_AS(e_poset(view, {view.delta(), view.delta(), view.delta(), view.delta()}, 6),
                    EPosetCapError);
}

TEST_CASE("E(m) dimension finite and merges consistent in dual A3", "[normalform]") {
  GroupContext ctx = make("A3");
  PreMonoidView view = verified_dual(ctx);
  EPoset ep = e_poset(view, {view.delta()});
  // Red_T(c) for A3 has 16 tuples; E(Delta) also holds mixed-length splits
  REQUIRE(ep.dimension == 2);
  for (auto [from, to] : ep.merge_edges)
    REQUIRE(ep.vertices[from].size() == ep.vertices[to].size() + 1);
}

TEST_CASE("theta anti-automorphisms: dihedral action of length h", "[normalform][paper]") {
  for (const char* s : {"A2", "A3", "B2", "B3", "I2(5)", "I2(8)", "H3"}) {
    GroupContext ctx = make(s);
    CAPTURE(s);
    ChromaticPair cp = ctx.canonical_chromatic_pair();
    PreMonoidView view(ctx, GenKind::Reflection, cp.coxeter);
    verify_garside(view);
    ThetaReport rep = theta_antiautomorphisms(view, cp);
    CAPTURE(rep.failures);
    REQUIRE(rep.passed());
    REQUIRE(rep.theta[view.unit()] == view.unit());
    REQUIRE(rep.theta[view.delta()] == view.delta());
  }
}
