#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <set>

#include "tropflag/error.hpp"
#include "tropflag/rootdata.hpp"

using namespace tropflag;

namespace {

// Permutation model of the type A_n Weyl group: s_i swaps positions i, i+1.
using Perm = std::vector<int>;

Perm perm_of_word(int n, const std::vector<int>& word) {
  Perm p(n + 1);
  std::iota(p.begin(), p.end(), 0);
  for (int i : word) std::swap(p[i], p[i + 1]);
  return p;
}

int inversions(const Perm& p) {
  int c = 0;
  for (std::size_t a = 0; a < p.size(); ++a)
    for (std::size_t b = a + 1; b < p.size(); ++b) c += p[a] > p[b];
  return c;
}

// Bruhat order from subwords of every reduced word.
bool leq_all_words(const WeylGroup& W, WeylElt v, WeylElt w) {
  for (const auto& wd : W.reduced_words(w)) {
    bool found = false;
    const std::size_t m = wd.size();
    for (unsigned mask = 0; mask < (1u << m) && !found; ++mask) {
      std::vector<int> sub;
      for (std::size_t k = 0; k < m; ++k)
        if (mask >> k & 1u) sub.push_back(wd[k]);
      found = W.from_word(sub) == v;
    }
    if (!found) return false;
  }
  return true;
}

int count_pairs(const WeylGroup& W) {
  int c = 0;
  for (WeylElt v = 0; v < W.size(); ++v)
    for (WeylElt w = 0; w < W.size(); ++w) c += W.bruhat_leq(v, w);
  return c;
}

}  // namespace

TEST_CASE("Cartan data") {
  auto a2 = CartanDatum::from_type("A2");
  CHECK(a2.rank() == 2);
  CHECK(a2(0, 1) == -1);
  CHECK(a2.name() == "A2");
  auto a11 = CartanDatum::from_type("A1xA1");
  CHECK(a11(0, 1) == 0);
  CHECK(a11.name() == "A1xA1");
  CHECK(CartanDatum::from_json(a2.to_json()) == a2);
  CHECK(CartanDatum::from_json(nlohmann::json::parse(R"({"components":[{"type":"A","rank":3}]})")).rank() == 3);
  CHECK_THROWS_AS(CartanDatum::from_type("B2"), Error);
  CHECK_THROWS_AS(CartanDatum({{2, -2}, {-2, 2}}), Error);
  CHECK(a2.simple_root(0) == Weight{2, -1});
  CHECK(a2.reflect(0, Weight{1, 1}) == Weight{-1, 2});
}

TEST_CASE("weights") {
  CHECK(parse_weight("1,2", 2) == Weight{1, 2});
  CHECK_THROWS_AS(parse_weight("1", 2), Error);
  CHECK(is_dominant(Weight{0, 1}));
  CHECK_FALSE(is_very_dominant(Weight{0, 1}));
  CHECK(is_very_dominant(Weight{1, 1}));
  CHECK(format_weight(Weight{2, -1}) == "2,-1");
}

TEST_CASE("Weyl group enumeration") {
  WeylGroup a1(CartanDatum::from_type("A1"));
  CHECK(a1.size() == 2);
  CHECK(a1.name(a1.longest()) == "s1");

  WeylGroup a2(CartanDatum::from_type("A2"));
  CHECK(a2.size() == 6);
  CHECK(a2.length(a2.longest()) == 3);

  WeylGroup a11(CartanDatum::from_type("A1xA1"));
  CHECK(a11.size() == 4);
  CHECK(a11.name(a11.longest()) == "s1s2");

  WeylGroup a3(CartanDatum::from_type("A3"));
  CHECK(a3.size() == 24);
  CHECK(a3.length(a3.longest()) == 6);

  CHECK_THROWS_AS(WeylGroup(CartanDatum::from_type("A3"), 10), Error);
}

TEST_CASE("Weyl group agrees with the permutation model") {
  for (int n = 1; n <= 3; ++n) {
    WeylGroup W(CartanDatum::from_type("A" + std::to_string(n)));
    std::set<Perm> seen;
    for (WeylElt w = 0; w < W.size(); ++w) {
      Perm p = perm_of_word(n, W.word(w));
      CHECK(inversions(p) == W.length(w));
      seen.insert(p);
      for (int i = 0; i < n; ++i) {
        std::vector<int> wd = W.word(w);
        wd.push_back(i);
        CHECK(perm_of_word(n, wd) == perm_of_word(n, W.word(W.right(w, i))));
        wd = W.word(w);
        wd.insert(wd.begin(), i);
        CHECK(perm_of_word(n, wd) == perm_of_word(n, W.word(W.left(i, w))));
      }
      CHECK(W.mul(w, W.inverse(w)) == W.identity());
      CHECK(W.parse(W.name(w)) == w);
    }
    CHECK(static_cast<int>(seen.size()) == W.size());
  }
}

TEST_CASE("reduced words") {
  WeylGroup a2(CartanDatum::from_type("A2"));
  CHECK(a2.reduced_words(a2.longest()) == std::vector<std::vector<int>>{{0, 1, 0}, {1, 0, 1}});
  CHECK(a2.reduced_words(a2.identity()) == std::vector<std::vector<int>>{{}});
  CHECK(a2.reduced_words(a2.parse("s1s2")) == std::vector<std::vector<int>>{{0, 1}});
  WeylGroup a3(CartanDatum::from_type("A3"));
  CHECK(a3.reduced_words(a3.longest()).size() == 16);
  for (WeylElt w = 0; w < a3.size(); ++w)
    for (const auto& wd : a3.reduced_words(w)) CHECK(a3.from_word(wd) == w);
}

TEST_CASE("Bruhat order") {
  WeylGroup a2(CartanDatum::from_type("A2"));
  for (WeylElt w = 0; w < a2.size(); ++w) CHECK(a2.bruhat_leq(a2.identity(), w));
  CHECK(a2.bruhat_leq(a2.parse("s1"), a2.parse("s1s2")));
  CHECK_FALSE(a2.bruhat_leq(a2.parse("s1s2"), a2.parse("s2")));
  CHECK(count_pairs(a2) == 19);

  for (const char* t : {"A2", "A1xA1", "A1"}) {
    WeylGroup W(CartanDatum::from_type(t));
    for (WeylElt v = 0; v < W.size(); ++v)
      for (WeylElt w = 0; w < W.size(); ++w) CHECK(W.bruhat_leq(v, w) == leq_all_words(W, v, w));
  }
  WeylGroup a11(CartanDatum::from_type("A1xA1"));
  CHECK(count_pairs(a11) == 9);
}

TEST_CASE("positive subexpression examples") {
  WeylGroup a2(CartanDatum::from_type("A2"));
  auto p = positive_subexpression(a2, a2.parse("s2"), {0, 1, 0});
  CHECK(p.q == std::vector<bool>{false, true, false});
  CHECK(p.primes == std::vector<int>{0, 2});
  CHECK(p.doubleprimes == std::vector<int>{1});

  auto e = positive_subexpression(a2, a2.identity(), {0, 1, 0});
  CHECK(e.primes == std::vector<int>{0, 1, 2});
  auto top = positive_subexpression(a2, a2.longest(), {1, 0, 1});
  CHECK(top.primes.empty());
  CHECK(top.q == std::vector<bool>{true, true, true});

  try {
    positive_subexpression(a2, a2.parse("s1s2"), {1});
    FAIL("expected NotBruhatBelow");
  } catch (const Error& err) {
    CHECK(err.code() == ErrorCode::NotBruhatBelow);
  }
}

TEST_CASE("positive subexpression is the unique solution") {
  for (const char* t : {"A1", "A2", "A1xA1", "A3"}) {
    WeylGroup W(CartanDatum::from_type(t));
    for (WeylElt w = 0; w < W.size(); ++w) {
      for (const auto& wd : W.reduced_words(w)) {
        const std::size_t m = wd.size();
        for (WeylElt v = 0; v < W.size(); ++v) {
          if (!W.bruhat_leq(v, w)) continue;
          auto p = positive_subexpression(W, v, wd);
          int solutions = 0;
          for (unsigned mask = 0; mask < (1u << m); ++mask) {
            std::vector<bool> q(m);
            for (std::size_t k = 0; k < m; ++k) q[k] = mask >> k & 1u;
            if (is_positive_subexpression(W, v, wd, q)) {
              ++solutions;
              CHECK(q == p.q);
            }
          }
          CHECK(solutions == 1);
          CHECK(static_cast<int>(p.primes.size()) == W.length(w) - W.length(v));
        }
      }
    }
  }
}

TEST_CASE("diagram automorphisms and fixed subgroups") {
  auto a11 = CartanDatum::from_type("A1xA1");
  auto W11 = std::make_shared<const WeylGroup>(a11);
  auto swap = DiagramAutomorphism::parse(a11, "1:2,2:1");
  FixedSubgroup F11(W11, swap);
  CHECK(F11.size() == 2);
  CHECK(F11.delta_length(W11->parse("s1s2")) == 1);
  CHECK(F11.adapted_word(W11->parse("s1s2")) == std::vector<int>{0, 1});

  auto a2 = CartanDatum::from_type("A2");
  auto W2 = std::make_shared<const WeylGroup>(a2);
  FixedSubgroup Fid(W2, DiagramAutomorphism::identity(a2));
  CHECK(Fid.size() == 6);
  for (WeylElt w = 0; w < W2->size(); ++w) CHECK(Fid.delta_length(w) == W2->length(w));

  // The A2 flip does not commute with its image.
  CHECK_THROWS_AS(DiagramAutomorphism::parse(a2, "1:2,2:1"), Error);

  auto a3 = CartanDatum::from_type("A3");
  auto W3 = std::make_shared<const WeylGroup>(a3);
  auto flip = DiagramAutomorphism::parse(a3, "1:3,3:1");
  FixedSubgroup F3(W3, flip);
  CHECK(F3.size() == 8);
  CHECK(flip.orbits().size() == 2);
  for (WeylElt w : F3.elements()) {
    auto wd = F3.adapted_word(w);
    CHECK(W3->from_word(wd) == w);
    CHECK(W3->is_reduced(wd));
  }
  CHECK(F3.delta_length(W3->longest()) == 4);
}
