#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <functional>

#include "tropflag/error.hpp"
#include "tropflag/lambda_indep.hpp"

using namespace tropflag;

namespace {

using Trop = TropicalInt;

RepPtr rep(const char* type, const char* lambda) {
  auto c = CartanDatum::from_type(type);
  return cached_rep(c, parse_weight(lambda, c.rank()));
}

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::UsageError;
}

VkVector<Trop> trop(const RepPtr& r, std::vector<std::optional<long>> c) {
  VkVector<Trop> v(r);
  for (int b = 0; b < v.dim(); ++b)
    if (c[b]) v.at(b) = Trop(*c[b]);
  return v;
}

std::vector<std::vector<Trop>> grid(int d, long r) {
  std::vector<std::vector<Trop>> out{{}};
  for (int j = 0; j < d; ++j) {
    std::vector<std::vector<Trop>> next;
    for (const auto& p : out)
      for (long x = -r; x <= r; ++x) {
        auto q = p;
        q.emplace_back(x);
        next.push_back(q);
      }
    out = next;
  }
  return out;
}

template <Semifield K>
bool same_point(const VkVector<K>& a, const VkVector<K>& b) {
  return pk_equal(projectivize(a), projectivize(b));
}

template <Semifield K>
void check_factorization(const RepPtr& a, const RepPtr& b, Rng& rng) {
  for (int t = 0; t < 500; ++t) {
    auto x = random_vector<K>(rng, a);
    auto y = random_vector<K>(rng, b);
    if (x.is_zero() || y.is_zero()) continue;
    auto u = E_K(x, y);
    auto [x2, y2] = factor_rank_one(u);
    CHECK(E_K(x2, y2) == u);
    CHECK(same_point(x, x2));
    CHECK(same_point(y, y2));
  }
}

}  // namespace

TEST_CASE("Gamma on A1") {
  auto g = GammaData::build(rep("A1", "3"), rep("A1", "1"), rep("A1", "2"));
  const int db = 3;
  REQUIRE(g.row(0).size() == 1);
  CHECK(g.row(0)[0].first == 0);
  CHECK(g.row(0)[0].second == 1);
  // f xi+ -> f xi+ (x) xi+ + xi+ (x) f xi+
  REQUIRE(g.row(1).size() == 2);
  CHECK(g.row(1)[0].first == 0 * db + 1);
  CHECK(g.row(1)[1].first == 1 * db + 0);
  CHECK(g.row(1)[0].second == 1);
  CHECK(g.row(1)[1].second == 1);
  CHECK(code_of([] { GammaData::build(rep("A1", "2"), rep("A1", "1"), rep("A1", "2")); }) == ErrorCode::DimensionMismatch);
}

TEST_CASE("Gamma on A2") {
  auto g = GammaData::build(rep("A2", "2,2"), rep("A2", "1,1"), rep("A2", "1,1"));
  CHECK(g.sum()->dim() == 27);
  for (int b = 0; b < 27; ++b) {
    CHECK(!g.row(b).empty());
    for (const auto& [s, e] : g.row(b)) CHECK(e > 0);
  }
  auto g2 = GammaData::build(rep("A2", "3,2"), rep("A2", "2,1"), rep("A2", "1,1"));
  CHECK(g2.sum()->dim() == 42);
  CHECK(g.to_json()["entries"].size() > 27);
}

TEST_CASE("tensor maps over semifields") {
  auto a = rep("A2", "1,1");
  auto g = GammaData::build(rep("A2", "2,2"), a, a);
  auto xp = VkVector<Trop>::basis_vector(a, a->xi_plus());
  auto u = E_K(xp, xp);
  for (int s = 0; s < u.size(); ++s) CHECK(u[s].present() == (s == u.index(0, 0)));
  CHECK(u(0, 0).value() == Trop::one());
  CHECK(E_K(xp, VkVector<Trop>(a)).is_zero());
  Rng rng(61);
  auto val = [](const PosRatFun& x) { return valuation(x); };
  for (int t = 0; t < 100; ++t) {
    auto x = random_vector<PosRatFun>(rng, g.sum());
    auto gx = gamma_K(g, x);
    auto lhs = TensorVector<Trop>(a, a);
    for (int s = 0; s < gx.size(); ++s)
      if (gx[s].present()) lhs.at(s) = valuation(gx[s].value());
    CHECK(lhs == gamma_K(g, v_r<Trop>(x, val)));
    if (!x.is_zero()) CHECK(!gx.is_zero());
  }
}

TEST_CASE("rank one factorization") {
  auto a1 = rep("A1", "1");
  TensorVector<Trop> u(a1, a1);
  u.at(0, 0) = Trop(0);
  u.at(0, 1) = Trop(2);
  u.at(1, 0) = Trop(3);
  u.at(1, 1) = Trop(5);
  auto [x, y] = factor_rank_one(u);
  CHECK(x == trop(a1, {0, 3}));
  CHECK(y == trop(a1, {0, 2}));
  u.at(1, 1) = Trop(4);
  CHECK(code_of([&] { factor_rank_one(u); }) == ErrorCode::NotDecomposable);
  u.at(1, 1) = Ext<Trop>();
  CHECK(code_of([&] { factor_rank_one(u); }) == ErrorCode::NotDecomposable);
  CHECK(code_of([&] { factor_rank_one(TensorVector<Trop>(a1, a1)); }) == ErrorCode::ZeroVector);

  Rng rng(67);
  auto a = rep("A2", "1,1");
  auto b = rep("A1", "2");
  check_factorization<Trop>(a, a, rng);
  check_factorization<PosRational>(a, a, rng);
  check_factorization<PosRatFun>(a, a, rng);
  check_factorization<Trop>(b, rep("A1", "3"), rng);
}

TEST_CASE("H is the identity in coordinates") {
  struct Case {
    RepPtr lam, lamp, sum;
  };
  std::vector<Case> cases{{rep("A1", "1"), rep("A1", "2"), rep("A1", "3")},
                          {rep("A1", "2"), rep("A1", "1"), rep("A1", "3")},
                          {rep("A1", "1"), rep("A1", "0"), rep("A1", "1")},
                          {rep("A2", "1,1"), rep("A2", "1,1"), rep("A2", "2,2")}};
  Rng rng(71);
  auto val = [](const PosRatFun& x) { return valuation(x); };
  for (const auto& c : cases) {
    auto g = GammaData::build(c.sum, c.lam, c.lamp);
    auto cl = Census::build(c.lam);
    auto cs = Census::build(c.sum);
    auto xp = VkVector<Trop>::basis_vector(c.sum, c.sum->xi_plus());
    CHECK(same_point(H_map(g, xp), VkVector<Trop>::basis_vector(c.lam, c.lam->xi_plus())));
    for (int p = 0; p < cs.size(); ++p) {
      const auto& d = cs.piece(p);
      const auto& dl = cl.piece(cl.find(d.v, d.w));
      for (const auto& h : grid(d.dim(), 2)) {
        auto img = H_map(g, theta(d, h));
        auto back = classify(cl, img);
        CHECK(cl.piece(back.piece).v == d.v);
        CHECK(cl.piece(back.piece).w == d.w);
        CHECK(back.h == h);
      }
      for (int t = 0; t < 3; ++t) {
        std::vector<PosRatFun> h;
        for (int j = 0; j < d.dim(); ++j) h.push_back(random_element<PosRatFun>(rng));
        auto img = H_map(g, theta(d, h));
        CHECK(same_point(img, theta(dl, h)));
        std::vector<Trop> rh;
        for (const auto& x : h) rh.push_back(valuation(x));
        CHECK(same_point(v_r<Trop>(img, val), H_map(g, theta(d, rh))));
      }
    }
  }
}

TEST_CASE("lambda independence bijections") {
  auto c1 = Census::build(rep("A1", "1"));
  auto c2 = Census::build(rep("A1", "2"));
  auto c3 = Census::build(rep("A1", "3"));
  auto g12 = GammaData::build(rep("A1", "3"), rep("A1", "1"), rep("A1", "2"));
  auto g21 = GammaData::build(rep("A1", "3"), rep("A1", "2"), rep("A1", "1"));
  auto g11 = GammaData::build(rep("A1", "2"), rep("A1", "1"), rep("A1", "1"));
  for (int p = 0; p < c1.size(); ++p) {
    const auto& d = c1.piece(p);
    for (const auto& h : grid(d.dim(), 2)) {
      auto x = theta(d, h);
      CHECK(same_point(gamma_bijection(c1, c1, x), x));
      CHECK(same_point(gamma_via_H(g11, c2, c1, x), x));
      auto y = gamma_bijection(c1, c2, x);
      CHECK(same_point(y, gamma_via_H(g12, c3, c1, x)));
      CHECK(same_point(gamma_bijection(c2, c1, y), x));
      CHECK(same_point(gamma_via_H(g21, c3, c2, y), x));
      CHECK(same_point(gamma_bijection(c1, c3, x), gamma_bijection(c2, c3, y)));
    }
  }
  auto a = Census::build(rep("A2", "1,1"));
  auto s = Census::build(rep("A2", "2,2"));
  auto g = GammaData::build(rep("A2", "2,2"), rep("A2", "1,1"), rep("A2", "1,1"));
  Rng rng(73);
  for (int t = 0; t < 20; ++t) {
    int p = static_cast<int>(uniform_int(rng, 0, a.size() - 1));
    std::vector<Trop> h;
    for (int j = 0; j < a.piece(p).dim(); ++j) h.push_back(random_element<Trop>(rng));
    auto x = theta(a.piece(p), h);
    auto word = random_generator_word<Trop>(rng, 2, 4);
    CHECK(same_point(gamma_via_H(g, s, a, apply_word(word, x)), apply_word(word, gamma_via_H(g, s, a, x))));
    CHECK(same_point(gamma_bijection(a, a, x), x));
  }
}
