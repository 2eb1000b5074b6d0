#include "tropflag/repdata.hpp"

#include <algorithm>
#include <fstream>
#include <mutex>
#include <set>

#include "tropflag/error.hpp"

namespace tropflag {

namespace {

const OpColumn kEmptyColumn;

mpz_class factorial(int n) {
  mpz_class r;
  mpz_fac_ui(r.get_mpz_t(), static_cast<unsigned long>(n));
  return r;
}

std::string id_str(int b) { return "b" + std::to_string(b); }

}  // namespace

std::vector<std::vector<int>> positive_roots(const CartanDatum& cartan) {
  const int n = cartan.rank();
  std::vector<std::vector<int>> roots;
  std::set<std::vector<int>> seen;
  for (int i = 0; i < n; ++i) {
    std::vector<int> r(n, 0);
    r[i] = 1;
    roots.push_back(r);
    seen.insert(r);
  }
  for (std::size_t cur = 0; cur < roots.size(); ++cur) {
    for (int j = 0; j < n; ++j) {
      int pairing = 0;
      for (int i = 0; i < n; ++i) pairing += roots[cur][i] * cartan(i, j);
      if (pairing != -1) continue;
      std::vector<int> r = roots[cur];
      r[j] += 1;
      if (seen.insert(r).second) roots.push_back(r);
    }
  }
  return roots;
}

mpz_class weyl_dimension(const CartanDatum& cartan, const Weight& lambda) {
  mpq_class dim = 1;
  for (const auto& root : positive_roots(cartan)) {
    long num = 0, den = 0;
    for (int i = 0; i < cartan.rank(); ++i) {
      num += static_cast<long>(root[i]) * (lambda[i] + 1);
      den += root[i];
    }
    dim *= mpq_class(num, den);
  }
  dim.canonicalize();
  return dim.get_num();
}

std::string format_monomial(const FMonomial& m) {
  if (m.empty()) return "1";
  std::string s;
  for (auto [i, n] : m) s += "f" + std::to_string(i + 1) + "^(" + std::to_string(n) + ")";
  return s;
}

// ---- rational model of V(lambda) and the canonical basis recipe ----

class RepBuilder {
 public:
  RepBuilder(const CartanDatum& cartan, const Weight& lambda) : cartan_(cartan), lambda_(lambda), n_(cartan.rank()) {}

  std::shared_ptr<const RepresentationData> run();

 private:
  using Depth = std::vector<int>;
  struct Space {
    int dim = 0;
    std::vector<std::vector<QVec>> e;  // e[j][col], coordinates in space(k - e_j)
    std::vector<std::vector<QVec>> f;  // f[i][col], coordinates in space(k + e_i)
  };
  struct MVec {
    Depth k;
    QVec v;  // empty or all-zero means the zero vector
  };

  void build_model();
  const Space* find(const Depth& k) const {
    auto it = spaces_.find(k);
    return it == spaces_.end() ? nullptr : &it->second;
  }
  Depth shifted(const Depth& k, int i, int by) const {
    Depth r = k;
    r[i] += by;
    return r;
  }
  static bool zero(const MVec& x) { return x.v.empty() || is_zero(x.v); }
  MVec model_f(int i, const MVec& x) const;
  MVec model_e(int i, const MVec& x) const;
  MVec model_divided(bool f, int i, int n, MVec x) const;
  std::vector<FMonomial> monomials() const;

  const CartanDatum& cartan_;
  Weight lambda_;
  int n_;
  std::map<Depth, Space> spaces_;
};

void RepBuilder::build_model() {
  Depth origin(n_, 0);
  Space top;
  top.dim = 1;
  top.e.assign(n_, std::vector<QVec>(1));
  top.f.assign(n_, std::vector<QVec>(1));
  spaces_[origin] = std::move(top);
  std::vector<Depth> level{origin};
  while (!level.empty()) {
    std::set<Depth> targets;
    for (const auto& k : level)
      for (int i = 0; i < n_; ++i) targets.insert(shifted(k, i, 1));
    std::vector<Depth> next;
    for (const auto& k : targets) {
      Weight mu = lambda_;
      for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j) mu[j] -= k[i] * cartan_(j, i);
      // Signature layout: one block per j with a nonzero space at k - e_j.
      std::vector<int> offset(n_, -1);
      std::vector<int> block(n_, 0);
      int total = 0;
      for (int j = 0; j < n_; ++j) {
        if (k[j] == 0) continue;
        if (const Space* s = find(shifted(k, j, -1))) {
          offset[j] = total;
          block[j] = s->dim;
          total += s->dim;
        }
      }
      struct Cand {
        int i, col;
        QVec sig;
      };
      std::vector<Cand> cands;
      for (int i = 0; i < n_; ++i) {
        if (k[i] == 0) continue;
        Depth src = shifted(k, i, -1);
        const Space* S = find(src);
        if (!S) continue;
        int h = mu[i] + 2;  // <i, mu + alpha_i>
        for (int c = 0; c < S->dim; ++c) {
          QVec sig(total, mpq_class(0));
          for (int j = 0; j < n_; ++j) {
            if (offset[j] < 0) continue;
            // e_j f_i v = f_i e_j v + [i == j] <i, mu + alpha_i> v
            const QVec& ejv = S->e[j][c];
            if (!ejv.empty()) {
              const Space* T = find(shifted(src, j, -1));
              for (std::size_t t = 0; t < ejv.size(); ++t) {
                if (ejv[t] == 0) continue;
                const QVec& fi = T->f[i][t];
                for (std::size_t u = 0; u < fi.size(); ++u)
                  if (fi[u] != 0) sig[offset[j] + u] += ejv[t] * fi[u];
              }
            }
            if (i == j) sig[offset[j] + c] += h;
          }
          cands.push_back(Cand{i, c, std::move(sig)});
        }
      }
      LinearSpan span(total);
      std::vector<int> chosen;
      for (std::size_t c = 0; c < cands.size(); ++c)
        if (span.insert(cands[c].sig)) chosen.push_back(static_cast<int>(c));
      if (chosen.empty()) continue;
      Space sp;
      sp.dim = static_cast<int>(chosen.size());
      sp.e.assign(n_, std::vector<QVec>(sp.dim));
      sp.f.assign(n_, std::vector<QVec>(sp.dim));
      for (int t = 0; t < sp.dim; ++t) {
        const QVec& sig = cands[chosen[t]].sig;
        for (int j = 0; j < n_; ++j)
          if (offset[j] >= 0) sp.e[j][t] = QVec(sig.begin() + offset[j], sig.begin() + offset[j] + block[j]);
      }
      for (const auto& cd : cands) {
        auto coords = span.coordinates(cd.sig);
        spaces_[shifted(k, cd.i, -1)].f[cd.i][cd.col] = std::move(*coords);
      }
      spaces_[k] = std::move(sp);
      next.push_back(k);
    }
    level = std::move(next);
  }
}

RepBuilder::MVec RepBuilder::model_f(int i, const MVec& x) const {
  if (zero(x)) return {};
  const Space* S = find(x.k);
  Depth t = shifted(x.k, i, 1);
  const Space* T = find(t);
  if (!T) return {};
  QVec out(T->dim, mpq_class(0));
  for (int c = 0; c < S->dim; ++c)
    if (x.v[c] != 0) axpy(out, x.v[c], S->f[i][c]);
  return MVec{t, std::move(out)};
}

RepBuilder::MVec RepBuilder::model_e(int i, const MVec& x) const {
  if (zero(x) || x.k[i] == 0) return {};
  const Space* S = find(x.k);
  Depth t = shifted(x.k, i, -1);
  const Space* T = find(t);
  if (!T) return {};
  QVec out(T->dim, mpq_class(0));
  for (int c = 0; c < S->dim; ++c)
    if (x.v[c] != 0 && !S->e[i][c].empty()) axpy(out, x.v[c], S->e[i][c]);
  return MVec{t, std::move(out)};
}

RepBuilder::MVec RepBuilder::model_divided(bool f, int i, int n, MVec x) const {
  for (int s = 0; s < n && !zero(x); ++s) x = f ? model_f(i, x) : model_e(i, x);
  if (zero(x)) return {};
  mpq_class inv(1, factorial(n));
  for (auto& c : x.v) c *= inv;
  return x;
}

std::vector<FMonomial> RepBuilder::monomials() const {
  // Components of the diagram, each a path listed in order.
  std::vector<std::vector<int>> comps;
  std::vector<bool> used(n_, false);
  for (int s = 0; s < n_; ++s) {
    if (used[s]) continue;
    std::vector<int> comp{s};
    used[s] = true;
    for (std::size_t c = 0; c < comp.size(); ++c)
      for (int j = 0; j < n_; ++j)
        if (!used[j] && cartan_(comp[c], j) == -1) {
          used[j] = true;
          comp.push_back(j);
        }
    if (comp.size() > 2) fail(ErrorCode::UnsupportedType, "built-in canonical bases cover products of A1 and A2 only; use load_rep");
    std::sort(comp.begin(), comp.end());
    comps.push_back(comp);
  }
  std::vector<FMonomial> result{{}};
  for (const auto& comp : comps) {
    std::vector<FMonomial> local;
    if (comp.size() == 1) {
      int p = comp[0];
      for (int a = 0; a <= lambda_[p]; ++a) local.push_back(a ? FMonomial{{p, a}} : FMonomial{});
    } else {
      int p = comp[0], q = comp[1];
      int bound = lambda_[p] + lambda_[q];
      auto push = [&](int x, int a, int y, int b, int c) {
        FMonomial m;
        if (a) m.push_back({x, a});
        if (b) m.push_back({y, b});
        if (c) m.push_back({x, c});
        local.push_back(m);
      };
      for (int a = 0; a <= bound; ++a)
        for (int b = 0; b <= bound; ++b)
          for (int c = 0; c <= bound; ++c) {
            if (b >= a + c) push(p, a, q, b, c);
            if (b > a + c) push(q, a, p, b, c);
          }
    }
    std::vector<FMonomial> combined;
    for (const auto& m1 : result)
      for (const auto& m2 : local) {
        FMonomial m = m1;
        m.insert(m.end(), m2.begin(), m2.end());
        combined.push_back(std::move(m));
      }
    result = std::move(combined);
  }
  return result;
}

std::shared_ptr<const RepresentationData> RepBuilder::run() {
  if (static_cast<int>(lambda_.size()) != n_) fail(ErrorCode::UsageError, "weight has the wrong number of coordinates");
  if (!is_dominant(lambda_)) fail(ErrorCode::LambdaNotDominant, "lambda = " + format_weight(lambda_));
  auto monos = monomials();
  build_model();

  struct Canon {
    FMonomial mono;
    MVec vec;
  };
  std::map<Depth, std::vector<Canon>> by_depth;
  for (const auto& m : monos) {
    MVec x{Depth(n_, 0), QVec{mpq_class(1)}};
    for (auto it = m.rbegin(); it != m.rend() && !zero(x); ++it) x = model_divided(true, it->first, it->second, x);
    if (zero(x)) continue;
    by_depth[x.k].push_back(Canon{m, x});
  }
  std::size_t count = 0;
  for (auto& [k, list] : by_depth) {
    std::sort(list.begin(), list.end(), [](const Canon& a, const Canon& b) { return a.mono < b.mono; });
    count += list.size();
  }
  mpz_class expected = weyl_dimension(cartan_, lambda_);
  if (mpz_class(static_cast<unsigned long>(count)) != expected)
    fail(ErrorCode::DimensionMismatch, std::to_string(count) + " canonical monomials survive, Weyl dimension is " + expected.get_str());

  // Ids ordered by total depth, then depth vector, then monomial.
  std::vector<Depth> order;
  for (const auto& [k, list] : by_depth) order.push_back(k);
  std::stable_sort(order.begin(), order.end(), [](const Depth& a, const Depth& b) {
    int sa = 0, sb = 0;
    for (int x : a) sa += x;
    for (int x : b) sb += x;
    if (sa != sb) return sa < sb;
    return a < b;
  });
  std::map<Depth, int> first_id;
  std::map<Depth, LinearSpan> spans;
  auto data = std::shared_ptr<RepresentationData>(new RepresentationData());
  data->W_ = std::make_shared<const WeylGroup>(cartan_);
  data->lambda_ = lambda_;
  for (const auto& k : order) {
    const auto& list = by_depth[k];
    const Space* S = find(k);
    LinearSpan span(S->dim);
    for (const auto& c : list)
      if (!span.insert(c.vec.v))
        fail(ErrorCode::DimensionMismatch, "canonical monomials are dependent at depth " + format_weight(k));
    if (static_cast<int>(list.size()) != S->dim)
      fail(ErrorCode::DimensionMismatch, "weight space at depth " + format_weight(k) + " is not spanned");
    first_id[k] = static_cast<int>(data->basis_.size());
    for (const auto& c : list) {
      Weight nu = lambda_;
      for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j) nu[j] -= k[i] * cartan_(j, i);
      int id = static_cast<int>(data->basis_.size());
      data->basis_.push_back(BasisElement{id, nu, format_monomial(c.mono)});
    }
    spans.emplace(k, std::move(span));
  }

  // Structure constants in the canonical basis.
  const int dim = static_cast<int>(data->basis_.size());
  data->f_.assign(n_, {});
  data->e_.assign(n_, {});
  for (int i = 0; i < n_; ++i) {
    for (bool is_f : {true, false}) {
      auto& ops = is_f ? data->f_[i] : data->e_[i];
      for (int n = 1;; ++n) {
        std::vector<OpColumn> cols(dim);
        bool any = false;
        for (const auto& k : order) {
          const auto& list = by_depth[k];
          for (std::size_t t = 0; t < list.size(); ++t) {
            MVec y = model_divided(is_f, i, n, list[t].vec);
            if (zero(y)) continue;
            auto coords = spans.at(y.k).coordinates(y.v);
            if (!coords) fail(ErrorCode::InvariantViolation, "image outside the model");
            int b = first_id[k] + static_cast<int>(t);
            for (std::size_t u = 0; u < coords->size(); ++u) {
              const mpq_class& v = (*coords)[u];
              if (v == 0) continue;
              if (v < 0 || v.get_den() != 1 || !v.get_num().fits_slong_p())
                fail(ErrorCode::PositivityViolation, std::string(is_f ? "f" : "e") + std::to_string(i + 1) + "^(" +
                                                         std::to_string(n) + ") on " + id_str(b) + " has coefficient " + v.get_str());
              cols[b].push_back(OpEntry{first_id[y.k] + static_cast<int>(u), v.get_num().get_si()});
              any = true;
            }
          }
        }
        if (!any) break;
        for (auto& col : cols) std::sort(col.begin(), col.end(), [](const OpEntry& a, const OpEntry& b) { return a.target < b.target; });
        ops.push_back(std::move(cols));
      }
    }
  }
  data->xi_plus_ = 0;
  data->xi_minus_ = dim - 1;
  data->finalize();
  return data;
}

// ---- RepresentationData ----

std::shared_ptr<const RepresentationData> RepresentationData::build(const CartanDatum& cartan, const Weight& lambda) {
  return RepBuilder(cartan, lambda).run();
}

const OpColumn& RepresentationData::f_col(int i, int n, int b) const {
  if (n == 0) return identity_[b];
  if (n < 0 || n > nmax(i)) return kEmptyColumn;
  return f_[i][n - 1][b];
}

const OpColumn& RepresentationData::e_col(int i, int n, int b) const {
  if (n == 0) return identity_[b];
  if (n < 0 || n > nmax(i)) return kEmptyColumn;
  return e_[i][n - 1][b];
}

std::int64_t RepresentationData::d(int b, int bp, int i, int n) const {
  for (const auto& en : f_col(i, n, b))
    if (en.target == bp) return en.value;
  return 0;
}

std::int64_t RepresentationData::c(int b, int bp, int i, int n) const {
  for (const auto& en : e_col(i, n, b))
    if (en.target == bp) return en.value;
  return 0;
}

QVec RepresentationData::unit(int b) const {
  QVec v(dim(), mpq_class(0));
  v[b] = 1;
  return v;
}

QVec RepresentationData::apply_f(int i, int n, const QVec& v) const {
  QVec out(dim(), mpq_class(0));
  for (int b = 0; b < dim(); ++b) {
    if (v[b] == 0) continue;
    for (const auto& en : f_col(i, n, b)) out[en.target] += v[b] * en.value;
  }
  return out;
}

QVec RepresentationData::apply_e(int i, int n, const QVec& v) const {
  QVec out(dim(), mpq_class(0));
  for (int b = 0; b < dim(); ++b) {
    if (v[b] == 0) continue;
    for (const auto& en : e_col(i, n, b)) out[en.target] += v[b] * en.value;
  }
  return out;
}

void RepresentationData::finalize() {
  const int n = rank();
  const int N = dim();
  if (static_cast<int>(lambda_.size()) != n) fail(ErrorCode::SchemaError, "lambda has the wrong number of coordinates");
  if (!is_dominant(lambda_)) fail(ErrorCode::LambdaNotDominant, "lambda = " + format_weight(lambda_));
  if (N == 0) fail(ErrorCode::DimensionMismatch, "empty basis");
  identity_.assign(N, {});
  for (int b = 0; b < N; ++b) {
    identity_[b] = {OpEntry{b, 1}};
    if (static_cast<int>(basis_[b].weight.size()) != n) fail(ErrorCode::SchemaError, "weight size mismatch at " + id_str(b));
    if (basis_[b].id != b) fail(ErrorCode::SchemaError, "basis ids must be 0..dim-1 in order");
  }
  for (auto* ops : {&f_, &e_}) {
    ops->resize(n);
    for (auto& per_i : *ops)
      for (auto& cols : per_i) cols.resize(N);
  }
  // Pad so that f and e share the same n range.
  for (int i = 0; i < n; ++i) {
    std::size_t m = std::max(f_[i].size(), e_[i].size());
    f_[i].resize(m, std::vector<OpColumn>(N));
    e_[i].resize(m, std::vector<OpColumn>(N));
  }

  mpz_class expected = weyl_dimension(cartan(), lambda_);
  if (mpz_class(N) != expected)
    fail(ErrorCode::DimensionMismatch, "dim " + std::to_string(N) + " but Weyl dimension is " + expected.get_str());

  // Depth of each weight below lambda, in simple-root coordinates.
  LinearSpan roots(n);
  for (int i = 0; i < n; ++i) {
    QVec a(n);
    for (int j = 0; j < n; ++j) a[j] = cartan()(j, i);
    roots.insert(a);
  }
  depth_.assign(N, 0);
  by_weight_.clear();
  for (int b = 0; b < N; ++b) {
    QVec diff(n);
    for (int j = 0; j < n; ++j) diff[j] = lambda_[j] - basis_[b].weight[j];
    auto k = roots.coordinates(diff);
    int depth = 0;
    for (const auto& x : *k) {
      if (x < 0 || x.get_den() != 1)
        fail(ErrorCode::InvariantViolation, "weight of " + id_str(b) + " is not below lambda");
      depth += static_cast<int>(x.get_num().get_si());
    }
    depth_[b] = depth;
    by_weight_[basis_[b].weight].push_back(b);
  }
  if (xi_plus_ < 0 || xi_plus_ >= N || basis_[xi_plus_].weight != lambda_)
    fail(ErrorCode::InvariantViolation, "xi_plus does not have weight lambda");
  if (by_weight_[lambda_].size() != 1) fail(ErrorCode::InvariantViolation, "highest weight space is not a line");
  if (xi_minus_ < 0 || xi_minus_ >= N || basis_[xi_minus_].weight != weyl().act(weyl().longest(), lambda_))
    fail(ErrorCode::InvariantViolation, "xi_minus does not have the lowest weight");

  validate_ops();
  compute_expansions();
  // The e/f-swapping involution sends weight nu to -nu, so it exists only
  // when the weights are symmetric, i.e. lambda = -w_I lambda.
  phi_.clear();
  if (scaled(weyl().act(weyl().longest(), lambda_), -1) == lambda_) compute_phi();
  compute_bw();
  compute_beta();
}

void RepresentationData::validate_ops() const {
  const int n = rank();
  const int N = dim();
  for (int i = 0; i < n; ++i) {
    Weight alpha = cartan().simple_root(i);
    for (int k = 1; k <= nmax(i); ++k) {
      for (int b = 0; b < N; ++b) {
        for (bool is_f : {true, false}) {
          const OpColumn& col = is_f ? f_[i][k - 1][b] : e_[i][k - 1][b];
          Weight target = is_f ? basis_[b].weight - scaled(alpha, k) : basis_[b].weight + scaled(alpha, k);
          for (const auto& en : col) {
            if (en.value < 0)
              fail(ErrorCode::PositivityViolation, std::string(is_f ? "d" : "c") + " entry " + std::to_string(en.value) +
                                                       " at (" + id_str(b) + "," + id_str(en.target) + ")");
            if (en.target < 0 || en.target >= N) fail(ErrorCode::SchemaError, "target id out of range");
            if (basis_[en.target].weight != target)
              fail(ErrorCode::InvariantViolation, "operator does not shift weights by the simple root at " + id_str(b));
          }
        }
      }
    }
  }
  auto fail_rel = [](const std::string& what, int b) {
    fail(ErrorCode::InvariantViolation, what + " fails on " + id_str(b));
  };
  for (int b = 0; b < N; ++b) {
    QVec u = unit(b);
    for (int i = 0; i < n; ++i) {
      // divided powers: f^{(k-1)} f = k f^{(k)}, including the first vanishing power
      QVec f1 = apply_f(i, 1, u), e1 = apply_e(i, 1, u);
      for (int k = 2; k <= nmax(i) + 1; ++k) {
        QVec lhs = apply_f(i, k - 1, f1), rhs = apply_f(i, k, u);
        for (auto& x : rhs) x *= k;
        if (lhs != rhs) fail_rel("divided power f" + std::to_string(i + 1) + "^(" + std::to_string(k) + ")", b);
        lhs = apply_e(i, k - 1, e1);
        rhs = apply_e(i, k, u);
        for (auto& x : rhs) x *= k;
        if (lhs != rhs) fail_rel("divided power e" + std::to_string(i + 1) + "^(" + std::to_string(k) + ")", b);
      }
      for (int j = 0; j < n; ++j) {
        QVec ef = apply_e(i, 1, apply_f(j, 1, u));
        QVec fe = apply_f(j, 1, apply_e(i, 1, u));
        for (int t = 0; t < N; ++t) ef[t] -= fe[t];
        if (i == j) ef[b] -= pairing(i, b);
        if (!is_zero(ef)) fail_rel("[e" + std::to_string(i + 1) + ",f" + std::to_string(j + 1) + "]", b);
        if (i == j) continue;
        for (bool is_f : {true, false}) {
          auto op = [&](int g, int k, const QVec& v) { return is_f ? apply_f(g, k, v) : apply_e(g, k, v); };
          QVec r;
          if (cartan()(i, j) == 0) {
            r = op(i, 1, op(j, 1, u));
            QVec s = op(j, 1, op(i, 1, u));
            for (int t = 0; t < N; ++t) r[t] -= s[t];
          } else {
            r = op(i, 2, op(j, 1, u));
            QVec mid = op(i, 1, op(j, 1, op(i, 1, u)));
            QVec last = op(j, 1, op(i, 2, u));
            for (int t = 0; t < N; ++t) r[t] += last[t] - mid[t];
          }
          if (!is_zero(r)) fail_rel(std::string("Serre relation for ") + (is_f ? "f" : "e"), b);
        }
      }
    }
  }
}

void RepresentationData::compute_expansions() {
  const int n = rank();
  const int N = dim();
  std::vector<int> order(N);
  for (int b = 0; b < N; ++b) order[b] = b;
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return depth_[a] < depth_[b]; });
  std::map<Weight, std::vector<std::pair<std::vector<int>, QVec>>> spanning;
  spanning[lambda_].push_back({{}, unit(xi_plus_)});
  expansion_.assign(N, {});
  expansion_[xi_plus_] = {WordTerm{{}, mpq_class(1)}};
  std::set<Weight> done{lambda_};
  for (int b : order) {
    const Weight& nu = basis_[b].weight;
    if (done.count(nu)) continue;
    done.insert(nu);
    LinearSpan span(N);
    auto& words = spanning[nu];
    for (int i = 0; i < n; ++i) {
      auto it = spanning.find(nu + cartan().simple_root(i));
      if (it == spanning.end()) continue;
      for (const auto& [word, vec] : it->second) {
        QVec v = apply_f(i, 1, vec);
        if (span.insert(v)) {
          std::vector<int> w{i};
          w.insert(w.end(), word.begin(), word.end());
          words.push_back({std::move(w), std::move(v)});
        }
      }
    }
    const IdSet& ids = by_weight_.at(nu);
    if (span.size() != ids.size())
      fail(ErrorCode::InvariantViolation, "module is not generated by the highest weight vector at weight " + format_weight(nu));
    for (int c : ids) {
      auto coords = span.coordinates(unit(c));
      for (std::size_t t = 0; t < coords->size(); ++t)
        if ((*coords)[t] != 0) expansion_[c].push_back(WordTerm{words[t].first, (*coords)[t]});
    }
  }
}

void RepresentationData::compute_phi() {
  const int N = dim();
  phi_.assign(N, -1);
  for (int b = 0; b < N; ++b) {
    QVec acc(N, mpq_class(0));
    for (const auto& term : expansion_[b]) {
      QVec v = unit(xi_minus_);
      for (auto it = term.word.rbegin(); it != term.word.rend(); ++it) v = apply_e(*it, 1, v);
      axpy(acc, term.coeff, v);
    }
    int hit = -1;
    for (int t = 0; t < N; ++t) {
      if (acc[t] == 0) continue;
      if (acc[t] != 1 || hit >= 0) fail(ErrorCode::NotAPermutation, "phi of " + id_str(b) + " is not a basis vector");
      hit = t;
    }
    if (hit < 0) fail(ErrorCode::NotAPermutation, "phi of " + id_str(b) + " vanishes");
    phi_[b] = hit;
  }
  std::vector<bool> seen(N, false);
  for (int b = 0; b < N; ++b) {
    if (seen[phi_[b]]) fail(ErrorCode::NotAPermutation, "phi is not injective");
    seen[phi_[b]] = true;
  }
  for (int b = 0; b < N; ++b)
    if (phi_[phi_[b]] != b) fail(ErrorCode::NotAPermutation, "phi is not an involution at " + id_str(b));
  if (phi_[xi_plus_] != xi_minus_) fail(ErrorCode::NotAPermutation, "phi does not send xi_plus to xi_minus");
  // phi e_i^{(k)} = f_i^{(k)} phi
  for (int i = 0; i < rank(); ++i)
    for (int k = 1; k <= nmax(i); ++k)
      for (int b = 0; b < N; ++b) {
        OpColumn lhs;
        for (const auto& en : e_col(i, k, b)) lhs.push_back(OpEntry{phi_[en.target], en.value});
        std::sort(lhs.begin(), lhs.end(), [](const OpEntry& x, const OpEntry& y) { return x.target < y.target; });
        if (lhs != f_col(i, k, phi_[b])) fail(ErrorCode::NotAPermutation, "phi does not intertwine e and f at " + id_str(b));
      }
}

void RepresentationData::compute_bw() {
  const WeylGroup& W = weyl();
  bw_.assign(W.size(), -1);
  for (WeylElt w = 0; w < W.size(); ++w) {
    for (const auto& word : W.reduced_words(w)) {
      QVec v = unit(xi_plus_);
      int current = xi_plus_;
      for (auto it = word.rbegin(); it != word.rend(); ++it) {
        v = apply_f(*it, pairing(*it, current), v);
        current = -1;
        for (int t = 0; t < dim(); ++t) {
          if (v[t] == 0) continue;
          if (v[t] != 1 || current >= 0) fail(ErrorCode::NotExtremal, "extremal vector for " + W.name(w) + " is not a basis vector");
          current = t;
        }
        if (current < 0) fail(ErrorCode::NotExtremal, "extremal vector for " + W.name(w) + " vanishes");
      }
      if (bw_[w] >= 0 && bw_[w] != current)
        fail(ErrorCode::NotExtremal, "extremal vector for " + W.name(w) + " depends on the reduced word");
      bw_[w] = current;
    }
  }
  if (bw_[W.longest()] != xi_minus_) fail(ErrorCode::NotExtremal, "b_{w_I} differs from xi_minus");
}

void RepresentationData::compute_beta() {
  const int N = dim();
  const WeylGroup& W = weyl();
  auto support_of_span = [&](std::vector<QVec> start, const std::vector<int>& gens, bool use_f) {
    for (int i : gens) {
      LinearSpan span(N);
      std::vector<QVec> next;
      for (const auto& v : start)
        for (int k = 0; k <= nmax(i); ++k) {
          QVec x = use_f ? apply_f(i, k, v) : apply_e(i, k, v);
          if (is_zero(x)) break;
          if (span.insert(x)) next.push_back(std::move(x));
        }
      start = std::move(next);
    }
    std::set<int> supp;
    for (const auto& v : start)
      for (int t = 0; t < N; ++t)
        if (v[t] != 0) supp.insert(t);
    return std::make_pair(IdSet(supp.begin(), supp.end()), start.size());
  };
  beta_w_.assign(W.size(), {});
  for (WeylElt w = 0; w < W.size(); ++w) {
    bool first = true;
    for (const auto& word : W.reduced_words(w)) {
      std::vector<int> rev(word.rbegin(), word.rend());
      auto [fsupp, fdim] = support_of_span({unit(xi_plus_)}, rev, true);
      auto [esupp, edim] = support_of_span({unit(bw_[w])}, word, false);
      if (fsupp != esupp || fdim != fsupp.size() || edim != esupp.size())
        fail(ErrorCode::CrossCheckMismatch, "f- and e-descriptions of beta^w disagree for " + W.name(w));
      if (!first && fsupp != beta_w_[w])
        fail(ErrorCode::CrossCheckMismatch, "beta^w depends on the reduced word for " + W.name(w));
      beta_w_[w] = fsupp;
      first = false;
    }
    if (!std::binary_search(beta_w_[w].begin(), beta_w_[w].end(), bw_[w]))
      fail(ErrorCode::CrossCheckMismatch, "b_w is not in beta^w for " + W.name(w));
  }
  beta_e_.assign(rank(), {});
  beta_f_.assign(rank(), {});
  for (int i = 0; i < rank(); ++i)
    for (int b = 0; b < N; ++b) {
      if (e_col(i, 1, b).empty()) beta_e_[i].push_back(b);
      if (f_col(i, 1, b).empty()) beta_f_[i].push_back(b);
    }
}

// ---- JSON ----

nlohmann::json RepresentationData::to_json() const {
  nlohmann::json basis = nlohmann::json::array();
  for (const auto& be : basis_) basis.push_back({{"id", be.id}, {"weight", be.weight}, {"provenance", be.provenance}});
  auto ops_json = [&](bool is_f) {
    nlohmann::json out = nlohmann::json::array();
    for (int i = 0; i < rank(); ++i)
      for (int k = 1; k <= nmax(i); ++k)
        for (int b = 0; b < dim(); ++b)
          for (const auto& en : (is_f ? f_col(i, k, b) : e_col(i, k, b)))
            out.push_back(nlohmann::json::array({i + 1, k, b, en.target, en.value}));
    return out;
  };
  return {{"schema", "repdata-v1"},
          {"cartan", cartan().to_json()},
          {"lambda", lambda_},
          {"dim", dim()},
          {"basis", basis},
          {"f_ops", ops_json(true)},
          {"e_ops", ops_json(false)},
          {"xi_plus", xi_plus_},
          {"xi_minus", xi_minus_}};
}

std::shared_ptr<const RepresentationData> RepresentationData::from_json(const nlohmann::json& j) {
  auto data = std::shared_ptr<RepresentationData>(new RepresentationData());
  try {
    if (!j.is_object() || j.value("schema", std::string()) != "repdata-v1")
      fail(ErrorCode::SchemaError, "expected schema repdata-v1");
    CartanDatum cartan = CartanDatum::from_json(j.at("cartan"));
    data->W_ = std::make_shared<const WeylGroup>(cartan);
    data->lambda_ = j.at("lambda").get<Weight>();
    const int n = cartan.rank();
    if (static_cast<int>(data->lambda_.size()) != n) fail(ErrorCode::SchemaError, "lambda has the wrong size");
    for (const auto& be : j.at("basis")) {
      BasisElement e;
      e.id = be.at("id").get<int>();
      e.weight = be.at("weight").get<Weight>();
      e.provenance = be.value("provenance", std::string());
      data->basis_.push_back(std::move(e));
    }
    std::sort(data->basis_.begin(), data->basis_.end(), [](const BasisElement& a, const BasisElement& b) { return a.id < b.id; });
    const int N = static_cast<int>(data->basis_.size());
    if (j.at("dim").get<int>() != N)
      fail(ErrorCode::DimensionMismatch, "dim field " + std::to_string(j.at("dim").get<int>()) + " but " + std::to_string(N) + " basis entries");
    data->f_.assign(n, {});
    data->e_.assign(n, {});
    for (bool is_f : {true, false}) {
      auto& ops = is_f ? data->f_ : data->e_;
      for (const auto& row : j.at(is_f ? "f_ops" : "e_ops")) {
        if (!row.is_array() || row.size() != 5) fail(ErrorCode::SchemaError, "operator rows are [i,n,b,b',value]");
        int i = row[0].get<int>() - 1;
        int k = row[1].get<int>();
        int b = row[2].get<int>();
        int bp = row[3].get<int>();
        std::int64_t v = row[4].is_string() ? std::stoll(row[4].get<std::string>()) : row[4].get<std::int64_t>();
        if (i < 0 || i >= n || k < 1 || b < 0 || b >= N || bp < 0 || bp >= N)
          fail(ErrorCode::SchemaError, "operator row out of range: " + row.dump());
        if (v < 0) fail(ErrorCode::PositivityViolation, "negative structure constant in row " + row.dump());
        if (v == 0) continue;
        if (static_cast<int>(ops[i].size()) < k) ops[i].resize(k, std::vector<OpColumn>(N));
        ops[i][k - 1][b].push_back(OpEntry{bp, v});
      }
      for (auto& per_i : ops)
        for (auto& cols : per_i)
          for (auto& col : cols) {
            std::sort(col.begin(), col.end(), [](const OpEntry& a, const OpEntry& b) { return a.target < b.target; });
            for (std::size_t t = 1; t < col.size(); ++t)
              if (col[t].target == col[t - 1].target) fail(ErrorCode::SchemaError, "duplicate operator entry");
          }
    }
    data->xi_plus_ = j.at("xi_plus").get<int>();
    data->xi_minus_ = j.at("xi_minus").get<int>();
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::SchemaError, e.what());
  } catch (const std::invalid_argument& e) {
    fail(ErrorCode::SchemaError, e.what());
  } catch (const std::out_of_range& e) {
    fail(ErrorCode::SchemaError, e.what());
  }
  data->finalize();
  return data;
}

std::shared_ptr<const RepresentationData> RepresentationData::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::SchemaError, "cannot open " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::SchemaError, path + ": " + e.what());
  }
  return from_json(j);
}

void RepresentationData::save(const std::string& path) const {
  std::ofstream out(path);
  if (!out) fail(ErrorCode::UsageError, "cannot write " + path);
  out << to_json().dump(1) << '\n';
}

RepPtr cached_rep(const CartanDatum& cartan, const Weight& lambda) {
  static std::mutex mu;
  static std::map<std::pair<std::vector<std::vector<int>>, Weight>, RepPtr> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_pair(cartan.matrix(), lambda);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  RepPtr rep = RepresentationData::build(cartan, lambda);
  cache.emplace(key, rep);
  return rep;
}

}  // namespace tropflag
