#include "tropflag/cells.hpp"

#include <functional>
#include <set>

#include "tropflag/linalg.hpp"
#include "tropflag/sampling.hpp"

namespace tropflag {

std::vector<OracleTerm> chi_expansion(const RepresentationData& rep, const PositiveSubexpression& pse) {
  const CartanDatum& cartan = rep.cartan();
  const int m = static_cast<int>(pse.word.size());
  const int d = static_cast<int>(pse.primes.size());
  std::vector<int> slot(m, -1);
  for (int j = 0; j < d; ++j) slot[pse.primes[j]] = j;

  std::vector<OracleTerm> terms;
  std::vector<int> chi(d, 0);
  std::function<void(int)> rec = [&](int j) {
    if (j < d) {
      for (int n = 0; n <= rep.nmax(pse.word[pse.primes[j]]); ++n) {
        chi[j] = n;
        rec(j + 1);
      }
      return;
    }
    // c(k, chi) by descending induction on the doubly primed positions
    std::vector<int> c(m, 0);
    for (int k = m - 1; k >= 0; --k) {
      if (!pse.q[k]) continue;
      Weight nu = rep.lambda();
      for (int t = k + 1; t < m; ++t) {
        int coef = pse.q[t] ? (c[t] >= 0 ? c[t] : 0) : chi[slot[t]];
        nu = nu - scaled(cartan.simple_root(pse.word[t]), coef);
      }
      c[k] = nu[pse.word[k]];
    }
    QVec J = rep.unit(rep.xi_plus());
    for (int k = m - 1; k >= 0; --k) {
      int n = pse.q[k] ? c[k] : chi[slot[k]];
      if (n < 0) return;
      J = rep.apply_f(pse.word[k], n, J);
      if (is_zero(J)) return;
    }
    OracleTerm t{chi, {}};
    for (int b = 0; b < rep.dim(); ++b) {
      if (J[b] == 0) continue;
      if (J[b] < 0 || J[b].get_den() != 1) fail(ErrorCode::PositivityViolation, "chi-expansion term is not a natural vector");
      t.coeffs.emplace_back(b, J[b].get_num());
    }
    terms.push_back(std::move(t));
  };
  rec(0);
  return terms;
}

CellDescriptor make_descriptor(const RepPtr& rep, WeylElt v, WeylElt w, const std::vector<int>& word) {
  const WeylGroup& W = rep->weyl();
  if (W.from_word(word) != w || !W.is_reduced(word))
    fail(ErrorCode::UsageError, "word " + format_word(word) + " is not a reduced word of " + W.name(w));
  CellDescriptor d;
  d.rep = rep;
  d.v = v;
  d.w = w;
  d.word = word;
  d.pse = positive_subexpression(W, v, word);
  d.suffix.assign(word.size() + 1, W.identity());
  for (int k = static_cast<int>(word.size()) - 1; k >= 0; --k) d.suffix[k] = W.left(word[k], d.suffix[k + 1]);
  d.terms = chi_expansion(*rep, d.pse);

  d.support = detail::theta_unchecked(d, std::vector<TropicalInt>(d.dim())).support();
  Rng rng(static_cast<std::uint64_t>(v) * 7919 + static_cast<std::uint64_t>(w) * 104729 + word.size());
  for (int t = 0; t < 5; ++t) {
    std::vector<PosRational> h;
    for (int j = 0; j < d.dim(); ++j) h.push_back(random_element<PosRational>(rng));
    if (detail::theta_unchecked(d, h).support() != d.support)
      fail(ErrorCode::SupportInstability, "support of " + W.name(v) + " <= " + W.name(w) + " depends on h");
  }
  if (!std::binary_search(d.support.begin(), d.support.end(), rep->bw(w)))
    fail(ErrorCode::InvariantViolation, "b_w missing from the support of " + W.name(v) + " <= " + W.name(w));
  return d;
}

IdSet support_set(const RepPtr& rep, WeylElt v, WeylElt w, const std::vector<int>& word) {
  return make_descriptor(rep, v, w, word).support;
}

IdSet beta_vw(const RepPtr& rep, WeylElt v, WeylElt w) {
  const WeylGroup& W = rep->weyl();
  std::optional<IdSet> first;
  for (const auto& word : W.reduced_words(w)) {
    IdSet s = support_set(rep, v, w, word);
    if (!first)
      first = s;
    else if (*first != s)
      fail(ErrorCode::ReducedWordDependence, "support of " + W.name(v) + " <= " + W.name(w) + " depends on the word " +
                                                 format_word(word));
  }
  return *first;
}

namespace detail {

namespace {

struct Equation {
  QVec row;  // coefficients of (h_1, ..., h_d, s)
  mpq_class rhs;
};

// Adds eq to the system; 1 if it raised the rank, 0 if implied, -1 if inconsistent.
int add_equation(LinearSpan& coef, LinearSpan& aug, const Equation& eq) {
  QVec a = eq.row;
  a.push_back(eq.rhs);
  if (coef.contains(eq.row)) return aug.contains(a) ? 0 : -1;
  coef.insert(eq.row);
  aug.insert(a);
  return 1;
}

}  // namespace

std::vector<TropicalInt> tropical_solve(const CellDescriptor& d, const VkVector<TropicalInt>& xi) {
  const int dim = d.dim();
  const std::size_t D = static_cast<std::size_t>(dim) + 1;
  std::map<int, std::set<std::vector<int>>> mono;
  for (const auto& t : d.terms)
    for (const auto& [b, n] : t.coeffs) mono[b].insert(t.chi);

  auto value = [&](int b) { return mpq_class(xi[b].value().value()); };
  auto evaluate = [&](const QVec& u, int b) {
    std::optional<mpq_class> best;
    for (const auto& chi : mono[b]) {
      mpq_class s = u[dim];
      for (int j = 0; j < dim; ++j) s += chi[j] * u[j];
      if (!best || s < *best) best = s;
    }
    return *best;
  };
  auto check = [&](const QVec& u) {
    for (const auto& x : u)
      if (x.get_den() != 1) return false;
    for (int b : d.support)
      if (evaluate(u, b) != value(b)) return false;
    return true;
  };

  std::vector<Equation> forced, optional_eqs;
  for (int b : d.support) {
    for (const auto& chi : mono[b]) {
      Equation e{QVec(D), value(b)};
      for (int j = 0; j < dim; ++j) e.row[j] = chi[j];
      e.row[dim] = 1;
      (mono[b].size() == 1 ? forced : optional_eqs).push_back(std::move(e));
    }
  }
  // The first primed coordinate is read off exactly after the leading
  // tau inverses.
  {
    VkVector<TropicalInt> cur = xi;
    for (int k = 0; k < d.length(); ++k) {
      if (d.pse.q[k]) {
        if (!support_within(cur.support(), d.rep->beta_f(d.word[k]))) fail(ErrorCode::PeelFailure, "point not in V(K)^{f_i}");
        cur = tau_inverse(d.word[k], cur);
        continue;
      }
      Equation e{QVec(D), mpq_class(read_coordinate(d, k, cur).value())};
      e.row[0] = 1;
      forced.push_back(std::move(e));
      break;
    }
  }

  LinearSpan coef(D), aug(D + 1);
  std::vector<Equation> chosen;
  for (const auto& e : forced) {
    int r = add_equation(coef, aug, e);
    if (r < 0) fail(ErrorCode::PeelFailure, "inconsistent tropical coordinates");
    if (r > 0) chosen.push_back(e);
  }

  std::optional<QVec> found;
  std::function<void(std::size_t, const LinearSpan&, const LinearSpan&)> dfs = [&](std::size_t start, const LinearSpan& c,
                                                                                    const LinearSpan& a) {
    if (found) return;
    if (c.size() == D) {
      std::vector<QVec> rows;
      QVec rhs;
      for (const auto& e : chosen) rows.push_back(e.row), rhs.push_back(e.rhs);
      auto u = solve_square(rows, rhs);
      if (u && check(*u)) found = u;
      return;
    }
    for (std::size_t t = start; t < optional_eqs.size() && !found; ++t) {
      LinearSpan c2 = c, a2 = a;
      if (add_equation(c2, a2, optional_eqs[t]) != 1) continue;
      chosen.push_back(optional_eqs[t]);
      dfs(t + 1, c2, a2);
      chosen.pop_back();
    }
  };
  dfs(0, coef, aug);
  if (!found) fail(ErrorCode::PeelFailure, "no tropical coordinates reproduce the point");
  std::vector<TropicalInt> h;
  for (int j = 0; j < dim; ++j) h.emplace_back(mpz_class((*found)[j].get_num()));
  return h;
}

}  // namespace detail

Census Census::build(const RepPtr& rep) {
  if (!is_very_dominant(rep->lambda()))
    fail(ErrorCode::LambdaNotVeryDominant, "census needs every coordinate of lambda positive, got " + format_weight(rep->lambda()));
  const WeylGroup& W = rep->weyl();
  Census c;
  c.rep_ = rep;
  for (WeylElt w : W.elements()) {
    for (WeylElt v : W.elements()) {
      if (!W.bruhat_leq(v, w)) continue;
      PieceInfo info{make_descriptor(rep, v, w, W.word(w)), std::nullopt};
      const CellDescriptor& d = info.desc;
      if (beta_vw(rep, v, w) != d.support)
        fail(ErrorCode::ReducedWordDependence, "support of " + W.name(v) + " <= " + W.name(w) + " depends on the word");
      // no support element of weight nu_{b_w} + alpha_i when s_i w > w
      const Weight& top = rep->weight(rep->bw(w));
      for (int i = 0; i < W.rank(); ++i) {
        if (W.length(W.left(i, w)) < W.length(w)) continue;
        Weight up = top + W.cartan().simple_root(i);
        for (int b : d.support)
          if (rep->weight(b) == up) fail(ErrorCode::InvariantViolation, "support meets weight nu_{b_w} + alpha_i");
      }
      if (rep->has_phi()) {
        const IdSet& bw = rep->beta_w(w);
        IdSet phis;
        for (int b : rep->beta_w(W.mul(v, W.longest()))) phis.push_back(rep->phi(b));
        std::sort(phis.begin(), phis.end());
        IdSet bound;
        std::set_intersection(bw.begin(), bw.end(), phis.begin(), phis.end(), std::back_inserter(bound));
        if (!support_within(d.support, bound))
          fail(ErrorCode::InvariantViolation, "support of " + W.name(v) + " <= " + W.name(w) + " exceeds beta^w cap phi(beta^{v w_I})");
        info.bound = bound;
      }
      if (d.dim() != W.length(w) - W.length(v)) fail(ErrorCode::InvariantViolation, "piece dimension differs from |w|-|v|");
      if (c.by_support_.count(d.support))
        fail(ErrorCode::DuplicateSupport, "pieces " + W.name(v) + " <= " + W.name(w) + " and " +
                                              W.name(c.pieces_[c.by_support_[d.support]].desc.v) + " <= " +
                                              W.name(c.pieces_[c.by_support_[d.support]].desc.w) + " share a support");
      int p = static_cast<int>(c.pieces_.size());
      c.by_support_[d.support] = p;
      c.by_pair_[{v, w}] = p;
      c.pieces_.push_back(std::move(info));
    }
  }
  return c;
}

int Census::find(WeylElt v, WeylElt w) const {
  auto it = by_pair_.find({v, w});
  return it == by_pair_.end() ? -1 : it->second;
}

int Census::find_support(const IdSet& s) const {
  auto it = by_support_.find(s);
  return it == by_support_.end() ? -1 : it->second;
}

nlohmann::json Census::to_json() const {
  const WeylGroup& W = rep_->weyl();
  nlohmann::json pieces = nlohmann::json::array();
  for (const auto& info : pieces_) {
    const CellDescriptor& d = info.desc;
    std::vector<int> primes;
    for (int k : d.pse.primes) primes.push_back(k + 1);
    nlohmann::json j{{"v", W.name(d.v)},         {"w", W.name(d.w)},      {"word", format_word(d.word)},
                     {"primes", primes},         {"support", d.support}, {"dim", d.dim()},
                     {"b_w", rep_->bw(d.w)}};
    if (info.bound) j["support_equals_bound"] = (*info.bound == d.support);
    pieces.push_back(j);
  }
  return {{"cartan", rep_->cartan().to_json()}, {"lambda", rep_->lambda()}, {"pieces", pieces}};
}

}  // namespace tropflag
