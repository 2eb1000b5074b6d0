#pragma once

#include <map>
#include <optional>
#include <type_traits>
#include <vector>

#include <json.hpp>

#include "tropflag/repdata.hpp"
#include "tropflag/rootdata.hpp"
#include "tropflag/vk.hpp"

namespace tropflag {

// One summand h^chi J_chi of the chi-expansion, with J_chi stored as its
// nonzero natural coefficients.
struct OracleTerm {
  std::vector<int> chi;  // exponent per prime position
  std::vector<std::pair<int, mpz_class>> coeffs;
};

struct CellDescriptor {
  RepPtr rep;
  WeylElt v = 0, w = 0;
  std::vector<int> word;
  PositiveSubexpression pse;
  IdSet support;
  // suffix[k] = s_{i_k} ... s_{i_m}; suffix[m] = e
  std::vector<WeylElt> suffix;
  std::vector<OracleTerm> terms;

  int dim() const { return static_cast<int>(pse.primes.size()); }
  int length() const { return static_cast<int>(word.size()); }
};

// Builds the descriptor for v <= w and a reduced word of w; the support is
// read off theta at h = 0 over the tropical integers and compared with
// random rational parameters.
CellDescriptor make_descriptor(const RepPtr& rep, WeylElt v, WeylElt w, const std::vector<int>& word);

// Support of the piece for one reduced word.
IdSet support_set(const RepPtr& rep, WeylElt v, WeylElt w, const std::vector<int>& word);
// Support over every reduced word of w; throws ReducedWordDependence if they differ.
IdSet beta_vw(const RepPtr& rep, WeylElt v, WeylElt w);

std::vector<OracleTerm> chi_expansion(const RepresentationData& rep, const PositiveSubexpression& pse);

namespace detail {

template <Semifield K>
VkVector<K> theta_unchecked(const CellDescriptor& d, const std::vector<K>& h) {
  const RepresentationData& rep = *d.rep;
  if (static_cast<int>(h.size()) != d.dim())
    fail(ErrorCode::UsageError, "expected " + std::to_string(d.dim()) + " coordinates, got " + std::to_string(h.size()));
  auto x = VkVector<K>::basis_vector(d.rep, rep.xi_plus());
  int j = d.dim();
  for (int k = d.length() - 1; k >= 0; --k) {
    int i = d.word[k];
    if (d.pse.q[k]) {
      if (!support_within(x.support(), rep.beta_e(i)))
        fail(ErrorCode::IntermediateDomainViolation, "partial product not in V(K)^{e_i} at position " + std::to_string(k + 1));
      x = tau(i, x);
    } else {
      x = apply_f(i, h[--j], x);
    }
  }
  return x;
}

}  // namespace detail

template <Semifield K>
VkVector<K> theta(const CellDescriptor& d, const std::vector<K>& h) {
  VkVector<K> x = detail::theta_unchecked(d, h);
  if (x.support() != d.support) fail(ErrorCode::SupportInstability, "theta support differs from the piece support");
  if (x[d.rep->bw(d.w)].is_absent()) fail(ErrorCode::InvariantViolation, "coefficient at b_w is absent");
  return x;
}

// Sum over chi of h^chi J_chi, materialized term by term.
template <Semifield K>
VkVector<K> theta_oracle(const CellDescriptor& d, const std::vector<K>& h) {
  if (static_cast<int>(h.size()) != d.dim()) fail(ErrorCode::UsageError, "wrong number of coordinates");
  VkVector<K> x(d.rep);
  for (const auto& t : d.terms) {
    K mono = K::one();
    for (int j = 0; j < d.dim(); ++j) mono = mono * h[j].pow(t.chi[j]);
    for (const auto& [b, n] : t.coeffs) x.at(b) += Ext<K>(mono * K::from_natural(n.get_ui()));
  }
  return x;
}

template <Semifield K>
void check_oracle(const CellDescriptor& d, const std::vector<K>& h) {
  if (!(theta(d, h) == theta_oracle(d, h)))
    fail(ErrorCode::OracleMismatch, "theta and the chi-expansion differ on " + d.rep->weyl().name(d.v) + " <= " +
                                        d.rep->weyl().name(d.w));
}

template <Semifield K>
PkPoint<K> omega(const CellDescriptor& d, const std::vector<K>& h) {
  return projectivize(theta(d, h));
}

namespace detail {

// Field containing K, used to undo (-i)^k by back-substitution.
template <Semifield K>
struct Ambient;

template <>
struct Ambient<PosRational> {
  using F = mpq_class;
  static F lift(const PosRational& a) { return a.value(); }
  static F integer(long n) { return F(n); }
  static bool is_zero(const F& f) { return f == 0; }
  static Ext<PosRational> lower(const F& f) {
    if (f == 0) return {};
    if (f < 0) fail(ErrorCode::PeelFailure, "back-substitution produced a negative coefficient");
    return PosRational(f);
  }
};

template <>
struct Ambient<PosRatFun> {
  using F = RationalFunction;
  static F lift(const PosRatFun& a) { return a.value(); }
  static F integer(long n) { return RationalFunction::constant(mpq_class(n)); }
  static bool is_zero(const F& f) { return f.is_zero(); }
  static Ext<PosRatFun> lower(const F& f) {
    if (f.is_zero()) return {};
    try {
      return PosRatFun(f);
    } catch (const Error&) {
      fail(ErrorCode::PeelFailure, "back-substitution left the positive rational functions");
    }
  }
};

// h at the prime position k, read from the coefficients at b_{w'} and at
// f_i b_{w'} of the current vector.
template <Semifield K>
K read_coordinate(const CellDescriptor& d, int k, const VkVector<K>& cur) {
  const RepresentationData& rep = *d.rep;
  int i = d.word[k];
  int top = rep.bw(d.suffix[k + 1]);
  const OpColumn& col = rep.f_col(i, 1, top);
  if (cur[top].is_absent() || col.empty()) fail(ErrorCode::PeelFailure, "no extremal coefficient at position " + std::to_string(k + 1));
  const auto& en = col.front();
  if (cur[en.target].is_absent()) fail(ErrorCode::PeelFailure, "missing f_i b_w' coefficient at position " + std::to_string(k + 1));
  return cur[en.target].value() / (cur[top].value() * K::from_natural(static_cast<std::uint64_t>(en.value)));
}

// The unique xi' with (-i)^k xi' = xi, computed as y_i(-k) over the field.
template <Semifield K>
VkVector<K> back_substitute(int i, const K& k, const VkVector<K>& xi) {
  using A = Ambient<K>;
  using F = typename A::F;
  const RepresentationData& rep = xi.rep();
  F negk = A::integer(0) - A::lift(k);
  std::vector<F> out(xi.dim(), A::integer(0));
  for (int b = 0; b < xi.dim(); ++b) {
    if (xi[b].is_absent()) continue;
    F pw = A::lift(xi[b].value());
    for (int n = 0; n <= rep.nmax(i); ++n) {
      for (const auto& en : rep.f_col(i, n, b)) out[en.target] = out[en.target] + pw * A::integer(en.value);
      pw = pw * negk;
    }
  }
  VkVector<K> res(xi.rep_ptr());
  for (int b = 0; b < xi.dim(); ++b) res.at(b) = A::lower(out[b]);
  return res;
}

template <Semifield K>
std::vector<K> peel(const CellDescriptor& d, VkVector<K> cur) {
  const RepresentationData& rep = *d.rep;
  std::vector<K> h;
  for (int k = 0; k < d.length(); ++k) {
    int i = d.word[k];
    if (d.pse.q[k]) {
      if (!support_within(cur.support(), rep.beta_f(i))) fail(ErrorCode::PeelFailure, "point not in V(K)^{f_i}");
      cur = tau_inverse(i, cur);
    } else {
      h.push_back(read_coordinate(d, k, cur));
      cur = back_substitute(i, h.back(), cur);
    }
  }
  return h;
}

// Exact solve of P_b(h) * s = xi_b over the tropical integers from the
// monomials of the chi-expansion: a vertex of the tight-constraint system
// is searched for and each candidate is checked against every coefficient.
std::vector<TropicalInt> tropical_solve(const CellDescriptor& d, const VkVector<TropicalInt>& xi);

}  // namespace detail

template <Semifield K>
std::vector<K> invert_theta(const CellDescriptor& d, const VkVector<K>& xi) {
  if (xi.support() != d.support) fail(ErrorCode::NotInCell, "support does not match the piece");
  std::vector<K> h;
  if constexpr (std::is_same_v<K, TropicalInt>)
    h = detail::tropical_solve(d, xi);
  else
    h = detail::peel(d, xi);
  if (!pk_equal(omega(d, h), projectivize(xi))) fail(ErrorCode::PeelFailure, "recovered coordinates do not reproduce the point");
  return h;
}

struct PieceInfo {
  CellDescriptor desc;
  // beta^w cap phi(beta^{v w_I}); empty when phi is unavailable
  std::optional<IdSet> bound;
};

class Census {
 public:
  // Requires lambda with every coordinate positive.
  static Census build(const RepPtr& rep);

  const RepPtr& rep() const { return rep_; }
  const std::vector<PieceInfo>& pieces() const { return pieces_; }
  const CellDescriptor& piece(int p) const { return pieces_[p].desc; }
  int size() const { return static_cast<int>(pieces_.size()); }
  int find(WeylElt v, WeylElt w) const;
  int find_support(const IdSet& s) const;

  nlohmann::json to_json() const;

 private:
  RepPtr rep_;
  std::vector<PieceInfo> pieces_;
  std::map<IdSet, int> by_support_;
  std::map<std::pair<WeylElt, WeylElt>, int> by_pair_;
};

template <Semifield K>
struct Classified {
  int piece = -1;
  std::vector<K> h;
};

template <Semifield K>
Classified<K> classify(const Census& c, const VkVector<K>& xi) {
  IdSet s = xi.support();
  if (s.empty()) fail(ErrorCode::ZeroVector, "cannot classify the zero vector");
  int p = c.find_support(s);
  if (p < 0) fail(ErrorCode::UnknownSupport, "support matches no piece");
  return {p, invert_theta(c.piece(p), xi)};
}

// Applies a generator word and re-classifies.
template <Semifield K>
Classified<K> act(const Census& c, const GeneratorWord<K>& word, const VkVector<K>& xi) {
  classify(c, xi);
  return classify(c, apply_word(word, xi));
}

// phi of a (w w_I, v w_I)-point classifies as (v, w).
template <Semifield K>
Classified<K> phi_on_cells(const Census& c, const VkVector<K>& xi) {
  const WeylGroup& W = c.rep()->weyl();
  auto src = classify(c, xi);
  auto out = classify(c, phi_K(xi));
  const CellDescriptor& a = c.piece(src.piece);
  const CellDescriptor& b = c.piece(out.piece);
  if (b.v != W.mul(a.w, W.longest()) || b.w != W.mul(a.v, W.longest()))
    fail(ErrorCode::NotInCell, "phi image lands in " + W.name(b.v) + " <= " + W.name(b.w));
  return out;
}

}  // namespace tropflag
