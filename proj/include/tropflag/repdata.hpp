#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "tropflag/error.hpp"
#include "tropflag/linalg.hpp"
#include "tropflag/rootdata.hpp"

namespace tropflag {

using IdSet = std::vector<int>;  // sorted basis ids

// One nonzero structure constant: coefficient `value` of basis element
// `target`.
struct OpEntry {
  int target;
  std::int64_t value;
  friend bool operator==(const OpEntry&, const OpEntry&) = default;
};
using OpColumn = std::vector<OpEntry>;

// Factor list of a divided-power monomial, read left to right: {(i, n), ...}
// stands for f_i^{(n)} ... applied to the highest weight vector.
using FMonomial = std::vector<std::pair<int, int>>;

struct BasisElement {
  int id = 0;
  Weight weight;
  std::string provenance;
};

// A basis element as a rational combination of words f_{w[0]} f_{w[1]} ...
// applied to the highest weight vector.
struct WordTerm {
  std::vector<int> word;
  mpq_class coeff;
};
using WordExpansion = std::vector<WordTerm>;

// Canonical-basis data of an irreducible highest weight module: weights,
// divided-power structure constants and the derived combinatorics.
// Immutable once constructed.
class RepresentationData {
 public:
  // Built-in construction for products of A1 and A2 components.
  static std::shared_ptr<const RepresentationData> build(const CartanDatum& cartan, const Weight& lambda);
  static std::shared_ptr<const RepresentationData> from_json(const nlohmann::json& j);
  static std::shared_ptr<const RepresentationData> load(const std::string& path);
  nlohmann::json to_json() const;
  void save(const std::string& path) const;

  const CartanDatum& cartan() const { return W_->cartan(); }
  const WeylGroup& weyl() const { return *W_; }
  std::shared_ptr<const WeylGroup> weyl_ptr() const { return W_; }
  int rank() const { return cartan().rank(); }
  const Weight& lambda() const { return lambda_; }
  int dim() const { return static_cast<int>(basis_.size()); }
  const std::vector<BasisElement>& basis() const { return basis_; }
  const Weight& weight(int b) const { return basis_[b].weight; }
  // <i, nu_b>, which is also z_i(b).
  int pairing(int i, int b) const { return basis_[b].weight[i]; }
  // Sum of the simple-root coefficients of lambda - nu_b.
  int depth(int b) const { return depth_[b]; }
  int xi_plus() const { return xi_plus_; }
  int xi_minus() const { return xi_minus_; }

  // Largest n with a nonzero f_i^{(n)} or e_i^{(n)}; higher powers vanish.
  int nmax(int i) const { return static_cast<int>(f_[i].size()); }
  // Column b of f_i^{(n)}: entries d_{b,b',i,n}. Empty for n > nmax(i);
  // for n == 0 the identity column.
  const OpColumn& f_col(int i, int n, int b) const;
  const OpColumn& e_col(int i, int n, int b) const;
  std::int64_t d(int b, int bp, int i, int n) const;
  std::int64_t c(int b, int bp, int i, int n) const;

  // Exact rational action on dense coordinate vectors (n < 0 gives zero).
  QVec apply_f(int i, int n, const QVec& v) const;
  QVec apply_e(int i, int n, const QVec& v) const;
  QVec unit(int b) const;

  // Available only when lambda = -w_I lambda; otherwise phi() throws.
  bool has_phi() const { return !phi_.empty(); }
  int phi(int b) const {
    if (phi_.empty()) fail(ErrorCode::UnsupportedType, "phi needs lambda = -w_I lambda");
    return phi_[b];
  }
  const std::vector<int>& phi_perm() const { return phi_; }
  int bw(WeylElt w) const { return bw_[w]; }
  const IdSet& beta_w(WeylElt w) const { return beta_w_[w]; }
  const IdSet& beta_e(int i) const { return beta_e_[i]; }
  const IdSet& beta_f(int i) const { return beta_f_[i]; }
  const WordExpansion& expansion(int b) const { return expansion_[b]; }

  // Basis ids grouped by weight.
  const std::map<Weight, IdSet>& weight_spaces() const { return by_weight_; }

 private:
  RepresentationData() = default;

  // Checks every invariant and computes the derived data.
  void finalize();
  void validate_ops() const;
  void compute_expansions();
  void compute_phi();
  void compute_bw();
  void compute_beta();

  std::shared_ptr<const WeylGroup> W_;
  Weight lambda_;
  std::vector<BasisElement> basis_;
  std::vector<int> depth_;
  // f_[i][n-1][b], e_[i][n-1][b]
  std::vector<std::vector<std::vector<OpColumn>>> f_, e_;
  std::vector<OpColumn> identity_;
  int xi_plus_ = 0;
  int xi_minus_ = 0;
  std::vector<int> phi_;
  std::vector<int> bw_;
  std::vector<IdSet> beta_w_;
  std::vector<IdSet> beta_e_, beta_f_;
  std::vector<WordExpansion> expansion_;
  std::map<Weight, IdSet> by_weight_;

  friend class RepBuilder;
};

using RepPtr = std::shared_ptr<const RepresentationData>;

// Product over positive roots of <alpha, lambda + rho> / <alpha, rho>.
mpz_class weyl_dimension(const CartanDatum& cartan, const Weight& lambda);
// Positive roots in simple-root coordinates.
std::vector<std::vector<int>> positive_roots(const CartanDatum& cartan);

std::string format_monomial(const FMonomial& m);

// Cache keyed by type and weight so repeated builds are shared.
RepPtr cached_rep(const CartanDatum& cartan, const Weight& lambda);

}  // namespace tropflag
