#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "tropflag/repdata.hpp"
#include "tropflag/sampling.hpp"
#include "tropflag/semifield.hpp"

namespace tropflag {

// A formal K^!-combination of the canonical basis. Absent coefficients are
// the absent element; supp() lists the present ones.
template <Semifield K>
class VkVector {
 public:
  explicit VkVector(RepPtr rep) : rep_(std::move(rep)), c_(rep_->dim()) {}

  static VkVector basis_vector(RepPtr rep, int b, K coeff = K::one()) {
    VkVector v(std::move(rep));
    v.c_[b] = std::move(coeff);
    return v;
  }

  const RepresentationData& rep() const { return *rep_; }
  const RepPtr& rep_ptr() const { return rep_; }
  int dim() const { return static_cast<int>(c_.size()); }
  const Ext<K>& operator[](int b) const { return c_[b]; }
  Ext<K>& at(int b) { return c_[b]; }
  const std::vector<Ext<K>>& coeffs() const { return c_; }

  IdSet support() const {
    IdSet s;
    for (int b = 0; b < dim(); ++b)
      if (c_[b].present()) s.push_back(b);
    return s;
  }
  bool is_zero() const {
    for (const auto& x : c_)
      if (x.present()) return false;
    return true;
  }

  VkVector scaled(const K& k) const {
    VkVector out = *this;
    for (auto& x : out.c_)
      if (x.present()) x = x.value() * k;
    return out;
  }

  friend VkVector operator+(const VkVector& a, const VkVector& b) {
    check_same(a, b);
    VkVector out = a;
    for (int t = 0; t < a.dim(); ++t) out.c_[t] += b.c_[t];
    return out;
  }
  friend bool operator==(const VkVector& a, const VkVector& b) { return a.rep_ == b.rep_ && a.c_ == b.c_; }

  std::string str() const {
    std::string s = "(";
    for (int b = 0; b < dim(); ++b) {
      if (b) s += ", ";
      s += c_[b].str();
    }
    return s + ")";
  }

  nlohmann::json to_json() const {
    nlohmann::json coeffs = nlohmann::json::object();
    for (int b = 0; b < dim(); ++b)
      if (c_[b].present()) coeffs[std::to_string(b)] = c_[b].value().str();
    return {{"tag", std::string(tag_name(K::kTag))}, {"coeffs", coeffs}};
  }

  static VkVector from_json(RepPtr rep, const nlohmann::json& j);

 private:
  static void check_same(const VkVector& a, const VkVector& b) {
    if (a.rep_ != b.rep_ && a.rep_->to_json() != b.rep_->to_json())
      fail(ErrorCode::DimensionMismatch, "vectors over different modules");
  }
  RepPtr rep_;
  std::vector<Ext<K>> c_;
};

template <Semifield K>
VkVector<K> VkVector<K>::from_json(RepPtr rep, const nlohmann::json& j) {
  VkVector v(std::move(rep));
  try {
    if (j.contains("tag") && parse_tag(j.at("tag").get<std::string>()) != K::kTag)
      fail(ErrorCode::TagMismatch, "vector tag " + j.at("tag").get<std::string>() + " but semifield " + std::string(tag_name(K::kTag)));
    for (const auto& [key, val] : j.at("coeffs").items()) {
      int b = std::stoi(key);
      if (b < 0 || b >= v.dim()) fail(ErrorCode::SchemaError, "basis id " + key + " out of range");
      v.c_[b] = Ext<K>::parse(val.is_string() ? val.template get<std::string>() : val.dump());
    }
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::SchemaError, e.what());
  } catch (const std::invalid_argument& e) {
    fail(ErrorCode::SchemaError, e.what());
  }
  return v;
}

namespace detail {

template <Semifield K>
std::vector<K> powers(const K& k, int nmax) {
  std::vector<K> p{K::one()};
  for (int n = 1; n <= nmax; ++n) p.push_back(p.back() * k);
  return p;
}

template <Semifield K, class Col>
VkVector<K> divided_action(const VkVector<K>& xi, int i, const K& k, Col col) {
  const RepresentationData& rep = xi.rep();
  auto pw = powers(k, rep.nmax(i));
  VkVector<K> out(xi.rep_ptr());
  for (int b = 0; b < xi.dim(); ++b) {
    if (xi[b].is_absent()) continue;
    const K& x = xi[b].value();
    for (int n = 0; n <= rep.nmax(i); ++n) {
      const OpColumn& c = col(rep, i, n, b);
      if (c.empty()) continue;
      K kx = pw[n] * x;
      for (const auto& en : c) out.at(en.target) += Ext<K>(kx * K::from_natural(static_cast<std::uint64_t>(en.value)));
    }
  }
  return out;
}

}  // namespace detail

// i^k: b -> sum_n k^n e_i^{(n)} b
template <Semifield K>
VkVector<K> apply_e(int i, const K& k, const VkVector<K>& xi) {
  return detail::divided_action(xi, i, k, [](const RepresentationData& r, int a, int n, int b) -> const OpColumn& {
    return r.e_col(a, n, b);
  });
}

// (-i)^k: b -> sum_n k^n f_i^{(n)} b
template <Semifield K>
VkVector<K> apply_f(int i, const K& k, const VkVector<K>& xi) {
  return detail::divided_action(xi, i, k, [](const RepresentationData& r, int a, int n, int b) -> const OpColumn& {
    return r.f_col(a, n, b);
  });
}

// torus generator: b -> k^{z_i(b)} b
template <Semifield K>
VkVector<K> apply_torus(int i, const K& k, const VkVector<K>& xi) {
  VkVector<K> out(xi.rep_ptr());
  for (int b = 0; b < xi.dim(); ++b)
    if (xi[b].present()) out.at(b) = xi[b].value() * k.pow(xi.rep().pairing(i, b));
  return out;
}

inline bool support_within(const IdSet& supp, const IdSet& allowed) {
  return std::includes(allowed.begin(), allowed.end(), supp.begin(), supp.end());
}

// Coefficient of b' is sum_b d_{b,b',i,<i,nu_b>} xi_b; defined on all of V(K).
template <Semifield K>
VkVector<K> tau(int i, const VkVector<K>& xi) {
  const RepresentationData& rep = xi.rep();
  VkVector<K> out(xi.rep_ptr());
  for (int b = 0; b < xi.dim(); ++b) {
    if (xi[b].is_absent()) continue;
    for (const auto& en : rep.f_col(i, rep.pairing(i, b), b))
      out.at(en.target) += Ext<K>(xi[b].value() * K::from_natural(static_cast<std::uint64_t>(en.value)));
  }
  return out;
}

// tau restricted to V(K)^{e_i}; throws DomainViolation off that domain.
template <Semifield K>
VkVector<K> tau_checked(int i, const VkVector<K>& xi) {
  if (!support_within(xi.support(), xi.rep().beta_e(i)))
    fail(ErrorCode::DomainViolation, "tau_" + std::to_string(i + 1) + " applied outside V(K)^{e_i}");
  return tau(i, xi);
}

// Inverse bijection V(K)^{f_i} -> V(K)^{e_i} through e_i^{(-<i,nu_b>)}.
template <Semifield K>
VkVector<K> tau_inverse(int i, const VkVector<K>& xi) {
  const RepresentationData& rep = xi.rep();
  if (!support_within(xi.support(), rep.beta_f(i)))
    fail(ErrorCode::DomainViolation, "tau_" + std::to_string(i + 1) + " inverse applied outside V(K)^{f_i}");
  VkVector<K> out(xi.rep_ptr());
  for (int b = 0; b < xi.dim(); ++b) {
    if (xi[b].is_absent()) continue;
    for (const auto& en : rep.e_col(i, -rep.pairing(i, b), b))
      out.at(en.target) += Ext<K>(xi[b].value() * K::from_natural(static_cast<std::uint64_t>(en.value)));
  }
  return out;
}

template <Semifield K>
VkVector<K> phi_K(const VkVector<K>& xi) {
  VkVector<K> out(xi.rep_ptr());
  for (int b = 0; b < xi.dim(); ++b) out.at(b) = xi[xi.rep().phi(b)];
  return out;
}

// Coefficientwise image under a semifield homomorphism.
template <Semifield K2, Semifield K1, class Hom>
VkVector<K2> v_r(const VkVector<K1>& xi, Hom hom) {
  VkVector<K2> out(xi.rep_ptr());
  for (int b = 0; b < xi.dim(); ++b)
    if (xi[b].present()) out.at(b) = hom(xi[b].value());
  return out;
}

template <Semifield K>
VkVector<K> permute(const VkVector<K>& xi, const std::vector<int>& perm) {
  // coefficient of perm[b] in the image is xi_b
  VkVector<K> out(xi.rep_ptr());
  for (int b = 0; b < xi.dim(); ++b) out.at(perm[b]) = xi[b];
  return out;
}

// Orbit of a nonzero vector under scaling, normalized so that the least id in
// the support carries the unit.
template <Semifield K>
class PkPoint {
 public:
  explicit PkPoint(const VkVector<K>& xi) : v_(xi) {
    IdSet s = xi.support();
    if (s.empty()) fail(ErrorCode::ZeroVector, "cannot projectivize the zero vector");
    K inv = K::one() / xi[s.front()].value();
    v_ = xi.scaled(inv);
  }
  const VkVector<K>& vector() const { return v_; }
  IdSet support() const { return v_.support(); }
  friend bool operator==(const PkPoint& a, const PkPoint& b) { return a.v_ == b.v_; }

 private:
  VkVector<K> v_;
};

template <Semifield K>
PkPoint<K> projectivize(const VkVector<K>& xi) {
  return PkPoint<K>(xi);
}

template <Semifield K>
bool pk_equal(const PkPoint<K>& a, const PkPoint<K>& b) {
  return a == b;
}

// ---- generator words ----

enum class GenKind { E, F, Torus };

template <Semifield K>
struct Generator {
  GenKind kind;
  int i;
  K param;
};

// Written as a product; applied rightmost first.
template <Semifield K>
using GeneratorWord = std::vector<Generator<K>>;

template <Semifield K>
VkVector<K> apply(const Generator<K>& g, const VkVector<K>& xi) {
  switch (g.kind) {
    case GenKind::E:
      return apply_e(g.i, g.param, xi);
    case GenKind::F:
      return apply_f(g.i, g.param, xi);
    case GenKind::Torus:
      return apply_torus(g.i, g.param, xi);
  }
  return xi;
}

template <Semifield K>
VkVector<K> apply_word(const GeneratorWord<K>& word, VkVector<K> xi) {
  for (auto it = word.rbegin(); it != word.rend(); ++it) xi = apply(*it, xi);
  return xi;
}

// "f1^3 e2^1 t1^2": e is i^k, f is (-i)^k, t is the torus generator.
template <Semifield K>
GeneratorWord<K> parse_generator_word(std::string_view text, int rank) {
  GeneratorWord<K> word;
  std::size_t pos = 0;
  auto bad = [&](const std::string& why) { fail(ErrorCode::UsageError, "generator word '" + std::string(text) + "': " + why); };
  while (pos < text.size()) {
    while (pos < text.size() && text[pos] == ' ') ++pos;
    if (pos >= text.size()) break;
    std::size_t end = text.find(' ', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view tok = text.substr(pos, end - pos);
    pos = end;
    GenKind kind;
    switch (tok[0]) {
      case 'e':
        kind = GenKind::E;
        break;
      case 'f':
        kind = GenKind::F;
        break;
      case 't':
        kind = GenKind::Torus;
        break;
      default:
        bad("unknown generator '" + std::string(tok) + "'");
    }
    std::size_t caret = tok.find('^');
    if (caret == std::string_view::npos || caret < 2) bad("expected <kind><index>^<value>");
    int i = 0;
    for (std::size_t t = 1; t < caret; ++t) {
      if (tok[t] < '0' || tok[t] > '9') bad("bad index in '" + std::string(tok) + "'");
      i = i * 10 + (tok[t] - '0');
    }
    if (i < 1 || i > rank) bad("index out of range in '" + std::string(tok) + "'");
    word.push_back(Generator<K>{kind, i - 1, K::parse(tok.substr(caret + 1))});
  }
  return word;
}

template <Semifield K>
std::string format_generator_word(const GeneratorWord<K>& word) {
  std::string s;
  for (const auto& g : word) {
    if (!s.empty()) s += ' ';
    s += g.kind == GenKind::E ? 'e' : g.kind == GenKind::F ? 'f' : 't';
    s += std::to_string(g.i + 1) + "^" + g.param.str();
  }
  return s;
}

template <Semifield K>
GeneratorWord<K> random_generator_word(Rng& rng, int rank, int length, long radius = 3) {
  GeneratorWord<K> word;
  for (int t = 0; t < length; ++t) {
    auto kind = static_cast<GenKind>(uniform_int(rng, 0, 2));
    word.push_back(Generator<K>{kind, static_cast<int>(uniform_int(rng, 0, rank - 1)), random_element<K>(rng, radius)});
  }
  return word;
}

template <Semifield K>
VkVector<K> random_vector(Rng& rng, RepPtr rep, long radius = 3, double absent_prob = 0.3) {
  VkVector<K> v(rep);
  for (int b = 0; b < v.dim(); ++b) v.at(b) = random_ext<K>(rng, radius, absent_prob);
  return v;
}

// ---- relation and injectivity reports ----

struct RelationResult {
  std::string name;
  bool validated = false;  // exact identity in the rational model
  bool passed = false;
  int checks = 0;
  std::string witness;
};

struct RelationReport {
  SemifieldTag tag;
  std::vector<RelationResult> results;
  bool all_passed() const {
    for (const auto& r : results)
      if (!r.passed) return false;
    return true;
  }
  nlohmann::json to_json() const;
};

// Checks the relations R1-R6 column by column on random parameters. Each
// relation is first checked over the positive rationals; a relation that
// fails there is reported as unvalidated and not asserted for other tags.
RelationReport check_relations(const RepPtr& rep, SemifieldTag tag, int samples, Rng& rng);

struct InjectivityReport {
  SemifieldTag tag;
  int pairs = 0;
  bool injective = true;
  std::string witness;
  nlohmann::json to_json() const;
};

// Samples pairs xi != xi' and parameters k and looks for equal images under
// i^k or (-i)^k.
InjectivityReport check_injectivity(const RepPtr& rep, SemifieldTag tag, int samples, Rng& rng);

}  // namespace tropflag
