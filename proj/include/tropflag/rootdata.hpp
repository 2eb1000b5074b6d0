#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace tropflag {

// Fundamental-weight coordinates <i, mu>, one per simple index.
using Weight = std::vector<int>;

// Simply-laced Cartan matrix, possibly reducible. Indices are 0-based
// internally and 1-based in every textual interface.
class CartanDatum {
 public:
  CartanDatum() = default;
  explicit CartanDatum(std::vector<std::vector<int>> a, std::string name = "");

  // "A2", "A1xA1", "A3", "A2xA1", ...
  static CartanDatum from_type(std::string_view type);
  static CartanDatum from_json(const nlohmann::json& j);
  nlohmann::json to_json() const;

  int rank() const { return static_cast<int>(a_.size()); }
  int operator()(int i, int j) const { return a_[i][j]; }
  const std::vector<std::vector<int>>& matrix() const { return a_; }
  const std::string& name() const { return name_; }
  // Component types in order, e.g. {{'A',1},{'A',1}}.
  const std::vector<std::pair<char, int>>& components() const { return components_; }

  // Coordinates of the simple root alpha_i: <j, alpha_i> = a_{ji}.
  Weight simple_root(int i) const;
  // mu - <i,mu> alpha_i
  Weight reflect(int i, const Weight& mu) const;

  friend bool operator==(const CartanDatum& a, const CartanDatum& b) { return a.a_ == b.a_; }

 private:
  std::vector<std::vector<int>> a_;
  std::string name_;
  std::vector<std::pair<char, int>> components_;
};

Weight parse_weight(std::string_view text, int rank);
std::string format_weight(const Weight& w);
bool is_dominant(const Weight& w);
bool is_very_dominant(const Weight& w);
Weight operator+(const Weight& a, const Weight& b);
Weight operator-(const Weight& a, const Weight& b);
Weight scaled(const Weight& a, int c);

using WeylElt = int;

// Finite Weyl group enumerated as the orbit of rho, with multiplication
// tables for simple reflections on both sides.
class WeylGroup {
 public:
  explicit WeylGroup(CartanDatum cartan, std::size_t bound = 100000);

  const CartanDatum& cartan() const { return cartan_; }
  int rank() const { return cartan_.rank(); }
  int size() const { return static_cast<int>(length_.size()); }
  WeylElt identity() const { return 0; }
  WeylElt longest() const { return longest_; }
  int length(WeylElt w) const { return length_[w]; }

  WeylElt left(int i, WeylElt w) const { return left_[w][i]; }    // s_i w
  WeylElt right(WeylElt w, int i) const { return right_[w][i]; }  // w s_i
  WeylElt mul(WeylElt u, WeylElt v) const;
  WeylElt inverse(WeylElt w) const;
  WeylElt from_word(const std::vector<int>& word) const;

  // Lexicographically least reduced word.
  const std::vector<int>& word(WeylElt w) const { return word_[w]; }
  // All reduced words, sorted lexicographically.
  std::vector<std::vector<int>> reduced_words(WeylElt w) const;
  bool is_reduced(const std::vector<int>& word) const;

  bool bruhat_leq(WeylElt v, WeylElt w) const;
  // Indicator of the interval [e, w], from subwords of word(w).
  const std::vector<bool>& below(WeylElt w) const;

  // w applied to a weight.
  Weight act(WeylElt w, const Weight& mu) const;

  // "e", "s1s2s1"
  std::string name(WeylElt w) const;
  WeylElt parse(std::string_view text) const;

  // Elements sorted by (length, lexicographic least reduced word).
  std::vector<WeylElt> elements() const;

 private:
  CartanDatum cartan_;
  std::vector<Weight> orbit_;  // w(rho)
  std::map<Weight, WeylElt> index_;
  std::vector<int> length_;
  std::vector<std::vector<WeylElt>> left_, right_;
  std::vector<std::vector<int>> word_;
  WeylElt longest_ = 0;
  mutable std::map<WeylElt, std::vector<bool>> below_cache_;
};

// Words are 0-based generator indices; "1,2,1" in text.
std::vector<int> parse_word(std::string_view text);
std::string format_word(const std::vector<int>& word);

// q_k = s_{i_k} at positions in `doubleprimes`, q_k = 1 at `primes`; both
// lists hold 0-based positions in increasing order.
struct PositiveSubexpression {
  WeylElt v = 0;
  WeylElt w = 0;
  std::vector<int> word;
  std::vector<bool> q;
  std::vector<int> primes;
  std::vector<int> doubleprimes;
};

// Unique subexpression with q_1...q_m = v whose prefix products increase
// weakly and satisfy prefix <= prefix * s_{i_k}. Greedy from the right, then
// the defining conditions are verified.
PositiveSubexpression positive_subexpression(const WeylGroup& W, WeylElt v, const std::vector<int>& word);
// True when q satisfies every defining condition for (v, word).
bool is_positive_subexpression(const WeylGroup& W, WeylElt v, const std::vector<int>& word,
                               const std::vector<bool>& q);

// Diagram automorphism given as a permutation of the simple indices.
class DiagramAutomorphism {
 public:
  DiagramAutomorphism(const CartanDatum& cartan, std::vector<int> perm);
  static DiagramAutomorphism identity(const CartanDatum& cartan);
  // "1:2,2:1" (1-based); unspecified indices are fixed.
  static DiagramAutomorphism parse(const CartanDatum& cartan, std::string_view text);

  int operator()(int i) const { return perm_[i]; }
  const std::vector<int>& perm() const { return perm_; }
  // Orbits sorted by least member; members sorted.
  const std::vector<std::vector<int>>& orbits() const { return orbits_; }
  int orbit_of(int i) const { return orbit_index_[i]; }
  Weight apply(const Weight& mu) const;
  bool is_identity() const;

 private:
  std::vector<int> perm_;
  std::vector<std::vector<int>> orbits_;
  std::vector<int> orbit_index_;
};

// W^delta generated by orbit products, with delta-length.
class FixedSubgroup {
 public:
  FixedSubgroup(std::shared_ptr<const WeylGroup> W, DiagramAutomorphism delta);

  const WeylGroup& weyl() const { return *W_; }
  const DiagramAutomorphism& delta() const { return delta_; }

  const std::vector<WeylElt>& elements() const { return elements_; }
  bool contains(WeylElt w) const { return delta_length_.count(w) > 0; }
  int delta_length(WeylElt w) const;
  // Reduced word made of orbit blocks (each block lists its orbit).
  std::vector<int> adapted_word(WeylElt w) const;
  // Orbit-product generator index per block position of adapted_word.
  std::vector<int> adapted_blocks(WeylElt w) const;
  int size() const { return static_cast<int>(elements_.size()); }

 private:
  std::shared_ptr<const WeylGroup> W_;
  DiagramAutomorphism delta_;
  std::vector<WeylElt> elements_;
  std::map<WeylElt, int> delta_length_;
  std::map<WeylElt, std::vector<int>> blocks_;
};

}  // namespace tropflag
