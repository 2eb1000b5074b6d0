#include "tropflag/rootdata.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <functional>
#include <set>
#include <sstream>

#include "tropflag/error.hpp"

namespace tropflag {

namespace {

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    std::size_t pos = s.find(sep, start);
    out.push_back(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

int parse_int(std::string_view s, ErrorCode code) {
  s = trim(s);
  if (s.empty()) fail(code, "empty integer");
  bool neg = false;
  if (s[0] == '-' || s[0] == '+') {
    neg = s[0] == '-';
    s.remove_prefix(1);
  }
  if (s.empty() || s.size() > 9) fail(code, "bad integer '" + std::string(s) + "'");
  int v = 0;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) fail(code, "bad integer '" + std::string(s) + "'");
    v = v * 10 + (c - '0');
  }
  return neg ? -v : v;
}

}  // namespace

// ---- CartanDatum ----

CartanDatum::CartanDatum(std::vector<std::vector<int>> a, std::string name) : a_(std::move(a)), name_(std::move(name)) {
  const int n = rank();
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(a_[i].size()) != n) fail(ErrorCode::SchemaError, "Cartan matrix is not square");
    if (a_[i][i] != 2) fail(ErrorCode::SchemaError, "Cartan matrix diagonal must be 2");
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      if (a_[i][j] != 0 && a_[i][j] != -1) fail(ErrorCode::UnsupportedType, "only simply-laced Cartan matrices are supported");
      if (a_[i][j] != a_[j][i]) fail(ErrorCode::SchemaError, "Cartan matrix must be symmetric");
    }
  }
  // Connected components; each must be a path (type A) for a type name.
  std::vector<int> comp(n, -1);
  for (int s = 0; s < n; ++s) {
    if (comp[s] >= 0) continue;
    int id = static_cast<int>(components_.size());
    std::vector<int> stack{s};
    comp[s] = id;
    int size = 0, edges = 0;
    bool path = true;
    while (!stack.empty()) {
      int i = stack.back();
      stack.pop_back();
      ++size;
      int deg = 0;
      for (int j = 0; j < n; ++j) {
        if (j == i || a_[i][j] == 0) continue;
        ++deg;
        ++edges;
        if (comp[j] < 0) {
          comp[j] = id;
          stack.push_back(j);
        }
      }
      if (deg > 2) path = false;
    }
    if (edges / 2 != size - 1) path = false;
    components_.push_back({path ? 'A' : '?', size});
  }
  if (name_.empty()) {
    for (std::size_t c = 0; c < components_.size(); ++c) {
      if (c) name_ += 'x';
      name_ += components_[c].first;
      name_ += std::to_string(components_[c].second);
    }
  }
}

CartanDatum CartanDatum::from_type(std::string_view type) {
  std::vector<int> ranks;
  for (auto part : split(trim(type), 'x')) {
    part = trim(part);
    if (part.size() < 2 || (part[0] != 'A' && part[0] != 'a'))
      fail(ErrorCode::UnsupportedType, "unsupported type '" + std::string(type) + "'");
    int r = parse_int(part.substr(1), ErrorCode::UnsupportedType);
    if (r < 1) fail(ErrorCode::UnsupportedType, "rank must be positive in '" + std::string(type) + "'");
    ranks.push_back(r);
  }
  int n = 0;
  for (int r : ranks) n += r;
  std::vector<std::vector<int>> a(n, std::vector<int>(n, 0));
  int off = 0;
  for (int r : ranks) {
    for (int i = 0; i < r; ++i) {
      a[off + i][off + i] = 2;
      if (i + 1 < r) a[off + i][off + i + 1] = a[off + i + 1][off + i] = -1;
    }
    off += r;
  }
  return CartanDatum(std::move(a));
}

CartanDatum CartanDatum::from_json(const nlohmann::json& j) {
  try {
    if (j.contains("edges") && !j["edges"].is_null())
      return CartanDatum(j["edges"].get<std::vector<std::vector<int>>>());
    std::string type;
    for (const auto& c : j.at("components")) {
      if (!type.empty()) type += 'x';
      type += c.at("type").get<std::string>() + std::to_string(c.at("rank").get<int>());
    }
    if (type.empty()) fail(ErrorCode::SchemaError, "Cartan datum without components");
    return from_type(type);
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::SchemaError, std::string("Cartan datum: ") + e.what());
  }
}

nlohmann::json CartanDatum::to_json() const {
  nlohmann::json comps = nlohmann::json::array();
  for (auto [t, r] : components_) comps.push_back({{"type", std::string(1, t)}, {"rank", r}});
  nlohmann::json j{{"components", comps}};
  // The matrix pins down the index order, which the type list alone does not.
  j["edges"] = a_;
  return j;
}

Weight CartanDatum::simple_root(int i) const {
  Weight a(rank());
  for (int j = 0; j < rank(); ++j) a[j] = a_[j][i];
  return a;
}

Weight CartanDatum::reflect(int i, const Weight& mu) const {
  Weight out = mu;
  int c = mu[i];
  if (c == 0) return out;
  for (int j = 0; j < rank(); ++j) out[j] -= c * a_[j][i];
  return out;
}

// ---- weights ----

Weight parse_weight(std::string_view text, int rank) {
  Weight w;
  for (auto part : split(trim(text), ',')) w.push_back(parse_int(part, ErrorCode::UsageError));
  if (static_cast<int>(w.size()) != rank)
    fail(ErrorCode::UsageError, "weight '" + std::string(text) + "' needs " + std::to_string(rank) + " coordinates");
  return w;
}

std::string format_weight(const Weight& w) {
  std::string s;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(w[i]);
  }
  return s;
}

bool is_dominant(const Weight& w) {
  return std::all_of(w.begin(), w.end(), [](int c) { return c >= 0; });
}

bool is_very_dominant(const Weight& w) {
  return std::all_of(w.begin(), w.end(), [](int c) { return c >= 1; });
}

Weight operator+(const Weight& a, const Weight& b) {
  Weight c = a;
  for (std::size_t i = 0; i < c.size(); ++i) c[i] += b[i];
  return c;
}

Weight operator-(const Weight& a, const Weight& b) {
  Weight c = a;
  for (std::size_t i = 0; i < c.size(); ++i) c[i] -= b[i];
  return c;
}

Weight scaled(const Weight& a, int k) {
  Weight c = a;
  for (auto& x : c) x *= k;
  return c;
}

// ---- WeylGroup ----

WeylGroup::WeylGroup(CartanDatum cartan, std::size_t bound) : cartan_(std::move(cartan)) {
  const int n = rank();
  Weight rho(n, 1);
  orbit_.push_back(rho);
  index_[rho] = 0;
  length_.push_back(0);
  word_.push_back({});
  left_.push_back(std::vector<WeylElt>(n, -1));
  // Breadth-first search by left multiplication: distance from e is length.
  for (std::size_t cur = 0; cur < orbit_.size(); ++cur) {
    for (int i = 0; i < n; ++i) {
      Weight mu = cartan_.reflect(i, orbit_[cur]);
      auto it = index_.find(mu);
      WeylElt next;
      if (it == index_.end()) {
        if (orbit_.size() >= bound)
          fail(ErrorCode::BoundExceeded, "Weyl group larger than " + std::to_string(bound));
        next = static_cast<WeylElt>(orbit_.size());
        index_[mu] = next;
        orbit_.push_back(mu);
        length_.push_back(length_[cur] + 1);
        std::vector<int> wd{i};
        wd.insert(wd.end(), word_[cur].begin(), word_[cur].end());
        word_.push_back(std::move(wd));
        left_.push_back(std::vector<WeylElt>(n, -1));
      } else {
        next = it->second;
      }
      left_[cur][i] = next;
    }
  }
  const int N = size();
  right_.assign(N, std::vector<WeylElt>(n, -1));
  for (WeylElt w = 0; w < N; ++w)
    for (int i = 0; i < n; ++i) {
      std::vector<int> wd = word_[w];
      wd.push_back(i);
      right_[w][i] = from_word(wd);
    }
  for (WeylElt w = 0; w < N; ++w)
    if (length_[w] > length_[longest_]) longest_ = w;
  // Replace stored words by the lexicographically least reduced word.
  std::vector<std::vector<int>> least(N);
  std::vector<WeylElt> order(N);
  for (WeylElt w = 0; w < N; ++w) order[w] = w;
  std::stable_sort(order.begin(), order.end(), [&](WeylElt a, WeylElt b) { return length_[a] < length_[b]; });
  for (WeylElt w : order) {
    if (length_[w] == 0) continue;
    bool have = false;
    for (int i = 0; i < n; ++i) {
      WeylElt u = left_[w][i];
      if (length_[u] >= length_[w]) continue;
      std::vector<int> cand{i};
      cand.insert(cand.end(), least[u].begin(), least[u].end());
      if (!have || cand < least[w]) least[w] = std::move(cand);
      have = true;
    }
  }
  word_ = std::move(least);
}

WeylElt WeylGroup::from_word(const std::vector<int>& word) const {
  WeylElt w = 0;
  for (auto it = word.rbegin(); it != word.rend(); ++it) {
    if (*it < 0 || *it >= rank()) fail(ErrorCode::UsageError, "generator index out of range");
    w = left_[w][*it];
  }
  return w;
}

WeylElt WeylGroup::mul(WeylElt u, WeylElt v) const {
  WeylElt w = v;
  const auto& wd = word_[u];
  for (auto it = wd.rbegin(); it != wd.rend(); ++it) w = left_[w][*it];
  return w;
}

WeylElt WeylGroup::inverse(WeylElt w) const {
  std::vector<int> wd(word_[w].rbegin(), word_[w].rend());
  return from_word(wd);
}

std::vector<std::vector<int>> WeylGroup::reduced_words(WeylElt w) const {
  std::vector<std::vector<int>> out;
  std::vector<int> suffix;
  std::function<void(WeylElt)> rec = [&](WeylElt x) {
    if (length_[x] == 0) {
      out.emplace_back(suffix.rbegin(), suffix.rend());
      return;
    }
    for (int i = 0; i < rank(); ++i) {
      WeylElt y = right_[x][i];
      if (length_[y] < length_[x]) {
        suffix.push_back(i);
        rec(y);
        suffix.pop_back();
      }
    }
  };
  rec(w);
  std::sort(out.begin(), out.end());
  return out;
}

bool WeylGroup::is_reduced(const std::vector<int>& word) const {
  return length_[from_word(word)] == static_cast<int>(word.size());
}

const std::vector<bool>& WeylGroup::below(WeylElt w) const {
  auto it = below_cache_.find(w);
  if (it != below_cache_.end()) return it->second;
  std::vector<bool> set(size(), false);
  set[0] = true;
  for (int i : word_[w]) {
    std::vector<bool> next = set;
    for (WeylElt u = 0; u < size(); ++u)
      if (set[u]) next[right_[u][i]] = true;
    set = std::move(next);
  }
  return below_cache_.emplace(w, std::move(set)).first->second;
}

bool WeylGroup::bruhat_leq(WeylElt v, WeylElt w) const {
  if (length_[v] > length_[w]) return false;
  return below(w)[v];
}

Weight WeylGroup::act(WeylElt w, const Weight& mu) const {
  Weight out = mu;
  const auto& wd = word_[w];
  for (auto it = wd.rbegin(); it != wd.rend(); ++it) out = cartan_.reflect(*it, out);
  return out;
}

std::string WeylGroup::name(WeylElt w) const {
  if (length_[w] == 0) return "e";
  std::string s;
  for (int i : word_[w]) s += "s" + std::to_string(i + 1);
  return s;
}

WeylElt WeylGroup::parse(std::string_view text) const {
  text = trim(text);
  if (text == "e" || text.empty()) return 0;
  std::vector<int> wd;
  std::size_t pos = 0;
  while (pos < text.size()) {
    if (text[pos] != 's') fail(ErrorCode::UsageError, "bad Weyl element '" + std::string(text) + "'");
    ++pos;
    std::size_t start = pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
    if (start == pos) fail(ErrorCode::UsageError, "bad Weyl element '" + std::string(text) + "'");
    int i = parse_int(text.substr(start, pos - start), ErrorCode::UsageError) - 1;
    if (i < 0 || i >= rank()) fail(ErrorCode::UsageError, "generator out of range in '" + std::string(text) + "'");
    wd.push_back(i);
  }
  return from_word(wd);
}

std::vector<WeylElt> WeylGroup::elements() const {
  std::vector<WeylElt> out(size());
  for (WeylElt w = 0; w < size(); ++w) out[w] = w;
  std::sort(out.begin(), out.end(), [&](WeylElt a, WeylElt b) {
    if (length_[a] != length_[b]) return length_[a] < length_[b];
    return word_[a] < word_[b];
  });
  return out;
}

std::vector<int> parse_word(std::string_view text) {
  std::vector<int> wd;
  text = trim(text);
  if (text.empty() || text == "e") return wd;
  for (auto part : split(text, ',')) {
    int i = parse_int(part, ErrorCode::UsageError);
    if (i < 1) fail(ErrorCode::UsageError, "generator indices are 1-based");
    wd.push_back(i - 1);
  }
  return wd;
}

std::string format_word(const std::vector<int>& word) {
  std::string s;
  for (std::size_t k = 0; k < word.size(); ++k) {
    if (k) s += ',';
    s += std::to_string(word[k] + 1);
  }
  return s;
}

// ---- positive subexpressions ----

bool is_positive_subexpression(const WeylGroup& W, WeylElt v, const std::vector<int>& word,
                               const std::vector<bool>& q) {
  WeylElt prefix = W.identity();
  for (std::size_t k = 0; k < word.size(); ++k) {
    WeylElt ext = W.right(prefix, word[k]);
    // prefix <= prefix * s_{i_k}
    if (!W.bruhat_leq(prefix, ext)) return false;
    WeylElt next = q[k] ? ext : prefix;
    if (!W.bruhat_leq(prefix, next)) return false;
    prefix = next;
  }
  return prefix == v;
}

PositiveSubexpression positive_subexpression(const WeylGroup& W, WeylElt v, const std::vector<int>& word) {
  WeylElt w = W.from_word(word);
  if (!W.is_reduced(word)) fail(ErrorCode::UsageError, "word " + format_word(word) + " is not reduced");
  if (!W.bruhat_leq(v, w)) fail(ErrorCode::NotBruhatBelow, W.name(v) + " is not below " + W.name(w));
  const std::size_t m = word.size();
  PositiveSubexpression p;
  p.v = v;
  p.w = w;
  p.word = word;
  p.q.assign(m, false);
  WeylElt x = v;
  for (std::size_t k = m; k-- > 0;) {
    WeylElt y = W.right(x, word[k]);
    if (W.length(y) < W.length(x)) {
      p.q[k] = true;
      x = y;
    }
  }
  if (x != W.identity() || !is_positive_subexpression(W, v, word, p.q))
    fail(ErrorCode::InvariantViolation, "greedy positive subexpression failed its defining conditions");
  for (std::size_t k = 0; k < m; ++k) (p.q[k] ? p.doubleprimes : p.primes).push_back(static_cast<int>(k));
  return p;
}

// ---- diagram automorphisms ----

DiagramAutomorphism::DiagramAutomorphism(const CartanDatum& cartan, std::vector<int> perm) : perm_(std::move(perm)) {
  const int n = cartan.rank();
  if (static_cast<int>(perm_.size()) != n) fail(ErrorCode::InvalidAutomorphism, "permutation has wrong size");
  std::vector<bool> seen(n, false);
  for (int i : perm_) {
    if (i < 0 || i >= n || seen[i]) fail(ErrorCode::InvalidAutomorphism, "not a permutation of the index set");
    seen[i] = true;
  }
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j)
      if (cartan(perm_[i], perm_[j]) != cartan(i, j))
        fail(ErrorCode::InvalidAutomorphism, "permutation does not preserve the Cartan matrix");
    if (perm_[i] != i && cartan(i, perm_[i]) != 0)
      fail(ErrorCode::InvalidAutomorphism, "s_i and s_delta(i) must commute");
  }
  orbit_index_.assign(n, -1);
  for (int i = 0; i < n; ++i) {
    if (orbit_index_[i] >= 0) continue;
    std::vector<int> orbit;
    for (int j = i; orbit_index_[j] < 0; j = perm_[j]) {
      orbit_index_[j] = static_cast<int>(orbits_.size());
      orbit.push_back(j);
    }
    std::sort(orbit.begin(), orbit.end());
    orbits_.push_back(std::move(orbit));
  }
}

DiagramAutomorphism DiagramAutomorphism::identity(const CartanDatum& cartan) {
  std::vector<int> p(cartan.rank());
  for (int i = 0; i < cartan.rank(); ++i) p[i] = i;
  return DiagramAutomorphism(cartan, std::move(p));
}

DiagramAutomorphism DiagramAutomorphism::parse(const CartanDatum& cartan, std::string_view text) {
  std::vector<int> p(cartan.rank());
  for (int i = 0; i < cartan.rank(); ++i) p[i] = i;
  text = trim(text);
  if (!text.empty() && text != "id") {
    for (auto part : split(text, ',')) {
      auto kv = split(part, ':');
      if (kv.size() != 2) fail(ErrorCode::UsageError, "automorphism entries look like 1:2");
      int a = parse_int(kv[0], ErrorCode::UsageError) - 1;
      int b = parse_int(kv[1], ErrorCode::UsageError) - 1;
      if (a < 0 || a >= cartan.rank() || b < 0 || b >= cartan.rank())
        fail(ErrorCode::InvalidAutomorphism, "index out of range in '" + std::string(text) + "'");
      p[a] = b;
    }
  }
  return DiagramAutomorphism(cartan, std::move(p));
}

Weight DiagramAutomorphism::apply(const Weight& mu) const {
  Weight out(mu.size());
  for (std::size_t i = 0; i < mu.size(); ++i) out[perm_[i]] = mu[i];
  return out;
}

bool DiagramAutomorphism::is_identity() const {
  for (std::size_t i = 0; i < perm_.size(); ++i)
    if (perm_[i] != static_cast<int>(i)) return false;
  return true;
}

// ---- fixed subgroup ----

FixedSubgroup::FixedSubgroup(std::shared_ptr<const WeylGroup> W, DiagramAutomorphism delta)
    : W_(std::move(W)), delta_(std::move(delta)) {
  const auto& orbits = delta_.orbits();
  std::vector<WeylElt> gens;
  for (const auto& o : orbits) gens.push_back(W_->from_word(o));
  delta_length_[W_->identity()] = 0;
  blocks_[W_->identity()] = {};
  elements_.push_back(W_->identity());
  for (std::size_t cur = 0; cur < elements_.size(); ++cur) {
    WeylElt x = elements_[cur];
    for (std::size_t g = 0; g < gens.size(); ++g) {
      WeylElt y = W_->mul(x, gens[g]);
      if (delta_length_.count(y)) continue;
      delta_length_[y] = delta_length_[x] + 1;
      auto b = blocks_[x];
      b.push_back(static_cast<int>(g));
      blocks_[y] = std::move(b);
      elements_.push_back(y);
    }
  }
  // Keep the lexicographically least block word for each element among
  // equal-length candidates.
  for (WeylElt x : elements_) {
    if (delta_length_[x] == 0) continue;
    for (std::size_t g = 0; g < gens.size(); ++g) {
      WeylElt y = W_->mul(x, gens[g]);
      if (delta_length_[y] != delta_length_[x] + 1) continue;
      auto b = blocks_[x];
      b.push_back(static_cast<int>(g));
      if (b < blocks_[y]) blocks_[y] = std::move(b);
    }
  }
}

int FixedSubgroup::delta_length(WeylElt w) const {
  auto it = delta_length_.find(w);
  if (it == delta_length_.end()) fail(ErrorCode::UsageError, W_->name(w) + " is not delta-fixed");
  return it->second;
}

std::vector<int> FixedSubgroup::adapted_blocks(WeylElt w) const {
  auto it = blocks_.find(w);
  if (it == blocks_.end()) fail(ErrorCode::UsageError, W_->name(w) + " is not delta-fixed");
  return it->second;
}

std::vector<int> FixedSubgroup::adapted_word(WeylElt w) const {
  std::vector<int> word;
  for (int g : adapted_blocks(w))
    for (int i : delta_.orbits()[g]) word.push_back(i);
  return word;
}

}  // namespace tropflag
