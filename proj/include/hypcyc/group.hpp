#pragma once

#include <algorithm>
#include <cstdint>
#include <deque>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "hypcyc/rational.hpp"

namespace hypcyc {

using Letter = int16_t;
using Word = std::vector<Letter>;

enum class GroupKind { free_group, finite_cyclic, free_product, infinite_dihedral };

struct LetterInfo {
  std::string name;
  Letter inverse;  // index of the inverse letter (self for involutions)
  int factor;      // free-product factor (or generator index in a free group)
  int exponent;    // +1 for the chosen generator, -1 for its formal inverse
};

// Concrete group models with exactly solvable word problems: free groups,
// finite cyclic groups, free products of finite cyclic groups, and the
// infinite dihedral group (handled as Z/2 * Z/2 with its own tag).
//
// Normal forms:
//   free group      - freely reduced words
//   finite cyclic   - t^k with exponent k in [0, n); stored as k letters
//   free product    - alternating syllables from distinct factors, each a
//                     nonzero canonical power of the factor generator
//
// Word length l_S is the word metric over the symmetric alphabet S, so a
// cyclic syllable t^k contributes min(k, n-k). For n >= 3 this differs from
// the letter count of the canonical word; the metric convention wins since
// d_S must be symmetric.
class GroupModel {
 public:
  static GroupModel free_group(int rank) {
    if (rank < 1) throw invalid_input_error("free_group: rank must be >= 1");
    GroupModel m;
    m.kind_ = GroupKind::free_group;
    m.rank_ = rank;
    for (int i = 0; i < rank; ++i) {
      std::string n = gen_name(i);
      std::string inv = n;
      inv[0] = char(std::toupper(inv[0]));
      m.letters_.push_back({n, Letter(2 * i + 1), i, +1});
      m.letters_.push_back({inv, Letter(2 * i), i, -1});
    }
    return m;
  }

  static GroupModel finite_cyclic(int order) {
    if (order < 1) throw invalid_input_error("finite_cyclic: order must be >= 1");
    GroupModel m;
    m.kind_ = GroupKind::finite_cyclic;
    m.orders_ = {order};
    m.add_cyclic_letters(0, order, "t");
    return m;
  }

  static GroupModel free_product(const std::vector<int>& orders) {
    if (orders.empty()) throw invalid_input_error("free_product: need at least one factor");
    GroupModel m;
    m.kind_ = GroupKind::free_product;
    m.orders_ = orders;
    for (size_t f = 0; f < orders.size(); ++f) {
      if (orders[f] < 2)
        throw invalid_input_error("free_product: factor orders must be >= 2");
      m.add_cyclic_letters(int(f), orders[f], gen_name(int(f)));
    }
    return m;
  }

  static GroupModel infinite_dihedral() {
    GroupModel m = free_product({2, 2});
    m.kind_ = GroupKind::infinite_dihedral;
    return m;
  }

  GroupKind kind() const { return kind_; }
  int rank() const { return rank_; }
  const std::vector<int>& factor_orders() const { return orders_; }
  int num_letters() const { return int(letters_.size()); }
  const LetterInfo& letter(Letter l) const { return letters_.at(size_t(l)); }
  Letter inverse_letter(Letter l) const { return letters_.at(size_t(l)).inverse; }

  bool is_finite() const {
    return kind_ == GroupKind::finite_cyclic;
  }
  long group_order() const {  // only meaningful when is_finite()
    return orders_.at(0);
  }

  // Canonical normal form of an arbitrary letter sequence.
  Word normalize(const Word& raw) const {
    for (Letter l : raw)
      if (l < 0 || l >= num_letters())
        throw invalid_input_error("normalize: unknown letter");
    if (kind_ == GroupKind::free_group) {
      Word out;
      for (Letter l : raw) {
        if (!out.empty() && out.back() == inverse_letter(l))
          out.pop_back();
        else
          out.push_back(l);
      }
      return out;
    }
    // Cyclic-factor models: fold into alternating syllables (factor, exponent).
    std::vector<std::pair<int, int>> syl;
    auto push = [&](int factor, int exp) {
      int n = orders_[size_t(factor)];
      if (!syl.empty() && syl.back().first == factor) {
        syl.back().second = mod(syl.back().second + exp, n);
        if (syl.back().second == 0) syl.pop_back();
      } else {
        exp = mod(exp, n);
        if (exp != 0) syl.push_back({factor, exp});
      }
    };
    // A vanishing syllable can make its neighbours adjacent; replay via stack.
    std::vector<std::pair<int, int>> stack;
    for (Letter l : raw) {
      const auto& li = letters_[size_t(l)];
      int n = orders_[size_t(li.factor)];
      if (!stack.empty() && stack.back().first == li.factor) {
        stack.back().second = mod(stack.back().second + li.exponent, n);
        if (stack.back().second == 0) stack.pop_back();
      } else {
        stack.push_back({li.factor, mod(li.exponent, n)});
        if (stack.back().second == 0) stack.pop_back();
      }
    }
    syl = std::move(stack);
    Word out;
    for (auto [factor, exp] : syl) {
      Letter pos = positive_letter_[size_t(factor)];
      for (int i = 0; i < exp; ++i) out.push_back(pos);
    }
    return out;
  }

  // Word-metric length of a normal form.
  int length(const Word& nf) const {
    if (kind_ == GroupKind::free_group) return int(nf.size());
    int len = 0;
    size_t i = 0;
    while (i < nf.size()) {
      int factor = letters_[size_t(nf[i])].factor;
      size_t j = i;
      while (j < nf.size() && letters_[size_t(nf[j])].factor == factor) ++j;
      int exp = int(j - i);
      int n = orders_[size_t(factor)];
      len += std::min(exp, n - exp);
      i = j;
    }
    return len;
  }

  Word inverse(const Word& nf) const {
    Word raw;
    raw.reserve(nf.size());
    for (auto it = nf.rbegin(); it != nf.rend(); ++it)
      raw.push_back(inverse_letter(*it));
    return normalize(raw);
  }

  Word multiply(const Word& a, const Word& b) const {
    Word raw;
    raw.reserve(a.size() + b.size());
    raw.insert(raw.end(), a.begin(), a.end());
    raw.insert(raw.end(), b.begin(), b.end());
    return normalize(raw);
  }

  std::string word_str(const Word& nf) const {
    if (nf.empty()) return "e";
    std::string s;
    for (Letter l : nf) s += letters_[size_t(l)].name;
    return s;
  }

  std::optional<Word> parse_word(const std::string& s) const {
    if (s == "e") return Word{};
    Word raw;
    for (char c : s) {
      bool found = false;
      for (Letter l = 0; l < num_letters(); ++l)
        if (letters_[size_t(l)].name == std::string(1, c)) {
          raw.push_back(l);
          found = true;
          break;
        }
      if (!found) return std::nullopt;
    }
    return normalize(raw);
  }

  bool same_model(const GroupModel& o) const { return this == &o; }

 private:
  static int mod(int a, int n) { return ((a % n) + n) % n; }
  static std::string gen_name(int i) { return std::string(1, char('a' + i)); }

  void add_cyclic_letters(int factor, int order, const std::string& name) {
    if (order == 2) {
      Letter idx = Letter(letters_.size());
      letters_.push_back({name, idx, factor, +1});
      positive_letter_.resize(size_t(factor) + 1);
      positive_letter_[size_t(factor)] = idx;
    } else {
      Letter idx = Letter(letters_.size());
      std::string inv = name;
      inv[0] = char(std::toupper(inv[0]));
      letters_.push_back({name, Letter(idx + 1), factor, +1});
      letters_.push_back({inv, idx, factor, -1});
      positive_letter_.resize(size_t(factor) + 1);
      positive_letter_[size_t(factor)] = idx;
    }
  }

  GroupKind kind_ = GroupKind::free_group;
  int rank_ = 0;
  std::vector<int> orders_;
  std::vector<LetterInfo> letters_;
  std::vector<Letter> positive_letter_;
};

// Immutable value: a group element in normal form, bound to its model.
class GroupElement {
 public:
  GroupElement() = default;
  GroupElement(const GroupModel& m, Word nf) : model_(&m), w_(std::move(nf)) {}

  static GroupElement identity(const GroupModel& m) { return GroupElement(m, {}); }
  static GroupElement from_letters(const GroupModel& m, const Word& raw) {
    return GroupElement(m, m.normalize(raw));
  }

  const GroupModel& model() const {
    if (!model_) throw invalid_input_error("GroupElement: unbound element");
    return *model_;
  }
  const Word& word() const { return w_; }
  bool is_identity() const { return w_.empty(); }
  int length() const { return model().length(w_); }
  std::string str() const { return model().word_str(w_); }

  GroupElement inverse() const { return GroupElement(model(), model().inverse(w_)); }

  friend GroupElement operator*(const GroupElement& a, const GroupElement& b) {
    if (&a.model() != &b.model())
      throw invalid_input_error("multiply: model mismatch");
    return GroupElement(a.model(), a.model().multiply(a.w_, b.w_));
  }

  GroupElement pow(long k) const {
    GroupElement r = identity(model());
    GroupElement base = k >= 0 ? *this : inverse();
    long n = k >= 0 ? k : -k;
    for (long i = 0; i < n; ++i) r = r * base;
    return r;
  }

  GroupElement conj(const GroupElement& g) const {  // g * x * g^-1
    return g * (*this) * g.inverse();
  }

  friend bool operator==(const GroupElement& a, const GroupElement& b) {
    return a.w_ == b.w_;
  }
  friend bool operator!=(const GroupElement& a, const GroupElement& b) {
    return !(a == b);
  }
  friend bool operator<(const GroupElement& a, const GroupElement& b) {
    return a.w_ < b.w_;
  }

 private:
  const GroupModel* model_ = nullptr;
  Word w_;
};

inline int dist(const GroupElement& a, const GroupElement& b) {
  return (a.inverse() * b).length();
}

struct WordHash {
  size_t operator()(const Word& w) const {
    size_t h = 1469598103934665603ull;
    for (Letter l : w) {
      h ^= size_t(uint16_t(l)) + 0x9e3779b97f4a7c15ull;
      h *= 1099511628211ull;
    }
    return h;
  }
};

// Finite radius-R ball around the identity, with its word metric.
// Elements are indexed in (length, lex) order; that order is the tie-break
// used throughout. Distances are evaluated algebraically through normal
// forms, which agrees with the Cayley-graph distance; a cached table is
// materialized for small balls.
class CayleyBall {
 public:
  CayleyBall(const GroupModel& m, int radius, size_t element_cap = 50000)
      : model_(&m), radius_(radius) {
    if (radius < 0) throw invalid_input_error("ball: radius must be >= 0");
    std::unordered_map<Word, int, WordHash> seen;
    std::deque<Word> queue;
    seen.emplace(Word{}, 0);
    queue.push_back({});
    std::vector<Word> found{Word{}};
    while (!queue.empty()) {
      Word cur = std::move(queue.front());
      queue.pop_front();
      for (Letter l = 0; l < m.num_letters(); ++l) {
        Word nxt = m.multiply(cur, Word{l});
        if (m.length(nxt) > radius) continue;
        if (seen.count(nxt)) continue;
        if (found.size() >= element_cap)
          throw resource_limit_error("ball: element cap exceeded");
        seen.emplace(nxt, 0);
        found.push_back(nxt);
        queue.push_back(std::move(nxt));
      }
    }
    std::sort(found.begin(), found.end(), [&](const Word& a, const Word& b) {
      int la = m.length(a), lb = m.length(b);
      if (la != lb) return la < lb;
      return a < b;
    });
    elems_.reserve(found.size());
    for (size_t i = 0; i < found.size(); ++i) {
      index_.emplace(found[i], int(i));
      elems_.emplace_back(m, std::move(found[i]));
    }
    if (elems_.size() <= 4096) {
      size_t n = elems_.size();
      table_.assign(n * n, uint16_t(0));
      for (size_t i = 0; i < n; ++i) {
        GroupElement gi_inv = elems_[i].inverse();
        for (size_t j = i + 1; j < n; ++j) {
          uint16_t d = uint16_t((gi_inv * elems_[j]).length());
          table_[i * n + j] = d;
          table_[j * n + i] = d;
        }
      }
    }
  }

  const GroupModel& model() const { return *model_; }
  int radius() const { return radius_; }
  size_t size() const { return elems_.size(); }
  const GroupElement& element(int i) const { return elems_.at(size_t(i)); }
  const std::vector<GroupElement>& elements() const { return elems_; }

  std::optional<int> index_of(const GroupElement& g) const {
    auto it = index_.find(g.word());
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }
  bool contains(const GroupElement& g) const { return index_.count(g.word()) > 0; }

  int dist(int i, int j) const {
    if (!table_.empty()) return table_[size_t(i) * elems_.size() + size_t(j)];
    return hypcyc::dist(elems_.at(size_t(i)), elems_.at(size_t(j)));
  }

  bool on_boundary(const GroupElement& g) const { return g.length() == radius_; }

 private:
  const GroupModel* model_;
  int radius_;
  std::vector<GroupElement> elems_;
  std::unordered_map<Word, int, WordHash> index_;
  std::vector<uint16_t> table_;
};

inline CayleyBall ball(const GroupModel& m, int radius, size_t cap = 50000) {
  return CayleyBall(m, radius, cap);
}

}  // namespace hypcyc
