#include "treeprop/embedding.hpp"

#include <algorithm>

#include "treeprop/errors.hpp"

namespace treeprop {

namespace {

class EmbeddingSearch {
 public:
  EmbeddingSearch(const FinStructure& a, const FinStructure& b, std::size_t limit)
      : a_(a), b_(b), symbols_(a.signature().function_symbols()), order_(a.domain()),
        limit_(limit) {}

  bool seed(const ElementMap& partial) {
    std::vector<Elem> trail;
    for (const auto& [x, y] : partial) {
      if (!a_.contains(x) || !b_.contains(y)) return false;
      if (!assign(x, y, trail)) return false;
    }
    return true;
  }

  void run() { dfs(0); }

  std::vector<ElementMap> found;

 private:
  bool assign(Elem x, Elem y, std::vector<Elem>& trail) {
    if (auto it = h_.find(x); it != h_.end()) return it->second == y;
    if (!b_.contains(y) || used_.count(y) || a_.sort_of(x) != b_.sort_of(y)) return false;
    h_.emplace(x, y);
    used_.insert(y);
    trail.push_back(x);
    for (const auto& g : symbols_) {
      if (!assign(a_.apply(g, x), b_.apply(g, y), trail)) return false;
    }
    return true;
  }

  void undo(std::vector<Elem>& trail) {
    for (Elem x : trail) {
      used_.erase(h_.at(x));
      h_.erase(x);
    }
    trail.clear();
  }

  bool done() const { return limit_ != 0 && found.size() >= limit_; }

  void dfs(std::size_t i) {
    while (i < order_.size() && h_.count(order_[i])) ++i;
    if (i == order_.size()) {
      found.push_back(h_);
      return;
    }
    const Elem x = order_[i];
    const Sort s = a_.sort_of(x);
    for (const auto& [y, sy] : b_.sorts()) {
      if (sy != s || used_.count(y)) continue;
      std::vector<Elem> trail;
      if (assign(x, y, trail)) dfs(i + 1);
      undo(trail);
      if (done()) return;
    }
  }

  const FinStructure& a_;
  const FinStructure& b_;
  std::vector<FunSym> symbols_;
  std::vector<Elem> order_;
  std::size_t limit_;
  ElementMap h_;
  ElemSet used_;
};

bool sort_counts_fit(const FinStructure& a, const FinStructure& b) {
  std::map<Sort, int> count;
  for (const auto& [x, s] : b.sorts()) ++count[s];
  for (const auto& [x, s] : a.sorts()) {
    if (--count[s] < 0) return false;
  }
  return true;
}

std::vector<ElementMap> search(const FinStructure& a, const FinStructure& b,
                               const ElementMap& partial, std::size_t limit) {
  if (!(a.signature() == b.signature())) {
    throw SignatureMismatch("embedding between structures with different signatures");
  }
  if (!sort_counts_fit(a, b)) return {};
  EmbeddingSearch s(a, b, limit);
  if (!s.seed(partial)) return {};
  s.run();
  return std::move(s.found);
}

int sort_code(const Sort& s) {
  switch (s.kind) {
    case Sort::Kind::None:
      return 0;
    case Sort::Kind::Object:
      return 1;
    case Sort::Kind::Param:
      return 2 + s.level;
  }
  return 0;
}

// Replaces each key by its rank among the distinct keys.
template <typename Key>
std::vector<int> rank(const std::vector<Key>& keys) {
  std::vector<Key> sorted = keys;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  std::vector<int> out;
  out.reserve(keys.size());
  for (const auto& k : keys) {
    out.push_back(static_cast<int>(std::lower_bound(sorted.begin(), sorted.end(), k) - sorted.begin()));
  }
  return out;
}

}  // namespace

bool is_embedding(const FinStructure& a, const FinStructure& b, const ElementMap& h) {
  if (!(a.signature() == b.signature())) return false;
  ElemSet image;
  for (const auto& [x, s] : a.sorts()) {
    auto it = h.find(x);
    if (it == h.end() || !b.contains(it->second)) return false;
    if (b.sort_of(it->second) != s) return false;
    if (!image.insert(it->second).second) return false;
  }
  for (const auto& g : a.signature().function_symbols()) {
    for (const auto& [x, s] : a.sorts()) {
      auto gx = h.find(a.apply(g, x));
      if (gx == h.end() || gx->second != b.apply(g, h.at(x))) return false;
    }
  }
  return true;
}

std::optional<ElementMap> find_embedding(const FinStructure& a, const FinStructure& b,
                                         const ElementMap& partial) {
  auto all = search(a, b, partial, 1);
  if (all.empty()) return std::nullopt;
  return all.front();
}

std::vector<ElementMap> all_embeddings(const FinStructure& a, const FinStructure& b,
                                       const ElementMap& partial, std::size_t limit) {
  return search(a, b, partial, limit);
}

std::optional<ElementMap> find_isomorphism(const FinStructure& a, const FinStructure& b,
                                           const ElementMap& partial) {
  if (a.size() != b.size()) return std::nullopt;
  return find_embedding(a, b, partial);
}

std::vector<int> canonical_code(const FinStructure& m, const std::map<Elem, int>& marks) {
  const auto dom = m.domain();
  const auto symbols = m.signature().function_symbols();
  const int n = static_cast<int>(dom.size());
  std::map<Elem, int> pos;
  for (int i = 0; i < n; ++i) pos[dom[i]] = i;
  auto mark_of = [&](Elem x) {
    auto it = marks.find(x);
    return it == marks.end() ? -1 : it->second;
  };

  std::vector<std::vector<int>> init(n);
  for (int i = 0; i < n; ++i) init[i] = {mark_of(dom[i]), sort_code(m.sort_of(dom[i]))};
  std::vector<int> color = rank(init);
  int classes = color.empty() ? 0 : *std::max_element(color.begin(), color.end()) + 1;

  for (;;) {
    std::vector<std::vector<int>> keys(n);
    for (int i = 0; i < n; ++i) {
      keys[i].push_back(color[i]);
      for (const auto& g : symbols) {
        const Elem y = m.apply(g, dom[i]);
        keys[i].push_back(y == dom[i] ? -1 : color[pos.at(y)]);
      }
    }
    // preimage profile: for each symbol, sorted colors of non-trivial preimages
    for (std::size_t gi = 0; gi < symbols.size(); ++gi) {
      std::vector<std::vector<int>> pre(n);
      for (const auto& [x, y] : m.table(symbols[gi])) pre[pos.at(y)].push_back(color[pos.at(x)]);
      for (int i = 0; i < n; ++i) {
        std::sort(pre[i].begin(), pre[i].end());
        keys[i].push_back(static_cast<int>(pre[i].size()));
        keys[i].insert(keys[i].end(), pre[i].begin(), pre[i].end());
      }
    }
    auto next = rank(keys);
    const int next_classes = next.empty() ? 0 : *std::max_element(next.begin(), next.end()) + 1;
    color = std::move(next);
    if (next_classes == classes) break;
    classes = next_classes;
  }

  std::vector<std::vector<int>> cls(classes);
  for (int i = 0; i < n; ++i) cls[color[i]].push_back(i);

  double perms = 1;
  for (const auto& c : cls) {
    for (std::size_t k = 2; k <= c.size(); ++k) perms *= static_cast<double>(k);
  }
  if (perms > 5e6) throw BudgetExceeded("canonical_code: too many symmetric orderings", 0);

  std::vector<int> header;
  header.push_back(m.signature().variant() == Variant::Tree ? 0 : 1);
  header.push_back(static_cast<int>(m.signature().levels().size()));
  for (int l : m.signature().levels()) header.push_back(l);
  header.push_back(n);

  auto encode = [&](const std::vector<int>& order) {
    std::vector<int> where(n);
    for (int p = 0; p < n; ++p) where[order[p]] = p;
    std::vector<int> code = header;
    for (int p = 0; p < n; ++p) {
      const Elem x = dom[order[p]];
      code.push_back(mark_of(x));
      code.push_back(sort_code(m.sort_of(x)));
      for (const auto& g : symbols) code.push_back(where[pos.at(m.apply(g, x))]);
    }
    return code;
  };

  std::vector<int> best;
  bool have = false;
  // odometer over the permutations of every class
  for (auto& c : cls) std::sort(c.begin(), c.end());
  for (;;) {
    std::vector<int> order;
    order.reserve(n);
    for (const auto& c : cls) order.insert(order.end(), c.begin(), c.end());
    auto code = encode(order);
    if (!have || code < best) {
      best = std::move(code);
      have = true;
    }
    std::size_t k = 0;
    while (k < cls.size() && !std::next_permutation(cls[k].begin(), cls[k].end())) ++k;
    if (k == cls.size()) break;
  }
  if (!have) best = header;
  return best;
}

}  // namespace treeprop
