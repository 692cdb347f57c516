#include "treeprop/patterns.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "treeprop/errors.hpp"
#include "treeprop/parallel.hpp"

namespace treeprop {

std::string to_string(PatternKind k) {
  switch (k) {
    case PatternKind::Cdt: return "cdt";
    case PatternKind::Inp: return "inp";
    case PatternKind::Sct: return "sct";
  }
  return "cdt";
}

PatternKind pattern_kind_from_string(const std::string& s) {
  if (s == "cdt") return PatternKind::Cdt;
  if (s == "inp") return PatternKind::Inp;
  if (s == "sct") return PatternKind::Sct;
  throw MalformedPattern("unknown pattern kind '" + s + "'");
}

std::string to_string(RowShape s) {
  switch (s) {
    case RowShape::P: return "p";
    case RowShape::FP: return "fp";
    case RowShape::General: return "general";
  }
  return "p";
}

RowShape row_shape_from_string(const std::string& s) {
  if (s == "p") return RowShape::P;
  if (s == "fp") return RowShape::FP;
  if (s == "general") return RowShape::General;
  throw MalformedPattern("unknown row shape '" + s + "'");
}

namespace {

bool is_tree_kind(const Pattern& p) { return p.kind != PatternKind::Inp; }

void check_shape(const Pattern& p) {
  if (p.height < 0 || p.branching < 1) throw MalformedPattern("pattern: bad height or branching");
  const std::size_t want = is_tree_kind(p) ? static_cast<std::size_t>(p.height) + 1
                                           : static_cast<std::size_t>(p.height);
  if (p.rows.size() != want) {
    throw MalformedPattern("pattern: expected " + std::to_string(want) + " rows, got " +
                           std::to_string(p.rows.size()));
  }
  for (const auto& r : p.rows) {
    if (r.bound < 2) throw MalformedPattern("pattern: row bound below 2");
    if (r.shape == RowShape::General) continue;
    if (!std::binary_search(r.levels.begin(), r.levels.end(), r.level)) {
      throw MalformedPattern("pattern: row level outside its level set");
    }
    if (r.shape == RowShape::FP &&
        (r.lo >= r.level || !std::binary_search(r.levels.begin(), r.levels.end(), r.lo))) {
      throw MalformedPattern("pattern: fp row needs lo < level inside its level set");
    }
  }
}

// Words of length `len` over b letters, lexicographic.
std::vector<std::vector<int>> words(int len, int b) {
  std::vector<std::vector<int>> out;
  std::vector<int> w(static_cast<std::size_t>(len), 0);
  for (;;) {
    out.push_back(w);
    int i = len - 1;
    while (i >= 0 && w[static_cast<std::size_t>(i)] == b - 1) w[static_cast<std::size_t>(i--)] = 0;
    if (i < 0) break;
    ++w[static_cast<std::size_t>(i)];
  }
  return out;
}

// k-subsets of {0..n-1}, lexicographic.
std::vector<std::vector<int>> subsets(int n, int k) {
  std::vector<std::vector<int>> out;
  if (k > n || k < 0) return out;
  std::vector<int> s(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) s[static_cast<std::size_t>(i)] = i;
  for (;;) {
    out.push_back(s);
    int i = k - 1;
    while (i >= 0 && s[static_cast<std::size_t>(i)] == n - k + i) --i;
    if (i < 0) break;
    ++s[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < k; ++j) s[static_cast<std::size_t>(j)] = s[static_cast<std::size_t>(j - 1)] + 1;
  }
  return out;
}

}  // namespace

std::vector<std::vector<int>> pattern_addresses(const Pattern& p) {
  std::vector<std::vector<int>> out;
  if (is_tree_kind(p)) {
    for (int len = 0; len <= p.height; ++len) {
      for (auto& w : words(len, p.branching)) out.push_back(std::move(w));
    }
  } else {
    for (int r = 0; r < p.height; ++r) {
      for (int c = 0; c < p.branching; ++c) out.push_back({r, c});
    }
  }
  return out;
}

std::string address_to_string(const Pattern& p, const std::vector<int>& addr) {
  std::string out;
  const char sep = is_tree_kind(p) ? '.' : ',';
  for (std::size_t i = 0; i < addr.size(); ++i) {
    if (i) out += sep;
    out += std::to_string(addr[i]);
  }
  return out;
}

std::vector<int> address_from_string(const Pattern& p, const std::string& s) {
  std::vector<int> out;
  const char sep = is_tree_kind(p) ? '.' : ',';
  if (!s.empty()) {
    std::stringstream in(s);
    std::string part;
    while (std::getline(in, part, sep)) {
      std::size_t used = 0;
      int v = -1;
      try {
        v = std::stoi(part, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != part.size() || part.empty() || v < 0) {
        throw MalformedPattern("bad address '" + s + "'");
      }
      out.push_back(v);
    }
  }
  if (is_tree_kind(p)) {
    if (static_cast<int>(out.size()) > p.height) throw MalformedPattern("address '" + s + "' too long");
    for (int v : out) {
      if (v >= p.branching) throw MalformedPattern("address '" + s + "' out of range");
    }
  } else if (out.size() != 2 || out[0] >= p.height || out[1] >= p.branching) {
    throw MalformedPattern("bad array address '" + s + "'");
  }
  return out;
}

TypeInstance row_instance(const Pattern& p, const FinStructure& m, const std::vector<int>& addr) {
  check_shape(p);
  const std::size_t ri = is_tree_kind(p) ? addr.size() : static_cast<std::size_t>(addr.at(0));
  const PatternRow& row = p.rows.at(ri);
  auto it = p.params.find(addr);
  if (it == p.params.end()) {
    throw MalformedPattern("no parameters at address '" + address_to_string(p, addr) + "'");
  }
  const auto& tuple = it->second;
  if (tuple.empty()) throw MalformedPattern("empty parameter tuple at '" + address_to_string(p, addr) + "'");
  for (Elem a : tuple) {
    if (!m.contains(a)) {
      throw MalformedPattern("parameter " + std::to_string(a) + " at '" + address_to_string(p, addr) +
                             "' is not in the structure");
    }
  }
  TypeInstance t;
  t.levels = row.levels;
  t.params = tuple;
  t.ambient = generated_substructure(m, to_set(tuple));
  switch (row.shape) {
    case RowShape::P:
      t.kind = TypeKind::obj();
      t.literals = {{LitShape::PEq, {row.level, 0}, true}};
      break;
    case RowShape::FP:
      if (m.signature().variant() != Variant::Tree) {
        throw MalformedPattern("fp rows need the tree language");
      }
      t.kind = TypeKind::obj();
      t.literals = {{LitShape::FPEq, {row.lo, row.level, 0}, true}};
      break;
    case RowShape::General:
      t.kind = row.kind;
      t.literals = row.literals;
      break;
  }
  return t;
}

ModelAndPattern build_canonical_tree_model(int h, int b, const Coloring& f, PatternKind kind) {
  if (h < 1 || b < 2) throw PreconditionError("build_canonical_tree_model: need h >= 1 and b >= 2");
  if (f.n() < h + 1) throw PreconditionError("build_canonical_tree_model: coloring must cover {0..h}");
  if (kind == PatternKind::Inp) throw PreconditionError("build_canonical_tree_model: inp is not a tree kind");
  std::vector<int> levels;
  for (int l = 0; l <= h; ++l) levels.push_back(l);
  ModelAndPattern out{FinStructure(Signature(Variant::Tree, levels)), {}};
  FinStructure& m = out.m;
  Pattern& p = out.pattern;
  p.kind = kind;
  p.height = h;
  p.branching = b;

  std::map<std::vector<int>, Elem> id;
  Elem next = 0;
  for (int len = 0; len <= h; ++len) {
    for (auto& w : words(len, b)) {
      id[w] = next;
      m.add(next, Sort::param(len));
      for (int a = 0; a < len; ++a) {
        m.set(FunSym::f(a, len), next, id.at(std::vector<int>(w.begin(), w.begin() + a)));
      }
      p.params[w] = {next};
      ++next;
    }
  }
  for (const auto& w : words(h, b)) {
    const Elem o = next++;
    m.add(o, Sort::object());
    for (int a = 0; a <= h; ++a) m.set(FunSym::p(a), o, id.at(std::vector<int>(w.begin(), w.begin() + a)));
  }
  for (int a = 0; a <= h; ++a) p.rows.push_back({RowShape::P, a, -1, {a}, 2, TypeKind::obj(), {}});
  return out;
}

ModelAndPattern build_plain_inp_model(int rows, int cols, bool materialize, std::uint64_t object_cap) {
  if (rows < 2 || cols < 2) throw PreconditionError("build_plain_inp_model: need rows >= 2 and cols >= 2");
  std::vector<int> levels;
  for (int r = 0; r < rows; ++r) levels.push_back(r);
  ModelAndPattern out{FinStructure(Signature(Variant::Plain, levels)), {}};
  FinStructure& m = out.m;
  Pattern& p = out.pattern;
  p.kind = PatternKind::Inp;
  p.height = rows;
  p.branching = cols;
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      const Elem a = r * cols + c;
      m.add(a, Sort::param(r));
      p.params[{r, c}] = {a};
    }
    p.rows.push_back({RowShape::P, r, -1, {r}, 2, TypeKind::obj(), {}});
  }
  if (!materialize) return out;

  std::uint64_t count = 1;
  for (int r = 0; r < rows; ++r) {
    count *= static_cast<std::uint64_t>(cols);
    if (count > object_cap) {
      throw BudgetExceeded("build_plain_inp_model: cols^rows exceeds the object cap", object_cap);
    }
  }
  Elem next = rows * cols;
  for (const auto& g : words(rows, cols)) {
    const Elem o = next++;
    m.add(o, Sort::object());
    for (int r = 0; r < rows; ++r) m.set(FunSym::p(r), o, r * cols + g[static_cast<std::size_t>(r)]);
  }
  return out;
}

VerifyMode verify_mode_from_string(const std::string& s) {
  if (s == "exhaustive") return VerifyMode::exhaustive();
  if (s == "auto") return VerifyMode::automatic();
  if (s.rfind("sample:", 0) == 0) {
    const std::string n = s.substr(7);
    std::size_t used = 0;
    int k = 0;
    try {
      k = std::stoi(n, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == n.size() && !n.empty() && k >= 1) return VerifyMode::sample(k);
  }
  throw PreconditionError("bad verify mode '" + s + "' (exhaustive, auto or sample:<k>)");
}

namespace {

struct Task {
  PatternCheck check;
  bool want_consistent = true;
};

bool prefix_of(const std::vector<int>& a, const std::vector<int>& b) {
  return a.size() <= b.size() && std::equal(a.begin(), a.end(), b.begin());
}

}  // namespace

PatternReport verify_pattern(const Pattern& p, const FinStructure& m, const Coloring& f,
                             VerifyMode mode, std::uint64_t seed, int jobs) {
  check_shape(p);
  const bool tree = is_tree_kind(p);
  const int len = p.height;  // path length: leaf depth, or number of rows
  const int b = p.branching;

  if (mode.tag == VerifyMode::Tag::Auto) {
    const double size = len * std::log2(static_cast<double>(std::max(b, 1)));
    mode = size > 20 ? VerifyMode::sample(256) : VerifyMode::exhaustive();
  }
  PatternReport report;
  report.mode = mode.tag == VerifyMode::Tag::Sample ? "sample:" + std::to_string(mode.samples) : "exhaustive";

  // paths as words g of length `len`
  std::vector<std::vector<int>> paths;
  if (mode.tag == VerifyMode::Tag::Sample) {
    Xorshift64Star rng(seed);
    std::set<std::vector<int>> picked;
    for (int k = 0; k < mode.samples; ++k) {
      std::vector<int> g(static_cast<std::size_t>(len));
      for (auto& v : g) v = static_cast<int>(rng.below(static_cast<std::uint32_t>(b)));
      picked.insert(std::move(g));
    }
    paths.assign(picked.begin(), picked.end());
  } else {
    paths = words(len, b);
  }

  std::vector<Task> tasks;
  for (const auto& g : paths) {
    Task t{{"path", {}, true}, true};
    if (tree) {
      for (int i = 0; i <= len; ++i) t.check.addresses.emplace_back(g.begin(), g.begin() + i);
    } else {
      for (int r = 0; r < len; ++r) t.check.addresses.push_back({r, g[static_cast<std::size_t>(r)]});
    }
    tasks.push_back(std::move(t));
  }

  if (p.kind == PatternKind::Cdt) {
    for (int depth = 0; depth < len; ++depth) {
      const int n = p.rows[static_cast<std::size_t>(depth) + 1].bound;
      for (const auto& eta : words(depth, b)) {
        for (const auto& s : subsets(b, n)) {
          Task t{{"siblings", {}, true}, false};
          for (int i : s) {
            auto child = eta;
            child.push_back(i);
            t.check.addresses.push_back(std::move(child));
          }
          tasks.push_back(std::move(t));
        }
      }
    }
  } else if (p.kind == PatternKind::Inp) {
    for (int r = 0; r < len; ++r) {
      const int n = p.rows[static_cast<std::size_t>(r)].bound;
      for (const auto& s : subsets(b, n)) {
        Task t{{"row", {}, true}, false};
        for (int c : s) t.check.addresses.push_back({r, c});
        tasks.push_back(std::move(t));
      }
    }
  } else {
    const auto all = pattern_addresses(p);
    for (std::size_t i = 0; i < all.size(); ++i) {
      for (std::size_t j = i + 1; j < all.size(); ++j) {
        if (prefix_of(all[i], all[j]) || prefix_of(all[j], all[i])) continue;
        tasks.push_back({{"incomparable", {all[i], all[j]}, true}, false});
      }
    }
  }

  // Instances are built up front so a missing parameter surfaces as
  // MalformedPattern before any search starts.
  std::map<std::vector<int>, TypeInstance> inst;
  for (const auto& t : tasks) {
    for (const auto& a : t.check.addresses) {
      if (!inst.count(a)) inst.emplace(a, row_instance(p, m, a));
    }
  }

  std::vector<char> verdict(tasks.size(), 0);
  parallel_for(tasks.size(), jobs, [&](std::size_t i) {
    std::vector<TypeInstance> xs;
    for (const auto& a : tasks[i].check.addresses) xs.push_back(inst.at(a));
    verdict[i] = is_consistent(xs, f) == tasks[i].want_consistent ? 1 : 0;
  });
  for (std::size_t i = 0; i < tasks.size(); ++i) {
    tasks[i].check.ok = verdict[i] != 0;
    if (!tasks[i].check.ok) {
      report.ok = false;
      ++report.failed;
    }
    report.checks.push_back(std::move(tasks[i].check));
  }
  return report;
}

}  // namespace treeprop
