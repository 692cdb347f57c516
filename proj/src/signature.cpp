#include "treeprop/signature.hpp"

#include <algorithm>
#include <charconv>

#include "treeprop/errors.hpp"

namespace treeprop {

namespace {

int parse_int(const std::string& s, const std::string& context) {
  int value = 0;
  const char* first = s.data();
  const char* last = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (s.empty() || ec != std::errc() || ptr != last || value < 0) {
    throw MalformedStructure("bad level in '" + context + "'");
  }
  return value;
}

}  // namespace

std::string to_string(Variant v) { return v == Variant::Tree ? "tree" : "plain"; }

Variant variant_from_string(const std::string& s) {
  if (s == "tree") return Variant::Tree;
  if (s == "plain") return Variant::Plain;
  throw MalformedStructure("unknown variant '" + s + "'");
}

std::string to_string(const Sort& s) {
  switch (s.kind) {
    case Sort::Kind::None:
      return "none";
    case Sort::Kind::Object:
      return "O";
    case Sort::Kind::Param:
      return "P" + std::to_string(s.level);
  }
  return "none";
}

Sort sort_from_string(const std::string& s) {
  if (s == "none") return Sort::none();
  if (s == "O") return Sort::object();
  if (s.size() > 1 && s[0] == 'P') return Sort::param(parse_int(s.substr(1), s));
  throw MalformedStructure("unknown sort '" + s + "'");
}

std::string to_string(const FunSym& s) {
  if (s.is_p()) return "p_" + std::to_string(s.lo);
  return "f_" + std::to_string(s.lo) + "_" + std::to_string(s.hi);
}

FunSym funsym_from_string(const std::string& s) {
  if (s.size() > 2 && s[0] == 'p' && s[1] == '_') {
    return FunSym::p(parse_int(s.substr(2), s));
  }
  if (s.size() > 2 && s[0] == 'f' && s[1] == '_') {
    const auto rest = s.substr(2);
    const auto sep = rest.find('_');
    if (sep == std::string::npos) throw MalformedStructure("bad symbol '" + s + "'");
    const int lo = parse_int(rest.substr(0, sep), s);
    const int hi = parse_int(rest.substr(sep + 1), s);
    if (lo > hi) throw MalformedStructure("symbol '" + s + "' needs a <= b");
    return FunSym::f(lo, hi);
  }
  throw MalformedStructure("unknown function symbol '" + s + "'");
}

Signature::Signature(Variant variant, std::vector<int> levels)
    : variant_(variant), levels_(std::move(levels)) {
  if (levels_.empty()) throw PreconditionError("signature needs at least one level");
  std::sort(levels_.begin(), levels_.end());
  if (std::adjacent_find(levels_.begin(), levels_.end()) != levels_.end()) {
    throw PreconditionError("signature levels must be duplicate-free");
  }
  if (levels_.front() < 0) throw PreconditionError("levels must be non-negative");
}

bool Signature::has_level(int level) const {
  return std::binary_search(levels_.begin(), levels_.end(), level);
}

int Signature::predecessor(int level) const {
  auto it = std::lower_bound(levels_.begin(), levels_.end(), level);
  if (it == levels_.begin()) return -1;
  return *std::prev(it);
}

int Signature::successor(int level) const {
  auto it = std::upper_bound(levels_.begin(), levels_.end(), level);
  return it == levels_.end() ? -1 : *it;
}

std::vector<FunSym> Signature::function_symbols() const {
  std::vector<FunSym> out;
  for (int a : levels_) out.push_back(FunSym::p(a));
  if (variant_ == Variant::Tree) {
    for (std::size_t i = 0; i < levels_.size(); ++i) {
      for (std::size_t j = i + 1; j < levels_.size(); ++j) {
        out.push_back(FunSym::f(levels_[i], levels_[j]));
      }
    }
  }
  return out;
}

bool Signature::has_symbol(const FunSym& s) const {
  if (s.is_p()) return has_level(s.lo);
  return variant_ == Variant::Tree && s.lo <= s.hi && has_level(s.lo) && has_level(s.hi);
}

Signature Signature::restrict_to(const std::vector<int>& sub) const {
  for (int a : sub) {
    if (!has_level(a)) throw PreconditionError("restriction level not in signature");
  }
  return Signature(variant_, sub);
}

std::vector<int> level_union(const std::vector<int>& a, const std::vector<int>& b) {
  std::vector<int> out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

std::vector<int> level_intersection(const std::vector<int>& a, const std::vector<int>& b) {
  std::vector<int> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

std::vector<int> level_difference(const std::vector<int>& a, const std::vector<int>& b) {
  std::vector<int> out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

}  // namespace treeprop
