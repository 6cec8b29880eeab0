#pragma once

// Rooted spanning forests with s fixed roots and m labeled non-root vertices,
// and the breadth-first bijections with PF(m, m + s - 1).

#include <algorithm>
#include <cstdint>
#include <deque>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "parkfn/errors.hpp"
#include "parkfn/parking_function.hpp"

namespace parkfn {

struct ForestVertex {
  enum class Kind { Root, NonRoot };
  Kind kind = Kind::Root;
  int index = 1;  ///< 1-based root number or non-root label

  static ForestVertex root(int i) { return {Kind::Root, i}; }
  static ForestVertex non_root(int j) { return {Kind::NonRoot, j}; }
  bool is_root() const { return kind == Kind::Root; }

  friend bool operator==(const ForestVertex&, const ForestVertex&) = default;
};

/// Renders roots as 0i (01, 02, ...) and non-roots by their label.
inline std::string to_string(const ForestVertex& v) {
  return (v.is_root() ? "0" : "") + std::to_string(v.index);
}

/// Predecessor-map forest. Child lists are derived and kept in increasing label order.
class RootedForest {
 public:
  RootedForest() = default;

  /// parents[j-1] is the predecessor of non-root j. Throws InputError unless the map is an acyclic
  /// forest on the given roots.
  RootedForest(int s, std::vector<ForestVertex> parents) : s_(s), parent_(std::move(parents)) {
    const int m = non_roots();
    if (s < 0) throw InputError("root count must be non-negative");
    if (m > 0 && s == 0) throw InputError("non-root vertices need at least one root");
    rootChildren_.assign(static_cast<std::size_t>(s), {});
    children_.assign(static_cast<std::size_t>(m), {});
    for (int j = 1; j <= m; ++j) {
      const auto& p = parent_[j - 1];
      if (p.is_root()) {
        if (p.index < 1 || p.index > s) throw InputError("vertex " + std::to_string(j) + " points at a missing root");
        rootChildren_[p.index - 1].push_back(j);
      } else {
        if (p.index < 1 || p.index > m || p.index == j)
          throw InputError("vertex " + std::to_string(j) + " has an invalid predecessor");
        children_[p.index - 1].push_back(j);
      }
    }
    // Labels are pushed in increasing order, so child lists are already sorted.
    tree_.assign(static_cast<std::size_t>(m), 0);
    for (int i = 1; i <= s; ++i) {
      std::vector<int> stack = rootChildren_[i - 1];
      while (!stack.empty()) {
        const int v = stack.back();
        stack.pop_back();
        tree_[v - 1] = i;
        for (int c : children_[v - 1]) stack.push_back(c);
      }
    }
    for (int j = 1; j <= m; ++j)
      if (tree_[j - 1] == 0) throw InputError("predecessor map has a cycle through vertex " + std::to_string(j));
  }

  int roots() const { return s_; }
  int non_roots() const { return static_cast<int>(parent_.size()); }
  const ForestVertex& parent(int j) const { return parent_.at(static_cast<std::size_t>(j - 1)); }
  std::span<const ForestVertex> parents() const { return parent_; }

  const std::vector<int>& children(const ForestVertex& v) const {
    return v.is_root() ? rootChildren_.at(static_cast<std::size_t>(v.index - 1))
                       : children_.at(static_cast<std::size_t>(v.index - 1));
  }
  /// 1-based root of the tree containing non-root j.
  int tree_of(int j) const { return tree_.at(static_cast<std::size_t>(j - 1)); }

  /// Non-root count of each tree, by root.
  std::vector<int> tree_sizes() const {
    std::vector<int> sizes(static_cast<std::size_t>(s_), 0);
    for (int t : tree_) ++sizes[t - 1];
    return sizes;
  }

  friend bool operator==(const RootedForest& a, const RootedForest& b) {
    return a.s_ == b.s_ && a.parent_ == b.parent_;
  }

 private:
  int s_ = 0;
  std::vector<ForestVertex> parent_;
  std::vector<std::vector<int>> rootChildren_;
  std::vector<std::vector<int>> children_;
  std::vector<int> tree_;
};

/// Pairs i < j in one tree with j on the path from the root to i.
inline std::int64_t inversions(const RootedForest& f) {
  const int m = f.non_roots();
  // Fenwick tree over labels currently on the root path.
  std::vector<int> bit(static_cast<std::size_t>(m) + 1, 0);
  auto add = [&](int i, int d) {
    for (; i <= m; i += i & -i) bit[i] += d;
  };
  auto prefix = [&](int i) {
    int s = 0;
    for (; i > 0; i -= i & -i) s += bit[i];
    return s;
  };
  std::int64_t total = 0;
  int onPath = 0;
  for (int r = 1; r <= f.roots(); ++r) {
    // (vertex, entering?) frames for an iterative DFS.
    std::vector<std::pair<int, bool>> stack;
    for (int c : f.children(ForestVertex::root(r))) stack.emplace_back(c, true);
    while (!stack.empty()) {
      auto [v, entering] = stack.back();
      stack.pop_back();
      if (!entering) {
        add(v, -1);
        --onPath;
        continue;
      }
      total += onPath - prefix(v);
      add(v, 1);
      ++onPath;
      stack.emplace_back(v, false);
      for (int c : f.children(ForestVertex::non_root(v))) stack.emplace_back(c, true);
    }
  }
  return total;
}

enum class BfsVersion {
  LevelOrder,  ///< version I: all roots enter the queue first
  TreeByTree,  ///< version II: the next root enters only when the queue runs dry
};

/// Breadth-first reading order v_1 .. v_{m+s}; siblings by increasing label.
inline std::vector<ForestVertex> bfs_order(const RootedForest& f, BfsVersion version) {
  std::vector<ForestVertex> order;
  order.reserve(static_cast<std::size_t>(f.roots() + f.non_roots()));
  std::deque<ForestVertex> queue;
  int nextRoot = 1;
  if (version == BfsVersion::LevelOrder)
    for (; nextRoot <= f.roots(); ++nextRoot) queue.push_back(ForestVertex::root(nextRoot));
  while (true) {
    if (queue.empty()) {
      if (nextRoot > f.roots()) break;
      queue.push_back(ForestVertex::root(nextRoot++));
    }
    const ForestVertex v = queue.front();
    queue.pop_front();
    order.push_back(v);
    for (int c : f.children(v)) queue.push_back(ForestVertex::non_root(c));
  }
  return order;
}

/// r_k = successor count of the k-th vertex read (k <= n), sigma = inverse of the non-root reading order.
inline ParkingFunction forest_to_pf(const RootedForest& f, BfsVersion version) {
  const int m = f.non_roots();
  const int s = f.roots();
  if (s == 0) throw InputError("a forest needs at least one root");
  const int n = m + s - 1;
  const auto order = bfs_order(f, version);
  CompatiblePair pair;
  pair.n = n;
  pair.r.reserve(static_cast<std::size_t>(n));
  std::vector<int> reading;
  reading.reserve(static_cast<std::size_t>(m));
  for (std::size_t k = 0; k < order.size(); ++k) {
    if (static_cast<int>(k) < n) pair.r.push_back(static_cast<int>(f.children(order[k]).size()));
    if (!order[k].is_root()) reading.push_back(order[k].index);
  }
  pair.sigma = inverse_permutation(reading);
  return from_compatible_pair(pair);
}

/// Inverse of forest_to_pf: replays the queue, handing the k-th vertex read the next r_k non-roots.
inline RootedForest pf_to_forest(const ParkingFunction& pf, BfsVersion version) {
  const int m = pf.cars();
  const int n = pf.spots();
  const int s = n - m + 1;
  const auto r = specification(pf);
  const auto reading = inverse_permutation(order_permutation(pf));
  std::vector<ForestVertex> parents(static_cast<std::size_t>(m));
  std::deque<ForestVertex> queue;
  int nextRoot = 1;
  if (version == BfsVersion::LevelOrder)
    for (; nextRoot <= s; ++nextRoot) queue.push_back(ForestVertex::root(nextRoot));
  std::size_t handedOut = 0;
  for (int k = 1; k <= n + 1; ++k) {
    if (queue.empty()) {
      if (nextRoot > s) throw InputError("queue ran dry before every vertex was read");
      queue.push_back(ForestVertex::root(nextRoot++));
    }
    const ForestVertex v = queue.front();
    queue.pop_front();
    const int take = k <= n ? r[k - 1] : 0;
    for (int t = 0; t < take; ++t) {
      const int child = reading.at(handedOut++);
      parents[child - 1] = v;
      queue.push_back(ForestVertex::non_root(child));
    }
  }
  return RootedForest(s, std::move(parents));
}

/// Canonical text: "s m : 1->p1 2->p2 ... m->pm", roots written 0i.
inline std::string to_text(const RootedForest& f) {
  std::string out = std::to_string(f.roots()) + " " + std::to_string(f.non_roots()) + " :";
  for (int j = 1; j <= f.non_roots(); ++j) out += " " + std::to_string(j) + "->" + to_string(f.parent(j));
  return out;
}

namespace detail {

inline int parse_label(std::string_view token, std::string_view whole) {
  if (token.empty() || token.size() > 9 || !std::all_of(token.begin(), token.end(), [](char c) { return c >= '0' && c <= '9'; }))
    throw ParseError("bad vertex '" + std::string(token) + "' in '" + std::string(whole) + "'");
  return std::stoi(std::string(token));
}

}  // namespace detail

inline RootedForest parse_forest(std::string_view text) {
  std::istringstream in{std::string(text)};
  int s = 0;
  int m = 0;
  std::string colon;
  if (!(in >> s >> m >> colon) || colon != ":" || s < 0 || m < 0)
    throw ParseError("expected 's m : j->parent ...', got '" + std::string(text) + "'");
  std::vector<ForestVertex> parents(static_cast<std::size_t>(m));
  std::vector<char> seen(static_cast<std::size_t>(m), 0);
  std::string token;
  int listed = 0;
  while (in >> token) {
    const auto arrow = token.find("->");
    if (arrow == std::string::npos) throw ParseError("expected j->parent, got '" + token + "'");
    const int j = detail::parse_label(std::string_view(token).substr(0, arrow), text);
    const std::string_view target = std::string_view(token).substr(arrow + 2);
    if (j < 1 || j > m || seen[j - 1]) throw ParseError("vertex " + std::to_string(j) + " missing or repeated");
    seen[j - 1] = 1;
    ++listed;
    if (target.size() > 1 && target.front() == '0') {
      parents[j - 1] = ForestVertex::root(detail::parse_label(target.substr(1), text));
    } else {
      parents[j - 1] = ForestVertex::non_root(detail::parse_label(target, text));
    }
  }
  if (listed != m) throw ParseError("declared " + std::to_string(m) + " non-roots but listed " + std::to_string(listed));
  return RootedForest(s, std::move(parents));
}

/// Graphviz digraph with edges pointing from predecessor to successor.
inline std::string to_dot(const RootedForest& f) {
  std::string out = "digraph forest {\n";
  for (int i = 1; i <= f.roots(); ++i) out += "  \"0" + std::to_string(i) + "\" [shape=box];\n";
  for (int j = 1; j <= f.non_roots(); ++j) out += "  \"" + std::to_string(j) + "\";\n";
  for (int j = 1; j <= f.non_roots(); ++j) out += "  \"" + to_string(f.parent(j)) + "\" -> \"" + std::to_string(j) + "\";\n";
  out += "}\n";
  return out;
}

}  // namespace parkfn
