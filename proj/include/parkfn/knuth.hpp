#pragma once

// Displacement-preserving bijection PF(m, n) <-> forests on n - m + 1 roots, built segment by
// segment through an auxiliary decreasing tree. Segment j becomes the tree of root j + 1.

#include <algorithm>
#include <functional>
#include <vector>

#include "parkfn/forest.hpp"
#include "parkfn/parking_function.hpp"

namespace parkfn {

namespace detail {

/// One tree over vertices 1..len (0 = root), stored as a parent array and sorted child lists.
struct LocalTree {
  std::vector<int> parent;                 // parent[v], v in 1..len; index 0 unused
  std::vector<std::vector<int>> children;  // children[v], v in 0..len

  explicit LocalTree(int len)
      : parent(static_cast<std::size_t>(len) + 1, 0), children(static_cast<std::size_t>(len) + 1) {}

  void link(int v, int p) {
    parent[v] = p;
    children[p].push_back(v);
  }

  void collect(int v, std::vector<int>& out) const {
    out.push_back(v);
    for (int c : children[v]) collect(c, out);
  }
};

/// Forward map on one classical segment. Returns the final tree on labels 1..len.
inline LocalTree knuth_segment_forward(const ParkingFunction& seg) {
  const int len = seg.cars();
  const auto& slots = seg.outcome().slots;
  const auto tau = inverse_permutation(slots);  // tau[spot-1] = car parked there

  // Auxiliary decreasing tree: predecessor of k is the first larger entry right of k in tau.
  LocalTree aux(len);
  std::vector<int> greaterRight;  // stack of candidates, scanning tau right to left
  std::vector<int> auxParent(static_cast<std::size_t>(len) + 1, 0);
  for (int p = len - 1; p >= 0; --p) {
    const int k = tau[p];
    while (!greaterRight.empty() && greaterRight.back() < k) greaterRight.pop_back();
    auxParent[k] = greaterRight.empty() ? 0 : greaterRight.back();
    greaterRight.push_back(k);
  }
  for (int k = 1; k <= len; ++k) aux.link(k, auxParent[k]);
  for (auto& c : aux.children) std::sort(c.begin(), c.end());

  // Relabel a copy in preorder; label[v] is the current label of auxiliary vertex v.
  std::vector<int> label(static_cast<std::size_t>(len) + 1);
  for (int k = 0; k <= len; ++k) label[k] = k;
  std::function<void(int)> visit = [&](int v) {
    std::vector<int> subtree;
    aux.collect(v, subtree);
    std::vector<int> labels;
    labels.reserve(subtree.size());
    for (int w : subtree) labels.push_back(label[w]);
    std::sort(labels.begin(), labels.end());
    const int target = labels[static_cast<std::size_t>(slots[v - 1] - seg.pref(v))];
    for (int w : subtree)
      if (label[w] == target) {
        std::swap(label[v], label[w]);
        break;
      }
    std::vector<int> order = aux.children[v];
    std::sort(order.begin(), order.end(), [&](int a, int b) { return label[a] < label[b]; });
    for (int c : order) visit(c);
  };
  for (int c : aux.children[0]) visit(c);

  LocalTree out(len);
  for (int k = 1; k <= len; ++k) out.link(label[k], auxParent[k] == 0 ? 0 : label[auxParent[k]]);
  for (auto& c : out.children) std::sort(c.begin(), c.end());
  return out;
}

/// Inverse of knuth_segment_forward: recovers the classical segment from its final tree.
inline std::vector<int> knuth_segment_inverse(const LocalTree& tree) {
  const int len = static_cast<int>(tree.parent.size()) - 1;
  std::vector<int> auxLabel(static_cast<std::size_t>(len) + 1, 0);
  std::vector<int> delta(static_cast<std::size_t>(len) + 1, 0);  // indexed by final label

  // Each swap at an ancestor a acted on values as the transposition (y_a f_a), where y_a is the
  // label a held when processed and f_a the label it kept. Undo them from the nearest ancestor up.
  struct Swap {
    int y;
    int f;
  };
  auto apply = [](const Swap& t, int v) { return v == t.y ? t.f : (v == t.f ? t.y : v); };

  std::vector<Swap> path;  // swaps of the ancestors, top first
  std::function<void(int)> visit = [&](int u) {
    std::vector<int> sub;
    tree.collect(u, sub);
    std::vector<int> finals(sub.begin(), sub.end());
    std::sort(finals.begin(), finals.end());
    delta[u] = static_cast<int>(std::lower_bound(finals.begin(), finals.end(), u) - finals.begin());
    int a = 0;
    for (int v : finals) {
      for (auto it = path.rbegin(); it != path.rend(); ++it) v = apply(*it, v);
      a = std::max(a, v);
    }
    auxLabel[u] = a;
    int y = a;
    for (const auto& t : path) y = apply(t, y);
    path.push_back({y, u});
    for (int c : tree.children[u]) visit(c);
    path.pop_back();
  };
  for (int c : tree.children[0]) visit(c);

  // Rebuild tau from the decreasing auxiliary tree: postorder with children in decreasing label.
  LocalTree aux(len);
  for (int u = 1; u <= len; ++u) {
    const int p = tree.parent[u];
    aux.link(auxLabel[u], p == 0 ? 0 : auxLabel[p]);
  }
  for (auto& c : aux.children) std::sort(c.rbegin(), c.rend());
  std::vector<int> tau;
  tau.reserve(static_cast<std::size_t>(len));
  std::function<void(int)> post = [&](int v) {
    for (int c : aux.children[v]) post(c);
    tau.push_back(v);
  };
  for (int c : aux.children[0]) post(c);

  const auto outcome = inverse_permutation(tau);
  std::vector<int> prefs(static_cast<std::size_t>(len));
  for (int u = 1; u <= len; ++u) {
    const int k = auxLabel[u];
    prefs[k - 1] = outcome[k - 1] - delta[u];
  }
  return prefs;
}

}  // namespace detail

/// Forest whose inversion count equals the displacement of pf. Non-root labels of tree j are the
/// cars of segment j, assigned by rank.
inline RootedForest pf_to_forest_knuth(const ParkingFunction& pf) {
  const auto d = segment_decomposition(pf);
  std::vector<ForestVertex> parents(static_cast<std::size_t>(pf.cars()));
  for (std::size_t j = 0; j < d.segments.size(); ++j) {
    const auto tree = detail::knuth_segment_forward(d.segments[j]);
    const auto& cars = d.members[j];
    for (std::size_t t = 1; t < tree.parent.size(); ++t) {
      const int p = tree.parent[t];
      parents[cars[t - 1] - 1] = p == 0 ? ForestVertex::root(static_cast<int>(j) + 1)
                                        : ForestVertex::non_root(cars[static_cast<std::size_t>(p - 1)]);
    }
  }
  return RootedForest(static_cast<int>(d.segments.size()), std::move(parents));
}

/// Exact inverse of pf_to_forest_knuth.
inline ParkingFunction forest_to_pf_knuth(const RootedForest& f) {
  const int s = f.roots();
  if (s == 0) throw InputError("a forest needs at least one root");
  const int m = f.non_roots();
  SegmentDecomposition d;
  d.n = m + s - 1;
  int bound = 0;
  for (int j = 1; j <= s; ++j) {
    // Cars of tree j in increasing order; their ranks are the local labels.
    std::vector<int> cars;
    std::vector<int> stack = f.children(ForestVertex::root(j));
    while (!stack.empty()) {
      const int v = stack.back();
      stack.pop_back();
      cars.push_back(v);
      for (int c : f.children(ForestVertex::non_root(v))) stack.push_back(c);
    }
    std::sort(cars.begin(), cars.end());
    const int len = static_cast<int>(cars.size());
    auto rank = [&](int car) { return static_cast<int>(std::lower_bound(cars.begin(), cars.end(), car) - cars.begin()) + 1; };
    detail::LocalTree local(len);
    for (int car : cars) {
      const auto& p = f.parent(car);
      local.link(rank(car), p.is_root() ? 0 : rank(p.index));
    }
    for (auto& c : local.children) std::sort(c.begin(), c.end());
    d.segments.emplace_back(detail::knuth_segment_inverse(local), len);
    d.members.push_back(std::move(cars));
    bound += len + 1;
    if (j < s) d.holes.push_back(bound);
  }
  return reassemble(d);
}

}  // namespace parkfn
