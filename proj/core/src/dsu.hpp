#pragma once

#include <numeric>
#include <vector>

namespace diskpat::detail {

// Plain union-find.  Moves and enumeration backtracking need an undoable
// variant; that one lives in curves.cpp next to its only user.
struct Dsu {
  explicit Dsu(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }

  int find(int x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }

  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (a > b) std::swap(a, b);
    parent[b] = a;  // keep least index as representative
    return true;
  }

  std::vector<int> parent;
};

}  // namespace diskpat::detail
