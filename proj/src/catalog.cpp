#include "mfrag/catalog.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <numeric>

#include "mfrag/error.hpp"
#include "mfrag/minor_analysis.hpp"

namespace mfrag {

namespace {

Matroid uniform(int m, int n) {
  std::vector<std::string> ground;
  for (int i = 1; i <= n; ++i) ground.push_back(std::to_string(i));
  std::vector<uint32_t> bases;
  uint32_t full = n == 0 ? 0 : (1u << n) - 1;
  for (uint32_t s = 0;; ++s) {
    if (std::popcount(s) == m) bases.push_back(s);
    if (s == full) break;
  }
  return Matroid::from_masks(std::move(ground), std::move(bases), false);
}

struct Edge {
  std::string label;
  int u, v;
};

// Cycle matroid of a small multigraph: bases are the spanning trees.
Matroid graphic(const std::vector<Edge>& edges, int nv) {
  int n = static_cast<int>(edges.size());
  std::vector<std::string> ground;
  for (const auto& e : edges) ground.push_back(e.label);
  int r = nv - 1;
  std::vector<uint32_t> bases;
  for (uint32_t s = 0; s < (1u << n); ++s) {
    if (std::popcount(s) != r) continue;
    std::vector<int> parent(nv);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    bool forest = true;
    for (uint32_t t = s; t && forest; t &= t - 1) {
      const Edge& e = edges[std::countr_zero(t)];
      int a = find(e.u), b = find(e.v);
      if (a == b)
        forest = false;
      else
        parent[a] = b;
    }
    if (forest) bases.push_back(s);
  }
  return Matroid::from_masks(std::move(ground), std::move(bases), false);
}

// Column matroid over GF(p) of an r x n integer matrix.
Matroid linear_gfp(const std::vector<std::string>& labels, const std::vector<std::vector<int>>& cols,
                   int p) {
  int n = static_cast<int>(cols.size());
  int h = static_cast<int>(cols[0].size());
  auto rank_of = [&](uint32_t s) {
    std::vector<std::vector<int>> m;
    for (uint32_t t = s; t; t &= t - 1) {
      std::vector<int> c = cols[std::countr_zero(t)];
      for (auto& x : c) x = ((x % p) + p) % p;
      m.push_back(std::move(c));
    }
    int rank = 0;
    for (int row = 0; row < h && rank < static_cast<int>(m.size()); ++row) {
      int piv = -1;
      for (int j = rank; j < static_cast<int>(m.size()); ++j)
        if (m[j][row] != 0) {
          piv = j;
          break;
        }
      if (piv < 0) continue;
      std::swap(m[rank], m[piv]);
      for (int j = 0; j < static_cast<int>(m.size()); ++j) {
        if (j == rank || m[j][row] == 0) continue;
        int f = m[j][row];
        // scale so row entry cancels: m[j] -= f/lead * m[rank]
        int lead = m[rank][row];
        int inv = 1;
        for (int k = 1; k < p; ++k)
          if (lead * k % p == 1) inv = k;
        int mult = f * inv % p;
        for (int k = 0; k < h; ++k) m[j][k] = ((m[j][k] - mult * m[rank][k]) % p + p) % p;
      }
      ++rank;
    }
    return rank;
  };
  int r = rank_of(n == 0 ? 0 : (1u << n) - 1);
  std::vector<uint32_t> bases;
  for (uint32_t s = 0; s < (1u << n); ++s)
    if (std::popcount(s) == r && rank_of(s) == r) bases.push_back(s);
  return Matroid::from_masks(labels, std::move(bases), false);
}

std::vector<Edge> wheel_edges(int r) {
  std::vector<Edge> edges;
  for (int i = 1; i <= r; ++i) edges.push_back({"s" + std::to_string(i), 0, i});
  for (int i = 1; i <= r; ++i) edges.push_back({"r" + std::to_string(i), i, i % r + 1});
  return edges;
}

Matroid wheel(int r) { return graphic(wheel_edges(r), r + 1); }

Matroid whirl(int r) {
  Matroid w = wheel(r);
  uint32_t rim = 0;
  for (int i = 1; i <= r; ++i) rim |= 1u << w.index("r" + std::to_string(i));
  std::vector<uint32_t> bases = w.bases();
  bases.push_back(rim);  // relax the rim circuit-hyperplane
  return Matroid::from_masks(w.ground(), std::move(bases), false);
}

Matroid fano(int p) {
  std::vector<std::vector<int>> cols = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {1, 1, 0},
                                        {1, 0, 1}, {0, 1, 1}, {1, 1, 1}};
  std::vector<std::string> labels;
  for (int i = 1; i <= 7; ++i) labels.push_back(std::to_string(i));
  return linear_gfp(labels, cols, p);
}

Matroid ag23e() {
  std::vector<std::vector<int>> cols;
  std::vector<std::string> labels;
  int id = 1;
  for (int y = 0; y < 3; ++y)
    for (int x = 0; x < 3; ++x) {
      if (id <= 8) {
        cols.push_back({1, x, y});
        labels.push_back(std::to_string(id));
      }
      ++id;
    }
  return linear_gfp(labels, cols, 3);
}

Matroid p8() {
  std::vector<std::vector<int>> a = {{0, 1, 1, -1}, {1, 0, 1, 1}, {1, 1, 0, 1}, {-1, 1, 1, 0}};
  std::vector<std::vector<int>> cols;
  std::vector<std::string> labels;
  for (int i = 0; i < 4; ++i) {
    std::vector<int> c(4, 0);
    c[i] = 1;
    cols.push_back(c);
    labels.push_back(std::to_string(i + 1));
  }
  for (int j = 0; j < 4; ++j) {
    std::vector<int> c(4);
    for (int i = 0; i < 4; ++i) c[i] = a[i][j];
    cols.push_back(c);
    labels.push_back(std::to_string(j + 5));
  }
  return linear_gfp(labels, cols, 3);
}

bool parse_um(const std::string& name, int& m, int& n) {
  if (name.size() >= 2 && name[0] == 'U' && name[1] == '(') {
    size_t comma = name.find(',');
    if (comma == std::string::npos || name.back() != ')') return false;
    try {
      m = std::stoi(name.substr(2, comma - 2));
      n = std::stoi(name.substr(comma + 1, name.size() - comma - 2));
    } catch (...) {
      return false;
    }
    return true;
  }
  if (name.size() == 3 && name[0] == 'U' && isdigit(name[1]) && isdigit(name[2])) {
    m = name[1] - '0';
    n = name[2] - '0';
    return true;
  }
  return false;
}

bool parse_round(const std::string& name, const std::string& prefix, int& r) {
  if (name.compare(0, prefix.size(), prefix) != 0) return false;
  if (name.size() < prefix.size() + 3 || name[prefix.size()] != '(' || name.back() != ')') return false;
  try {
    r = std::stoi(name.substr(prefix.size() + 1, name.size() - prefix.size() - 2));
  } catch (...) {
    return false;
  }
  return true;
}

}  // namespace

Matroid catalog(const std::string& name) {
  int m, n;
  if (parse_um(name, m, n)) {
    if (0 <= m && m <= n && n <= 10) return uniform(m, n);
    fail("UnknownName", "uniform matroids are limited to 0 <= m <= n <= 10");
  }
  int r;
  if (parse_round(name, "wheel", r)) {
    if (2 <= r && r <= 5) return wheel(r);
    fail("UnknownName", "wheels are limited to 2 <= r <= 5");
  }
  if (parse_round(name, "whirl", r)) {
    if (2 <= r && r <= 5) return whirl(r);
    fail("UnknownName", "whirls are limited to 2 <= r <= 5");
  }
  if (name == "MK4")
    return graphic({{"12", 0, 1}, {"13", 0, 2}, {"14", 0, 3}, {"23", 1, 2}, {"24", 1, 3}, {"34", 2, 3}},
                   4);
  if (name == "K23")
    return graphic({{"u1", 0, 2}, {"u2", 0, 3}, {"u3", 0, 4}, {"v1", 1, 2}, {"v2", 1, 3}, {"v3", 1, 4}},
                   5);
  if (name == "F7") return fano(2);
  if (name == "F7minus") return fano(3);
  if (name == "AG23e") return ag23e();
  if (name == "P8") return p8();
  fail("UnknownName", "no catalog matroid named '" + name + "'");
}

Matroid wheel_matroid(int r) {
  if (r < 2 || r > 8) fail("UnknownName", "wheels are limited to 2 <= r <= 8");
  return wheel(r);
}

Matroid whirl_matroid(int r) {
  if (r < 2 || r > 8) fail("UnknownName", "whirls are limited to 2 <= r <= 8");
  return whirl(r);
}

std::vector<std::string> catalog_names() {
  std::vector<std::string> out;
  for (int n = 0; n <= 10; ++n)
    for (int m = 0; m <= n; ++m) out.push_back("U(" + std::to_string(m) + "," + std::to_string(n) + ")");
  for (int r = 2; r <= 5; ++r) out.push_back("wheel(" + std::to_string(r) + ")");
  for (int r = 2; r <= 5; ++r) out.push_back("whirl(" + std::to_string(r) + ")");
  for (const char* s : {"MK4", "K23", "F7", "F7minus", "AG23e", "P8"}) out.push_back(s);
  return out;
}

namespace {

// Rank oracle for the generalized parallel connection of M(K4) and M across
// a shared triangle, on up to 19 virtual elements. Closure in the connection
// is the joint fixpoint of the two constituent closures; rank is computed
// greedily from it.
struct ParallelConnection {
  const Matroid& k4;
  const Matroid& m;
  int np;                     // virtual element count
  std::vector<int> k4_index;  // virtual -> k4 ground index or -1
  std::vector<int> m_index;   // virtual -> m ground index or -1

  uint32_t close(uint32_t s) const {
    for (;;) {
      uint32_t k4_trace = 0, m_trace = 0;
      for (int e = 0; e < np; ++e) {
        if (!(s >> e & 1)) continue;
        if (k4_index[e] >= 0) k4_trace |= 1u << k4_index[e];
        if (m_index[e] >= 0) m_trace |= 1u << m_index[e];
      }
      uint32_t k4_cl = k4.closure_of(k4_trace);
      uint32_t m_cl = m.closure_of(m_trace);
      uint32_t grown = s;
      for (int e = 0; e < np; ++e) {
        if (k4_index[e] >= 0 && (k4_cl >> k4_index[e] & 1)) grown |= 1u << e;
        if (m_index[e] >= 0 && (m_cl >> m_index[e] & 1)) grown |= 1u << e;
      }
      if (grown == s) return s;
      s = grown;
    }
  }

  int rank(uint32_t s) const {
    uint32_t closed = close(0);
    int r = 0;
    for (int e = 0; e < np; ++e) {
      if (!(s >> e & 1) || (closed >> e & 1)) continue;
      ++r;
      closed = close(closed | (1u << e));
    }
    return r;
  }
};

}  // namespace

Matroid delta_y(const Matroid& m, const std::set<std::string>& triangle) {
  uint32_t tmask = m.mask_of(triangle);
  if (triangle.size() != 3 || !m.is_circuit(tmask))
    fail("NotATriangle", "the exchange set must be a 3-element circuit");
  if (m.corank_of(tmask) < 3)
    fail("TriangleNotCoindependent", "the triangle must be coindependent");

  std::vector<std::string> t(triangle.begin(), triangle.end());
  // K4 on vertices {0,1,2,3} with hub 3: the triangle edge opposite vertex i
  // and the star edge at vertex i share the exchanged label t[i].
  Matroid k4 = graphic({{t[0], 1, 2},
                        {t[1], 0, 2},
                        {t[2], 0, 1},
                        {"*" + t[0], 0, 3},
                        {"*" + t[1], 1, 3},
                        {"*" + t[2], 2, 3}},
                       4);

  // Virtual ground: M's elements then the three star edges.
  ParallelConnection pc{k4, m, m.size() + 3, std::vector<int>(m.size() + 3, -1),
                        std::vector<int>(m.size() + 3, -1)};
  for (int e = 0; e < m.size(); ++e) pc.m_index[e] = e;
  for (int i = 0; i < 3; ++i) {
    pc.k4_index[m.index(t[i])] = k4.index(t[i]);
    pc.k4_index[m.size() + i] = k4.index("*" + t[i]);
  }

  // Delete the original triangle; the star edges inherit its labels.
  std::vector<int> keep;
  for (int e = 0; e < m.size(); ++e)
    if (!(tmask >> e & 1)) keep.push_back(e);
  for (int i = 0; i < 3; ++i) keep.push_back(m.size() + i);
  std::vector<std::string> ground;
  for (int e : keep) ground.push_back(e < m.size() ? m.label(e) : t[e - m.size()]);

  uint32_t all = 0;
  for (int e : keep) all |= 1u << e;
  int r = pc.rank(all);
  int k = static_cast<int>(keep.size());
  std::vector<uint32_t> bases;
  for (uint32_t s = 0; s < (1u << k); ++s) {
    if (std::popcount(s) != r) continue;
    uint32_t virt = 0;
    for (uint32_t u = s; u; u &= u - 1) virt |= 1u << keep[std::countr_zero(u)];
    if (pc.rank(virt) == r) bases.push_back(s);
  }
  return Matroid::from_masks(std::move(ground), std::move(bases), false);
}

Matroid wye_delta(const Matroid& m, const std::set<std::string>& triad) {
  if (triad.size() != 3 || !m.is_cocircuit(m.mask_of(triad)))
    fail("NotATriad", "the exchange set must be a 3-element cocircuit");
  return dual(delta_y(dual(m), triad));
}

bool is_binary(const Matroid& m) { return !has_minor(m, catalog("U(2,4)")); }

}  // namespace mfrag
