#include "gw/graph.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <map>
#include <numeric>
#include <stdexcept>

#include "gw/errors.hpp"

namespace gw {

int FixedGraph::valence(int v) const {
  int c = 0;
  for (const auto& e : edges) c += (e.u == v) + (e.v == v);
  return c;
}

int FixedGraph::marks_at(int v) const {
  return static_cast<int>(std::count(markings.begin(), markings.end(), v));
}

std::vector<std::vector<int>> FixedGraph::incident_edges() const {
  std::vector<std::vector<int>> inc(vertices.size());
  for (size_t e = 0; e < edges.size(); ++e) {
    inc[static_cast<size_t>(edges[e].u)].push_back(static_cast<int>(e));
    inc[static_cast<size_t>(edges[e].v)].push_back(static_cast<int>(e));
  }
  return inc;
}

Degree FixedGraph::degree() const {
  Degree d;
  for (const auto& e : edges) {
    if (target == Target::ProductPP &&
        moving_factor(vertices[static_cast<size_t>(e.u)], vertices[static_cast<size_t>(e.v)]) == 2) {
      d.d2 += e.degree;
    } else {
      d.d1 += e.degree;
    }
  }
  return d;
}

void FixedGraph::validate() const {
  const int nv = static_cast<int>(vertices.size());
  if (nv == 0) throw std::logic_error("graph without vertices");
  if (static_cast<int>(edges.size()) != nv - 1) throw std::logic_error("not a tree: |E| != |V| - 1");
  for (const auto& p : vertices) {
    if (p.target != target) throw std::logic_error("vertex label of the wrong target");
    if (p.first < 0 || p.first >= n || p.second < 0 || p.second >= n) {
      throw std::logic_error("vertex label index out of range");
    }
  }
  std::vector<int> parent(static_cast<size_t>(nv));
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) {
    return parent[static_cast<size_t>(x)] == x ? x : parent[static_cast<size_t>(x)] = find(parent[static_cast<size_t>(x)]);
  };
  for (const auto& e : edges) {
    if (e.u < 0 || e.v < 0 || e.u >= nv || e.v >= nv) throw std::logic_error("edge endpoint out of range");
    if (e.degree < 1) throw std::logic_error("edge degree must be positive");
    if (!joined(vertices[static_cast<size_t>(e.u)], vertices[static_cast<size_t>(e.v)])) {
      throw std::logic_error("edge endpoints are not joined by an invariant curve");
    }
    const int a = find(e.u);
    const int b = find(e.v);
    if (a == b) throw std::logic_error("not a tree: cycle");
    parent[static_cast<size_t>(a)] = b;
  }
  for (int v : markings) {
    if (v < 0 || v >= nv) throw std::logic_error("marking on a missing vertex");
  }
  if (edges.empty() && markings.size() < 3) throw std::logic_error("unstable degree-zero graph");
}

// ---------------------------------------------------------------------------
// Canonical codes

namespace {

using Adjacency = std::vector<std::vector<std::pair<int, int>>>;  // (neighbor, edge degree)

Adjacency adjacency(const ColoredTree& t) {
  Adjacency adj(t.colors.size());
  for (const auto& e : t.edges) {
    adj[static_cast<size_t>(e.u)].push_back({e.v, e.degree});
    adj[static_cast<size_t>(e.v)].push_back({e.u, e.degree});
  }
  return adj;
}

void put_byte(std::string& s, int value) {
  if (value < 0 || value > 255) throw std::out_of_range("value does not fit a canonical byte");
  s.push_back(static_cast<char>(static_cast<unsigned char>(value)));
}

// node := [len color] color [n children] { [edge degree] node }* with
// children sorted by their encoded bytes.
std::string rooted_code(const ColoredTree& t, const Adjacency& adj, int v, int parent) {
  std::vector<std::string> kids;
  for (auto [w, deg] : adj[static_cast<size_t>(v)]) {
    if (w == parent) continue;
    std::string k;
    put_byte(k, deg);
    k += rooted_code(t, adj, w, v);
    kids.push_back(std::move(k));
  }
  std::sort(kids.begin(), kids.end());
  std::string s;
  const auto& color = t.colors[static_cast<size_t>(v)];
  put_byte(s, static_cast<int>(color.size()));
  s += color;
  put_byte(s, static_cast<int>(kids.size()));
  for (const auto& k : kids) s += k;
  return s;
}

// Automorphisms of the subtree rooted at v (fixing v).
std::uint64_t rooted_automorphisms(const ColoredTree& t, const Adjacency& adj, int v, int parent) {
  std::uint64_t count = 1;
  std::map<std::string, int> multiplicity;
  for (auto [w, deg] : adj[static_cast<size_t>(v)]) {
    if (w == parent) continue;
    count *= rooted_automorphisms(t, adj, w, v);
    std::string k;
    put_byte(k, deg);
    k += rooted_code(t, adj, w, v);
    ++multiplicity[k];
  }
  for (const auto& [code, mult] : multiplicity) {
    for (int i = 2; i <= mult; ++i) count *= static_cast<std::uint64_t>(i);
  }
  return count;
}

// One or two centers of the tree.
std::vector<int> centers(const Adjacency& adj) {
  const int nv = static_cast<int>(adj.size());
  if (nv <= 2) {
    std::vector<int> all(static_cast<size_t>(nv));
    std::iota(all.begin(), all.end(), 0);
    return all;
  }
  std::vector<int> deg(static_cast<size_t>(nv));
  std::vector<int> leaves;
  for (int v = 0; v < nv; ++v) {
    deg[static_cast<size_t>(v)] = static_cast<int>(adj[static_cast<size_t>(v)].size());
    if (deg[static_cast<size_t>(v)] <= 1) leaves.push_back(v);
  }
  int remaining = nv;
  while (remaining > 2) {
    remaining -= static_cast<int>(leaves.size());
    std::vector<int> next;
    for (int leaf : leaves) {
      for (auto [w, d] : adj[static_cast<size_t>(leaf)]) {
        if (--deg[static_cast<size_t>(w)] == 1) next.push_back(w);
      }
      deg[static_cast<size_t>(leaf)] = 0;
    }
    leaves = std::move(next);
  }
  std::sort(leaves.begin(), leaves.end());
  return leaves;
}

}  // namespace

std::string canonical_code(const ColoredTree& tree) {
  const Adjacency adj = adjacency(tree);
  std::string best;
  for (int root : centers(adj)) {
    std::string code = rooted_code(tree, adj, root, -1);
    if (best.empty() || code < best) best = std::move(code);
  }
  return best;
}

std::uint64_t automorphism_count(const ColoredTree& tree) {
  const Adjacency adj = adjacency(tree);
  const auto c = centers(adj);
  if (c.size() == 1) return rooted_automorphisms(tree, adj, c[0], -1);
  // Bicentral: the central edge is preserved; its ends may swap.
  std::uint64_t count = rooted_automorphisms(tree, adj, c[0], c[1]) *
                        rooted_automorphisms(tree, adj, c[1], c[0]);
  if (rooted_code(tree, adj, c[0], c[1]) == rooted_code(tree, adj, c[1], c[0])) count *= 2;
  return count;
}

std::uint64_t automorphism_count_brute_force(const ColoredTree& tree) {
  const size_t nv = tree.colors.size();
  std::vector<int> perm(nv);
  std::iota(perm.begin(), perm.end(), 0);
  std::map<std::pair<int, int>, int> edge_deg;
  for (const auto& e : tree.edges) {
    edge_deg[{std::min(e.u, e.v), std::max(e.u, e.v)}] = e.degree;
  }
  std::uint64_t count = 0;
  do {
    bool ok = true;
    for (size_t v = 0; v < nv && ok; ++v) ok = tree.colors[v] == tree.colors[static_cast<size_t>(perm[v])];
    for (const auto& [key, deg] : edge_deg) {
      if (!ok) break;
      const int a = perm[static_cast<size_t>(key.first)];
      const int b = perm[static_cast<size_t>(key.second)];
      auto it = edge_deg.find({std::min(a, b), std::max(a, b)});
      ok = it != edge_deg.end() && it->second == deg;
    }
    if (ok) ++count;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return count;
}

ColoredTree to_colored_tree(const FixedGraph& g) {
  ColoredTree t;
  for (size_t v = 0; v < g.vertices.size(); ++v) {
    std::string color;
    put_byte(color, g.vertices[v].first);
    put_byte(color, g.vertices[v].second);
    std::string marks;
    for (size_t k = 0; k < g.markings.size(); ++k) {
      if (g.markings[k] == static_cast<int>(v)) put_byte(marks, static_cast<int>(k));
    }
    put_byte(color, static_cast<int>(marks.size()));
    color += marks;
    t.colors.push_back(std::move(color));
  }
  t.edges = g.edges;
  return t;
}

std::string canonical_form(const FixedGraph& g) {
  std::string s;
  put_byte(s, static_cast<int>(g.target));
  put_byte(s, g.n);
  put_byte(s, static_cast<int>(g.markings.size()));
  put_byte(s, static_cast<int>(g.vertices.size()));
  s += canonical_code(to_colored_tree(g));
  return s;
}

namespace {

struct Decoder {
  const std::string& bytes;
  size_t pos = 0;
  int next() {
    if (pos >= bytes.size()) throw CacheCorruption("truncated canonical form");
    return static_cast<unsigned char>(bytes[pos++]);
  }
};

int decode_node(Decoder& in, FixedGraph& g) {
  const int len = in.next();
  if (len < 3) throw CacheCorruption("malformed vertex color");
  const int first = in.next();
  const int second = in.next();
  const int nmarks = in.next();
  if (len != 3 + nmarks) throw CacheCorruption("malformed vertex color");
  const int v = static_cast<int>(g.vertices.size());
  g.vertices.push_back({g.target, first, second});
  for (int i = 0; i < nmarks; ++i) {
    const int k = in.next();
    if (k >= static_cast<int>(g.markings.size())) throw CacheCorruption("marking out of range");
    g.markings[static_cast<size_t>(k)] = v;
  }
  const int kids = in.next();
  for (int i = 0; i < kids; ++i) {
    const int deg = in.next();
    const int w = decode_node(in, g);
    g.edges.push_back({v, w, deg});
  }
  return v;
}

}  // namespace

FixedGraph decode_canonical(const std::string& bytes) {
  Decoder in{bytes};
  FixedGraph g;
  const int target = in.next();
  if (target > 2) throw CacheCorruption("unknown target tag");
  g.target = static_cast<Target>(target);
  g.n = in.next();
  g.markings.assign(static_cast<size_t>(in.next()), -1);
  const int nv = in.next();
  decode_node(in, g);
  if (in.pos != bytes.size() || static_cast<int>(g.vertices.size()) != nv) {
    throw CacheCorruption("trailing or missing bytes in canonical form");
  }
  try {
    g.validate();
  } catch (const std::logic_error& e) {
    throw CacheCorruption(std::string("decoded graph is invalid: ") + e.what());
  }
  return g;
}

std::uint64_t automorphism_order(const FixedGraph& g) { return automorphism_count(to_colored_tree(g)); }

GraphWithSymmetry with_symmetry(FixedGraph g) {
  GraphWithSymmetry out;
  out.canonical = canonical_form(g);
  out.aut_order = automorphism_order(g);
  Integer divisor(static_cast<unsigned long>(out.aut_order));
  for (const auto& e : g.edges) divisor *= e.degree;
  out.divisor = divisor;
  out.graph = std::move(g);
  return out;
}

// ---------------------------------------------------------------------------
// Enumeration

namespace {

void check_degree(Target target, int n, Degree degree, int m) {
  if (degree.d1 < 0 || degree.d2 < 0) throw InvalidDegree("negative degree component");
  if (target != Target::ProductPP && degree.d2 != 0) {
    throw InvalidDegree("only (P^{n-1})^2 carries a bidegree");
  }
  if (m < 0) throw InvalidDegree("negative number of marked points");
  if (n < 2 || n > 255 || (target == Target::Grassmannian && n < 3)) {
    throw InvalidDimension("unsupported n = " + std::to_string(n));
  }
}

// Compositions of total into parts positive parts.
void compositions(int total, int parts, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
  if (parts == 0) {
    if (total == 0) out.push_back(cur);
    return;
  }
  for (int first = 1; first <= total - (parts - 1); ++first) {
    cur.push_back(first);
    compositions(total - first, parts - 1, cur, out);
    cur.pop_back();
  }
}

std::vector<std::vector<int>> compositions(int total, int parts) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  compositions(total, parts, cur, out);
  return out;
}

// Calls emit(g) for every assignment of edge degrees compatible with the
// bidegree, and every distribution of marked points.
template <class Emit>
void expand_degrees_and_marks(FixedGraph g, Degree degree, int m, Emit&& emit) {
  std::vector<int> f1, f2;
  for (size_t e = 0; e < g.edges.size(); ++e) {
    const bool second = g.target == Target::ProductPP &&
                        moving_factor(g.vertices[static_cast<size_t>(g.edges[e].u)],
                                      g.vertices[static_cast<size_t>(g.edges[e].v)]) == 2;
    (second ? f2 : f1).push_back(static_cast<int>(e));
  }
  const auto c1 = compositions(degree.d1, static_cast<int>(f1.size()));
  const auto c2 = compositions(degree.d2, static_cast<int>(f2.size()));
  const int nv = static_cast<int>(g.vertices.size());
  for (const auto& a : c1) {
    for (const auto& b : c2) {
      for (size_t i = 0; i < f1.size(); ++i) g.edges[static_cast<size_t>(f1[i])].degree = a[i];
      for (size_t i = 0; i < f2.size(); ++i) g.edges[static_cast<size_t>(f2[i])].degree = b[i];
      g.markings.assign(static_cast<size_t>(m), 0);
      while (true) {
        emit(g);
        int k = 0;
        while (k < m && ++g.markings[static_cast<size_t>(k)] == nv) g.markings[static_cast<size_t>(k++)] = 0;
        if (k == m) break;
      }
    }
  }
}

}  // namespace

std::vector<GraphWithSymmetry> enumerate_graphs(Target target, int n, Degree degree, int m) {
  check_degree(target, n, degree, m);
  std::map<std::string, FixedGraph> found;
  const auto points = fixed_points(target, n);
  auto emit = [&](const FixedGraph& g) { found.try_emplace(canonical_form(g), g); };

  const int total = degree.total();
  if (total == 0) {
    if (m >= 3) {
      for (const auto& p : points) {
        FixedGraph g{target, n, {p}, {}, {}};
        expand_degrees_and_marks(g, degree, m, emit);
      }
    }
  }
  for (int edges = 1; edges <= total; ++edges) {
    // Increasing trees: vertex k > 0 hangs from some earlier vertex.
    std::vector<int> parent(static_cast<size_t>(edges + 1), 0);
    while (true) {
      FixedGraph g{target, n, std::vector<FixedPoint>(static_cast<size_t>(edges + 1)), {}, {}};
      for (int k = 1; k <= edges; ++k) g.edges.push_back({parent[static_cast<size_t>(k)], k, 1});
      std::function<void(int)> label = [&](int k) {
        if (k > edges) {
          int f1 = 0, f2 = 0;
          for (const auto& e : g.edges) {
            (moving_factor(g.vertices[static_cast<size_t>(e.u)], g.vertices[static_cast<size_t>(e.v)]) == 2 ? f2 : f1)++;
          }
          if (f1 > degree.d1 || f2 > degree.d2) return;
          if ((f1 == 0) != (degree.d1 == 0) || (f2 == 0) != (degree.d2 == 0)) return;
          expand_degrees_and_marks(g, degree, m, emit);
          return;
        }
        for (const auto& q : neighbors(g.vertices[static_cast<size_t>(parent[static_cast<size_t>(k)])], n)) {
          g.vertices[static_cast<size_t>(k)] = q;
          label(k + 1);
        }
      };
      for (const auto& p : points) {
        g.vertices[0] = p;
        label(1);
      }
      // Next parent array in mixed radix (parent[k] < k).
      int k = 2;
      while (k <= edges && ++parent[static_cast<size_t>(k)] == k) parent[static_cast<size_t>(k++)] = 0;
      if (k > edges) break;
    }
  }
  std::vector<GraphWithSymmetry> out;
  out.reserve(found.size());
  for (auto& [code, g] : found) {
    GraphWithSymmetry s = with_symmetry(std::move(g));
    out.push_back(std::move(s));
  }
  return out;
}

bool isomorphic_brute_force(const FixedGraph& a, const FixedGraph& b) {
  if (a.target != b.target || a.n != b.n || a.vertices.size() != b.vertices.size() ||
      a.edges.size() != b.edges.size() || a.markings.size() != b.markings.size()) {
    return false;
  }
  const size_t nv = a.vertices.size();
  std::map<std::pair<int, int>, int> eb;
  for (const auto& e : b.edges) eb[{std::min(e.u, e.v), std::max(e.u, e.v)}] = e.degree;
  std::vector<int> perm(nv);
  std::iota(perm.begin(), perm.end(), 0);
  do {
    bool ok = true;
    for (size_t v = 0; v < nv && ok; ++v) ok = a.vertices[v] == b.vertices[static_cast<size_t>(perm[v])];
    for (size_t k = 0; k < a.markings.size() && ok; ++k) {
      ok = perm[static_cast<size_t>(a.markings[k])] == b.markings[k];
    }
    for (const auto& e : a.edges) {
      if (!ok) break;
      const int x = perm[static_cast<size_t>(e.u)];
      const int y = perm[static_cast<size_t>(e.v)];
      auto it = eb.find({std::min(x, y), std::max(x, y)});
      ok = it != eb.end() && it->second == e.degree;
    }
    if (ok) return true;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return false;
}

std::vector<FixedGraph> enumerate_graphs_naive(Target target, int n, Degree degree, int m) {
  check_degree(target, n, degree, m);
  const auto points = fixed_points(target, n);
  std::vector<FixedGraph> candidates;
  const int total = degree.total();
  auto consider = [&](const FixedGraph& g) {
    // Every labeling / degree / marking choice, filtered by the invariants.
    const size_t nv = g.vertices.size();
    std::vector<size_t> idx(nv, 0);
    while (true) {
      FixedGraph h = g;
      for (size_t v = 0; v < nv; ++v) h.vertices[v] = points[idx[v]];
      bool ok = true;
      for (const auto& e : h.edges) ok = ok && joined(h.vertices[static_cast<size_t>(e.u)], h.vertices[static_cast<size_t>(e.v)]);
      if (ok) {
        std::vector<int> degs(h.edges.size(), 1);
        while (true) {
          for (size_t e = 0; e < degs.size(); ++e) h.edges[e].degree = degs[e];
          if (h.degree() == degree) {
            std::vector<int> marks(static_cast<size_t>(m), 0);
            while (true) {
              h.markings = marks;
              candidates.push_back(h);
              int k = 0;
              while (k < m && ++marks[static_cast<size_t>(k)] == static_cast<int>(nv)) marks[static_cast<size_t>(k++)] = 0;
              if (k == m) break;
            }
          }
          size_t e = 0;
          while (e < degs.size() && ++degs[e] > total) degs[e++] = 1;
          if (e == degs.size()) break;
        }
      }
      size_t v = 0;
      while (v < nv && ++idx[v] == points.size()) idx[v++] = 0;
      if (v == nv) break;
    }
  };
  if (total == 0) {
    if (m >= 3) consider(FixedGraph{target, n, {points[0]}, {}, {}});
  }
  for (int nv = 2; nv <= total + 1; ++nv) {
    // Labeled trees on nv vertices from Pruefer sequences.
    std::vector<int> seq(static_cast<size_t>(nv - 2), 0);
    while (true) {
      std::vector<int> deg(static_cast<size_t>(nv), 1);
      for (int x : seq) ++deg[static_cast<size_t>(x)];
      FixedGraph g{target, n, std::vector<FixedPoint>(static_cast<size_t>(nv), points[0]), {}, {}};
      for (int x : seq) {
        int leaf = 0;
        while (deg[static_cast<size_t>(leaf)] != 1) ++leaf;
        g.edges.push_back({leaf, x, 1});
        --deg[static_cast<size_t>(leaf)];
        --deg[static_cast<size_t>(x)];
      }
      int u = -1, w = -1;
      for (int v = 0; v < nv; ++v) {
        if (deg[static_cast<size_t>(v)] == 1) (u < 0 ? u : w) = v;
      }
      g.edges.push_back({u, w, 1});
      consider(g);
      size_t k = 0;
      while (k < seq.size() && ++seq[k] == nv) seq[k++] = 0;
      if (k == seq.size()) break;
    }
  }
  // Dedupe by brute-force isomorphism within buckets of a cheap invariant.
  auto invariant = [](const FixedGraph& g) {
    std::vector<std::pair<FixedPoint, int>> labels;
    for (size_t v = 0; v < g.vertices.size(); ++v) labels.push_back({g.vertices[v], g.marks_at(static_cast<int>(v))});
    std::sort(labels.begin(), labels.end());
    std::vector<int> degs;
    for (const auto& e : g.edges) degs.push_back(e.degree);
    std::sort(degs.begin(), degs.end());
    std::string key;
    for (const auto& [p, k] : labels) key += p.to_string() + ":" + std::to_string(k) + ";";
    for (int d : degs) key += std::to_string(d) + ",";
    std::vector<FixedPoint> marked;
    for (int v : g.markings) marked.push_back(g.vertices[static_cast<size_t>(v)]);
    for (const auto& p : marked) key += p.to_string();
    return key;
  };
  std::map<std::string, std::vector<FixedGraph>> buckets;
  for (auto& g : candidates) {
    auto& bucket = buckets[invariant(g)];
    bool seen = false;
    for (const auto& h : bucket) {
      if (isomorphic_brute_force(g, h)) {
        seen = true;
        break;
      }
    }
    if (!seen) bucket.push_back(std::move(g));
  }
  std::vector<FixedGraph> out;
  for (auto& [key, bucket] : buckets) {
    for (auto& g : bucket) out.push_back(std::move(g));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Cache

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string CacheKey::to_string() const {
  return "target=" + target_name(target) + ";n=" + std::to_string(n) + ";d=" + std::to_string(degree.d1) +
         "," + std::to_string(degree.d2) + ";m=" + std::to_string(m) +
         ";algo=" + std::to_string(kEnumerationVersion);
}

std::string CacheKey::file_name() const {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a64(to_string())));
  return std::string("graphs-") + buf + ".gwc";
}

namespace {

constexpr std::string_view kMagic = "GWCACHE1";

void put_u64(std::string& s, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) s.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

std::uint64_t get_u64(const std::string& s, size_t& pos) {
  if (pos + 8 > s.size()) throw CacheCorruption("truncated cache file");
  std::uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(static_cast<unsigned char>(s[pos + static_cast<size_t>(i)])) << (8 * i);
  pos += 8;
  return v;
}

std::string get_bytes(const std::string& s, size_t& pos) {
  const auto len = get_u64(s, pos);
  if (len > s.size() - pos) throw CacheCorruption("truncated cache record");
  std::string out = s.substr(pos, len);
  pos += len;
  return out;
}

}  // namespace

void write_cache(const std::filesystem::path& dir, const CacheKey& key,
                 const std::vector<GraphWithSymmetry>& graphs) {
  std::filesystem::create_directories(dir);
  std::string body(kMagic);
  const std::string k = key.to_string();
  put_u64(body, k.size());
  body += k;
  put_u64(body, graphs.size());
  for (const auto& g : graphs) {
    put_u64(body, g.canonical.size());
    body += g.canonical;
    put_u64(body, g.aut_order);
  }
  put_u64(body, fnv1a64(body));
  const auto final_path = dir / key.file_name();
  auto tmp = final_path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write cache file " + tmp.string());
    out.write(body.data(), static_cast<std::streamsize>(body.size()));
    if (!out) throw std::runtime_error("short write on " + tmp.string());
  }
  std::filesystem::rename(tmp, final_path);
}

std::optional<std::vector<GraphWithSymmetry>> read_cache(const std::filesystem::path& dir,
                                                         const CacheKey& key) {
  const auto path = dir / key.file_name();
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::string data((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (data.size() < kMagic.size() + 8 || data.compare(0, kMagic.size(), kMagic) != 0) {
    throw CacheCorruption("bad magic in " + path.string());
  }
  size_t tail = data.size() - 8;
  if (get_u64(data, tail) != fnv1a64(std::string_view(data).substr(0, data.size() - 8))) {
    throw CacheCorruption("checksum mismatch in " + path.string());
  }
  const std::string body = data.substr(0, data.size() - 8);
  size_t pos = kMagic.size();
  if (get_bytes(body, pos) != key.to_string()) throw CacheCorruption("cache key mismatch in " + path.string());
  const auto count = get_u64(body, pos);
  std::vector<GraphWithSymmetry> out;
  for (std::uint64_t i = 0; i < count; ++i) {
    std::string canon = get_bytes(body, pos);
    const auto aut = get_u64(body, pos);
    GraphWithSymmetry g = with_symmetry(decode_canonical(canon));
    if (g.canonical != canon || g.aut_order != aut) {
      throw CacheCorruption("cached record does not match its recomputation");
    }
    out.push_back(std::move(g));
  }
  if (pos != body.size()) throw CacheCorruption("trailing bytes in " + path.string());
  return out;
}

CachedEnumeration enumerate_graphs_cached(const std::filesystem::path& dir, Target target, int n,
                                          Degree degree, int m) {
  const CacheKey key{target, n, degree, m};
  if (auto cached = read_cache(dir, key)) return {std::move(*cached), true};
  auto graphs = enumerate_graphs(target, n, degree, m);
  write_cache(dir, key, graphs);
  return {std::move(graphs), false};
}

}  // namespace gw
