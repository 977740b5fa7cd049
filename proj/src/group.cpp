#include "cayley/group.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <deque>
#include <numeric>
#include <sstream>

#include "json.hpp"

namespace cayley {

namespace {

constexpr std::size_t kMaxTableOrder = 4096;
constexpr std::size_t kMaxOrder = std::size_t{1} << 24;
constexpr std::size_t kAssociativityCheckLimit = 128;

std::size_t order_of(const GroupKind& kind) {
  return std::visit(
      [](const auto& k) -> std::size_t {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, HypercubeZ2d>) {
          if (k.dimension < 1 || k.dimension > 24)
            throw GroupError(GroupErrc::TooLarge,
                             "hypercube dimension must be in 1..24");
          return std::size_t{1} << k.dimension;
        } else if constexpr (std::is_same_v<K, AbelianProduct>) {
          if (k.moduli.empty())
            throw GroupError(GroupErrc::InvalidGroup, "abelian product has no factors");
          std::size_t n = 1;
          for (auto m : k.moduli) {
            if (m == 0)
              throw GroupError(GroupErrc::InvalidGroup, "modulus must be positive");
            n *= m;
            if (n > kMaxOrder)
              throw GroupError(GroupErrc::TooLarge, "abelian product order exceeds 2^24");
          }
          return n;
        } else {
          if (k.order == 0 || k.order > kMaxTableOrder)
            throw GroupError(GroupErrc::TooLarge, "explicit table order must be in 1..4096");
          if (k.table.size() != k.order * k.order)
            throw GroupError(GroupErrc::InvalidGroup, "multiplication table has wrong size");
          return k.order;
        }
      },
      kind);
}

}  // namespace

Group::Group(GroupKind kind) : kind_(std::move(kind)), order_(order_of(kind_)) {
  auto* table = std::get_if<ExplicitTable>(&kind_);
  if (table == nullptr) return;
  const std::size_t n = table->order;
  for (auto v : table->table)
    if (v >= n) throw GroupError(GroupErrc::InvalidGroup, "table entry out of range");

  bool found = false;
  for (Element e = 0; e < n && !found; ++e) {
    bool is_identity = true;
    for (Element x = 0; x < n && is_identity; ++x)
      is_identity = table->table[e * n + x] == x && table->table[x * n + e] == x;
    if (is_identity) {
      identity_ = e;
      found = true;
    }
  }
  if (!found) throw GroupError(GroupErrc::InvalidGroup, "table has no identity");

  inverse_.assign(n, n);
  for (Element a = 0; a < n; ++a)
    for (Element b = 0; b < n; ++b)
      if (table->table[a * n + b] == identity_) inverse_[a] = b;
  for (Element a = 0; a < n; ++a)
    if (inverse_[a] == n || table->table[inverse_[a] * n + a] != identity_)
      throw GroupError(GroupErrc::InvalidGroup, "element without two-sided inverse");

  if (n <= kAssociativityCheckLimit) {
    for (Element a = 0; a < n; ++a)
      for (Element b = 0; b < n; ++b)
        for (Element c = 0; c < n; ++c) {
          const auto ab = table->table[a * n + b];
          const auto bc = table->table[b * n + c];
          if (table->table[ab * n + c] != table->table[a * n + bc])
            throw GroupError(GroupErrc::InvalidGroup, "table is not associative");
        }
  }
}

Element Group::multiply(Element a, Element b) const {
  if (std::holds_alternative<HypercubeZ2d>(kind_)) return a ^ b;
  if (const auto* ab = std::get_if<AbelianProduct>(&kind_)) {
    Element result = 0;
    Element stride = 1;
    for (std::size_t i = ab->moduli.size(); i-- > 0;) {
      const auto m = ab->moduli[i];
      const auto da = (a / stride) % m;
      const auto db = (b / stride) % m;
      result += ((da + db) % m) * stride;
      stride *= m;
    }
    return result;
  }
  const auto& t = std::get<ExplicitTable>(kind_);
  return t.table[static_cast<std::size_t>(a) * t.order + b];
}

Element Group::inverse(Element a) const {
  if (std::holds_alternative<HypercubeZ2d>(kind_)) return a;
  if (const auto* ab = std::get_if<AbelianProduct>(&kind_)) {
    Element result = 0;
    Element stride = 1;
    for (std::size_t i = ab->moduli.size(); i-- > 0;) {
      const auto m = ab->moduli[i];
      const auto da = (a / stride) % m;
      result += ((m - da) % m) * stride;
      stride *= m;
    }
    return result;
  }
  return inverse_[a];
}

Element encode_abelian(const AbelianProduct& g, const std::vector<long>& tuple) {
  if (tuple.size() != g.moduli.size())
    throw GroupError(GroupErrc::InvalidGroup, "tuple arity does not match moduli");
  Element result = 0;
  for (std::size_t i = 0; i < tuple.size(); ++i) {
    const long m = g.moduli[i];
    const long r = ((tuple[i] % m) + m) % m;
    result = result * static_cast<Element>(m) + static_cast<Element>(r);
  }
  return result;
}

std::vector<long> decode_abelian(const AbelianProduct& g, Element e) {
  std::vector<long> out(g.moduli.size());
  for (std::size_t i = g.moduli.size(); i-- > 0;) {
    out[i] = static_cast<long>(e % g.moduli[i]);
    e /= g.moduli[i];
  }
  return out;
}

Vertex CayleyGraph::neighbor(Vertex v, std::size_t gen) const {
  if (adjacency_.empty()) return v ^ generators_[gen];
  return adjacency_[static_cast<std::size_t>(v) * degree_ + gen];
}

std::optional<std::uint32_t> CayleyGraph::generator_of(Vertex u, Vertex v) const {
  if (u >= vertex_count_ || v >= vertex_count_) return std::nullopt;
  for (std::size_t g = 0; g < degree_; ++g)
    if (neighbor(u, g) == v) return static_cast<std::uint32_t>(g);
  return std::nullopt;
}

bool CayleyGraph::has_edge(Vertex u, Vertex v) const {
  if (cube_dim_) return u < vertex_count_ && v < vertex_count_ && std::popcount(u ^ v) == 1;
  return generator_of(u, v).has_value();
}

std::vector<GraphEdge> CayleyGraph::edges() const {
  std::vector<GraphEdge> out;
  out.reserve(vertex_count_ * degree_);
  for (Vertex v = 0; v < vertex_count_; ++v)
    for (std::uint32_t g = 0; g < degree_; ++g) out.push_back({v, neighbor(v, g), g});
  return out;
}

Element CayleyGraph::label(Vertex v) const { return labels_.empty() ? v : labels_[v]; }

namespace {

// Gaussian elimination over GF(2).
std::size_t gf2_rank(std::vector<Element> rows) {
  std::size_t rank = 0;
  for (int bit = 31; bit >= 0; --bit) {
    auto pivot = std::find_if(rows.begin() + static_cast<long>(rank), rows.end(),
                              [bit](Element r) { return (r >> bit) & 1u; });
    if (pivot == rows.end()) continue;
    std::swap(rows[rank], *pivot);
    for (std::size_t i = 0; i < rows.size(); ++i)
      if (i != rank && ((rows[i] >> bit) & 1u)) rows[i] ^= rows[rank];
    ++rank;
  }
  return rank;
}

}  // namespace

CayleyGraph build_cayley_graph(const GroupSpec& spec) {
  Group group(spec.kind);
  const std::size_t order = group.order();
  const Element e = group.identity();

  std::vector<Element> gens = spec.generators;
  const auto* cube = std::get_if<HypercubeZ2d>(&spec.kind);
  if (gens.empty() && cube != nullptr)
    for (int i = 0; i < cube->dimension; ++i) gens.push_back(Element{1} << i);
  if (gens.empty()) throw GroupError(GroupErrc::NotGenerating, "no generators");
  for (auto g : gens)
    if (g >= order) throw GroupError(GroupErrc::InvalidGroup, "generator out of range");

  std::vector<Element> subgroup = spec.subgroup;
  if (std::find(subgroup.begin(), subgroup.end(), e) == subgroup.end()) subgroup.push_back(e);
  std::sort(subgroup.begin(), subgroup.end());
  subgroup.erase(std::unique(subgroup.begin(), subgroup.end()), subgroup.end());
  for (auto h : subgroup) {
    if (h >= order) throw GroupError(GroupErrc::InvalidGroup, "subgroup element out of range");
    for (auto k : subgroup)
      if (!std::binary_search(subgroup.begin(), subgroup.end(), group.multiply(h, k)))
        throw GroupError(GroupErrc::InvalidGroup, "subgroup is not closed");
  }
  const bool trivial_h = subgroup.size() == 1;

  CayleyGraph g;
  g.name_ = spec.name;
  g.transitive_ = true;
  g.degree_ = gens.size();
  g.generators_ = gens;

  if (trivial_h) {
    for (auto d : gens)
      if (d == e) throw GroupError(GroupErrc::IdentityGenerator, "identity used as generator");
    auto sorted = gens;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      throw GroupError(GroupErrc::CosetConditionViolated,
                       "generators are not distinct coset representatives");
    g.vertex_count_ = order;
    g.identity_vertex_ = e;
    g.group_ = group;

    if (cube != nullptr) {
      if (gf2_rank(gens) != static_cast<std::size_t>(cube->dimension))
        throw GroupError(GroupErrc::NotGenerating, "generators do not span Z_2^d");
      bool canonical = static_cast<int>(gens.size()) == cube->dimension;
      for (std::size_t i = 0; canonical && i < gens.size(); ++i)
        canonical = gens[i] == (Element{1} << i);
      if (canonical) g.cube_dim_ = cube->dimension;
      g.bidirectional_ = true;
      return g;
    }
    g.adjacency_.resize(order * gens.size());
    for (Element x = 0; x < order; ++x)
      for (std::size_t i = 0; i < gens.size(); ++i)
        g.adjacency_[x * gens.size() + i] = group.multiply(x, gens[i]);
  } else {
    // Coset label: minimum element of gH.
    std::vector<Element> label(order);
    for (Element x = 0; x < order; ++x) {
      Element best = group.multiply(x, subgroup.front());
      for (auto h : subgroup) best = std::min(best, group.multiply(x, h));
      label[x] = best;
    }
    const Element identity_label = label[e];
    std::vector<Element> gen_labels;
    for (auto d : gens) {
      if (label[d] == identity_label)
        throw GroupError(GroupErrc::IdentityGenerator, "generator lies in the subgroup");
      gen_labels.push_back(label[d]);
    }
    auto sorted = gen_labels;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      throw GroupError(GroupErrc::CosetConditionViolated,
                       "generators are not distinct coset representatives");
    for (auto h : subgroup)
      for (auto d : gens)
        if (!std::binary_search(sorted.begin(), sorted.end(), label[group.multiply(h, d)]))
          throw GroupError(GroupErrc::CosetConditionViolated, "H Delta H != Delta H");

    std::vector<Element> labels(label);
    std::sort(labels.begin(), labels.end());
    labels.erase(std::unique(labels.begin(), labels.end()), labels.end());
    std::vector<Vertex> vertex_of(order, 0);
    for (Vertex v = 0; v < labels.size(); ++v) vertex_of[labels[v]] = v;

    g.vertex_count_ = labels.size();
    g.identity_vertex_ = vertex_of[identity_label];
    g.labels_ = labels;
    g.adjacency_.resize(labels.size() * gens.size());
    for (Vertex v = 0; v < labels.size(); ++v)
      for (std::size_t i = 0; i < gens.size(); ++i)
        g.adjacency_[v * gens.size() + i] = vertex_of[label[group.multiply(labels[v], gens[i])]];
  }

  // Property (i): every coset reachable from H.
  const auto dist = distances_from(g, g.identity_vertex_);
  if (std::any_of(dist.begin(), dist.end(), [](int x) { return x < 0; }))
    throw GroupError(GroupErrc::NotGenerating, "generators and subgroup do not generate the group");

  bool bidi = true;
  for (Vertex v = 0; v < g.vertex_count_ && bidi; ++v)
    for (std::size_t i = 0; i < g.degree_ && bidi; ++i)
      bidi = g.has_edge(g.neighbor(v, i), v);
  g.bidirectional_ = bidi;
  return g;
}

CayleyGraph make_unchecked_graph(std::size_t vertex_count,
                                 std::vector<std::vector<Vertex>> out_neighbors,
                                 std::string name) {
  if (out_neighbors.size() != vertex_count)
    throw GroupError(GroupErrc::InvalidGroup, "neighbor list count mismatch");
  const std::size_t deg = vertex_count == 0 ? 0 : out_neighbors.front().size();
  CayleyGraph g;
  g.name_ = std::move(name);
  g.vertex_count_ = vertex_count;
  g.degree_ = deg;
  g.adjacency_.reserve(vertex_count * deg);
  for (const auto& list : out_neighbors) {
    if (list.size() != deg)
      throw GroupError(GroupErrc::InvalidGroup, "unchecked graph must be out-regular");
    for (auto v : list) {
      if (v >= vertex_count) throw GroupError(GroupErrc::InvalidGroup, "neighbor out of range");
      g.adjacency_.push_back(v);
    }
  }
  bool bidi = true;
  for (Vertex v = 0; v < vertex_count && bidi; ++v)
    for (std::size_t i = 0; i < deg && bidi; ++i) bidi = g.has_edge(g.neighbor(v, i), v);
  g.bidirectional_ = bidi;
  return g;
}

CayleyGraph make_hypercube(int dimension) {
  GroupSpec spec{HypercubeZ2d{dimension}, {}, {}, "q" + std::to_string(dimension)};
  return build_cayley_graph(spec);
}

std::vector<int> distances_from(const CayleyGraph& graph, Vertex v) {
  std::vector<int> dist(graph.vertex_count(), -1);
  if (v >= graph.vertex_count()) return dist;
  std::deque<Vertex> queue{v};
  dist[v] = 0;
  while (!queue.empty()) {
    const Vertex u = queue.front();
    queue.pop_front();
    for (std::size_t g = 0; g < graph.degree(); ++g) {
      const Vertex w = graph.neighbor(u, g);
      if (dist[w] < 0) {
        dist[w] = dist[u] + 1;
        queue.push_back(w);
      }
    }
  }
  return dist;
}

std::size_t distance(const CayleyGraph& graph, Vertex u, Vertex v) {
  if (u >= graph.vertex_count() || v >= graph.vertex_count())
    throw GroupError(GroupErrc::InvalidGroup, "vertex out of range");
  if (graph.hypercube_dimension()) return static_cast<std::size_t>(std::popcount(u ^ v));
  const int d = distances_from(graph, u)[v];
  if (d < 0) throw GroupError(GroupErrc::Unreachable, "target unreachable");
  return static_cast<std::size_t>(d);
}

std::size_t diameter(const CayleyGraph& graph) {
  if (graph.vertex_count() <= 1) return 0;
  if (auto d = graph.hypercube_dimension()) return static_cast<std::size_t>(*d);
  // Coset graphs are vertex-transitive; raw graphs need every source.
  const bool transitive = graph.vertex_transitive();
  std::size_t best = 0;
  const std::size_t sources = transitive ? 1 : graph.vertex_count();
  for (Vertex s = 0; s < sources; ++s) {
    const Vertex src = transitive ? graph.identity_vertex() : s;
    for (int x : distances_from(graph, src)) {
      if (x < 0) throw GroupError(GroupErrc::Unreachable, "graph is not strongly connected");
      best = std::max(best, static_cast<std::size_t>(x));
    }
  }
  return best;
}

std::vector<Vertex> ball(const CayleyGraph& graph, Vertex v, std::size_t radius) {
  std::vector<Vertex> out;
  const auto dist = distances_from(graph, v);
  for (Vertex u = 0; u < dist.size(); ++u)
    if (dist[u] >= 0 && static_cast<std::size_t>(dist[u]) <= radius) out.push_back(u);
  return out;
}

namespace {

std::size_t parse_suffix(const std::string& name, std::size_t prefix_len) {
  const auto digits = name.substr(prefix_len);
  if (digits.empty() || !std::all_of(digits.begin(), digits.end(), ::isdigit))
    throw GroupError(GroupErrc::InvalidGroup, "unknown builtin graph '" + name + "'");
  return std::stoul(digits);
}

// S_5 with elements indexed in lexicographic permutation order and
// (a*b)(x) = a(b(x)).
struct SymmetricGroup5 {
  std::vector<std::array<int, 5>> perms;
  ExplicitTable table;

  SymmetricGroup5() {
    std::array<int, 5> p{0, 1, 2, 3, 4};
    do perms.push_back(p);
    while (std::next_permutation(p.begin(), p.end()));
    table.order = perms.size();
    table.table.resize(table.order * table.order);
    for (std::size_t a = 0; a < perms.size(); ++a)
      for (std::size_t b = 0; b < perms.size(); ++b) {
        std::array<int, 5> c{};
        for (int x = 0; x < 5; ++x) c[x] = perms[a][perms[b][x]];
        table.table[a * table.order + b] = index_of(c);
      }
  }

  Element index_of(const std::array<int, 5>& p) const {
    return static_cast<Element>(std::lower_bound(perms.begin(), perms.end(), p) - perms.begin());
  }
};

}  // namespace

GroupSpec builtin_group_spec(const std::string& name) {
  if (name.size() > 1 && name[0] == 'q') {
    const auto d = parse_suffix(name, 1);
    if (d < 1 || d > 24) throw GroupError(GroupErrc::TooLarge, "hypercube dimension must be in 1..24");
    return GroupSpec{HypercubeZ2d{static_cast<int>(d)}, {}, {}, name};
  }
  if (name == "petersen") {
    // Kneser graph K(5,2) as the coset graph of S_5 over the stabilizer of
    // the pair {3,4}; the three generators are involutions moving {3,4} to
    // the three pairs inside {0,1,2}.
    SymmetricGroup5 s5;
    std::vector<Element> stabilizer;
    for (std::size_t i = 0; i < s5.perms.size(); ++i) {
      const auto& p = s5.perms[i];
      if ((p[3] == 3 && p[4] == 4) || (p[3] == 4 && p[4] == 3))
        stabilizer.push_back(static_cast<Element>(i));
    }
    const std::vector<Element> gens = {
        s5.index_of({3, 4, 2, 0, 1}),  // (0 3)(1 4)
        s5.index_of({3, 1, 4, 0, 2}),  // (0 3)(2 4)
        s5.index_of({0, 3, 4, 1, 2}),  // (1 3)(2 4)
    };
    return GroupSpec{s5.table, gens, stabilizer, name};
  }
  if (name == "z2z8x5") {
    // Z_2 x Z_8 with five generators; the Z_8 coordinate carries the +-1 steps.
    AbelianProduct g{{2, 8}};
    std::vector<Element> gens = {
        encode_abelian(g, {0, 1}), encode_abelian(g, {0, -1}), encode_abelian(g, {1, 0}),
        encode_abelian(g, {1, 1}), encode_abelian(g, {1, -1}),
    };
    return GroupSpec{g, gens, {}, name};
  }
  if (name.size() > 1 && name[0] == 'k') {
    const auto n = parse_suffix(name, 1);
    if (n < 2 || n > 4096) throw GroupError(GroupErrc::InvalidGroup, "complete graph needs 2..4096 vertices");
    std::vector<Element> gens;
    for (Element i = 1; i < n; ++i) gens.push_back(i);
    return GroupSpec{AbelianProduct{{static_cast<std::uint32_t>(n)}}, gens, {}, name};
  }
  if (name.size() > 1 && name[0] == 'c') {
    const auto n = parse_suffix(name, 1);
    if (n < 3 || n > 4096) throw GroupError(GroupErrc::InvalidGroup, "cycle needs 3..4096 vertices");
    return GroupSpec{AbelianProduct{{static_cast<std::uint32_t>(n)}},
                     {1, static_cast<Element>(n - 1)}, {}, name};
  }
  throw GroupError(GroupErrc::InvalidGroup, "unknown builtin graph '" + name + "'");
}

CayleyGraph builtin_graph(const std::string& name) { return build_cayley_graph(builtin_group_spec(name)); }

std::string graph_to_dot(const CayleyGraph& graph) {
  std::ostringstream os;
  os << "digraph \"" << (graph.name().empty() ? "cayley" : graph.name()) << "\" {\n";
  for (const auto& e : graph.edges())
    os << "  " << e.src << " -> " << e.dst << " [gen=" << e.gen << "];\n";
  os << "}\n";
  return os.str();
}

std::string graph_to_json(const CayleyGraph& graph) {
  nlohmann::json j;
  j["p"] = graph.vertex_count();
  j["d"] = graph.degree();
  j["bidirectional"] = graph.bidirectional();
  auto edges = nlohmann::json::array();
  for (const auto& e : graph.edges()) edges.push_back({e.src, e.dst, e.gen});
  j["edges"] = std::move(edges);
  return j.dump();
}

}  // namespace cayley
