#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace cayley {

using Vertex = std::uint32_t;
using Element = std::uint32_t;

enum class GroupErrc {
  NotGenerating,
  CosetConditionViolated,
  IdentityGenerator,
  InvalidGroup,
  TooLarge,
  Unreachable,
};

class GroupError : public std::runtime_error {
 public:
  GroupError(GroupErrc code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  GroupErrc code() const noexcept { return code_; }

 private:
  GroupErrc code_;
};

/// Z_2^d with the canonical unit vectors as default generators.
struct HypercubeZ2d {
  int dimension = 0;
};

/// Z_{m1} x ... x Z_{mk}; elements are mixed-radix integers, first modulus
/// most significant.
struct AbelianProduct {
  std::vector<std::uint32_t> moduli;
};

/// Multiplication table over element indices: table[a * order + b] = a * b.
struct ExplicitTable {
  std::size_t order = 0;
  std::vector<Element> table;
};

using GroupKind = std::variant<HypercubeZ2d, AbelianProduct, ExplicitTable>;

struct GroupSpec {
  GroupKind kind;
  std::vector<Element> generators;  // empty on a hypercube means canonical
  std::vector<Element> subgroup;    // coset subgroup H; empty means trivial
  std::string name;
};

/// A finite group with elements 0..order-1.
class Group {
 public:
  explicit Group(GroupKind kind);

  std::size_t order() const noexcept { return order_; }
  Element identity() const noexcept { return identity_; }
  Element multiply(Element a, Element b) const;
  Element inverse(Element a) const;
  const GroupKind& kind() const noexcept { return kind_; }

 private:
  GroupKind kind_;
  std::size_t order_ = 0;
  Element identity_ = 0;
  std::vector<Element> inverse_;  // only for ExplicitTable
};

/// Encode a signed residue tuple as a mixed-radix element of an AbelianProduct.
Element encode_abelian(const AbelianProduct& g, const std::vector<long>& tuple);
std::vector<long> decode_abelian(const AbelianProduct& g, Element e);

struct GraphEdge {
  Vertex src;
  Vertex dst;
  std::uint32_t gen;
  friend bool operator==(const GraphEdge&, const GraphEdge&) = default;
};

/// Cayley coset graph G(Gamma, Delta, H). Vertices are dense indices 0..P-1
/// ordered by coset label (the minimum element index of the coset). With a
/// trivial subgroup the vertex index equals the element index, and the
/// group is kept so that tasks can be translated by left multiplication.
class CayleyGraph {
 public:
  std::size_t vertex_count() const noexcept { return vertex_count_; }
  std::size_t degree() const noexcept { return degree_; }
  bool bidirectional() const noexcept { return bidirectional_; }
  const std::string& name() const noexcept { return name_; }

  Vertex neighbor(Vertex v, std::size_t gen) const;
  bool has_edge(Vertex u, Vertex v) const;
  /// Generator index of the edge u -> v, if any.
  std::optional<std::uint32_t> generator_of(Vertex u, Vertex v) const;
  std::vector<GraphEdge> edges() const;

  Vertex identity_vertex() const noexcept { return identity_vertex_; }
  Element label(Vertex v) const;

  /// Present iff the subgroup is trivial.
  const std::optional<Group>& group() const noexcept { return group_; }
  const std::vector<Element>& generators() const noexcept { return generators_; }

  bool vertex_transitive() const noexcept { return transitive_; }

  /// Dimension when this is the hypercube with canonical generators.
  std::optional<int> hypercube_dimension() const noexcept { return cube_dim_; }

 private:
  friend CayleyGraph build_cayley_graph(const GroupSpec& spec);
  friend CayleyGraph make_unchecked_graph(std::size_t, std::vector<std::vector<Vertex>>,
                                          std::string);

  std::size_t vertex_count_ = 0;
  std::size_t degree_ = 0;
  bool bidirectional_ = false;
  bool transitive_ = false;
  std::string name_;
  Vertex identity_vertex_ = 0;
  std::optional<int> cube_dim_;
  std::optional<Group> group_;
  std::vector<Element> generators_;
  std::vector<Element> labels_;     // empty when labels are the identity map
  std::vector<Vertex> adjacency_;   // vertex * degree + gen; empty for cubes
};

CayleyGraph build_cayley_graph(const GroupSpec& spec);

/// Raw digraph from out-neighbor lists with no group checks. Used by tests
/// and for fixtures that are not Cayley graphs.
CayleyGraph make_unchecked_graph(std::size_t vertex_count,
                                 std::vector<std::vector<Vertex>> out_neighbors,
                                 std::string name);

CayleyGraph make_hypercube(int dimension);

/// Breadth-first distances from v to every vertex (-1 when unreachable).
std::vector<int> distances_from(const CayleyGraph& graph, Vertex v);
std::size_t distance(const CayleyGraph& graph, Vertex u, Vertex v);
std::size_t diameter(const CayleyGraph& graph);
std::vector<Vertex> ball(const CayleyGraph& graph, Vertex v, std::size_t radius);

/// Builtin fixtures: q1..q24, petersen, z2z8x5, kN (complete), cN (cycle).
GroupSpec builtin_group_spec(const std::string& name);
CayleyGraph builtin_graph(const std::string& name);

std::string graph_to_dot(const CayleyGraph& graph);
std::string graph_to_json(const CayleyGraph& graph);

}  // namespace cayley
