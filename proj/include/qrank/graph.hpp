#ifndef QRANK_GRAPH_HPP
#define QRANK_GRAPH_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "qrank/types.hpp"

namespace qrank {

struct Edge {
  Index source = 0;
  Index target = 0;

  friend bool operator==(const Edge&, const Edge&) = default;
};

enum class Neighborhood { Out, In, Total };

/// Directed simple graph on nodes 0..n-1.
///
/// Edges keep their insertion order; that order decides the node numbering
/// when the graph is written to and read back from an edge list. Self-loops
/// and duplicate edges are rejected by the constructor.
class DirectedGraph {
 public:
  DirectedGraph() = default;
  DirectedGraph(Index n, std::vector<Edge> edges, std::vector<std::string> labels = {});

  Index size() const noexcept { return n_; }
  Index edge_count() const noexcept { return static_cast<Index>(edges_.size()); }
  bool empty() const noexcept { return n_ == 0; }

  const std::vector<Edge>& edges() const noexcept { return edges_; }
  const std::vector<Index>& out_neighbors(Index i) const { return out_[static_cast<std::size_t>(i)]; }
  const std::vector<Index>& in_neighbors(Index i) const { return in_[static_cast<std::size_t>(i)]; }
  /// Nodes adjacent to i in either direction, sorted, without repeats.
  const std::vector<Index>& adjacent(Index i) const { return adjacent_[static_cast<std::size_t>(i)]; }
  const std::vector<Index>& neighbors(Index i, Neighborhood which) const;

  Index out_degree(Index i) const { return static_cast<Index>(out_neighbors(i).size()); }
  Index in_degree(Index i) const { return static_cast<Index>(in_neighbors(i).size()); }
  /// Number of distinct adjacent nodes.
  Index degree(Index i) const { return static_cast<Index>(adjacent(i).size()); }

  bool has_edge(Index source, Index target) const;
  bool has_labels() const noexcept { return !labels_.empty(); }
  std::string label(Index i) const;
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  /// Index of the node with the given label, or -1.
  Index find(const std::string& label) const;

  friend bool operator==(const DirectedGraph& a, const DirectedGraph& b) {
    return a.n_ == b.n_ && a.edges_ == b.edges_ && a.labels_ == b.labels_;
  }

 private:
  Index n_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::string> labels_;
  std::vector<std::vector<Index>> out_;
  std::vector<std::vector<Index>> in_;
  std::vector<std::vector<Index>> adjacent_;
};

/// Relabels nodes in order of first appearance along the edge sequence and
/// drops nodes without edges. Fixed point of save/load.
DirectedGraph canonicalize(const DirectedGraph& g);

struct EdgeListResult {
  DirectedGraph graph;
  Index dropped_self_loops = 0;
  Index dropped_duplicates = 0;
};

/// Reads "u v" pairs, one per line; '#' starts a comment. Node tokens are
/// arbitrary strings, numbered densely in order of first appearance. With
/// directed == false every line contributes both directions.
EdgeListResult load_edge_list(std::istream& in, bool directed = true);
EdgeListResult load_edge_list_file(const std::string& path, bool directed = true);

void save_edge_list(std::ostream& out, const DirectedGraph& g);
void save_edge_list_file(const std::string& path, const DirectedGraph& g);

enum class GraphModel { ER, BA };

struct GraphGenSpec {
  GraphModel model = GraphModel::ER;
  Index n = 0;
  /// Mean degree for ER, attachment count m for BA.
  double param = 0.0;
  std::uint64_t seed = 0;
  /// Orient edges instead of embedding each undirected link both ways.
  bool directed = false;

  void validate() const;
};

DirectedGraph generate(const GraphGenSpec& spec);

GraphModel parse_graph_model(const std::string& name);
std::string to_string(GraphModel model);

/// The eight-node test graph: complete core {1,2,3,4}, cycle 5->7->6->5,
/// link 3->5 and path 7->8->2. Labels are "1".."8" and node i has label i+1.
DirectedGraph toy_graph();

}  // namespace qrank

#endif  // QRANK_GRAPH_HPP
