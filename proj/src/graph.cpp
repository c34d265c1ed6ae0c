#include "qrank/graph.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <random>
#include <set>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "qrank/errors.hpp"

namespace qrank {

namespace {

std::uint64_t edge_key(Index s, Index t) {
  return (static_cast<std::uint64_t>(s) << 32) | static_cast<std::uint64_t>(t);
}

// Portable uniform draws; std distributions differ between standard libraries.
double uniform01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

Index uniform_index(std::mt19937_64& rng, std::size_t count) {
  auto k = static_cast<std::size_t>(uniform01(rng) * static_cast<double>(count));
  return static_cast<Index>(std::min(k, count - 1));
}

// Accumulates edges while dropping self-loops and repeats.
class EdgeCollector {
 public:
  void add(Index s, Index t) {
    if (s == t) {
      ++self_loops_;
      return;
    }
    if (!seen_.insert(edge_key(s, t)).second) {
      ++duplicates_;
      return;
    }
    edges_.push_back({s, t});
  }

  std::vector<Edge>& edges() { return edges_; }
  Index self_loops() const { return self_loops_; }
  Index duplicates() const { return duplicates_; }

 private:
  std::vector<Edge> edges_;
  std::unordered_set<std::uint64_t> seen_;
  Index self_loops_ = 0;
  Index duplicates_ = 0;
};

}  // namespace

DirectedGraph::DirectedGraph(Index n, std::vector<Edge> edges, std::vector<std::string> labels)
    : n_(n), edges_(std::move(edges)), labels_(std::move(labels)) {
  if (n_ < 0) throw PreconditionError("graph size must be non-negative");
  if (!labels_.empty() && static_cast<Index>(labels_.size()) != n_)
    throw PreconditionError("label count does not match node count");
  const auto un = static_cast<std::size_t>(n_);
  out_.assign(un, {});
  in_.assign(un, {});
  adjacent_.assign(un, {});
  std::unordered_set<std::uint64_t> seen;
  seen.reserve(edges_.size());
  for (const auto& e : edges_) {
    if (e.source < 0 || e.source >= n_ || e.target < 0 || e.target >= n_)
      throw PreconditionError("edge endpoint out of range");
    if (e.source == e.target) throw PreconditionError("self-loop on node " + std::to_string(e.source));
    if (!seen.insert(edge_key(e.source, e.target)).second)
      throw PreconditionError("duplicate edge " + std::to_string(e.source) + "->" + std::to_string(e.target));
    out_[static_cast<std::size_t>(e.source)].push_back(e.target);
    in_[static_cast<std::size_t>(e.target)].push_back(e.source);
  }
  for (std::size_t i = 0; i < un; ++i) {
    std::sort(out_[i].begin(), out_[i].end());
    std::sort(in_[i].begin(), in_[i].end());
    auto& adj = adjacent_[i];
    std::set_union(out_[i].begin(), out_[i].end(), in_[i].begin(), in_[i].end(), std::back_inserter(adj));
  }
}

const std::vector<Index>& DirectedGraph::neighbors(Index i, Neighborhood which) const {
  switch (which) {
    case Neighborhood::Out:
      return out_neighbors(i);
    case Neighborhood::In:
      return in_neighbors(i);
    case Neighborhood::Total:
      break;
  }
  return adjacent(i);
}

bool DirectedGraph::has_edge(Index source, Index target) const {
  if (source < 0 || source >= n_) return false;
  const auto& out = out_neighbors(source);
  return std::binary_search(out.begin(), out.end(), target);
}

std::string DirectedGraph::label(Index i) const {
  if (labels_.empty()) return std::to_string(i);
  return labels_[static_cast<std::size_t>(i)];
}

Index DirectedGraph::find(const std::string& name) const {
  for (Index i = 0; i < n_; ++i)
    if (label(i) == name) return i;
  return -1;
}

DirectedGraph canonicalize(const DirectedGraph& g) {
  std::vector<Index> relabel(static_cast<std::size_t>(g.size()), -1);
  std::vector<std::string> labels;
  Index next = 0;
  auto map = [&](Index v) {
    auto& slot = relabel[static_cast<std::size_t>(v)];
    if (slot < 0) {
      slot = next++;
      labels.push_back(g.label(v));
    }
    return slot;
  };
  std::vector<Edge> edges;
  edges.reserve(g.edges().size());
  for (const auto& e : g.edges()) {
    const Index s = map(e.source);
    const Index t = map(e.target);
    edges.push_back({s, t});
  }
  return DirectedGraph(next, std::move(edges), std::move(labels));
}

EdgeListResult load_edge_list(std::istream& in, bool directed) {
  std::unordered_map<std::string, Index> index;
  std::vector<std::string> labels;
  EdgeCollector collector;
  auto node = [&](const std::string& token) {
    auto [it, inserted] = index.emplace(token, static_cast<Index>(labels.size()));
    if (inserted) labels.push_back(token);
    return it->second;
  };

  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    std::string a, b, extra;
    if (!(fields >> a)) continue;
    if (!(fields >> b)) throw ParseError(line_no, "expected two node tokens, found one");
    if (fields >> extra) throw ParseError(line_no, "expected two node tokens, found more");
    const Index s = node(a);
    const Index t = node(b);
    collector.add(s, t);
    if (!directed) collector.add(t, s);
  }
  if (labels.empty()) throw ParseError(line_no, "edge list contains no edges");

  EdgeListResult result;
  result.dropped_self_loops = collector.self_loops();
  // In undirected mode a line "b a" after "a b" counts as a duplicate.
  result.dropped_duplicates = collector.duplicates();
  const auto n = static_cast<Index>(labels.size());
  result.graph = DirectedGraph(n, std::move(collector.edges()), std::move(labels));
  return result;
}

EdgeListResult load_edge_list_file(const std::string& path, bool directed) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open edge list '" + path + "'");
  return load_edge_list(in, directed);
}

void save_edge_list(std::ostream& out, const DirectedGraph& g) {
  for (const auto& e : g.edges()) out << g.label(e.source) << ' ' << g.label(e.target) << '\n';
}

void save_edge_list_file(const std::string& path, const DirectedGraph& g) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write edge list '" + path + "'");
  out << "# " << g.size() << " nodes, " << g.edge_count() << " edges\n";
  save_edge_list(out, g);
}

void GraphGenSpec::validate() const {
  if (n < 2) throw PreconditionError("generated graphs need n >= 2");
  if (!(param >= 1.0)) throw PreconditionError("generator parameter must be >= 1");
  if (model == GraphModel::ER && param > static_cast<double>(n - 1))
    throw PreconditionError("ER mean degree cannot exceed n - 1");
  if (model == GraphModel::BA) {
    if (param != std::floor(param)) throw PreconditionError("BA attachment count must be an integer");
    if (static_cast<Index>(param) >= n) throw PreconditionError("BA attachment count m must be < n");
  }
}

namespace {

DirectedGraph generate_er(const GraphGenSpec& spec, std::mt19937_64& rng) {
  const double p = spec.param / static_cast<double>(spec.n - 1);
  std::vector<Edge> edges;
  if (spec.directed) {
    for (Index i = 0; i < spec.n; ++i)
      for (Index j = 0; j < spec.n; ++j)
        if (i != j && uniform01(rng) < p) edges.push_back({i, j});
  } else {
    for (Index i = 0; i < spec.n; ++i)
      for (Index j = i + 1; j < spec.n; ++j)
        if (uniform01(rng) < p) {
          edges.push_back({i, j});
          edges.push_back({j, i});
        }
  }
  return DirectedGraph(spec.n, std::move(edges));
}

// Preferential attachment: the first new node links to the m seed nodes,
// every later node picks m distinct targets with probability proportional to
// degree (sampled from the list of edge endpoints).
DirectedGraph generate_ba(const GraphGenSpec& spec, std::mt19937_64& rng) {
  const auto m = static_cast<Index>(spec.param);
  std::vector<Edge> edges;
  std::vector<Index> targets(static_cast<std::size_t>(m));
  for (Index i = 0; i < m; ++i) targets[static_cast<std::size_t>(i)] = i;
  std::vector<Index> endpoints;
  endpoints.reserve(static_cast<std::size_t>(2 * m * spec.n));

  for (Index source = m; source < spec.n; ++source) {
    for (Index t : targets) {
      edges.push_back({source, t});
      if (!spec.directed) edges.push_back({t, source});
      endpoints.push_back(t);
      endpoints.push_back(source);
    }
    std::vector<Index> chosen;
    while (static_cast<Index>(chosen.size()) < m) {
      const Index candidate = endpoints[static_cast<std::size_t>(uniform_index(rng, endpoints.size()))];
      if (std::find(chosen.begin(), chosen.end(), candidate) == chosen.end()) chosen.push_back(candidate);
    }
    targets = std::move(chosen);
  }
  return DirectedGraph(spec.n, std::move(edges));
}

}  // namespace

DirectedGraph generate(const GraphGenSpec& spec) {
  spec.validate();
  std::mt19937_64 rng(spec.seed);
  return spec.model == GraphModel::ER ? generate_er(spec, rng) : generate_ba(spec, rng);
}

GraphModel parse_graph_model(const std::string& name) {
  std::string upper;
  for (char c : name) upper.push_back(static_cast<char>(std::toupper(static_cast<unsigned char>(c))));
  if (upper == "ER") return GraphModel::ER;
  if (upper == "BA" || upper == "SF") return GraphModel::BA;
  throw PreconditionError("unknown graph model '" + name + "' (expected ER or BA)");
}

std::string to_string(GraphModel model) { return model == GraphModel::ER ? "ER" : "BA"; }

DirectedGraph toy_graph() {
  // 1-indexed as drawn; stored 0-indexed.
  std::vector<Edge> edges;
  for (Index a = 1; a <= 4; ++a)
    for (Index b = 1; b <= 4; ++b)
      if (a != b) edges.push_back({a - 1, b - 1});
  for (auto [a, b] : {std::pair<Index, Index>{3, 5}, {6, 5}, {5, 7}, {7, 6}, {7, 8}, {8, 2}})
    edges.push_back({a - 1, b - 1});
  std::vector<std::string> labels;
  for (int i = 1; i <= 8; ++i) labels.push_back(std::to_string(i));
  return DirectedGraph(8, std::move(edges), std::move(labels));
}

}  // namespace qrank
