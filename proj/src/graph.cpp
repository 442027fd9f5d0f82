#include "epco/graph.hpp"

#include <algorithm>

namespace epco {

// ---------------------------------------------------------------------------
// Path

Path::Path(GraphPtr g, int vertex) : graph_(std::move(g)), range_(vertex), source_(vertex) {
    require(vertex >= 0 && vertex < graph_->vertex_count(), "vertex index out of range");
}

Path::Path(GraphPtr g, std::vector<int> edges) : graph_(std::move(g)), edges_(std::move(edges)) {
    require(!edges_.empty(), "edge path must be nonempty; use the vertex constructor");
    for (size_t i = 0; i < edges_.size(); ++i) {
        require(edges_[i] >= 0 && edges_[i] < graph_->edge_count(), "edge index out of range");
        if (i + 1 < edges_.size())
            require(graph_->source(edges_[i]) == graph_->range(edges_[i + 1]),
                    "path is not composable at position " + std::to_string(i));
    }
    range_ = graph_->range(edges_.front());
    source_ = graph_->source(edges_.back());
}

Path Path::operator*(const Path& rhs) const {
    require(graph_->same_as(*rhs.graph_), "path composition across different graphs");
    require(source_ == rhs.range_, "paths do not compose: s(lhs) != r(rhs)");
    if (edges_.empty()) return rhs;
    if (rhs.edges_.empty()) return *this;
    std::vector<int> joined = edges_;
    joined.insert(joined.end(), rhs.edges_.begin(), rhs.edges_.end());
    return Path(graph_, std::move(joined));
}

bool Path::prefix_of(const Path& p) const {
    if (length() > p.length()) return false;
    if (edges_.empty()) return p.range() == range_;
    return std::equal(edges_.begin(), edges_.end(), p.edges_.begin());
}

Path Path::remainder_of(const Path& p) const {
    require(prefix_of(p), "remainder_of: not a prefix");
    if (length() == p.length()) return Path(graph_, source_);
    return Path(graph_, std::vector<int>(p.edges_.begin() + length(), p.edges_.end()));
}

std::string Path::str() const {
    if (edges_.empty()) return "(" + graph_->vertex_name(range_) + ")";
    std::string s;
    for (size_t i = 0; i < edges_.size(); ++i) {
        if (i) s += ".";
        s += graph_->edge_name(edges_[i]);
    }
    return s;
}

// ---------------------------------------------------------------------------
// Graph

GraphPtr Graph::make(std::vector<std::string> vertex_names, std::vector<Edge> edges) {
    auto g = std::shared_ptr<Graph>(new Graph);
    g->vertex_names_ = std::move(vertex_names);
    g->edges_ = std::move(edges);
    int nv = g->vertex_count();
    g->incoming_.resize(nv);
    for (int e = 0; e < g->edge_count(); ++e) {
        const auto& ed = g->edges_[e];
        require(ed.range >= 0 && ed.range < nv && ed.source >= 0 && ed.source < nv,
                "edge endpoint out of range");
        g->incoming_[ed.range].push_back(e);
    }
    return g;
}

int Graph::vertex_index(const std::string& name) const {
    for (int v = 0; v < vertex_count(); ++v)
        if (vertex_names_[v] == name) return v;
    fail("unknown vertex '" + name + "'");
}

int Graph::edge_index(const std::string& name) const {
    for (int e = 0; e < edge_count(); ++e)
        if (edges_[e].name == name) return e;
    fail("unknown edge '" + name + "'");
}

std::vector<Path> Graph::paths_up_to(int max_length) const {
    require(max_length >= 0, "path length bound must be >= 0");
    auto self = shared_from_this();
    std::vector<Path> out;
    for (int v = 0; v < vertex_count(); ++v) out.emplace_back(self, v);
    // grow by prepending edges: a path of length k+1 is e * (path with r = s(e))
    size_t level_begin = 0, level_end = out.size();
    for (int len = 1; len <= max_length; ++len) {
        for (size_t i = level_begin; i < level_end; ++i) {
            Path tail = out[i];
            for (int e = 0; e < edge_count(); ++e) {
                if (source(e) != tail.range()) continue;
                std::vector<int> edges{e};
                edges.insert(edges.end(), tail.edges().begin(), tail.edges().end());
                out.emplace_back(self, std::move(edges));
            }
        }
        level_begin = level_end;
        level_end = out.size();
        if (level_begin == level_end) break;
    }
    return out;
}

std::pair<std::set<int>, std::set<int>> Graph::classify_vertices() const {
    std::set<int> regular, sources;
    for (const auto& e : edges_) regular.insert(e.range);
    for (int v = 0; v < vertex_count(); ++v)
        if (!regular.count(v)) sources.insert(v);
    return {regular, sources};
}

bool Graph::same_as(const Graph& other) const {
    if (this == &other) return true;
    if (vertex_names_ != other.vertex_names_) return false;
    if (edges_.size() != other.edges_.size()) return false;
    for (size_t i = 0; i < edges_.size(); ++i)
        if (edges_[i].name != other.edges_[i].name || edges_[i].range != other.edges_[i].range ||
            edges_[i].source != other.edges_[i].source)
            return false;
    return true;
}

} // namespace epco
