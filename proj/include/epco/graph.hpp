#pragma once

#include <memory>
#include <set>
#include <string>
#include <vector>

#include "epco/common.hpp"

namespace epco {

class Graph;
using GraphPtr = std::shared_ptr<const Graph>;

/// A composable edge sequence e1...en; paths compose right-to-left, so
/// s(e_i) = r(e_{i+1}). Length-0 paths are vertices.
class Path {
public:
    /// Vertex path.
    Path(GraphPtr g, int vertex);
    /// Edge sequence; throws on non-composable input.
    Path(GraphPtr g, std::vector<int> edges);

    const GraphPtr& graph() const { return graph_; }
    int length() const { return static_cast<int>(edges_.size()); }
    const std::vector<int>& edges() const { return edges_; }
    int range() const { return range_; }
    int source() const { return source_; }

    /// Composition this∘rhs; requires s(this) = r(rhs).
    Path operator*(const Path& rhs) const;

    /// True if this path's edge sequence is an initial segment of p
    /// (p = this ∘ rest); for vertex paths this means r(p) = vertex.
    bool prefix_of(const Path& p) const;
    /// The remainder rest with p = this ∘ rest; requires prefix_of(p).
    Path remainder_of(const Path& p) const;

    bool operator==(const Path& rhs) const {
        return edges_ == rhs.edges_ && range_ == rhs.range_;
    }
    bool operator<(const Path& rhs) const {
        if (edges_ != rhs.edges_) return edges_ < rhs.edges_;
        return range_ < rhs.range_;
    }

    std::string str() const;

private:
    GraphPtr graph_;
    std::vector<int> edges_;
    int range_ = -1;
    int source_ = -1;
};

/// Finite directed graph (E0, E1, r, s) with dense 0-based vertex and edge
/// indices and optional names.
class Graph : public std::enable_shared_from_this<Graph> {
public:
    struct Edge {
        std::string name;
        int range;
        int source;
    };

    static GraphPtr make(std::vector<std::string> vertex_names, std::vector<Edge> edges);

    int vertex_count() const { return static_cast<int>(vertex_names_.size()); }
    int edge_count() const { return static_cast<int>(edges_.size()); }
    int range(int e) const { return edges_[e].range; }
    int source(int e) const { return edges_[e].source; }

    const std::string& vertex_name(int v) const { return vertex_names_[v]; }
    const std::string& edge_name(int e) const { return edges_[e].name; }
    int vertex_index(const std::string& name) const;
    int edge_index(const std::string& name) const;
    const std::vector<Edge>& edges() const { return edges_; }

    /// Edges with range v.
    const std::vector<int>& incoming(int v) const { return incoming_[v]; }

    /// All composable paths of length <= max_length, vertices included.
    std::vector<Path> paths_up_to(int max_length) const;

    /// (regular vertices r(E1), sources E0 \ r(E1)).
    std::pair<std::set<int>, std::set<int>> classify_vertices() const;

    /// Always true for finite graphs; kept for API symmetry.
    bool is_row_finite() const { return true; }

    bool same_as(const Graph& other) const;

private:
    Graph() = default;
    std::vector<std::string> vertex_names_;
    std::vector<Edge> edges_;
    std::vector<std::vector<int>> incoming_;
};

} // namespace epco
