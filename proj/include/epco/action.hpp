#pragma once

#include <functional>
#include <map>
#include <memory>
#include <vector>

#include "epco/graph.hpp"
#include "epco/group.hpp"

namespace epco {

/// Validation outcome with human-readable witnesses for every violation.
struct ValidationReport {
    bool valid = true;
    std::vector<std::string> violations;

    void violation(std::string msg) {
        valid = false;
        violations.push_back(std::move(msg));
    }
};

/// Action of a group G on a finite set {0..n-1}. Finite groups store a full
/// permutation table; the integers (and free-abelian products of them) store
/// one permutation per generator.
class SetAction {
public:
    /// Finite G: table built by evaluating `act` on every (element, point).
    static SetAction from_table(GroupPtr group, int set_size,
                                const std::function<int(const GroupElement&, int)>& act);
    /// Free-abelian G (integers or a product of integers): one permutation
    /// (as an image vector) per generator.
    static SetAction free_abelian(GroupPtr group, int set_size,
                                  std::vector<std::vector<int>> generator_images);

    const GroupPtr& group() const { return group_; }
    int set_size() const { return set_size_; }
    bool group_finite() const { return group_->finite(); }
    int rank() const { return static_cast<int>(generator_images_.size()); }

    int apply(const GroupElement& g, int x) const;
    /// Image vector of a generator (free-abelian case).
    const std::vector<int>& generator_images(int i) const { return generator_images_[i]; }
    /// Orbit period of x under generator i (free-abelian case).
    long cycle_length(int i, int x) const { return cycle_length_[i][x]; }

    /// Orbits of the action (finite G exhaustive; free-abelian via generators).
    std::vector<std::vector<int>> orbits() const;
    bool transitive() const { return orbits().size() == 1; }

    /// Action axioms: identity acts trivially and (gh)x = g(hx). Exhaustive
    /// for finite G; for free-abelian G checks bijectivity and that the
    /// generator permutations commute.
    ValidationReport validate() const;

    int element_index(const GroupElement& g) const;
    const std::vector<GroupElement>& element_list() const { return elements_; }

private:
    SetAction() = default;
    GroupPtr group_;
    int set_size_ = 0;
    // finite case
    std::vector<GroupElement> elements_;
    std::map<GroupElement, int> element_index_;
    std::vector<std::vector<int>> table_;
    // free-abelian case
    std::vector<std::vector<int>> generator_images_;
    std::vector<std::vector<int>> generator_preimages_;
    std::vector<std::vector<long>> cycle_length_;
};

/// Action of G on a directed graph: compatible actions on E0 and E1 forming
/// graph automorphisms.
class GraphAction {
public:
    GraphAction(GraphPtr graph, SetAction on_vertices, SetAction on_edges);

    const GraphPtr& graph() const { return graph_; }
    const SetAction& vertices() const { return vertices_; }
    const SetAction& edges() const { return edges_; }
    const GroupPtr& group() const { return vertices_.group(); }

    int act_vertex(const GroupElement& g, int v) const { return vertices_.apply(g, v); }
    int act_edge(const GroupElement& g, int e) const { return edges_.apply(g, e); }

    /// r(ge) = g r(e) and s(ge) = g s(e); exhaustive for finite G,
    /// generators for free-abelian G.
    ValidationReport validate() const;

    /// True iff g·s(e) = s(e) for all g (generators suffice) and all e.
    bool fixes_sources() const;

private:
    GraphPtr graph_;
    SetAction vertices_;
    SetAction edges_;
};

} // namespace epco
