#pragma once

#include <optional>

#include "epco/action.hpp"

namespace epco {

/// A T-valued cocycle for a SetAction: φ(gh,x) = φ(g,hx)φ(h,x). Finite
/// groups store the full table; free-abelian groups store one generating
/// function per generator (φ is then determined by telescoping).
class Cocycle {
public:
    /// Finite acting group: table built from `value`.
    static Cocycle from_table(SetAction action, GroupPtr target,
                              const std::function<GroupElement(const GroupElement&, int)>& value);
    /// Free-abelian acting group: generating functions ξ_i(x) = φ(gen_i, x).
    static Cocycle generating(SetAction action, GroupPtr target,
                              std::vector<std::vector<GroupElement>> xi);

    const SetAction& action() const { return action_; }
    const GroupPtr& group() const { return action_.group(); }
    const GroupPtr& target() const { return target_; }
    bool tabulated() const { return !table_.empty(); }

    GroupElement evaluate(const GroupElement& g, int x) const;
    /// ξ_i(x) for generator i (free-abelian case).
    const GroupElement& xi(int i, int x) const { return xi_[i][x]; }
    int rank() const { return static_cast<int>(xi_.size()); }

    /// Cocycle identity. Exhaustive for finite G; structural (generator
    /// compatibility) for free-abelian G, where the identity is automatic.
    ValidationReport validate() const;

    /// Sum of generating-function values (finite S, abelian T, G = integers).
    GroupElement signature() const;

private:
    Cocycle(SetAction a, GroupPtr t) : action_(std::move(a)), target_(std::move(t)) {}
    SetAction action_;
    GroupPtr target_;
    std::vector<std::vector<GroupElement>> table_; // [element index][point]
    std::vector<std::vector<GroupElement>> xi_;    // [generator][point]
};

/// Weak vertex condition φ(g,e)·s(e) = g·s(e) plus the cocycle identity;
/// `strong` additionally requires φ(g,e)·v = g·v for every vertex.
ValidationReport validate_graph_cocycle(const GraphAction& action, const Cocycle& phi,
                                        bool strong = false);

/// g·(x,t) = (gx, φ(g,x)t); the cocycle identity is exactly what makes this
/// an action.
std::pair<int, GroupElement> induced_apply(const Cocycle& phi, const GroupElement& g, int x,
                                           const GroupElement& t);
/// Materialized product action on S×T (finite G and T only); points are
/// indexed x*|T| + index(t).
SetAction materialize_induced(const Cocycle& phi);

/// Action and cocycle extended to composable paths of length <= L by the
/// self-similarity recursion g·(eμ) = (g·e)(φ(g,e)·μ), φ(g,eμ) = φ(φ(g,e),μ),
/// with vertices fixed up to the vertex action and φ(g,vertex) = g.
class PathExtension {
public:
    PathExtension(GraphAction action, Cocycle phi, int max_length);

    const std::vector<Path>& paths() const { return paths_; }
    const GraphAction& base_action() const { return action_; }
    const Cocycle& base_cocycle() const { return phi_; }
    int path_index(const Path& p) const;

    Path act(const GroupElement& g, const Path& p) const;
    GroupElement cocycle(const GroupElement& g, const Path& p) const;

    /// The extension materialized as an action and cocycle on the indexed
    /// path set (so the standard validators apply to it).
    SetAction induced_action() const;
    Cocycle induced_cocycle() const;

private:
    GraphAction action_;
    Cocycle phi_;
    std::vector<Path> paths_;
    std::map<Path, int> index_;
};

/// Word extension: PathExtension over the bouquet graph of the acted set.
PathExtension extend_to_words(const SetAction& action, const Cocycle& phi, int max_length);

/// The bouquet system induced by a set action (single vertex, S as loops).
GraphAction bouquet_action(const SetAction& on_set);

} // namespace epco
