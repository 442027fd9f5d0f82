#pragma once

#include "epco/cohomology.hpp"

namespace epco {

/// A validated triple (E, G, φ): a group acting on a directed graph together
/// with a G-valued graph cocycle for the action.
struct System {
    GraphAction action;
    Cocycle phi;

    const GraphPtr& graph() const { return action.graph(); }
    const GroupPtr& group() const { return action.group(); }
};

/// Builds the triple and throws unless the graph-cocycle conditions hold.
System make_system(GraphAction action, Cocycle phi, bool strong = false);

// ---------------------------------------------------------------------------
// EPK systems: b m + k = φ_{a,b}(m,k) a + σ_{a,b}(m,k) on Z_a

struct EpkParams {
    long a;
    long b;
    long q;   // b = q a + r, 0 <= r < a
    long r;
    long c;   // a - r: generating function is q below c, q+1 from c on
    long d;   // gcd(a, b)
    long a1;  // a / d
    long b1;  // b / d
    long r1;  // r / d
};
EpkParams epk_params(long a, long b);

/// σ_{a,b} and φ_{a,b} on the set Z_a (no graph attached).
Cocycle epk_cocycle(long a, long b);
/// The bouquet system (E_{Z_a}, Z, φ_{a,b}).
System epk_system(long a, long b);

struct EpkOrbit {
    std::vector<int> points;  // θ_i: k ↦ i + k d, as a list over k
    Cocycle restricted;       // the system restricted to the orbit, indexed by k
    Conjugacy conj;           // certifies (Z_{a'}, σ', φ') ≅ restricted
};
struct EpkDecomposition {
    EpkParams params;
    Cocycle target;  // (Z_{a'}, σ_{a',b'}, φ_{a',b'})
    std::vector<EpkOrbit> orbits;
};
EpkDecomposition epk_decompose(long a, long b);

// ---------------------------------------------------------------------------
// graph builders

/// One vertex, the given loops.
GraphPtr bouquet_graph(const std::vector<std::string>& edge_names);
/// F0 = S ∪ {ω}, F1 = S, r(x) = x, s(x) = ω; ω is the last vertex.
GraphPtr strings_graph(const std::vector<std::string>& s_names);
/// F0 = I ∪ {ω}, F1 = S, r(x) = ρ(x), s(x) = ω.
GraphPtr general_strings_graph(const std::vector<std::string>& s_names,
                               const std::vector<std::string>& i_names,
                               const std::vector<int>& rho);
/// K0 = S ∪ {ω}, K1 = S×(T ∪ {ω}); r(x,ω)=x, s(x,ω)=ω, r(x,y)=x=s(x,y).
/// Edge (x,y) has index x*(|T|+1) + (0 for ω, else 1+y).
GraphPtr sink_free_graph(int s_size, int t_size);
/// Vertices: words over S of length <= L (ordered by length, then lexicographic,
/// matching bouquet paths); edges (w, wx) with r = w and s = wx.
GraphPtr tree_graph(int s_size, int max_length);

// ---------------------------------------------------------------------------
// lifts of a set system (S, G, φ)

/// Same action/cocycle viewed on the strings graph; always valid.
System lift_to_strings(const SetAction& on_s, const Cocycle& phi);

/// S×(T∪{ω}) graph with φ~(g,(x,ω)) = φ(g,x) and φ~(g,(x,y)) = g.
System lift_to_sink_free(const SetAction& on_s, const SetAction& on_t, const Cocycle& phi);

struct TreeLift {
    GraphAction action;   // G on the tree of words of length <= L
    Cocycle edge_cocycle; // φ(g,(w,wx)) = φ(g,wx)
    bool ct3;             // φ(g,x)·x = g·x on S
    bool ct2;             // φ(g,wx)·(wx) = g·(wx) on words <= L
    ValidationReport report;
    /// Throws unless ct2 holds (the lift is a graph cocycle iff CT2).
    System system() const;
};
TreeLift lift_to_tree(const SetAction& on_s, const Cocycle& phi, int max_length);

// ---------------------------------------------------------------------------
// endomorphism systems on Z^n

using IntMatrix = std::vector<std::vector<long>>;  // row-major, n x n

struct EndoSystem {
    SetAction action;  // g ·' x = s(Bg + x) on the coset representatives
    Cocycle phi;       // φ_τ(g,x) = A⁻¹(Bg + x − s(Bg + x))
    std::vector<std::vector<long>> reps;
};
/// ρ(m) = Am (injective: det A ≠ 0), τ(m) = Bm, reps = coset representatives
/// of Z^n / A Z^n containing 0 (validated: pairwise inequivalent, |det A| many).
EndoSystem endomorphism_system(const IntMatrix& A, const IntMatrix& B,
                               std::vector<std::vector<long>> reps);

// ---------------------------------------------------------------------------
// pasting (G trivial on vertices, blockwise data on vE1w)

struct PastingBlock {
    int range_vertex;
    int source_vertex;
    SetAction action;  // on the block's edges, in graph edge order
    Cocycle phi;       // for that action, target = acting group
};
/// Blocks must partition E1 by (range, source).
System pasting_construction(GraphPtr graph, const std::vector<PastingBlock>& blocks);

/// Katsura-style pasting: every (v,w) block of size A(v,w) carries the EPK
/// system for (A(v,w), B(v,w)); B is queried by vertex pair.
System katsura_system(GraphPtr graph, const std::function<long(int, int)>& B);

// ---------------------------------------------------------------------------
// dynamical-system graphs E_σ (§ Katsura's Example 2 shape)

struct DynamicalSystem {
    std::optional<System> system;  // present iff every point is admissible
    std::vector<bool> admissible;  // per point: ξ(x) − 1 ∈ S_x
};
/// E0 = E1 = S, s = id, r = σ; Z acts by n·x = τⁿ(x); requires στ = τσ;
/// ξ(x) ≡ 1 mod the τ-period of x is reported per point.
DynamicalSystem dynamical_system_graph(const std::vector<int>& sigma,
                                       const std::vector<int>& tau,
                                       const std::vector<long>& xi);

// ---------------------------------------------------------------------------
// commuting actions: E1 = H × E0

/// r(h,x) = h·x, s(h,x) = x; g·(h,x) = (h, gx); φ(g,(h,x)) = ϕ(g, h·x).
/// Requires commuting actions and the constraint ϕ(g,x)·x = g·x. H finite.
/// Edge (h,x) has index h_index * |E0| + x.
System commuting_actions_system(const SetAction& h_action, const SetAction& g_action,
                                const Cocycle& phi0);

// ---------------------------------------------------------------------------
// Zappa-Szép partial product on (paths of length <= L) × G

class ZappaSzep {
public:
    ZappaSzep(System sys, int max_length);

    using Element = std::pair<Path, GroupElement>;
    /// (w,g)(w',g') = (w (g·w'), φ(g,w') g') when s(w) = r(g·w'); nullopt when
    /// undefined or the product path exceeds the length bound.
    std::optional<Element> multiply(const Element& lhs, const Element& rhs) const;

    const PathExtension& extension() const { return ext_; }
    const std::vector<Path>& paths() const { return ext_.paths(); }

    /// (uv)w = u(vw) whenever all four products are defined, over paths within
    /// the bound and the supplied group elements.
    ValidationReport check_associativity(const std::vector<GroupElement>& gs) const;
    /// Right-cancellativity failures: xz = yz with x ≠ y, as readable strings.
    std::vector<std::string> right_cancellation_failures(
        const std::vector<GroupElement>& gs) const;

private:
    System sys_;
    PathExtension ext_;
    int max_length_;
};

} // namespace epco
