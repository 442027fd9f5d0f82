#include "epco/cocycle.hpp"

namespace epco {

Cocycle Cocycle::from_table(SetAction action, GroupPtr target,
                            const std::function<GroupElement(const GroupElement&, int)>& value) {
    require(action.group_finite(), "from_table requires a finite acting group");
    Cocycle c(std::move(action), std::move(target));
    for (const auto& g : c.action_.element_list()) {
        std::vector<GroupElement> row;
        for (int x = 0; x < c.action_.set_size(); ++x) {
            GroupElement t = value(g, x);
            require(t.group()->same_as(*c.target_), "cocycle value not in target group");
            row.push_back(std::move(t));
        }
        c.table_.push_back(std::move(row));
    }
    return c;
}

Cocycle Cocycle::generating(SetAction action, GroupPtr target,
                            std::vector<std::vector<GroupElement>> xi) {
    require(!action.group_finite(),
            "generating-function cocycles are for the integers; finite groups use full tables");
    require(static_cast<int>(xi.size()) == action.rank(),
            "one generating function per group generator");
    for (const auto& row : xi) {
        require(static_cast<int>(row.size()) == action.set_size(),
                "generating function has wrong domain size");
        for (const auto& t : row)
            require(t.group()->same_as(*target), "cocycle value not in target group");
    }
    Cocycle c(std::move(action), std::move(target));
    c.xi_ = std::move(xi);
    return c;
}

GroupElement Cocycle::evaluate(const GroupElement& g, int x) const {
    require(x >= 0 && x < action_.set_size(), "point out of cocycle domain");
    if (tabulated()) return table_[action_.element_index(g)][x];

    // single-generator step: φ(n·gen_i, x) via telescoping, folding full
    // cycles of x into a power of φ(c, x')
    auto eval_coord = [&](int i, const mpz_class& n, int x0) -> GroupElement {
        const auto& tau = action_.generator_images(i);
        long c = action_.cycle_length(i, x0);
        mpz_class q, s;
        mpz_fdiv_qr(q.get_mpz_t(), s.get_mpz_t(), n.get_mpz_t(), mpz_class(c).get_mpz_t());
        long steps = static_cast<long>(s.get_si());
        // φ(s, x0) = ξ(τ^{s-1}x0)···ξ(x0)
        GroupElement phi_s = target_->identity();
        int y = x0;
        for (long k = 0; k < steps; ++k) {
            phi_s = xi_[i][y] * phi_s;
            y = tau[y];
        }
        if (q == 0) return phi_s;
        // φ(c, y) over the full cycle through y = τ^s x0; then φ(qc,y) = φ(c,y)^q
        GroupElement phi_c = target_->identity();
        int z = y;
        for (long k = 0; k < c; ++k) {
            phi_c = xi_[i][z] * phi_c;
            z = tau[z];
        }
        return phi_c.pow(q) * phi_s;
    };

    if (group()->kind() == Group::Kind::Integers) return eval_coord(0, g.integer(), x);
    // free-abelian product: peel off one coordinate at a time,
    // φ(g, x) = φ(gen_k^{n_k}, x_{k-1}) ··· φ(gen_0^{n_0}, x)
    GroupElement out = target_->identity();
    int y = x;
    const auto& parts = g.parts();
    for (size_t i = 0; i < parts.size(); ++i) {
        out = eval_coord(static_cast<int>(i), parts[i].integer(), y) * out;
        const auto& tau = action_.generator_images(static_cast<int>(i));
        long c = action_.cycle_length(static_cast<int>(i), y);
        mpz_class r = parts[i].integer() % c;
        if (r < 0) r += c;
        for (long k = 0, steps = r.get_si(); k < steps; ++k) y = tau[y];
    }
    return out;
}

ValidationReport Cocycle::validate() const {
    ValidationReport rep = action_.validate();
    if (tabulated()) {
        const auto& elems = action_.element_list();
        for (const auto& g : elems)
            for (const auto& h : elems)
                for (int x = 0; x < action_.set_size(); ++x) {
                    GroupElement lhs = evaluate(g * h, x);
                    GroupElement rhs = evaluate(g, action_.apply(h, x)) * evaluate(h, x);
                    if (lhs != rhs)
                        rep.violation("cocycle identity fails at g=" + g.str() + " h=" + h.str() +
                                      " x=" + std::to_string(x));
                }
        return rep;
    }
    // free-abelian: the identity is automatic per generator; only the
    // pairwise compatibility φ(gen_i gen_j, x) = φ(gen_j gen_i, x) can fail
    for (int i = 0; i < rank(); ++i)
        for (int j = i + 1; j < rank(); ++j)
            for (int x = 0; x < action_.set_size(); ++x) {
                const auto& ti = action_.generator_images(i);
                const auto& tj = action_.generator_images(j);
                GroupElement a = xi_[i][tj[x]] * xi_[j][x];
                GroupElement b = xi_[j][ti[x]] * xi_[i][x];
                if (a != b)
                    rep.violation("generator compatibility fails at (" + std::to_string(i) + "," +
                                  std::to_string(j) + ") x=" + std::to_string(x));
            }
    return rep;
}

GroupElement Cocycle::signature() const {
    require(!tabulated() && group()->kind() == Group::Kind::Integers,
            "signature is defined for integer-group cocycles on finite sets");
    require(target_->abelian(), "signature requires an abelian target group");
    GroupElement sum = target_->identity();
    for (int x = 0; x < action_.set_size(); ++x) sum = sum * xi_[0][x];
    return sum;
}

// ---------------------------------------------------------------------------

ValidationReport validate_graph_cocycle(const GraphAction& action, const Cocycle& phi,
                                        bool strong) {
    ValidationReport rep = action.validate();
    for (auto& v : phi.validate().violations) rep.violation(v);
    require(phi.action().set_size() == action.graph()->edge_count(),
            "cocycle domain must be the edge set");
    require(phi.target()->same_as(*action.group()),
            "graph cocycles take values in the acting group");

    const auto& graph = *action.graph();
    std::vector<GroupElement> gens = action.group()->finite() ? action.group()->elements()
                                                              : action.group()->generators();
    for (const auto& g : gens) {
        for (int e = 0; e < graph.edge_count(); ++e) {
            GroupElement f = phi.evaluate(g, e);
            int se = graph.source(e);
            if (action.act_vertex(f, se) != action.act_vertex(g, se))
                rep.violation("vertex condition fails at g=" + g.str() +
                              " e=" + graph.edge_name(e));
            if (strong) {
                for (int v = 0; v < graph.vertex_count(); ++v)
                    if (action.act_vertex(f, v) != action.act_vertex(g, v))
                        rep.violation("strong vertex condition fails at g=" + g.str() + " e=" +
                                      graph.edge_name(e) + " v=" + graph.vertex_name(v));
            }
        }
    }
    return rep;
}

std::pair<int, GroupElement> induced_apply(const Cocycle& phi, const GroupElement& g, int x,
                                           const GroupElement& t) {
    return {phi.action().apply(g, x), phi.evaluate(g, x) * t};
}

SetAction materialize_induced(const Cocycle& phi) {
    require(phi.group()->finite() && phi.target()->finite(),
            "materialized induced action needs finite G and T");
    auto telems = phi.target()->elements();
    std::map<GroupElement, int> tindex;
    for (size_t i = 0; i < telems.size(); ++i) tindex[telems[i]] = static_cast<int>(i);
    int nt = static_cast<int>(telems.size());
    int n = phi.action().set_size() * nt;
    return SetAction::from_table(phi.group(), n, [&](const GroupElement& g, int p) {
        int x = p / nt, ti = p % nt;
        auto [y, u] = induced_apply(phi, g, x, telems[ti]);
        return y * nt + tindex.at(u);
    });
}

// ---------------------------------------------------------------------------

PathExtension::PathExtension(GraphAction action, Cocycle phi, int max_length)
    : action_(std::move(action)), phi_(std::move(phi)) {
    require(phi_.action().set_size() == action_.graph()->edge_count(),
            "cocycle domain must be the edge set");
    paths_ = action_.graph()->paths_up_to(max_length);
    for (size_t i = 0; i < paths_.size(); ++i) index_[paths_[i]] = static_cast<int>(i);
}

int PathExtension::path_index(const Path& p) const {
    auto it = index_.find(p);
    require(it != index_.end(), "path exceeds the extension bound");
    return it->second;
}

Path PathExtension::act(const GroupElement& g, const Path& p) const {
    if (p.length() == 0) return Path(action_.graph(), action_.act_vertex(g, p.range()));
    // g·(e μ) = (g·e)(φ(g,e)·μ)
    int e = p.edges().front();
    Path head(action_.graph(), std::vector<int>{e});
    Path tail = head.remainder_of(p);
    int ge = action_.act_edge(g, e);
    return Path(action_.graph(), std::vector<int>{ge}) * act(phi_.evaluate(g, e), tail);
}

GroupElement PathExtension::cocycle(const GroupElement& g, const Path& p) const {
    if (p.length() == 0) return g;
    int e = p.edges().front();
    Path head(action_.graph(), std::vector<int>{e});
    Path tail = head.remainder_of(p);
    return cocycle(phi_.evaluate(g, e), tail);
}

SetAction PathExtension::induced_action() const {
    int n = static_cast<int>(paths_.size());
    if (action_.group()->finite())
        return SetAction::from_table(action_.group(), n, [&](const GroupElement& g, int i) {
            return path_index(act(g, paths_[i]));
        });
    std::vector<std::vector<int>> taus;
    for (const auto& gen : action_.group()->generators()) {
        std::vector<int> tau(n);
        for (int i = 0; i < n; ++i) tau[i] = path_index(act(gen, paths_[i]));
        taus.push_back(std::move(tau));
    }
    return SetAction::free_abelian(action_.group(), n, std::move(taus));
}

Cocycle PathExtension::induced_cocycle() const {
    SetAction ext = induced_action();
    int n = static_cast<int>(paths_.size());
    if (action_.group()->finite())
        return Cocycle::from_table(ext, phi_.target(), [&](const GroupElement& g, int i) {
            return cocycle(g, paths_[i]);
        });
    std::vector<std::vector<GroupElement>> xi;
    for (const auto& gen : action_.group()->generators()) {
        std::vector<GroupElement> row;
        for (int i = 0; i < n; ++i) row.push_back(cocycle(gen, paths_[i]));
        xi.push_back(std::move(row));
    }
    return Cocycle::generating(ext, phi_.target(), std::move(xi));
}

GraphAction bouquet_action(const SetAction& on_set) {
    int n = on_set.set_size();
    std::vector<Graph::Edge> edges;
    for (int i = 0; i < n; ++i) edges.push_back({"e" + std::to_string(i), 0, 0});
    GraphPtr g = Graph::make({"v"}, std::move(edges));
    SetAction on_vertices =
        on_set.group_finite()
            ? SetAction::from_table(on_set.group(), 1, [](const GroupElement&, int) { return 0; })
            : SetAction::free_abelian(on_set.group(), 1,
                                      std::vector<std::vector<int>>(on_set.rank(), {0}));
    return GraphAction(g, std::move(on_vertices), on_set);
}

PathExtension extend_to_words(const SetAction& action, const Cocycle& phi, int max_length) {
    return PathExtension(bouquet_action(action), phi, max_length);
}

} // namespace epco
