#include "epco/action.hpp"

#include <numeric>

namespace epco {

namespace {

bool is_free_abelian(const Group& g) {
    if (g.kind() == Group::Kind::Integers) return true;
    if (g.kind() != Group::Kind::Product) return false;
    for (const auto& f : g.factors())
        if (f->kind() != Group::Kind::Integers) return false;
    return true;
}

std::vector<int> check_permutation(std::vector<int> images, int n) {
    require(static_cast<int>(images.size()) == n, "image vector has wrong size");
    std::vector<bool> seen(n, false);
    for (int i : images) {
        require(i >= 0 && i < n && !seen[i], "image vector is not a permutation");
        seen[i] = true;
    }
    return images;
}

std::vector<long> cycle_lengths(const std::vector<int>& tau) {
    int n = static_cast<int>(tau.size());
    std::vector<long> len(n, 0);
    std::vector<bool> done(n, false);
    for (int x = 0; x < n; ++x) {
        if (done[x]) continue;
        std::vector<int> cyc{x};
        int y = tau[x];
        while (y != x) {
            cyc.push_back(y);
            y = tau[y];
        }
        for (int z : cyc) {
            len[z] = static_cast<long>(cyc.size());
            done[z] = true;
        }
    }
    return len;
}

} // namespace

SetAction SetAction::from_table(GroupPtr group, int set_size,
                                const std::function<int(const GroupElement&, int)>& act) {
    require(group->finite(), "from_table requires a finite group");
    require(set_size >= 0, "acted set size must be nonnegative");
    SetAction a;
    a.group_ = group;
    a.set_size_ = set_size;
    a.elements_ = group->elements();
    for (size_t i = 0; i < a.elements_.size(); ++i)
        a.element_index_[a.elements_[i]] = static_cast<int>(i);
    for (const auto& g : a.elements_) {
        std::vector<int> row(set_size);
        for (int x = 0; x < set_size; ++x) {
            int y = act(g, x);
            require(y >= 0 && y < set_size, "action value out of range");
            row[x] = y;
        }
        a.table_.push_back(check_permutation(std::move(row), set_size));
    }
    return a;
}

SetAction SetAction::free_abelian(GroupPtr group, int set_size,
                                  std::vector<std::vector<int>> generator_images) {
    require(is_free_abelian(*group),
            "free_abelian requires the integers or a product of integers");
    size_t rank = group->kind() == Group::Kind::Integers ? 1 : group->factors().size();
    require(generator_images.size() == rank, "one generator permutation per integer factor");
    SetAction a;
    a.group_ = group;
    a.set_size_ = set_size;
    for (auto& tau : generator_images) {
        tau = check_permutation(std::move(tau), set_size);
        std::vector<int> inv(set_size);
        for (int x = 0; x < set_size; ++x) inv[tau[x]] = x;
        a.cycle_length_.push_back(cycle_lengths(tau));
        a.generator_images_.push_back(std::move(tau));
        a.generator_preimages_.push_back(std::move(inv));
    }
    return a;
}

int SetAction::apply(const GroupElement& g, int x) const {
    require(g.group()->same_as(*group_), "group element does not belong to the acting group");
    require(x >= 0 && x < set_size_, "point out of range");
    if (!table_.empty()) {
        auto it = element_index_.find(g);
        require(it != element_index_.end(), "element not in enumeration");
        return table_[it->second][x];
    }
    // free-abelian: apply tau_i^{n_i} coordinatewise, reducing along cycles
    auto step = [&](int i, const mpz_class& n, int y) {
        long c = cycle_length_[i][y];
        mpz_class r = n % c;
        if (r < 0) r += c;
        long k = static_cast<long>(r.get_si());
        for (long j = 0; j < k; ++j) y = generator_images_[i][y];
        return y;
    };
    if (group_->kind() == Group::Kind::Integers) return step(0, g.integer(), x);
    int y = x;
    const auto& parts = g.parts();
    for (size_t i = 0; i < parts.size(); ++i) y = step(static_cast<int>(i), parts[i].integer(), y);
    return y;
}

std::vector<std::vector<int>> SetAction::orbits() const {
    // union generator orbits (generators and inverses suffice on finite sets)
    std::vector<int> parent(set_size_);
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    auto unite = [&](int x, int y) { parent[find(x)] = find(y); };
    if (!table_.empty()) {
        for (const auto& row : table_)
            for (int x = 0; x < set_size_; ++x) unite(x, row[x]);
    } else {
        for (const auto& tau : generator_images_)
            for (int x = 0; x < set_size_; ++x) unite(x, tau[x]);
    }
    std::map<int, std::vector<int>> buckets;
    for (int x = 0; x < set_size_; ++x) buckets[find(x)].push_back(x);
    std::vector<std::vector<int>> out;
    for (auto& [root, members] : buckets) out.push_back(std::move(members));
    return out;
}

ValidationReport SetAction::validate() const {
    ValidationReport rep;
    if (!table_.empty()) {
        GroupElement id = group_->identity();
        for (int x = 0; x < set_size_; ++x)
            if (apply(id, x) != x)
                rep.violation("identity moves point " + std::to_string(x));
        for (const auto& g : elements_)
            for (const auto& h : elements_)
                for (int x = 0; x < set_size_; ++x) {
                    if (apply(g * h, x) != apply(g, apply(h, x)))
                        rep.violation("(gh)x != g(hx) at g=" + g.str() + " h=" + h.str() +
                                      " x=" + std::to_string(x));
                }
        return rep;
    }
    // generator permutations are bijective by construction; check commutation
    for (size_t i = 0; i < generator_images_.size(); ++i)
        for (size_t j = i + 1; j < generator_images_.size(); ++j)
            for (int x = 0; x < set_size_; ++x) {
                int a = generator_images_[i][generator_images_[j][x]];
                int b = generator_images_[j][generator_images_[i][x]];
                if (a != b)
                    rep.violation("generators " + std::to_string(i) + "," + std::to_string(j) +
                                  " do not commute at x=" + std::to_string(x));
            }
    return rep;
}

int SetAction::element_index(const GroupElement& g) const {
    auto it = element_index_.find(g);
    require(it != element_index_.end(), "element not in enumeration");
    return it->second;
}

// ---------------------------------------------------------------------------

GraphAction::GraphAction(GraphPtr graph, SetAction on_vertices, SetAction on_edges)
    : graph_(std::move(graph)), vertices_(std::move(on_vertices)), edges_(std::move(on_edges)) {
    require(vertices_.group()->same_as(*edges_.group()),
            "vertex and edge actions must share the group");
    require(vertices_.set_size() == graph_->vertex_count(), "vertex action size mismatch");
    require(edges_.set_size() == graph_->edge_count(), "edge action size mismatch");
}

ValidationReport GraphAction::validate() const {
    ValidationReport rep = vertices_.validate();
    for (auto& v : edges_.validate().violations) rep.violation("edge action: " + v);

    std::vector<GroupElement> gens = group()->finite() ? group()->elements()
                                                       : group()->generators();
    for (const auto& g : gens) {
        for (int e = 0; e < graph_->edge_count(); ++e) {
            int ge = act_edge(g, e);
            if (graph_->range(ge) != act_vertex(g, graph_->range(e)))
                rep.violation("r(g e) != g r(e) at g=" + g.str() + " e=" + graph_->edge_name(e));
            if (graph_->source(ge) != act_vertex(g, graph_->source(e)))
                rep.violation("s(g e) != g s(e) at g=" + g.str() + " e=" + graph_->edge_name(e));
        }
    }
    return rep;
}

bool GraphAction::fixes_sources() const {
    std::vector<GroupElement> gens = group()->finite() ? group()->elements()
                                                       : group()->generators();
    for (const auto& g : gens)
        for (int e = 0; e < graph_->edge_count(); ++e)
            if (act_vertex(g, graph_->source(e)) != graph_->source(e)) return false;
    return true;
}

} // namespace epco
