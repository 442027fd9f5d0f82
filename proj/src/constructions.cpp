#include "epco/constructions.hpp"

#include <numeric>

namespace epco {

namespace {

std::string joined(const std::vector<std::string>& msgs) {
    std::string out;
    for (const auto& m : msgs) out += (out.empty() ? "" : "; ") + m;
    return out;
}

// trivial action on a single extra fixed point appended after the set
SetAction extend_with_fixed_point(const SetAction& a) {
    int n = a.set_size();
    if (a.group_finite())
        return SetAction::from_table(a.group(), n + 1, [&](const GroupElement& g, int x) {
            return x == n ? n : a.apply(g, x);
        });
    std::vector<std::vector<int>> taus;
    for (int i = 0; i < a.rank(); ++i) {
        std::vector<int> tau = a.generator_images(i);
        tau.push_back(n);
        taus.push_back(std::move(tau));
    }
    return SetAction::free_abelian(a.group(), n + 1, std::move(taus));
}

SetAction trivial_action(const GroupPtr& g, int n) {
    if (g->finite())
        return SetAction::from_table(g, n, [](const GroupElement&, int x) { return x; });
    std::vector<int> id(n);
    std::iota(id.begin(), id.end(), 0);
    int rank = g->kind() == Group::Kind::Integers ? 1 : static_cast<int>(g->factors().size());
    return SetAction::free_abelian(g, n, std::vector<std::vector<int>>(rank, id));
}

} // namespace

System make_system(GraphAction action, Cocycle phi, bool strong) {
    ValidationReport rep = validate_graph_cocycle(action, phi, strong);
    require(rep.valid, "invalid system: " + joined(rep.violations));
    return {std::move(action), std::move(phi)};
}

// ---------------------------------------------------------------------------
// EPK

EpkParams epk_params(long a, long b) {
    require(a >= 1, "a must be positive");
    long r = ((b % a) + a) % a;
    long q = (b - r) / a;
    long d = std::gcd(a, r);
    if (d == 0) d = a;  // r == 0
    return {a, b, q, r, a - r, d, a / d, b / d, r / d};
}

Cocycle epk_cocycle(long a, long b) {
    EpkParams p = epk_params(a, b);
    auto Z = Group::integers();
    std::vector<int> tau(a);
    for (long k = 0; k < a; ++k) tau[k] = static_cast<int>((k + p.r) % a);
    std::vector<GroupElement> xi;
    for (long k = 0; k < a; ++k) xi.push_back(Z->from_integer(k < p.c ? p.q : p.q + 1));
    return Cocycle::generating(SetAction::free_abelian(Z, static_cast<int>(a), {tau}), Z,
                               {std::move(xi)});
}

System epk_system(long a, long b) {
    Cocycle phi = epk_cocycle(a, b);
    std::vector<std::string> names;
    for (long k = 0; k < a; ++k) names.push_back("e" + std::to_string(k));
    GraphPtr g = bouquet_graph(names);
    SetAction on_vertices = trivial_action(phi.group(), 1);
    SetAction on_edges = phi.action();
    return make_system(GraphAction(g, std::move(on_vertices), std::move(on_edges)),
                       std::move(phi));
}

EpkDecomposition epk_decompose(long a, long b) {
    EpkParams p = epk_params(a, b);
    EpkDecomposition out{p, epk_cocycle(p.a1, p.b1), {}};
    auto Z = Group::integers();
    Cocycle big = epk_cocycle(a, b);
    for (long i = 0; i < p.d; ++i) {
        std::vector<int> points;
        for (long k = 0; k < p.a1; ++k) points.push_back(static_cast<int>(i + k * p.d));
        // restriction of (sigma_{a,b}, phi_{a,b}) to the orbit, indexed by k
        std::vector<int> tau(p.a1);
        std::vector<GroupElement> xi;
        for (long k = 0; k < p.a1; ++k) {
            tau[k] = static_cast<int>((k + p.r1) % p.a1);
            xi.push_back(big.xi(0, points[k]));
        }
        Cocycle restricted = Cocycle::generating(
            SetAction::free_abelian(Z, static_cast<int>(p.a1), {tau}), Z, {std::move(xi)});
        auto conj = transitive_conjugacy(out.target, restricted);
        require(conj.has_value(), "orbit restriction is not conjugate to the quotient system");
        out.orbits.push_back({std::move(points), std::move(restricted), std::move(*conj)});
    }
    return out;
}

// ---------------------------------------------------------------------------
// graph builders

GraphPtr bouquet_graph(const std::vector<std::string>& edge_names) {
    require(!edge_names.empty(), "bouquet needs at least one loop");
    std::vector<Graph::Edge> edges;
    for (const auto& n : edge_names) edges.push_back({n, 0, 0});
    return Graph::make({"v"}, std::move(edges));
}

GraphPtr strings_graph(const std::vector<std::string>& s_names) {
    require(!s_names.empty(), "strings graph needs a nonempty set");
    std::vector<std::string> vertices = s_names;
    vertices.push_back("omega");
    int omega = static_cast<int>(s_names.size());
    std::vector<Graph::Edge> edges;
    for (int x = 0; x < omega; ++x) edges.push_back({s_names[x], x, omega});
    return Graph::make(std::move(vertices), std::move(edges));
}

GraphPtr general_strings_graph(const std::vector<std::string>& s_names,
                               const std::vector<std::string>& i_names,
                               const std::vector<int>& rho) {
    require(!s_names.empty() && !i_names.empty(), "general strings graph needs nonempty sets");
    require(rho.size() == s_names.size(), "rho must be defined on all of S");
    std::vector<std::string> vertices = i_names;
    vertices.push_back("omega");
    int omega = static_cast<int>(i_names.size());
    std::vector<Graph::Edge> edges;
    for (size_t x = 0; x < s_names.size(); ++x) {
        require(rho[x] >= 0 && rho[x] < omega, "rho value out of I");
        edges.push_back({s_names[x], rho[x], omega});
    }
    return Graph::make(std::move(vertices), std::move(edges));
}

GraphPtr sink_free_graph(int s_size, int t_size) {
    require(s_size >= 1 && t_size >= 1, "sink-free graph needs nonempty S and T");
    std::vector<std::string> vertices;
    for (int x = 0; x < s_size; ++x) vertices.push_back("x" + std::to_string(x));
    vertices.push_back("omega");
    int omega = s_size;
    std::vector<Graph::Edge> edges;
    for (int x = 0; x < s_size; ++x) {
        edges.push_back({"x" + std::to_string(x) + ":omega", x, omega});
        for (int y = 0; y < t_size; ++y)
            edges.push_back({"x" + std::to_string(x) + ":y" + std::to_string(y), x, x});
    }
    return Graph::make(std::move(vertices), std::move(edges));
}

namespace {

std::string word_name(const Path& p) {
    std::string s = "w";
    for (int e : p.edges()) s += std::to_string(e);
    return s;
}

} // namespace

GraphPtr tree_graph(int s_size, int max_length) {
    require(s_size >= 1 && max_length >= 0, "tree needs a nonempty alphabet");
    std::vector<std::string> loop_names;
    for (int x = 0; x < s_size; ++x) loop_names.push_back(std::to_string(x));
    auto words = bouquet_graph(loop_names)->paths_up_to(max_length);
    std::map<std::vector<int>, int> index;
    std::vector<std::string> vertices;
    for (size_t i = 0; i < words.size(); ++i) {
        index[words[i].edges()] = static_cast<int>(i);
        vertices.push_back(word_name(words[i]));
    }
    // edge (w, wx): range w, source wx; one edge per nonempty word
    std::vector<Graph::Edge> edges;
    for (const auto& w : words) {
        if (w.length() == 0) continue;
        std::vector<int> parent(w.edges().begin(), w.edges().end() - 1);
        edges.push_back({word_name(w), index.at(parent), index.at(w.edges())});
    }
    return Graph::make(std::move(vertices), std::move(edges));
}

// ---------------------------------------------------------------------------
// lifts

System lift_to_strings(const SetAction& on_s, const Cocycle& phi) {
    int n = on_s.set_size();
    std::vector<std::string> names;
    for (int x = 0; x < n; ++x) names.push_back("s" + std::to_string(x));
    GraphPtr g = strings_graph(names);
    GraphAction act(g, extend_with_fixed_point(on_s), on_s);
    return make_system(std::move(act), phi);
}

System lift_to_sink_free(const SetAction& on_s, const SetAction& on_t, const Cocycle& phi) {
    require(on_s.group()->same_as(*on_t.group()), "S and T must carry the same group");
    int ns = on_s.set_size(), nt = on_t.set_size();
    GraphPtr g = sink_free_graph(ns, nt);
    int stride = nt + 1;
    auto edge_image = [&](auto&& apply_s, auto&& apply_t, int e) {
        int x = e / stride, y = e % stride;
        return apply_s(x) * stride + (y == 0 ? 0 : 1 + apply_t(y - 1));
    };

    const GroupPtr& G = on_s.group();
    SetAction on_edges = [&] {
        if (G->finite())
            return SetAction::from_table(G, ns * stride, [&](const GroupElement& h, int e) {
                return edge_image([&](int x) { return on_s.apply(h, x); },
                                  [&](int y) { return on_t.apply(h, y); }, e);
            });
        std::vector<std::vector<int>> taus;
        for (int i = 0; i < on_s.rank(); ++i) {
            std::vector<int> tau(ns * stride);
            for (int e = 0; e < ns * stride; ++e)
                tau[e] = edge_image([&](int x) { return on_s.generator_images(i)[x]; },
                                    [&](int y) { return on_t.generator_images(i)[y]; }, e);
            taus.push_back(std::move(tau));
        }
        return SetAction::free_abelian(G, ns * stride, std::move(taus));
    }();

    Cocycle lifted = [&] {
        if (G->finite())
            return Cocycle::from_table(on_edges, G, [&](const GroupElement& h, int e) {
                return e % stride == 0 ? phi.evaluate(h, e / stride) : h;
            });
        std::vector<std::vector<GroupElement>> xi;
        auto gens = G->generators();
        for (int i = 0; i < on_s.rank(); ++i) {
            std::vector<GroupElement> row;
            for (int e = 0; e < ns * stride; ++e)
                row.push_back(e % stride == 0 ? phi.xi(i, e / stride) : gens[i]);
            xi.push_back(std::move(row));
        }
        return Cocycle::generating(on_edges, G, std::move(xi));
    }();

    GraphAction act(g, extend_with_fixed_point(on_s), std::move(on_edges));
    return make_system(std::move(act), std::move(lifted));
}

TreeLift lift_to_tree(const SetAction& on_s, const Cocycle& phi, int max_length) {
    PathExtension ext = extend_to_words(on_s, phi, max_length);
    GraphPtr tree = tree_graph(on_s.set_size(), max_length);
    int nwords = static_cast<int>(ext.paths().size());
    require(tree->vertex_count() == nwords, "tree/word enumeration mismatch");

    SetAction on_vertices = ext.induced_action();
    // edges are indexed by their source word (all nonempty words, in order);
    // word index w (>= 1 since the root is word 0) is edge w-1
    auto word_of_edge = [&](int e) { return e + 1; };
    auto edge_of_word = [&](int w) { return w - 1; };
    for (int e = 0; e < tree->edge_count(); ++e)
        require(tree->edge_name(e) == word_name(ext.paths()[word_of_edge(e)]),
                "tree edge order mismatch");

    const GroupPtr& G = on_s.group();
    SetAction on_edges = [&] {
        if (G->finite())
            return SetAction::from_table(G, tree->edge_count(), [&](const GroupElement& g, int e) {
                return edge_of_word(ext.path_index(ext.act(g, ext.paths()[word_of_edge(e)])));
            });
        std::vector<std::vector<int>> taus;
        auto gens = G->generators();
        for (size_t i = 0; i < gens.size(); ++i) {
            std::vector<int> tau(tree->edge_count());
            for (int e = 0; e < tree->edge_count(); ++e)
                tau[e] = edge_of_word(ext.path_index(ext.act(gens[i], ext.paths()[word_of_edge(e)])));
            taus.push_back(std::move(tau));
        }
        return SetAction::free_abelian(G, tree->edge_count(), std::move(taus));
    }();

    Cocycle edge_cocycle = [&] {
        if (G->finite())
            return Cocycle::from_table(on_edges, G, [&](const GroupElement& g, int e) {
                return ext.cocycle(g, ext.paths()[word_of_edge(e)]);
            });
        std::vector<std::vector<GroupElement>> xi;
        auto gens = G->generators();
        for (size_t i = 0; i < gens.size(); ++i) {
            std::vector<GroupElement> row;
            for (int e = 0; e < tree->edge_count(); ++e)
                row.push_back(ext.cocycle(gens[i], ext.paths()[word_of_edge(e)]));
            xi.push_back(std::move(row));
        }
        return Cocycle::generating(on_edges, G, std::move(xi));
    }();

    GraphAction action(tree, std::move(on_vertices), std::move(on_edges));

    std::vector<GroupElement> gens = G->finite() ? G->elements() : G->generators();
    bool ct3 = true;
    for (const auto& g : gens)
        for (int x = 0; x < on_s.set_size() && ct3; ++x)
            ct3 = on_s.apply(phi.evaluate(g, x), x) == on_s.apply(g, x);
    bool ct2 = true;
    for (const auto& g : gens)
        for (int w = 1; w < nwords && ct2; ++w) {
            const Path& p = ext.paths()[w];
            ct2 = ext.act(ext.cocycle(g, p), p) == ext.act(g, p);
        }

    ValidationReport report = validate_graph_cocycle(action, edge_cocycle);
    return {std::move(action), std::move(edge_cocycle), ct3, ct2, std::move(report)};
}

System TreeLift::system() const {
    require(ct2, "tree lift is not a graph cocycle: CT2 fails");
    return make_system(action, edge_cocycle);
}

// ---------------------------------------------------------------------------
// endomorphism systems on Z^n

namespace {

// exact solve A y = v; nullopt if y is not integral
std::optional<std::vector<mpz_class>> solve_integral(const IntMatrix& A,
                                                     const std::vector<mpz_class>& v) {
    size_t n = A.size();
    std::vector<std::vector<mpq_class>> m(n, std::vector<mpq_class>(n + 1));
    for (size_t i = 0; i < n; ++i) {
        for (size_t j = 0; j < n; ++j) m[i][j] = A[i][j];
        m[i][n] = v[i];
    }
    for (size_t col = 0; col < n; ++col) {
        size_t piv = col;
        while (piv < n && m[piv][col] == 0) ++piv;
        require(piv < n, "matrix is singular");
        std::swap(m[piv], m[col]);
        for (size_t i = 0; i < n; ++i) {
            if (i == col) continue;
            mpq_class f = m[i][col] / m[col][col];
            for (size_t j = col; j <= n; ++j) m[i][j] -= f * m[col][j];
        }
    }
    std::vector<mpz_class> y(n);
    for (size_t i = 0; i < n; ++i) {
        mpq_class q = m[i][n] / m[i][i];
        q.canonicalize();
        if (q.get_den() != 1) return std::nullopt;
        y[i] = q.get_num();
    }
    return y;
}

mpz_class determinant(const IntMatrix& A) {
    size_t n = A.size();
    std::vector<std::vector<mpq_class>> m(n, std::vector<mpq_class>(n));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) m[i][j] = A[i][j];
    mpq_class det = 1;
    for (size_t col = 0; col < n; ++col) {
        size_t piv = col;
        while (piv < n && m[piv][col] == 0) ++piv;
        if (piv == n) return 0;
        if (piv != col) {
            std::swap(m[piv], m[col]);
            det = -det;
        }
        det *= m[col][col];
        for (size_t i = col + 1; i < n; ++i) {
            mpq_class f = m[i][col] / m[col][col];
            for (size_t j = col; j < n; ++j) m[i][j] -= f * m[col][j];
        }
    }
    det.canonicalize();
    return det.get_num();
}

} // namespace

EndoSystem endomorphism_system(const IntMatrix& A, const IntMatrix& B,
                               std::vector<std::vector<long>> reps) {
    size_t n = A.size();
    require(n >= 1 && B.size() == n, "A and B must be square of equal size");
    for (const auto& row : A) require(row.size() == n, "A is not square");
    for (const auto& row : B) require(row.size() == n, "B is not square");
    mpz_class det = determinant(A);
    require(det != 0, "rho must be injective: det A != 0");
    mpz_class absdet = abs(det);
    require(mpz_class(static_cast<long>(reps.size())) == absdet,
            "need |det A| coset representatives");

    auto in_image = [&](const std::vector<mpz_class>& v) {
        return solve_integral(A, v).has_value();
    };
    bool has_zero = false;
    for (size_t i = 0; i < reps.size(); ++i) {
        require(reps[i].size() == n, "representative has wrong dimension");
        bool zero = true;
        for (long c : reps[i]) zero = zero && c == 0;
        has_zero = has_zero || zero;
        for (size_t j = i + 1; j < reps.size(); ++j) {
            std::vector<mpz_class> diff(n);
            for (size_t k = 0; k < n; ++k) diff[k] = mpz_class(reps[i][k]) - reps[j][k];
            require(!in_image(diff), "representatives are not pairwise inequivalent");
        }
    }
    require(has_zero, "representatives must contain the identity");

    // s(v): the unique representative with v - rep in A Z^n, plus the quotient
    auto section = [&](const std::vector<mpz_class>& v)
        -> std::pair<int, std::vector<mpz_class>> {
        for (size_t i = 0; i < reps.size(); ++i) {
            std::vector<mpz_class> diff(n);
            for (size_t k = 0; k < n; ++k) diff[k] = v[k] - reps[i][k];
            if (auto y = solve_integral(A, diff)) return {static_cast<int>(i), std::move(*y)};
        }
        fail("representatives do not cover the quotient");
    };

    GroupPtr G;
    if (n == 1) {
        G = Group::integers();
    } else {
        std::vector<GroupPtr> fs(n, Group::integers());
        G = Group::product(std::move(fs));
    }
    auto as_element = [&](const std::vector<mpz_class>& v) {
        if (n == 1) return G->from_integer(v[0]);
        std::vector<GroupElement> parts;
        for (const auto& c : v) parts.push_back(Group::integers()->from_integer(c));
        return G->from_parts(std::move(parts));
    };

    // generator i: g = e_i, tau(g) = B e_i = column i of B
    int m = static_cast<int>(reps.size());
    std::vector<std::vector<int>> taus;
    std::vector<std::vector<GroupElement>> xi;
    for (size_t i = 0; i < n; ++i) {
        std::vector<int> tau(m);
        std::vector<GroupElement> row;
        for (int x = 0; x < m; ++x) {
            std::vector<mpz_class> v(n);
            for (size_t k = 0; k < n; ++k) v[k] = mpz_class(B[k][i]) + reps[x][k];
            auto [j, y] = section(v);
            tau[x] = j;
            row.push_back(as_element(y));
        }
        taus.push_back(std::move(tau));
        xi.push_back(std::move(row));
    }
    SetAction act = SetAction::free_abelian(G, m, std::move(taus));
    Cocycle phi = Cocycle::generating(act, G, std::move(xi));
    ValidationReport rep = phi.validate();
    require(rep.valid, "endomorphism system failed validation: " + joined(rep.violations));
    return {std::move(act), std::move(phi), std::move(reps)};
}

// ---------------------------------------------------------------------------
// pasting

System pasting_construction(GraphPtr graph, const std::vector<PastingBlock>& blocks) {
    require(!blocks.empty(), "pasting needs at least one block");
    const GroupPtr& G = blocks.front().action.group();
    int ne = graph->edge_count();

    // per-block global edge lists; blocks must partition E1 by (range, source)
    std::vector<std::vector<int>> global(blocks.size());
    std::vector<int> owner(ne, -1);
    for (size_t b = 0; b < blocks.size(); ++b) {
        require(blocks[b].action.group()->same_as(*G), "blocks must share the group");
        require(blocks[b].phi.target()->same_as(*G), "block cocycles must be G-valued");
        for (int e = 0; e < ne; ++e) {
            if (graph->range(e) != blocks[b].range_vertex ||
                graph->source(e) != blocks[b].source_vertex)
                continue;
            require(owner[e] == -1, "blocks overlap");
            owner[e] = static_cast<int>(b);
            global[b].push_back(e);
        }
        require(static_cast<int>(global[b].size()) == blocks[b].action.set_size(),
                "block size does not match the edge count between its vertices");
    }
    for (int e = 0; e < ne; ++e)
        require(owner[e] != -1, "blocks do not cover every edge");

    std::vector<int> local(ne);
    for (size_t b = 0; b < blocks.size(); ++b)
        for (size_t l = 0; l < global[b].size(); ++l) local[global[b][l]] = static_cast<int>(l);

    SetAction on_edges = [&] {
        if (G->finite())
            return SetAction::from_table(G, ne, [&](const GroupElement& g, int e) {
                int b = owner[e];
                return global[b][blocks[b].action.apply(g, local[e])];
            });
        std::vector<std::vector<int>> taus;
        int rank = blocks.front().action.rank();
        for (int i = 0; i < rank; ++i) {
            std::vector<int> tau(ne);
            for (int e = 0; e < ne; ++e) {
                int b = owner[e];
                tau[e] = global[b][blocks[b].action.generator_images(i)[local[e]]];
            }
            taus.push_back(std::move(tau));
        }
        return SetAction::free_abelian(G, ne, std::move(taus));
    }();

    Cocycle phi = [&] {
        if (G->finite())
            return Cocycle::from_table(on_edges, G, [&](const GroupElement& g, int e) {
                return blocks[owner[e]].phi.evaluate(g, local[e]);
            });
        std::vector<std::vector<GroupElement>> xi;
        int rank = blocks.front().action.rank();
        for (int i = 0; i < rank; ++i) {
            std::vector<GroupElement> row;
            for (int e = 0; e < ne; ++e) row.push_back(blocks[owner[e]].phi.xi(i, local[e]));
            xi.push_back(std::move(row));
        }
        return Cocycle::generating(on_edges, G, std::move(xi));
    }();

    GraphAction act(graph, trivial_action(G, graph->vertex_count()), std::move(on_edges));
    return make_system(std::move(act), std::move(phi));
}

System katsura_system(GraphPtr graph, const std::function<long(int, int)>& B) {
    std::map<std::pair<int, int>, long> sizes;
    for (int e = 0; e < graph->edge_count(); ++e)
        ++sizes[{graph->range(e), graph->source(e)}];
    std::vector<PastingBlock> blocks;
    for (const auto& [vw, count] : sizes) {
        Cocycle phi = epk_cocycle(count, B(vw.first, vw.second));
        SetAction act = phi.action();
        blocks.push_back({vw.first, vw.second, std::move(act), std::move(phi)});
    }
    return pasting_construction(std::move(graph), blocks);
}

// ---------------------------------------------------------------------------
// dynamical-system graphs

DynamicalSystem dynamical_system_graph(const std::vector<int>& sigma, const std::vector<int>& tau,
                                       const std::vector<long>& xi) {
    int n = static_cast<int>(sigma.size());
    require(n >= 1, "empty set");
    require(static_cast<int>(tau.size()) == n && static_cast<int>(xi.size()) == n,
            "sigma, tau, xi must have equal length");
    for (int x = 0; x < n; ++x)
        require(sigma[tau[x]] == tau[sigma[x]], "sigma and tau must commute");

    auto Z = Group::integers();
    SetAction on_points = SetAction::free_abelian(Z, n, {tau});
    std::vector<GroupElement> gen;
    for (long v : xi) gen.push_back(Z->from_integer(v));
    Cocycle phi = Cocycle::generating(on_points, Z, {std::move(gen)});

    DynamicalSystem out;
    bool all = true;
    for (int x = 0; x < n; ++x) {
        long period = on_points.cycle_length(0, x);
        bool ok = (xi[x] - 1) % period == 0;
        out.admissible.push_back(ok);
        all = all && ok;
    }
    if (all) {
        std::vector<std::string> vertices;
        for (int x = 0; x < n; ++x) vertices.push_back("v" + std::to_string(x));
        std::vector<Graph::Edge> edges;
        for (int x = 0; x < n; ++x)
            edges.push_back({"x" + std::to_string(x), sigma[x], x});
        GraphPtr g = Graph::make(std::move(vertices), std::move(edges));
        GraphAction act(g, on_points, on_points);
        out.system = make_system(std::move(act), std::move(phi));
    }
    return out;
}

// ---------------------------------------------------------------------------
// commuting actions

System commuting_actions_system(const SetAction& h_action, const SetAction& g_action,
                                const Cocycle& phi0) {
    require(h_action.group_finite(), "H must be finite (the edge set is H x E0)");
    int n = g_action.set_size();
    require(h_action.set_size() == n, "H and G must act on the same set");
    const GroupPtr& G = g_action.group();
    require(phi0.target()->same_as(*G), "phi must be G-valued");
    require(phi0.action().set_size() == n, "phi must live on E0");

    std::vector<GroupElement> g_gens = G->finite() ? G->elements() : G->generators();
    for (const auto& h : h_action.element_list())
        for (const auto& g : g_gens)
            for (int x = 0; x < n; ++x)
                require(h_action.apply(h, g_action.apply(g, x)) ==
                            g_action.apply(g, h_action.apply(h, x)),
                        "the G- and H-actions do not commute");
    for (const auto& g : g_gens)
        for (int x = 0; x < n; ++x)
            require(g_action.apply(phi0.evaluate(g, x), x) == g_action.apply(g, x),
                    "constraint phi(g,x).x = g.x fails at g=" + g.str() +
                        " x=" + std::to_string(x));

    int nh = static_cast<int>(h_action.element_list().size());
    int ne = nh * n;
    auto h_elem = [&](int e) { return h_action.element_list()[e / n]; };

    // G moves only the E0 coordinate of an edge (h, x)
    SetAction on_edges = [&] {
        if (G->finite())
            return SetAction::from_table(G, ne, [&](const GroupElement& g, int e) {
                return (e / n) * n + g_action.apply(g, e % n);
            });
        std::vector<std::vector<int>> taus;
        for (int i = 0; i < g_action.rank(); ++i) {
            std::vector<int> tau(ne);
            for (int e = 0; e < ne; ++e) tau[e] = (e / n) * n + g_action.generator_images(i)[e % n];
            taus.push_back(std::move(tau));
        }
        return SetAction::free_abelian(G, ne, std::move(taus));
    }();

    Cocycle phi = [&] {
        if (G->finite())
            return Cocycle::from_table(on_edges, G, [&](const GroupElement& g, int e) {
                return phi0.evaluate(g, h_action.apply(h_elem(e), e % n));
            });
        std::vector<std::vector<GroupElement>> xi;
        for (int i = 0; i < g_action.rank(); ++i) {
            std::vector<GroupElement> row;
            for (int e = 0; e < ne; ++e)
                row.push_back(phi0.xi(i, h_action.apply(h_elem(e), e % n)));
            xi.push_back(std::move(row));
        }
        return Cocycle::generating(on_edges, G, std::move(xi));
    }();

    std::vector<std::string> vertices;
    for (int x = 0; x < n; ++x) vertices.push_back("v" + std::to_string(x));
    std::vector<Graph::Edge> edges;
    for (int e = 0; e < ne; ++e)
        edges.push_back({"h" + std::to_string(e / n) + ":v" + std::to_string(e % n),
                         h_action.apply(h_elem(e), e % n), e % n});
    GraphPtr graph = Graph::make(std::move(vertices), std::move(edges));
    GraphAction act(graph, g_action, std::move(on_edges));
    return make_system(std::move(act), std::move(phi));
}

// ---------------------------------------------------------------------------
// Zappa-Szép product

ZappaSzep::ZappaSzep(System sys, int max_length)
    : sys_(sys), ext_(sys.action, sys.phi, max_length), max_length_(max_length) {}

std::optional<ZappaSzep::Element> ZappaSzep::multiply(const Element& lhs,
                                                      const Element& rhs) const {
    const auto& [w, g] = lhs;
    const auto& [w2, g2] = rhs;
    if (w.length() + w2.length() > max_length_) return std::nullopt;
    Path gw2 = ext_.act(g, w2);
    if (w.source() != gw2.range()) return std::nullopt;
    return Element{w * gw2, ext_.cocycle(g, w2) * g2};
}

ValidationReport ZappaSzep::check_associativity(const std::vector<GroupElement>& gs) const {
    ValidationReport rep;
    std::vector<Element> elems;
    for (const auto& p : ext_.paths())
        for (const auto& g : gs) elems.push_back({p, g});
    for (const auto& x : elems)
        for (const auto& y : elems) {
            auto xy = multiply(x, y);
            for (const auto& z : elems) {
                auto yz = multiply(y, z);
                auto l = xy ? multiply(*xy, z) : std::optional<Element>{};
                auto r = yz ? multiply(x, *yz) : std::optional<Element>{};
                if (l.has_value() != r.has_value())
                    rep.violation("one-sided definedness at (" + x.first.str() + "," +
                                  x.second.str() + ")(" + y.first.str() + "," + y.second.str() +
                                  ")(" + z.first.str() + "," + z.second.str() + ")");
                else if (l && !(l->first == r->first && l->second == r->second))
                    rep.violation("associativity fails at (" + x.first.str() + "," +
                                  x.second.str() + ")(" + y.first.str() + "," + y.second.str() +
                                  ")(" + z.first.str() + "," + z.second.str() + ")");
            }
        }
    return rep;
}

std::vector<std::string> ZappaSzep::right_cancellation_failures(
    const std::vector<GroupElement>& gs) const {
    std::vector<std::string> out;
    std::vector<Element> elems;
    for (const auto& p : ext_.paths())
        for (const auto& g : gs) elems.push_back({p, g});
    for (size_t i = 0; i < elems.size() && out.size() < 20; ++i)
        for (size_t j = i + 1; j < elems.size() && out.size() < 20; ++j) {
            if (elems[i].first == elems[j].first && elems[i].second == elems[j].second) continue;
            for (const auto& z : elems) {
                auto a = multiply(elems[i], z), b = multiply(elems[j], z);
                if (a && b && a->first == b->first && a->second == b->second) {
                    out.push_back("(" + elems[i].first.str() + "," + elems[i].second.str() +
                                  ") != (" + elems[j].first.str() + "," + elems[j].second.str() +
                                  ") but both times (" + z.first.str() + "," + z.second.str() +
                                  ") give (" + a->first.str() + "," + a->second.str() + ")");
                    break;
                }
            }
        }
    return out;
}

} // namespace epco
