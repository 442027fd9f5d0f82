#include "epco/cohomology.hpp"

#include <algorithm>

namespace epco {

namespace {

void check_witness_against(const Cocycle& phi, const CohomologyWitness& psi) {
    require(static_cast<int>(psi.psi.size()) == phi.action().set_size(),
            "witness has wrong domain size");
    for (const auto& t : psi.psi)
        require(t.valid() && t.group()->same_as(*phi.target()),
                "witness value not in the cocycle's target group");
}

std::vector<GroupElement> acting_elements(const GroupPtr& g) {
    return g->finite() ? g->elements() : g->generators();
}

} // namespace

ValidationReport check_cochain(const GraphAction& action, const CohomologyWitness& psi) {
    ValidationReport rep;
    require(psi.domain == CohomologyWitness::Domain::GraphEdges,
            "cochain condition applies to graph-edge witnesses");
    const auto& graph = *action.graph();
    require(static_cast<int>(psi.psi.size()) == graph.edge_count(),
            "witness has wrong domain size");
    for (int e = 0; e < graph.edge_count(); ++e) {
        int se = graph.source(e);
        if (action.act_vertex(psi.psi[e], se) != se)
            rep.violation("cochain condition fails at e=" + graph.edge_name(e));
    }
    return rep;
}

Cocycle apply_witness(const Cocycle& phi, const CohomologyWitness& psi) {
    check_witness_against(phi, psi);
    const SetAction& act = phi.action();
    if (phi.tabulated()) {
        return Cocycle::from_table(act, phi.target(), [&](const GroupElement& g, int x) {
            return psi.psi[act.apply(g, x)] * phi.evaluate(g, x) * psi.psi[x].inverse();
        });
    }
    std::vector<std::vector<GroupElement>> xi;
    for (int i = 0; i < phi.rank(); ++i) {
        std::vector<GroupElement> row;
        for (int x = 0; x < act.set_size(); ++x)
            row.push_back(psi.psi[act.generator_images(i)[x]] * phi.xi(i, x) *
                          psi.psi[x].inverse());
        xi.push_back(std::move(row));
    }
    return Cocycle::generating(act, phi.target(), std::move(xi));
}

bool verify_cohomologous(const Cocycle& phi, const Cocycle& phi2, const CohomologyWitness& psi) {
    check_witness_against(phi, psi);
    if (!phi.group()->same_as(*phi2.group()) || !phi.target()->same_as(*phi2.target())) return false;
    if (phi.action().set_size() != phi2.action().set_size()) return false;
    const SetAction& act = phi.action();
    for (const auto& g : acting_elements(phi.group()))
        for (int x = 0; x < act.set_size(); ++x) {
            GroupElement expected =
                psi.psi[act.apply(g, x)] * phi.evaluate(g, x) * psi.psi[x].inverse();
            if (phi2.evaluate(g, x) != expected) return false;
        }
    return true;
}

Cocycle transport(const Cocycle& phi, const std::vector<int>& theta) {
    const SetAction& act = phi.action();
    int n = act.set_size();
    require(static_cast<int>(theta.size()) == n, "bijection has wrong size");
    std::vector<int> inv(n, -1);
    for (int x = 0; x < n; ++x) {
        require(theta[x] >= 0 && theta[x] < n && inv[theta[x]] == -1, "theta is not a bijection");
        inv[theta[x]] = x;
    }
    if (phi.tabulated()) {
        auto moved = SetAction::from_table(phi.group(), n, [&](const GroupElement& g, int y) {
            return theta[act.apply(g, inv[y])];
        });
        return Cocycle::from_table(moved, phi.target(), [&](const GroupElement& g, int y) {
            return phi.evaluate(g, inv[y]);
        });
    }
    std::vector<std::vector<int>> taus;
    std::vector<std::vector<GroupElement>> xi;
    for (int i = 0; i < phi.rank(); ++i) {
        std::vector<int> tau(n);
        std::vector<GroupElement> row;
        for (int y = 0; y < n; ++y) {
            tau[y] = theta[act.generator_images(i)[inv[y]]];
            row.push_back(phi.xi(i, inv[y]));
        }
        taus.push_back(std::move(tau));
        xi.push_back(std::move(row));
    }
    auto moved = SetAction::free_abelian(phi.group(), n, std::move(taus));
    return Cocycle::generating(std::move(moved), phi.target(), std::move(xi));
}

// ---------------------------------------------------------------------------
// CosetSpace

CosetSpace::CosetSpace(GroupPtr group, std::vector<GroupElement> subgroup)
    : group_(std::move(group)), subgroup_(std::move(subgroup)) {
    require(group_->finite(), "coset spaces need a finite group");
    require(!subgroup_.empty(), "subgroup must be nonempty");
    std::sort(subgroup_.begin(), subgroup_.end());
    subgroup_.erase(std::unique(subgroup_.begin(), subgroup_.end()), subgroup_.end());
    std::set<GroupElement> members(subgroup_.begin(), subgroup_.end());
    require(members.count(group_->identity()), "subgroup must contain the identity");
    for (const auto& a : subgroup_)
        for (const auto& b : subgroup_)
            require(members.count(a * b), "subgroup is not closed under products");

    // elements() is in ascending order, so the first member of each coset we
    // meet is its least element
    for (const auto& g : group_->elements()) {
        if (coset_index_.count(g)) continue;
        int idx = coset_count();
        bool trivial = members.count(g) > 0;
        eta_.push_back(trivial ? group_->identity() : g);
        if (trivial) trivial_ = idx;
        for (const auto& h : subgroup_) coset_index_[g * h] = idx;
    }
}

int CosetSpace::coset_of(const GroupElement& g) const {
    auto it = coset_index_.find(g);
    require(it != coset_index_.end(), "element not in the group");
    return it->second;
}

SetAction CosetSpace::translation_action() const {
    return SetAction::from_table(group_, coset_count(), [&](const GroupElement& g, int x) {
        return coset_of(g * eta_[x]);
    });
}

// ---------------------------------------------------------------------------
// homomorphisms and subgroups

bool is_homomorphism(const std::vector<GroupElement>& domain, const Homomorphism& f) {
    for (const auto& g : domain)
        if (!f.count(g)) return false;
    for (const auto& g : domain)
        for (const auto& h : domain)
            if (f.at(g * h) != f.at(g) * f.at(h)) return false;
    return true;
}

std::vector<Homomorphism> enumerate_homomorphisms(const std::vector<GroupElement>& domain,
                                                  const GroupPtr& target) {
    require(!domain.empty(), "empty domain");
    GroupElement id = domain.front().group()->identity();

    // greedy generating set
    std::vector<GroupElement> gens;
    std::set<GroupElement> span{id};
    auto close = [&] {
        bool grew = true;
        while (grew) {
            grew = false;
            std::vector<GroupElement> cur(span.begin(), span.end());
            for (const auto& a : cur)
                for (const auto& g : gens)
                    if (span.insert(a * g).second) grew = true;
        }
    };
    for (const auto& d : domain) {
        if (span.count(d)) continue;
        gens.push_back(d);
        close();
    }
    std::set<GroupElement> dom(domain.begin(), domain.end());
    require(span == dom, "domain is not closed under products");

    auto timages = target->elements();
    double space = 1;
    for (size_t i = 0; i < gens.size(); ++i) space *= static_cast<double>(timages.size());
    require(space <= 1e6, "homomorphism search space too large");

    std::vector<Homomorphism> out;
    std::vector<size_t> idx(gens.size(), 0);
    for (;;) {
        // extend gen -> image assignment over the whole subgroup by products
        Homomorphism f{{id, target->identity()}};
        std::vector<GroupElement> frontier{id};
        bool ok = true;
        while (ok && !frontier.empty()) {
            GroupElement h = frontier.back();
            frontier.pop_back();
            for (size_t i = 0; i < gens.size(); ++i) {
                GroupElement h2 = h * gens[i];
                GroupElement t2 = f.at(h) * timages[idx[i]];
                auto it = f.find(h2);
                if (it == f.end()) {
                    f.emplace(h2, t2);
                    frontier.push_back(h2);
                } else if (it->second != t2) {
                    ok = false;
                    break;
                }
            }
        }
        if (ok && is_homomorphism(domain, f)) out.push_back(std::move(f));

        size_t i = gens.size();
        bool done = gens.empty();
        while (i > 0) {
            --i;
            if (++idx[i] < timages.size()) break;
            idx[i] = 0;
            if (i == 0) done = true;
        }
        if (done) break;
    }
    if (gens.empty()) out.push_back({{id, target->identity()}});
    return out;
}

std::vector<std::vector<GroupElement>> subgroups(const GroupPtr& g) {
    require(g->finite() && g->order() <= 16, "subgroup enumeration supports order <= 16");
    auto elems = g->elements();
    int n = static_cast<int>(elems.size());
    std::map<GroupElement, int> index;
    for (int i = 0; i < n; ++i) index[elems[i]] = i;
    int id = index.at(g->identity());
    std::vector<std::vector<int>> mul(n, std::vector<int>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) mul[i][j] = index.at(elems[i] * elems[j]);

    std::vector<std::vector<GroupElement>> out;
    for (unsigned long mask = 0; mask < (1ul << n); ++mask) {
        if (!(mask >> id & 1)) continue;
        std::vector<int> members;
        for (int i = 0; i < n; ++i)
            if (mask >> i & 1) members.push_back(i);
        bool closed = true;
        for (int i : members) {
            for (int j : members)
                if (!(mask >> mul[i][j] & 1)) {
                    closed = false;
                    break;
                }
            if (!closed) break;
        }
        if (!closed) continue;
        std::vector<GroupElement> sub;
        for (int i : members) sub.push_back(elems[i]);
        out.push_back(std::move(sub));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Zimmer

Homomorphism zimmer_hom(const CosetSpace& cs, const Cocycle& phi) {
    require(phi.action().set_size() == cs.coset_count(),
            "cocycle does not live on the coset space");
    Homomorphism pi;
    for (const auto& h : cs.subgroup()) pi[h] = phi.evaluate(h, cs.trivial_coset());
    require(is_homomorphism(cs.subgroup(), pi), "phi(.,H) is not a homomorphism on H");
    return pi;
}

Cocycle zimmer_cocycle(const CosetSpace& cs, const Homomorphism& pi, GroupPtr target) {
    require(is_homomorphism(cs.subgroup(), pi), "pi is not a homomorphism");
    SetAction act = cs.translation_action();
    return Cocycle::from_table(act, std::move(target), [&](const GroupElement& g, int x) {
        GroupElement h = cs.eta(cs.coset_of(g * cs.eta(x))).inverse() * g * cs.eta(x);
        auto it = pi.find(h);
        require(it != pi.end(), "phi0 left the subgroup; invalid cross-section");
        return it->second;
    });
}

CohomologyWitness zimmer_witness(const CosetSpace& cs, const Cocycle& phi, const Cocycle& phi2,
                                 const GroupElement& t0) {
    GroupElement t = phi.target()->abelian() ? phi.target()->identity() : t0;
    Homomorphism pi = zimmer_hom(cs, phi), pi2 = zimmer_hom(cs, phi2);
    for (const auto& h : cs.subgroup())
        require(pi2.at(h) == t * pi.at(h) * t.inverse(),
                "homomorphisms are not conjugate by the supplied element");
    CohomologyWitness psi;
    for (int x = 0; x < cs.coset_count(); ++x)
        psi.psi.push_back(phi2.evaluate(cs.eta(x), cs.trivial_coset()) * t.inverse() *
                          phi.evaluate(cs.eta(x), cs.trivial_coset()).inverse());
    require(verify_cohomologous(phi, phi2, psi), "constructed witness failed verification");
    return psi;
}

CohomologyWitness zimmer_remark_witness(const CosetSpace& cs, const Cocycle& phi) {
    CohomologyWitness tau;
    for (int x = 0; x < cs.coset_count(); ++x)
        tau.psi.push_back(phi.evaluate(cs.eta(x), cs.trivial_coset()).inverse());
    return tau;
}

// ---------------------------------------------------------------------------
// integer systems

Cocycle canonical_cocycle_Za(long a, const mpz_class& c) {
    auto Z = Group::integers();
    std::vector<int> tau(a);
    for (long k = 0; k < a; ++k) tau[k] = static_cast<int>((k + 1) % a);
    std::vector<GroupElement> xi(a, Z->from_integer(0));
    xi[a - 1] = Z->from_integer(c);
    return Cocycle::generating(SetAction::free_abelian(Z, static_cast<int>(a), {tau}), Z,
                               {std::move(xi)});
}

std::pair<mpz_class, CohomologyWitness> canonical_form_Za(const Cocycle& phi) {
    require(!phi.tabulated() && phi.group()->kind() == Group::Kind::Integers,
            "canonical form applies to integer-group generating cocycles");
    require(phi.target()->kind() == Group::Kind::Integers,
            "canonical form applies to integer-valued cocycles");
    require(phi.action().transitive(), "canonical form requires a transitive action");
    int a = phi.action().set_size();
    const auto& tau = phi.action().generator_images(0);
    bool rotation = true;
    for (int k = 0; k < a; ++k) rotation = rotation && tau[k] == (k + 1) % a;

    mpz_class c = phi.signature().integer();
    // psi(tau^j 0) = -phi(j, 0): kills the partial sums along the orbit,
    // leaving the full sum c on the step closing the cycle
    CohomologyWitness psi;
    psi.psi.assign(a, phi.target()->identity());
    mpz_class partial = 0;
    for (int j = 0, x = 0; j < a; ++j, x = tau[x]) {
        psi.psi[x] = phi.target()->from_integer(-partial);
        partial += phi.xi(0, x).integer();
    }
    if (rotation)
        require(verify_cohomologous(phi, canonical_cocycle_Za(a, c), psi),
                "canonical witness failed verification");
    else
        require(verify_cohomologous(phi, apply_witness(phi, psi), psi),
                "canonical witness failed verification");
    return {c, std::move(psi)};
}

std::optional<Conjugacy> transitive_conjugacy(const Cocycle& phi, const Cocycle& phi2) {
    for (const Cocycle* p : {&phi, &phi2}) {
        require(!p->tabulated() && p->group()->kind() == Group::Kind::Integers,
                "conjugacy decision applies to integer-group systems");
        require(p->action().transitive(), "conjugacy decision requires transitive actions");
    }
    require(phi.target()->same_as(*phi2.target()), "systems have different target groups");
    int n = phi.action().set_size();
    if (n != phi2.action().set_size()) return std::nullopt;

    // both orbits are single n-cycles; matching them up from 0 intertwines
    const auto& tau = phi.action().generator_images(0);
    const auto& tau2 = phi2.action().generator_images(0);
    std::vector<int> theta(n, -1);
    for (int j = 0, x = 0, y = 0; j < n; ++j, x = tau[x], y = tau2[y]) theta[x] = y;

    Cocycle moved = transport(phi, theta);
    // build the witness along the orbit; the wrap-around closes iff the
    // full-cycle products (signatures) agree
    std::vector<GroupElement> psi(n, phi.target()->identity());
    int y = 0;
    for (int j = 0; j + 1 < n; ++j) {
        psi[tau2[y]] = phi2.xi(0, y) * psi[y] * moved.xi(0, y).inverse();
        y = tau2[y];
    }
    if (phi2.xi(0, y) * psi[y] * moved.xi(0, y).inverse() != psi[0]) return std::nullopt;

    Conjugacy out{std::move(theta), CohomologyWitness{CohomologyWitness::Domain::Set, std::move(psi)}};
    require(verify_cohomologous(moved, phi2, out.psi), "conjugacy witness failed verification");
    return out;
}

std::optional<CohomologyWitness> is_translation_coboundary(const GraphAction& action) {
    require(action.fixes_sources(), "translation cocycle needs a source-fixing action");
    const auto& G = action.group();
    int ne = action.graph()->edge_count();
    if (!G->finite()) {
        // every point of a finite edge set has a nontrivial stabilizer in an
        // infinite group, so the action is never free (unless E1 is empty)
        if (ne == 0) return CohomologyWitness{CohomologyWitness::Domain::GraphEdges, {}};
        return std::nullopt;
    }
    std::vector<GroupElement> psi(ne, G->identity());
    std::vector<bool> assigned(ne, false);
    for (const auto& orbit : action.edges().orbits()) {
        int rep = orbit.front();
        for (const auto& g : G->elements()) {
            int e = action.act_edge(g, rep);
            if (assigned[e]) return std::nullopt;  // nontrivial stabilizer: not free
            assigned[e] = true;
            psi[e] = g;
        }
    }
    for (const auto& g : G->elements())
        for (int e = 0; e < ne; ++e)
            if (psi[action.act_edge(g, e)] != g * psi[e]) return std::nullopt;
    return CohomologyWitness{CohomologyWitness::Domain::GraphEdges, std::move(psi)};
}

std::optional<CohomologyWitness> brute_force_cohomologous(const Cocycle& phi, const Cocycle& phi2,
                                                          long bound, const GraphAction* graph,
                                                          long cap) {
    require(phi.target()->same_as(*phi2.target()), "targets differ");
    int n = phi.action().set_size();
    require(n == phi2.action().set_size(), "domains differ");

    std::vector<GroupElement> values;
    if (phi.target()->finite()) {
        values = phi.target()->elements();
    } else {
        require(phi.target()->kind() == Group::Kind::Integers,
                "boxed search supports only integer targets among infinite groups");
        for (long v = -bound; v <= bound; ++v) values.push_back(phi.target()->from_integer(v));
    }
    mpz_class total = 1;
    for (int i = 0; i < n; ++i) total *= static_cast<long>(values.size());
    require(total <= cap, "witness search space exceeds the cap");

    std::vector<size_t> idx(n, 0);
    for (;;) {
        CohomologyWitness psi;
        psi.domain = graph ? CohomologyWitness::Domain::GraphEdges
                           : CohomologyWitness::Domain::Set;
        for (int i = 0; i < n; ++i) psi.psi.push_back(values[idx[i]]);
        bool ok = !graph || check_cochain(*graph, psi).valid;
        if (ok && verify_cohomologous(phi, phi2, psi)) return psi;

        int i = n;
        bool done = n == 0;
        while (i > 0) {
            --i;
            if (++idx[i] < values.size()) break;
            idx[i] = 0;
            if (i == 0) done = true;
        }
        if (done) break;
    }
    return std::nullopt;
}

} // namespace epco
