#include "epco/algebra.hpp"

#include <sstream>

namespace epco {

std::string Coefficient::str() const {
    if (is_zero()) return "0";
    std::string s;
    if (re != 0) s = re.get_str();
    if (im != 0) {
        if (!s.empty() && im > 0) s += "+";
        if (im == -1) s += "-";
        else if (im != 1) s += im.get_str();
        s += "i";
    }
    return s;
}

FormalSum FormalSum::basis(int index, GroupElement g, Coefficient c) {
    FormalSum out;
    out.add(index, g, c);
    return out;
}

void FormalSum::add(int index, const GroupElement& g, const Coefficient& c) {
    if (c.is_zero()) return;
    Key key{index, g};
    auto it = terms_.find(key);
    if (it == terms_.end()) {
        terms_.emplace(std::move(key), c);
        return;
    }
    it->second = it->second + c;
    if (it->second.is_zero()) terms_.erase(it);
}

Coefficient FormalSum::coefficient(int index, const GroupElement& g) const {
    auto it = terms_.find({index, g});
    return it == terms_.end() ? Coefficient() : it->second;
}

FormalSum operator+(const FormalSum& a, const FormalSum& b) {
    FormalSum out = a;
    for (const auto& [key, c] : b.terms_) out.add(key.first, key.second, c);
    return out;
}

FormalSum operator-(const FormalSum& a, const FormalSum& b) {
    FormalSum out = a;
    for (const auto& [key, c] : b.terms_) out.add(key.first, key.second, Coefficient() - c);
    return out;
}

FormalSum operator*(const Coefficient& c, const FormalSum& a) {
    FormalSum out;
    for (const auto& [key, c0] : a.terms_) out.add(key.first, key.second, c * c0);
    return out;
}

std::string FormalSum::str(const std::string& symbol,
                           const std::function<std::string(int)>& name) const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [key, c] : terms_) {
        if (!first) os << " + ";
        first = false;
        os << "(" << c.str() << ")*" << symbol << "[" << name(key.first) << ","
           << key.second.str() << "]";
    }
    return os.str();
}

BElement b_basis(int vertex, GroupElement g, Coefficient c) {
    return {FormalSum::basis(vertex, std::move(g), c)};
}

YElement y_basis(int edge, GroupElement g, Coefficient c) {
    return {FormalSum::basis(edge, std::move(g), c)};
}

BElement b_multiply(const System& sys, const BElement& x, const BElement& y) {
    BElement out;
    for (const auto& [kx, cx] : x.sum.terms()) {
        const auto& [v1, g] = kx;
        for (const auto& [ky, cy] : y.sum.terms()) {
            const auto& [v, h] = ky;
            int gv = sys.action.act_vertex(g, v);
            if (v1 != gv) continue;
            out.sum.add(gv, g * h, cx * cy);
        }
    }
    return out;
}

BElement b_adjoint(const System& sys, const BElement& x) {
    BElement out;
    for (const auto& [key, c] : x.sum.terms()) {
        const auto& [v, g] = key;
        GroupElement gi = g.inverse();
        out.sum.add(sys.action.act_vertex(gi, v), gi, c.conj());
    }
    return out;
}

YElement left_action(const System& sys, const BElement& b, const YElement& xi) {
    YElement out;
    for (const auto& [kb, cb] : b.sum.terms()) {
        const auto& [v, g] = kb;
        for (const auto& [ky, cy] : xi.sum.terms()) {
            const auto& [e, h] = ky;
            int ge = sys.action.act_edge(g, e);
            if (v != sys.graph()->range(ge)) continue;
            out.sum.add(ge, sys.phi.evaluate(g, e) * h, cb * cy);
        }
    }
    return out;
}

YElement right_action(const System& sys, const YElement& xi, const BElement& b) {
    YElement out;
    for (const auto& [ky, cy] : xi.sum.terms()) {
        const auto& [e, h] = ky;
        for (const auto& [kb, cb] : b.sum.terms()) {
            const auto& [v, g] = kb;
            if (sys.graph()->source(e) != sys.action.act_vertex(h, v)) continue;
            out.sum.add(e, h * g, cy * cb);
        }
    }
    return out;
}

BElement inner_product(const System& sys, const YElement& xi, const YElement& eta) {
    BElement out;
    for (const auto& [kx, cx] : xi.sum.terms()) {
        const auto& [e, g] = kx;
        for (const auto& [ke, ce] : eta.sum.terms()) {
            const auto& [e2, h] = ke;
            if (e != e2) continue;
            GroupElement gi = g.inverse();
            out.sum.add(sys.action.act_vertex(gi, sys.graph()->source(e)), gi * h,
                        cx.conj() * ce);
        }
    }
    return out;
}

YElement rank_one_apply(const System& sys, const RankOneOp& op, const YElement& zeta) {
    return right_action(sys, op.xi, inner_product(sys, op.eta, zeta));
}

std::vector<RankOneOp> katsura_decomposition(const System& sys, int vertex,
                                             const GroupElement& g) {
    require(vertex >= 0 && vertex < sys.graph()->vertex_count(), "vertex out of range");
    GroupElement gi = g.inverse();
    std::vector<RankOneOp> out;
    for (int e : sys.graph()->incoming(vertex)) {
        out.push_back({y_basis(e, sys.group()->identity()),
                       y_basis(sys.action.act_edge(gi, e), sys.phi.evaluate(gi, e))});
    }
    return out;
}

KatsuraIdealReport katsura_ideal_report(const System& sys) {
    KatsuraIdealReport rep;
    auto [regular, sources] = sys.graph()->classify_vertices();
    rep.regular_vertices.assign(regular.begin(), regular.end());
    rep.has_sources = !sources.empty();
    rep.ideal_is_b = sys.graph()->is_row_finite() && !rep.has_sources;
    std::ostringstream os;
    os << "spanning symbols d[v,g] over " << rep.regular_vertices.size()
       << " regular vertices; ";
    if (rep.ideal_is_b)
        os << "row-finite with no sources: the ideal is all of B";
    else
        os << "the ideal is contained in the span (graph has sources)";
    rep.summary = os.str();
    return rep;
}

std::function<YElement(const YElement&)> cohomology_iso(const System& sys,
                                                        const CohomologyWitness& psi) {
    require(psi.domain == CohomologyWitness::Domain::GraphEdges,
            "cohomology_iso needs an edge cochain");
    auto rep = check_cochain(sys.action, psi);
    if (!rep.valid) fail("invalid cochain: " + rep.violations.front());
    auto values = psi.psi;
    return [values](const YElement& xi) {
        YElement out;
        for (const auto& [key, c] : xi.sum.terms()) {
            const auto& [e, g] = key;
            out.sum.add(e, values[e] * g, c);
        }
        return out;
    };
}

EpFamily ep_model_map(const System& sys, int edge, const GroupElement& g, Coefficient c) {
    EpFamily fam;
    fam[edge] = b_basis(sys.graph()->source(edge), g, c);
    return fam;
}

BElement ep_family_inner(const System& sys, const EpFamily& a, const EpFamily& b) {
    BElement out;
    for (const auto& [e, ae] : a) {
        auto it = b.find(e);
        if (it == b.end()) continue;
        out = out + b_multiply(sys, b_adjoint(sys, ae), it->second);
    }
    return out;
}

bool ep_isometry_check(const System& sys, long ball_radius) {
    auto ball = group_ball(sys.group(), ball_radius);
    for (int e = 0; e < sys.graph()->edge_count(); ++e)
        for (int f = 0; f < sys.graph()->edge_count(); ++f)
            for (const auto& g : ball)
                for (const auto& h : ball) {
                    BElement lhs = ep_family_inner(sys, ep_model_map(sys, e, g),
                                                   ep_model_map(sys, f, h));
                    BElement rhs = inner_product(sys, y_basis(e, g), y_basis(f, h));
                    if (!(lhs == rhs)) return false;
                }
    return true;
}

std::vector<GroupElement> group_ball(const GroupPtr& group, long radius) {
    if (group->finite()) return group->elements();
    switch (group->kind()) {
        case Group::Kind::Integers: {
            std::vector<GroupElement> out;
            for (long n = -radius; n <= radius; ++n) out.push_back(group->from_integer(n));
            return out;
        }
        case Group::Kind::Product: {
            std::vector<std::vector<GroupElement>> balls;
            for (const auto& f : group->factors()) balls.push_back(group_ball(f, radius));
            std::vector<std::vector<GroupElement>> tuples{{}};
            for (const auto& ball : balls) {
                std::vector<std::vector<GroupElement>> next;
                for (const auto& t : tuples)
                    for (const auto& g : ball) {
                        auto t2 = t;
                        t2.push_back(g);
                        next.push_back(std::move(t2));
                    }
                tuples = std::move(next);
            }
            std::vector<GroupElement> out;
            for (auto& t : tuples) out.push_back(group->from_parts(std::move(t)));
            return out;
        }
        default:
            fail("group_ball: unsupported infinite group");
    }
}

} // namespace epco
