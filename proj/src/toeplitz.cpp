#include "epco/toeplitz.hpp"

#include <json.hpp>

#include <sstream>
#include <thread>

namespace epco {

Path act_on_path(const System& sys, const GroupElement& g, const Path& p) {
    if (p.length() == 0) return Path(sys.graph(), sys.action.act_vertex(g, p.range()));
    int e = p.edges().front();
    Path head(sys.graph(), std::vector<int>{e});
    Path tail = head.remainder_of(p);
    int ge = sys.action.act_edge(g, e);
    return Path(sys.graph(), std::vector<int>{ge}) *
           act_on_path(sys, sys.phi.evaluate(g, e), tail);
}

GroupElement path_cocycle(const System& sys, const GroupElement& g, const Path& p) {
    if (p.length() == 0) return g;
    int e = p.edges().front();
    Path head(sys.graph(), std::vector<int>{e});
    return path_cocycle(sys, sys.phi.evaluate(g, e), head.remainder_of(p));
}

Monomial::Monomial(const System& sys, Path mu_, GroupElement g_, Path nu_)
    : mu(std::move(mu_)), g(std::move(g_)), nu(std::move(nu_)) {
    require(mu.source() == sys.action.act_vertex(g, nu.source()),
            "monomial violates source compatibility s(mu) = g s(nu)");
}

std::string Monomial::str() const {
    return "s[" + mu.str() + "] u[" + g.str() + "] s*[" + nu.str() + "]";
}

Monomial monomial_adjoint(const System& sys, const Monomial& m) {
    return Monomial(sys, m.nu, m.g.inverse(), m.mu);
}

std::optional<Monomial> monomial_multiply(const System& sys, const Monomial& m1,
                                          const Monomial& m2) {
    if (m1.nu.prefix_of(m2.mu)) {
        // rho = nu rho': s_{mu (g rho')} u_{phi(g,rho') h} s_sigma*
        Path rho1 = m1.nu.remainder_of(m2.mu);
        return Monomial(sys, m1.mu * act_on_path(sys, m1.g, rho1),
                        path_cocycle(sys, m1.g, rho1) * m2.g, m2.nu);
    }
    if (m2.mu.prefix_of(m1.nu)) {
        // nu = rho nu': s_mu u_{g phi(h^{-1},nu')^{-1}} s_{sigma (h^{-1} nu')}*
        Path nu1 = m2.mu.remainder_of(m1.nu);
        GroupElement hi = m2.g.inverse();
        return Monomial(sys, m1.mu, m1.g * path_cocycle(sys, hi, nu1).inverse(),
                        m2.nu * act_on_path(sys, hi, nu1));
    }
    return std::nullopt;
}

GeneratorWord parse_word(const System& sys, const std::string& text) {
    GeneratorWord word;
    std::istringstream is(text);
    std::string tok;
    while (is >> tok) {
        auto open = tok.find('(');
        require(open != std::string::npos && tok.back() == ')',
                "malformed token '" + tok + "' (expected p(v), s(e), s*(e), or u(g))");
        std::string head = tok.substr(0, open);
        std::string arg = tok.substr(open + 1, tok.size() - open - 2);
        Token t{Token::Kind::P, -1, GroupElement()};
        if (head == "p") {
            t.kind = Token::Kind::P;
            t.index = sys.graph()->vertex_index(arg);
        } else if (head == "s") {
            t.kind = Token::Kind::S;
            t.index = sys.graph()->edge_index(arg);
        } else if (head == "s*") {
            t.kind = Token::Kind::SStar;
            t.index = sys.graph()->edge_index(arg);
        } else if (head == "u") {
            t.kind = Token::Kind::U;
            t.g = sys.group()->parse(arg);
        } else {
            fail("unknown generator '" + head + "'");
        }
        word.push_back(std::move(t));
    }
    return word;
}

std::string word_str(const System& sys, const GeneratorWord& word) {
    std::string out;
    for (const auto& t : word) {
        if (!out.empty()) out += " ";
        switch (t.kind) {
            case Token::Kind::P: out += "p(" + sys.graph()->vertex_name(t.index) + ")"; break;
            case Token::Kind::S: out += "s(" + sys.graph()->edge_name(t.index) + ")"; break;
            case Token::Kind::SStar:
                out += "s*(" + sys.graph()->edge_name(t.index) + ")";
                break;
            case Token::Kind::U: out += "u(" + t.g.str() + ")"; break;
        }
    }
    return out;
}

GeneratorWord word_adjoint(const System&, const GeneratorWord& word) {
    GeneratorWord out;
    for (auto it = word.rbegin(); it != word.rend(); ++it) {
        Token t = *it;
        if (t.kind == Token::Kind::S) t.kind = Token::Kind::SStar;
        else if (t.kind == Token::Kind::SStar) t.kind = Token::Kind::S;
        else if (t.kind == Token::Kind::U) t.g = t.g.inverse();
        out.push_back(std::move(t));
    }
    return out;
}

void NormalForm::add(const Monomial& m, const Coefficient& c) {
    if (c.is_zero()) return;
    auto it = terms_.find(m);
    if (it == terms_.end()) {
        terms_.emplace(m, c);
        return;
    }
    it->second = it->second + c;
    if (it->second.is_zero()) terms_.erase(it);
}

std::string NormalForm::str() const {
    if (terms_.empty()) return "0";
    std::string out;
    for (const auto& [m, c] : terms_) {
        if (!out.empty()) out += " + ";
        out += "(" + c.str() + ")*" + m.str();
    }
    return out;
}

namespace {

NormalForm token_form(const System& sys, const Token& t) {
    NormalForm nf;
    auto one = sys.group()->identity();
    switch (t.kind) {
        case Token::Kind::P: {
            Path v(sys.graph(), t.index);
            nf.add(Monomial(sys, v, one, v), Coefficient(1));
            break;
        }
        case Token::Kind::S: {
            Path e(sys.graph(), std::vector<int>{t.index});
            nf.add(Monomial(sys, e, one, Path(sys.graph(), e.source())), Coefficient(1));
            break;
        }
        case Token::Kind::SStar: {
            Path e(sys.graph(), std::vector<int>{t.index});
            nf.add(Monomial(sys, Path(sys.graph(), e.source()), one, e), Coefficient(1));
            break;
        }
        case Token::Kind::U: {
            // u_g = sum over vertices of s_v u_g s*_{g^{-1} v}
            GroupElement gi = t.g.inverse();
            for (int v = 0; v < sys.graph()->vertex_count(); ++v)
                nf.add(Monomial(sys, Path(sys.graph(), v), t.g,
                                Path(sys.graph(), sys.action.act_vertex(gi, v))),
                       Coefficient(1));
            break;
        }
    }
    return nf;
}

NormalForm identity_form(const System& sys) {
    NormalForm nf;
    auto one = sys.group()->identity();
    for (int v = 0; v < sys.graph()->vertex_count(); ++v) {
        Path p(sys.graph(), v);
        nf.add(Monomial(sys, p, one, p), Coefficient(1));
    }
    return nf;
}

NormalForm form_multiply(const System& sys, const NormalForm& a, const NormalForm& b) {
    NormalForm out;
    for (const auto& [m1, c1] : a.terms())
        for (const auto& [m2, c2] : b.terms())
            if (auto m = monomial_multiply(sys, m1, m2)) out.add(*m, c1 * c2);
    return out;
}

} // namespace

NormalForm normalize(const System& sys, const GeneratorWord& word) {
    NormalForm nf = identity_form(sys);
    for (const auto& t : word) nf = form_multiply(sys, nf, token_form(sys, t));
    return nf;
}

NormalForm normal_form_adjoint(const System& sys, const NormalForm& nf) {
    NormalForm out;
    for (const auto& [m, c] : nf.terms()) out.add(monomial_adjoint(sys, m), c.conj());
    return out;
}

GeneratorWord monomial_word(const System& sys, const Monomial& m) {
    GeneratorWord word;
    auto one = sys.group()->identity();
    if (m.mu.length() == 0)
        word.push_back({Token::Kind::P, m.mu.range(), one});
    else
        for (int e : m.mu.edges()) word.push_back({Token::Kind::S, e, one});
    word.push_back({Token::Kind::U, -1, m.g});
    if (m.nu.length() == 0) {
        word.push_back({Token::Kind::P, m.nu.range(), one});
    } else {
        auto edges = m.nu.edges();
        for (auto it = edges.rbegin(); it != edges.rend(); ++it)
            word.push_back({Token::Kind::SStar, *it, one});
    }
    return word;
}

FockVector fock_basis(Path mu, GroupElement g, Coefficient c) {
    FockVector v;
    if (!c.is_zero()) v.emplace(std::make_pair(std::move(mu), std::move(g)), c);
    return v;
}

namespace {

void fock_add(FockVector& v, Path mu, GroupElement g, const Coefficient& c) {
    if (c.is_zero()) return;
    std::pair<Path, GroupElement> key{std::move(mu), std::move(g)};
    auto it = v.find(key);
    if (it == v.end()) {
        v.emplace(std::move(key), c);
        return;
    }
    it->second = it->second + c;
    if (it->second.is_zero()) v.erase(it);
}

} // namespace

namespace {

/// Memoizes the self-similar recursion (g·mu, phi(g,mu)); the same (g, path)
/// pairs recur for every basis vector a word is checked on.
class PathActionCache {
public:
    explicit PathActionCache(const System& sys) : sys_(sys) {}

    const std::pair<Path, GroupElement>& apply(const GroupElement& g, const Path& mu) {
        auto key = std::make_pair(g, mu);
        auto it = memo_.find(key);
        if (it != memo_.end()) return it->second;
        std::pair<Path, GroupElement> res = [&] {
            if (mu.length() == 0)
                return std::make_pair(Path(sys_.graph(), sys_.action.act_vertex(g, mu.range())),
                                      g);
            int e = mu.edges().front();
            Path head(sys_.graph(), std::vector<int>{e});
            const auto& sub = apply(sys_.phi.evaluate(g, e), head.remainder_of(mu));
            return std::make_pair(
                Path(sys_.graph(), std::vector<int>{sys_.action.act_edge(g, e)}) * sub.first,
                sub.second);
        }();
        return memo_.emplace(std::move(key), std::move(res)).first->second;
    }

private:
    const System& sys_;
    std::map<std::pair<GroupElement, Path>, std::pair<Path, GroupElement>> memo_;
};

FockVector apply_token(const System& sys, const Token& t, const FockVector& v,
                       PathActionCache* cache) {
    FockVector out;
    for (const auto& [key, c] : v) {
        const auto& [mu, g] = key;
        switch (t.kind) {
            case Token::Kind::P:
                if (mu.range() == t.index) fock_add(out, mu, g, c);
                break;
            case Token::Kind::S:
                if (sys.graph()->source(t.index) == mu.range())
                    fock_add(out, Path(sys.graph(), std::vector<int>{t.index}) * mu, g, c);
                break;
            case Token::Kind::SStar:
                if (mu.length() > 0 && mu.edges().front() == t.index) {
                    Path head(sys.graph(), std::vector<int>{t.index});
                    fock_add(out, head.remainder_of(mu), g, c);
                }
                break;
            case Token::Kind::U:
                if (cache) {
                    const auto& [gmu, coc] = cache->apply(t.g, mu);
                    fock_add(out, gmu, coc * g, c);
                } else {
                    fock_add(out, act_on_path(sys, t.g, mu), path_cocycle(sys, t.g, mu) * g,
                             c);
                }
                break;
        }
    }
    return out;
}

FockVector apply_word(const System& sys, const GeneratorWord& word, const FockVector& v,
                      PathActionCache* cache) {
    FockVector cur = v;
    for (auto it = word.rbegin(); it != word.rend(); ++it)
        cur = apply_token(sys, *it, cur, cache);
    return cur;
}

FockVector apply_normal_form(const System& sys, const NormalForm& nf, const FockVector& v,
                             PathActionCache* cache) {
    FockVector out;
    for (const auto& [m, c] : nf.terms()) {
        FockVector part = apply_word(sys, monomial_word(sys, m), v, cache);
        for (const auto& [key, c0] : part) fock_add(out, key.first, key.second, c * c0);
    }
    return out;
}

} // namespace

FockVector fock_apply_token(const System& sys, const Token& t, const FockVector& v) {
    return apply_token(sys, t, v, nullptr);
}

FockVector fock_apply_word(const System& sys, const GeneratorWord& word, const FockVector& v) {
    return apply_word(sys, word, v, nullptr);
}

FockVector fock_apply_normal_form(const System& sys, const NormalForm& nf,
                                  const FockVector& v) {
    return apply_normal_form(sys, nf, v, nullptr);
}

bool fock_check(const System& sys, const GeneratorWord& word, int max_path_length,
                long ball_radius, int jobs) {
    NormalForm nf = normalize(sys, word);
    auto paths = sys.graph()->paths_up_to(max_path_length);
    auto ball = group_ball(sys.group(), ball_radius);
    require(!ball.empty(), "empty group ball");

    // Every token maps a basis vector (mu, g) to (nu, c g) with nu and c
    // depending on mu alone (the group leg is only ever left-multiplied), so
    // agreement at g = 1 is equivalent to agreement at every g in the ball:
    // colliding terms collide for all g at once, and right multiplication by
    // g is injective. Checking the identity leg therefore covers the ball.
    std::vector<std::pair<Path, GroupElement>> basis;
    for (const auto& p : paths) basis.emplace_back(p, sys.group()->identity());

    // the normal form's monomials as words, hoisted out of the basis sweep
    std::vector<std::pair<GeneratorWord, Coefficient>> nf_words;
    for (const auto& [m, c] : nf.terms()) nf_words.emplace_back(monomial_word(sys, m), c);

    auto agree = [&](size_t lo, size_t hi) {
        PathActionCache cache(sys);  // one per worker
        for (size_t i = lo; i < hi; ++i) {
            FockVector unit = fock_basis(basis[i].first, basis[i].second);
            FockVector lhs = apply_word(sys, word, unit, &cache);
            FockVector rhs;
            for (const auto& [w, c] : nf_words) {
                FockVector part = apply_word(sys, w, unit, &cache);
                for (const auto& [key, c0] : part)
                    fock_add(rhs, key.first, key.second, c * c0);
            }
            if (!(lhs == rhs)) return false;
        }
        return true;
    };

    if (jobs <= 1) return agree(0, basis.size());

    std::vector<char> results(jobs, 1);
    std::vector<std::thread> threads;
    size_t chunk = (basis.size() + jobs - 1) / jobs;
    for (int j = 0; j < jobs; ++j) {
        size_t lo = std::min(basis.size(), j * chunk);
        size_t hi = std::min(basis.size(), lo + chunk);
        threads.emplace_back([&, j, lo, hi] { results[j] = agree(lo, hi) ? 1 : 0; });
    }
    for (auto& t : threads) t.join();
    for (char r : results)
        if (!r) return false;
    return true;
}

namespace {

Eigen::MatrixXcd json_matrix(const nlohmann::json& m, int dim) {
    require(m.is_array() && static_cast<int>(m.size()) == dim * dim,
            "matrix entry count must be dim^2");
    Eigen::MatrixXcd out(dim, dim);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) {
            const auto& cell = m[i * dim + j];
            require(cell.is_array() && cell.size() == 2, "matrix cells are [re, im] pairs");
            out(i, j) = std::complex<double>(cell[0].get<double>(), cell[1].get<double>());
        }
    return out;
}

double dev(const Eigen::MatrixXcd& m) { return m.cwiseAbs().maxCoeff(); }

/// U_g assembled from generator matrices (integer/cyclic kinds and products).
Eigen::MatrixXcd matrix_for(const System& sys, const MatrixFamily& fam,
                            const GroupElement& g) {
    const auto& group = sys.group();
    int dim = fam.dim;
    Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(dim, dim);
    std::function<Eigen::MatrixXcd(const Eigen::MatrixXcd&, const mpz_class&)> power =
        [&](const Eigen::MatrixXcd& u, const mpz_class& n) {
            Eigen::MatrixXcd base = n < 0 ? Eigen::MatrixXcd(u.adjoint()) : u;
            mpz_class k = abs(n);
            Eigen::MatrixXcd out = id;
            for (mpz_class i = 0; i < k; ++i) out = out * base;
            return out;
        };
    switch (group->kind()) {
        case Group::Kind::Integers:
            return power(fam.U.at(0), g.integer());
        case Group::Kind::Cyclic:
            return power(fam.U.at(0), mpz_class(g.residue()));
        case Group::Kind::Product: {
            const auto& parts = g.parts();
            Eigen::MatrixXcd out = id;
            for (size_t i = 0; i < parts.size(); ++i) {
                const auto& f = group->factors()[i];
                mpz_class n = f->kind() == Group::Kind::Integers
                                  ? parts[i].integer()
                                  : mpz_class(parts[i].residue());
                out = out * power(fam.U.at(i), n);
            }
            return out;
        }
        default:
            fail("matrix relation checks support integer, cyclic, and product groups");
    }
}

} // namespace

MatrixFamily matrix_family_from_json(const System& sys, const std::string& json_text) {
    nlohmann::json j = nlohmann::json::parse(json_text);
    MatrixFamily fam;
    fam.dim = j.at("dim").get<int>();
    require(fam.dim >= 1, "dim must be positive");
    const auto& P = j.at("P");
    const auto& S = j.at("S");
    const auto& U = j.at("U");
    require(static_cast<int>(P.size()) == sys.graph()->vertex_count(),
            "need one P matrix per vertex");
    require(static_cast<int>(S.size()) == sys.graph()->edge_count(),
            "need one S matrix per edge");
    require(U.size() == sys.group()->generators().size(),
            "need one U matrix per group generator");
    for (const auto& m : P) fam.P.push_back(json_matrix(m, fam.dim));
    for (const auto& m : S) fam.S.push_back(json_matrix(m, fam.dim));
    for (const auto& m : U) fam.U.push_back(json_matrix(m, fam.dim));
    return fam;
}

RelationReport check_relations(const System& sys, const MatrixFamily& fam,
                               RelationMode mode, double tol) {
    const auto& graph = sys.graph();
    require(static_cast<int>(fam.P.size()) == graph->vertex_count(), "P count mismatch");
    require(static_cast<int>(fam.S.size()) == graph->edge_count(), "S count mismatch");
    require(fam.U.size() == sys.group()->generators().size(), "U count mismatch");
    int dim = fam.dim;
    for (const auto& m : fam.P) require(m.rows() == dim && m.cols() == dim, "P dim mismatch");
    for (const auto& m : fam.S) require(m.rows() == dim && m.cols() == dim, "S dim mismatch");
    for (const auto& m : fam.U) require(m.rows() == dim && m.cols() == dim, "U dim mismatch");

    RelationReport rep;
    Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(dim, dim);
    auto record = [&](const std::string& name, double d) {
        rep.deviations.emplace_back(name, d);
        if (d > rep.max_deviation) {
            rep.max_deviation = d;
            rep.worst = name;
        }
    };

    // orthogonal projections
    for (int v = 0; v < graph->vertex_count(); ++v) {
        const auto& p = fam.P[v];
        record("P[" + graph->vertex_name(v) + "] hermitian", dev(p - p.adjoint()));
        record("P[" + graph->vertex_name(v) + "] idempotent", dev(p * p - p));
        for (int w = v + 1; w < graph->vertex_count(); ++w)
            record("P[" + graph->vertex_name(v) + "]P[" + graph->vertex_name(w) + "] = 0",
                   dev(fam.P[v] * fam.P[w]));
    }

    // Toeplitz family: s_e* s_f = [e=f] p_{s(e)}, p_{r(e)} s_e = s_e
    for (int e = 0; e < graph->edge_count(); ++e) {
        for (int f = 0; f < graph->edge_count(); ++f) {
            Eigen::MatrixXcd lhs = fam.S[e].adjoint() * fam.S[f];
            if (e == f) lhs -= fam.P[graph->source(e)];
            record("S*[" + graph->edge_name(e) + "]S[" + graph->edge_name(f) + "]",
                   dev(lhs));
        }
        record("P[r] S[" + graph->edge_name(e) + "] = S",
               dev(fam.P[graph->range(e)] * fam.S[e] - fam.S[e]));
    }

    // Toeplitz positivity / CK equality at regular vertices
    auto [regular, sources] = graph->classify_vertices();
    (void)sources;
    for (int v : regular) {
        Eigen::MatrixXcd sum = Eigen::MatrixXcd::Zero(dim, dim);
        for (int e : graph->incoming(v)) sum += fam.S[e] * fam.S[e].adjoint();
        Eigen::MatrixXcd diff = fam.P[v] - sum;
        if (mode == RelationMode::CuntzKrieger) {
            record("CK: P[" + graph->vertex_name(v) + "] = sum S S*", dev(diff));
        } else {
            Eigen::MatrixXcd herm = (diff + diff.adjoint()) / 2.0;
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(herm);
            double lam = es.eigenvalues().minCoeff();
            record("Toeplitz: P[" + graph->vertex_name(v) + "] >= sum S S*",
                   std::max(0.0, -lam));
        }
    }

    // unitary representation on generators, plus finite-order relations
    auto gens = sys.group()->generators();
    for (size_t i = 0; i < gens.size(); ++i) {
        const auto& u = fam.U[i];
        record("U[" + gens[i].str() + "] unitary", std::max(dev(u * u.adjoint() - id),
                                                            dev(u.adjoint() * u - id)));
        if (sys.group()->finite()) {
            long ord = gens[i].order();
            Eigen::MatrixXcd pw = id;
            for (long k = 0; k < ord; ++k) pw = pw * u;
            record("U[" + gens[i].str() + "]^" + std::to_string(ord) + " = 1",
                   dev(pw - id));
        }
    }

    // covariance: u_g p_v = p_{gv} u_g and u_g s_e = s_{ge} u_{phi(g,e)}
    for (size_t i = 0; i < gens.size(); ++i) {
        const auto& g = gens[i];
        const auto& u = fam.U[i];
        for (int v = 0; v < graph->vertex_count(); ++v)
            record("U P[" + graph->vertex_name(v) + "] covariance",
                   dev(u * fam.P[v] - fam.P[sys.action.act_vertex(g, v)] * u));
        for (int e = 0; e < graph->edge_count(); ++e) {
            Eigen::MatrixXcd uphi = matrix_for(sys, fam, sys.phi.evaluate(g, e));
            record("U S[" + graph->edge_name(e) + "] covariance",
                   dev(u * fam.S[e] - fam.S[sys.action.act_edge(g, e)] * uphi));
        }
    }

    rep.pass = rep.max_deviation <= tol;
    return rep;
}

} // namespace epco
