#pragma once

#include "epco/algebra.hpp"

#include <Eigen/Dense>

namespace epco {

/// Action and cocycle on composable paths of any length, by the
/// self-similarity recursion g(e mu) = (ge)(phi(g,e) mu),
/// phi(g, e mu) = phi(phi(g,e), mu), phi(g, vertex) = g.
Path act_on_path(const System& sys, const GroupElement& g, const Path& p);
GroupElement path_cocycle(const System& sys, const GroupElement& g, const Path& p);

/// s_mu u_g s_nu* with the source-compatibility invariant s(mu) = g s(nu).
/// Vertex paths stand for projections: p_v = s_v u_1 s_v*.
struct Monomial {
    Path mu;
    GroupElement g;
    Path nu;

    Monomial(const System& sys, Path mu_, GroupElement g_, Path nu_);

    bool operator==(const Monomial& rhs) const {
        return mu == rhs.mu && g == rhs.g && nu == rhs.nu;
    }
    bool operator<(const Monomial& rhs) const {
        if (!(mu == rhs.mu)) return mu < rhs.mu;
        if (!(g == rhs.g)) return g < rhs.g;
        return nu < rhs.nu;
    }
    std::string str() const;
};

/// m* = (nu, g^{-1}, mu).
Monomial monomial_adjoint(const System& sys, const Monomial& m);

/// (s_mu u_g s_nu*)(s_rho u_h s_sigma*): if rho = nu rho' the product is
/// s_{mu (g rho')} u_{phi(g,rho') h} s_sigma*; if nu = rho nu' it is
/// s_mu u_{g phi(h^{-1},nu')^{-1}} s_{sigma (h^{-1} nu')}*; otherwise zero.
std::optional<Monomial> monomial_multiply(const System& sys, const Monomial& m1,
                                          const Monomial& m2);

/// One generator token: p_v, s_e, s_e*, or u_g.
struct Token {
    enum class Kind { P, S, SStar, U };
    Kind kind;
    int index = -1;   // vertex or edge
    GroupElement g;   // for U
};
using GeneratorWord = std::vector<Token>;

/// Mini-language: whitespace-separated tokens `p(v)`, `s(e)`, `s*(e)`, `u(g)`
/// with vertex/edge names and group elements in their printed form.
GeneratorWord parse_word(const System& sys, const std::string& text);
std::string word_str(const System& sys, const GeneratorWord& word);
GeneratorWord word_adjoint(const System& sys, const GeneratorWord& word);

/// Finite formal combination of monomials with Gaussian-rational coefficients.
class NormalForm {
public:
    void add(const Monomial& m, const Coefficient& c);
    const std::map<Monomial, Coefficient>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool operator==(const NormalForm& rhs) const { return terms_ == rhs.terms_; }
    std::string str() const;

private:
    std::map<Monomial, Coefficient> terms_;
};

/// Reduce a generator word to a combination of monomials (the empty word is
/// the identity sum of vertex projections).
NormalForm normalize(const System& sys, const GeneratorWord& word);
NormalForm normal_form_adjoint(const System& sys, const NormalForm& nf);

/// The word s_mu u_g s_nu* spelled in generator tokens.
GeneratorWord monomial_word(const System& sys, const Monomial& m);

// ---------------------------------------------------------------------------
// Fock (path-space) oracle: basis vectors (mu, g), exact arithmetic.

using FockVector = std::map<std::pair<Path, GroupElement>, Coefficient>;

FockVector fock_basis(Path mu, GroupElement g, Coefficient c = Coefficient(1));
/// p_v x_{mu,g} = [r(mu)=v] x_{mu,g}; s_e x_{mu,g} = [s(e)=r(mu)] x_{e mu,g};
/// s_e* strips a leading e (zero otherwise and on vertices);
/// u_h x_{mu,g} = x_{h mu, phi(h,mu) g}.
FockVector fock_apply_token(const System& sys, const Token& t, const FockVector& v);
/// Applies the word as a product (rightmost token acts first).
FockVector fock_apply_word(const System& sys, const GeneratorWord& word, const FockVector& v);
FockVector fock_apply_normal_form(const System& sys, const NormalForm& nf,
                                  const FockVector& v);

/// True iff the word and its normal form act identically on every basis
/// vector with |mu| <= max_path_length and g in the ball; exact.
bool fock_check(const System& sys, const GeneratorWord& word, int max_path_length,
                long ball_radius, int jobs = 1);

// ---------------------------------------------------------------------------
// floating-point relation checker for matrix families

struct MatrixFamily {
    std::vector<Eigen::MatrixXcd> P;  // per vertex
    std::vector<Eigen::MatrixXcd> S;  // per edge
    std::vector<Eigen::MatrixXcd> U;  // per group generator
    int dim = 0;
};

/// JSON schema: {"dim": n, "P": [...], "S": [...], "U": [...]} where each
/// matrix is a row-major list of [re, im] pairs.
MatrixFamily matrix_family_from_json(const System& sys, const std::string& json_text);

enum class RelationMode { Toeplitz, CuntzKrieger };

struct RelationReport {
    bool pass = false;
    double max_deviation = 0.0;
    std::vector<std::pair<std::string, double>> deviations;  // relation -> max abs error
    std::string worst;
};

/// Checks the representation relations: projections, partial isometries
/// s_e* s_f = [e=f] p_{s(e)}, p_{r(e)} s_e = s_e, Toeplitz positivity
/// p_v >= sum s_e s_e*, unitarity of U, and the covariance relations
/// u_g p_v = p_{gv} u_g, u_g s_e = s_{ge} u_{phi(g,e)} on generators; CK mode
/// requires equality p_v = sum_{r(e)=v} s_e s_e* at regular vertices.
RelationReport check_relations(const System& sys, const MatrixFamily& fam,
                               RelationMode mode, double tol = 1e-9);

} // namespace epco
