#pragma once

#include "epco/constructions.hpp"

#include <map>

namespace epco {

/// Exact Gaussian rational scalar; the module does no rounding anywhere.
struct Coefficient {
    mpq_class re;
    mpq_class im;

    Coefficient() : re(0), im(0) {}
    Coefficient(long r) : re(r), im(0) {}
    Coefficient(mpq_class r, mpq_class i) : re(std::move(r)), im(std::move(i)) {}

    static Coefficient i() { return {0, 1}; }

    bool is_zero() const { return re == 0 && im == 0; }
    Coefficient conj() const { return {re, -im}; }
    std::string str() const;

    friend Coefficient operator+(const Coefficient& a, const Coefficient& b) {
        return {a.re + b.re, a.im + b.im};
    }
    friend Coefficient operator-(const Coefficient& a, const Coefficient& b) {
        return {a.re - b.re, a.im - b.im};
    }
    friend Coefficient operator*(const Coefficient& a, const Coefficient& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend bool operator==(const Coefficient& a, const Coefficient& b) {
        return a.re == b.re && a.im == b.im;
    }
};

/// A finite formal sum over basis symbols (index, group element) with nonzero
/// Gaussian-rational coefficients. Zero coefficients are dropped eagerly so
/// equality of the underlying maps decides equality of elements.
class FormalSum {
public:
    using Key = std::pair<int, GroupElement>;

    FormalSum() = default;
    static FormalSum basis(int index, GroupElement g, Coefficient c = Coefficient(1));

    void add(int index, const GroupElement& g, const Coefficient& c);
    const std::map<Key, Coefficient>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    Coefficient coefficient(int index, const GroupElement& g) const;

    friend FormalSum operator+(const FormalSum& a, const FormalSum& b);
    friend FormalSum operator-(const FormalSum& a, const FormalSum& b);
    friend FormalSum operator*(const Coefficient& c, const FormalSum& a);
    friend bool operator==(const FormalSum& a, const FormalSum& b) {
        return a.terms_ == b.terms_;
    }

    /// "0" or e.g. "(1)*d[v0,2] + (1/2+1/2i)*d[v1,-1]" with the given prefix.
    std::string str(const std::string& symbol,
                    const std::function<std::string(int)>& name) const;

private:
    std::map<Key, Coefficient> terms_;
};

/// Element of the crossed product B = A x G, spanned by d_{(v,g)}, v a vertex.
struct BElement {
    FormalSum sum;
    friend BElement operator+(const BElement& a, const BElement& b) { return {a.sum + b.sum}; }
    friend BElement operator-(const BElement& a, const BElement& b) { return {a.sum - b.sum}; }
    friend BElement operator*(const Coefficient& c, const BElement& a) { return {c * a.sum}; }
    friend bool operator==(const BElement& a, const BElement& b) { return a.sum == b.sum; }
    bool is_zero() const { return sum.is_zero(); }
};

/// Element of the correspondence Y, spanned by x_{(e,g)}, e an edge.
struct YElement {
    FormalSum sum;
    friend YElement operator+(const YElement& a, const YElement& b) { return {a.sum + b.sum}; }
    friend YElement operator-(const YElement& a, const YElement& b) { return {a.sum - b.sum}; }
    friend YElement operator*(const Coefficient& c, const YElement& a) { return {c * a.sum}; }
    friend bool operator==(const YElement& a, const YElement& b) { return a.sum == b.sum; }
    bool is_zero() const { return sum.is_zero(); }
};

BElement b_basis(int vertex, GroupElement g, Coefficient c = Coefficient(1));
YElement y_basis(int edge, GroupElement g, Coefficient c = Coefficient(1));

/// d_{v',g} d_{v,h} = d_{gv,gh} if v' = gv, else 0; extended bilinearly.
BElement b_multiply(const System& sys, const BElement& x, const BElement& y);
/// d_{v,g}* = d_{g^{-1}v, g^{-1}} with conjugated coefficients.
BElement b_adjoint(const System& sys, const BElement& x);
/// d_{v,g} . x_{e,h} = x_{ge, phi(g,e) h} if v = r(ge), else 0.
YElement left_action(const System& sys, const BElement& b, const YElement& xi);
/// x_{e,h} . d_{v,g} = x_{e,hg} if s(e) = hv, else 0.
YElement right_action(const System& sys, const YElement& xi, const BElement& b);
/// <x_{e,g}, x_{e',h}> = d_{s(g^{-1}e), g^{-1}h} if e = e', else 0;
/// conjugate-linear in the first argument.
BElement inner_product(const System& sys, const YElement& xi, const YElement& eta);

/// theta_{xi,eta} zeta = xi . <eta, zeta>.
struct RankOneOp {
    YElement xi;
    YElement eta;
};
YElement rank_one_apply(const System& sys, const RankOneOp& op, const YElement& zeta);

/// phi(d_{v,g}) = sum over r(e)=v of theta_{x_{e,1}, x_{g^{-1}e, phi(g^{-1},e)}};
/// empty when v is a source (the left action is then zero).
std::vector<RankOneOp> katsura_decomposition(const System& sys, int vertex,
                                             const GroupElement& g);

struct KatsuraIdealReport {
    std::vector<int> regular_vertices;  // spanning symbols d_{v,g}, v regular
    bool has_sources = false;
    bool ideal_is_b = false;  // row-finite with no sources
    std::string summary;
};
KatsuraIdealReport katsura_ideal_report(const System& sys);

/// The correspondence isomorphism induced by an edge cochain psi:
/// Phi x_{e,g} = x_{e, psi(e) g}. Throws unless psi is a valid cochain.
std::function<YElement(const YElement&)> cohomology_iso(const System& sys,
                                                        const CohomologyWitness& psi);

/// The E^1-indexed family Psi x_{e,g}: component e is d_{s(e),g}, others 0.
using EpFamily = std::map<int, BElement>;
EpFamily ep_model_map(const System& sys, int edge, const GroupElement& g,
                      Coefficient c = Coefficient(1));
/// <a, b> = sum over edges of a_e* b_e in B.
BElement ep_family_inner(const System& sys, const EpFamily& a, const EpFamily& b);
/// Checks <Psi x, Psi x'> = <x, x'> on all edge pairs with group parts in a
/// finite ball of the given radius.
bool ep_isometry_check(const System& sys, long ball_radius = 4);

/// All elements with "radius" <= the bound: every element of a finite group,
/// coordinates in [-r, r] for integers and products of integers.
std::vector<GroupElement> group_ball(const GroupPtr& group, long radius);

} // namespace epco
