#pragma once

#include <optional>

#include "epco/cocycle.hpp"

namespace epco {

/// A 0-cochain ψ: domain → T. For graph-edge witnesses the admissibility
/// condition ψ(e)·s(e) = s(e) applies (check_cochain).
struct CohomologyWitness {
    enum class Domain { Set, GraphEdges };
    Domain domain = Domain::Set;
    std::vector<GroupElement> psi;  // indexed by point / edge
};

/// ψ(e)·s(e) = s(e) for every edge.
ValidationReport check_cochain(const GraphAction& action, const CohomologyWitness& psi);

/// φ'(g,x) = ψ(gx) φ(g,x) ψ(x)⁻¹, returned as a validated cocycle.
Cocycle apply_witness(const Cocycle& phi, const CohomologyWitness& psi);

/// Pointwise check that ψ carries phi to phi2 (generating-function identity
/// ξ'(x) = ψ(τx) ξ(x) ψ(x)⁻¹ when G is free-abelian).
bool verify_cohomologous(const Cocycle& phi, const Cocycle& phi2, const CohomologyWitness& psi);

/// Relabel a cocycle along a bijection θ of the underlying set:
/// the result lives on θ(S) with θ intertwining the actions.
Cocycle transport(const Cocycle& phi, const std::vector<int>& theta);

/// G/H for finite G with the left-translation action; the cross-section η
/// sends H to the identity and every other coset to its least element.
class CosetSpace {
public:
    CosetSpace(GroupPtr group, std::vector<GroupElement> subgroup);

    const GroupPtr& group() const { return group_; }
    const std::vector<GroupElement>& subgroup() const { return subgroup_; }
    int coset_count() const { return static_cast<int>(eta_.size()); }
    int coset_of(const GroupElement& g) const;
    const GroupElement& eta(int coset) const { return eta_[coset]; }
    /// Index of the coset H itself (where η is the identity).
    int trivial_coset() const { return trivial_; }

    SetAction translation_action() const;

private:
    GroupPtr group_;
    std::vector<GroupElement> subgroup_;
    std::vector<GroupElement> eta_;
    std::map<GroupElement, int> coset_index_;  // element -> coset
    int trivial_ = -1;
};

using Homomorphism = std::map<GroupElement, GroupElement>;

bool is_homomorphism(const std::vector<GroupElement>& domain, const Homomorphism& f);
/// All homomorphisms from the (sub)group spanned by `domain` into `target`.
std::vector<Homomorphism> enumerate_homomorphisms(const std::vector<GroupElement>& domain,
                                                  const GroupPtr& target);
/// All subgroups of a finite group of order <= 16, as sorted element lists.
std::vector<std::vector<GroupElement>> subgroups(const GroupPtr& g);

/// π_φ(h) = φ(h, H); verified to be a homomorphism on the subgroup.
Homomorphism zimmer_hom(const CosetSpace& cs, const Cocycle& phi);
/// φ = π∘φ₀ with φ₀(g,x) = η(gx)⁻¹ g η(x).
Cocycle zimmer_cocycle(const CosetSpace& cs, const Homomorphism& pi, GroupPtr target);
/// ψ(x) = φ'(η(x),H) t⁻¹ φ(η(x),H)⁻¹; requires π_{φ'} = (conj by t)∘π_φ.
CohomologyWitness zimmer_witness(const CosetSpace& cs, const Cocycle& phi, const Cocycle& phi2,
                                 const GroupElement& t);
/// τ(x) = φ(η(x),H)⁻¹, carrying φ to π_φ∘φ₀.
CohomologyWitness zimmer_remark_witness(const CosetSpace& cs, const Cocycle& phi);

/// The integer cocycle on the rotation k ↦ k+1 (mod a) whose generating
/// function vanishes except at a-1, where it is c.
Cocycle canonical_cocycle_Za(long a, const mpz_class& c);
/// (signature c, constructive witness carrying φ to the representative whose
/// generating function vanishes except on the orbit step closing the cycle,
/// where it is c). For the canonical rotation that is canonical_cocycle_Za(a,c);
/// any transitive integer action is accepted.
std::pair<mpz_class, CohomologyWitness> canonical_form_Za(const Cocycle& phi);

struct Conjugacy {
    std::vector<int> theta;  // bijection S -> S', intertwining the actions
    CohomologyWitness psi;   // witness: transport(phi, theta) ~ phi2
};
/// Integer-group systems on finite sets, both transitive: Some iff the sets
/// have equal size and the transported cocycle is cohomologous to phi2
/// (equivalently, for abelian targets, the signatures agree).
std::optional<Conjugacy> transitive_conjugacy(const Cocycle& phi, const Cocycle& phi2);

/// Witness that (g,e) ↦ g is a coboundary: ψ(ge) = g ψ(e). Exists iff the
/// action on edges is free; requires the action to fix sources.
std::optional<CohomologyWitness> is_translation_coboundary(const GraphAction& action);

/// Exhaustive search for a witness carrying phi to phi2. Finite targets scan
/// T^S; the integers scan [-bound, bound]^S. Returns the lexicographically
/// least witness. `graph` adds the cochain constraint. Throws when the space
/// exceeds `cap` candidates.
std::optional<CohomologyWitness> brute_force_cohomologous(const Cocycle& phi, const Cocycle& phi2,
                                                          long bound,
                                                          const GraphAction* graph = nullptr,
                                                          long cap = 4000000);

} // namespace epco
