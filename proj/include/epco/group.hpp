#pragma once

#include <gmpxx.h>

#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "epco/common.hpp"

namespace epco {

class Group;
using GroupPtr = std::shared_ptr<const Group>;

/// An element of a concrete group. Elements carry a handle to their parent
/// group so that mixed-group arithmetic is a detectable error.
class GroupElement {
public:
    GroupElement() = default;

    const GroupPtr& group() const { return group_; }
    bool valid() const { return group_ != nullptr; }

    GroupElement operator*(const GroupElement& rhs) const;
    GroupElement inverse() const;
    GroupElement pow(const mpz_class& n) const;
    bool is_identity() const;

    bool operator==(const GroupElement& rhs) const;
    bool operator!=(const GroupElement& rhs) const { return !(*this == rhs); }
    bool operator<(const GroupElement& rhs) const;

    /// Multiplicative order; 0 for infinite order.
    long order() const;

    std::string str() const;

    // value accessors, valid only for the matching group kind
    const mpz_class& integer() const;
    long residue() const;
    const std::vector<int>& images() const;
    const std::vector<GroupElement>& parts() const;

private:
    friend class Group;
    using Value = std::variant<std::monostate, mpz_class, long, std::vector<int>,
                               std::vector<GroupElement>>;
    GroupElement(GroupPtr g, Value v) : group_(std::move(g)), v_(std::move(v)) {}

    GroupPtr group_;
    Value v_;
};

/// Group descriptor. Supported families: the integers, cyclic groups Z_a,
/// full symmetric groups S_n, and finite direct products of these.
/// Groups are compared structurally (kind + parameters).
class Group : public std::enable_shared_from_this<Group> {
public:
    enum class Kind { Integers, Cyclic, Permutation, Product };

    static GroupPtr integers();
    static GroupPtr cyclic(long modulus);
    static GroupPtr symmetric(int degree);
    static GroupPtr product(std::vector<GroupPtr> factors);

    Kind kind() const { return kind_; }
    long modulus() const { return modulus_; }
    int degree() const { return degree_; }
    const std::vector<GroupPtr>& factors() const { return factors_; }

    bool finite() const;
    bool abelian() const;
    /// Number of elements; only valid for finite groups.
    long order() const;

    bool same_as(const Group& other) const;

    GroupElement identity() const;
    /// All elements, each exactly once. Throws on infinite groups.
    std::vector<GroupElement> elements() const;
    /// A generating set.
    std::vector<GroupElement> generators() const;

    GroupElement from_integer(const mpz_class& n) const;
    GroupElement from_residue(long r) const;
    GroupElement from_images(std::vector<int> images) const;
    GroupElement from_parts(std::vector<GroupElement> parts) const;

    /// Parse an element from its textual form (inverse of GroupElement::str).
    GroupElement parse(const std::string& text) const;

    /// Short structural description, e.g. "cyclic:4" or "product(integers,cyclic:2)".
    std::string describe() const;

private:
    Group() = default;
    Kind kind_ = Kind::Integers;
    long modulus_ = 0;  // cyclic
    int degree_ = 0;    // permutation
    std::vector<GroupPtr> factors_;
};

} // namespace epco
