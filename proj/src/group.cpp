#include "epco/group.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace epco {

namespace {

long factorial(int n) {
    long f = 1;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

void check_same_group(const GroupElement& a, const GroupElement& b) {
    require(a.valid() && b.valid(), "operation on uninitialized group element");
    if (a.group().get() == b.group().get()) return;
    require(a.group()->same_as(*b.group()),
            "elements belong to different groups: " + a.group()->describe() + " vs " +
                b.group()->describe());
}

std::vector<int> compose(const std::vector<int>& p, const std::vector<int>& q) {
    // (p*q)(i) = p(q(i)): q acts first
    std::vector<int> out(p.size());
    for (size_t i = 0; i < p.size(); ++i) out[i] = p[q[i]];
    return out;
}

std::vector<int> invert(const std::vector<int>& p) {
    std::vector<int> out(p.size());
    for (size_t i = 0; i < p.size(); ++i) out[p[i]] = static_cast<int>(i);
    return out;
}

} // namespace

// ---------------------------------------------------------------------------
// GroupElement

GroupElement GroupElement::operator*(const GroupElement& rhs) const {
    check_same_group(*this, rhs);
    switch (group_->kind()) {
        case Group::Kind::Integers:
            return {group_, std::get<mpz_class>(v_) + std::get<mpz_class>(rhs.v_)};
        case Group::Kind::Cyclic: {
            long a = group_->modulus();
            return {group_, (std::get<long>(v_) + std::get<long>(rhs.v_)) % a};
        }
        case Group::Kind::Permutation:
            return {group_, compose(std::get<std::vector<int>>(v_),
                                    std::get<std::vector<int>>(rhs.v_))};
        case Group::Kind::Product: {
            const auto& xs = std::get<std::vector<GroupElement>>(v_);
            const auto& ys = std::get<std::vector<GroupElement>>(rhs.v_);
            std::vector<GroupElement> parts;
            parts.reserve(xs.size());
            for (size_t i = 0; i < xs.size(); ++i) parts.push_back(xs[i] * ys[i]);
            return {group_, std::move(parts)};
        }
    }
    fail("unreachable");
}

GroupElement GroupElement::inverse() const {
    require(valid(), "inverse of uninitialized element");
    switch (group_->kind()) {
        case Group::Kind::Integers:
            return {group_, mpz_class(-std::get<mpz_class>(v_))};
        case Group::Kind::Cyclic: {
            long a = group_->modulus();
            return {group_, (a - std::get<long>(v_)) % a};
        }
        case Group::Kind::Permutation:
            return {group_, invert(std::get<std::vector<int>>(v_))};
        case Group::Kind::Product: {
            std::vector<GroupElement> parts;
            for (const auto& x : std::get<std::vector<GroupElement>>(v_))
                parts.push_back(x.inverse());
            return {group_, std::move(parts)};
        }
    }
    fail("unreachable");
}

bool GroupElement::is_identity() const { return *this == group_->identity(); }

GroupElement GroupElement::pow(const mpz_class& n) const {
    require(valid(), "pow of uninitialized element");
    if (group_->kind() == Group::Kind::Integers)
        return {group_, mpz_class(std::get<mpz_class>(v_) * n)};
    if (group_->kind() == Group::Kind::Product) {
        std::vector<GroupElement> parts;
        for (const auto& x : std::get<std::vector<GroupElement>>(v_)) parts.push_back(x.pow(n));
        return {group_, std::move(parts)};
    }
    // finite kinds: reduce the exponent modulo the element order
    long ord = order();
    mpz_class r = n % ord;
    if (r < 0) r += ord;
    long k = static_cast<long>(r.get_si());
    GroupElement acc = group_->identity();
    GroupElement base = *this;
    while (k > 0) {
        if (k & 1) acc = acc * base;
        base = base * base;
        k >>= 1;
    }
    return acc;
}

long GroupElement::order() const {
    require(valid(), "order of uninitialized element");
    if (group_->kind() == Group::Kind::Integers)
        return std::get<mpz_class>(v_) == 0 ? 1 : 0;
    if (group_->kind() == Group::Kind::Product) {
        long l = 1;
        for (const auto& x : std::get<std::vector<GroupElement>>(v_)) {
            long o = x.order();
            if (o == 0) return 0;
            l = std::lcm(l, o);
        }
        return l;
    }
    long n = 1;
    GroupElement acc = *this;
    GroupElement id = group_->identity();
    while (!(acc == id)) {
        acc = acc * *this;
        ++n;
    }
    return n;
}

bool GroupElement::operator==(const GroupElement& rhs) const {
    check_same_group(*this, rhs);
    return v_ == rhs.v_;
}

bool GroupElement::operator<(const GroupElement& rhs) const {
    check_same_group(*this, rhs);
    switch (group_->kind()) {
        case Group::Kind::Integers:
            return std::get<mpz_class>(v_) < std::get<mpz_class>(rhs.v_);
        case Group::Kind::Cyclic:
            return std::get<long>(v_) < std::get<long>(rhs.v_);
        case Group::Kind::Permutation:
            return std::get<std::vector<int>>(v_) < std::get<std::vector<int>>(rhs.v_);
        case Group::Kind::Product:
            return std::get<std::vector<GroupElement>>(v_) <
                   std::get<std::vector<GroupElement>>(rhs.v_);
    }
    fail("unreachable");
}

std::string GroupElement::str() const {
    require(valid(), "str of uninitialized element");
    switch (group_->kind()) {
        case Group::Kind::Integers:
            return std::get<mpz_class>(v_).get_str();
        case Group::Kind::Cyclic:
            return std::to_string(std::get<long>(v_));
        case Group::Kind::Permutation: {
            // one-line image notation, e.g. "102"
            std::string s;
            for (int i : std::get<std::vector<int>>(v_)) {
                if (!s.empty()) s += i >= 10 ? "," : "";
                s += std::to_string(i);
            }
            return s;
        }
        case Group::Kind::Product: {
            std::string s = "(";
            const auto& parts = std::get<std::vector<GroupElement>>(v_);
            for (size_t i = 0; i < parts.size(); ++i) {
                if (i) s += ",";
                s += parts[i].str();
            }
            return s + ")";
        }
    }
    fail("unreachable");
}

const mpz_class& GroupElement::integer() const { return std::get<mpz_class>(v_); }
long GroupElement::residue() const { return std::get<long>(v_); }
const std::vector<int>& GroupElement::images() const { return std::get<std::vector<int>>(v_); }
const std::vector<GroupElement>& GroupElement::parts() const {
    return std::get<std::vector<GroupElement>>(v_);
}

// ---------------------------------------------------------------------------
// Group

GroupPtr Group::integers() {
    auto g = std::shared_ptr<Group>(new Group);
    g->kind_ = Kind::Integers;
    return g;
}

GroupPtr Group::cyclic(long modulus) {
    require(modulus >= 1, "cyclic group modulus must be >= 1");
    auto g = std::shared_ptr<Group>(new Group);
    g->kind_ = Kind::Cyclic;
    g->modulus_ = modulus;
    return g;
}

GroupPtr Group::symmetric(int degree) {
    require(degree >= 1 && degree <= 8, "symmetric group degree must be in 1..8");
    auto g = std::shared_ptr<Group>(new Group);
    g->kind_ = Kind::Permutation;
    g->degree_ = degree;
    return g;
}

GroupPtr Group::product(std::vector<GroupPtr> factors) {
    require(!factors.empty(), "product group needs at least one factor");
    auto g = std::shared_ptr<Group>(new Group);
    g->kind_ = Kind::Product;
    g->factors_ = std::move(factors);
    return g;
}

bool Group::finite() const {
    switch (kind_) {
        case Kind::Integers: return false;
        case Kind::Cyclic:
        case Kind::Permutation: return true;
        case Kind::Product:
            return std::all_of(factors_.begin(), factors_.end(),
                               [](const GroupPtr& f) { return f->finite(); });
    }
    return false;
}

bool Group::abelian() const {
    switch (kind_) {
        case Kind::Integers:
        case Kind::Cyclic: return true;
        case Kind::Permutation: return degree_ <= 2;
        case Kind::Product:
            return std::all_of(factors_.begin(), factors_.end(),
                               [](const GroupPtr& f) { return f->abelian(); });
    }
    return false;
}

long Group::order() const {
    require(finite(), "order() called on infinite group " + describe());
    switch (kind_) {
        case Kind::Cyclic: return modulus_;
        case Kind::Permutation: return factorial(degree_);
        case Kind::Product: {
            long o = 1;
            for (const auto& f : factors_) o *= f->order();
            return o;
        }
        default: fail("unreachable");
    }
}

bool Group::same_as(const Group& other) const {
    if (this == &other) return true;
    if (kind_ != other.kind_) return false;
    switch (kind_) {
        case Kind::Integers: return true;
        case Kind::Cyclic: return modulus_ == other.modulus_;
        case Kind::Permutation: return degree_ == other.degree_;
        case Kind::Product: {
            if (factors_.size() != other.factors_.size()) return false;
            for (size_t i = 0; i < factors_.size(); ++i)
                if (!factors_[i]->same_as(*other.factors_[i])) return false;
            return true;
        }
    }
    return false;
}

GroupElement Group::identity() const {
    auto self = shared_from_this();
    switch (kind_) {
        case Kind::Integers: return {self, mpz_class(0)};
        case Kind::Cyclic: return {self, 0L};
        case Kind::Permutation: {
            std::vector<int> id(degree_);
            std::iota(id.begin(), id.end(), 0);
            return {self, std::move(id)};
        }
        case Kind::Product: {
            std::vector<GroupElement> parts;
            for (const auto& f : factors_) parts.push_back(f->identity());
            return {self, std::move(parts)};
        }
    }
    fail("unreachable");
}

std::vector<GroupElement> Group::elements() const {
    require(finite(), "cannot enumerate infinite group " + describe());
    auto self = shared_from_this();
    std::vector<GroupElement> out;
    switch (kind_) {
        case Kind::Cyclic:
            for (long r = 0; r < modulus_; ++r) out.push_back({self, r});
            break;
        case Kind::Permutation: {
            std::vector<int> p(degree_);
            std::iota(p.begin(), p.end(), 0);
            do {
                out.push_back({self, p});
            } while (std::next_permutation(p.begin(), p.end()));
            break;
        }
        case Kind::Product: {
            std::vector<std::vector<GroupElement>> per;
            for (const auto& f : factors_) per.push_back(f->elements());
            std::vector<size_t> idx(per.size(), 0);
            for (;;) {
                std::vector<GroupElement> parts;
                for (size_t i = 0; i < per.size(); ++i) parts.push_back(per[i][idx[i]]);
                out.push_back({self, std::move(parts)});
                size_t i = per.size();
                while (i > 0) {
                    --i;
                    if (++idx[i] < per[i].size()) break;
                    idx[i] = 0;
                    if (i == 0) return out;
                }
            }
        }
        default: fail("unreachable");
    }
    return out;
}

std::vector<GroupElement> Group::generators() const {
    auto self = shared_from_this();
    switch (kind_) {
        case Kind::Integers: return {{self, mpz_class(1)}};
        case Kind::Cyclic: return {{self, modulus_ == 1 ? 0L : 1L}};
        case Kind::Permutation: {
            if (degree_ == 1) return {identity()};
            std::vector<int> swap01(degree_);
            std::iota(swap01.begin(), swap01.end(), 0);
            std::swap(swap01[0], swap01[1]);
            if (degree_ == 2) return {{self, std::move(swap01)}};
            std::vector<int> cyc(degree_);
            for (int i = 0; i < degree_; ++i) cyc[i] = (i + 1) % degree_;
            return {{self, std::move(swap01)}, {self, std::move(cyc)}};
        }
        case Kind::Product: {
            std::vector<GroupElement> out;
            for (size_t i = 0; i < factors_.size(); ++i) {
                for (const auto& gen : factors_[i]->generators()) {
                    std::vector<GroupElement> parts;
                    for (size_t j = 0; j < factors_.size(); ++j)
                        parts.push_back(j == i ? gen : factors_[j]->identity());
                    out.push_back({self, std::move(parts)});
                }
            }
            return out;
        }
    }
    fail("unreachable");
}

GroupElement Group::from_integer(const mpz_class& n) const {
    require(kind_ == Kind::Integers, "from_integer on " + describe());
    return {shared_from_this(), n};
}

GroupElement Group::from_residue(long r) const {
    require(kind_ == Kind::Cyclic, "from_residue on " + describe());
    long m = ((r % modulus_) + modulus_) % modulus_;
    return {shared_from_this(), m};
}

GroupElement Group::from_images(std::vector<int> images) const {
    require(kind_ == Kind::Permutation, "from_images on " + describe());
    require(static_cast<int>(images.size()) == degree_, "permutation image list has wrong size");
    std::vector<bool> seen(degree_, false);
    for (int i : images) {
        require(i >= 0 && i < degree_ && !seen[i], "image list is not a permutation");
        seen[i] = true;
    }
    return {shared_from_this(), std::move(images)};
}

GroupElement Group::from_parts(std::vector<GroupElement> parts) const {
    require(kind_ == Kind::Product, "from_parts on " + describe());
    require(parts.size() == factors_.size(), "wrong number of product components");
    for (size_t i = 0; i < parts.size(); ++i)
        require(parts[i].group()->same_as(*factors_[i]), "product component group mismatch");
    return {shared_from_this(), std::move(parts)};
}

GroupElement Group::parse(const std::string& text) const {
    switch (kind_) {
        case Kind::Integers: {
            try {
                return from_integer(mpz_class(text));
            } catch (const std::invalid_argument&) {
                fail("cannot parse integer element '" + text + "'");
            }
        }
        case Kind::Cyclic: {
            size_t pos = 0;
            long v = std::stol(text, &pos);
            require(pos == text.size(), "cannot parse cyclic element '" + text + "'");
            return from_residue(v);
        }
        case Kind::Permutation: {
            std::vector<int> images;
            if (text.find(',') != std::string::npos) {
                std::stringstream ss(text);
                std::string tok;
                while (std::getline(ss, tok, ',')) images.push_back(std::stoi(tok));
            } else {
                for (char c : text) {
                    require(c >= '0' && c <= '9', "cannot parse permutation '" + text + "'");
                    images.push_back(c - '0');
                }
            }
            return from_images(std::move(images));
        }
        case Kind::Product: {
            require(text.size() >= 2 && text.front() == '(' && text.back() == ')',
                    "cannot parse product element '" + text + "'");
            std::vector<std::string> toks;
            int depth = 0;
            std::string cur;
            for (size_t i = 1; i + 1 < text.size(); ++i) {
                char c = text[i];
                if (c == '(') ++depth;
                if (c == ')') --depth;
                if (c == ',' && depth == 0) {
                    toks.push_back(cur);
                    cur.clear();
                } else {
                    cur += c;
                }
            }
            toks.push_back(cur);
            require(toks.size() == factors_.size(), "wrong component count in '" + text + "'");
            std::vector<GroupElement> parts;
            for (size_t i = 0; i < toks.size(); ++i) parts.push_back(factors_[i]->parse(toks[i]));
            return from_parts(std::move(parts));
        }
    }
    fail("unreachable");
}

std::string Group::describe() const {
    switch (kind_) {
        case Kind::Integers: return "integers";
        case Kind::Cyclic: return "cyclic:" + std::to_string(modulus_);
        case Kind::Permutation: return "permutation:" + std::to_string(degree_);
        case Kind::Product: {
            std::string s = "product(";
            for (size_t i = 0; i < factors_.size(); ++i) {
                if (i) s += ",";
                s += factors_[i]->describe();
            }
            return s + ")";
        }
    }
    return "?";
}

} // namespace epco
