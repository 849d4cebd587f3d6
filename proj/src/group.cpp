#include "abstab/group.hpp"

namespace abstab {

Group::Group(IntVec moduli) : moduli_(std::move(moduli)) {
    if (moduli_.size() == 0) throw std::invalid_argument("Group: need at least one factor");
    for (Eigen::Index i = 0; i < moduli_.size(); ++i) {
        if (moduli_(i) < 0) throw std::invalid_argument("Group: negative modulus");
        order_ *= moduli_(i);
    }
    phase_modulus_ = 2 * order_;
}

Group::Group(std::initializer_list<long> moduli) {
    IntVec v(static_cast<Eigen::Index>(moduli.size()));
    Eigen::Index i = 0;
    for (long m : moduli) v(i++) = m;
    *this = Group(std::move(v));
}

Group Group::integer_lattice(Eigen::Index n) {
    return Group(IntVec::Zero(n).eval());
}

Group Group::product(const Group& a, const Group& b) {
    IntVec v(a.factor_count() + b.factor_count());
    v.head(a.factor_count()) = a.moduli();
    v.tail(b.factor_count()) = b.moduli();
    return Group(std::move(v));
}

const Int& Group::order() const {
    if (!finite()) throw std::domain_error("Group::order: infinite group");
    return order_;
}

const Int& Group::phase_modulus() const {
    if (!finite()) throw std::domain_error("Group::phase_modulus: infinite group");
    return phase_modulus_;
}

GroupElement::GroupElement(Group group, IntVec residues)
    : group_(std::move(group)), residues_(std::move(residues)) {
    if (residues_.size() != group_.factor_count())
        throw std::invalid_argument("GroupElement: residue count mismatch");
    for (Eigen::Index i = 0; i < residues_.size(); ++i)
        residues_(i) = mod(residues_(i), group_.modulus(i));
}

GroupElement GroupElement::zero(const Group& group) {
    return GroupElement(group, IntVec::Zero(group.factor_count()).eval());
}

GroupElement GroupElement::unit(const Group& group, Eigen::Index i) {
    IntVec v = IntVec::Zero(group.factor_count());
    v(i) = 1;
    return GroupElement(group, std::move(v));
}

bool GroupElement::is_zero() const {
    for (Eigen::Index i = 0; i < residues_.size(); ++i)
        if (residues_(i) != 0) return false;
    return true;
}

GroupElement GroupElement::operator+(const GroupElement& o) const {
    require_same_group(group_, o.group_);
    return GroupElement(group_, (residues_ + o.residues_).eval());
}

GroupElement GroupElement::operator-() const {
    return GroupElement(group_, (-residues_).eval());
}

GroupElement GroupElement::operator-(const GroupElement& o) const {
    return *this + (-o);
}

GroupElement GroupElement::operator*(const Int& k) const {
    return GroupElement(group_, (residues_ * k).eval());
}

bool GroupElement::operator==(const GroupElement& o) const {
    return group_ == o.group_ && residues_ == o.residues_;
}

PhaseExp::PhaseExp(Int exponent, Int modulus) : modulus_(std::move(modulus)) {
    if (modulus_ <= 0) throw std::invalid_argument("PhaseExp: modulus must be positive");
    exponent_ = mod(exponent, modulus_);
}

PhaseExp PhaseExp::zero(const Group& group) {
    return PhaseExp(0, group.phase_modulus());
}

PhaseExp PhaseExp::operator+(const PhaseExp& o) const {
    if (modulus_ != o.modulus_) throw std::invalid_argument("PhaseExp: modulus mismatch");
    return PhaseExp(exponent_ + o.exponent_, modulus_);
}

PhaseExp PhaseExp::operator-(const PhaseExp& o) const {
    if (modulus_ != o.modulus_) throw std::invalid_argument("PhaseExp: modulus mismatch");
    return PhaseExp(exponent_ - o.exponent_, modulus_);
}

PhaseExp PhaseExp::operator-() const { return PhaseExp(-exponent_, modulus_); }

PhaseExp PhaseExp::operator*(const Int& k) const {
    return PhaseExp(exponent_ * k, modulus_);
}

bool PhaseExp::operator==(const PhaseExp& o) const {
    return modulus_ == o.modulus_ && exponent_ == o.exponent_;
}

PhaseExp character_exp(const GroupElement& g, const GroupElement& h) {
    require_same_group(g.group(), h.group());
    const Group& G = g.group();
    const Int& two_n = G.phase_modulus();
    Int a = 0;
    for (Eigen::Index i = 0; i < G.factor_count(); ++i) {
        // 2|G|/d_i is an exact integer for every factor.
        a += exact_div(two_n, G.modulus(i)) * g.residue(i) * h.residue(i);
    }
    return PhaseExp(a, two_n);
}

Int element_order(const GroupElement& g) {
    Int n = 1;
    for (Eigen::Index i = 0; i < g.group().factor_count(); ++i) {
        const Int& d = g.group().modulus(i);
        if (d == 0) {
            if (g.residue(i) != 0) throw std::domain_error("element_order: infinite order");
            continue;
        }
        n = lcm(n, exact_div(d, gcd(d, g.residue(i))));
    }
    return n;
}

}  // namespace abstab
