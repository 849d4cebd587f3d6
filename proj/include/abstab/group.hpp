#pragma once

#include <stdexcept>
#include <vector>

#include "abstab/numeric.hpp"

namespace abstab {

/// A finitely generated abelian group Z_{d1} x ... x Z_{dm} given by its
/// cyclic moduli. A modulus of 0 denotes an infinite factor Z; such factors
/// only appear in solver domains, never in circuit registers.
class Group {
  public:
    Group() = default;
    explicit Group(IntVec moduli);
    explicit Group(std::initializer_list<long> moduli);

    /// Z^n, the free abelian group on n generators.
    static Group integer_lattice(Eigen::Index n);
    /// Direct product of two groups (factors of `a` first).
    static Group product(const Group& a, const Group& b);

    Eigen::Index factor_count() const { return moduli_.size(); }
    const IntVec& moduli() const { return moduli_; }
    const Int& modulus(Eigen::Index i) const { return moduli_(i); }

    bool finite() const { return order_ != 0; }
    /// |G|; throws for groups with Z factors.
    const Int& order() const;
    /// 2|G|, the modulus of all phase exponents over this group.
    const Int& phase_modulus() const;

    bool operator==(const Group& o) const { return moduli_ == o.moduli_; }
    bool operator!=(const Group& o) const { return !(*this == o); }

  private:
    IntVec moduli_;
    Int order_ = 1;        // 0 when some factor is Z
    Int phase_modulus_ = 2;
};

/// An element of a Group, stored as the canonical residue tuple.
class GroupElement {
  public:
    GroupElement() = default;
    GroupElement(Group group, IntVec residues);

    /// The identity element.
    static GroupElement zero(const Group& group);
    /// Canonical generator e_i.
    static GroupElement unit(const Group& group, Eigen::Index i);

    const Group& group() const { return group_; }
    const IntVec& residues() const { return residues_; }
    const Int& residue(Eigen::Index i) const { return residues_(i); }
    bool is_zero() const;

    GroupElement operator+(const GroupElement& o) const;
    GroupElement operator-() const;
    GroupElement operator-(const GroupElement& o) const;
    GroupElement operator*(const Int& k) const;
    bool operator==(const GroupElement& o) const;
    bool operator!=(const GroupElement& o) const { return !(*this == o); }

  private:
    Group group_;
    IntVec residues_;
};

/// A phase gamma^a with gamma = e^{i pi/|G|}, stored as the exponent a
/// modulo 2|G|. All phases in the simulator live here; equality is exact.
class PhaseExp {
  public:
    PhaseExp() = default;
    PhaseExp(Int exponent, Int modulus);
    static PhaseExp zero(const Group& group);

    const Int& exponent() const { return exponent_; }
    const Int& modulus() const { return modulus_; }

    PhaseExp operator+(const PhaseExp& o) const;
    PhaseExp operator-(const PhaseExp& o) const;
    PhaseExp operator-() const;
    PhaseExp operator*(const Int& k) const;
    bool operator==(const PhaseExp& o) const;
    bool operator!=(const PhaseExp& o) const { return !(*this == o); }

  private:
    Int exponent_ = 0;
    Int modulus_ = 2;
};

/// Exponent a with gamma^a = chi_g(h) = exp(2 pi i sum g(i) h(i) / d_i).
PhaseExp character_exp(const GroupElement& g, const GroupElement& h);

/// Order of g as a group element: the least n >= 1 with n*g = 0.
Int element_order(const GroupElement& g);

inline void require_same_group(const Group& a, const Group& b) {
    if (a != b) throw std::invalid_argument("group mismatch");
}

}  // namespace abstab
